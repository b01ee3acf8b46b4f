#pragma once

namespace spheremix {

/// Kernel execution policy. Serial is the reference implementation; the
/// parallel path must produce bit-identical results (tested).
enum class Exec { serial, parallel };

}  // namespace spheremix
