#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spheremix/discrepancy.hpp"

namespace spheremix {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Round-trip-safe float rendering, up to 17 significant digits.
std::string fmt17(double v);

/// JSON string literal with escaping.
std::string json_quote(const std::string& s);

/// FNV-1a 64-bit checksum of a byte string, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

/// Flat JSON writer with caller-controlled key order, so repeated runs emit
/// byte-identical documents.
class JsonWriter {
 public:
  JsonWriter& field(const std::string& key, const std::string& value);
  JsonWriter& field(const std::string& key, const char* value);
  JsonWriter& field(const std::string& key, double value);
  JsonWriter& field(const std::string& key, int64_t value);
  JsonWriter& field(const std::string& key, uint64_t value);
  JsonWriter& field(const std::string& key, int value);
  JsonWriter& field(const std::string& key, bool value);
  /// Nested one-level object rendered from pre-formatted key:value pairs.
  JsonWriter& object_field(const std::string& key, const std::string& body);
  std::string str() const;

 private:
  std::vector<std::string> parts_;
};

std::string bounds_json(const BoundReport& rep);
std::string exact_json(double theta, int k, const GridSpec& grid, bool refine,
                       const DiscrepancyResult& res);

struct CurveRow {
  int k = 0;
  double lower_plancherel = 0.0;
  double exact = 0.0;
  double upper_series = 0.0;
  double upper_closed = 0.0;
};

/// Header `k,lower_plancherel,exact,upper_series,upper_closed`.
std::string curve_csv(const std::vector<CurveRow>& rows);

/// Reproducibility sidecar for file outputs: command, full parameter set,
/// version, wall-clock duration and the checksum of the bytes written.
/// Re-running the command in the manifest reproduces the checksum.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;  // key, rendered value
  uint64_t seed = 0;
  bool has_seed = false;
  double duration_seconds = 0.0;
  std::string output_path;
  std::string checksum;
};

std::string manifest_json(const RunManifest& m);

/// Writes `bytes` to `path` and a manifest alongside at `path.manifest.json`.
/// Throws std::runtime_error on I/O failure.
void write_output_with_manifest(const std::string& path,
                                const std::string& bytes, RunManifest manifest);

}  // namespace spheremix
