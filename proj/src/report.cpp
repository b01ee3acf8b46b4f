#include "spheremix/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spheremix {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += "\"";
  return out;
}

namespace {

std::string quoted(const std::string& s) { return json_quote(s); }

}  // namespace

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
  parts_.push_back(quoted(key) + ":" + quoted(value));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* value) {
  return field(key, std::string(value));
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
  parts_.push_back(quoted(key) + ":" + fmt17(value));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int64_t value) {
  parts_.push_back(quoted(key) + ":" + std::to_string(value));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, uint64_t value) {
  parts_.push_back(quoted(key) + ":" + std::to_string(value));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
  return field(key, static_cast<int64_t>(value));
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
  parts_.push_back(quoted(key) + ":" + (value ? "true" : "false"));
  return *this;
}

JsonWriter& JsonWriter::object_field(const std::string& key,
                                     const std::string& body) {
  parts_.push_back(quoted(key) + ":{" + body + "}");
  return *this;
}

std::string JsonWriter::str() const {
  std::string out = "{";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ",";
    out += parts_[i];
  }
  out += "}";
  return out;
}

std::string bounds_json(const BoundReport& rep) {
  JsonWriter w;
  w.field("command", "bounds")
      .field("theta", rep.theta)
      .field("k", rep.k)
      .field("C", rep.C)
      .field("upper_series", rep.upper_series)
      .field("upper_closed", rep.upper_closed)
      .field("lower_dominant", rep.lower_dominant)
      .field("lower_plancherel", rep.lower_plancherel);
  return w.str() + "\n";
}

std::string exact_json(double theta, int k, const GridSpec& grid, bool refine,
                       const DiscrepancyResult& res) {
  JsonWriter w;
  w.field("command", "exact")
      .field("theta", theta)
      .field("k", k)
      .field("value", res.value)
      .field("argmax_gamma", res.argmax_gamma)
      .field("argmax_r", res.argmax_r)
      .field("uncertainty", res.uncertainty)
      .field("tail_bound", res.tail_bound)
      .field("grid_gap", res.grid_gap)
      .field("method", discrepancy_method_name(res.method))
      .field("grid_gamma", grid.n_gamma)
      .field("grid_r", grid.n_r)
      .field("refine", refine);
  return w.str() + "\n";
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = "k,lower_plancherel,exact,upper_series,upper_closed\n";
  for (const CurveRow& r : rows) {
    out += std::to_string(r.k);
    out += ",";
    out += fmt17(r.lower_plancherel);
    out += ",";
    out += fmt17(r.exact);
    out += ",";
    out += fmt17(r.upper_series);
    out += ",";
    out += fmt17(r.upper_closed);
    out += "\n";
  }
  return out;
}

std::string manifest_json(const RunManifest& m) {
  std::string params;
  for (size_t i = 0; i < m.parameters.size(); ++i) {
    if (i > 0) params += ",";
    params += quoted(m.parameters[i].first) + ":" + m.parameters[i].second;
  }
  JsonWriter w;
  w.field("command", m.command);
  w.object_field("parameters", params);
  if (m.has_seed) w.field("seed", m.seed);
  w.field("version", kArtifactVersion)
      .field("duration_seconds", m.duration_seconds)
      .field("output", m.output_path)
      .field("checksum_fnv1a64", m.checksum);
  return w.str() + "\n";
}

void write_output_with_manifest(const std::string& path,
                                const std::string& bytes,
                                RunManifest manifest) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  manifest.output_path = path;
  manifest.checksum = fnv1a64_hex(bytes);
  const std::string mpath = path + ".manifest.json";
  std::ofstream mout(mpath, std::ios::binary);
  if (!mout) throw std::runtime_error("cannot open manifest path: " + mpath);
  const std::string mjson = manifest_json(manifest);
  mout.write(mjson.data(), static_cast<std::streamsize>(mjson.size()));
  if (!mout) throw std::runtime_error("write failed: " + mpath);
}

}  // namespace spheremix
