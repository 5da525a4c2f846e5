#ifndef KSHAPE_IO_HPP
#define KSHAPE_IO_HPP

// File formats.
//
//   landmark file  JSON: {"format","version","dim","topology","points",
//                         "labels"?, "metadata"?}
//   curve file     CSV:  t,x0,..,x{D-1},quality  (%.17g numbers)
//   scene file     JSON: {"type":"I"|"II","members":[...]}
//   reports        <base>.txt for people, <base>.json for machines
//
// Writers go through a temporary file and a rename so readers never see a
// partial file. JSON keys are emitted in sorted order and doubles in
// shortest round-trip form, so equal inputs give equal bytes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kshape/generators.hpp"
#include "kshape/landmarks.hpp"
#include "kshape/scene.hpp"
#include "kshape/shape.hpp"

namespace kshape {

using Json = nlohmann::json;

inline constexpr const char* kLandmarkFormat = "kshape-landmarks";
inline constexpr int kLandmarkFormatVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed input. The message starts with the offending field.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Plain files

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Generator specs

inline Json to_json(const GeneratorSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  Json params = Json::object();
  for (const auto& [key, v] : spec.params) {
    if (v.size() == 1) {
      params[key] = v[0];
    } else {
      params[key] = v;
    }
  }
  j["params"] = params;
  if (spec.seed) j["seed"] = *spec.seed;
  return j;
}

inline GeneratorSpec generator_spec_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("generator: expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw FormatError("kind: missing or not a string");
  GeneratorSpec spec;
  spec.kind = generator_kind_from_string(j["kind"].get<std::string>());
  if (j.contains("params")) {
    const Json& p = j["params"];
    if (!p.is_object()) throw FormatError("params: expected an object");
    for (const auto& [key, value] : p.items()) {
      if (value.is_number()) {
        spec.params[key] = {value.get<double>()};
      } else if (value.is_array()) {
        std::vector<double> v;
        for (const auto& e : value) {
          if (!e.is_number()) throw FormatError(key + ": expected numbers");
          v.push_back(e.get<double>());
        }
        spec.params[key] = std::move(v);
      } else if (value.is_boolean()) {
        spec.params[key] = {value.get<bool>() ? 1.0 : 0.0};
      } else {
        throw FormatError(key + ": expected a number or an array of numbers");
      }
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw FormatError("seed: expected a non-negative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "params" && key != "seed") throw FormatError(key + ": unknown field");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Landmark files

struct LandmarkFile {
  LandmarkSet landmarks;
  Json metadata = Json::object();
};

inline Json to_json(const LandmarkSet& lm, const Json& metadata = Json::object()) {
  Json j;
  j["format"] = kLandmarkFormat;
  j["version"] = kLandmarkFormatVersion;
  j["dim"] = lm.dim();
  j["topology"] = to_string(lm.topology());
  Json pts = Json::array();
  for (std::size_t i = 0; i < lm.size(); ++i) {
    auto p = lm.point(i);
    pts.push_back(std::vector<double>(p.begin(), p.end()));
  }
  j["points"] = std::move(pts);
  if (!lm.labels().empty()) j["labels"] = lm.labels();
  if (!metadata.is_null() && !metadata.empty()) j["metadata"] = metadata;
  return j;
}

inline LandmarkFile landmark_file_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("landmarks: expected a JSON object");
  if (j.contains("format") && j["format"] != kLandmarkFormat) throw FormatError("format: not a landmark file");
  if (j.contains("version") && j["version"] != kLandmarkFormatVersion) {
    throw FormatError("version: unsupported landmark file version");
  }
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw FormatError("dim: missing or not a positive integer");
  }
  if (!j.contains("topology") || !j["topology"].is_string()) throw FormatError("topology: missing");
  const std::size_t dim = j["dim"].get<std::size_t>();
  Topology topology;
  try {
    topology = topology_from_string(j["topology"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("topology: ") + e.what());
  }
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
    throw FormatError("points: missing or empty");
  }
  std::vector<double> coords;
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const Json& row = j["points"][i];
    if (!row.is_array() || row.size() != dim) {
      throw FormatError("points: row " + std::to_string(i) + " does not have " + std::to_string(dim) + " entries");
    }
    for (const auto& v : row) {
      if (!v.is_number()) throw FormatError("points: row " + std::to_string(i) + " holds a non-number");
      coords.push_back(v.get<double>());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw FormatError("labels: expected an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw FormatError("labels: expected an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  try {
    LandmarkFile f{LandmarkSet(dim, std::move(coords), topology, std::move(labels)), Json::object()};
    if (j.contains("metadata")) f.metadata = j["metadata"];
    return f;
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("points: ") + e.what());
  }
}

inline std::string landmark_file_text(const LandmarkSet& lm, const Json& metadata = Json::object()) {
  return to_json(lm, metadata).dump(2) + "\n";
}

inline void write_landmarks(const std::filesystem::path& path, const LandmarkSet& lm,
                            const Json& metadata = Json::object()) {
  write_text_file(path, landmark_file_text(lm, metadata));
}

inline LandmarkFile parse_landmark_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("landmarks: not valid JSON (") + e.what() + ")");
  }
  return landmark_file_from_json(j);
}

inline LandmarkFile read_landmarks(const std::filesystem::path& path) {
  try {
    return parse_landmark_file(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

/// Landmark file metadata recording how a generated set was produced.
inline Json generator_metadata(const GeneratorSpec& spec) {
  const GeneratorSpec full = with_defaults(spec);
  Json m;
  m["generator"] = to_json(full);
  if (full.kind == GeneratorKind::RandomUniform) {
    m["rng"] = kRandomAlgorithm;
    m["seed"] = *full.seed;
  }
  m["tool"] = std::string("kshape ") + kToolVersion;
  return m;
}

// ---------------------------------------------------------------------------
// Curve files

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string curve_csv(const SampledCurve& c) {
  std::string out = "t";
  for (std::size_t d = 0; d < c.dim; ++d) out += ",x" + std::to_string(d);
  out += ",quality\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += format_double(c.t[i]);
    for (double v : c.point(i)) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += to_string(c.quality[i]);
    out += '\n';
  }
  return out;
}

inline SampledCurve parse_curve_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("header: empty curve file");
  std::vector<std::string> cols;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) cols.push_back(cell);
  }
  if (cols.size() < 3 || cols.front() != "t" || cols.back() != "quality") {
    throw FormatError("header: expected t,x0,...,quality");
  }
  SampledCurve c;
  c.dim = cols.size() - 2;
  for (std::size_t d = 0; d < c.dim; ++d) {
    if (cols[d + 1] != "x" + std::to_string(d)) throw FormatError("header: column " + cols[d + 1] + " out of order");
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != c.dim + 2) throw FormatError("row " + std::to_string(row) + ": wrong column count");
    auto num = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size()) {
        throw FormatError("row " + std::to_string(row) + ": \"" + s + "\" is not a number");
      }
      return v;
    };
    const double t = num(cells[0]);
    if (!c.t.empty() && !(t > c.t.back())) throw FormatError("row " + std::to_string(row) + ": t not increasing");
    c.t.push_back(t);
    for (std::size_t d = 0; d < c.dim; ++d) c.coords.push_back(num(cells[d + 1]));
    try {
      c.quality.push_back(quality_from_string(cells.back()));
    } catch (const std::invalid_argument& e) {
      throw FormatError("row " + std::to_string(row) + ": " + e.what());
    }
  }
  if (c.t.empty()) throw FormatError("rows: curve file has no samples");
  return c;
}

inline void write_curve(const std::filesystem::path& path, const SampledCurve& c) {
  write_text_file(path, curve_csv(c));
}

inline SampledCurve read_curve(const std::filesystem::path& path) {
  try {
    return parse_curve_csv(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Scene files
//
// A member is one of
//   {"landmarks": "file.json" | {inline landmark object}, "kappa": k}
//   {"generator": {generator spec}, "kappa": k}
//   {"scene": {nested scene object}, "q": q, "eta": e}
// Relative paths resolve against the scene file's directory.

struct SceneFile {
  std::shared_ptr<const Scene> scene;
  /// Union of the members' canonical t ranges.
  std::pair<double, double> t_range{0.0, 1.0};
};

inline SceneFile scene_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw FormatError("scene: expected an object");
  if (!j.contains("type") || !j["type"].is_string()) throw FormatError("type: missing");
  const std::string type = j["type"].get<std::string>();
  if (type != "I" && type != "II") throw FormatError("type: must be \"I\" or \"II\", got \"" + type + "\"");
  if (!j.contains("members") || !j["members"].is_array() || j["members"].empty()) {
    throw FormatError("members: missing or empty");
  }
  std::vector<SceneMember> members;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < j["members"].size(); ++i) {
    const Json& m = j["members"][i];
    const std::string where = "members[" + std::to_string(i) + "]";
    if (!m.is_object()) throw FormatError(where + ": expected an object");
    auto number = [&](const char* key) {
      if (!m.contains(key) || !m[key].is_number()) throw FormatError(where + "." + key + ": missing number");
      return m[key].get<double>();
    };
    try {
      if (m.contains("scene")) {
        SceneFile inner = scene_from_json(m["scene"], base_dir);
        members.push_back(as_member(inner.scene, number("q"), number("eta")));
        lo = std::min(lo, inner.t_range.first);
        hi = std::max(hi, inner.t_range.second);
        continue;
      }
      std::optional<LandmarkSet> lm;
      if (m.contains("landmarks")) {
        const Json& l = m["landmarks"];
        if (l.is_string()) {
          lm = read_landmarks(base_dir / l.get<std::string>()).landmarks;
        } else {
          lm = landmark_file_from_json(l).landmarks;
        }
      } else if (m.contains("generator")) {
        lm = make_landmarks(generator_spec_from_json(m["generator"]));
      } else {
        throw FormatError(where + ": needs \"landmarks\", \"generator\" or \"scene\"");
      }
      KappaFamily fam(*lm);
      const auto [a, b] = fam.canonical_range();
      lo = std::min(lo, a);
      hi = std::max(hi, b);
      members.emplace_back(std::move(fam), number("kappa"));
    } catch (const FormatError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  SceneFile f;
  try {
    f.scene = std::make_shared<const Scene>(std::move(members), type == "I" ? SceneType::TypeI : SceneType::TypeII);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("members: ") + e.what());
  }
  f.t_range = {lo, hi};
  return f;
}

inline SceneFile read_scene(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": not valid JSON (" + e.what() + ")");
  }
  return scene_from_json(j, path.parent_path());
}

/// S_eta(t, q) sampled at `count` evenly spaced t values.
inline SampledCurve sample_scene(const Scene& scene, double q, double eta, double t_start, double t_end,
                                 std::size_t count) {
  if (count < 2) throw std::invalid_argument("samples must be at least 2");
  if (!(t_start < t_end)) throw std::invalid_argument("t range must satisfy t_start < t_end");
  SampledCurve c;
  c.dim = scene.dim();
  c.kappa = eta;
  const double step = (t_end - t_start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = i + 1 == count ? t_end : t_start + step * static_cast<double>(i);
    EvalResult r = eval_scene(scene, t, q, eta);
    c.t.push_back(t);
    c.coords.insert(c.coords.end(), r.point.begin(), r.point.end());
    c.quality.push_back(r.quality);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Reports

/// Writes <base>.txt and <base>.json.
inline void write_report(const std::filesystem::path& base, const std::string& text, const Json& json) {
  std::filesystem::path txt = base, js = base;
  txt += ".txt";
  js += ".json";
  write_text_file(txt, text);
  write_text_file(js, json.dump(2) + "\n");
}

}  // namespace kshape

#endif  // KSHAPE_IO_HPP
