#include "spheremag/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace spheremag::cli {

namespace {

using Keys = std::set<std::string>;

Keys allowed_keys(Command c) {
  Keys k{"schema_version", "comment"};
  switch (c) {
    case Command::synth:
      k.insert({"example", "R", "data_exactness", "source_n_per_band", "source_n_lon", "display"});
      break;
    case Command::forward:
      k.insert({"source", "example", "R", "data_exactness", "source_n_per_band", "source_n_lon", "L", "seed",
                "display"});
      break;
    case Command::decompose:
      k.insert({"L", "seed", "field", "display"});
      break;
    case Command::reconstruct:
      k.insert({"data", "h", "n_centers", "alphas", "ridge", "region", "display"});
      break;
    case Command::silent:
      k.insert({"construction", "unidirectional", "n_per_band", "L", "seed", "R_exterior", "R_interior", "n_eval",
                "display"});
      break;
    case Command::existence:
      k.insert({"L", "target_L", "seed", "tilt", "zeta", "grid_exactness", "R_check", "n_check", "display"});
      break;
  }
  return k;
}

void reject_unknown(const Json& obj, const Keys& keys, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!keys.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
T get(const Json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + ": key '" + key + "' has the wrong type");
  }
}

double get_number(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number()) throw ConfigError(where + ": key '" + key + "' must be a number");
  const double v = obj.at(key).get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": key '" + key + "' must be finite");
  return v;
}

int get_int(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number_integer()) throw ConfigError(where + ": key '" + key + "' must be an integer");
  return obj.at(key).get<int>();
}

std::array<double, 3> get_vec3(const Json& obj, const std::string& key, const std::string& where) {
  const Json& a = obj.at(key);
  if (!a.is_array() || a.size() != 3) throw ConfigError(where + ": key '" + key + "' must be a 3-vector");
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    if (!a[i].is_number()) throw ConfigError(where + ": key '" + key + "' must hold numbers");
    v[i] = a[i].get<double>();
  }
  if (!(std::hypot(v[0], v[1], v[2]) > 0.0)) throw ConfigError(where + ": key '" + key + "' must be nonzero");
  return v;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void validate(const RunConfig& c) {
  const auto positive_int = [](int v, const char* name) { require(v > 0, std::string(name) + " must be > 0"); };
  switch (c.command) {
    case Command::synth:
    case Command::forward:
      require(c.source == "example" || c.source == "bandlimited", "source must be 'example' or 'bandlimited'");
      require(c.example == 1 || c.example == 2, "example must be 1 or 2");
      require(c.R > 0.0 && std::abs(c.R - 1.0) >= 0.05, "R must be positive with |R - 1| >= 0.05");
      require(c.data_exactness >= 0 && c.data_exactness <= 1000, "data_exactness must be in [0, 1000]");
      positive_int(c.source_n_per_band, "source_n_per_band");
      positive_int(c.source_n_lon, "source_n_lon");
      require(c.L >= 0 && c.L <= 200, "L must be in [0, 200]");
      break;
    case Command::decompose:
      require(c.L >= 0 && c.L <= 200, "L must be in [0, 200]");
      require(c.field.type == "vector_harmonic" || c.field.type == "random" || c.field.type == "example",
              "field.type must be vector_harmonic, random or example");
      if (c.field.type == "vector_harmonic") {
        require(c.field.family >= 1 && c.field.family <= 3, "field.family must be 1, 2 or 3");
        require(c.field.n >= (c.field.family == 1 ? 0 : 1) && c.field.n <= c.L, "field.n out of range");
        require(c.field.k >= 1 && c.field.k <= 2 * c.field.n + 1, "field.k must be in [1, 2n+1]");
      }
      if (c.field.type == "example") require(c.field.example == 1 || c.field.example == 2, "field.example must be 1 or 2");
      break;
    case Command::reconstruct:
      require(!c.data.empty(), "data: path to a synth result.json is required");
      require(c.h == 0.0 || (c.h > 0.0 && c.h < 1.0), "h must be in (0, 1)");
      require(c.n_centers >= 0 && c.n_centers <= 20000, "n_centers must be in [0, 20000], 0 selecting the example default");
      for (double a : c.alphas) require(std::isfinite(a) && a >= 0.0, "alphas must be finite and >= 0");
      require(c.ridge >= 0.0, "ridge must be >= 0");
      require(c.region.threshold >= -1.0 && c.region.threshold <= 1.0, "region.threshold must be in [-1, 1]");
      break;
    case Command::silent:
      require(c.construction == "unidirectional" || c.construction == "exterior" || c.construction == "interior",
              "construction must be unidirectional, exterior or interior");
      require(c.unidirectional.a > -1.0 && c.unidirectional.a < c.unidirectional.b && c.unidirectional.b < 1.0,
              "unidirectional: need -1 < a < b < 1");
      positive_int(c.n_per_band, "n_per_band");
      require(c.L >= 1 && c.L <= 100, "L must be in [1, 100]");
      require(c.R_exterior > 1.0, "R_exterior must exceed 1");
      require(c.R_interior > 0.0 && c.R_interior < 1.0, "R_interior must be in (0, 1)");
      positive_int(c.n_eval, "n_eval");
      break;
    case Command::existence:
      require(c.L >= 0 && c.L <= 60, "L must be in [0, 60]");
      require(c.target_L >= 0 && c.target_L <= c.L, "target_L must be in [0, L]");
      require(std::abs(c.tilt) < 1.0, "tilt must satisfy |tilt| < 1 for an admissible v");
      require(c.grid_exactness >= 2 * c.L + 1, "grid_exactness must be >= 2L+1");
      require(c.R_check > 1.0, "R_check must exceed 1");
      positive_int(c.n_check, "n_check");
      break;
  }
  require(c.display.n_lat >= 2 && c.display.n_lon >= 1, "display needs n_lat >= 2 and n_lon >= 1");
}

Json vec_json(const std::array<double, 3>& v) { return Json::array({v[0], v[1], v[2]}); }

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "synth") return Command::synth;
  if (name == "forward") return Command::forward;
  if (name == "decompose") return Command::decompose;
  if (name == "reconstruct") return Command::reconstruct;
  if (name == "silent") return Command::silent;
  if (name == "existence") return Command::existence;
  throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::synth: return "synth";
    case Command::forward: return "forward";
    case Command::decompose: return "decompose";
    case Command::reconstruct: return "reconstruct";
    case Command::silent: return "silent";
    case Command::existence: return "existence";
  }
  return "";
}

RunConfig parse_config(Command command, const Json& doc) {
  const std::string where = "config";
  reject_unknown(doc, allowed_keys(command), where);
  if (!doc.contains("schema_version")) throw ConfigError("config: schema_version is required");
  RunConfig c;
  c.command = command;
  c.schema_version = get_int(doc, "schema_version", where);
  if (c.schema_version != kSchemaVersion)
    throw ConfigError("config: unsupported schema_version " + std::to_string(c.schema_version));

  const auto has = [&](const char* k) { return doc.contains(k); };
  if (has("comment")) c.comment = get<std::string>(doc, "comment", where);
  if (has("example")) c.example = get_int(doc, "example", where);
  if (has("R")) c.R = get_number(doc, "R", where);
  if (has("data_exactness")) c.data_exactness = get_int(doc, "data_exactness", where);
  if (has("source_n_per_band")) c.source_n_per_band = get_int(doc, "source_n_per_band", where);
  if (has("source_n_lon")) c.source_n_lon = get_int(doc, "source_n_lon", where);
  if (has("source")) c.source = get<std::string>(doc, "source", where);
  if (command == Command::forward && c.source == "bandlimited" && !has("L")) c.L = 12;
  if (command == Command::silent && !has("L")) c.L = 8;
  if (command == Command::existence && !has("L")) c.L = 12;
  if (has("L")) c.L = get_int(doc, "L", where);
  if (has("seed")) {
    const Json& s = doc.at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      throw ConfigError("config: seed must be a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (has("field")) {
    const Json& f = doc.at("field");
    reject_unknown(f, {"type", "family", "n", "k", "example"}, "field");
    if (f.contains("type")) c.field.type = get<std::string>(f, "type", "field");
    if (f.contains("family")) c.field.family = get_int(f, "family", "field");
    if (f.contains("n")) c.field.n = get_int(f, "n", "field");
    if (f.contains("k")) c.field.k = get_int(f, "k", "field");
    if (f.contains("example")) c.field.example = get_int(f, "example", "field");
  }
  if (has("data")) c.data = get<std::string>(doc, "data", where);
  if (has("h")) c.h = get_number(doc, "h", where);
  if (has("n_centers")) c.n_centers = get_int(doc, "n_centers", where);
  if (has("alphas")) {
    const Json& a = doc.at("alphas");
    if (!a.is_array()) throw ConfigError("config: alphas must be an array");
    c.alphas.clear();
    for (const Json& x : a) {
      if (!x.is_number()) throw ConfigError("config: alphas must hold numbers");
      c.alphas.push_back(x.get<double>());
    }
  }
  if (has("ridge")) c.ridge = get_number(doc, "ridge", where);
  if (has("region")) {
    const Json& r = doc.at("region");
    reject_unknown(r, {"axis", "threshold"}, "region");
    if (r.contains("axis")) c.region.axis = get_vec3(r, "axis", "region");
    if (r.contains("threshold")) c.region.threshold = get_number(r, "threshold", "region");
  }
  if (has("construction")) c.construction = get<std::string>(doc, "construction", where);
  if (has("unidirectional")) {
    const Json& u = doc.at("unidirectional");
    reject_unknown(u, {"a", "b", "zeta", "v3"}, "unidirectional");
    if (u.contains("a")) c.unidirectional.a = get_number(u, "a", "unidirectional");
    if (u.contains("b")) c.unidirectional.b = get_number(u, "b", "unidirectional");
    if (u.contains("zeta")) c.unidirectional.zeta = get_vec3(u, "zeta", "unidirectional");
    if (u.contains("v3")) c.unidirectional.v3 = get_number(u, "v3", "unidirectional");
  }
  if (has("n_per_band")) c.n_per_band = get_int(doc, "n_per_band", where);
  if (has("R_exterior")) c.R_exterior = get_number(doc, "R_exterior", where);
  if (has("R_interior")) c.R_interior = get_number(doc, "R_interior", where);
  if (has("n_eval")) c.n_eval = get_int(doc, "n_eval", where);
  if (has("target_L")) c.target_L = get_int(doc, "target_L", where);
  if (has("tilt")) c.tilt = get_number(doc, "tilt", where);
  if (has("zeta")) c.zeta = get_vec3(doc, "zeta", where);
  if (has("grid_exactness")) c.grid_exactness = get_int(doc, "grid_exactness", where);
  if (has("R_check")) c.R_check = get_number(doc, "R_check", where);
  if (has("n_check")) c.n_check = get_int(doc, "n_check", where);
  if (has("display")) {
    const Json& d = doc.at("display");
    reject_unknown(d, {"n_lat", "n_lon"}, "display");
    if (d.contains("n_lat")) c.display.n_lat = get_int(d, "n_lat", "display");
    if (d.contains("n_lon")) c.display.n_lon = get_int(d, "n_lon", "display");
  }
  validate(c);
  return c;
}

RunConfig load_config(Command command, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  RunConfig c = parse_config(command, doc);
  c.base_dir = path.parent_path();
  return c;
}

Json to_json(const RunConfig& c) {
  const Keys keys = allowed_keys(c.command);
  Json j;
  const auto put = [&](const char* k, Json v) {
    if (keys.count(k)) j[k] = std::move(v);
  };
  put("schema_version", c.schema_version);
  if (!c.comment.empty()) put("comment", c.comment);
  put("source", c.source);
  put("example", c.example);
  put("R", c.R);
  put("data_exactness", c.data_exactness);
  put("source_n_per_band", c.source_n_per_band);
  put("source_n_lon", c.source_n_lon);
  put("L", c.L);
  put("seed", c.seed);
  put("field", Json{{"type", c.field.type},
                    {"family", c.field.family},
                    {"n", c.field.n},
                    {"k", c.field.k},
                    {"example", c.field.example}});
  put("data", c.data);
  put("h", c.h);
  put("n_centers", c.n_centers);
  put("alphas", c.alphas);
  put("ridge", c.ridge);
  put("region", Json{{"axis", vec_json(c.region.axis)}, {"threshold", c.region.threshold}});
  put("construction", c.construction);
  put("unidirectional", Json{{"a", c.unidirectional.a},
                             {"b", c.unidirectional.b},
                             {"zeta", vec_json(c.unidirectional.zeta)},
                             {"v3", c.unidirectional.v3}});
  put("n_per_band", c.n_per_band);
  put("R_exterior", c.R_exterior);
  put("R_interior", c.R_interior);
  put("n_eval", c.n_eval);
  put("target_L", c.target_L);
  put("tilt", c.tilt);
  put("zeta", vec_json(c.zeta));
  put("grid_exactness", c.grid_exactness);
  put("R_check", c.R_check);
  put("n_check", c.n_check);
  put("display", Json{{"n_lat", c.display.n_lat}, {"n_lon", c.display.n_lon}});
  return j;
}

double resolved_h(const RunConfig& cfg, int example) {
  if (cfg.h > 0.0) return cfg.h;
  return example == 1 ? 0.9 : 0.95;
}

int resolved_centers(const RunConfig& cfg, int example) {
  if (cfg.n_centers > 0) return cfg.n_centers;
  return example == 1 ? 500 : 1000;
}

}  // namespace spheremag::cli
