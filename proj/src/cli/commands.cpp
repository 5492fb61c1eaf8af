#include "spheremag/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "CLI11.hpp"
#include "spheremag/operators.hpp"
#include "spheremag/scenarios.hpp"
#include "spheremag/uniqueness.hpp"

namespace spheremag::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kDeg = 180.0 / std::numbers::pi;

struct Table {
  std::vector<double> lon, lat;
  std::vector<UnitVector> points;
};

Table display_table(const RunConfig& cfg) {
  DisplayGrid d = display_grid(cfg.display.n_lat, cfg.display.n_lon);
  return {std::move(d.lon_deg), std::move(d.lat_deg), std::move(d.points)};
}

Table node_table(const QuadratureGrid& g) {
  Table t;
  t.points = g.nodes();
  for (const UnitVector& u : t.points) {
    t.lat.push_back(std::asin(std::clamp(u.z(), -1.0, 1.0)) * kDeg);
    t.lon.push_back(std::atan2(u.y(), u.x()) * kDeg);
  }
  return t;
}

void write_table(const fs::path& dir, const std::string& name, const Table& t, const std::vector<double>& v) {
  write_field_csv(dir / ("field_" + name + ".csv"), t.lon, t.lat, v);
}

std::vector<double> norms(const std::vector<Vec3>& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].norm();
  return out;
}

Json coeffs_json(const ScalarCoeffs& c, int family) {
  return Json{{"L", c.band_limit()}, {"family", family}, {"coeffs", c.data()}};
}

ScalarCoeffs random_coeffs(int L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarCoeffs c(L);
  for (double& x : c.data()) x = u(rng);
  return c;
}

VectorCoeffs random_field(int L, std::mt19937_64& rng) {
  VectorCoeffs c(L);
  c.c1 = random_coeffs(L, rng);
  c.c2 = random_coeffs(L, rng);
  c.c3 = random_coeffs(L, rng);
  c.c2.data()[0] = 0.0;
  c.c3.data()[0] = 0.0;
  return c;
}

std::vector<Vec3> radial_points(double R, const std::vector<UnitVector>& dirs) {
  std::vector<Vec3> xs(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) xs[i] = R * dirs[i].vec();
  return xs;
}

Json grid_json(const QuadratureGrid& g) {
  return Json{{"exactness", g.exactness_degree()}, {"n_rings", g.n_rings()}, {"n_lon", g.n_lon()}};
}

Json run_synth(const RunConfig& cfg, const fs::path& out) {
  const ExampleField ex = example_field(cfg.example);
  const PotentialSamples data =
      synthesize_data(ex, cfg.R, cfg.data_exactness, cfg.source_n_per_band, cfg.source_n_lon);

  const Table disp = display_table(cfg);
  std::vector<double> q(disp.points.size()), vr(q.size()), vt(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const UnitVector& x = disp.points[i];
    const Vec3 v = ex.v(x);
    q[i] = ex.Q(x);
    vr[i] = x.dot(v);
    vt[i] = (v - vr[i] * x.vec()).norm();
  }
  write_table(out, "Q", disp, q);
  write_table(out, "v_radial", disp, vr);
  write_table(out, "v_tangential", disp, vt);
  write_table(out, "V", node_table(data.grid), data.values);

  Json r;
  r["example"] = cfg.example;
  r["R"] = cfg.R;
  r["data_exactness"] = cfg.data_exactness;
  r["data_grid"] = grid_json(data.grid);
  r["V_norm_squared"] = data.norm_squared();
  r["V"] = data.values;
  return r;
}

Json run_forward(const RunConfig& cfg, const fs::path& out) {
  const QuadratureGrid data = gauss_grid_for_degree(cfg.data_exactness);
  const std::vector<Vec3> xs = radial_points(cfg.R, data.nodes());
  Json r;
  r["source"] = cfg.source;
  r["R"] = cfg.R;
  r["data_grid"] = grid_json(data);
  std::vector<double> V;
  if (cfg.source == "example") {
    const ExampleField ex = example_field(cfg.example);
    const QuadratureGrid src = example_source_grid(ex, cfg.source_n_per_band, cfg.source_n_lon);
    const std::vector<Vec3> m = induced_samples(ex.Q, ex.v, src);
    V = potential_direct(m, src, xs);
    r["example"] = cfg.example;
  } else {
    std::mt19937_64 rng(cfg.seed);
    const VectorCoeffs c = random_field(cfg.L, rng);
    // direct quadrature needs (1/q)^d below roundoff, q = R or 1/R
    const double q = cfg.R > 1.0 ? 1.0 / cfg.R : cfg.R;
    const int d = std::min(600, 2 * cfg.L + 2 + static_cast<int>(std::ceil(std::log(1e-14) / std::log(q))));
    const QuadratureGrid src = gauss_grid_for_degree(d);
    V = potential_direct(vsht_inverse(c, src), src, xs);
    std::vector<double> Vs(xs.size());
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Vs[i] = cfg.R > 1.0 ? potential_exterior_spectral(c, xs[i]) : potential_interior_spectral(c, xs[i]);
      diff = std::max(diff, std::abs(Vs[i] - V[i]));
      scale = std::max(scale, std::abs(Vs[i]));
    }
    r["L"] = cfg.L;
    r["seed"] = cfg.seed;
    r["source_grid"] = grid_json(src);
    r["spectral_max_relative_difference"] = scale > 0.0 ? diff / scale : diff;
    r["V_spectral"] = Vs;
  }
  write_table(out, "V", node_table(data), V);
  r["V"] = V;
  return r;
}

Json run_decompose(const RunConfig& cfg, const fs::path& out) {
  const int L = cfg.L;
  const QuadratureGrid g = gauss_grid_for_degree(2 * L + 2);
  std::vector<Vec3> f(g.size());
  const FieldSpec& fs_ = cfg.field;
  if (fs_.type == "vector_harmonic") {
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = vector_harm(fs_.family, fs_.n, fs_.k, g.node(i));
  } else if (fs_.type == "random") {
    std::mt19937_64 rng(cfg.seed);
    f = vsht_inverse(random_field(L, rng), g);
  } else {
    const ExampleField ex = example_field(fs_.example);
    f = induced_samples(ex.Q, ex.v, g);
  }

  const HardyHodgeSpectral hh = hardy_hodge_spectral(f, g, L);
  const HardyHodgeScalars via_helmholtz = hardy_hodge_from_helmholtz(helmholtz_decompose(f, g, L));
  double dual = 0.0;
  for (std::size_t i = 0; i < hh.scalars.S1.size(); ++i) {
    dual = std::max(dual, std::abs(hh.scalars.S1.data()[i] - via_helmholtz.S1.data()[i]));
    dual = std::max(dual, std::abs(hh.scalars.S2.data()[i] - via_helmholtz.S2.data()[i]));
    dual = std::max(dual, std::abs(hh.scalars.S3.data()[i] - via_helmholtz.S3.data()[i]));
  }

  Json energies = Json::array(), coeffs = Json::array();
  double total = 0.0;
  for (int i = 1; i <= 3; ++i) total += std::pow(hh.coeffs.family(i).norm(), 2);
  const Table disp = display_table(cfg);
  for (int i = 1; i <= 3; ++i) {
    const double e = std::pow(hh.coeffs.family(i).norm(), 2);
    energies.push_back(Json{{"family", i}, {"energy", e}, {"fraction", total > 0.0 ? e / total : 0.0}});
    coeffs.push_back(coeffs_json(hh.coeffs.family(i), i));
    VectorCoeffs part(L);
    part.family(i) = hh.coeffs.family(i);
    write_table(out, "part" + std::to_string(i) + "_norm", disp, norms(vsht_inverse(part, disp.points)));
  }
  Json r;
  r["L"] = L;
  r["grid"] = grid_json(g);
  r["energies"] = energies;
  r["dual_path_max_difference"] = dual;
  r["coefficients"] = coeffs;
  return r;
}

PotentialSamples load_data(const RunConfig& cfg, int& example) {
  fs::path p = cfg.data;
  if (p.is_relative()) p = cfg.base_dir / p;
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read data document '" + p.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("data document '" + p.string() + "' is not valid JSON: " + e.what());
  }
  try {
    if (doc.at("command").get<std::string>() != "synth") throw ConfigError("data document was not written by synth");
    const Json& res = doc.at("result");
    example = res.at("example").get<int>();
    const double R = res.at("R").get<double>();
    const int ex = res.at("data_exactness").get<int>();
    std::vector<double> V = res.at("V").get<std::vector<double>>();
    QuadratureGrid g = gauss_grid_for_degree(ex);
    if (V.size() != g.size()) throw ConfigError("data document: V does not match its grid");
    return PotentialSamples(R, std::move(g), std::move(V));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("data document is malformed: ") + e.what());
  }
}

std::vector<double> evaluate_expansion(const AbelPoissonBasis& basis, std::span<const double> gamma,
                                       const std::vector<UnitVector>& points) {
  const Eigen::Map<const Eigen::VectorXd> gv(gamma.data(), gamma.size());
  std::vector<double> out(points.size());
  constexpr std::size_t kChunk = 2048;
  for (std::size_t s = 0; s < points.size(); s += kChunk) {
    const std::size_t len = std::min(kChunk, points.size() - s);
    const Eigen::VectorXd v = basis.kernel_matrix(std::span<const UnitVector>(points.data() + s, len)) * gv;
    for (std::size_t i = 0; i < len; ++i) out[s + i] = v(i);
  }
  return out;
}

Json run_reconstruct(const RunConfig& cfg, const fs::path& out) {
  int example = 1;
  const PotentialSamples data = load_data(cfg, example);
  const double h = resolved_h(cfg, example);
  const int N = resolved_centers(cfg, example);
  Json r;
  r["example"] = example;
  r["h"] = h;
  r["n_centers"] = N;
  r["results"] = Json::array();
  if (cfg.alphas.empty()) return r;

  const ExampleField ex = example_field(example);
  const CapRegion region(UnitVector(Vec3(cfg.region.axis[0], cfg.region.axis[1], cfg.region.axis[2])),
                         cfg.region.threshold);
  const ReconstructionProblem p{data, ex.v, ex.v_degree, AbelPoissonBasis(fibonacci_points(N), h), region, 0.0,
                                cfg.ridge};
  const std::vector<ReconstructionResult> sweep = reconstruct_sweep(p, cfg.alphas);
  const Table disp = display_table(cfg);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const ReconstructionResult& s = sweep[i];
    const SolveReport& d = s.diagnostics;
    r["results"].push_back(Json{{"alpha", s.alpha},
                                {"misfit", s.misfit},
                                {"leakage", s.leakage},
                                {"functional", s.functional},
                                {"relative_error", relative_error(p.basis, s.gamma, ex)},
                                {"solver",
                                 {{"method", d.method},
                                  {"ridge", d.ridge},
                                  {"min_pivot", d.min_pivot},
                                  {"max_pivot", d.max_pivot},
                                  {"cg_iterations", d.cg_iterations},
                                  {"converged", d.converged},
                                  {"relative_residual", d.relative_residual}}},
                                {"gamma", s.gamma}});
    write_table(out, "Qbar_" + std::to_string(i), disp, evaluate_expansion(p.basis, s.gamma, disp.points));
  }
  return r;
}

Json run_silent(const RunConfig& cfg, const fs::path& out) {
  const Table disp = display_table(cfg);
  Json r;
  r["construction"] = cfg.construction;
  std::vector<Vec3> m;
  std::vector<double> shown;
  QuadratureGrid g = gauss_grid_for_degree(0);
  int L = cfg.L;
  if (cfg.construction == "unidirectional") {
    const auto& u = cfg.unidirectional;
    const UnidirectionalSpec spec =
        make_unidirectional_spec(u.a, u.b, UnitVector(Vec3(u.zeta[0], u.zeta[1], u.zeta[2])), u.v3);
    g = unidirectional_grid(spec, cfg.n_per_band);
    m = unidirectional_silent(spec, g);
    // support must lie in a <= xi.zeta <= b; count samples outside it
    std::size_t outside = 0;
    double outside_max = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double t = g.node(i).dot(spec.zeta);
      if (t < spec.a || t > spec.b) {
        outside_max = std::max(outside_max, m[i].norm());
        if (m[i].norm() > 0.0) ++outside;
      }
    }
    r["outside_support_nonzero_samples"] = outside;
    r["outside_support_max"] = outside_max;
    const VectorField f = unidirectional_field(spec);
    for (const UnitVector& x : disp.points) shown.push_back(f(x).norm());
  } else {
    std::mt19937_64 rng(cfg.seed);
    const ScalarCoeffs A = random_coeffs(L, rng), B = random_coeffs(L, rng);
    g = gauss_grid_for_degree(300 + 2 * L);
    m = cfg.construction == "exterior" ? make_silent_exterior(A, B, g) : make_silent_interior(A, B, g);
    shown = norms(vsht_inverse(vsht_forward(m, g, L), disp.points));
  }
  L = std::min(L, (g.exactness_degree() - 2) / 2);
  const auto e = hardy_hodge_energy(m, g, L);
  const double total = e[0] + e[1] + e[2];
  r["grid"] = grid_json(g);
  r["silence_exterior"] = silence_score(m, g, cfg.R_exterior, cfg.n_eval);
  r["silence_interior"] = silence_score(m, g, cfg.R_interior, cfg.n_eval);
  r["R_exterior"] = cfg.R_exterior;
  r["R_interior"] = cfg.R_interior;
  r["energy_L"] = L;
  r["energies"] = e;
  r["energy_fractions"] = Json::array({total > 0 ? e[0] / total : 0.0, total > 0 ? e[1] / total : 0.0,
                                       total > 0 ? e[2] / total : 0.0});
  write_table(out, "m_norm", disp, shown);
  return r;
}

Json run_existence(const RunConfig& cfg, const fs::path& out) {
  std::mt19937_64 rng(cfg.seed);
  const VectorCoeffs target = random_field(cfg.target_L, rng);
  const Vec3 zeta = UnitVector(Vec3(cfg.zeta[0], cfg.zeta[1], cfg.zeta[2])).vec();
  const double tilt = cfg.tilt;
  const VectorField v = [zeta, tilt](const UnitVector& x) {
    return Vec3(x.vec() + tilt * (zeta - zeta.dot(x.vec()) * x.vec()));
  };
  const QuadratureGrid g = gauss_grid_for_degree(cfg.grid_exactness);
  ExistenceResult res;
  try {
    res = solve_existence_truncated(target, v, cfg.L, g);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  // exterior potential of Q v, through its vector transform on the same grid
  const int Lc = (g.exactness_degree() - 2) / 2;
  const VectorCoeffs mc = vsht_forward(res.model.samples(g), g, Lc);
  const PointSet dirs = fibonacci_points(cfg.n_check);
  double diff = 0.0, scale = 0.0;
  for (const UnitVector& u : dirs.centers()) {
    const Vec3 x = cfg.R_check * u.vec();
    const double want = potential_exterior_spectral(target, x);
    diff = std::max(diff, std::abs(potential_exterior_spectral(mc, x) - want));
    scale = std::max(scale, std::abs(want));
  }

  const Table disp = display_table(cfg);
  std::vector<double> q(disp.points.size());
  const std::vector<double> m1 = sht_inverse(res.M1, std::span<const UnitVector>(disp.points));
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = m1[i] / disp.points[i].dot(v(disp.points[i]));
  write_table(out, "Q", disp, q);

  Json r;
  r["L"] = cfg.L;
  r["target_L"] = cfg.target_L;
  r["solved"] = res.solved;
  r["sigma_min"] = res.sigma_min;
  r["sigma_max"] = res.sigma_max;
  r["relative_residual"] = res.relative_residual;
  r["exterior_max_relative_mismatch"] = scale > 0.0 ? diff / scale : diff;
  r["M1"] = coeffs_json(res.M1, 1);
  r["M2"] = coeffs_json(res.M2, 2);
  return r;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary | std::ios::trunc);
  if (!o) throw IoError("cannot write '" + path.string() + "'");
  o << text;
  o.close();
  if (!o) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, std::span<const double> lon_deg,
                     std::span<const double> lat_deg, std::span<const double> values) {
  if (lon_deg.size() != values.size() || lat_deg.size() != values.size())
    throw std::invalid_argument("write_field_csv: column lengths differ");
  std::string s = "lon_deg,lat_deg,value\n";
  s.reserve(values.size() * 64);
  char buf[96];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", lon_deg[i], lat_deg[i], values[i]);
    s += buf;
  }
  write_text(path, s);
}

Json run_command(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create output directory '" + out_dir.string() + "'");

  Json result;
  try {
    switch (cfg.command) {
      case Command::synth: result = run_synth(cfg, out_dir); break;
      case Command::forward: result = run_forward(cfg, out_dir); break;
      case Command::decompose: result = run_decompose(cfg, out_dir); break;
      case Command::reconstruct: result = run_reconstruct(cfg, out_dir); break;
      case Command::silent: result = run_silent(cfg, out_dir); break;
      case Command::existence: result = run_existence(cfg, out_dir); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Json doc;
  doc["command"] = command_name(cfg.command);
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = to_json(cfg);
  doc["result"] = std::move(result);
  write_text(out_dir / "result.json", doc.dump(2) + "\n");
  return doc;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Hardy-Hodge decomposition and induced-magnetization inversion on the sphere", "spheremag"};
  std::string command, config, out = ".";
  app.add_option("command", command, "synth | forward | decompose | reconstruct | silent | existence")
      ->required()
      ->check(CLI::IsMember({"synth", "forward", "decompose", "reconstruct", "silent", "existence"}));
  app.add_option("--config", config, "JSON config document")->required();
  app.add_option("--out", out, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    const RunConfig cfg = load_config(parse_command(command), config);
    run_command(cfg, out);
  } catch (const IoError& e) {
    std::cerr << "spheremag: I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spheremag: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace spheremag::cli
