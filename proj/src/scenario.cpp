// Copyright 2026 The decosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "decosim/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <random>

#include "decosim/averaging.hpp"
#include "decosim/csv.hpp"
#include "decosim/digest.hpp"
#include "decosim/dynamics.hpp"
#include "decosim/localization.hpp"
#include "decosim/twostate.hpp"

namespace decosim {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct NamedOutput {
  std::string path;
  std::string content;
};

// Deterministic generator: raw mt19937_64 bits plus a hand-rolled
// Box-Muller, so the stream does not depend on library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 1e-300);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

Vector random_amplitudes(Rng& rng, Eigen::Index d) {
  Vector v(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    v(k) = Complex(rng.gaussian(), rng.gaussian());
  }
  return v / v.norm();
}

// One-parameter fit of y = c / x, least squares in log space with the
// slope pinned at -1.
struct InverseFit {
  double c = 0.0;
  double r_squared = 0.0;
};

InverseFit fit_inverse_law(const std::vector<double>& x,
                           const std::vector<double>& y) {
  InverseFit fit;
  const auto n = x.size();
  double mean_c = 0.0, mean_ly = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mean_c += std::log(y[k]) + std::log(x[k]);
    mean_ly += std::log(y[k]);
  }
  mean_c /= static_cast<double>(n);
  mean_ly /= static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double pred = mean_c - std::log(x[k]);
    ss_res += (std::log(y[k]) - pred) * (std::log(y[k]) - pred);
    ss_tot += (std::log(y[k]) - mean_ly) * (std::log(y[k]) - mean_ly);
  }
  fit.c = std::exp(mean_c);
  fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// ---------------------------------------------------------------------
// thermal: energy-basis trajectory averaging over a window sweep
// ---------------------------------------------------------------------

std::vector<NamedOutput> run_thermal(const json& p, json& summary) {
  const int levels = p.at("levels").get<int>();
  const double hbar = p.at("hbar").get<double>();
  std::vector<double> energies;
  for (const auto& v : p.at("energies")) energies.push_back(v.get<double>());

  const auto d = static_cast<Eigen::Index>(levels);
  Vector amp;
  if (p.at("initial_state").get<std::string>() == "uniform") {
    amp = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(levels)));
  } else {
    Rng rng(p.at("seed").get<std::uint64_t>());
    amp = random_amplitudes(rng, d);
  }
  Matrix rho0 = amp * amp.adjoint();

  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  for (int i = 0; i < levels; ++i) {
    for (int j = i + 1; j < levels; ++j) {
      double g = std::abs(energies[i] - energies[j]);
      min_gap = std::min(min_gap, g);
      max_gap = std::max(max_gap, g);
    }
  }

  const double w_lo = p.at("window_min").get<double>();
  const double w_hi = p.at("window_max").get<double>();
  const int n_windows = p.at("n_windows").get<int>();

  CompositeSpace space({static_cast<std::size_t>(levels)});
  auto averaged_at = [&](double T) {
    // Step chosen so the fastest phase advances < 0.11 rad per sample.
    double h = 0.11 * hbar / max_gap;
    auto steps = std::max<std::size_t>(
        200, static_cast<std::size_t>(std::ceil(T / h)));
    steps = std::min<std::size_t>(steps, 2000000);
    DensityAverager avg;
    Matrix rho = rho0;
    for (std::size_t k = 0; k <= steps; ++k) {
      double t = T * static_cast<double>(k) / static_cast<double>(steps);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          rho(i, j) = rho0(i, j) * std::exp(Complex(
                          0.0, -(energies[static_cast<std::size_t>(i)] -
                                 energies[static_cast<std::size_t>(j)]) *
                                   t / hbar));
        }
      }
      avg.add(t, rho);
    }
    return avg.finish(space, "energy");
  };

  CsvWriter csv({"window", "offdiag_l1", "offdiag_max", "purity", "entropy"});
  std::vector<double> windows, l1;
  DensityMatrix longest = DensityMatrix(space, rho0, "energy");
  for (int k = 0; k < n_windows; ++k) {
    double T = w_lo * std::pow(w_hi / w_lo,
                               static_cast<double>(k) /
                                   static_cast<double>(n_windows - 1));
    DensityMatrix avg = averaged_at(T);
    CoherenceReport rep = coherence_report(avg, T);
    csv.add_row({rep.window, rep.offdiag_l1, rep.offdiag_max, rep.purity,
                 rep.entropy});
    windows.push_back(T);
    l1.push_back(rep.offdiag_l1);
    if (k == n_windows - 1) longest = avg;
  }

  InverseFit fit = fit_inverse_law(windows, l1);

  Matrix h_energy = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    h_energy(i, i) = energies[static_cast<std::size_t>(i)];
  }
  SpectralDecomposition basis =
      spectral_decompose(OperatorMatrix(space, h_energy, true));
  DensityMatrix projected =
      dephase_in_basis(DensityMatrix(space, rho0, "energy"), basis);

  const double mc_lo = p.at("mc_window")[0].get<double>();
  const double mc_hi = p.at("mc_window")[1].get<double>();

  summary["fit"] = {{"c", fit.c}, {"r_squared", fit.r_squared}};
  summary["min_gap"] = min_gap;
  summary["dephase_projection"] = {
      {"offdiag_l1", offdiag_l1(projected.entries())},
      {"delta_vs_longest_window",
       {{"offdiag_l1", std::abs(offdiag_l1(longest.entries()) -
                                offdiag_l1(projected.entries()))},
        {"max_entry", max_abs(longest.entries() - projected.entries())}}}};
  summary["microcanonical"] = {
      {"window", json::array({mc_lo, mc_hi})},
      {"trace_distance", microcanonical_compare(projected, mc_lo, mc_hi, basis)}};

  return {{"windows.csv", csv.str()}};
}

// ---------------------------------------------------------------------
// twostate: coherence factor, window average, composite reduction
// ---------------------------------------------------------------------

std::vector<NamedOutput> run_twostate(const json& p, json& summary) {
  TwoStateModel model;
  model.eps_up = p.at("eps_up").get<double>();
  model.eps_down = p.at("eps_down").get<double>();
  model.lambda_up_rate = p.at("lambda_up").get<double>();
  model.lambda_down_rate = p.at("lambda_down").get<double>();
  model.env_dim = p.at("env_dim").get<std::size_t>();
  model.hbar = p.at("hbar").get<double>();
  double v = p.at("v_offdiag").get<double>();
  model.v_matrix = Matrix::Zero(2, 2);
  model.v_matrix(0, 1) = v;
  model.v_matrix(1, 0) = v;
  validate(model);

  const double T = p.at("T").get<double>();
  const int n_samples = p.at("n_samples").get<int>();
  const double w = p.at("weight_up").get<double>();
  Complex a(std::sqrt(w), 0.0), b(std::sqrt(1.0 - w), 0.0);

  double tau = decoherence_time(model);  // raises on degenerate actions

  HamiltonianSplit split = build_dephasing_composite(model);
  SpectralPropagator prop(split.total(), model.hbar);
  StateVector psi = initial_composite_state(model, a, b);

  CsvWriter csv({"t", "re_r", "im_r", "avg_r_modulus", "offdiag_l1_reduced",
                 "exact_offdiag_V", "estimate_offdiag_V"});
  double t_prev = 0.0;
  for (int k = 0; k <= n_samples; ++k) {
    double t = T * static_cast<double>(k) / static_cast<double>(n_samples);
    psi = prop.apply(psi, t - t_prev);
    t_prev = t;
    Complex r = coherence_factor(model, t);
    double avg_mod = std::abs(coherence_factor_window_average(model, t));
    DensityMatrix reduced = partial_trace(DensityMatrix::from_state(psi), {0});
    double exact_v = 0.0, estimate_v = 0.0;
    if (v != 0.0) {
      NoncommutativeGrowth g = noncommutative_growth(model, t);
      exact_v = std::abs(g.exact);
      estimate_v = std::abs(g.estimate);
    }
    csv.add_row({t, r.real(), r.imag(), avg_mod,
                 offdiag_l1(reduced.entries()), exact_v, estimate_v});
  }

  summary["tau"] = tau;
  summary["lambda_gap_rate"] = model.lambda_up_rate - model.lambda_down_rate;
  summary["env_dim"] = model.env_dim;

  auto family =
      uniform_theta_family(p.at("n_theta").get<std::size_t>());
  double gap = lambda_theta(model, 0.0, T) - lambda_theta(model, kPi / 2, T);
  json saddle;
  saddle["gap_at_T"] = gap;
  double threshold = p.at("gap_threshold").get<double>();
  if (std::abs(gap) >= threshold * model.hbar) {
    PointerPair pair = saddle_point_reduce(model, family, T, threshold);
    saddle["reached"] = true;
    saddle["c_up"] = json::array({pair.c_up.real(), pair.c_up.imag()});
    saddle["c_down"] =
        json::array({pair.c_down.real(), pair.c_down.imag()});
    Eigen::Vector2cd sum = theta_grid_sum(model, family, T);
    Eigen::Vector2cd pointer = pointer_expression(model, pair, T);
    saddle["grid_vs_pointer_rel_error"] = std::max(
        std::abs(sum(0) - pointer(0)) / std::abs(pointer(0)),
        std::abs(sum(1) - pointer(1)) / std::abs(pointer(1)));
  } else {
    saddle["reached"] = false;
  }
  summary["saddle"] = saddle;

  return {{"trajectory.csv", csv.str()}};
}

// ---------------------------------------------------------------------
// noncommutative: exact vs first-order off-diagonal growth
// ---------------------------------------------------------------------

std::vector<NamedOutput> run_noncommutative(const json& p, json& summary) {
  TwoStateModel model;
  model.eps_up = p.at("eps_up").get<double>();
  model.eps_down = p.at("eps_down").get<double>();
  model.hbar = p.at("hbar").get<double>();
  double v = p.at("v_offdiag").get<double>();
  model.v_matrix = Matrix::Zero(2, 2);
  model.v_matrix(0, 1) = v;
  model.v_matrix(1, 0) = v;
  validate(model);

  const double t_max = p.at("t_max").get<double>();
  const int n_samples = p.at("n_samples").get<int>();
  double de = std::abs(model.eps_up - model.eps_down);
  double validity =
      0.1 * std::min(2.0 * model.hbar / de, model.hbar / (2.0 * std::abs(v)));

  CsvWriter csv({"t", "exact_re", "exact_im", "estimate_re", "estimate_im",
                 "abs_error"});
  double max_rel_in_window = 0.0;
  for (int k = 0; k <= n_samples; ++k) {
    double t = t_max * static_cast<double>(k) / static_cast<double>(n_samples);
    NoncommutativeGrowth g = noncommutative_growth(model, t);
    csv.add_row({t, g.exact.real(), g.exact.imag(), g.estimate.real(),
                 g.estimate.imag(), g.difference});
    if (t > 0.0 && t <= validity) {
      max_rel_in_window = std::max(
          max_rel_in_window, g.difference / std::abs(g.estimate));
    }
  }

  summary["validity_t"] = validity;
  summary["max_rel_error_within_validity"] = max_rel_in_window;
  return {{"growth.csv", csv.str()}};
}

// ---------------------------------------------------------------------
// localize: monitored lattice run
// ---------------------------------------------------------------------

LatticeModel lattice_from_params(const json& p) {
  const auto n = p.at("n_sites").get<std::size_t>();
  const double hbar = p.at("hbar").get<double>();
  const double amp = p.at("potential_amplitude").get<double>();
  std::string prof = p.at("potential_profile").get<std::string>();

  std::vector<double> pot(n);
  if (prof == "cosine") {
    for (std::size_t r = 0; r < n; ++r) {
      pot[r] = amp * std::cos(2.0 * kPi * static_cast<double>(r) /
                              static_cast<double>(n));
    }
  } else if (prof == "linear") {
    for (std::size_t r = 0; r < n; ++r) {
      pot[r] = amp * static_cast<double>(r);
    }
  } else if (prof == "double_well") {
    double wpos = static_cast<double>(n) / 4.0;
    for (std::size_t r = 0; r < n; ++r) {
      double x = static_cast<double>(r) - static_cast<double>(n) / 2.0;
      double q = x * x - wpos * wpos;
      pot[r] = amp * q * q / (wpos * wpos * wpos * wpos);
    }
  } else {
    for (std::size_t r = 0; r < n; ++r) {
      pot[r] = p.at("potential_values")[r].get<double>();
    }
  }

  LatticeModel m = p.contains("hop")
                       ? LatticeModel::with_hop(n, p.at("hop").get<double>(),
                                                pot, hbar)
                       : LatticeModel::with_mass(
                             n, p.at("mass_proxy").get<double>(), pot, hbar);
  m.env_monitors = p.at("env_monitors").get<std::size_t>();

  std::string mode = p.at("coupling_mode").get<std::string>();
  m.couplings.clear();
  if (mode == "custom") {
    for (const auto& prof_arr : p.at("coupling_values")) {
      std::vector<double> c;
      for (const auto& x : prof_arr) c.push_back(x.get<double>());
      m.couplings.push_back(std::move(c));
    }
  } else if (mode == "potential") {
    for (std::size_t e = 0; e < m.env_monitors; ++e) {
      double g = p.at("coupling_strengths")[e].get<double>();
      std::vector<double> c(n);
      for (std::size_t r = 0; r < n; ++r) c[r] = g * pot[r];
      m.couplings.push_back(std::move(c));
    }
  } else {  // quadrature: the two field components cos and sin
    for (std::size_t e = 0; e < m.env_monitors; ++e) {
      double g = p.at("coupling_strengths")[e].get<double>();
      std::vector<double> c(n);
      for (std::size_t r = 0; r < n; ++r) {
        double angle = 2.0 * kPi * static_cast<double>(r) /
                       static_cast<double>(n);
        c[r] = g * (e == 0 ? std::cos(angle) : std::sin(angle));
      }
      m.couplings.push_back(std::move(c));
    }
  }
  m.monitor_splittings.clear();
  for (const auto& s : p.at("monitor_splittings")) {
    m.monitor_splittings.push_back(s.get<double>());
  }
  validate(m);
  return m;
}

std::vector<NamedOutput> run_localize(const json& p, json& summary) {
  LatticeModel m = lattice_from_params(p);
  const auto n = m.n_sites;

  std::string packet_kind = p.at("packet_kind").get<std::string>();
  StateVector packet = [&] {
    if (packet_kind == "gaussian") {
      return gaussian_packet(m, p.at("packet_center").get<double>(),
                             p.at("packet_sigma").get<double>(),
                             p.at("packet_k").get<double>());
    }
    if (packet_kind == "plane") {
      return plane_wave_packet(m, p.at("plane_k_index").get<std::size_t>());
    }
    Rng rng(p.at("seed").get<std::uint64_t>());
    return StateVector(CompositeSpace({n}),
                       random_amplitudes(rng, static_cast<Eigen::Index>(n)));
  }();

  MonitorInit init = p.at("monitor_init").get<std::string>() == "plus"
                         ? MonitorInit::plus_superposition
                         : MonitorInit::polarized_up;
  StateVector psi0 = initial_composite_state(m, packet, init);

  const double t_max = p.at("t_max").get<double>();
  const int n_samples = p.at("n_samples").get<int>();
  std::vector<double> times;
  for (int k = 0; k <= n_samples; ++k) {
    times.push_back(t_max * static_cast<double>(k) /
                    static_cast<double>(n_samples));
  }
  auto traj = evolve_and_reduce(m, psi0, times);

  CsvWriter csv({"t", "offdiag_l1", "coherence_length", "purity", "mean_R",
                 "var_R"});
  for (const auto& [t, rho] : traj) {
    CoherenceReport rep = coherence_report(rho, t);
    csv.add_row({t, rep.offdiag_l1, coherence_length(rho), rep.purity,
                 mean_position(rho), position_variance(rho)});
  }

  json ptr_json = json::array();
  std::vector<std::size_t> ptr;
  try {
    ptr = pointer_positions(m);
    for (auto s : ptr) ptr_json.push_back(s);
  } catch (const regime_error&) {
    // constant potential: every position is extremal, none selected
  }
  summary["pointer_positions"] = ptr_json;

  auto matrix_json = [&](bool dec) {
    json rows = json::array();
    for (std::size_t i = 0; i < ptr.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < ptr.size(); ++j) {
        if (i == j) {
          row.push_back(nullptr);
          continue;
        }
        Timescales ts = timescales(m, ptr[i], ptr[j]);
        double val = dec ? ts.t_dec : ts.t_coh;
        if (std::isinf(val)) {
          row.push_back(nullptr);  // no-decoherence sentinel
        } else {
          row.push_back(val);
        }
      }
      rows.push_back(row);
    }
    return rows;
  };
  if (ptr.size() >= 2) {
    summary["t_dec_matrix"] = matrix_json(true);
    summary["t_coh_matrix"] = matrix_json(false);
    Timescales head = timescales(m, ptr[0], ptr[1]);
    summary["t_dec"] = std::isinf(head.t_dec) ? json() : json(head.t_dec);
    summary["t_coh"] = head.t_coh;
  }

  BranchResolutionResult res = branch_resolution(
      m, p.at("resolution_T").get<double>(),
      p.at("separation_factor").get<double>());
  if (res.resolved) {
    summary["branch_resolution"] = res.separation;
  } else {
    summary["branch_resolution"] = "unresolved at this T";
  }
  summary["separation_factor"] = p.at("separation_factor").get<double>();
  summary["effective_potential"] = effective_potential(m);

  return {{"trajectory.csv", csv.str()}};
}

// ---------------------------------------------------------------------
// plumbing
// ---------------------------------------------------------------------

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw io_error("cannot open for writing: " + path.string());
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw io_error("write failed: " + path.string());
  }
}

RunManifest write_outputs(const ScenarioConfig& cfg,
                          const std::filesystem::path& out_dir,
                          std::vector<NamedOutput> outputs,
                          double wall_time_s) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw io_error("cannot create output directory: " + out_dir.string());
  }
  RunManifest manifest;
  manifest.config_echo = {{"kind", to_string(cfg.kind)},
                          {"schema_version", cfg.schema_version},
                          {"parameters", cfg.parameters}};
  manifest.wall_time_s = wall_time_s;
  for (const auto& out : outputs) {
    write_file(out_dir / out.path, out.content);
    manifest.outputs.push_back({out.path, fnv1a64_hex(out.content)});
  }
  manifest.manifest_path = out_dir / "manifest.json";
  write_file(manifest.manifest_path, manifest.to_json().dump(2) + "\n");
  return manifest;
}

RunManifest run_sweep(const ScenarioConfig& cfg,
                      const std::filesystem::path& out_dir) {
  const json& p = cfg.parameters;
  const std::string key = p.at("key").get<std::string>();
  const auto max_conc = p.at("max_concurrency").get<std::size_t>();

  std::vector<ScenarioConfig> members;
  for (const auto& value : p.at("values")) {
    json doc = p.at("base");
    if (!doc.contains("parameters") || !doc["parameters"].is_object()) {
      doc["parameters"] = json::object();
    }
    doc["parameters"][key] = value;
    members.push_back(validate_config_json(doc));
  }

  auto start = std::chrono::steady_clock::now();
  std::vector<RunManifest> results(members.size());
  std::vector<std::exception_ptr> failures(members.size());
  std::size_t next = 0;
  while (next < members.size()) {
    std::size_t batch = std::min(max_conc, members.size() - next);
    std::vector<std::future<void>> futs;
    for (std::size_t b = 0; b < batch; ++b) {
      std::size_t idx = next + b;
      char sub[16];
      std::snprintf(sub, sizeof(sub), "run_%03zu", idx);
      std::filesystem::path dir = out_dir / sub;
      futs.push_back(std::async(std::launch::async, [&, idx, dir] {
        try {
          results[idx] = run_scenario(members[idx], dir);
        } catch (...) {
          failures[idx] = std::current_exception();
        }
      }));
    }
    for (auto& f : futs) f.wait();
    next += batch;
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  // The aggregate manifest is written sequentially after every member run.
  std::vector<NamedOutput> none;
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  RunManifest manifest;
  manifest.config_echo = {{"kind", to_string(cfg.kind)},
                          {"schema_version", cfg.schema_version},
                          {"parameters", cfg.parameters}};
  manifest.wall_time_s = wall;
  for (std::size_t idx = 0; idx < results.size(); ++idx) {
    char sub[16];
    std::snprintf(sub, sizeof(sub), "run_%03zu", idx);
    for (const auto& rec : results[idx].outputs) {
      manifest.outputs.push_back(
          {std::string(sub) + "/" + rec.path, rec.fnv1a64});
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  manifest.manifest_path = out_dir / "manifest.json";
  write_file(manifest.manifest_path, manifest.to_json().dump(2) + "\n");
  return manifest;
}

}  // namespace

json RunManifest::to_json() const {
  json outs = json::array();
  for (const auto& rec : outputs) {
    outs.push_back({{"path", rec.path}, {"fnv1a64", rec.fnv1a64}});
  }
  return json{{"schema_version", 1},
              {"config", config_echo},
              {"outputs", outs},
              {"wall_time_s", wall_time_s}};
}

RunManifest run_scenario(const ScenarioConfig& cfg,
                         const std::filesystem::path& out_dir) {
  if (cfg.kind == ScenarioKind::sweep) {
    return run_sweep(cfg, out_dir);
  }
  auto start = std::chrono::steady_clock::now();
  json summary;
  std::vector<NamedOutput> outputs;
  switch (cfg.kind) {
    case ScenarioKind::thermal:
      outputs = run_thermal(cfg.parameters, summary);
      break;
    case ScenarioKind::twostate:
      outputs = run_twostate(cfg.parameters, summary);
      break;
    case ScenarioKind::noncommutative:
      outputs = run_noncommutative(cfg.parameters, summary);
      break;
    case ScenarioKind::localize:
      outputs = run_localize(cfg.parameters, summary);
      break;
    case ScenarioKind::sweep:
      break;  // handled above
  }
  outputs.push_back({"summary.json", summary.dump(2) + "\n"});
  double wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return write_outputs(cfg, out_dir, std::move(outputs), wall);
}

}  // namespace decosim
