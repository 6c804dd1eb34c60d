#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "dispent/asymptotics.hpp"
#include "dispent/casimir_ee.hpp"
#include "dispent/errors.hpp"
#include "dispent/gaussian_core.hpp"
#include "dispent/lattice_oracle.hpp"
#include "dispent/mode_spectrum.hpp"
#include "dispent/parallel.hpp"
#include "dispent/scattering.hpp"
#include "dispent/spectral_contour.hpp"

#ifndef DISPENT_VERSION
#define DISPENT_VERSION "unknown"
#endif

namespace dispent::cli {

using json = nlohmann::ordered_json;
using std::numbers::pi;

namespace {

json summary_head(const CommandContext& ctx) {
  json j;
  j["tool"] = "dispent";
  j["version"] = DISPENT_VERSION;
  j["command"] = ctx.command;
  j["config_sha256"] = sha256_hex(ctx.config.text());
  return j;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  v.back() = b;
  return v;
}

const std::vector<NamedMaterial>& default_materials() {
  static const std::vector<NamedMaterial> m = {{"lorentz", Lorentz{1.0, 1.0, 0.5}}};
  return m;
}

std::optional<LorentzParams> lorentz_params(const SusceptibilityModel& m) {
  if (const auto* l = std::get_if<Lorentz>(&m)) return LorentzParams{l->omega_p, l->omega_0, l->gamma};
  return std::nullopt;
}

ChainSpec chain(int N, std::vector<int> A, std::vector<int> B, double omega_p, double mass = 0.5) {
  ChainSpec s;
  s.N = N;
  s.body_sites_A = std::move(A);
  s.body_sites_B = std::move(B);
  s.omega_p = omega_p;
  s.field_mass = mass;
  return s;
}

std::vector<int> sites(int a, int b) {
  std::vector<int> v;
  for (int i = a; i < b; ++i) v.push_back(i);
  return v;
}

const std::vector<NamedChain>& default_chains() {
  static const std::vector<NamedChain> c = {
      {"n8", chain(8, {1, 2}, {5}, 1.0)},
      {"n12", chain(12, sites(2, 5), sites(8, 10), 0.7)},
      {"n16", chain(16, sites(3, 6), sites(9, 12), 1.0, 0.3)},
      {"n20", chain(20, sites(0, 4), sites(10, 14), 1.5)},
      {"n24", chain(24, sites(4, 7), sites(16, 19), 1.0)},
  };
  return c;
}

ChainSpec without_bodies(ChainSpec s, bool drop_A, bool drop_B) {
  if (drop_A) s.body_sites_A.clear();
  if (drop_B) s.body_sites_B.clear();
  return s;
}

double field_entropy(const ChainSpec& s, double alpha) {
  const auto mu = symplectic_spectrum(reduce_to_field(ground_state_covariance(s), s));
  return alpha == 1.0 ? vn_entropy(mu) : renyi_entropy(mu, alpha);
}

double direct_difference(const ChainSpec& s, double alpha) {
  return field_entropy(s, alpha) - field_entropy(without_bodies(s, true, false), alpha) -
         field_entropy(without_bodies(s, false, true), alpha) + field_entropy(without_bodies(s, true, true), alpha);
}

}  // namespace

int cmd_dispersion(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const auto ks = cfg.grid("dispersion", "k", logspace(1e-3, 1e3, 61));
  CsvTable table({"material", "k", "g", "h", "mu", "n", "E", "s_vn", "s_2"});
  json j = summary_head(ctx);
  json mats = json::array();
  for (const auto& [name, model] : cfg.materials(default_materials())) {
    const auto curve = dispersion_curve(model, ks);
    double max_dev = 0.0;
    for (const auto& r : curve) {
      table.add({name, r.k, r.g, r.h, r.mu, r.n, r.E, r.s_vn, r.s_2});
      max_dev = std::max(max_dev, 2.0 * r.n);
    }
    json m;
    m["name"] = name;
    m["model"] = describe(model);
    m["max_abs_mu_minus_1"] = max_dev;
    if (const auto p = lorentz_params(model); p && p->omega_p > 0.0) {
      try {
        const SmallKLimits lim = small_k_limits(*p);
        const auto& first = curve.front();
        m["small_k_law"] = {{"law", "E_k ~ nu sqrt(k)"},
                            {"nu", lim.nu},
                            {"nu_exact", lim.nu_exact},
                            {"k", first.k},
                            {"E_over_nu_exact_sqrt_k", first.E / (lim.nu_exact * std::sqrt(first.k))}};
      } catch (const DomainError& e) {
        m["small_k_law"] = {{"law", "unavailable"}, {"reason", e.what()}};
      }
    }
    mats.push_back(m);
  }
  j["materials"] = mats;
  emit(ctx.out, table, j);
  return kExitOk;
}

int cmd_entropy_density(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const int d = cfg.integer("entropy", "d", 3);
  const auto cutoffs = cfg.grid("entropy", "cutoff", logspace(1e2, 1e5, 13));
  CsvTable table({"material", "d", "cutoff", "value", "abs_error"});
  json j = summary_head(ctx);
  json mats = json::array();
  for (const auto& [name, model] : cfg.materials(default_materials())) {
    std::vector<EntropyDensityResult> res(cutoffs.size());
    parallel_for(cutoffs.size(), [&](std::size_t i) { res[i] = entropy_density(model, cutoffs[i], d); });
    std::vector<double> values;
    for (const auto& r : res) {
      table.add({name, static_cast<long long>(d), r.cutoff, r.value, r.abs_error});
      values.push_back(r.value);
    }
    json m;
    m["name"] = name;
    m["model"] = describe(model);
    try {
      const CutoffFit f = fit_log_power(cutoffs, values);
      if (f.skipped) {
        m["fit"] = {{"skipped", true}};
      } else {
        m["fit"] = {{"exponent_of_log", f.exponent_of_log}, {"prefactor", f.prefactor},  {"offset", f.offset},
                    {"residual_m2", f.residual_m2},         {"residual_m3", f.residual_m3}, {"residual_ratio", f.residual_ratio}};
      }
    } catch (const ValidationError& e) {
      m["fit"] = {{"skipped", true}, {"reason", e.what()}};
    }
    mats.push_back(m);
  }
  j["d"] = d;
  j["materials"] = mats;
  emit(ctx.out, table, j);
  return kExitOk;
}

int cmd_soft_modes(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const int d = cfg.integer("soft", "d", 3);
  const auto kmins = cfg.grid("soft", "k_min", {1e-4, 1e-3});
  std::optional<double> eps;
  if (cfg.has("soft", "eps_ir")) eps = cfg.number("soft", "eps_ir", 0.0);
  CsvTable table({"material", "d", "k_min", "N", "E_total", "delta_N2"});
  json j = summary_head(ctx);
  json mats = json::array();
  for (const auto& [name, model] : cfg.materials(default_materials())) {
    std::vector<SoftModeAggregates> res(kmins.size());
    parallel_for(kmins.size(), [&](std::size_t i) { res[i] = soft_mode_aggregates(model, kmins[i], d, eps); });
    std::vector<double> N, E;
    for (std::size_t i = 0; i < kmins.size(); ++i) {
      table.add({name, static_cast<long long>(d), kmins[i], res[i].N, res[i].E_total, res[i].delta_N2});
      N.push_back(res[i].N);
      E.push_back(res[i].E_total);
    }
    json m;
    m["name"] = name;
    m["model"] = describe(model);
    auto positive = [](const std::vector<double>& v) { return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; }); };
    if (kmins.size() >= 5 && positive(N) && positive(E)) {
      m["N_exponent"] = power_law_fit(kmins, N).exponent;
      m["E_exponent"] = power_law_fit(kmins, E).exponent;
    }
    mats.push_back(m);
  }
  j["d"] = d;
  j["materials"] = mats;
  emit(ctx.out, table, j);
  return kExitOk;
}

int cmd_asymptotics_check(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const double tol = cfg.tolerance(ctx.tol, 1e-6);
  const auto ks = cfg.grid("asymptotics", "k", {100.0, 200.0, 400.0});
  CsvTable table({"material", "k", "II_closed", "II_quadrature", "III_closed", "III_quadrature", "excess",
                  "excess_log_law", "excess_complete", "s_vn", "s_large_k"});
  json j = summary_head(ctx);
  json mats = json::array();
  bool ok = true;
  for (const auto& [name, model] : cfg.materials(default_materials())) {
    const auto p = lorentz_params(model);
    if (!p) throw ConfigError("asymptotics-check: material '" + name + "' is not a lorentz model");
    double worst = 0.0;
    for (double k : ks) {
      const double ii = II_closed_form(*p, k), iq = II_integral(*p, k);
      const double iii = III_closed_form(*p, k), iiq = III_integral(*p, k);
      worst = std::max({worst, std::abs(ii / iq - 1.0), std::abs(iii / iiq - 1.0)});
      const ModeRecord r = mode_record(model, k);
      table.add({name, k, ii, iq, iii, iiq, mode_decomposition(model, k).excess, gh_large_k(*p, k) - pi * pi / 4,
                 gh_large_k_complete(*p, k) - pi * pi / 4, r.s_vn, entropy_integrand_large_k(*p, k)});
    }
    json m;
    m["name"] = name;
    m["model"] = describe(model);
    m["closed_form_max_rel_deviation"] = worst;
    m["closed_form_pass"] = worst <= tol;
    ok = ok && worst <= tol;
    try {
      const SmallKLimits lim = small_k_limits(*p);
      m["small_k"] = {{"g_coeff", lim.g_coeff}, {"h_limit", lim.h_limit}, {"h_limit_exact", lim.h_limit_exact},
                      {"nu", lim.nu},           {"nu_exact", lim.nu_exact}};
    } catch (const DomainError& e) {
      m["small_k"] = {{"unavailable", e.what()}};
    }
    mats.push_back(m);
  }
  j["tolerance"] = tol;
  j["materials"] = mats;
  j["pass"] = ok;
  emit(ctx.out, table, j);
  if (!ok) std::cerr << "asymptotics-check: closed forms disagree with quadrature beyond " << tol << '\n';
  return ok ? kExitOk : kExitVerification;
}

int cmd_casimir(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  BodyPairConfig base;
  base.omega_pA = cfg.number("casimir", "omega_pA", base.omega_pA);
  base.omega_pB = cfg.number("casimir", "omega_pB", base.omega_pB);
  base.V_A = cfg.number("casimir", "V_A", base.V_A);
  base.V_B = cfg.number("casimir", "V_B", base.V_B);
  base.omega_0 = cfg.number("casimir", "omega_0", base.omega_0);
  const auto Rs = cfg.grid("casimir", "R", logspace(10.0, 80.0, 8));
  for (double R : Rs) {
    BodyPairConfig c = base;
    c.R = R;
    try {
      validate(c);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("[casimir]: ") + e.what());
    }
  }
  const auto rows = casimir_scan(base, Rs);
  CsvTable table({"R", "K", "S2R_numeric", "S2R_asymptote", "ratio"});
  std::vector<double> K;
  bool negative = true;
  for (const auto& r : rows) {
    table.add({r.R, r.K, r.S2R_numeric, r.S2R_asymptote, r.ratio});
    K.push_back(r.K);
    negative = negative && r.S2R_numeric < 0.0;
  }
  json j = summary_head(ctx);
  j["pair"] = {{"omega_pA", base.omega_pA}, {"omega_pB", base.omega_pB}, {"V_A", base.V_A},
               {"V_B", base.V_B},           {"omega_0", base.omega_0}};
  if (Rs.size() >= 5) {
    const PowerLawFit f = power_law_fit(Rs, K);
    j["fit"] = {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"r_squared", f.r_squared}};
  }
  j["ratio_at_largest_R"] = rows.back().ratio;
  j["s2R_negative"] = negative;
  if (cfg.flag("casimir", "subleading", false)) {
    const QuadratureResult s = subleading_r6_coefficient();
    j["subleading_coefficient"] = {{"value", s.value}, {"abs_error_estimate", s.abs_error_estimate}};
  }
  emit(ctx.out, table, j);
  return kExitOk;
}

int cmd_plate(const CommandContext& ctx) {
  const auto Rs = ctx.config.grid("plate", "R", {1.0, 2.0, 3.0, 5.0, 7.0, 10.0});
  std::vector<PlateSum> res(Rs.size());
  parallel_for(Rs.size(), [&](std::size_t i) { res[i] = plate_pair_sum(Rs[i]); });
  CsvTable table({"R", "numeric", "analytic", "abs_error_estimate"});
  std::vector<double> v;
  double worst = 0.0;
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    table.add({Rs[i], res[i].numeric, res[i].analytic, res[i].abs_error_estimate});
    v.push_back(res[i].numeric);
    worst = std::max(worst, std::abs(res[i].numeric - res[i].analytic));
  }
  json j = summary_head(ctx);
  j["max_abs_deviation"] = worst;
  if (Rs.size() >= 5) j["exponent"] = power_law_fit(Rs, v).exponent;
  emit(ctx.out, table, j);
  return kExitOk;
}

namespace {

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

BodyGrid random_body(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SusceptibilityModel model = Lorentz{0.2 + 2.0 * u(rng), 0.1 + 2.0 * u(rng), 1.5 * u(rng)};
  switch (static_cast<int>(u(rng) * 3.0)) {
    case 0:
      return make_box(Eigen::Vector3d::Zero(), Eigen::Vector3d(0.5 + u(rng), 0.5 + u(rng), 0.5 + u(rng)), 0.25, model);
    case 1:
      return make_sphere(Eigen::Vector3d(u(rng), 0, 0), 0.4 + 0.4 * u(rng), 0.2, model);
    default: {
      std::vector<Eigen::Vector3d> pts;
      std::vector<double> wts;
      const int n = 5 + static_cast<int>(20 * u(rng));
      for (int i = 0; i < n; ++i) {
        pts.emplace_back(2 * u(rng), 2 * u(rng), 2 * u(rng));
        wts.push_back(1e-3 + 0.02 * u(rng));
      }
      return make_body(pts, wts, model);
    }
  }
}

}  // namespace

int cmd_scattering_check(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const int trials = cfg.integer("scattering", "trials", 20);
  const auto seed = static_cast<std::uint64_t>(cfg.integer("scattering", "seed", 7));
  const double coupling = cfg.number("scattering", "dilute_coupling", 1e-4);
  if (trials < 0 || !(coupling > 0.0)) throw ConfigError("[scattering]: trials >= 0 and dilute_coupling > 0 required");
  const double psd_tol = 1e-10;

  CsvTable table({"case", "kind", "omega", "points", "asymmetry", "min_eig_T", "min_eig_bound", "deviation",
                  "dilute_bound", "pass"});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const BodyGrid b = random_body(rng);
    const double omega = std::pow(10.0, -1.5 + 3.0 * u(rng));
    const Eigen::MatrixXd T = t_operator(b, omega).matrix;
    const double norm = eigenvalues(T).cwiseAbs().maxCoeff();
    Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(T.rows(), T.cols());
    const double c = omega * omega * chi_iw(b.chi_model, omega);
    for (Eigen::Index i = 0; i < T.rows(); ++i) upper(i, i) = c * b.weights[static_cast<std::size_t>(i)];
    const double asym = (T - T.transpose()).cwiseAbs().maxCoeff() / norm;
    const double lo = eigenvalues(T).minCoeff() / norm, lb = eigenvalues(upper - T).minCoeff() / norm;
    const bool pass = asym <= 1e-12 && lo >= -psd_tol && lb >= -psd_tol;
    ok = ok && pass;
    table.add({static_cast<long long>(trial), std::string("random"), omega, static_cast<long long>(b.points.size()),
               asym, lo, lb, std::nan(""), std::nan(""), pass});
  }
  // A Lorentz body with omega_0 = gamma = 0 has omega^2 chi = omega_p^2 at every frequency.
  const BodyGrid dilute = make_box({0, 0, 0}, {1, 1, 1}, 0.2, Lorentz{std::sqrt(coupling), 0.0, 0.0});
  long long id = trials;
  for (double omega : cfg.grid("scattering", "dilute_omega", {0.1, 1.0})) {
    const DiluteCheck d = dilute_deviation(dilute, omega);
    const bool pass = d.deviation <= d.bound;
    ok = ok && pass;
    table.add({id++, std::string("dilute"), omega, static_cast<long long>(dilute.points.size()), std::nan(""),
               std::nan(""), std::nan(""), d.deviation, d.bound, pass});
  }
  json j = summary_head(ctx);
  j["trials"] = trials;
  j["seed"] = seed;
  j["psd_tolerance"] = psd_tol;
  j["pass"] = ok;
  emit(ctx.out, table, j);
  if (!ok) std::cerr << "scattering-check: T-operator property violated (see rows with pass=false)\n";
  return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const double tol = cfg.tolerance(ctx.tol, 1e-4);
  const auto alphas = cfg.grid("verify", "alpha", {1.0, 2.0, 3.0});
  const double corrupt = cfg.number("verify", "corrupt_scale", 1.0);
  if (!(corrupt > 0.0)) throw ConfigError("[verify] corrupt_scale must be positive");

  CsvTable table({"chain", "identity", "measured", "expected", "abs_diff", "tolerance", "pass"});
  std::vector<std::string> failures;
  auto record = [&](const std::string& chain_name, const std::string& id, double measured, double expected, double t) {
    const double diff = std::abs(measured - expected);
    const bool pass = diff <= t;
    table.add({chain_name, id, measured, expected, diff, t, pass});
    if (!pass)
      failures.push_back(chain_name + " " + id + ": measured " + format_double(measured) + ", expected " +
                         format_double(expected) + " (tolerance " + format_double(t) + ")");
  };

  for (const auto& [name, spec] : cfg.chains(default_chains())) {
    double worst = 0.0;
    for (double mu : symplectic_spectrum(ground_state_covariance(spec))) worst = std::max(worst, std::abs(mu - 1.0));
    record(name, "global_purity_max_abs_mu_minus_1", worst, 0.0, 1e-9);

    GammaTriple t = gamma_triple_from_chain(spec);
    if (corrupt != 1.0) t.A.G *= corrupt;
    try {
      validate(t);
    } catch (const DomainError& e) {
      const double lowest = gamma_spectrum(t.A).minCoeff();
      table.add({name, std::string("uncertainty_bound_min_gamma_eigenvalue"), lowest, 0.25, 0.25 - lowest, 1e-9, false});
      failures.push_back(name + " uncertainty bound violated: min Gamma eigenvalue " + format_double(lowest) +
                         " < 1/4 (" + e.what() + ")");
      continue;
    }
    record(name, "cross_correlation", t.max_cross_correlation, 0.0, kCrossCorrelationTolerance);
    for (double alpha : alphas) {
      const double direct = direct_difference(spec, alpha);
      const std::string a = format_double(alpha);
      record(name, "contour_vs_direct_alpha_" + a, sR_contour(t, alpha).value, direct, tol);
      record(name, "spectral_vs_direct_alpha_" + a, sR_spectral(t, alpha), direct, 1e-8);
    }
    record(name, "s2_relative_direct_vs_spectra", s2_relative_direct(t), direct_difference(spec, 2.0), 1e-10);
  }

  json j = summary_head(ctx);
  j["tolerance"] = tol;
  j["checks"] = table.rows();
  j["failures"] = failures;
  j["pass"] = failures.empty();
  emit(ctx.out, table, j);
  for (const auto& f : failures) std::cerr << "FAILED " << f << '\n';
  return failures.empty() ? kExitOk : kExitVerification;
}

int cmd_lattice(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  CsvTable table({"chain", "N", "omega_p", "omega_0", "field_mass", "S_AUB", "S_A", "S_B", "S_0", "S_R_vn",
                  "S_R_renyi2", "max_abs_global_mu_minus_1", "gh_eligible"});
  for (const auto& [name, spec] : cfg.chains(default_chains())) {
    double worst = 0.0;
    for (double mu : symplectic_spectrum(ground_state_covariance(spec))) worst = std::max(worst, std::abs(mu - 1.0));
    const double s = field_entropy(spec, 1.0), sa = field_entropy(without_bodies(spec, false, true), 1.0);
    const double sb = field_entropy(without_bodies(spec, true, false), 1.0);
    const double s0 = field_entropy(without_bodies(spec, true, true), 1.0);
    const GammaTriple t = gamma_triple_from_chain(spec);
    table.add({name, static_cast<long long>(spec.N), spec.omega_p, spec.omega_0, spec.field_mass, s, sa, sb, s0,
               s - sa - sb + s0, direct_difference(spec, 2.0), worst, t.gh_eligible});
  }
  const int N = cfg.integer("witness", "N", 16);
  const NonThermalityWitness w = nonthermality_witness(N, cfg.number("witness", "omega_p", 1.0),
                                                       cfg.number("witness", "omega_0", 1.0),
                                                       cfg.number("witness", "field_mass", 0.5));
  json j = summary_head(ctx);
  json modes = json::array();
  for (const auto& m : w.modes)
    modes.push_back({{"k", m.k}, {"mu", m.mu}, {"E", m.E}, {"omega_free", m.omega_free}, {"ratio", m.ratio}});
  j["witness"] = {{"N", N}, {"spread", w.spread}, {"modes", modes}};
  emit(ctx.out, table, j);
  return kExitOk;
}

}  // namespace dispent::cli
