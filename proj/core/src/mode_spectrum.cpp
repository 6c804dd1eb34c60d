#include "dispent/mode_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dispent/errors.hpp"
#include "dispent/gaussian_core.hpp"
#include "dispent/parallel.hpp"

namespace dispent {

namespace {

constexpr double kPi = std::numbers::pi;

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("momentum must be positive and finite");
}

double effective_mode_scale(const SusceptibilityModel& model) {
  const ResonanceForm r = resonance_form(model, 0.0);
  double s = std::sqrt(r.Omega2);
  if (s == 0.0) s = std::sqrt(r.P);
  if (s == 0.0) s = 1.0;
  return s;
}

}  // namespace

QuadratureOptions mode_quadrature() {
  QuadratureOptions o;
  o.rel_tol = 1e-11;
  o.abs_tol = 0.0;
  o.max_intervals = 20000;
  return o;
}

std::vector<double> frequency_breakpoints(const SusceptibilityModel& model, double k) {
  const ResonanceForm r = resonance_form(model, k);
  std::vector<double> b;
  const double eps_static = r.Omega2 > 0.0 ? r.eps_inf + r.P / r.Omega2 : r.eps_inf;
  b.push_back(k / std::sqrt(eps_static));
  b.push_back(k / std::sqrt(r.eps_inf));
  b.push_back(std::sqrt((k * k + r.P) / r.eps_inf));
  if (r.Omega2 > 0.0) b.push_back(std::sqrt(r.Omega2));
  if (r.gamma > 0.0) b.push_back(r.gamma);
  std::sort(b.begin(), b.end());
  // Decade cuts between the extreme scales so no initial panel spans many orders of magnitude.
  const double lo = b.front();
  const double hi = b.back();
  for (double c = lo * 10.0; c < hi; c *= 10.0) b.push_back(c);
  std::sort(b.begin(), b.end());
  return b;
}

double g_k(const SusceptibilityModel& model, double k, const QuadratureOptions& opt) {
  require_k(k);
  validate(model);
  auto f = [&](double w) { return 1.0 / (w * w * eps_iw_k(model, w, k).value + k * k); };
  return integrate_semi_infinite(f, frequency_breakpoints(model, k), opt).value;
}

double h_k(const SusceptibilityModel& model, double k, const QuadratureOptions& opt) {
  require_k(k);
  validate(model);
  const double eps_inf = resonance_form(model, k).eps_inf;
  auto f = [&](double w) {
    const double eps = eps_iw_k(model, w, k).value;
    return eps_inf * (k * k + w * w * (eps - eps_inf)) / (w * w * eps + k * k);
  };
  return integrate_semi_infinite(f, frequency_breakpoints(model, k), opt).value;
}

ModeDecomposition mode_decomposition(const SusceptibilityModel& model, double k, const QuadratureOptions& opt) {
  require_k(k);
  validate(model);
  const ResonanceForm r = resonance_form(model, k);
  ModeDecomposition m;
  const double M2 = k * k + r.P;
  m.g0 = kPi / (2.0 * std::sqrt(r.eps_inf * M2));

  const bool mixing = r.P > 0.0 && (r.gamma > 0.0 || r.Omega2 > 0.0);
  if (mixing) {
    const std::vector<double> bp = frequency_breakpoints(model, k);
    auto B = [&](double w) { return (r.gamma * w + r.Omega2) / (w * w + r.gamma * w + r.Omega2); };
    auto D = [&](double w) {
      return w * w * (r.eps_inf + r.P / (w * w + r.gamma * w + r.Omega2)) + k * k;
    };
    m.a = integrate_semi_infinite([&](double w) { return B(w) / (D(w) * (r.eps_inf * w * w + M2)); }, bp, opt).value;
    m.c = integrate_semi_infinite([&](double w) { return B(w) / D(w); }, bp, opt).value;
    // M^2 - P B = k^2 + P (1 - B) avoids the cancellation in M^2 g - P c at small k.
    const double hh = integrate_semi_infinite(
        [&](double w) { return (k * k + r.P * w * w / (w * w + r.gamma * w + r.Omega2)) / D(w); }, bp, opt).value;
    m.g = m.g0 + r.P * m.a;
    m.h = r.eps_inf * hh;
    const double direct = m.g * m.h - kPi * kPi / 4.0;
    // The split form cancels at O(1/k) for strongly mixed modes; the direct product is then exact enough.
    m.excess = direct > 0.01 * kPi * kPi / 4.0
                   ? direct
                   : r.eps_inf * r.P * (2.0 * M2 * m.g0 * m.a + M2 * r.P * m.a * m.a - m.g * m.c);
  } else {
    m.g = m.g0;
    m.h = r.eps_inf * M2 * m.g0;
    m.excess = 0.0;
  }

  const double x = 4.0 * m.excess / (kPi * kPi);  // mu^2 - 1
  if (x < 0.0) {
    if (x < -2e-6) throw NumericalError("mode_decomposition: mu below the uncertainty bound", 1.0 + 0.5 * x);
    m.n = 0.0;
  } else {
    m.n = 0.5 * x / (1.0 + std::sqrt(1.0 + x));
  }
  return m;
}

ModeRecord mode_record(const SusceptibilityModel& model, double k) {
  const ModeDecomposition d = mode_decomposition(model, k);
  ModeRecord rec;
  rec.k = k;
  rec.g = d.g;
  rec.h = d.h;
  rec.n = d.n;
  rec.mu = 1.0 + 2.0 * d.n;
  const ModeThermo t = mode_thermo_occupation(d.n);
  rec.E = t.E;
  rec.beta_omega = t.E;
  rec.s_vn = binary_entropy_occupation(d.n);
  rec.s_2 = std::log1p(2.0 * d.n);
  return rec;
}

std::vector<ModeRecord> dispersion_curve(const SusceptibilityModel& model, const std::vector<double>& k_grid) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    require_k(k_grid[i]);
    if (i > 0 && !(k_grid[i] > k_grid[i - 1])) throw ValidationError("dispersion_curve: k grid must ascend");
  }
  std::vector<ModeRecord> out(k_grid.size());
  parallel_for(k_grid.size(), [&](std::size_t i) { out[i] = mode_record(model, k_grid[i]); });
  return out;
}

double unit_sphere_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: throw DomainError("dimension must be 1, 2 or 3");
  }
}

namespace {

// int_lo^hi F(k) dk in the variable log k, one adaptive queue with a cut per decade.
QuadratureResult integrate_log(const RealFunction& F, double lo, double hi, const QuadratureOptions& opt) {
  std::vector<double> cuts{std::log(lo)};
  for (double c = std::floor(std::log10(lo)) + 1.0; c < std::log10(hi); c += 1.0) cuts.push_back(c * std::log(10.0));
  cuts.push_back(std::log(hi));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  detail::AdaptiveStats st;
  auto g = [&](double u) {
    const double k = std::exp(u);
    return F(k) * k;
  };
  const double v = detail::adaptive<double>(g, cuts, opt, st);
  return {v, st.error, st.evaluations};
}

// int_0^hi F(k) dk with k = hi e^{-u}. The integrands here vanish at least like
// k^{1/2}, so the range below 1e-30 hi is dropped.
QuadratureResult integrate_to_zero(const RealFunction& F, double hi, const QuadratureOptions& opt) {
  auto g = [&](double u) {
    const double k = hi * std::exp(-u);
    return F(k) * k;
  };
  const double u_max = 30.0 * std::log(10.0);
  detail::AdaptiveStats st;
  const double v = detail::adaptive<double>(g, {0.0, 1.0, 5.0, 20.0, 40.0, u_max}, opt, st);
  return {v, st.error, st.evaluations};
}

}  // namespace

SoftModeAggregates soft_mode_aggregates(const SusceptibilityModel& model, double k_min, int d,
                                        std::optional<double> eps_ir) {
  require_k(k_min);
  unit_sphere_area(d);
  if (d == 1 && !eps_ir) throw ConfigError("soft_mode_aggregates: d = 1 requires an infrared cutoff");
  if (eps_ir && !(*eps_ir > 0.0 && *eps_ir < k_min))
    throw ConfigError("soft_mode_aggregates: infrared cutoff must lie in (0, k_min)");

  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 0.0;
  auto run = [&](const RealFunction& F) {
    return eps_ir ? integrate_log(F, *eps_ir, k_min, opt).value : integrate_to_zero(F, k_min, opt).value;
  };
  const double dm1 = d - 1.0;
  SoftModeAggregates s;
  s.N = run([&](double k) { return mode_decomposition(model, k).n * std::pow(k, dm1); });
  s.E_total = run([&](double k) { return mode_decomposition(model, k).n * std::pow(k, d); });
  s.delta_N2 = run([&](double k) {
    const double n = mode_decomposition(model, k).n;
    return n * (1.0 + n) * std::pow(k, dm1);
  });
  return s;
}

EntropyDensityResult entropy_density(const SusceptibilityModel& model, double cutoff, int d, int samples) {
  require_k(cutoff);
  const double prefactor = unit_sphere_area(d) / std::pow(2.0 * kPi, d);
  auto F = [&](double k) { return binary_entropy_occupation(mode_decomposition(model, k).n) * std::pow(k, d - 1); };

  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 0.0;
  opt.max_intervals = 20000;
  const double split = std::min(effective_mode_scale(model), cutoff);
  QuadratureResult low = integrate_to_zero(F, split, opt);
  QuadratureResult high{0.0, 0.0, 0};
  if (cutoff > split) high = integrate_log(F, split, cutoff, opt);

  EntropyDensityResult res;
  res.cutoff = cutoff;
  res.d = d;
  res.value = prefactor * (low.value + high.value);
  res.abs_error = prefactor * (low.abs_error_estimate + high.abs_error_estimate);
  if (samples > 1) {
    const double lo = std::log(cutoff) - std::log(1e4);
    for (int i = 0; i < samples; ++i) {
      const double k = std::exp(lo + (std::log(cutoff) - lo) * i / (samples - 1));
      res.integrand_samples.emplace_back(k, binary_entropy_occupation(mode_decomposition(model, k).n));
    }
  }
  return res;
}

std::vector<double> entropy_density_scan(const SusceptibilityModel& model, const std::vector<double>& cutoffs, int d) {
  if (cutoffs.empty()) return {};
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (!(cutoffs[i] > cutoffs[i - 1])) throw ValidationError("entropy_density_scan: cutoffs must ascend");
  const double prefactor = unit_sphere_area(d) / std::pow(2.0 * kPi, d);
  auto F = [&](double k) { return binary_entropy_occupation(mode_decomposition(model, k).n) * std::pow(k, d - 1); };
  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 0.0;
  opt.max_intervals = 20000;

  std::vector<double> pieces(cutoffs.size());
  parallel_for(cutoffs.size(), [&](std::size_t i) {
    if (i == 0) {
      pieces[0] = entropy_density(model, cutoffs[0], d, 0).value;
    } else {
      pieces[i] = prefactor * integrate_log(F, cutoffs[i - 1], cutoffs[i], opt).value;
    }
  });
  std::vector<double> out(cutoffs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) out[i] = (acc += pieces[i]);
  return out;
}

}  // namespace dispent
