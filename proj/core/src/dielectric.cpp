#include "dispent/dielectric.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "dispent/errors.hpp"

namespace dispent {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Shortest text that round-trips the value.
std::string num(double x) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
}

void require(bool ok, const char* msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

void validate(const SusceptibilityModel& model) {
  std::visit(overloaded{
                 [](const Free&) {},
                 [](const Plasma& p) { require(p.omega_p >= 0.0, "plasma: omega_p must be >= 0"); },
                 [](const Lorentz& l) {
                   require(l.omega_p >= 0.0, "lorentz: omega_p must be >= 0");
                   require(l.omega_0 >= 0.0, "lorentz: omega_0 must be >= 0");
                   require(l.gamma >= 0.0, "lorentz: gamma must be >= 0");
                 },
                 [](const SpatiallyDispersive& s) {
                   require(s.eps_0 >= 1.0, "spatially dispersive: eps_0 must be >= 1");
                   require(s.f >= 0.0 && s.A >= 0.0 && s.gamma >= 0.0 && s.omega_0 >= 0.0,
                           "spatially dispersive: f, A, gamma, omega_0 must be >= 0");
                 },
             },
             model);
}

std::string describe(const SusceptibilityModel& model) {
  return std::visit(overloaded{
                        [](const Free&) -> std::string { return "free"; },
                        [](const Plasma& p) { return "plasma(omega_p=" + num(p.omega_p) + ")"; },
                        [](const Lorentz& l) {
                          return "lorentz(omega_p=" + num(l.omega_p) + ",omega_0=" + num(l.omega_0) +
                                 ",gamma=" + num(l.gamma) + ")";
                        },
                        [](const SpatiallyDispersive& s) {
                          return "spatial(eps_0=" + num(s.eps_0) + ",f=" + num(s.f) + ",A=" + num(s.A) +
                                 ",gamma=" + num(s.gamma) + ",omega_0=" + num(s.omega_0) + ")";
                        },
                    },
                    model);
}

ResonanceForm resonance_form(const SusceptibilityModel& model, double k) {
  return std::visit(overloaded{
                        [](const Free&) { return ResonanceForm{1.0, 0.0, 0.0, 0.0}; },
                        [](const Plasma& p) { return ResonanceForm{1.0, p.omega_p * p.omega_p, 0.0, 0.0}; },
                        [](const Lorentz& l) {
                          return ResonanceForm{1.0, l.omega_p * l.omega_p, l.gamma, l.omega_0 * l.omega_0};
                        },
                        [k](const SpatiallyDispersive& s) {
                          return ResonanceForm{s.eps_0, s.eps_0 * s.f, s.gamma, s.omega_0 * s.omega_0 + s.A * k * k};
                        },
                    },
                    model);
}

Permittivity eps_iw_k(const SusceptibilityModel& model, double omega, double k, double lattice_scale) {
  if (!(omega > 0.0)) throw DomainError("eps_iw_k: omega must be positive");
  if (k < 0.0) throw DomainError("eps_iw_k: k must be non-negative");
  const ResonanceForm r = resonance_form(model, k);
  double eps = r.eps_inf;
  if (r.P != 0.0) eps += r.P / (omega * omega + r.gamma * omega + r.Omega2);
  const bool beyond = lattice_scale > 0.0 && k > std::numbers::pi / lattice_scale;
  return {eps, beyond};
}

double chi_iw(const SusceptibilityModel& model, double omega, double k) {
  if (!(omega > 0.0)) throw DomainError("chi_iw: omega must be positive");
  if (k < 0.0) throw DomainError("chi_iw: k must be non-negative");
  // Summed directly: eps - 1 loses all digits once the resonance term drops below 1e-16.
  const ResonanceForm r = resonance_form(model, k);
  double chi = r.eps_inf - 1.0;
  if (r.P != 0.0) chi += r.P / (omega * omega + r.gamma * omega + r.Omega2);
  return chi;
}

}  // namespace dispent
