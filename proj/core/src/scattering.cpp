#include "dispent/scattering.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dispent/errors.hpp"

namespace dispent {

namespace {

constexpr double kPi = std::numbers::pi;

double coupling(const BodyGrid& body, std::size_t i, double omega) {
  return omega * omega * chi_iw(body.chi_model, omega) * body.occupancy[i];
}

double min_distance(const BodyGrid& body, const Eigen::Vector3d& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : body.points) d = std::min(d, (p - x).norm());
  return d;
}

}  // namespace

BodyGrid make_body(std::vector<Eigen::Vector3d> points, std::vector<double> weights, SusceptibilityModel model,
                   std::vector<double> occupancy) {
  BodyGrid b;
  b.points = std::move(points);
  b.weights = std::move(weights);
  b.occupancy = occupancy.empty() ? std::vector<double>(b.points.size(), 1.0) : std::move(occupancy);
  b.chi_model = model;
  for (double w : b.weights) b.volume += w;
  validate(b);
  return b;
}

BodyGrid make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& dims, double resolution,
                  SusceptibilityModel model) {
  if (!(resolution > 0.0)) throw ValidationError("box resolution must be positive");
  if (!(dims.minCoeff() > 0.0)) throw ValidationError("box dimensions must be positive");
  int n[3];
  double h[3];
  for (int a = 0; a < 3; ++a) {
    n[a] = std::max(1, static_cast<int>(std::lround(dims[a] / resolution)));
    h[a] = dims[a] / n[a];
  }
  std::vector<Eigen::Vector3d> pts;
  std::vector<double> wts;
  const Eigen::Vector3d corner = center - 0.5 * dims;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int l = 0; l < n[2]; ++l) {
        pts.emplace_back(corner + Eigen::Vector3d((i + 0.5) * h[0], (j + 0.5) * h[1], (l + 0.5) * h[2]));
        wts.push_back(h[0] * h[1] * h[2]);
      }
  return make_body(std::move(pts), std::move(wts), model);
}

BodyGrid make_sphere(const Eigen::Vector3d& center, double radius, double resolution, SusceptibilityModel model) {
  if (!(resolution > 0.0)) throw ValidationError("sphere resolution must be positive");
  if (!(radius > 0.0)) throw ValidationError("sphere radius must be positive");
  const int n = static_cast<int>(std::ceil(radius / resolution));
  std::vector<Eigen::Vector3d> pts;
  std::vector<double> wts;
  const double h3 = resolution * resolution * resolution;
  for (int i = -n; i < n; ++i)
    for (int j = -n; j < n; ++j)
      for (int l = -n; l < n; ++l) {
        const Eigen::Vector3d off((i + 0.5) * resolution, (j + 0.5) * resolution, (l + 0.5) * resolution);
        if (off.norm() <= radius) {
          pts.emplace_back(center + off);
          wts.push_back(h3);
        }
      }
  if (pts.empty()) throw ValidationError("sphere resolution too coarse: no cell centers inside");
  return make_body(std::move(pts), std::move(wts), model);
}

BodyGrid merge(const BodyGrid& a, const BodyGrid& b) {
  auto pts = a.points;
  auto wts = a.weights;
  auto occ = a.occupancy;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  wts.insert(wts.end(), b.weights.begin(), b.weights.end());
  occ.insert(occ.end(), b.occupancy.begin(), b.occupancy.end());
  return make_body(std::move(pts), std::move(wts), a.chi_model, std::move(occ));
}

void validate(const BodyGrid& body) {
  const std::size_t n = body.points.size();
  if (n == 0) throw ValidationError("body grid is empty");
  if (body.weights.size() != n || body.occupancy.size() != n)
    throw ValidationError("body grid: points, weights and occupancy differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(body.weights[i] > 0.0)) throw ValidationError("body grid: weights must be positive");
    if (!(body.occupancy[i] >= 0.0 && body.occupancy[i] <= 1.0))
      throw ValidationError("body grid: occupancy must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((body.points[i] - body.points[j]).norm() == 0.0)
        throw ValidationError("body grid: coincident points " + std::to_string(i) + ", " + std::to_string(j));
  dispent::validate(body.chi_model);
}

double yukawa_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& y, double omega) {
  const double r = (x - y).norm();
  if (!(r > 0.0)) throw DomainError("yukawa_kernel: coincident points");
  if (omega < 0.0) throw DomainError("yukawa_kernel: negative frequency");
  return std::exp(-omega * r) / (4.0 * kPi * r);
}

double yukawa_self_term(double weight, double omega) {
  const double a = std::cbrt(3.0 * weight / (4.0 * kPi));
  const double x = omega * a;
  if (x < 1e-4) return a * a * (0.5 - x / 3.0 + x * x / 8.0);
  return -std::expm1(-x) / (omega * omega) - std::exp(-x) * x / (omega * omega);
}

Eigen::MatrixXd yukawa_matrix(const BodyGrid& body, double omega) {
  const Eigen::Index n = static_cast<Eigen::Index>(body.points.size());
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    G(i, i) = yukawa_self_term(body.weights[ui], omega);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const double v =
          std::sqrt(body.weights[ui] * body.weights[uj]) * yukawa_kernel(body.points[ui], body.points[uj], omega);
      G(i, j) = v;
      G(j, i) = v;
    }
  }
  return G;
}

TOperator t_operator(const BodyGrid& body, double omega) {
  if (!(omega > 0.0)) throw DomainError("t_operator: frequency must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(body.points.size());
  Eigen::VectorXd v(n), sw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    v[i] = std::sqrt(coupling(body, ui, omega));
    sw[i] = std::sqrt(body.weights[ui]);
  }
  TOperator t;
  t.omega = omega;
  if (v.maxCoeff() == 0.0) {
    t.matrix = Eigen::MatrixXd::Zero(n, n);
    return t;
  }
  Eigen::MatrixXd A = v.asDiagonal() * yukawa_matrix(body, omega) * v.asDiagonal();
  A.diagonal().array() += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  t.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(lo > 0.0) || t.condition > 1e12)
    throw NumericalError("t_operator: 1 + v g0 v is ill-conditioned (condition " + std::to_string(t.condition) + ")",
                         0.0, t.condition);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  Eigen::MatrixXd That = v.asDiagonal() * ldlt.solve(Eigen::MatrixXd(v.asDiagonal()));
  That = 0.5 * (That + That.transpose()).eval();
  t.matrix = sw.asDiagonal() * That * sw.asDiagonal();
  return t;
}

DiluteCheck dilute_deviation(const BodyGrid& body, double omega) {
  const TOperator t = t_operator(body, omega);
  const Eigen::Index n = t.matrix.rows();
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(n, n);
  double vmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double c = coupling(body, ui, omega);
    ref(i, i) = c * body.weights[ui];
    vmax = std::max(vmax, c);
  }
  auto spectral = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  DiluteCheck d;
  const double rn = spectral(ref);
  d.deviation = rn > 0.0 ? spectral(t.matrix - ref) / rn : 0.0;
  d.bound = vmax * spectral(yukawa_matrix(body, omega));
  return d;
}

CorrelatorShift correlator_shift(const BodyGrid& body, const std::vector<Eigen::Vector3d>& probes,
                                 const QuadratureOptions& opt) {
  validate(body);
  const std::size_t m = probes.size();
  if (m == 0) throw ValidationError("correlator_shift: no probe points");
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (const auto& x : probes) {
    const double d = min_distance(body, x);
    if (!(d > 0.0)) throw DomainError("correlator_shift: probe coincides with a grid point");
    dmin = std::min(dmin, d);
    for (const auto& p : body.points) dmax = std::max(dmax, (p - x).norm());
  }
  const Eigen::Index n = static_cast<Eigen::Index>(body.points.size());
  const Eigen::Index mm = static_cast<Eigen::Index>(m);
  const Eigen::Index block = mm * mm;

  // Returns (g0 T g0, w^2 g0 T g0) flattened, column-major.
  auto integrand = [&](double w) -> Eigen::VectorXd {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * block);
    if (w == 0.0) return out;
    const TOperator t = t_operator(body, w);
    Eigen::MatrixXd g(n, mm);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index a = 0; a < mm; ++a)
        g(i, a) = yukawa_kernel(body.points[static_cast<std::size_t>(i)], probes[static_cast<std::size_t>(a)], w);
    const Eigen::MatrixXd s = g.transpose() * t.matrix * g;
    out.head(block) = Eigen::Map<const Eigen::VectorXd>(s.data(), block);
    out.tail(block) = w * w * out.head(block);
    return out;
  };
  std::vector<double> bp{1.0 / dmax, 1.0 / dmin};
  const ResonanceForm rf = resonance_form(body.chi_model, 0.0);
  if (rf.Omega2 > 0.0) bp.push_back(std::sqrt(rf.Omega2));
  if (rf.gamma > 0.0) bp.push_back(rf.gamma);
  const VectorQuadratureResult r = integrate_semi_infinite_vector(integrand, bp, opt);
  CorrelatorShift cs;
  cs.dG = -Eigen::Map<const Eigen::MatrixXd>(r.value.data(), mm, mm);
  cs.dH = Eigen::Map<const Eigen::MatrixXd>(r.value.data() + block, mm, mm);
  cs.abs_error_estimate = r.abs_error_estimate;
  return cs;
}

}  // namespace dispent
