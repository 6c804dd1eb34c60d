#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dispent/dielectric.hpp"
#include "dispent/quadrature.hpp"

namespace dispent {

// Point cloud discretization of a body. occupancy is the indicator theta(x) in [0, 1];
// points with occupancy 0 are part of the grid but outside the body.
struct BodyGrid {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
  std::vector<double> occupancy;
  SusceptibilityModel chi_model = Free{};
  double volume = 0.0;
};

// Builds a grid from explicit points; occupancy defaults to 1 everywhere.
BodyGrid make_body(std::vector<Eigen::Vector3d> points, std::vector<double> weights, SusceptibilityModel model,
                   std::vector<double> occupancy = {});

// Axis-aligned box voxelized into cells of edge close to `resolution`.
BodyGrid make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& dims, double resolution,
                  SusceptibilityModel model);

// Cubic cells of edge `resolution` whose centers lie inside the sphere.
BodyGrid make_sphere(const Eigen::Vector3d& center, double radius, double resolution, SusceptibilityModel model);

// Union of two grids sharing one susceptibility model.
BodyGrid merge(const BodyGrid& a, const BodyGrid& b);

// Throws ValidationError on bad weights, coincident points or size mismatches.
void validate(const BodyGrid& body);

// e^{-w r} / (4 pi r), r = |x - y| > 0, w >= 0.
double yukawa_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& y, double omega);

// Integral of the Yukawa kernel over a ball of volume `weight` around its center.
double yukawa_self_term(double weight, double omega);

// g0 in the orthonormal cell basis: sqrt(w_i) g0(x_i, x_j) sqrt(w_j), self terms on the diagonal.
Eigen::MatrixXd yukawa_matrix(const BodyGrid& body, double omega);

struct TOperator {
  double omega = 0.0;
  // Quadratic-form matrix W T W, symmetric.
  Eigen::MatrixXd matrix;
  // Condition estimate of 1 + v g0 v.
  double condition = 1.0;
};

TOperator t_operator(const BodyGrid& body, double omega);

struct DiluteCheck {
  double deviation;  // ||T - w^2 chi W|| / ||w^2 chi W|| (spectral norms)
  double bound;      // w^2 chi ||g0||
};

DiluteCheck dilute_deviation(const BodyGrid& body, double omega);

struct CorrelatorShift {
  Eigen::MatrixXd dG;
  Eigen::MatrixXd dH;
  double abs_error_estimate = 0.0;
};

// Shifts of <phi(x) phi(y)> and <pi(x) pi(y)> induced by the body at the probe points:
// dG = -int_0^inf g0 T g0 dw, dH = +int_0^inf w^2 g0 T g0 dw. Probes must not coincide with grid points.
CorrelatorShift correlator_shift(const BodyGrid& body, const std::vector<Eigen::Vector3d>& probes,
                                 const QuadratureOptions& opt = {1e-9, 0.0, 5000});

}  // namespace dispent
