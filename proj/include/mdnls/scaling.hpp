#pragma once

#include "mdnls/field.hpp"
#include "mdnls/symbol.hpp"

namespace mdnls {

/// Exponents of the semiclassical rescaling behind the norm-inflation family
///   u0^h(x) = h^(s - d/2) kappa_h a0(x / h),  a0(x) = exp(-|x|^2),
///   kappa_h = (log 1/h)^(-theta),
///   psi(tau, y) = h^(d/2 - s) u^h(h^(2+alpha) tau, h y),
/// which turns the equation into
///   i eps d_tau psi + h^(2 sigma (d/2 - s)) P(D_y / h) psi = lambda |psi|^(2 sigma) psi
/// with eps = h^(2 sigma (d/2 - s) - 2 - alpha).
struct ScalingPlan {
  int dim = 1;
  double sigma = 1.0;
  double s = 0.0;
  SymbolClass symbol_class = Bounded{0.0};
  double omega = 1.0;
  double theta = 0.05;
  double delta = 0.1;

  /// d/2 - m/(2 sigma) for homogeneous symbols, d/2 for bounded ones.
  double s0 = 0.0;
  double two_plus_alpha = 0.0;
  double alpha = 0.0;
  /// eps = h^eps_exponent.
  double eps_exponent = 0.0;
  /// h^(2 sigma (s0 - s)) = eps^(1 + beta).
  double beta = 0.0;

  bool homogeneous() const { return std::holds_alternative<Homogeneous>(symbol_class); }
  double degree() const;

  double kappa(double h) const;
  double eps(double h) const;
  double h_from_eps(double eps) const;
  /// End of the ODE window, eps (log 1/eps)^delta.
  double tau_star(double eps) const;
  /// h^(2+alpha) eps (log 1/eps)^delta.
  double t_h(double h) const;
  /// C h^(2 sigma (d/2 - s)) (log 1/h)^delta with C = eps_exponent^delta.
  double t_h_closed(double h) const;
  /// Amplitude h^(2 sigma (d/2 - s)) in front of P(D_y / h).
  double symbol_amplitude(double h) const;
  /// s delta - theta - 2 sigma theta s, the growth exponent of the
  /// phase-profile lower bound in log(1/eps).
  double growth_exponent() const;
};

/// (2 sigma (s0 - d/2) + 2 + alpha) / (2 sigma (d/2 - s) - 2 - alpha).
double beta_general(const ScalingPlan& plan);
/// m - 1 + omega (homogeneous) or 1 (bounded).
double beta_closed(const ScalingPlan& plan);

/// Validates the hypotheses and fills every exponent. Throws
/// std::invalid_argument naming the violated hypothesis.
ScalingPlan compute_scaling(int dim, double sigma, double s, const SymbolClass& symbol_class,
                            double omega = 1.0, double theta = 0.05, double delta = 0.1);

/// Largest admissible concentration scale, e^(-1).
double max_concentration_scale();

/// Samples u0^h on an x-grid. Requires h in (0, e^-1], a spacing of at most
/// h/8, and a box with exp(-(L/h)^2) < 1e-12.
Field build_concentrated_data(const ScalingPlan& plan, double h, const Grid& grid);

/// kappa a0(y) exp(-i lambda (tau/eps) kappa^(2 sigma) a0(y)^(2 sigma)).
Field ode_phase_profile(double tau, const Grid& grid, double kappa, double lambda, double sigma, double eps);

/// exp(-|y|^2).
double gaussian_profile(std::span<const double> y);

}  // namespace mdnls
