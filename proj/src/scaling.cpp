#include "mdnls/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "text.hpp"

namespace mdnls {

double max_concentration_scale() { return std::exp(-1.0); }

double ScalingPlan::degree() const {
  if (const auto* h = std::get_if<Homogeneous>(&symbol_class)) return h->degree;
  throw std::logic_error("bounded symbols have no homogeneity degree");
}

double ScalingPlan::kappa(double h) const { return std::pow(std::log(1.0 / h), -theta); }

double ScalingPlan::eps(double h) const { return std::pow(h, eps_exponent); }

double ScalingPlan::h_from_eps(double e) const { return std::pow(e, 1.0 / eps_exponent); }

double ScalingPlan::tau_star(double e) const { return e * std::pow(std::log(1.0 / e), delta); }

double ScalingPlan::t_h(double h) const { return std::pow(h, two_plus_alpha) * tau_star(eps(h)); }

double ScalingPlan::t_h_closed(double h) const {
  const double c = std::pow(eps_exponent, delta);
  return c * std::pow(h, 2.0 * sigma * (0.5 * dim - s)) * std::pow(std::log(1.0 / h), delta);
}

double ScalingPlan::symbol_amplitude(double h) const { return std::pow(h, 2.0 * sigma * (0.5 * dim - s)); }

double ScalingPlan::growth_exponent() const { return s * delta - theta - 2.0 * sigma * theta * s; }

double beta_general(const ScalingPlan& p) {
  const double half_d = 0.5 * p.dim;
  return (2.0 * p.sigma * (p.s0 - half_d) + p.two_plus_alpha) /
         (2.0 * p.sigma * (half_d - p.s) - p.two_plus_alpha);
}

double beta_closed(const ScalingPlan& p) { return p.homogeneous() ? p.degree() - 1.0 + p.omega : 1.0; }

ScalingPlan compute_scaling(int dim, double sigma, double s, const SymbolClass& symbol_class, double omega,
                            double theta, double delta) {
  using detail::format_shortest;
  if (dim < 1) throw std::invalid_argument("d must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (!(s > 0.0)) throw std::invalid_argument("s must satisfy s > 0 (norm-inflation hypothesis)");

  ScalingPlan p;
  p.dim = dim;
  p.sigma = sigma;
  p.s = s;
  p.symbol_class = symbol_class;
  p.omega = omega;
  p.theta = theta;
  p.delta = delta;
  const double half_d = 0.5 * dim;
  const double reach = 2.0 * sigma * (half_d - s);  // 2 sigma (d/2 - s)

  if (p.homogeneous()) {
    const double m = p.degree();
    if (m < 1.0) throw std::invalid_argument("homogeneous degree must satisfy m >= 1 (norm-inflation hypothesis)");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    p.s0 = half_d - m / (2.0 * sigma);
    if (!(p.s0 > 0.0)) {
      throw std::invalid_argument("s0 = d/2 - m/(2 sigma) = " + format_shortest(p.s0) +
                                  " must satisfy s0 > 0 (norm-inflation hypothesis)");
    }
    if (!(s < p.s0)) {
      throw std::invalid_argument("s must satisfy s < s0 = " + format_shortest(p.s0) + " (norm-inflation hypothesis)");
    }
    p.two_plus_alpha = ((m - 1.0 + omega) * reach + m) / (m + omega);
    p.eps_exponent = 2.0 * sigma * (p.s0 - s) / (m + omega);
  } else {
    p.s0 = half_d;
    if (!(s < half_d)) {
      throw std::invalid_argument("s < d/2 required for a bounded symbol (s = " + format_shortest(s) +
                                  ", d/2 = " + format_shortest(half_d) + ") (norm-inflation hypothesis)");
    }
    p.two_plus_alpha = sigma * (half_d - s);
    p.eps_exponent = reach - p.two_plus_alpha;
  }
  p.alpha = p.two_plus_alpha - 2.0;
  p.beta = beta_general(p);
  return p;
}

double gaussian_profile(std::span<const double> y) {
  double r2 = 0.0;
  for (double c : y) r2 += c * c;
  return std::exp(-r2);
}

Field build_concentrated_data(const ScalingPlan& plan, double h, const Grid& grid) {
  using detail::format_shortest;
  if (!(h > 0.0) || h > max_concentration_scale()) {
    throw std::invalid_argument("h = " + format_shortest(h) + " must lie in (0, e^-1]");
  }
  if (grid.dim() != plan.dim) throw std::invalid_argument("grid dimension differs from the plan");
  if (grid.spacing() > h / 8.0) {
    const double need = 2.0 * grid.half_length() * 8.0 / h;
    throw std::invalid_argument("grid does not resolve scale h = " + format_shortest(h) +
                                "; need n >= " + format_shortest(std::exp2(std::ceil(std::log2(need)))));
  }
  const double ratio = grid.half_length() / h;
  if (std::exp(-ratio * ratio) >= 1e-12) {
    throw std::invalid_argument("box too small for scale h = " + format_shortest(h) + "; need L >= " +
                                format_shortest(h * std::sqrt(std::log(1e12))));
  }
  const double amp = std::pow(h, plan.s - 0.5 * plan.dim) * plan.kappa(h);
  return Field::sample(grid, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += (c / h) * (c / h);
    return Complex(amp * std::exp(-r2), 0.0);
  });
}

Field ode_phase_profile(double tau, const Grid& grid, double kappa, double lambda, double sigma, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  const double rate = lambda * (tau / eps) * std::pow(kappa, 2.0 * sigma);
  return Field::sample(grid, [&](std::span<const double> y) {
    const double a = gaussian_profile(y);
    return kappa * a * std::polar(1.0, -rate * std::pow(a, 2.0 * sigma));
  });
}

}  // namespace mdnls
