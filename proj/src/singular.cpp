#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mdnls/experiments.hpp"
#include "text.hpp"

namespace mdnls {

using detail::format_shortest;

namespace {

constexpr double kPlateau = 0.25;  // chi = 1 for s <= 1/4
constexpr double kSupport = 0.5625;  // chi = 0 for s >= 9/16

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double bump_derivative(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

}  // namespace

double critical_log_exponent(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  return 1.0 / (4.0 * sigma + 2.0);
}

double cutoff(double s) {
  if (s <= kPlateau) return 1.0;
  if (s >= kSupport) return 0.0;
  const double a = bump(kSupport - s);
  const double b = bump(s - kPlateau);
  return a / (a + b);
}

double cutoff_derivative(double s) {
  if (s <= kPlateau || s >= kSupport) return 0.0;
  const double a = bump(kSupport - s);
  const double b = bump(s - kPlateau);
  const double da = -bump_derivative(kSupport - s);
  const double db = bump_derivative(s - kPlateau);
  return (da * b - a * db) / ((a + b) * (a + b));
}

namespace {

struct Profile {
  double u0;
  double du0;
};

Profile radial_profile(double r, double delta_amp, double alpha) {
  const double s = r * r;
  if (s >= kSupport) return {0.0, 0.0};
  const double L = std::log(1.0 / r);
  const double la = std::pow(L, alpha);
  const double chi = cutoff(s);
  const double du = delta_amp * (-alpha * la / L / r * chi + la * cutoff_derivative(s) * 2.0 * r);
  return {delta_amp * la * chi, du};
}

}  // namespace

std::vector<RadialSample> log_singular_profile(double delta_amp, double sigma, const std::vector<double>& r_values) {
  const double alpha = critical_log_exponent(sigma);
  std::vector<RadialSample> out;
  out.reserve(r_values.size());
  for (double r : r_values) {
    if (!(r > 0.0 && r < 1.0)) {
      throw std::invalid_argument("radius " + format_shortest(r) + " must lie in (0, 1)");
    }
    const auto p = radial_profile(r, delta_amp, alpha);
    out.push_back({r, p.u0, p.du0});
  }
  return out;
}

double singular_integrand_initial(double r, const SingularOptions& o) {
  const auto p = radial_profile(r, o.delta_amp, critical_log_exponent(o.sigma));
  return 2.0 * std::numbers::pi * r * p.du0 * p.du0;
}

// v = u0 exp(-i lambda t u0^(2 sigma)) with u0 >= 0, so
// |d_r v|^2 = |d_r u0|^2 (1 + (2 sigma lambda t u0^(2 sigma))^2).
double singular_integrand_evolved(double r, const SingularOptions& o) {
  const auto p = radial_profile(r, o.delta_amp, critical_log_exponent(o.sigma));
  const double g = 2.0 * o.sigma * o.lambda * o.t * std::pow(p.u0, 2.0 * o.sigma);
  return 2.0 * std::numbers::pi * r * p.du0 * p.du0 * (1.0 + g * g);
}

namespace {

// Integral of f(r) dr over [a, b], computed in l = log(1/r) where the
// integrands are smooth down to r = 0.
template <typename F>
double integrate_segment(F&& f, double a, double b, double rel_tol) {
  auto g = [&](double l) {
    const double r = std::exp(-l);
    return f(r) * r;
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      g, std::log(1.0 / b), std::log(1.0 / a), 20, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > rel_tol * std::max(l1, 1e-300)) {
    throw std::runtime_error("quadrature did not converge on [" + format_shortest(a) + ", " + format_shortest(b) +
                             "]: error estimate " + format_shortest(error));
  }
  return value;
}

}  // namespace

IncrementAnalysis analyze_increments(const std::vector<double>& rho, const std::vector<double>& cumulative) {
  if (rho.size() != cumulative.size() || rho.size() < 3) {
    throw std::invalid_argument("increment analysis needs at least three radii");
  }
  IncrementAnalysis a;
  for (std::size_t i = 1; i < cumulative.size(); ++i) a.increments.push_back(cumulative[i] - cumulative[i - 1]);
  for (std::size_t i = 1; i < a.increments.size(); ++i) a.ratios.push_back(a.increments[i] / a.increments[i - 1]);

  bool positive = true;
  for (double d : a.increments) positive = positive && d > 0.0;
  bool decreasing = true;
  for (double q : a.ratios) decreasing = decreasing && q < 1.0;
  a.cauchy_converges = positive && decreasing && a.increments.back() < 0.01 * cumulative.back();

  // Divergent tails of the critical integrand decay like 1/log(1/rho) per
  // decade: increments times log(1/rho) stay bounded below.
  bool ratios_ok = true;
  for (double q : a.ratios) ratios_ok = ratios_ok && q >= 0.5 && q <= 1.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < a.increments.size(); ++i) {
    const double weighted = a.increments[i] * std::log(1.0 / rho[i + 1]);
    lo = std::min(lo, weighted);
    hi = std::max(hi, weighted);
  }
  a.harmonic_divergence = positive && ratios_ok && lo >= 0.5 * hi;
  return a;
}

ExperimentReport run_singular_probe(const SingularOptions& o) {
  if (!(o.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(o.t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (!(o.delta_amp > 0.0)) throw std::invalid_argument("delta_amp must be > 0");
  if (!(o.rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be > 0");
  if (o.rho_list.size() < 3) throw std::invalid_argument("rho_list needs at least three radii");
  for (std::size_t i = 0; i < o.rho_list.size(); ++i) {
    if (!(o.rho_list[i] > 0.0 && o.rho_list[i] < 0.5)) throw std::invalid_argument("rho_list entries must lie in (0, 1/2)");
    if (i > 0 && !(o.rho_list[i] < o.rho_list[i - 1])) throw std::invalid_argument("rho_list must be strictly decreasing");
  }

  auto f0 = [&](double r) { return singular_integrand_initial(r, o); };
  auto fv = [&](double r) { return singular_integrand_evolved(r, o); };

  // Outer part [rho_0, 1]: the cutoff transition is [1/2, 3/4], zero beyond.
  const double r_plateau = std::sqrt(kPlateau);
  const double r_support = std::sqrt(kSupport);
  double I0 = integrate_segment(f0, o.rho_list.front(), r_plateau, o.rel_tol) +
              integrate_segment(f0, r_plateau, r_support, o.rel_tol);
  double Iv = integrate_segment(fv, o.rho_list.front(), r_plateau, o.rel_tol) +
              integrate_segment(fv, r_plateau, r_support, o.rel_tol);

  ExperimentReport report;
  report.kind = ExperimentKind::singular;
  report.columns = {"rho", "I0", "Iv", "dI0", "dIv"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.rows.push_back({o.rho_list.front(), I0, Iv, nan, nan});
  for (std::size_t i = 1; i < o.rho_list.size(); ++i) {
    const double a = o.rho_list[i];
    const double b = o.rho_list[i - 1];
    const double d0 = integrate_segment(f0, a, b, o.rel_tol);
    const double dv = integrate_segment(fv, a, b, o.rel_tol);
    I0 += d0;
    Iv += dv;
    report.rows.push_back({a, I0, Iv, d0, dv});
  }

  report.notes.push_back("alpha = 1/(4 sigma + 2) = " + detail::format_17(critical_log_exponent(o.sigma)));
  report.notes.push_back("quadrature relative tolerance " + format_shortest(o.rel_tol));
  report.verdict = singular_verdict(report, &report.checks);
  return report;
}

bool singular_verdict(const ExperimentReport& report, std::vector<std::string>* checks) {
  const auto rho = report.numbers("rho");
  const auto a0 = analyze_increments(rho, report.numbers("I0"));
  const auto av = analyze_increments(rho, report.numbers("Iv"));
  if (checks) {
    checks->push_back(std::string("I0 Cauchy-converges (positive decreasing increments, last < 1% of total): ") +
                      (a0.cauchy_converges ? "pass" : "fail"));
    checks->push_back(std::string("Iv diverges (positive increments, ratios in [0.5, 1], increment*log(1/rho) "
                                  "bounded below by half its max): ") +
                      (av.harmonic_divergence ? "pass" : "fail"));
  }
  return a0.cauchy_converges && av.harmonic_divergence;
}

}  // namespace mdnls
