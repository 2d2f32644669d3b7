#include "mdnls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdnls/evolution.hpp"
#include "mdnls/spectral.hpp"
#include "text.hpp"

namespace mdnls {

using detail::format_shortest;

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate:
      return "simulate";
    case ExperimentKind::inflate:
      return "inflate";
    case ExperimentKind::ode_approx:
      return "ode-approx";
    case ExperimentKind::strichartz:
      return "strichartz";
    case ExperimentKind::singular:
      return "singular";
  }
  return "unknown";
}

std::size_t ExperimentReport::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("report has no column '" + std::string(name) + "'");
}

double ExperimentReport::number(std::size_t row, std::string_view name) const {
  const Cell& cell = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* l = std::get_if<long>(&cell)) return static_cast<double>(*l);
  throw std::invalid_argument("column '" + std::string(name) + "' is not numeric");
}

std::vector<double> ExperimentReport::numbers(std::string_view name) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(number(i, name));
  return out;
}

FittedExponent fit_slope(std::string name, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct abscissae");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (my + slope * (x[i] - mx));
    rss += e * e;
  }
  return {std::move(name), slope, std::sqrt(rss / n)};
}

ExperimentReport run_simulation(const SolveConfig& cfg, const Grid& grid, const SimulationOptions& options) {
  if (!(options.width > 0.0)) throw std::invalid_argument("width must be > 0");
  const double w2 = options.width * options.width;
  const Field u0 = Field::sample(grid, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return Complex(options.amplitude * std::exp(-r2 / w2), 0.0);
  });
  const Trajectory traj = evolve(u0, cfg);

  ExperimentReport report;
  report.kind = ExperimentKind::simulate;
  report.columns = {"t", "l2_norm", "h1_norm", "max_modulus", "spectral_tail"};
  for (const auto& snap : traj.snapshots) {
    report.rows.push_back({snap.t, snap.l2_norm, sobolev_norm(snap.field, 1.0), lebesgue_norm(snap.field, std::numeric_limits<double>::infinity()),
                           snap.spectral_tail});
  }

  const double m0 = traj.snapshots.front().l2_norm;
  const double drift = m0 > 0.0 ? std::abs(traj.snapshots.back().l2_norm - m0) / m0 : 0.0;
  const bool conserved = drift <= options.mass_tolerance;
  report.checks.push_back("relative L2 drift " + detail::format_17(drift) + " <= " +
                          format_shortest(options.mass_tolerance) + ": " + (conserved ? "pass" : "fail"));
  bool pass = conserved;
  if (cfg.symbol.is_homogeneous()) {
    const double m = std::get<Homogeneous>(cfg.symbol.symbol_class()).degree;
    const auto h = verify_homogeneity(cfg.symbol, m, 64, grid.dim(), options.seed);
    report.checks.push_back("homogeneity of degree " + format_shortest(m) + ", max relative deviation " +
                            detail::format_17(h.max_relative_deviation) + " <= 1e-10: " + (h.pass ? "pass" : "fail"));
    pass = pass && h.pass;
  }
  report.notes.push_back("steps " + std::to_string(traj.steps) + ", dt " + detail::format_17(traj.step));
  report.notes.push_back(std::string("sigma admissible: ") + (traj.sigma_admissible ? "yes" : "no"));
  for (const auto& w : traj.warnings) report.notes.push_back(w);
  report.verdict = pass;
  return report;
}

namespace {

void require_decreasing(const std::vector<double>& v, std::string_view what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) throw std::invalid_argument(std::string(what) + " must be strictly decreasing");
  }
}

struct PsiRun {
  Trajectory trajectory;
  double kappa;
  double tau_star;
};

PsiRun run_psi(const ScalingPlan& plan, const Symbol& rescaled, const Grid& grid, double h, double eps,
               double lambda, double max_phase, std::size_t min_steps) {
  const double kappa = plan.kappa(h);
  const double tau_star = plan.tau_star(eps);
  SolveConfig cfg;
  cfg.symbol = rescaled;
  cfg.lambda = lambda;
  cfg.sigma = plan.sigma;
  cfg.eps = eps;
  cfg.T = tau_star;
  cfg.snapshot_every = 1;
  const Field psi0 = ode_phase_profile(0.0, grid, kappa, lambda, plan.sigma, eps);
  cfg.dt = std::min(phase_limited_step(psi0, cfg, max_phase), tau_star / static_cast<double>(min_steps));
  return {evolve(psi0, cfg), kappa, tau_star};
}

void check_scale(double h) {
  if (!(h > 0.0) || h > max_concentration_scale()) {
    throw std::invalid_argument("h = " + format_shortest(h) + " must lie in (0, e^-1]");
  }
}

}  // namespace

ExperimentReport run_ode_approx(const ScalingPlan& plan, const Symbol& symbol, const Grid& grid,
                                const OdeApproxOptions& options) {
  require_decreasing(options.eps_list, "eps_list");
  if (grid.dim() != plan.dim) throw std::invalid_argument("grid dimension differs from the plan");
  if (!(options.r > 0.5 * plan.dim)) {
    throw std::invalid_argument("r must satisfy r > d/2 (ODE-approximation hypothesis)");
  }
  if (plan.sigma != std::floor(plan.sigma) && options.r > 2.0 * plan.sigma) {
    throw std::invalid_argument("r <= 2 sigma required for non-integer sigma (ODE-approximation hypothesis)");
  }

  ExperimentReport report;
  report.kind = ExperimentKind::ode_approx;
  report.columns = {"eps",   "h",     "kappa",     "symbol_amplitude", "tau_star",  "steps",
                    "error", "phi_hr", "spatial_tail", "spectral_tail"};

  for (double eps : options.eps_list) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    const double h = plan.h_from_eps(eps);
    check_scale(h);
    const double amplitude = plan.symbol_amplitude(h);
    const Symbol rescaled =
        options.zero_dispersion ? make_symbol("constant") : symbol.rescaled(amplitude, 1.0 / h);
    const auto run = run_psi(plan, rescaled, grid, h, eps, options.lambda, options.max_phase, options.min_steps);

    double error = 0.0;
    double tail = 0.0;
    for (const auto& snap : run.trajectory.snapshots) {
      const Field phi = ode_phase_profile(snap.t, grid, run.kappa, options.lambda, plan.sigma, eps);
      error = std::max(error, sobolev_norm(snap.field - phi, options.r));
      tail = std::max(tail, snap.spectral_tail);
    }
    const Field phi_end = ode_phase_profile(run.tau_star, grid, run.kappa, options.lambda, plan.sigma, eps);
    report.rows.push_back({eps, h, run.kappa, amplitude, run.tau_star,
                           static_cast<long>(run.trajectory.steps), error,
                           sobolev_norm(phi_end, options.r),
                           spatial_tail_fraction(run.trajectory.final_field()), tail});
    for (const auto& w : run.trajectory.warnings) report.notes.push_back("eps=" + format_shortest(eps) + ": " + w);
  }

  report.verdict = ode_approx_verdict(report, &report.checks);
  return report;
}

bool ode_approx_verdict(const ExperimentReport& report, std::vector<std::string>* checks) {
  const auto e = report.numbers("error");
  bool decreasing = !e.empty();
  for (std::size_t i = 1; i < e.size(); ++i) decreasing = decreasing && e[i] < e[i - 1];
  const double ratio = e.empty() || e.front() == 0.0 ? std::numeric_limits<double>::quiet_NaN() : e.back() / e.front();
  const bool shrinks = ratio < 0.5;
  if (checks) {
    checks->push_back(std::string("E(eps) strictly decreasing along eps_list: ") + (decreasing ? "pass" : "fail"));
    checks->push_back("E(last)/E(first) = " + detail::format_17(ratio) + " < 0.5: " + (shrinks ? "pass" : "fail"));
  }
  return decreasing && shrinks;
}

double unscaled_hs_norm(const Field& rescaled, double h, double s) {
  const SpectralField F = transform(rescaled);
  const double l2 = sobolev_norm(F, 0.0, true);
  const double hom = sobolev_norm(F, s, true);
  return std::sqrt(std::pow(h, 2.0 * s) * l2 * l2 + hom * hom);
}

ExperimentReport run_norm_inflation(const ScalingPlan& plan, const Symbol& symbol, const Grid& grid,
                                    const InflationOptions& options) {
  require_decreasing(options.h_list, "h_list");
  if (grid.dim() != plan.dim) throw std::invalid_argument("grid dimension differs from the plan");

  ExperimentReport report;
  report.kind = ExperimentKind::inflate;
  report.columns = {"h",          "eps",      "kappa",    "tau_star",     "t_h",          "steps",
                    "hs_initial", "hs_final", "ratio",    "phi_hs",       "phi_bound",    "spatial_tail",
                    "spectral_tail"};

  std::vector<double> log_log_eps;
  std::vector<double> log_phi;
  for (double h : options.h_list) {
    check_scale(h);
    const double eps = plan.eps(h);
    const Symbol rescaled = symbol.rescaled(plan.symbol_amplitude(h), 1.0 / h);
    const auto run = run_psi(plan, rescaled, grid, h, eps, options.lambda, options.max_phase, options.min_steps);
    const Field& psi0 = run.trajectory.snapshots.front().field;
    const Field& psi_end = run.trajectory.final_field();
    const double initial = unscaled_hs_norm(psi0, h, plan.s);
    const double final_norm = unscaled_hs_norm(psi_end, h, plan.s);
    const Field phi = ode_phase_profile(run.tau_star, grid, run.kappa, options.lambda, plan.sigma, eps);
    const double phi_hs = sobolev_norm(phi, plan.s);
    const double bound = std::pow(std::log(1.0 / eps), plan.growth_exponent());
    double tail = 0.0;
    for (const auto& snap : run.trajectory.snapshots) tail = std::max(tail, snap.spectral_tail);

    report.rows.push_back({h, eps, run.kappa, run.tau_star, plan.t_h(h), static_cast<long>(run.trajectory.steps),
                           initial, final_norm, final_norm / initial, phi_hs, bound,
                           spatial_tail_fraction(psi_end), tail});
    log_log_eps.push_back(std::log(std::log(1.0 / eps)));
    log_phi.push_back(std::log(phi_hs));
  }

  if (log_log_eps.size() >= 2) {
    report.fitted.push_back(fit_slope("phi_hs_vs_log_inv_eps", log_log_eps, log_phi));
  }
  report.notes.push_back("growth exponent s*delta - theta - 2*sigma*theta*s = " +
                         detail::format_17(plan.growth_exponent()));
  report.verdict = inflation_verdict(report, options.required_growth, &report.checks);
  // The free flow is unitary on every H^s: without the nonlinearity nothing can inflate.
  const bool coupled = options.lambda != 0.0;
  report.checks.push_back(std::string("lambda != 0 (unitarity guard): ") + (coupled ? "pass" : "fail"));
  report.verdict = report.verdict && coupled;
  return report;
}

bool inflation_verdict(const ExperimentReport& report, double required_growth, std::vector<std::string>* checks) {
  const auto initial = report.numbers("hs_initial");
  const auto ratio = report.numbers("ratio");
  bool decreasing = !initial.empty();
  for (std::size_t i = 1; i < initial.size(); ++i) decreasing = decreasing && initial[i] < initial[i - 1];
  const double growth = ratio.empty() ? 0.0 : ratio.back() / ratio.front();
  const bool grows = growth >= required_growth;
  if (checks) {
    checks->push_back(std::string("||u0^h||_{H^s} strictly decreasing along h_list: ") +
                      (decreasing ? "pass" : "fail"));
    checks->push_back("ratio(last)/ratio(first) = " + detail::format_17(growth) +
                      " >= " + detail::format_shortest(required_growth) + ": " + (grows ? "pass" : "fail"));
  }
  return decreasing && grows;
}

}  // namespace mdnls
