#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mdnls/evolution.hpp"
#include "mdnls/grid.hpp"
#include "mdnls/scaling.hpp"
#include "mdnls/symbol.hpp"

namespace mdnls {

enum class ExperimentKind { simulate, inflate, ode_approx, strichartz, singular };

std::string_view to_string(ExperimentKind kind);

using Cell = std::variant<double, long, std::string>;

struct FittedExponent {
  std::string name;
  double value = 0.0;
  double residual = 0.0;
};

/// Tabular result of one driver run. `checks` records each criterion that
/// entered the verdict, with the tolerance it was held to.
struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::simulate;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<FittedExponent> fitted;
  std::vector<std::string> checks;
  std::vector<std::string> notes;
  bool verdict = false;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::vector<double> numbers(std::string_view name) const;
};

/// Least-squares line through (x, y); returns slope and RMS residual.
FittedExponent fit_slope(std::string name, const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Plain simulation.

struct SimulationOptions {
  double amplitude = 1.0;
  double width = 1.0;
  /// Seeds the homogeneity check of homogeneous symbols.
  std::uint64_t seed = 0;
  /// Allowed relative L2 drift between the first and last snapshot.
  double mass_tolerance = 1e-10;
};

/// Evolves amplitude * exp(-|x|^2 / width^2) and tabulates one row per
/// snapshot. Passes when the L2 norm is conserved to `mass_tolerance`.
ExperimentReport run_simulation(const SolveConfig& cfg, const Grid& grid, const SimulationOptions& options);

// ---------------------------------------------------------------------------
// ODE approximation on the logarithmic window.

struct OdeApproxOptions {
  std::vector<double> eps_list;
  int r = 1;
  double lambda = 1.0;
  /// Drop the dispersive term entirely (control run).
  bool zero_dispersion = false;
  double max_phase = 0.02;
  std::size_t min_steps = 64;
};

/// For each eps: h = eps^(1/eps_exponent), psi is evolved from kappa_h a0 on
/// the y-grid under the rescaled symbol h^(2 sigma (d/2 - s)) P(xi / h) up to
/// tau* = eps (log 1/eps)^delta, and E(eps) = max over steps of
/// ||psi(tau) - phi(tau)||_{H^r}. Passes when E strictly decreases along
/// eps_list and E(last)/E(first) < 0.5.
ExperimentReport run_ode_approx(const ScalingPlan& plan, const Symbol& symbol, const Grid& grid,
                                const OdeApproxOptions& options);

/// Applies the ode-approx verdict to its rows.
bool ode_approx_verdict(const ExperimentReport& report, std::vector<std::string>* checks = nullptr);

// ---------------------------------------------------------------------------
// Norm inflation.

struct InflationOptions {
  std::vector<double> h_list;
  double lambda = 1.0;
  double max_phase = 0.02;
  std::size_t min_steps = 64;
  double required_growth = 3.0;
};

/// For each h, records ||u0^h||_{H^s} and ||u^h(t^h)||_{H^s}, both read off
/// the psi-run through ||u^h||_{Hdot^s'} = h^(s - s') ||psi||_{Hdot^s'} at
/// s' in {0, s}. Passes when the initial norms strictly decrease and the
/// ratio final/initial grows by at least `required_growth` from the first to
/// the last h.
ExperimentReport run_norm_inflation(const ScalingPlan& plan, const Symbol& symbol, const Grid& grid,
                                    const InflationOptions& options);

bool inflation_verdict(const ExperimentReport& report, double required_growth,
                       std::vector<std::string>* checks = nullptr);

/// (h^(2s) ||f||_{L2}^2 + ||f||_{Hdot^s}^2)^(1/2): the H^s norm of the
/// unscaled field whose rescaled profile is f.
double unscaled_hs_norm(const Field& rescaled, double h, double s);

// ---------------------------------------------------------------------------
// Strichartz probe.

struct StrichartzOptions {
  int dim = 1;
  double p = 8.0;
  double q = 4.0;
  std::vector<double> k_grid{0.0, 0.25, 0.5};
  std::vector<double> N_list;
  /// I = [0, duration].
  double duration = 1.0;
  double half_length = 16.0;
  std::size_t n_ceiling = std::size_t{1} << 16;
  int snapshots_per_octave = 64;
  /// Also run the laplacian contrast and the P = 0 calibration.
  bool contrast = true;
  double margin = 0.1;
  double calibration_tolerance = 0.02;
};

bool admissible_pair(int dim, double p, double q);

/// N^(d/2) a0(N x) exp(i N x_1).
Field strichartz_probe_data(const Grid& grid, double N);

/// Grid resolving both scale 1/N and frequency N; throws when n would exceed
/// the ceiling.
Grid strichartz_grid(int dim, double N, double half_length, std::size_t n_ceiling);

/// Times in [0, duration] on dyadic levels refined toward t = 0, uniform
/// within each level.
std::vector<double> graded_time_mesh(double duration, double finest, int per_level);

struct StrichartzRun {
  double Q = 0.0;
  double lq_initial = 0.0;
  std::vector<double> hk;
  std::size_t points = 0;
  std::size_t snapshots = 0;
};

StrichartzRun strichartz_single(const Symbol& symbol, double N, const StrichartzOptions& options);

/// Q(N) = ||S(.) u0^N||_{L^p(I; L^q)} over N_list, slope k_hat of log Q
/// against log N. For a bounded symbol passes when k_hat >= d/2 - d/q -
/// margin; the P = 0 calibration slope must be within the calibration
/// tolerance of d/2 - d/q in every case.
ExperimentReport run_strichartz_probe(const Symbol& symbol, const StrichartzOptions& options);

// ---------------------------------------------------------------------------
// Log-singular data in d = 2.

/// alpha = 1/(4 sigma + 2).
double critical_log_exponent(double sigma);

/// Smooth cutoff: 1 on [0, 1/4], 0 on [9/16, inf).
double cutoff(double s);
double cutoff_derivative(double s);

struct RadialSample {
  double r;
  double u0;
  double du0;
};

/// u0(r) = delta (log 1/r)^alpha chi(r^2) and its r-derivative.
std::vector<RadialSample> log_singular_profile(double delta_amp, double sigma, const std::vector<double>& r_values);

struct SingularOptions {
  double sigma = 1.0;
  double lambda = 1.0;
  double t = 1.0;
  double delta_amp = 1.0;
  std::vector<double> rho_list;
  double rel_tol = 1e-9;
};

/// Integrands 2 pi r |d_r u0|^2 and 2 pi r |d_r v(t)|^2 with
/// v(t) = u0 exp(-i lambda t |u0|^(2 sigma)).
double singular_integrand_initial(double r, const SingularOptions& options);
double singular_integrand_evolved(double r, const SingularOptions& options);

/// I0(rho) and Iv(rho) over [rho, 1] by adaptive Gauss-Kronrod in log r.
ExperimentReport run_singular_probe(const SingularOptions& options);

bool singular_verdict(const ExperimentReport& report, std::vector<std::string>* checks = nullptr);

/// Decade increments and the convergence/divergence tests applied to them.
struct IncrementAnalysis {
  std::vector<double> increments;
  std::vector<double> ratios;
  bool cauchy_converges = false;
  bool harmonic_divergence = false;
};

IncrementAnalysis analyze_increments(const std::vector<double>& rho, const std::vector<double>& cumulative);

}  // namespace mdnls
