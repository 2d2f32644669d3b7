#include "mdnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdnls/spectral.hpp"
#include "text.hpp"

namespace mdnls {

NonFiniteError::NonFiniteError(std::size_t step, double t)
    : std::runtime_error("non-finite values at step " + std::to_string(step) + " (t = " +
                         detail::format_shortest(t) + ")"),
      step_(step) {}

void validate(const SolveConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.T >= 0.0) || !std::isfinite(cfg.T)) throw std::invalid_argument("T must be non-negative");
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) throw std::invalid_argument("sigma must be positive");
  if (!(cfg.eps > 0.0 && cfg.eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!std::isfinite(cfg.lambda)) throw std::invalid_argument("lambda must be finite");
  if (cfg.snapshot_every < 1) throw std::invalid_argument("snapshot_every must be >= 1");
}

bool sigma_admissible(double sigma, int dim) {
  if (sigma > 0.0 && sigma == std::floor(sigma)) return true;
  const int r_min = dim / 2 + 1;  // smallest integer > d/2
  return 2.0 * sigma >= static_cast<double>(r_min);
}

Field nonlinear_phase_step(const Field& f, double lambda, double sigma, double dt, double eps) {
  Field out = f;
  if (lambda == 0.0) return out;
  const double rate = lambda * dt / eps;
  for (auto& z : out.values()) {
    const double m2 = std::norm(z);
    const double power = sigma == 1.0 ? m2 : std::pow(m2, sigma);
    z *= std::polar(1.0, -rate * power);
  }
  return out;
}

namespace {

void apply_phase(SpectralField& F, const std::vector<Complex>& phase) {
  auto c = F.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= phase[i];
}

std::vector<Complex> phase_table(const std::vector<double>& lattice, double t) {
  std::vector<Complex> out(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) out[i] = std::polar(1.0, t * lattice[i]);
  return out;
}

}  // namespace

Field strang_step(const Field& f, const SolveConfig& cfg) {
  validate(cfg);
  const double half = 0.5 * cfg.dt / cfg.eps;
  SpectralField F = free_propagate(transform(f), cfg.symbol, half);
  if (cfg.dealias) dealias_two_thirds(F);
  Field mid = nonlinear_phase_step(inverse_transform(F), cfg.lambda, cfg.sigma, cfg.dt, cfg.eps);
  SpectralField G = free_propagate(transform(mid), cfg.symbol, half);
  if (cfg.dealias) dealias_two_thirds(G);
  return inverse_transform(G);
}

double phase_limited_step(const Field& u0, const SolveConfig& cfg, double max_phase) {
  double umax = 0.0;
  for (const auto& z : u0.values()) umax = std::max(umax, std::abs(z));
  const auto lattice = cfg.symbol.on_lattice(u0.grid());
  double pmax = 0.0;
  for (double p : *lattice) pmax = std::max(pmax, std::abs(p));
  const double rate = std::abs(cfg.lambda) * std::pow(umax, 2.0 * cfg.sigma) + pmax;
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return max_phase * cfg.eps / rate;
}

Trajectory evolve(const Field& u0, const SolveConfig& cfg) {
  validate(cfg);
  Trajectory traj;
  traj.config = cfg;
  traj.sigma_admissible = sigma_admissible(cfg.sigma, u0.grid().dim());

  const double spatial_tail = spatial_tail_fraction(u0);
  const double spectral_tail = spectral_tail_fraction(u0);
  if (spatial_tail > 1e-8) {
    traj.warnings.push_back("initial spatial tail mass " + detail::format_shortest(spatial_tail) +
                            " exceeds 1e-8");
  }
  if (spectral_tail > 1e-8) {
    traj.warnings.push_back("initial spectral tail mass " + detail::format_shortest(spectral_tail) +
                            " exceeds 1e-8");
  }

  traj.snapshots.push_back({0.0, u0, lebesgue_norm(u0, 2.0), spectral_tail});
  if (cfg.T == 0.0) return traj;

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.T / cfg.dt - 1e-9));
  const std::size_t nsteps = std::max<std::size_t>(steps, 1);
  const double dt = cfg.T / static_cast<double>(nsteps);
  traj.steps = nsteps;
  traj.step = dt;

  const auto lattice = cfg.symbol.on_lattice(u0.grid());
  const auto half = phase_table(*lattice, 0.5 * dt / cfg.eps);
  const auto full = phase_table(*lattice, dt / cfg.eps);

  // Adjacent free half steps are fused; the pending half step is flushed
  // whenever a snapshot is taken.
  Field u = u0;
  bool pending = false;
  for (std::size_t step = 1; step <= nsteps; ++step) {
    SpectralField F = transform(u);
    apply_phase(F, pending ? full : half);
    if (cfg.dealias) dealias_two_thirds(F);
    u = nonlinear_phase_step(inverse_transform(F), cfg.lambda, cfg.sigma, dt, cfg.eps);
    pending = true;

    const double t = step == nsteps ? cfg.T : dt * static_cast<double>(step);
    const bool take = step == nsteps || step % static_cast<std::size_t>(cfg.snapshot_every) == 0;
    if (take) {
      SpectralField G = transform(u);
      apply_phase(G, half);
      if (cfg.dealias) dealias_two_thirds(G);
      u = inverse_transform(G);
      pending = false;
      if (!u.all_finite()) throw NonFiniteError(step, t);
      traj.snapshots.push_back({t, u, lebesgue_norm(u, 2.0), spectral_tail_fraction(G)});
    } else if (!u.all_finite()) {
      throw NonFiniteError(step, t);
    }
  }
  return traj;
}

}  // namespace mdnls
