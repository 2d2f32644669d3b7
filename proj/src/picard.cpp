#include <algorithm>
#include <cmath>

#include "mdnls/evolution.hpp"
#include "mdnls/spectral.hpp"
#include "text.hpp"

namespace mdnls {

PicardDivergence::PicardDivergence(const std::string& what, std::vector<double> ratios)
    : std::runtime_error(what), ratios_(std::move(ratios)) {}

namespace {

SpectralField nonlinearity(const SpectralField& U, double sigma) {
  Field u = inverse_transform(U);
  for (auto& z : u.values()) {
    const double m2 = std::norm(z);
    z *= sigma == 1.0 ? m2 : std::pow(m2, sigma);
  }
  return transform(u);
}

}  // namespace

PicardResult picard_solve_fixed_mesh(const Field& u0, const SolveConfig& cfg, const PicardOptions& options) {
  validate(cfg);
  if (options.mesh < 1) throw std::invalid_argument("Picard mesh needs at least one interval");
  const Grid& grid = u0.grid();
  const auto lattice = cfg.symbol.on_lattice(grid);
  const std::size_t M = options.mesh;
  const std::size_t N = grid.size();
  const double dt = cfg.T / static_cast<double>(M);

  auto node_time = [&](std::size_t j) { return cfg.T * static_cast<double>(j) / static_cast<double>(M); };
  auto propagator = [&](std::size_t j, double sign) {
    std::vector<Complex> phase(N);
    const double t = sign * node_time(j) / cfg.eps;
    for (std::size_t i = 0; i < N; ++i) phase[i] = std::polar(1.0, t * (*lattice)[i]);
    return phase;
  };

  const SpectralField U0 = transform(u0);
  std::vector<std::vector<Complex>> forward(M + 1);
  std::vector<SpectralField> iterate;
  iterate.reserve(M + 1);
  for (std::size_t j = 0; j <= M; ++j) {
    forward[j] = propagator(j, +1.0);
    SpectralField U = U0;
    for (std::size_t i = 0; i < N; ++i) U[i] *= forward[j][i];
    iterate.push_back(std::move(U));
  }

  PicardReport report;
  report.mesh = M;
  const Complex coupling(0.0, -cfg.lambda / cfg.eps);

  for (int it = 1; it <= options.max_iter; ++it) {
    // Interaction picture: the Duhamel integral becomes a plain cumulative
    // trapezoid sum of S(-tau) N(u(tau)).
    std::vector<SpectralField> next;
    next.reserve(M + 1);
    std::vector<Complex> cumulative(N, Complex{});
    std::vector<Complex> previous_integrand;
    double distance = 0.0;
    for (std::size_t j = 0; j <= M; ++j) {
      std::vector<Complex> integrand(N);
      if (cfg.lambda != 0.0) {
        const SpectralField Nj = nonlinearity(iterate[j], cfg.sigma);
        for (std::size_t i = 0; i < N; ++i) integrand[i] = std::conj(forward[j][i]) * Nj[i];
      }
      if (j > 0) {
        for (std::size_t i = 0; i < N; ++i) cumulative[i] += 0.5 * dt * (previous_integrand[i] + integrand[i]);
      }
      SpectralField U(grid);
      for (std::size_t i = 0; i < N; ++i) U[i] = forward[j][i] * (U0[i] + coupling * cumulative[i]);

      SpectralField diff = U;
      for (std::size_t i = 0; i < N; ++i) diff[i] -= iterate[j][i];
      distance = std::max(distance, sobolev_norm(diff, options.s));

      previous_integrand = std::move(integrand);
      next.push_back(std::move(U));
    }
    iterate = std::move(next);
    report.distances.push_back(distance);
    if (report.distances.size() >= 2) {
      const double prev = report.distances[report.distances.size() - 2];
      report.ratios.push_back(prev > 0.0 ? distance / prev : 0.0);
    }
    report.iterations = it;
    if (distance < options.tol) {
      return {inverse_transform(iterate.back()), report};
    }
    if (!std::isfinite(distance)) break;
  }

  std::string history;
  for (double r : report.ratios) history += " " + detail::format_shortest(r);
  throw PicardDivergence("Picard iteration did not contract within " + std::to_string(options.max_iter) +
                             " iterations; ratios:" + history,
                         report.ratios);
}

PicardResult picard_solve(const Field& u0, const SolveConfig& cfg, const PicardOptions& options) {
  PicardOptions current = options;
  PicardResult result = picard_solve_fixed_mesh(u0, cfg, current);
  std::vector<double> changes;
  while (current.mesh * 2 <= options.max_mesh) {
    current.mesh *= 2;
    PicardResult refined = picard_solve_fixed_mesh(u0, cfg, current);
    const double change = sobolev_norm(refined.terminal - result.terminal, options.s);
    changes.push_back(change);
    result = std::move(refined);
    if (change < options.tol / 10.0) {
      result.report.mesh_converged = true;
      break;
    }
  }
  result.report.mesh_changes = std::move(changes);
  return result;
}

}  // namespace mdnls
