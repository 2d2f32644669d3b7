#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mdnls/experiments.hpp"
#include "mdnls/spectral.hpp"
#include "text.hpp"

namespace mdnls {

using detail::format_shortest;

bool admissible_pair(int dim, double p, double q) {
  if (!(p >= 2.0) || !(q >= 2.0)) return false;
  if (p == 2.0 && std::isinf(q)) return false;
  if (std::isinf(p)) return false;
  const double lhs = 2.0 / p;
  const double rhs = dim * (0.5 - (std::isinf(q) ? 0.0 : 1.0 / q));
  return std::abs(lhs - rhs) <= 1e-12;
}

Field strichartz_probe_data(const Grid& grid, double N) {
  const double amp = std::pow(N, 0.5 * grid.dim());
  return Field::sample(grid, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += (N * c) * (N * c);
    return amp * std::exp(-r2) * std::polar(1.0, N * x[0]);
  });
}

Grid strichartz_grid(int dim, double N, double half_length, std::size_t n_ceiling) {
  // The spectrum of the probe is exp(-|xi - N e1|^2 / (4 N^2)); 12.5 N keeps
  // the truncated Gaussian tail below 1e-14 in amplitude.
  const double xi_needed = 12.5 * N;
  const double need = 2.0 * half_length * xi_needed / std::numbers::pi;
  std::size_t n = 8;
  while (static_cast<double>(n) < need) n *= 2;
  const std::size_t total = dim == 1 ? n : n * n;
  if (total > n_ceiling) {
    throw std::invalid_argument("Strichartz probe at N = " + format_shortest(N) + " needs n = " +
                                std::to_string(n) + " per axis (" + std::to_string(total) +
                                " nodes), above the ceiling " + std::to_string(n_ceiling));
  }
  return Grid(dim, n, half_length);
}

std::vector<double> graded_time_mesh(double duration, double finest, int per_level) {
  if (!(duration > 0.0)) throw std::invalid_argument("time interval must have positive length");
  if (per_level < 1) throw std::invalid_argument("need at least one interval per level");
  const int levels = std::clamp(static_cast<int>(std::ceil(std::log2(duration / finest))), 0, 60);
  const double base = std::ldexp(duration, -levels);
  std::vector<double> t{0.0};
  auto fill = [&](double a, double b) {
    for (int i = 1; i <= per_level; ++i) t.push_back(a + (b - a) * i / per_level);
  };
  fill(0.0, base);
  for (int l = 1; l <= levels; ++l) fill(std::ldexp(base, l - 1), std::ldexp(base, l));
  t.back() = duration;
  return t;
}

StrichartzRun strichartz_single(const Symbol& symbol, double N, const StrichartzOptions& options) {
  const Grid grid = strichartz_grid(options.dim, N, options.half_length, options.n_ceiling);
  const Field u0 = strichartz_probe_data(grid, N);
  const SpectralField U0 = transform(u0);

  const auto lattice = symbol.on_lattice(grid);
  double pmax = 0.0;
  for (double p : *lattice) pmax = std::max(pmax, std::abs(p));
  // Finest level resolves one hundredth of the fastest phase rotation.
  const double finest = 0.01 / (1.0 + pmax);
  const auto times = graded_time_mesh(options.duration, finest, options.snapshots_per_octave);

  std::vector<std::pair<double, double>> lq;
  lq.reserve(times.size());
  for (double t : times) {
    lq.emplace_back(t, lebesgue_norm(inverse_transform(free_propagate(U0, symbol, t)), options.q));
  }

  StrichartzRun run;
  run.Q = spacetime_norm_from_values(lq, options.p);
  run.lq_initial = lq.front().second;
  for (double k : options.k_grid) run.hk.push_back(sobolev_norm(U0, k));
  run.points = grid.points();
  run.snapshots = times.size();
  return run;
}

ExperimentReport run_strichartz_probe(const Symbol& symbol, const StrichartzOptions& options) {
  if (options.dim != 1 && options.dim != 2) throw std::invalid_argument("d must be 1 or 2");
  if (!admissible_pair(options.dim, options.p, options.q)) {
    throw std::invalid_argument("(p, q) = (" + format_shortest(options.p) + ", " + format_shortest(options.q) +
                                ") is not admissible: need p, q >= 2, (p, q) != (2, inf), 2/p = d(1/2 - 1/q)");
  }
  if (options.N_list.size() < 2) throw std::invalid_argument("N_list needs at least two frequencies");
  for (std::size_t i = 0; i < options.N_list.size(); ++i) {
    if (!(options.N_list[i] >= 1.0)) throw std::invalid_argument("N_list entries must be >= 1");
    if (i > 0 && !(options.N_list[i] > options.N_list[i - 1])) {
      throw std::invalid_argument("N_list must be strictly increasing");
    }
  }

  ExperimentReport report;
  report.kind = ExperimentKind::strichartz;
  report.columns = {"symbol", "N", "n", "snapshots", "Q", "lq_initial"};
  for (double k : options.k_grid) report.columns.push_back("h" + format_shortest(k) + "_norm");

  std::vector<Symbol> symbols{symbol};
  const Symbol laplacian = make_symbol("laplacian");
  const Symbol zero = make_symbol("constant");
  if (options.contrast) {
    symbols.push_back(laplacian);
    symbols.push_back(zero);
  }

  std::vector<double> logN;
  for (double N : options.N_list) logN.push_back(std::log(N));

  const double target = 0.5 * options.dim - options.dim / options.q;
  std::vector<FittedExponent> slopes;
  for (std::size_t which = 0; which < symbols.size(); ++which) {
    const Symbol& P = symbols[which];
    std::vector<double> logQ;
    for (double N : options.N_list) {
      const auto run = strichartz_single(P, N, options);
      std::vector<Cell> row{P.name(), N, static_cast<long>(run.points), static_cast<long>(run.snapshots), run.Q,
                            run.lq_initial};
      for (double hk : run.hk) row.emplace_back(hk);
      report.rows.push_back(std::move(row));
      logQ.push_back(std::log(run.Q));
    }
    const std::string label = which == 0 ? "k_hat" : which == 1 ? "k_hat_laplacian" : "k_hat_zero";
    slopes.push_back(fit_slope(label, logN, logQ));
  }
  report.fitted = slopes;

  bool pass = true;
  if (symbol.is_bounded()) {
    const bool ok = slopes[0].value >= target - options.margin;
    report.checks.push_back("k_hat = " + detail::format_17(slopes[0].value) + " >= d/2 - d/q - " +
                            format_shortest(options.margin) + " = " + detail::format_17(target - options.margin) +
                            ": " + (ok ? "pass" : "fail"));
    pass = pass && ok;
  } else {
    report.notes.push_back("homogeneous symbol: no lower bound on k_hat is asserted");
  }
  if (options.contrast) {
    const double dev = std::abs(slopes[2].value - target);
    const bool ok = dev <= options.calibration_tolerance;
    report.checks.push_back("P = 0 calibration |k_hat_zero - (d/2 - d/q)| = " + detail::format_17(dev) + " <= " +
                            format_shortest(options.calibration_tolerance) + ": " + (ok ? "pass" : "fail"));
    pass = pass && ok;
    report.notes.push_back("laplacian contrast k_hat = " + detail::format_17(slopes[1].value));
  }
  report.verdict = pass;
  return report;
}

}  // namespace mdnls
