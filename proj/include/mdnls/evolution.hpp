#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdnls/field.hpp"
#include "mdnls/symbol.hpp"

namespace mdnls {

/// Parameters of i eps du/dt + P(D) u = lambda |u|^(2 sigma) u.
struct SolveConfig {
  Symbol symbol = make_symbol("constant");
  double lambda = 0.0;
  double sigma = 1.0;
  double dt = 1e-3;
  double T = 0.0;
  double eps = 1.0;
  int snapshot_every = 1;
  bool dealias = false;
};

void validate(const SolveConfig& cfg);

/// True when sigma is an integer or some integer r satisfies
/// 2 sigma >= r > d/2.
bool sigma_admissible(double sigma, int dim);

struct Snapshot {
  double t;
  Field field;
  double l2_norm;
  double spectral_tail;
};

struct Trajectory {
  SolveConfig config;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  double step = 0.0;
  bool sigma_admissible = false;
  std::vector<std::string> warnings;

  const Field& final_field() const { return snapshots.back().field; }
};

class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(std::size_t step, double t);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Exact flow of i eps du/dt = lambda |u|^(2 sigma) u over dt:
/// u -> u exp(-i (lambda dt / eps) |u|^(2 sigma)).
Field nonlinear_phase_step(const Field& f, double lambda, double sigma, double dt, double eps);

/// One Strang step: free half step, nonlinear phase over dt, free half step.
Field strang_step(const Field& f, const SolveConfig& cfg);

/// Repeated Strang steps up to T. The step is shrunk to T / ceil(T / dt) so
/// the last snapshot lands on T exactly; the first snapshot is t = 0 and the
/// last is always stored.
Trajectory evolve(const Field& u0, const SolveConfig& cfg);

/// Step size keeping each sub-phase below `max_phase` radians per step.
double phase_limited_step(const Field& u0, const SolveConfig& cfg, double max_phase = 0.02);

struct PicardOptions {
  double tol = 1e-10;
  int max_iter = 60;
  std::size_t mesh = 64;
  std::size_t max_mesh = std::size_t{1} << 14;
  /// Sobolev index of the sup-in-time distance between iterates.
  double s = 0.0;
};

struct PicardReport {
  /// sup_t ||u^(n) - u^(n-1)||_{H^s} on the final mesh.
  std::vector<double> distances;
  /// distances[n] / distances[n-1].
  std::vector<double> ratios;
  int iterations = 0;
  std::size_t mesh = 0;
  /// Terminal change after each mesh doubling.
  std::vector<double> mesh_changes;
  bool mesh_converged = false;
};

struct PicardResult {
  Field terminal;
  PicardReport report;
};

class PicardDivergence : public std::runtime_error {
 public:
  PicardDivergence(const std::string& what, std::vector<double> ratios);
  const std::vector<double>& ratios() const { return ratios_; }

 private:
  std::vector<double> ratios_;
};

/// Fixed point of the Duhamel map
///   u(t) = S(t)u0 - i (lambda/eps) int_0^t S(t - tau) |u|^(2 sigma) u dtau,
/// S(t) = exp(i t P(D) / eps), started from the free solution, with the
/// trapezoid rule on a uniform time mesh that is doubled until the terminal
/// field moves by less than tol/10.
PicardResult picard_solve(const Field& u0, const SolveConfig& cfg, const PicardOptions& options = {});

/// Picard iteration on one fixed mesh (no refinement).
PicardResult picard_solve_fixed_mesh(const Field& u0, const SolveConfig& cfg, const PicardOptions& options);

}  // namespace mdnls
