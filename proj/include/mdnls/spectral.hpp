#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mdnls/field.hpp"
#include "mdnls/symbol.hpp"

namespace mdnls {

SpectralField transform(const Field& f);
Field inverse_transform(const SpectralField& F);

/// Exact free flow of i du/dt + P(D) u = 0: coefficient-wise
/// u_k -> exp(+i t P(xi_k)) u_k.
Field free_propagate(const Field& f, const Symbol& symbol, double t);
SpectralField free_propagate(const SpectralField& F, const Symbol& symbol, double t);

/// (sum_k w(xi_k) |u_k|^2)^(1/2) with w = (1 + |xi|^2)^s, or |xi|^(2s) when
/// homogeneous. Homogeneous norms of negative order need a vanishing mean.
double sobolev_norm(const Field& f, double s, bool homogeneous = false);
double sobolev_norm(const SpectralField& F, double s, bool homogeneous = false);

/// Quadrature L^q norm; q = infinity gives the max modulus.
double lebesgue_norm(const Field& f, double q);

struct TimedField {
  double t;
  Field field;
};

/// Trapezoid rule for t -> ||u(t)||_{L^q}^p over the snapshot times, then
/// raised to 1/p.
double spacetime_norm(std::span<const TimedField> snapshots, double p, double q);

/// Same, from precomputed (t, ||u(t)||_{L^q}) pairs.
double spacetime_norm_from_values(std::span<const std::pair<double, double>> lq_values, double p);

/// Fraction of L2 mass outside |x| <= L/2.
double spatial_tail_fraction(const Field& f);

/// Fraction of spectral mass in the top octave, max_i |k_i| >= n/4.
double spectral_tail_fraction(const SpectralField& F);
double spectral_tail_fraction(const Field& f);

/// Zeroes every mode with max_i |k_i| > n/3.
void dealias_two_thirds(SpectralField& F);

}  // namespace mdnls
