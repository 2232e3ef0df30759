#pragma once

#include "spatialent/gaussian_state.hpp"

namespace spatialent::criteria {

/// |[x, p]| = 1/N for the beam position / momentum observables.
/// @throws std::invalid_argument for N <= 0
double xp_commutator_norm(double photons);

/// |[n-(+), n-(-)]| = 2N for the two split-detector quadratures.
double split_commutator_norm(double photons);

/// Lower bound on Var(x) Var(p) implied by the commutator: (|[x,p]| / 2)^2 = 1/(4N^2).
double heisenberg_floor(double photons);

/// Var(x) Var(p) / heisenberg_floor for one beam; 1 for minimum-uncertainty states.
double normalized_heisenberg_product(const gaussian::GaussianState& state, int beam);

/// Which sign combination produced the reported value.
enum class Pairing {
  sum_first_diff_second,  ///< <(A3 + A4)^2> <(B3 - B4)^2>
  diff_first_sum_second,  ///< <(A3 - A4)^2> <(B3 + B4)^2>
};

struct InseparabilityResult {
  double sum_variance = 0.0;
  double diff_variance = 0.0;
  double commutator_norm_sq = 1.0;
  double value = 0.0;
  bool entangled = false;
  Pairing pairing = Pairing::sum_first_diff_second;
};

/// Product-form inseparability value from raw variances: sum * diff / |[A,B]|^2.
InseparabilityResult product_form(double sum_variance, double diff_variance,
                                  double commutator_norm, Pairing pairing);

/// @brief Position/momentum inseparability of the two beams of a post-splitter state.
///
/// x and p are read by TEM10 homodyne at LO phases 0 and pi/2 (a common phase reference for
/// both outputs), scaled by w0/(2 sqrt N) and 1/(w0 sqrt N). Both sign pairings are
/// evaluated and the smaller value is returned.
/// @throws StateError for single-beam states or outputs whose x / p variances differ by more
/// than 1e-6 (relative)
InseparabilityResult inseparability_xp(const gaussian::GaussianState& joint);

/// @brief Split-detection inseparability from n-(+) and n-(-) of both outputs, each detector
/// referenced to its own beam's mean field. Denominator (2N)^2.
/// @throws BasisError if the state is not in the flipped basis
InseparabilityResult inseparability_split(const gaussian::GaussianState& joint);

/// Closed form for squeezed inputs mixed with a pi/2 relative phase: V_a * V_b.
double inseparability_xp_closed_form(double v_a, double v_b);
/// Closed form (V_c + V_d)^2 / 4.
double inseparability_split_closed_form(double v_c, double v_d);

struct CorrelationSignatures {
  double corr_x;
  double corr_p;
};

/// Normalized covariances Cov(x3, x4)/sqrt(Var x3 Var x4) and the same for p.
/// @throws std::domain_error for a zero-variance readout
CorrelationSignatures correlation_signatures(const gaussian::GaussianState& joint);

}  // namespace spatialent::criteria
