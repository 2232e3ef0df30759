#pragma once

// Detector models on Gaussian states: transverse-mode homodyne with an arbitrary local
// oscillator profile, position / momentum readout of a TEM00 beam, split detection through the
// flipped mode (with the cavity pi/2 variant) and seeded Monte Carlo photocurrent sampling.
//
// All detectors are linearized: a detector is a linear combination of quadratures plus an
// independent vacuum contribution for local-oscillator weight outside the truncated basis.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spatialent/gaussian_state.hpp"
#include "spatialent/hg_modes.hpp"

namespace spatialent::detection {

/// @brief Bright reference beam for homodyne detection.
struct LocalOscillator {
  modes::ModalCoefficients profile;  ///< transverse shape in the signal basis, norm <= 1
  double phase = 0.0;
  double photons = 1e8;

  /// TEM10 local oscillator in a Hermite-Gauss basis.
  static LocalOscillator tem10(std::shared_ptr<const modes::ModeBasis> basis, double phase,
                               double photons);
};

/// @brief Mean photocurrent difference and its noise for one detector configuration.
struct DetectionRecord {
  double mean_signal = 0.0;
  double variance = 0.0;
  double snl = 1.0;  ///< shot-noise reference for the same configuration
  double normalized_variance = 0.0;
  bool weak_local_oscillator = false;  ///< N_LO < 100 N: linearization not trustworthy
};

/// @brief Linear observable sum(weight * X_phi) + independent vacuum of variance `vacuum_variance`.
struct Observable {
  std::vector<gaussian::QuadratureTerm> terms;
  double vacuum_variance = 0.0;

  Observable scaled(double factor) const;
  double mean(const gaussian::GaussianState& state) const;
  double variance(const gaussian::GaussianState& state) const;
};

/// a*x + b*y. Vacuum parts are treated as independent.
Observable combine(const Observable& x, double a, const Observable& y, double b);

/// Unit-LO homodyne observable: X of the LO mode at the LO phase (no sqrt(N_LO) gain).
Observable homodyne_observable(const gaussian::GaussianState& state, int beam,
                               const modes::ModalCoefficients& profile, double phase);

/// @brief Homodyne difference photocurrent sqrt(N_LO) * X_phi of the LO mode.
/// @throws std::invalid_argument for a zero-norm or over-normalized profile
/// @throws BasisError if the profile is not in the state's basis
DetectionRecord homodyne(const gaussian::GaussianState& state, int beam, const LocalOscillator& lo);

struct Readout {
  double mean;
  double variance;
};

/// Phase of the beam's mean field (mode 0); zero for a beam without mean field.
double mean_field_phase(const gaussian::GaussianState& state, int beam);

/// x = (w0 / 2 sqrt N) X+ of mode 1, X+ referenced to the beam's mean-field phase.
Observable position_observable(const gaussian::GaussianState& state, int beam);
/// p = (1 / w0 sqrt N) X- of mode 1.
Observable momentum_observable(const gaussian::GaussianState& state, int beam);

Readout position_readout(const gaussian::GaussianState& state, int beam);
Readout momentum_readout(const gaussian::GaussianState& state, int beam);

enum class SplitQuadrature { plus, minus };

/// @brief Flipped-mode quadrature seen by a split detector, in units of sqrt(N) X.
///
/// The beam's own mean field in v_0 is the phase reference. `minus` inserts the cavity pi/2
/// shift between v_0 and the flipped mode before detection.
/// @throws BasisError if the state is not expressed in the flipped basis
Observable split_observable(const gaussian::GaussianState& state, int beam, SplitQuadrature q);

DetectionRecord split_detect(const gaussian::GaussianState& state, int beam, SplitQuadrature q);

struct SampleStatistics {
  std::size_t shots = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
};

/// @brief Draws `shots` Gaussian photocurrents with the record's mean and variance.
///
/// Identical (record, shots, seed, stream) give identical samples within one build.
/// @throws std::invalid_argument for shots < 2
SampleStatistics monte_carlo_sample(const DetectionRecord& record, std::size_t shots,
                                    std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace spatialent::detection
