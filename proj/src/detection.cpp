#include "spatialent/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "spatialent/errors.hpp"

namespace spatialent::detection {

using gaussian::GaussianState;
using gaussian::QuadratureTerm;

namespace {

constexpr double kLocalOscillatorRegime = 100.0;

void require_kind(const GaussianState& state, modes::ModeBasis::Kind kind, const char* op) {
  if (state.basis().kind() != kind) {
    throw BasisError(std::string(op) + (kind == modes::ModeBasis::Kind::Flipped
                                            ? ": state is not expressed in the flipped basis"
                                            : ": state is not expressed in the Hermite-Gauss basis"));
  }
}

void require_beam(const GaussianState& state, int beam) {
  if (beam < 0 || beam >= state.beams()) throw std::out_of_range("detector: beam index out of range");
}

}  // namespace

LocalOscillator LocalOscillator::tem10(std::shared_ptr<const modes::ModeBasis> basis, double phase,
                                       double photons) {
  return LocalOscillator{modes::basis_mode(std::move(basis), 1), phase, photons};
}

Observable Observable::scaled(double factor) const {
  Observable out = *this;
  for (auto& t : out.terms) t.weight *= factor;
  out.vacuum_variance *= factor * factor;
  return out;
}

double Observable::mean(const GaussianState& state) const { return gaussian::joint_mean(state, terms); }

double Observable::variance(const GaussianState& state) const {
  return gaussian::joint_variance(state, terms) + vacuum_variance;
}

Observable combine(const Observable& x, double a, const Observable& y, double b) {
  Observable out = x.scaled(a);
  const Observable rhs = y.scaled(b);
  out.terms.insert(out.terms.end(), rhs.terms.begin(), rhs.terms.end());
  out.vacuum_variance += rhs.vacuum_variance;
  return out;
}

Observable homodyne_observable(const GaussianState& state, int beam,
                               const modes::ModalCoefficients& profile, double phase) {
  require_beam(state, beam);
  if (!profile.basis || profile.basis->kind() != state.basis().kind() ||
      static_cast<int>(profile.coeffs.size()) != state.modes_per_beam()) {
    throw BasisError("homodyne: local oscillator profile is not in the state's basis");
  }
  const double norm_sq = profile.norm_sq();
  if (!(norm_sq > 1e-24)) throw std::invalid_argument("homodyne: zero-norm local oscillator profile");
  if (norm_sq > 1.0 + 1e-9) throw std::invalid_argument("homodyne: local oscillator profile norm exceeds 1");

  // a_LO = sum conj(c_n) a_n, so X_LO(phi) = sum |c_n| X_n(phi + arg c_n)
  Observable obs;
  for (int n = 0; n < state.modes_per_beam(); ++n) {
    const auto c = profile.coeffs[n];
    if (c == 0.0) continue;
    obs.terms.push_back({beam, n, phase + std::arg(c), std::abs(c)});
  }
  // LO weight outside the truncated basis beats against vacuum
  obs.vacuum_variance = std::max(0.0, 1.0 - norm_sq);
  return obs;
}

DetectionRecord homodyne(const GaussianState& state, int beam, const LocalOscillator& lo) {
  if (!(lo.photons > 0.0)) throw std::invalid_argument("homodyne: local oscillator photons must be > 0");
  const Observable obs = homodyne_observable(state, beam, lo.profile, lo.phase);
  const double gain = std::sqrt(lo.photons);
  DetectionRecord record;
  record.mean_signal = gain * obs.mean(state);
  record.variance = lo.photons * obs.variance(state);
  record.snl = lo.photons;
  record.normalized_variance = record.variance / record.snl;
  record.weak_local_oscillator = lo.photons < kLocalOscillatorRegime * state.photon_scale();
  return record;
}

double mean_field_phase(const GaussianState& state, int beam) {
  const auto alpha = state.amplitude(beam, 0);
  return alpha == 0.0 ? 0.0 : std::arg(alpha);
}

Observable position_observable(const GaussianState& state, int beam) {
  require_beam(state, beam);
  require_kind(state, modes::ModeBasis::Kind::HermiteGauss, "position_readout");
  const double scale = state.basis().waist() / (2.0 * std::sqrt(state.photon_scale()));
  return Observable{{{beam, 1, mean_field_phase(state, beam), scale}}, 0.0};
}

Observable momentum_observable(const GaussianState& state, int beam) {
  require_beam(state, beam);
  require_kind(state, modes::ModeBasis::Kind::HermiteGauss, "momentum_readout");
  const double scale = 1.0 / (state.basis().waist() * std::sqrt(state.photon_scale()));
  const double phi = mean_field_phase(state, beam) + 0.5 * std::numbers::pi;
  return Observable{{{beam, 1, phi, scale}}, 0.0};
}

Readout position_readout(const GaussianState& state, int beam) {
  const auto obs = position_observable(state, beam);
  return {obs.mean(state), obs.variance(state)};
}

Readout momentum_readout(const GaussianState& state, int beam) {
  const auto obs = momentum_observable(state, beam);
  return {obs.mean(state), obs.variance(state)};
}

Observable split_observable(const GaussianState& state, int beam, SplitQuadrature q) {
  require_beam(state, beam);
  require_kind(state, modes::ModeBasis::Kind::Flipped, "split_detect");
  // a -pi/2 shift on the flipped mode turns the in-phase readout into X(theta + pi/2)
  const double phi = mean_field_phase(state, beam) +
                     (q == SplitQuadrature::minus ? 0.5 * std::numbers::pi : 0.0);
  return Observable{{{beam, 1, phi, std::sqrt(state.photon_scale())}}, 0.0};
}

DetectionRecord split_detect(const GaussianState& state, int beam, SplitQuadrature q) {
  require_beam(state, beam);
  require_kind(state, modes::ModeBasis::Kind::Flipped, "split_detect");
  const GaussianState detected =
      q == SplitQuadrature::minus
          ? gaussian::apply_phase_shift(state, beam, 1, -0.5 * std::numbers::pi)
          : state;
  const Observable obs = split_observable(detected, beam, SplitQuadrature::plus);
  DetectionRecord record;
  record.mean_signal = obs.mean(detected);
  record.variance = obs.variance(detected);
  record.snl = state.photon_scale();
  record.normalized_variance = record.variance / record.snl;
  return record;
}

SampleStatistics monte_carlo_sample(const DetectionRecord& record, std::size_t shots,
                                    std::uint64_t seed, std::uint64_t stream) {
  if (shots < 2) throw std::invalid_argument("monte_carlo_sample: need at least 2 shots");
  if (!(record.variance >= 0.0)) throw std::invalid_argument("monte_carlo_sample: negative variance");

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigma = std::sqrt(record.variance);

  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 1; k <= shots; ++k) {
    const double x = record.mean_signal + sigma * normal(engine);
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  SampleStatistics stats;
  stats.shots = shots;
  stats.mean = mean;
  stats.variance = m2 / static_cast<double>(shots - 1);
  stats.mean_stderr = std::sqrt(stats.variance / static_cast<double>(shots));
  stats.variance_stderr = stats.variance * std::sqrt(2.0 / static_cast<double>(shots - 1));
  return stats;
}

}  // namespace spatialent::detection
