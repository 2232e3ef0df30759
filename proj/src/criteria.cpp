#include "spatialent/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spatialent/detection.hpp"
#include "spatialent/errors.hpp"

namespace spatialent::criteria {

using detection::Observable;
using gaussian::GaussianState;

namespace {

constexpr double kSymmetryTolerance = 1e-6;
// values within rounding of the separable boundary are not reported as entangled
constexpr double kBoundaryTolerance = 1e-12;

void require_positive(double photons) {
  if (!(photons > 0.0)) throw std::invalid_argument("photon number must be > 0");
}

void require_two_beams(const GaussianState& joint) {
  if (joint.beams() != 2) throw StateError("criterion needs both beam-splitter outputs");
}

void require_symmetric(double a, double b, const char* what) {
  if (std::abs(a - b) > kSymmetryTolerance * std::max(std::abs(a), std::abs(b))) {
    throw StateError(std::string("outputs are not symmetric in ") + what +
                     " variance; the product-form criterion does not apply");
  }
}

struct ReadoutPair {
  Observable first[2];   // A3, A4
  Observable second[2];  // B3, B4
};

InseparabilityResult best_pairing(const GaussianState& joint, const ReadoutPair& r,
                                  double commutator_norm) {
  using detection::combine;
  const double sum_first = combine(r.first[0], 1.0, r.first[1], 1.0).variance(joint);
  const double diff_first = combine(r.first[0], 1.0, r.first[1], -1.0).variance(joint);
  const double sum_second = combine(r.second[0], 1.0, r.second[1], 1.0).variance(joint);
  const double diff_second = combine(r.second[0], 1.0, r.second[1], -1.0).variance(joint);

  const auto a = product_form(sum_first, diff_second, commutator_norm, Pairing::sum_first_diff_second);
  const auto b = product_form(diff_first, sum_second, commutator_norm, Pairing::diff_first_sum_second);
  return b.value < a.value ? b : a;
}

ReadoutPair xp_readouts(const GaussianState& joint) {
  require_two_beams(joint);
  if (joint.basis().kind() != modes::ModeBasis::Kind::HermiteGauss) {
    throw BasisError("x-p criterion needs a Hermite-Gauss basis state");
  }
  const double n = joint.photon_scale();
  const double w0 = joint.basis().waist();
  const auto tem10 = modes::basis_mode(joint.basis_ptr(), 1);
  ReadoutPair r;
  for (int beam = 0; beam < 2; ++beam) {
    r.first[beam] = detection::homodyne_observable(joint, beam, tem10, 0.0).scaled(w0 / (2.0 * std::sqrt(n)));
    r.second[beam] = detection::homodyne_observable(joint, beam, tem10, 0.5 * std::numbers::pi)
                         .scaled(1.0 / (w0 * std::sqrt(n)));
  }
  return r;
}

double correlation(const GaussianState& joint, const Observable& a, const Observable& b) {
  const double va = a.variance(joint);
  const double vb = b.variance(joint);
  if (!(va > 0.0) || !(vb > 0.0)) throw std::domain_error("correlation of a zero-variance readout");
  const double cov = 0.25 * (detection::combine(a, 1.0, b, 1.0).variance(joint) -
                             detection::combine(a, 1.0, b, -1.0).variance(joint));
  return cov / std::sqrt(va * vb);
}

}  // namespace

double xp_commutator_norm(double photons) {
  require_positive(photons);
  return 1.0 / photons;
}

double split_commutator_norm(double photons) {
  require_positive(photons);
  return 2.0 * photons;
}

double heisenberg_floor(double photons) {
  const double half = 0.5 * xp_commutator_norm(photons);
  return half * half;
}

double normalized_heisenberg_product(const GaussianState& state, int beam) {
  const auto x = detection::position_readout(state, beam);
  const auto p = detection::momentum_readout(state, beam);
  return x.variance * p.variance / heisenberg_floor(state.photon_scale());
}

InseparabilityResult product_form(double sum_variance, double diff_variance, double commutator_norm,
                                  Pairing pairing) {
  if (!(commutator_norm > 0.0)) throw std::invalid_argument("commutator norm must be > 0");
  InseparabilityResult r;
  r.sum_variance = sum_variance;
  r.diff_variance = diff_variance;
  r.commutator_norm_sq = commutator_norm * commutator_norm;
  r.value = sum_variance * diff_variance / r.commutator_norm_sq;
  r.entangled = r.value < 1.0 - kBoundaryTolerance;
  r.pairing = pairing;
  return r;
}

InseparabilityResult inseparability_xp(const GaussianState& joint) {
  const auto r = xp_readouts(joint);
  require_symmetric(r.first[0].variance(joint), r.first[1].variance(joint), "position");
  require_symmetric(r.second[0].variance(joint), r.second[1].variance(joint), "momentum");
  return best_pairing(joint, r, xp_commutator_norm(joint.photon_scale()));
}

InseparabilityResult inseparability_split(const GaussianState& joint) {
  require_two_beams(joint);
  ReadoutPair r;
  for (int beam = 0; beam < 2; ++beam) {
    r.first[beam] = detection::split_observable(joint, beam, detection::SplitQuadrature::plus);
    r.second[beam] = detection::split_observable(joint, beam, detection::SplitQuadrature::minus);
  }
  require_symmetric(r.first[0].variance(joint), r.first[1].variance(joint), "amplitude");
  require_symmetric(r.second[0].variance(joint), r.second[1].variance(joint), "phase");
  return best_pairing(joint, r, split_commutator_norm(joint.photon_scale()));
}

double inseparability_xp_closed_form(double v_a, double v_b) { return v_a * v_b; }

double inseparability_split_closed_form(double v_c, double v_d) {
  return 0.25 * (v_c + v_d) * (v_c + v_d);
}

CorrelationSignatures correlation_signatures(const GaussianState& joint) {
  const auto r = xp_readouts(joint);
  return {correlation(joint, r.first[0], r.first[1]), correlation(joint, r.second[0], r.second[1])};
}

}  // namespace spatialent::criteria
