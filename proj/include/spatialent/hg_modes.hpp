#pragma once

// Transverse-mode mathematics: Hermite-Gauss profiles, overlaps, modal decompositions of
// displaced / tilted / flipped beams and the far-field Gouy map.
//
// Waist convention: u_0(x) = (2/(pi w0^2))^{1/4} exp(-x^2/w0^2), so a small displacement d
// puts amplitude d/w0 into u_1 and a small tilt p puts i*w0*p/2 there.

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "spatialent/quadrature.hpp"

namespace spatialent::modes {

using cplx = std::complex<double>;

/// @brief Normalized Hermite-Gauss amplitude u_order(x) for waist w0.
/// @throws std::invalid_argument for order < 0 or waist <= 0
double hg_eval(int order, double x, double waist);

/// @brief Tabulated profile on a split-at-origin Gauss-Legendre grid.
struct SampledData {
  std::shared_ptr<const quad::PanelGrid> grid;
  std::vector<cplx> values;  // one per grid node
};

/// @brief One transverse amplitude function.
class ModeProfile {
 public:
  enum class Kind { HermiteGauss, Flipped, Sampled };

  static ModeProfile hermite_gauss(int order, double waist);
  /// sign(x) * u_0(x): the mode a split detector interrogates
  static ModeProfile flipped(double waist);
  static ModeProfile sampled(double waist, std::shared_ptr<const SampledData> data);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  double waist() const { return waist_; }
  const SampledData* samples() const { return samples_.get(); }

  cplx operator()(double x) const;

 private:
  ModeProfile(Kind kind, int order, double waist, std::shared_ptr<const SampledData> samples)
      : kind_(kind), order_(order), waist_(waist), samples_(std::move(samples)) {}

  Kind kind_;
  int order_;
  double waist_;
  std::shared_ptr<const SampledData> samples_;
};

/// @brief <f|g> = ∫ conj(f(x)) g(x) dx.
///
/// Two Hermite-Gauss profiles use the 64-node Gauss-Hermite rule. A tabulated profile
/// brings its own grid. Otherwise (flipped mode involved) the integral is split at x = 0
/// and each half done with adaptive Gauss-Kronrod.
/// @throws std::invalid_argument when the waists differ
cplx overlap(const ModeProfile& f, const ModeProfile& g);

/// @brief Ordered, orthonormal, truncated set of profiles sharing one waist.
class ModeBasis {
 public:
  enum class Kind { HermiteGauss, Flipped };

  /// u_0 ... u_{M-1}
  static std::shared_ptr<const ModeBasis> hermite_gauss(int truncation, double waist);
  /// v_0 = u_0, v_1 = flipped mode, v_2.. completed by Gram-Schmidt over u_1, u_2, ...
  static std::shared_ptr<const ModeBasis> flipped(int truncation, double waist);

  Kind kind() const { return kind_; }
  double waist() const { return waist_; }
  int size() const { return static_cast<int>(profiles_.size()); }
  const ModeProfile& profile(int n) const { return profiles_.at(n); }
  const std::vector<ModeProfile>& profiles() const { return profiles_; }

  Eigen::MatrixXcd gram_matrix() const;

 private:
  ModeBasis(Kind kind, double waist, std::vector<ModeProfile> profiles)
      : kind_(kind), waist_(waist), profiles_(std::move(profiles)) {}

  Kind kind_;
  double waist_;
  std::vector<ModeProfile> profiles_;
};

/// @brief Expansion of a unit-norm transverse field in a ModeBasis.
struct ModalCoefficients {
  std::shared_ptr<const ModeBasis> basis;
  std::vector<cplx> coeffs;
  double residual_norm = 0.0;  ///< L2 weight outside the truncated basis

  double norm_sq() const;
};

/// Projection of an arbitrary profile onto `basis`; residual from 1 - sum |c_n|^2.
ModalCoefficients decompose(const ModeProfile& field, std::shared_ptr<const ModeBasis> basis);

/// Unit coefficient on one basis mode (e.g. a TEM10 local oscillator).
ModalCoefficients basis_mode(std::shared_ptr<const ModeBasis> basis, int n);

/// Coefficients of u_0(x - d).
ModalCoefficients decompose_displaced_tem00(double displacement,
                                            std::shared_ptr<const ModeBasis> basis);

/// Coefficients of exp(i p x) u_0(x) (small-angle tilt about the waist).
ModalCoefficients decompose_tilted_tem00(double momentum, std::shared_ptr<const ModeBasis> basis);

/// Coefficients of exp(i p x) u_0(x - d): displaced and tilted together.
ModalCoefficients decompose_shifted_tem00(double displacement, double momentum,
                                          std::shared_ptr<const ModeBasis> basis);

/// Hermite-Gauss coefficients of sign(x) u_0(x). Even orders are exactly zero.
ModalCoefficients flipped_mode_coeffs(std::shared_ptr<const ModeBasis> basis);

/// Gouy factor i^n per mode order: near field to far field.
ModalCoefficients farfield(const ModalCoefficients& near);

/// diag(i^n), the far-field map as a mode-basis unitary.
Eigen::MatrixXcd farfield_unitary(int truncation);

}  // namespace spatialent::modes
