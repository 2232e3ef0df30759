#pragma once

// Gaussian states over a truncated transverse-mode basis.
//
// Quadratures are ordered beam-major, then mode, then (X+, X-). Vacuum has unit variance in
// every quadrature and [X+, X-] = 2i, so the symplectic form pairs (X+, X-) per mode and a
// coherent amplitude alpha gives mean (2 Re alpha, 2 Im alpha). The photon number N is a pure
// readout scale: covariance matrices never depend on it.

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spatialent/hg_modes.hpp"

namespace spatialent::gaussian {

enum class Quad { plus = 0, minus = 1 };

/// @brief Linear quadrature map together with a human-readable label.
struct SymplecticTransform {
  Eigen::MatrixXd matrix;
  std::string label;

  /// Max-norm of S Ω Sᵀ - Ω.
  double symplectic_defect() const;
  bool is_symplectic(double tol = 1e-10) const { return symplectic_defect() <= tol; }
};

/// Block-diagonal symplectic form for `modes` (X+, X-) pairs.
Eigen::MatrixXd symplectic_form(int modes);

/// @brief Immutable quadrature mean vector + covariance matrix for one or two beams.
class GaussianState {
 public:
  /// Validated construction from raw moments.
  /// @throws std::invalid_argument on shape mismatch, asymmetric or unphysical covariance
  static GaussianState from_moments(int beams, std::shared_ptr<const modes::ModeBasis> basis,
                                    double photon_scale, Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int beams() const { return beams_; }
  int modes_per_beam() const { return basis_->size(); }
  int dimension() const { return 2 * beams_ * modes_per_beam(); }
  double photon_scale() const { return photon_scale_; }
  const modes::ModeBasis& basis() const { return *basis_; }
  const std::shared_ptr<const modes::ModeBasis>& basis_ptr() const { return basis_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  /// @throws std::out_of_range for a bad beam or mode
  std::size_t index(int beam, int mode, Quad q) const;

  /// Mean coherent amplitude <a> of one mode.
  std::complex<double> amplitude(int beam, int mode) const;

  /// S applied to mean and cov. The transform must match the state's dimension.
  GaussianState transformed(const SymplecticTransform& s) const;

 private:
  GaussianState(int beams, std::shared_ptr<const modes::ModeBasis> basis, double photon_scale,
                Eigen::VectorXd mean, Eigen::MatrixXd cov)
      : beams_(beams), basis_(std::move(basis)), photon_scale_(photon_scale),
        mean_(std::move(mean)), cov_(std::move(cov)) {}

  friend GaussianState vacuum_state(int, std::shared_ptr<const modes::ModeBasis>, double);
  friend GaussianState set_coherent(const GaussianState&, int, int, std::complex<double>);
  friend GaussianState change_mode_basis(const GaussianState&, const Eigen::MatrixXcd&,
                                         std::shared_ptr<const modes::ModeBasis>);

  int beams_;
  std::shared_ptr<const modes::ModeBasis> basis_;
  double photon_scale_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Vacuum in every mode of `beams` beams.
/// @throws std::invalid_argument for beams not in {1, 2} or photon_scale <= 0
GaussianState vacuum_state(int beams, std::shared_ptr<const modes::ModeBasis> basis,
                           double photon_scale);

/// Sets the coherent amplitude of one mode; covariance unchanged.
GaussianState set_coherent(const GaussianState& state, int beam, int mode,
                           std::complex<double> amplitude);

/// Coherent field sqrt(photons) * sum_n c_n v_n on one beam (modes beyond the truncation are
/// dropped, their weight is `field.residual_norm`).
GaussianState set_coherent_field(const GaussianState& state, int beam,
                                 const modes::ModalCoefficients& field, double photons);

/// @brief Squeezes X_angle by e^{-r} and the orthogonal quadrature by e^{r}.
/// @throws std::invalid_argument for r < 0 or r > 20
GaussianState apply_squeezer(const GaussianState& state, int beam, int mode, double r,
                             double angle);

/// a -> a e^{i phi} on one mode; phi = pi/2 moves X+ statistics into X-.
GaussianState apply_phase_shift(const GaussianState& state, int beam, int mode, double phi);

/// Same phase on every mode of one beam.
GaussianState apply_beam_phase_shift(const GaussianState& state, int beam, double phi);

/// @brief Lossless 50:50 splitter pairing same-index modes: out0 = (in0 + in1)/sqrt2,
/// out1 = (in0 - in1)/sqrt2 for every quadrature.
/// @throws StateError for single-beam states
GaussianState apply_beam_splitter_5050(const GaussianState& state);

/// @brief a'_m = sum_n U_mn a_n on every beam.
///
/// `target` relabels the basis the result is expressed in; nullptr keeps the current one.
/// @throws std::invalid_argument if U is not unitary within 1e-10 or has the wrong size
GaussianState change_mode_basis(const GaussianState& state, const Eigen::MatrixXcd& unitary,
                                std::shared_ptr<const modes::ModeBasis> target = nullptr);

/// Generic symplectic transform. @throws std::invalid_argument if S is not symplectic
GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s);

// Transform builders (exposed so callers can inspect / compose them).
SymplecticTransform squeezer_transform(const GaussianState& state, int beam, int mode, double r,
                                       double angle);
SymplecticTransform phase_shift_transform(const GaussianState& state, int beam, int mode,
                                          double phi);
SymplecticTransform beam_splitter_transform(const GaussianState& state);
SymplecticTransform mode_basis_transform(const GaussianState& state, const Eigen::MatrixXcd& unitary);

struct QuadratureStats {
  double mean;
  double variance;
};

/// Statistics of X_phi = X+ cos(phi) + X- sin(phi).
QuadratureStats quadrature_stats(const GaussianState& state, int beam, int mode, double phi);

/// One contribution weight * X_phi(beam, mode) to a linear observable.
struct QuadratureTerm {
  int beam;
  int mode;
  double phi;
  double weight;
};

/// Coefficient vector over the state's quadratures for sum(weight * X_phi).
Eigen::VectorXd observable_vector(const GaussianState& state, const std::vector<QuadratureTerm>& terms);

/// Variance of sum(weight * X_phi). @throws std::invalid_argument for an empty list
double joint_variance(const GaussianState& state, const std::vector<QuadratureTerm>& terms);
double joint_mean(const GaussianState& state, const std::vector<QuadratureTerm>& terms);

/// Symplectic eigenvalues (one per mode, ascending).
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Symmetric, positive definite and every symplectic eigenvalue >= 1 - tol.
bool is_physical(const Eigen::MatrixXd& cov, double tol = 1e-9);

}  // namespace spatialent::gaussian
