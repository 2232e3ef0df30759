#include "spatialent/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spatialent/errors.hpp"

namespace spatialent::gaussian {

namespace {

constexpr double kMaxSqueezing = 20.0;

Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

/// Identity on the whole space with a 2x2 block written at one mode.
SymplecticTransform local_transform(const GaussianState& state, int beam, int mode,
                                    const Eigen::Matrix2d& block, std::string label) {
  const auto i = static_cast<Eigen::Index>(state.index(beam, mode, Quad::plus));
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(state.dimension(), state.dimension());
  s.block<2, 2>(i, i) = block;
  return {std::move(s), std::move(label)};
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double SymplecticTransform::symplectic_defect() const {
  if (matrix.rows() != matrix.cols() || matrix.rows() % 2 != 0) return INFINITY;
  const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(matrix.rows() / 2));
  return max_abs(matrix * omega * matrix.transpose() - omega);
}

GaussianState GaussianState::from_moments(int beams, std::shared_ptr<const modes::ModeBasis> basis,
                                          double photon_scale, Eigen::VectorXd mean,
                                          Eigen::MatrixXd cov) {
  if (beams != 1 && beams != 2) throw std::invalid_argument("GaussianState: beams must be 1 or 2");
  if (!basis) throw std::invalid_argument("GaussianState: missing mode basis");
  if (!(photon_scale > 0.0)) throw std::invalid_argument("GaussianState: photon_scale must be > 0");
  const Eigen::Index dim = 2 * beams * basis->size();
  if (mean.size() != dim || cov.rows() != dim || cov.cols() != dim) {
    throw std::invalid_argument("GaussianState: moment dimensions do not match beams x modes");
  }
  if (max_abs(cov - cov.transpose()) > 1e-12 * std::max(1.0, max_abs(cov))) {
    throw std::invalid_argument("GaussianState: covariance is not symmetric");
  }
  if (!is_physical(cov)) {
    throw std::invalid_argument("GaussianState: covariance violates the uncertainty principle");
  }
  return GaussianState(beams, std::move(basis), photon_scale, std::move(mean), std::move(cov));
}

std::size_t GaussianState::index(int beam, int mode, Quad q) const {
  if (beam < 0 || beam >= beams_) throw std::out_of_range("beam index out of range");
  if (mode < 0 || mode >= modes_per_beam()) throw std::out_of_range("mode index out of range");
  return 2 * (static_cast<std::size_t>(beam) * modes_per_beam() + mode) + static_cast<std::size_t>(q);
}

std::complex<double> GaussianState::amplitude(int beam, int mode) const {
  return {0.5 * mean_(index(beam, mode, Quad::plus)), 0.5 * mean_(index(beam, mode, Quad::minus))};
}

GaussianState GaussianState::transformed(const SymplecticTransform& s) const {
  if (s.matrix.rows() != dimension() || s.matrix.cols() != dimension()) {
    throw std::invalid_argument("transform '" + s.label + "' does not match state dimension");
  }
  Eigen::MatrixXd cov = s.matrix * cov_ * s.matrix.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(beams_, basis_, photon_scale_, s.matrix * mean_, std::move(cov));
}

GaussianState vacuum_state(int beams, std::shared_ptr<const modes::ModeBasis> basis,
                           double photon_scale) {
  if (beams != 1 && beams != 2) throw std::invalid_argument("vacuum_state: beams must be 1 or 2");
  if (!basis) throw std::invalid_argument("vacuum_state: missing mode basis");
  if (!(photon_scale > 0.0) || !std::isfinite(photon_scale)) {
    throw std::invalid_argument("vacuum_state: photon_scale must be positive");
  }
  const Eigen::Index dim = 2 * beams * basis->size();
  return GaussianState(beams, std::move(basis), photon_scale, Eigen::VectorXd::Zero(dim),
                       Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState set_coherent(const GaussianState& state, int beam, int mode,
                           std::complex<double> amplitude) {
  GaussianState out = state;
  out.mean_(state.index(beam, mode, Quad::plus)) = 2.0 * amplitude.real();
  out.mean_(state.index(beam, mode, Quad::minus)) = 2.0 * amplitude.imag();
  return out;
}

GaussianState set_coherent_field(const GaussianState& state, int beam,
                                 const modes::ModalCoefficients& field, double photons) {
  if (!field.basis || field.basis->kind() != state.basis().kind() ||
      static_cast<int>(field.coeffs.size()) != state.modes_per_beam()) {
    throw BasisError("set_coherent_field: coefficients are not in the state's basis");
  }
  if (!(photons >= 0.0)) throw std::invalid_argument("set_coherent_field: negative photon number");
  GaussianState out = state;
  const double root = std::sqrt(photons);
  for (int n = 0; n < state.modes_per_beam(); ++n) {
    out = set_coherent(out, beam, n, root * field.coeffs[n]);
  }
  return out;
}

SymplecticTransform squeezer_transform(const GaussianState& state, int beam, int mode, double r,
                                       double angle) {
  if (!(r >= 0.0)) throw std::invalid_argument("apply_squeezer: r must be >= 0");
  if (r > kMaxSqueezing) throw std::invalid_argument("apply_squeezer: r > 20 is not supported");
  const Eigen::Matrix2d rot = rotation(angle);
  const Eigen::Matrix2d block =
      rot * Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal() * rot.transpose();
  return local_transform(state, beam, mode, block, "squeezer");
}

SymplecticTransform phase_shift_transform(const GaussianState& state, int beam, int mode,
                                          double phi) {
  return local_transform(state, beam, mode, rotation(phi), "phase shift");
}

SymplecticTransform beam_splitter_transform(const GaussianState& state) {
  if (state.beams() != 2) throw StateError("50:50 beam splitter needs a two-beam state");
  const int half = state.dimension() / 2;
  const double h = 1.0 / std::numbers::sqrt2;
  Eigen::MatrixXd s(state.dimension(), state.dimension());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(half, half);
  s << h * id, h * id, h * id, -h * id;
  return {std::move(s), "50:50 beam splitter"};
}

SymplecticTransform mode_basis_transform(const GaussianState& state, const Eigen::MatrixXcd& unitary) {
  const int m = state.modes_per_beam();
  if (unitary.rows() != m || unitary.cols() != m) {
    throw std::invalid_argument("change_mode_basis: unitary size does not match the basis");
  }
  const Eigen::MatrixXcd defect = unitary.adjoint() * unitary - Eigen::MatrixXcd::Identity(m, m);
  if (defect.cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("change_mode_basis: matrix is not unitary");
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(state.dimension(), state.dimension());
  for (int b = 0; b < state.beams(); ++b) {
    for (int i = 0; i < m; ++i) {
      const auto row = static_cast<Eigen::Index>(state.index(b, i, Quad::plus));
      for (int j = 0; j < m; ++j) {
        const auto col = static_cast<Eigen::Index>(state.index(b, j, Quad::plus));
        const double re = unitary(i, j).real();
        const double im = unitary(i, j).imag();
        s(row, col) = re;
        s(row, col + 1) = -im;
        s(row + 1, col) = im;
        s(row + 1, col + 1) = re;
      }
    }
  }
  return {std::move(s), "mode basis change"};
}

GaussianState apply_squeezer(const GaussianState& state, int beam, int mode, double r,
                             double angle) {
  if (r == 0.0) {
    state.index(beam, mode, Quad::plus);
    return state;
  }
  return state.transformed(squeezer_transform(state, beam, mode, r, angle));
}

GaussianState apply_phase_shift(const GaussianState& state, int beam, int mode, double phi) {
  return state.transformed(phase_shift_transform(state, beam, mode, phi));
}

GaussianState apply_beam_phase_shift(const GaussianState& state, int beam, double phi) {
  GaussianState out = state;
  for (int n = 0; n < state.modes_per_beam(); ++n) out = apply_phase_shift(out, beam, n, phi);
  return out;
}

GaussianState apply_beam_splitter_5050(const GaussianState& state) {
  return state.transformed(beam_splitter_transform(state));
}

GaussianState change_mode_basis(const GaussianState& state, const Eigen::MatrixXcd& unitary,
                                std::shared_ptr<const modes::ModeBasis> target) {
  GaussianState out = state.transformed(mode_basis_transform(state, unitary));
  if (target) {
    if (target->size() != state.modes_per_beam()) {
      throw BasisError("change_mode_basis: target basis has a different truncation");
    }
    out.basis_ = std::move(target);
  }
  return out;
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s) {
  if (!s.is_symplectic()) throw std::invalid_argument("transform '" + s.label + "' is not symplectic");
  return state.transformed(s);
}

QuadratureStats quadrature_stats(const GaussianState& state, int beam, int mode, double phi) {
  const std::vector<QuadratureTerm> term{{beam, mode, phi, 1.0}};
  return {joint_mean(state, term), joint_variance(state, term)};
}

Eigen::VectorXd observable_vector(const GaussianState& state, const std::vector<QuadratureTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("observable needs at least one quadrature term");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(state.dimension());
  for (const auto& t : terms) {
    w(state.index(t.beam, t.mode, Quad::plus)) += t.weight * std::cos(t.phi);
    w(state.index(t.beam, t.mode, Quad::minus)) += t.weight * std::sin(t.phi);
  }
  return w;
}

double joint_variance(const GaussianState& state, const std::vector<QuadratureTerm>& terms) {
  const Eigen::VectorXd w = observable_vector(state, terms);
  return w.dot(state.cov() * w);
}

double joint_mean(const GaussianState& state, const std::vector<QuadratureTerm>& terms) {
  return observable_vector(state, terms).dot(state.mean());
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const Eigen::Index dim = cov.rows();
  if (dim == 0 || dim % 2 != 0 || cov.cols() != dim) {
    throw std::invalid_argument("symplectic_eigenvalues: covariance must be square of even size");
  }
  // ν_k² are the eigenvalues of Kᵀ K with K = V^{1/2} Ω V^{1/2}, each appearing twice
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root(cov);
  if (root.info() != Eigen::Success || root.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("symplectic_eigenvalues: covariance is not positive definite");
  }
  const Eigen::MatrixXd sqrt_cov = root.operatorSqrt();
  const Eigen::MatrixXd k = sqrt_cov * symplectic_form(static_cast<int>(dim / 2)) * sqrt_cov;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> squares(k.transpose() * k, Eigen::EigenvaluesOnly);
  Eigen::VectorXd nu(dim / 2);
  for (Eigen::Index i = 0; i < dim / 2; ++i) {
    nu(i) = std::sqrt(std::max(0.0, 0.5 * (squares.eigenvalues()(2 * i) + squares.eigenvalues()(2 * i + 1))));
  }
  return nu;
}

bool is_physical(const Eigen::MatrixXd& cov, double tol) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) return false;
  if (max_abs(cov - cov.transpose()) > 1e-12 * std::max(1.0, max_abs(cov))) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) return false;
  return symplectic_eigenvalues(cov).minCoeff() >= 1.0 - tol;
}

}  // namespace spatialent::gaussian
