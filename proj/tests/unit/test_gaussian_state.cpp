#include "doctest.h"

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "spatialent/errors.hpp"
#include "spatialent/gaussian_state.hpp"

using namespace spatialent;
using namespace spatialent::gaussian;
using modes::ModeBasis;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("vacuum has identity covariance and unit symplectic spectrum") {
  const auto s = vacuum_state(2, ModeBasis::hermite_gauss(4, 1.0), 1e6);
  CHECK(s.dimension() == 16);
  CHECK(max_abs(s.cov() - Eigen::MatrixXd::Identity(16, 16)) == 0.0);
  CHECK(s.mean().isZero());
  const auto nu = symplectic_eigenvalues(s.cov());
  CHECK(max_abs(nu - Eigen::VectorXd::Ones(8)) < 1e-12);
  CHECK_THROWS_AS(vacuum_state(3, ModeBasis::hermite_gauss(4, 1.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(vacuum_state(1, ModeBasis::hermite_gauss(4, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("quadrature ordering is beam, mode, (X+, X-)") {
  const auto s = vacuum_state(2, ModeBasis::hermite_gauss(3, 1.0), 1.0);
  CHECK(s.index(0, 0, Quad::plus) == 0);
  CHECK(s.index(0, 0, Quad::minus) == 1);
  CHECK(s.index(0, 2, Quad::plus) == 4);
  CHECK(s.index(1, 0, Quad::plus) == 6);
  CHECK(s.index(1, 2, Quad::minus) == 11);
  CHECK_THROWS_AS(s.index(2, 0, Quad::plus), std::out_of_range);
  CHECK_THROWS_AS(s.index(0, 3, Quad::plus), std::out_of_range);
}

TEST_CASE("coherent amplitude sets the mean to (2 Re a, 2 Im a)") {
  auto s = vacuum_state(1, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  s = set_coherent(s, 0, 1, {3.0, -0.5});
  CHECK(s.mean()(2) == 6.0);
  CHECK(s.mean()(3) == -1.0);
  CHECK(s.amplitude(0, 1) == std::complex<double>(3.0, -0.5));
}

TEST_CASE("squeezer matches the 2x2 oracle and is symplectic") {
  const auto s0 = vacuum_state(1, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  for (double r : {0.1, 0.7, 2.0}) {
    for (double theta : {0.0, 0.4, kPi / 2}) {
      const auto t = squeezer_transform(s0, 0, 1, r, theta);
      CHECK(t.is_symplectic());
      const auto s = apply_squeezer(s0, 0, 1, r, theta);
      const auto o = oracle::squeezed_cov(r, theta);
      CHECK(s.cov()(2, 2) == doctest::Approx(o.xx).epsilon(1e-12));
      CHECK(s.cov()(2, 3) == doctest::Approx(o.xp).epsilon(1e-12));
      CHECK(s.cov()(3, 3) == doctest::Approx(o.pp).epsilon(1e-12));
      CHECK(max_abs(symplectic_eigenvalues(s.cov()) - Eigen::VectorXd::Ones(2)) < 1e-9);
      CHECK(quadrature_stats(s, 0, 1, theta).variance == doctest::Approx(std::exp(-2 * r)));
    }
  }
  CHECK_THROWS_AS(apply_squeezer(s0, 0, 1, -0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_squeezer(s0, 0, 1, 20.5, 0.0), std::invalid_argument);
  CHECK(max_abs(apply_squeezer(s0, 0, 1, 0.0, 1.0).cov() - s0.cov()) == 0.0);
}

TEST_CASE("phase shift rotates the amplitude") {
  auto s = vacuum_state(1, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  s = set_coherent(s, 0, 0, 1.0);
  s = apply_phase_shift(s, 0, 0, kPi / 2);
  CHECK(std::abs(s.amplitude(0, 0) - std::complex<double>(0, 1)) < 1e-15);
  CHECK(phase_shift_transform(s, 0, 0, 0.3).is_symplectic());
}

TEST_CASE("50:50 beam splitter mixes beams mode by mode") {
  auto s = vacuum_state(2, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  s = set_coherent(s, 0, 0, 2.0);
  s = apply_squeezer(s, 1, 1, 0.5, 0.0);
  const auto t = beam_splitter_transform(s);
  CHECK(t.is_symplectic());
  const auto out = apply_beam_splitter_5050(s);
  CHECK(std::abs(out.amplitude(0, 0) - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(out.amplitude(1, 0) - std::sqrt(2.0)) < 1e-14);
  // mode 1 X+: both outputs see (1 + e^{-1})/2, correlated by (1 - e^{-1})/2
  const double a = 0.5 * (1.0 + std::exp(-1.0));
  CHECK(out.cov()(2, 2) == doctest::Approx(a));
  CHECK(out.cov()(6, 6) == doctest::Approx(a));
  CHECK(out.cov()(2, 6) == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))));
  CHECK(is_physical(out.cov()));

  const auto single = vacuum_state(1, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  CHECK_THROWS_AS(apply_beam_splitter_5050(single), StateError);
}

TEST_CASE("mode-basis change preserves purity and checks unitarity") {
  auto s = vacuum_state(1, ModeBasis::hermite_gauss(3, 1.0), 1.0);
  s = apply_squeezer(s, 0, 1, 0.8, 0.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(3, 3);
  const double h = 1.0 / std::sqrt(2.0);
  u(0, 0) = 1.0;
  u(1, 1) = h;
  u(1, 2) = std::complex<double>(0, h);
  u(2, 1) = std::complex<double>(0, h);
  u(2, 2) = h;
  CHECK(mode_basis_transform(s, u).is_symplectic());
  const auto out = change_mode_basis(s, u);
  CHECK(max_abs(symplectic_eigenvalues(out.cov()) - Eigen::VectorXd::Ones(3)) < 1e-9);

  Eigen::MatrixXcd bad = u;
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(change_mode_basis(s, bad), std::invalid_argument);
  CHECK_THROWS_AS(change_mode_basis(s, u, ModeBasis::hermite_gauss(4, 1.0)), BasisError);
}

TEST_CASE("physicality: sub-vacuum product is rejected") {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2, 2);
  cov(0, 0) = 0.5;
  cov(1, 1) = 1.5;
  CHECK_FALSE(is_physical(cov));
  cov(1, 1) = 2.0;
  CHECK(is_physical(cov));
  CHECK(symplectic_eigenvalues(cov)(0) == doctest::Approx(1.0));

  const auto basis = ModeBasis::hermite_gauss(2, 1.0);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(4, 4);
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(GaussianState::from_moments(1, basis, 1.0, Eigen::VectorXd::Zero(4), bad),
                  std::invalid_argument);
  Eigen::MatrixXd thermal = 3.0 * Eigen::MatrixXd::Identity(4, 4);
  const auto s = GaussianState::from_moments(1, basis, 1.0, Eigen::VectorXd::Zero(4), thermal);
  CHECK(symplectic_eigenvalues(s.cov())(0) == doctest::Approx(3.0));
}

TEST_CASE("apply_symplectic rejects non-symplectic matrices") {
  const auto s = vacuum_state(1, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  SymplecticTransform t{2.0 * Eigen::MatrixXd::Identity(4, 4), "gain"};
  CHECK_FALSE(t.is_symplectic());
  CHECK_THROWS_AS(apply_symplectic(s, t), std::invalid_argument);
}

TEST_CASE("joint variance of a combined observable") {
  auto s = vacuum_state(2, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  s = apply_squeezer(s, 0, 1, 0.5, 0.0);
  s = apply_squeezer(s, 1, 1, 0.5, kPi / 2);
  s = apply_beam_splitter_5050(s);
  // X3 + X4 recovers sqrt(2) X_a: variance 2 e^{-1}
  const double v = joint_variance(s, {{0, 1, 0.0, 1.0}, {1, 1, 0.0, 1.0}});
  CHECK(v == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("coherent amplitudes: zero leaves the state alone, i sqrt(N) lands on X-") {
  const auto s = vacuum_state(1, ModeBasis::hermite_gauss(4, 1.0), 1e6);
  CHECK(set_coherent(s, 0, 0, 0.0).mean() == s.mean());
  const auto q = set_coherent(s, 0, 0, {0.0, 1e3});
  CHECK(q.mean()(0) == 0.0);
  CHECK(q.mean()(1) == 2e3);
  const auto stats = quadrature_stats(set_coherent(s, 0, 0, 1e3), 0, 0, 0.0);
  CHECK(stats.mean == 2e3);
  CHECK(stats.variance == 1.0);
}

TEST_CASE("determinant and symplectic spectrum are preserved by unitary operations") {
  auto s = vacuum_state(2, ModeBasis::hermite_gauss(3, 1.0), 1.0);
  const double det0 = s.cov().determinant();
  s = apply_squeezer(s, 0, 1, 0.5, 0.2);
  CHECK(s.cov().determinant() == doctest::Approx(det0).epsilon(1e-12));
  s = apply_phase_shift(s, 0, 1, 0.7);
  s = apply_beam_splitter_5050(s);
  CHECK(s.cov().determinant() == doctest::Approx(det0).epsilon(1e-12));
  const Eigen::VectorXd nu = symplectic_eigenvalues(s.cov());
  const auto u = modes::farfield_unitary(3);
  CHECK(max_abs(symplectic_eigenvalues(change_mode_basis(s, u).cov()) - nu) < 1e-9);
  CHECK(max_abs(change_mode_basis(s, Eigen::MatrixXcd::Identity(3, 3)).cov() - s.cov()) < 1e-15);
}

TEST_CASE("phase shift: pi/2 swaps squeezed variances, 2 pi is the identity") {
  auto s = vacuum_state(1, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  s = apply_squeezer(s, 0, 1, 0.5, 0.0);
  const auto q = apply_phase_shift(s, 0, 1, kPi / 2);
  CHECK(q.cov()(2, 2) == doctest::Approx(std::exp(1.0)));
  CHECK(q.cov()(3, 3) == doctest::Approx(std::exp(-1.0)));
  CHECK(max_abs(apply_phase_shift(s, 0, 1, 2 * kPi).cov() - s.cov()) < 1e-12);
  CHECK(max_abs(apply_phase_shift(s, 0, 1, 0.0).cov() - s.cov()) == 0.0);
}

TEST_CASE("beam splitter: vacua stay vacua, squeezed + vacuum averages, S^4 = I") {
  auto s = vacuum_state(2, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  CHECK(max_abs(apply_beam_splitter_5050(s).cov() - s.cov()) < 1e-15);
  s = apply_squeezer(s, 0, 1, 0.5, 0.0);
  const auto out = apply_beam_splitter_5050(s);
  const double vs = std::exp(-1.0);
  CHECK(quadrature_stats(out, 0, 1, 0.0).variance == doctest::Approx((vs + 1) / 2).epsilon(1e-12));
  CHECK(quadrature_stats(out, 1, 1, 0.0).variance == doctest::Approx((vs + 1) / 2).epsilon(1e-12));
  const Eigen::MatrixXd b = beam_splitter_transform(s).matrix;
  CHECK(max_abs(b * b * b * b - Eigen::MatrixXd::Identity(8, 8)) < 1e-12);
}

TEST_CASE("joint variance of split vacua and of strongly correlated outputs") {
  auto s = vacuum_state(2, ModeBasis::hermite_gauss(2, 1.0), 1.0);
  const auto v = apply_beam_splitter_5050(s);
  CHECK(joint_variance(v, {{0, 1, 0.0, 1.0}, {1, 1, 0.0, 1.0}}) == doctest::Approx(2.0));
  CHECK(joint_variance(v, {{0, 1, 0.3, 1.0}}) == quadrature_stats(v, 0, 1, 0.3).variance);

  // r = 10: X3 - X4 = sqrt(2) X_b+ is pinned at the e^{-2r} bound (2 e^{-20} ~ 4e-9)
  constexpr double r = 10.0;
  s = apply_squeezer(s, 0, 1, r, 0.0);
  s = apply_squeezer(s, 1, 1, r, 0.0);
  s = apply_beam_splitter_5050(s);
  const double diff = joint_variance(s, {{0, 1, 0.0, 1.0}, {1, 1, 0.0, -1.0}});
  CHECK(diff == doctest::Approx(2.0 * std::exp(-2 * r)).epsilon(1e-6));
  CHECK(diff < 1e-8);
}
