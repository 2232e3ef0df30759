#include "doctest.h"

#include <cmath>
#include <numbers>

#include "spatialent/criteria.hpp"
#include "spatialent/errors.hpp"

using namespace spatialent;
using namespace spatialent::criteria;
using modes::ModeBasis;

namespace {

constexpr double kPi = std::numbers::pi;

/// Two bright beams with squeezed TEM10 / flipped slots, pi/2 on beam 2, then the splitter.
gaussian::GaussianState entangled_pair(std::shared_ptr<const ModeBasis> basis, double n, double ra,
                                       double rb) {
  auto s = gaussian::vacuum_state(2, basis, n);
  s = gaussian::set_coherent(s, 0, 0, std::sqrt(n));
  s = gaussian::set_coherent(s, 1, 0, std::sqrt(n));
  s = gaussian::apply_squeezer(s, 0, 1, ra, 0.0);
  s = gaussian::apply_squeezer(s, 1, 1, rb, 0.0);
  s = gaussian::apply_beam_phase_shift(s, 1, kPi / 2);
  return gaussian::apply_beam_splitter_5050(s);
}

}  // namespace

TEST_CASE("commutator norms and the uncertainty floor") {
  CHECK(xp_commutator_norm(1e3) == 1e-3);
  CHECK(split_commutator_norm(1e3) == 2e3);
  CHECK(heisenberg_floor(10.0) == doctest::Approx(1.0 / 400.0));
  CHECK_THROWS_AS(xp_commutator_norm(0.0), std::invalid_argument);
}

TEST_CASE("coherent and squeezed pure beams are minimum-uncertainty") {
  const auto basis = ModeBasis::hermite_gauss(6, 1.0);
  auto s = gaussian::vacuum_state(1, basis, 1e4);
  s = gaussian::set_coherent(s, 0, 0, 100.0);
  CHECK(normalized_heisenberg_product(s, 0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double r : {0.3, 1.0, 3.0}) {
    const auto sq = gaussian::apply_squeezer(s, 0, 1, r, 0.0);
    CHECK(normalized_heisenberg_product(sq, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // off-axis squeezing leaves a correlated, non-minimal x-p product
  CHECK(normalized_heisenberg_product(gaussian::apply_squeezer(s, 0, 1, 1.0, 0.4), 0) > 1.5);
}

TEST_CASE("product form") {
  const auto r = product_form(0.5, 2.0, 0.5, Pairing::diff_first_sum_second);
  CHECK(r.value == doctest::Approx(4.0));
  CHECK_FALSE(r.entangled);
  CHECK(r.pairing == Pairing::diff_first_sum_second);
  CHECK(product_form(0.1, 0.1, 1.0, Pairing::sum_first_diff_second).entangled);
}

TEST_CASE("x-p inseparability follows V_a V_b") {
  const auto basis = ModeBasis::hermite_gauss(8, 1.3);
  for (double r : {0.0, 0.25, 1.0}) {
    const auto res = inseparability_xp(entangled_pair(basis, 1e6, r, r));
    CHECK(res.value == doctest::Approx(std::exp(-4 * r)).epsilon(1e-10));
    CHECK(res.entangled == (r > 0));
  }
  const auto asym = inseparability_xp(entangled_pair(basis, 1e6, 0.2, 0.9));
  CHECK(asym.value == doctest::Approx(std::exp(-2 * 0.2) * std::exp(-2 * 0.9)).epsilon(1e-10));
  CHECK(inseparability_xp_closed_form(0.5, 0.25) == 0.125);

  const auto single = gaussian::vacuum_state(1, basis, 1.0);
  CHECK_THROWS_AS(inseparability_xp(single), StateError);
}

TEST_CASE("x-p criterion refuses asymmetric outputs") {
  const auto basis = ModeBasis::hermite_gauss(4, 1.0);
  auto s = gaussian::vacuum_state(2, basis, 1e6);
  s = gaussian::apply_squeezer(s, 0, 1, 1.0, 0.0);  // no splitter: outputs differ
  CHECK_THROWS_AS(inseparability_xp(s), StateError);
}

TEST_CASE("correlation signatures") {
  const auto basis = ModeBasis::hermite_gauss(4, 1.0);
  const auto c = correlation_signatures(entangled_pair(basis, 1e6, 1.0, 1.0));
  CHECK(c.corr_x == doctest::Approx(-std::tanh(2.0)).epsilon(1e-10));
  CHECK(c.corr_p == doctest::Approx(std::tanh(2.0)).epsilon(1e-10));
  const auto none = correlation_signatures(entangled_pair(basis, 1e6, 0.0, 0.0));
  CHECK(std::abs(none.corr_x) < 1e-12);
}

TEST_CASE("split inseparability follows (V_c + V_d)^2 / 4") {
  const auto basis = ModeBasis::flipped(6, 1.0);
  const double half = 0.5 * std::log(2.0);  // e^{-2r} = 0.5
  CHECK(inseparability_split(entangled_pair(basis, 1e6, 0.0, 0.0)).value ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(inseparability_split(entangled_pair(basis, 1e6, half, half)).value ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(inseparability_split(entangled_pair(basis, 1e6, half, 0.0)).value ==
        doctest::Approx(0.5625).epsilon(1e-10));
  CHECK(inseparability_split_closed_form(0.5, 1.0) == 0.5625);

  const auto hg = ModeBasis::hermite_gauss(4, 1.0);
  CHECK_THROWS_AS(inseparability_split(entangled_pair(hg, 1e6, 0.0, 0.0)), BasisError);
}

TEST_CASE("closed form and propagation agree for r in [0, 5]; I decreases monotonically") {
  const auto basis = ModeBasis::hermite_gauss(4, 1.0);
  double previous = 2.0;
  for (int k = 0; k <= 20; ++k) {
    const double r = 0.25 * k;
    const double v = inseparability_xp(entangled_pair(basis, 1e6, r, r)).value;
    CHECK(std::abs(v - inseparability_xp_closed_form(std::exp(-2 * r), std::exp(-2 * r))) < 1e-10);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("swapping the input beams leaves I unchanged") {
  const auto hg = ModeBasis::hermite_gauss(4, 1.0);
  const auto fl = ModeBasis::flipped(4, 1.0);
  CHECK(inseparability_xp(entangled_pair(hg, 1e6, 0.2, 0.8)).value ==
        doctest::Approx(inseparability_xp(entangled_pair(hg, 1e6, 0.8, 0.2)).value).epsilon(1e-12));
  CHECK(inseparability_split(entangled_pair(fl, 1e6, 0.2, 0.8)).value ==
        doctest::Approx(inseparability_split(entangled_pair(fl, 1e6, 0.8, 0.2)).value).epsilon(1e-12));
}

TEST_CASE("denominators scale with N so that I does not") {
  const auto basis = ModeBasis::hermite_gauss(4, 1.0);
  const auto a = inseparability_xp(entangled_pair(basis, 1e4, 0.5, 0.5));
  const auto b = inseparability_xp(entangled_pair(basis, 1e6, 0.5, 0.5));
  CHECK(a.commutator_norm_sq == doctest::Approx(1e-8));
  CHECK(b.commutator_norm_sq == doctest::Approx(1e-12));
  CHECK(std::abs(a.value - b.value) < 1e-12);
  const auto fl = ModeBasis::flipped(4, 1.0);
  CHECK(inseparability_split(entangled_pair(fl, 1e6, 0.5, 0.5)).commutator_norm_sq == doctest::Approx(4e12));
}
