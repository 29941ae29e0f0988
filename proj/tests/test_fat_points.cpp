#include <doctest.h>

#include "fatpoints/fat_points.hpp"
#include "fatpoints/literals.hpp"

using namespace fatpoints;

namespace {
FatPointScheme Z(const char* s) { return parse_scheme(s); }
DivisorClass cls(const char* s) { return parse_class(s); }
}  // namespace

TEST_CASE("length") {
  CHECK(length(Z("3,2,1,1")) == 11);
  CHECK(length(Z("9^7")) == 315);
  CHECK(length(Z("")) == 0);
  CHECK(length(Z("60^8")) == 14640);
}

TEST_CASE("SHGH prediction") {
  CHECK(shgh_hilbert(Z("3,2,1,1"), 4) == 4);
  CHECK(shgh_hilbert(Z("4,3,3,3,2"), 8) == 14);
  CHECK(shgh_hilbert(Z("60^8"), 170) == 66);
  CHECK(shgh_hilbert(Z("3,2,1,1"), 3) == 0);
  CHECK_THROWS_AS(shgh_hilbert(Z(""), -1), std::invalid_argument);
  CHECK(h1_from_h0(Z("3,3,3"), 4, 0) == 3);
}

TEST_CASE("expected cokernel of mu") {
  auto e = exp_cok_mu(Z("3,2,1,1"), 4);
  CHECK(e.dim == 0);
  CHECK(e.exp_onto);
  CHECK_FALSE(e.exp_inj);
  e = exp_cok_mu(Z("3,3,3"), 5);
  CHECK(e.dim == 1);
  CHECK(e.exp_inj);
  CHECK_FALSE(e.exp_onto);
  CHECK(exp_cok_mu(Z("9^7"), 24).dim == 6);
  CHECK(exp_cok_mu(Z("60^8"), 170).dim == 40);
  // 2 l = 2 * 12 = 24 = 4 * 6: both flags.
  e = exp_cok_mu(Z("2^4"), 4);
  CHECK(e.exp_onto);
  CHECK(e.exp_inj);
}

TEST_CASE("intersection length and pairing") {
  CHECK(intersection_length(Z("3,2,1,1"), cls("1; 1,1,0,0")) == 5);
  CHECK(intersection_length(Z("4,3,3,3,2"), cls("2; 1^5")) == 15);
  CHECK(intersection_length(Z("5"), cls("6; 5")) == 15);
  CHECK(intersection_length(Z("5"), cls("9; 8")) == 15);
  CHECK(strict_transform_pairing(Z("4^7,1"), cls("8; 3^7,1")) == 85);
  CHECK(strict_transform_pairing(Z("11^7,5,2"), cls("19; 7^7,4,1")) == 561);
  CHECK(strict_transform_pairing(Z(""), cls("3;")) == 0);
  CHECK_THROWS_AS(strict_transform_pairing(Z("1,1"), cls("1; 1")), std::invalid_argument);
}

TEST_CASE("residual schemes") {
  const DivisorClass sextic = cls("6; 3,2^7");
  const ResidualScheme r = residual(Z("60^8"), sextic, 1);
  CHECK(r.scheme == Z("57,58^7"));
  CHECK_FALSE(r.clamped);
  CHECK(residual(Z("60^8"), sextic, 0).scheme == Z("60^8"));
  CHECK(residual(Z("3,2,1,1"), cls("1; 1,1,0,0"), 1).scheme == Z("2,1,1,1"));
  const ResidualScheme c = residual(Z("3,2,1,1"), cls("1; 1,1,0,0"), 3);
  CHECK(c.scheme == Z("0,0,1,1"));
  CHECK(c.clamped);
}

TEST_CASE("predicted alpha and tau") {
  CHECK(predicted_alpha(Z("3,2,1,1")) == 4);
  CHECK(predicted_tau(Z("3,2,1,1")) == 4);
  CHECK(predicted_alpha(Z("60^8")) == 170);
  CHECK(predicted_tau(Z("60^8")) == 170);
  // l = 10 = C(5,2): h^0 vanishes in degree 3, so alpha = 4 while tau = 3.
  CHECK(predicted_alpha(Z("4")) == 4);
  CHECK(predicted_tau(Z("4")) == 3);
  CHECK(predicted_alpha(Z("")) == 0);
}

TEST_CASE("quasi-uniform and linear systems") {
  CHECK(is_quasi_uniform(Z("2^9")));
  CHECK(is_quasi_uniform(Z("1,3^9")));
  CHECK_FALSE(is_quasi_uniform(Z("3^8,2")));
  CHECK_FALSE(is_quasi_uniform(Z("9^7")));
  CHECK(linear_system_class(Z("3,2"), 5) == cls("5; 3,2"));
  CHECK_THROWS_AS(FatPointScheme({1, -1}), std::invalid_argument);
}
