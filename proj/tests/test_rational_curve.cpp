#include <doctest.h>

#include "fatpoints/literals.hpp"
#include "fatpoints/rational_curve.hpp"
#include "independent.hpp"

using namespace fatpoints;

namespace {

const PrimeField F(1000003);

BinaryForm mono(std::int64_t d, std::int64_t j) { return BinaryForm::monomial(F, d, j); }

std::vector<ref::Row> rows_of(const Parametrization& phi) {
  std::vector<ref::Row> out;
  for (const BinaryForm& f : phi.f) out.emplace_back(f.coeffs().begin(), f.coeffs().end());
  return out;
}

// Multiplicities of the constructed curve at its realized points.
std::vector<std::int64_t> realized(const ConstructedCurve& c) {
  std::vector<std::int64_t> out;
  for (const ProjectivePoint& p : c.points) out.push_back(multiplicity_at(c.param, p));
  return out;
}

}  // namespace

TEST_CASE("splitting bounds") {
  const SplittingBounds sextic = splitting_bounds(6, 3);
  CHECK(sextic.determined);
  REQUIRE(sextic.forced);
  CHECK(*sextic.forced == SplittingType{3, 3});
  const SplittingBounds line = splitting_bounds(1, 1);
  CHECK(line.lo == 0);
  CHECK(line.hi == 0);
  CHECK(*line.forced == SplittingType{0, 1});
  const SplittingBounds cubic = splitting_bounds(3, 2);
  CHECK(cubic.determined);
  CHECK(cubic.forced->gap() == 1);
  const SplittingBounds free = splitting_bounds(19, 7);
  CHECK(free.lo == 7);
  CHECK(free.hi == 12);
  CHECK_FALSE(free.determined);
  CHECK_THROWS(splitting_bounds(3, 4));
}

TEST_CASE("splitting type of explicit parametrizations") {
  const Parametrization conic = make_parametrization(mono(2, 0), mono(2, 1), mono(2, 2));
  CHECK(splitting_type(conic) == SplittingType{1, 1});
  const Parametrization cusp = make_parametrization(mono(3, 0), mono(3, 2), mono(3, 3));
  const SplittingScan scan = splitting_scan(cusp);
  CHECK(scan.type == SplittingType{1, 2});
  CHECK(scan.kernel_dims == std::vector<std::int64_t>{0, 1, 3, 5});
  CHECK(ref::splitting(rows_of(cusp)) == std::make_pair(1, 2));
  const Parametrization line = make_parametrization(mono(1, 0), mono(1, 1), mono(1, 0) + mono(1, 1));
  CHECK(splitting_type(line) == SplittingType{0, 1});
}

TEST_CASE("multiplicity at a point") {
  const Parametrization conic = make_parametrization(mono(2, 0), mono(2, 1), mono(2, 2));
  CHECK(multiplicity_at(conic, {1, 0, 0}) == 1);
  CHECK(multiplicity_at(conic, {1, 1, 2}) == 0);
  const Parametrization cusp = make_parametrization(mono(3, 0), mono(3, 2), mono(3, 3));
  CHECK(multiplicity_at(cusp, {1, 0, 0}) == 2);
  CHECK(multiplicity_at(cusp, {1, 1, 1}) == 1);
}

TEST_CASE("lifting lines through the standard quadratic transform") {
  const Projectivity id = Projectivity::Identity();
  const Parametrization general = make_parametrization(mono(1, 0), mono(1, 1), mono(1, 0) + mono(1, 1));
  const Parametrization conic = lift_through_cremona(general, id);
  CHECK(conic.degree() == 2);
  for (const ProjectivePoint& v : {ProjectivePoint{1, 0, 0}, ProjectivePoint{0, 1, 0}, ProjectivePoint{0, 0, 1}})
    CHECK(multiplicity_at(conic, v) == 1);
  CHECK(gcd(std::vector<BinaryForm>(conic.f.begin(), conic.f.end())).degree() == 0);

  const Parametrization through = make_parametrization(mono(1, 0), mono(1, 1), mono(1, 1));
  CHECK(multiplicity_at(through, {1, 0, 0}) == 1);
  const Parametrization back = lift_through_cremona(through, id);
  CHECK(back.degree() == 1);
}

TEST_CASE("Cremona images of points") {
  const Projectivity id = Projectivity::Identity();
  const auto q = cremona_image(id, {2, 3, 5}, F);
  REQUIRE(q);
  // Proportional to (x1 x2, x0 x2, x0 x1) = (15, 10, 6).
  const ProjectivePoint want{15, 10, 6};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(F.mul((*q)[i], want[j]) == F.mul((*q)[j], want[i]));
  CHECK_FALSE(cremona_image(id, {0, 3, 5}, F));
  CHECK_THROWS_AS(frame_projectivity({ProjectivePoint{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, {1, 1, 1}, F),
                  std::invalid_argument);
}

TEST_CASE("construction in a class realizes the multiplicities") {
  for (const char* text : {"2; 1,1,1", "6; 3,2^7", "8; 3^7,1", "3; 2,1^6", "19; 7^7,4,1"}) {
    CAPTURE(text);
    const DivisorClass c = parse_class(text);
    const ConstructedCurve curve = construct_in_class(c, PrimeField(), 11);
    CHECK(curve.param.degree() == c.degree);
    const auto got = realized(curve);
    CHECK(got == std::vector<std::int64_t>(c.mult.data(), c.mult.data() + c.points()));
  }
}

TEST_CASE("generic splitting types of worked classes") {
  const PrimeField P;
  CHECK(generic_splitting_type(parse_class("6; 3,2^7"), P, 5).type == SplittingType{3, 3});
  CHECK(generic_splitting_type(parse_class("8; 3^7,1"), P, 5).type == SplittingType{3, 5});
  const GenericSplitting c19 = generic_splitting_type(parse_class("19; 7^7,4,1"), P, 5);
  CHECK(c19.type == SplittingType{8, 11});
  CHECK(c19.agreement);
  CHECK(generic_splitting_type(parse_class("34; 14^4,12^2,8,2^4"), P, 5).type == SplittingType{14, 20});
}

TEST_CASE("constructed parametrizations agree with the reference syzygy scan") {
  for (const char* text : {"8; 3^7,1", "5; 2^6", "7; 3^4,2^3"}) {
    CAPTURE(text);
    const ConstructedCurve curve = construct_in_class(parse_class(text), F, 3);
    const SplittingType t = splitting_type(curve.param);
    CHECK(ref::splitting(rows_of(curve.param)) == std::make_pair(int(t.a), int(t.b)));
  }
}

TEST_CASE("construction plans") {
  CHECK(plan_construction(parse_class("1; 1,1")));
  const auto stalled = plan_construction(parse_class("4; 3"));
  REQUIRE(stalled);
  CHECK(stalled->extra > 0);
  CHECK(stalled->reduction.terminal.degree <= 2);
  CHECK_FALSE(plan_construction(parse_class("3; 1^9")));
  CHECK_THROWS_AS(construct_in_class(parse_class("3;"), F, 1), ConstructionError);
}
