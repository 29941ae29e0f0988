#include <doctest.h>

#include "fatpoints/divisor.hpp"
#include "fatpoints/literals.hpp"

using namespace fatpoints;

namespace {
DivisorClass cls(const char* s) { return parse_class(s); }
}  // namespace

TEST_CASE("intersection pairing") {
  CHECK(intersect(DivisorClass(1, {}), DivisorClass(1, {})) == 1);
  CHECK(self_intersection(cls("8; 3^7,1")) == 0);
  CHECK(self_intersection(cls("34; 14^4,12^2,8,2^4")) == 4);
  CHECK(intersect(cls("1; 1,1,0"), cls("1; 1,0,1")) == 0);
  CHECK_THROWS_AS(intersect(cls("1; 1"), cls("1; 1,1")), std::invalid_argument);
}

TEST_CASE("canonical class") {
  const DivisorClass k0 = canonical_class(0);
  CHECK(k0.degree == -3);
  CHECK(k0.points() == 0);
  CHECK(intersect(canonical_class(9), cls("3; 1^9")) == 0);
  const DivisorClass octic = cls("8; 3^7,1");
  const auto kc = intersect(canonical_class(8), octic);
  CHECK(kc == -2);
  CHECK(2 * arithmetic_genus(octic) - 2 == self_intersection(octic) + kc);
}

TEST_CASE("arithmetic genus") {
  CHECK(arithmetic_genus(cls("1; 1,1")) == 0);
  CHECK(arithmetic_genus(cls("19; 7^7,4,1")) == 0);
  CHECK(arithmetic_genus(cls("6; 3,2^7")) == 0);
  CHECK(arithmetic_genus(cls("3;")) == 1);
  CHECK(arithmetic_genus(cls("4; 2")) == 2);
}

TEST_CASE("exceptional classes") {
  CHECK(is_exceptional(cls("1; 1,1")));
  CHECK(is_exceptional(cls("3; 2,1^6")));
  // C^2 = 36 - 9 - 28 = -1 and K.C = -18 + 3 + 14 = -1.
  CHECK(self_intersection(cls("6; 3,2^7")) == -1);
  CHECK(intersect(canonical_class(8), cls("6; 3,2^7")) == -1);
  CHECK(is_exceptional(cls("6; 3,2^7")));
  CHECK(is_exceptional(cls("2; 1^5")));
  CHECK_FALSE(is_exceptional(cls("2; 1^4")));
  CHECK_FALSE(is_exceptional(cls("8; 3^7,1")));
  CHECK(is_exceptional(DivisorClass(0, {-1, 0})));
}

TEST_CASE("Cremona transform") {
  CHECK(cremona_transform(cls("1; 0,0,0"), {0, 1, 2}) == cls("2; 1,1,1"));
  CHECK(cremona_transform(cls("2; 1,1,1,0,0"), {0, 1, 2}) == cls("1; 0,0,0,0,0"));
  const DivisorClass c = cls("34; 14^4,12^2,8,2^4");
  const DivisorClass t = cremona_transform(c, {0, 1, 2});
  CHECK(t == cls("26; 6,6,6,14,12,12,8,2^4"));
  CHECK(self_intersection(t) == self_intersection(c));
  CHECK(arithmetic_genus(t) == arithmetic_genus(c));
  CHECK(cremona_transform(t, {0, 1, 2}) == c);
  CHECK_THROWS_AS(cremona_transform(c, {0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(cremona_transform(c, {0, 1, 11}), std::out_of_range);
}

TEST_CASE("Cremona reduction") {
  const auto trivial = cremona_reduce(cls("1; 1,1"));
  CHECK(trivial.terminal == cls("1; 1,1"));
  CHECK(trivial.steps.empty());

  for (const char* text : {"34; 14^4,12^2,8,2^4", "19; 7^7,4,1", "6; 3,2^7", "8; 3^7,1"}) {
    CAPTURE(text);
    const DivisorClass c = cls(text);
    const auto red = cremona_reduce(c);
    CHECK(red.terminal.degree <= 2);
    CHECK(self_intersection(red.terminal) == self_intersection(c));
    CHECK(arithmetic_genus(red.terminal) == arithmetic_genus(c));
    DivisorClass back = red.terminal;
    for (auto it = red.steps.rbegin(); it != red.steps.rend(); ++it) back = cremona_transform(back, *it);
    CHECK(back == c);
  }
  CHECK(cremona_reduce(cls("19; 7^7,4,1")).steps.size() == 6);
}

TEST_CASE("largest three and standard terminals") {
  CHECK(largest_three(cls("5; 1,3,3,0,3")) == CremonaBase{1, 2, 4});
  CHECK(largest_three(cls("5; 2,2,2,2")) == CremonaBase{0, 1, 2});
  CHECK(is_standard_terminal(cls("1; 1,1,0")));
  CHECK_FALSE(is_standard_terminal(cls("1; 1,1,1")));
  CHECK(is_standard_terminal(cls("2; 1^5,0")));
  CHECK_FALSE(is_standard_terminal(cls("2; 1^6")));
  CHECK_FALSE(is_standard_terminal(cls("2; 2")));
  CHECK_FALSE(is_standard_terminal(cls("3; 1")));
}

TEST_CASE("class arithmetic") {
  const DivisorClass c = cls("6; 3,2^7");
  CHECK(2 * c == cls("12; 6,4^7"));
  CHECK(c + c == 2 * c);
  CHECK_THROWS_AS(c + cls("1; 1"), std::invalid_argument);
}
