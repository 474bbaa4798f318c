#include <doctest.h>

#include "charpoly/error.hpp"
#include "charpoly/forms.hpp"
#include "charpoly/problem.hpp"

using namespace charpoly;

namespace {
FramePtr fr() { return Frame::make({"u1", "u2"}, {"y1", "y2"}, Field::rationals()); }
LinearForm L(long a, long ad, long b, long bd) { return LinearForm({make_rational(a, ad), make_rational(b, bd)}); }
}  // namespace

TEST_CASE("in_0 keeps the order part of g(0, Y)") {
  auto f = fr();
  Poly g = parse_poly("y1^2 + y1*y2 + y2^3 + u1*y1", f);
  CHECK(in_zero(g).poly() == parse_poly("y1^2 + y1*y2", f));
  CHECK(in_zero(g).degree() == 2);
  CHECK_THROWS_AS(in_zero(parse_poly("u1*y1", f)), DomainError);
}

TEST_CASE("v_L and in_L") {
  auto f = fr();
  Poly g = parse_poly("y1^2 + u1^3 + u2^4*y2", f);
  LinearForm l = L(2, 3, 1, 2);
  CHECK(v_L(g, l) == 2);
  CHECK(in_L(g, l).poly() == parse_poly("y1^2 + u1^3", f));
  CHECK_FALSE(is_effective(l, {g}));  // u1^3 ties with y1^2
  CHECK(is_effective(L(1, 1, 1, 1), {g}));
  CHECK_THROWS(in_L(g, LinearForm({Rational(0), Rational(1)})));
  CHECK_THROWS_AS(v_L(Poly(f), l), DomainError);
}

TEST_CASE("initial form at a vertex") {
  auto f = fr();
  Poly g = parse_poly("y1^2 + u1^3 + u1*u2*y1 + u2^9", f);
  auto form = in_vertex(g, {make_rational(3, 2), Rational(0)});
  CHECK(form.poly() == parse_poly("y1^2 + u1^3", f));
}

TEST_CASE("polyhedra of elements, systems and pairs") {
  auto f = fr();
  Poly f1 = parse_poly("y1^2 + u1^3", f), f2 = parse_poly("y2^3 + u2^7", f);
  CHECK(poly_of_element(f1).to_string() == "{(3/2,0)}");
  CHECK(poly_of_system({f1, f2}).to_string() == "{(3/2,0); (0,7/3)}");
  CHECK_THROWS_AS(poly_of_system({f1, parse_poly("u1*y1", f)}), DomainError);
  CHECK(poly_of_pair({f1, f2}, Rational(2)).to_string() == "{(3/2,0); (0,7/2)}");
  CHECK_THROWS_AS(poly_of_pair({f1}, Rational(0)), InvalidInput);
  CHECK_THROWS_AS(poly_of_pair({f1}, Rational(3)), InvalidInput);
}

TEST_CASE("graded forms check homogeneity") {
  auto f = fr();
  Weighting w{{Rational(1), Rational(1)}, Rational(1)};
  CHECK_NOTHROW(GradedForm(parse_poly("y1^2 + u1*y2", f), w, Rational(2)));
  CHECK_THROWS_AS(GradedForm(parse_poly("y1^2 + u1", f), w, Rational(2)), InvalidInput);
}
