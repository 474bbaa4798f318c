#include <doctest.h>

#include "charpoly/forms.hpp"
#include "charpoly/problem.hpp"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace charpoly;

namespace {

// Double containment between the library's F-subset and the brute-force one.
bool agree(const FSubset& lib, const oracle::BruteFSubset& brute) {
  if (lib.empty() != brute.points.empty()) return false;
  for (const auto& v : lib.vertices()) {
    if (!brute.contains(v)) return false;
    if (std::find(brute.points.begin(), brute.points.end(), v) == brute.points.end()) return false;
  }
  for (const auto& p : brute.points)
    if (!lib.contains(p)) return false;
  return true;
}

}  // namespace

TEST_CASE("oracle sanity") {
  auto fr = Frame::make({"u1", "u2"}, {"y"}, Field::rationals());
  Poly g = parse_poly("y^2 + u1^3 + u1*u2*y + u2^7", fr);
  auto pts = oracle::element_points(g);
  CHECK(pts.size() == 3);
  auto brute = oracle::brute_fsubset(2, pts);
  CHECK(brute.contains({Rational(1), Rational(1)}));
  CHECK_FALSE(brute.contains({make_rational(1, 2), make_rational(1, 2)}));
  CHECK(agree(poly_of_element(g), brute));
  // A deliberately wrong answer is caught.
  CHECK_FALSE(agree(FSubset::from_points(2, {{Rational(1), Rational(1)}}), brute));
}

TEST_CASE("elements and pairs agree with the oracle") {
  for (const auto& s : corpus::random_systems(40, 3)) {
    int e = s.frame->e();
    for (const auto& g : s.gens) CHECK(agree(poly_of_element(g), oracle::brute_fsubset(e, oracle::element_points(g))));
    int ord = 1000;
    for (const auto& g : s.gens)
      for (const auto& [m, c] : g.terms()) ord = std::min(ord, m.degree());
    if (ord == 0) continue;
    for (Rational b : {Rational(ord), make_rational(ord, 2)})
      CHECK(agree(poly_of_pair(s.gens, b), oracle::brute_fsubset(e, oracle::pair_points(s.gens, b))));
  }
}
