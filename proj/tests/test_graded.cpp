#include <doctest.h>

#include "charpoly/error.hpp"
#include "charpoly/graded.hpp"
#include "charpoly/groebner.hpp"
#include "charpoly/problem.hpp"
#include "corpus.hpp"

using namespace charpoly;

namespace {
FramePtr fr(Field k) { return Frame::make({"u"}, {"y1", "y2"}, k); }
std::vector<std::string> str(const std::vector<Poly>& ps) {
  std::vector<std::string> s;
  for (const auto& p : ps) s.push_back(p.to_string());
  return s;
}
}  // namespace

TEST_CASE("directrix in characteristic zero") {
  auto f = fr(Field::rationals());
  auto d = directrix(std::vector<Poly>{parse_poly("y1^2 + y2^2", f)});
  CHECK(d.r_min == 2);
  auto d2 = directrix(std::vector<Poly>{parse_poly("(y1 + 2*y2)^3", f)});
  CHECK(str(d2.linear_forms) == std::vector<std::string>{"y1 + 2*y2"});
  CHECK_THROWS_AS(directrix(std::vector<Poly>{parse_poly("y1^2 + y2", f)}), InvalidInput);
}

TEST_CASE("directrix and ridge in characteristic two") {
  auto f = fr(Field::prime(2));
  std::vector<Poly> forms = {parse_poly("y1^2 + y2^2", f)};
  CHECK(str(directrix(forms).linear_forms) == std::vector<std::string>{"y1 + y2"});
  auto rg = ridge(forms);
  CHECK(str(rg.additive_gens) == std::vector<std::string>{"y1 + y2"});
  auto rep = check_rid_eq_dir(forms);
  CHECK(rep.outcome == RidEqDir::Holds);
  CHECK(to_string(rep.outcome) == "holds");
}

TEST_CASE("ridge larger than linear forms") {
  for (std::uint64_t p : {2u, 3u}) {
    auto f = fr(Field::prime(p));
    Poly g = Poly::y(f, 0, static_cast<int>(p)) + Poly::y(f, 1, static_cast<int>(p * p));
    auto rep = check_rid_eq_dir({g});
    CHECK(rep.outcome == RidEqDir::Fails);
    REQUIRE(rep.witness);
    CHECK(*rep.witness == Poly::y(f, 0) + Poly::y(f, 1, static_cast<int>(p)));
  }
}

TEST_CASE("additivity and p-th roots") {
  auto f = fr(Field::prime(3));
  CHECK(is_additive(parse_poly("y1^3 + 2*y2^9 + y1", f)));
  CHECK_FALSE(is_additive(parse_poly("y1^2", f)));
  auto r = pth_root(parse_poly("y1^3 + y2^6", f));
  REQUIRE(r);
  CHECK(*r == parse_poly("y1 + y2^2", f));
  CHECK_FALSE(pth_root(parse_poly("y1^2", f)));
}

TEST_CASE("char 0: ridge equals directrix on random forms") {
  for (const auto& forms : corpus::random_homogeneous(25)) {
    auto d = directrix(forms);
    auto rg = ridge(forms);
    CHECK(gb::groebner_basis(rg.additive_gens) == gb::groebner_basis(d.linear_forms));
  }
}

TEST_CASE("standard basis checks") {
  auto f = Frame::make({"u1", "u2"}, {"y1", "y2"}, Field::rationals());
  LinearForm l({Rational(4), Rational(4)});
  auto ok = check_standard_basis({parse_poly("y1^2 + u1^3", f), parse_poly("y2^3 + u2^7", f)}, l);
  CHECK(ok.ok);
  CHECK(ok.condition1 == ConditionStatus::Checked);
  CHECK(ok.orders == std::vector<int>{2, 3});
  auto bad = check_standard_basis({parse_poly("y1^2 + u1^3", f), parse_poly("y1^2 + y2^3 + u2^7", f)}, l);
  CHECK_FALSE(bad.ok);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK_THROWS_AS(check_standard_basis({parse_poly("y1^2", f)}, LinearForm({Rational(0), Rational(1)})),
                  InvalidInput);
}
