#ifndef CHARPOLY_LP_HPP
#define CHARPOLY_LP_HPP

#include <vector>

#include "charpoly/scalar.hpp"

namespace charpoly::lp {

enum class Sense { LessEq, GreaterEq, Equal };

struct Constraint {
  std::vector<Rational> a;
  Sense sense;
  Rational b;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value;
};

/// Exact two-phase simplex with Bland's rule: minimize c.x subject to the
/// constraints and x >= 0.
Result minimize(const std::vector<Rational>& c, const std::vector<Constraint>& constraints);

/// Feasibility only.
bool feasible(std::size_t nvars, const std::vector<Constraint>& constraints);

}  // namespace charpoly::lp

#endif
