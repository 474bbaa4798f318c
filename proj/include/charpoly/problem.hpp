#ifndef CHARPOLY_PROBLEM_HPP
#define CHARPOLY_PROBLEM_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charpoly/poly.hpp"

namespace charpoly {

/// A parsed problem file:
///
///   field Q | field Fp <p> | field F<p>
///   vars u: <ids> ; y: <ids>
///   gen <name> = <poly-expr>        (+ - * ^, integer literals, / by constants)
///   form <name> = (a1, ..., ae)
///   pair b = <rational>
///   budget <key> = <int>
///   # comment
struct ProblemFile {
  FramePtr frame;
  std::vector<std::string> gen_names;
  std::vector<Poly> gens;
  std::string form_name;
  std::optional<std::vector<Rational>> form;
  std::optional<Rational> pair_b;
  std::map<std::string, long> budgets;

  const Field& field() const { return frame->field; }
  friend bool operator==(const ProblemFile& a, const ProblemFile& b);
};

/// Throws InvalidInput with "line L, column C: ..." on malformed input.
ProblemFile parse_problem(std::string_view text);

/// Canonical text; parse_problem(print_problem(p)) == p.
std::string print_problem(const ProblemFile& p);

/// Parses a single polynomial in an existing frame.
Poly parse_poly(std::string_view text, const FramePtr& frame);

}  // namespace charpoly

#endif
