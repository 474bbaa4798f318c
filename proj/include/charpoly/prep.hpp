#ifndef CHARPOLY_PREP_HPP
#define CHARPOLY_PREP_HPP

#include <optional>
#include <string>
#include <vector>

#include "charpoly/forms.hpp"
#include "charpoly/poly.hpp"
#include "charpoly/polyhedron.hpp"

namespace charpoly {

struct Offending {
  int generator = 0;  // 1-based
  std::vector<int> a;
  std::vector<int> b;
};

struct NormalizationCheck {
  bool normalized = true;
  std::vector<Offending> offending;
};

/// x[i][j] is the multiplier with g_i = f_i - sum_{j<i} x[i][j] f_j.
struct NormalizeResult {
  std::vector<Poly> gens;
  std::vector<std::vector<Poly>> multipliers;
  int steps = 0;
};

struct SolveWitness {
  QPoint vertex;
  std::vector<Scalar> lambdas;
};

struct PrepEvent {
  std::string kind;  // reorder, repair, normalize, solve, cycle, rollback, face-solve, stop
  std::optional<QPoint> vertex;
  std::string detail;
  FSubset polyhedron;  // after the event
};

struct Budget {
  int events = 64;            // vertex events in prepare
  int normalize_steps = 0;    // per vertex; 0 means 10 * m * n_m
  int dissolve_degree = 0;    // 0 means 2 * max n_i
  int search_log2 = 20;       // cap on exhaustive F_p searches (log2 of candidate count)
  int strong_steps = 200;     // full-normalization loops
};

struct PrepState {
  std::vector<Poly> gens;
  /// z_j = y_j + subs[j], written in the original coordinates.
  std::vector<Poly> subs;
  FSubset polyhedron;
  std::optional<Rational> lambda;
  std::vector<Rational> lambda_trace;
  std::vector<PrepEvent> log;
  std::string status = "running";  // prepared, budget-exhausted, normalized, nonempty
  std::string stop_reason;
  std::vector<QPoint> cycle;
  std::optional<QPoint> witness;

  static PrepState from(std::vector<Poly> gens);
  /// "z = y + y^2 + u1^2" style lines for the nonzero substitutions.
  std::vector<std::string> substitution_strings() const;
};

struct PrepareOptions {
  Budget budget;
  bool generalized = true;
};

/// Checks the v-initial forms for terms whose B lies in the staircase of the
/// earlier exponents with |B| <= n_i. Throws InvalidInput unless the
/// exponents are strictly grlex-increasing.
NormalizationCheck is_normalized_at(const std::vector<Poly>& f, const QPoint& v);

/// Reduces the offending terms at v. Throws BudgetExhausted past the step
/// budget (0 means 10 * m * n_m) and InternalError if a conclusion fails.
NormalizeResult normalize_at_vertex(const std::vector<Poly>& f, const QPoint& v, int budget = 0);

PrepState vertex_normalize(const std::vector<Poly>& f, const Budget& budget = {});

struct StrongNormalization {
  std::string status;  // normalized, loop, budget
  std::vector<Poly> gens;
  int steps = 0;
  std::vector<std::vector<int>> reduced_exponents;  // B of every reduction step, in order
  std::optional<std::vector<int>> repeated;         // the B whose reappearance closed the loop
  FSubset polyhedron;
  bool polyhedron_stationary = false;
};

/// Normalization in the strong sense (every term with B in the staircase and
/// |B| <= n_i), with loop detection: a reduced exponent that reappears while
/// the polyhedron has not moved since its first reduction.
StrongNormalization strong_normalize(const std::vector<Poly>& f, int max_steps = 200);

/// Full normalization for the empty case. Status "normalized" with the system,
/// or "nonempty" with the least surviving non-staircase point as witness.
PrepState normalize_empty_case(const std::vector<Poly>& f, int max_steps = 200);

std::optional<SolveWitness> vertex_solvable(const std::vector<Poly>& f, const QPoint& v, int search_log2 = 20);

PrepState apply_solution(const PrepState& state, const SolveWitness& w);

PrepState prepare(const std::vector<Poly>& f, const PrepareOptions& options = {});

struct DissolveResult {
  bool dissolved = false;
  PrepState state;
  std::vector<Poly> h;  // in the coordinates of the input state
  std::vector<std::string> support;
  std::string reason;
};

/// Searches z_j = y_j + h_j with h_j of nu-weight l making the face vanish.
DissolveResult dissolve_generalized(const PrepState& state, const QPoint& v, const LinearForm& l,
                                    const Rational& ell, const Budget& budget = {});

std::vector<GradedForm> face_initial_system(const PrepState& state, const LinearForm& l, const Rational& ell);

}  // namespace charpoly

#endif
