#ifndef CHARPOLY_GRADED_HPP
#define CHARPOLY_GRADED_HPP

#include <optional>
#include <string>
#include <vector>

#include "charpoly/forms.hpp"
#include "charpoly/poly.hpp"
#include "charpoly/polyhedron.hpp"

// Forms here are u-free Polys read as elements of K[Y].
namespace charpoly {

struct DirectrixResult {
  std::vector<Poly> linear_forms;  // reduced echelon basis
  int r_min = 0;
};

struct RidgeResult {
  std::vector<Poly> additive_gens;
  int d = 0;
  /// False when the generator search produced a non-additive element
  /// (only possible outside the documented cases).
  bool all_additive = true;
};

enum class RidEqDir { Holds, Fails, Unknown };

struct RidEqDirReport {
  RidEqDir outcome = RidEqDir::Holds;
  std::vector<Poly> reduced_gens;
  std::vector<Poly> directrix;
  std::optional<Poly> witness;
  std::string note;
};

enum class ConditionStatus { Checked, Violated, NotEstablished };

struct StdBasisViolation {
  std::string condition;  // "a", "b", "c", "1" or "order"
  int generator = 0;      // 1-based, 0 when not tied to one generator
  std::string witness;
};

struct StdBasisReport {
  bool ok = false;
  std::optional<LinearForm> reference_form;
  std::vector<int> orders;
  ConditionStatus condition1 = ConditionStatus::NotEstablished;
  std::vector<StdBasisViolation> violations;
};

struct BasisSignature {
  int m = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<int> orders;
  friend bool operator==(const BasisSignature&, const BasisSignature&) = default;
};

/// Minimal space of linear forms V with every form in K[V]. Forms must be
/// homogeneous and nonzero (InvalidInput otherwise).
DirectrixResult directrix(const std::vector<Poly>& forms);
DirectrixResult directrix(const std::vector<GradedForm>& forms);

/// Same computation without the homogeneity requirement.
DirectrixResult translation_directrix(const std::vector<Poly>& forms);

/// In char 0 the directrix. In char p each form is first reduced by p-th
/// roots; the generators are the reduced Groebner basis of the equations of
/// the translation group of the reduced forms.
RidgeResult ridge(const std::vector<Poly>& forms);

RidEqDirReport check_rid_eq_dir(const std::vector<Poly>& forms);

StdBasisReport check_standard_basis(const std::vector<Poly>& f, const LinearForm& l, int lift_budget = 64);

BasisSignature normalized_basis_signature(const std::vector<Poly>& f);

/// G with G^p = F over F_p, if F is a p-th power in K[Y].
std::optional<Poly> pth_root(const Poly& f);

/// Sum of c * Y_j^(p^k) (char p) or of c * Y_j (char 0).
bool is_additive(const Poly& f);

/// f(Y + t) = f(Y) with t a vector of scalars read as a symbolic multiple
/// s * t, i.e. invariance along the line spanned by t.
bool invariant_along(const Poly& f, const std::vector<Scalar>& t);

std::string to_string(RidEqDir r);
std::string to_string(ConditionStatus s);

}  // namespace charpoly

#endif
