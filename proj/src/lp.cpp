#include "charpoly/lp.hpp"

#include "charpoly/error.hpp"

namespace charpoly::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, std::vector<Rational>(cols + 1)), basis_(rows) {}

  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;

  std::size_t cols() const { return t_.empty() ? 0 : t_[0].size() - 1; }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / t_[row][col];
    for (auto& x : t_[row]) x *= inv;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (r == row || sgn(t_[r][col]) == 0) continue;
      Rational f = t_[r][col];
      for (std::size_t c = 0; c < t_[r].size(); ++c) t_[r][c] -= f * t_[row][c];
    }
    basis_[row] = col;
  }

  // Minimizes cost over the current basis; columns >= allowed are never entered.
  // Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, std::size_t allowed) {
    for (std::size_t guard = 0;; ++guard) {
      if (guard > 100000) throw InternalError("simplex iteration guard tripped");
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        Rational rc = cost[j];
        for (std::size_t r = 0; r < t_.size(); ++r) rc -= cost[basis_[r]] * t_[r][j];
        if (sgn(rc) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t r = 0; r < t_.size(); ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        Rational ratio = t_[r].back() / t_[r][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result minimize(const std::vector<Rational>& c, const std::vector<Constraint>& constraints) {
  const std::size_t n = c.size();
  const std::size_t m = constraints.size();
  std::size_t slacks = 0, arts = 0;
  for (const auto& k : constraints) {
    if (k.a.size() != n) throw InvalidInput("lp: constraint width mismatch");
    if (k.sense != Sense::Equal) ++slacks;
  }
  // Every row gets an artificial except <= rows with b >= 0 (slack starts basic).
  std::vector<bool> needs_art(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& k = constraints[i];
    bool flipped = sgn(k.b) < 0;
    Sense s = k.sense;
    if (flipped && s != Sense::Equal) s = s == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
    needs_art[i] = s != Sense::LessEq;
    if (needs_art[i]) ++arts;
  }
  const std::size_t total = n + slacks + arts;
  Tableau tab(m, total);
  std::size_t slack_col = n, art_col = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& k = constraints[i];
    Rational sign = sgn(k.b) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) tab.t_[i][j] = sign * k.a[j];
    tab.t_[i][total] = sign * k.b;
    if (k.sense != Sense::Equal) {
      Rational s = k.sense == Sense::LessEq ? 1 : -1;
      tab.t_[i][slack_col] = sign * s;
      if (!needs_art[i]) tab.basis_[i] = slack_col;
      ++slack_col;
    }
    if (needs_art[i]) {
      tab.t_[i][art_col] = 1;
      tab.basis_[i] = art_col++;
    }
  }

  Result res;
  if (arts > 0) {
    std::vector<Rational> phase1(total, 0);
    for (std::size_t j = n + slacks; j < total; ++j) phase1[j] = 1;
    tab.optimize(phase1, total);
    Rational infeas = 0;
    for (std::size_t r = 0; r < m; ++r)
      if (tab.basis_[r] >= n + slacks) infeas += tab.t_[r][total];
    if (sgn(infeas) != 0) {
      res.status = Status::Infeasible;
      return res;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < tab.t_.size();) {
      if (tab.basis_[r] < n + slacks) {
        ++r;
        continue;
      }
      std::size_t col = n + slacks;
      for (std::size_t j = 0; j < n + slacks; ++j)
        if (sgn(tab.t_[r][j]) != 0) {
          col = j;
          break;
        }
      if (col == n + slacks) {
        tab.t_.erase(tab.t_.begin() + static_cast<long>(r));
        tab.basis_.erase(tab.basis_.begin() + static_cast<long>(r));
      } else {
        tab.pivot(r, col);
        ++r;
      }
    }
  }
  std::vector<Rational> cost(total, 0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.optimize(cost, n + slacks)) {
    res.status = Status::Unbounded;
    return res;
  }
  res.status = Status::Optimal;
  res.x.assign(n, 0);
  for (std::size_t r = 0; r < tab.t_.size(); ++r)
    if (tab.basis_[r] < n) res.x[tab.basis_[r]] = tab.t_[r][total];
  res.value = 0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

bool feasible(std::size_t nvars, const std::vector<Constraint>& constraints) {
  return minimize(std::vector<Rational>(nvars, 0), constraints).status != Status::Infeasible;
}

}  // namespace charpoly::lp
