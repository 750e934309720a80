#include "rootcomb/simplex.hpp"

#include <cstdint>
#include <optional>

#include "rootcomb/errors.hpp"

namespace rootcomb {

namespace {

struct Tableau {
  QMatrix rows;                    // constraint rows; last entry is the right-hand side
  std::vector<std::size_t> basis;  // basic column of each row
  std::size_t cols = 0;            // number of variable columns

  const Rational& rhs(std::size_t i) const { return rows[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }
};

enum class Phase { Optimal, Unbounded };

// Maximize cost . x over the current basic feasible tableau; `allowed` masks entering columns.
Phase run(Tableau& t, const QVector& cost, const std::vector<bool>& allowed) {
  while (true) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < t.cols && !enter; ++j) {
      if (!allowed[j]) continue;
      Rational reduced = cost[j];
      for (std::size_t i = 0; i < t.rows.size(); ++i) reduced -= cost[t.basis[i]] * t.rows[i][j];
      if (reduced > 0) enter = j;
    }
    if (!enter) return Phase::Optimal;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Rational& a = t.rows[i][*enter];
      if (a <= 0) continue;
      Rational ratio = t.rhs(i) / a;
      if (!leave || ratio < best || (ratio == best && t.basis[i] < t.basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) return Phase::Unbounded;
    t.pivot(*leave, *enter);
  }
}

}  // namespace

LpResult maximize(const LinearProgram& lp) {
  const std::size_t m = lp.lhs.size();
  if (lp.rhs.size() != m || lp.objective.size() != lp.num_vars || lp.free.size() != lp.num_vars)
    throw InputError("inconsistent linear program dimensions");

  // Column layout: structural (free variables split into +/- parts), slacks, artificials.
  std::vector<std::size_t> pos_col(lp.num_vars), neg_col(lp.num_vars, SIZE_MAX);
  std::size_t n = 0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    pos_col[j] = n++;
    if (lp.free[j]) neg_col[j] = n++;
  }
  const std::size_t slack0 = n;
  std::size_t artificial_count = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (lp.rhs[i] < 0) ++artificial_count;
  const std::size_t art0 = slack0 + m;
  const std::size_t cols = art0 + artificial_count;

  Tableau t;
  t.cols = cols;
  t.rows.assign(m, zero_vector(cols + 1));
  t.basis.assign(m, 0);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.lhs[i].size() != lp.num_vars) throw InputError("constraint row has the wrong length");
    const int sign = lp.rhs[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      t.rows[i][pos_col[j]] = sign * lp.lhs[i][j];
      if (lp.free[j]) t.rows[i][neg_col[j]] = -sign * lp.lhs[i][j];
    }
    t.rows[i][slack0 + i] = sign;
    t.rows[i][cols] = sign * lp.rhs[i];
    if (sign < 0) {
      t.rows[i][next_art] = 1;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = slack0 + i;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (artificial_count > 0) {
    QVector phase1 = zero_vector(cols);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
    run(t, phase1, allowed);
    Rational infeas(0);
    for (std::size_t i = 0; i < m; ++i)
      if (t.basis[i] >= art0) infeas += t.rhs(i);
    if (infeas > 0) return {LpStatus::Infeasible, {}, Rational(0)};
    // Pivot remaining (zero-level) artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::optional<std::size_t> c;
      for (std::size_t j = 0; j < art0 && !c; ++j)
        if (t.rows[i][j] != 0) c = j;
      if (c) {
        t.pivot(i, *c);
        ++i;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  QVector cost = zero_vector(cols);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (lp.free[j]) cost[neg_col[j]] = -lp.objective[j];
  }
  if (run(t, cost, allowed) == Phase::Unbounded) return {LpStatus::Unbounded, {}, Rational(0)};

  QVector z = zero_vector(cols);
  for (std::size_t i = 0; i < t.rows.size(); ++i) z[t.basis[i]] = t.rhs(i);
  LpResult res{LpStatus::Optimal, zero_vector(lp.num_vars), Rational(0)};
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    res.x[j] = z[pos_col[j]];
    if (lp.free[j]) res.x[j] -= z[neg_col[j]];
  }
  res.value = dot(lp.objective, res.x);
  return res;
}

}  // namespace rootcomb
