#pragma once

// Exact rational linear programming: two-phase tableau simplex with Bland's rule.

#include <cstddef>
#include <vector>

#include "rootcomb/linalg.hpp"

namespace rootcomb {

/// maximize objective . x  subject to  lhs x <= rhs, x_j >= 0 unless free[j].
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> free;
  QVector objective;
  QMatrix lhs;
  QVector rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  QVector x;        // a primal optimum when status == Optimal
  Rational value;   // objective at x
};

LpResult maximize(const LinearProgram& lp);

}  // namespace rootcomb
