#pragma once

// Test-side oracles. They rebuild what they need from the Gram matrix and
// root lists instead of calling the library routine under test.

#include <algorithm>
#include <set>
#include <vector>

#include "rootcomb/root_system.hpp"

namespace oracle {

using rootcomb::QMatrix;
using rootcomb::QVector;
using rootcomb::Rational;

inline QMatrix cartan_from_gram(const QMatrix& g) {
  QMatrix a(g.size(), QVector(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) a[i][j] = 2 * g[i][j] / g[i][i];
  return a;
}

// Gauss-Jordan inverse of a nonsingular matrix.
inline QMatrix invert(QMatrix m) {
  const std::size_t n = m.size();
  QMatrix inv(n, QVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Rational d = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Linear constraint a.y (< or <=) b.
struct Constraint {
  QVector a;
  Rational b;
  bool strict;
};

// Fourier-Motzkin elimination over Q with strictness tracking.
inline bool fm_feasible(std::vector<Constraint> cs, std::size_t vars) {
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Constraint> pos, neg, rest;
    for (auto& c : cs) {
      if (c.a[v] > 0) {
        pos.push_back(c);
      } else if (c.a[v] < 0) {
        neg.push_back(c);
      } else {
        rest.push_back(c);
      }
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // p.a[v] > 0, n.a[v] < 0: combine with positive weights to cancel y_v.
        const Rational wp = -n.a[v], wn = p.a[v];
        Constraint c{QVector(vars, Rational(0)), wp * p.b + wn * n.b, p.strict || n.strict};
        for (std::size_t j = 0; j < vars; ++j) c.a[j] = wp * p.a[j] + wn * n.a[j];
        c.a[v] = 0;
        rest.push_back(std::move(c));
      }
    cs = std::move(rest);
  }
  for (const auto& c : cs)
    if (c.strict ? !(0 < c.b) : !(0 <= c.b)) return false;
  return true;
}

}  // namespace oracle
