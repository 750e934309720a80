#include "rootcomb/params.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rootcomb/errors.hpp"

namespace rootcomb {

bool in_fraction_lattice(const ComplexRational& z, const Integer& n) {
  return z.im == 0 && in_fraction_lattice(z.re, n);
}

void require_dimension(const RootSystem& rs, const Parameter& lambda) {
  if (lambda.re.size() != rs.rank() || lambda.im.size() != rs.rank()) {
    throw InputError("parameter has dimension " + std::to_string(lambda.re.size()) + "/" +
                     std::to_string(lambda.im.size()) + " but " + rs.name() + " has rank " +
                     std::to_string(rs.rank()));
  }
}

namespace {

void require_denominator(const Integer& n) {
  if (n < 1) throw InputError("denominator must be a positive integer");
}

}  // namespace

RootSet integral_roots(const RootSystem& rs, const Parameter& lambda, const Integer& n) {
  require_dimension(rs, lambda);
  require_denominator(n);
  RootSet out;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (in_fraction_lattice(pairing(rs, lambda, i), n)) out.push_back(i);
  return out;
}

bool ParameterClass::contains(const Parameter& mu) const { return find(mu) != nullptr; }

const ClassMember* ParameterClass::find(const Parameter& mu) const {
  for (const auto& m : members)
    if (m.mu == mu) return &m;
  return nullptr;
}

ParameterClass equivalence_class(const RootSystem& rs, const Parameter& lambda, const Integer& n, MoveTest test) {
  require_dimension(rs, lambda);
  require_denominator(n);
  ParameterClass cls{lambda, n, {}};
  std::set<Parameter> seen{lambda};
  cls.members.push_back({identity_element(rs), lambda});
  for (std::size_t head = 0; head < cls.members.size(); ++head) {
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      const Parameter& mu = cls.members[head].mu;
      // mu(alpha_i^vee) is the i-th fundamental-weight coordinate.
      ComplexRational p{mu.re[i], mu.im[i]};
      const bool blocked = test == MoveTest::Complex ? in_fraction_lattice(p, n) : in_fraction_lattice(p.re, n);
      if (blocked) continue;
      const WeylElement s = simple_reflection(rs, i);
      Parameter next = act(rs, s, mu);
      if (!seen.insert(next).second) continue;
      WeylElement w = compose(rs, s, cls.members[head].w);
      cls.members.push_back({std::move(w), std::move(next)});
    }
  }
  return cls;
}

bool ChamberSet::contains(const WeylElement& w) const {
  return std::find(chambers.begin(), chambers.end(), w) != chambers.end();
}

std::vector<WeylElement> ChamberSet::sorted() const {
  std::vector<WeylElement> s = chambers;
  std::sort(s.begin(), s.end());
  return s;
}

bool ChamberSet::same_set(const ChamberSet& other) const { return sorted() == other.sorted(); }

ChamberSet gallery_class(const RootSystem& rs, const Parameter& lambda, const Integer& n) {
  const RootSet integral = integral_roots(rs, lambda, n);
  std::vector<bool> is_integral(rs.size(), false);
  for (auto i : integral) is_integral[i] = true;

  ChamberSet out;
  std::set<WeylElement> seen;
  WeylElement e = identity_element(rs);
  seen.insert(e);
  out.chambers.push_back(e);
  for (std::size_t head = 0; head < out.chambers.size(); ++head) {
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      const WeylElement& u = out.chambers[head];
      // uC and u s_i C are separated by the wall of u(alpha_i), an indivisible root.
      const std::size_t wall = rs.index_of(u.images[i]);
      if (!rs.is_indivisible(wall)) throw InvariantError("crossed wall root is divisible");
      if (is_integral[wall]) continue;
      WeylElement next = compose(rs, u, simple_reflection(rs, i));
      if (seen.insert(next).second) out.chambers.push_back(std::move(next));
    }
  }
  return out;
}

ChamberSet c_lambda(const RootSystem& rs, const Parameter& lambda, const Integer& n) {
  const RootSet integral = integral_roots(rs, lambda, n);
  RootSet positive;
  for (auto i : integral)
    if (rs.is_positive(i)) positive.push_back(i);
  const QVector interior(rs.rank(), Rational(1));  // sum of the fundamental coweights
  ChamberSet out;
  for (const auto& w : weyl_group(rs)) {
    const QVector x = act_on_coweight(rs, w, interior);
    bool inside = true;
    for (auto i : positive) {
      Rational v(0);
      for (std::size_t k = 0; k < rs.rank(); ++k) v += rs.root(i).coords[k] * x[k];
      if (v < 0) {
        inside = false;
        break;
      }
    }
    if (inside) out.chambers.push_back(w);
  }
  return out;
}

SubspaceBasis SubspaceBasis::whole(std::size_t dim) {
  SubspaceBasis s;
  s.ambient_dim = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    QVector v = zero_vector(dim);
    v[i] = 1;
    s.vectors.push_back(std::move(v));
  }
  return s;
}

SubspaceBasis SubspaceBasis::zero(std::size_t dim) {
  SubspaceBasis s;
  s.ambient_dim = dim;
  return s;
}

SubspaceBasis SubspaceBasis::checked(QMatrix vectors, std::size_t dim) {
  for (const auto& v : vectors)
    if (v.size() != dim) throw InputError("subspace vector has dimension " + std::to_string(v.size()) +
                                          ", expected " + std::to_string(dim));
  if (!is_independent(vectors, dim)) throw InputError("subspace basis vectors are linearly dependent");
  SubspaceBasis s;
  s.vectors = std::move(vectors);
  s.ambient_dim = dim;
  return s;
}

bool SubspaceBasis::contains(const QVector& x) const {
  if (is_zero(x)) return true;
  return in_row_span(vectors, x, ambient_dim);
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  return std::all_of(other.vectors.begin(), other.vectors.end(), [&](const QVector& v) { return contains(v); });
}

SubspaceBasis SubspaceBasis::canonical() const {
  SubspaceBasis s;
  s.ambient_dim = ambient_dim;
  s.vectors = rref(vectors, ambient_dim).rows;
  return s;
}

SubspaceBasis edge(const RootSystem& rs, const Parameter& lambda, const Integer& n) {
  QMatrix forms;
  for (auto i : integral_roots(rs, lambda, n)) {
    const auto& c = rs.root(i).coords;
    forms.emplace_back(c.begin(), c.end());
  }
  SubspaceBasis s;
  s.ambient_dim = rs.rank();
  s.vectors = nullspace(forms, rs.rank());
  return s;
}

SubspaceBasis act(const RootSystem& rs, const WeylElement& w, const SubspaceBasis& s) {
  SubspaceBasis out;
  out.ambient_dim = s.ambient_dim;
  for (const auto& v : s.vectors) out.vectors.push_back(act_on_coweight(rs, w, v));
  return out;
}

}  // namespace rootcomb
