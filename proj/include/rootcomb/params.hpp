#pragma once

// Integral roots of a parameter, its equivalence class under admissible
// simple reflections, the gallery class of the identity chamber, the chamber
// union C(lambda), and the edge of lambda.

#include <cstddef>
#include <vector>

#include "rootcomb/root_system.hpp"
#include "rootcomb/subsystems.hpp"

namespace rootcomb {

/// A complex rational is in (1/N)Z iff its imaginary part vanishes and N times
/// its real part is an integer.
bool in_fraction_lattice(const ComplexRational& z, const Integer& n);

/// How a move s_i is admitted at mu: Complex tests the full pairing against
/// (1/N)Z (any nonzero imaginary part admits the move); RealPart tests only
/// Re mu(alpha_i^vee).
enum class MoveTest { Complex, RealPart };

/// Sigma(lambda) for denominator N: roots alpha with lambda(alpha^vee) in (1/N)Z.
RootSet integral_roots(const RootSystem& rs, const Parameter& lambda, const Integer& n = 1);

struct ClassMember {
  WeylElement w;  // witness: mu = w lambda
  Parameter mu;
};

struct ParameterClass {
  Parameter base;
  Integer denominator;
  std::vector<ClassMember> members;  // breadth-first order, base first

  bool contains(const Parameter& mu) const;
  const ClassMember* find(const Parameter& mu) const;
};

ParameterClass equivalence_class(const RootSystem& rs, const Parameter& lambda, const Integer& n = 1,
                                 MoveTest test = MoveTest::Complex);

/// A set of chambers w(C), each represented by w.
struct ChamberSet {
  std::vector<WeylElement> chambers;  // discovery order

  bool contains(const WeylElement& w) const;
  std::vector<WeylElement> sorted() const;
  bool same_set(const ChamberSet& other) const;
};

/// [e]_lambda: chambers reachable from C crossing only walls H_beta with beta not in Sigma(lambda).
ChamberSet gallery_class(const RootSystem& rs, const Parameter& lambda, const Integer& n = 1);

/// Chambers w(C) contained in C(lambda) = {X : alpha(X) >= 0 for alpha in Sigma(lambda)^+}.
ChamberSet c_lambda(const RootSystem& rs, const Parameter& lambda, const Integer& n = 1);

/// Linearly independent vectors of a, in fundamental-coweight coordinates.
struct SubspaceBasis {
  QMatrix vectors;
  std::size_t ambient_dim = 0;

  static SubspaceBasis whole(std::size_t dim);
  static SubspaceBasis zero(std::size_t dim);
  /// Validates dimension and independence (InputError otherwise).
  static SubspaceBasis checked(QMatrix vectors, std::size_t dim);
  std::size_t dim() const { return vectors.size(); }
  bool contains(const QVector& x) const;
  bool contains(const SubspaceBasis& other) const;
  /// Reduced row echelon basis of the same subspace.
  SubspaceBasis canonical() const;
};

/// The common kernel in a of the roots in Sigma(lambda).
SubspaceBasis edge(const RootSystem& rs, const Parameter& lambda, const Integer& n = 1);

/// w applied to every basis vector.
SubspaceBasis act(const RootSystem& rs, const WeylElement& w, const SubspaceBasis& s);

void require_dimension(const RootSystem& rs, const Parameter& lambda);

}  // namespace rootcomb
