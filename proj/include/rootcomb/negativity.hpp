#pragma once

// Integral-negativity predicates decided by exact cone feasibility, instance
// checks of the edge/integrality consequences for a parameter class, leading
// exponent certificates, and the rank-one denominator bound.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "rootcomb/params.hpp"
#include "rootcomb/root_system.hpp"
#include "rootcomb/subsystems.hpp"

namespace rootcomb {

enum class NegativityMode { Weak, Integral, Strict };

struct NegativityQuery {
  Parameter lambda;
  NegativityMode mode = NegativityMode::Strict;
  /// The exceptional subspace a_lambda; required for weak/integral, forbidden for strict.
  std::optional<SubspaceBasis> a_lambda;
  Integer denominator = 1;
};

struct NegativityVerdict {
  bool feasible = false;
  /// Integral mode only: Im lambda does not vanish on a_lambda.
  bool imaginary_obstruction = false;
  /// Roots spanning span(Sigma(lambda)); the witness is expressed over them.
  RootSet omega_basis;
  std::optional<QVector> witness_omega;
  /// (Re lambda - omega)(varpi_i^vee) at the witness.
  QVector generator_values;
  std::vector<std::size_t> tight_generators;
  /// Generators required to be strictly negative.
  std::vector<std::size_t> strict_generators;
};

/// Decides existence of omega in span_R Sigma(lambda) with Re lambda - omega
/// nonpositive on C and negative off a_lambda (weak/integral), or negative on
/// C minus the origin (strict).
NegativityVerdict check_negativity(const RootSystem& rs, const NegativityQuery& q);

/// omega = sum_k witness_k * root(omega_basis[k]) in simple-root coordinates.
QVector witness_form(const RootSystem& rs, const NegativityVerdict& v);

/// Assignment of a_mu to the members of a parameter class.
struct SubspaceAssignment {
  std::optional<SubspaceBasis> uniform;
  std::map<Parameter, SubspaceBasis> per_member;

  static SubspaceAssignment whole_space(std::size_t dim);
  /// Throws InputError when no subspace is assigned to mu.
  const SubspaceBasis& for_member(const Parameter& mu) const;
};

struct ClassNegativity {
  bool all_negative = false;
  ParameterClass cls;
  std::vector<NegativityVerdict> verdicts;  // parallel to cls.members
};

ClassNegativity check_class_negativity(const RootSystem& rs, const Parameter& lambda, NegativityMode mode,
                                       const SubspaceAssignment& subspaces, const Integer& n = 1);

struct ContainingMember {
  WeylElement w;          // w^{-1} is in the gallery class of e
  SubspaceBasis a_mu;     // the subspace assigned to mu = w lambda
};

struct FundamentalLemmaReport {
  bool class_negative = false;
  bool vacuous = true;  // the class-negativity hypothesis fails
  RootSet integral;
  SubspaceBasis edge_basis;
  std::optional<ContainingMember> containing_member;
  bool re_lambda_on_edge_zero = false;
  Subsystem parabolic_closure;
  std::vector<Integer> lattice_divisors;
  Integer n_lattice = 1;  // [weight lattice of Sigma(lambda) : root lattice of Sigma_P(lambda)]
  bool integrality_ok = false;
  std::optional<Integer> n_integral_subsystem;  // N(Sigma(lambda)) when Sigma(lambda) has full rank
  std::optional<bool> im_lambda_on_edge_zero;   // integral mode
  std::optional<bool> lambda_real;              // integral mode
  std::optional<bool> edge_trivial;             // strict mode
  std::optional<bool> coroots_full_rank;        // strict mode
};

FundamentalLemmaReport verify_fundamental_lemma(const RootSystem& rs, const Parameter& lambda, NegativityMode mode,
                                                const SubspaceAssignment& subspaces, const Integer& n = 1);

struct ExponentInput {
  std::size_t rank = 0;
  QMatrix spherical;  // rows: spherical roots in coordinates of a_Z^*
  std::optional<std::size_t> edge_dim;
  QVector mu;      // Re mu
  QVector rho_q;
  QVector nu;      // mu = Re mu + i nu
  Integer n = 1;
  std::optional<QVector> chi_im;  // chi = i chi_im on a_Z, for the edge condition mu|_E = -chi
};

struct ExponentCertificate {
  bool solvable = false;  // Re mu - rho_Q lies in span S
  QVector coefficients;   // c_alpha, parallel to the spherical roots
  QVector nu;
  SubspaceBasis edge;     // a_{Z,E}
  QMatrix cone_generators;  // generators of a_Z^- modulo the edge
  QVector generator_values; // (Re mu - rho_Q) on each generator
  bool lattice_ok = false;
  bool ds1_ok = false;
  bool ds2_ok = false;
  std::optional<bool> ds3_ok;
};

ExponentCertificate certify_exponent(const ExponentInput& in);

/// 18 d^2 with d the product of the Cartan determinants; d = 1 for the empty type.
Integer rank_one_bound(const std::optional<RootSystemSpec>& type);
Integer cartan_determinant(const RootSystem& rs);

}  // namespace rootcomb
