#pragma once

// Property sweeps over parameter grids. Each check returns a tally of cases and
// failures; the first few failures are described in plain text.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rootcomb/root_system.hpp"

namespace rootcomb {

inline constexpr std::uint64_t kGridSeed = 20250611;

struct PropertyResult {
  std::string property;
  std::string scope;  // root system name or other scope label
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_samples;

  bool passed() const { return failures == 0; }
};

/// Real coordinate values used by the default grid.
const QVector& grid_real_values();
/// Imaginary coordinate values used by the default grid.
const QVector& grid_imaginary_values();

/// Rank 1: real parts k/12 with |k| <= 36 times the imaginary values (219 points).
/// Rank 2: the full product of the default values (729 points).
/// Higher rank: `samples` points drawn from the default values with a fixed seed.
std::vector<Parameter> parameter_grid(const RootSystem& rs, std::size_t samples = 150, std::uint64_t seed = kGridSeed);

/// C(lambda) and the gallery class of e agree as chamber sets.
PropertyResult check_chamber_union(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Members of [lambda] are exactly {w lambda : w^{-1} in [e]_lambda}, and every witness satisfies this.
PropertyResult check_class_via_gallery(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Strictly negative classes: trivial edge, full-rank coroots, lambda(alpha^vee) in (1/N(Sigma(lambda)))Z.
PropertyResult check_strict_consequences(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Strictly negative classes: N(Sigma(lambda)) and n_lattice divide N_Sigma.
PropertyResult check_nsigma_bound(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Integral-negative classes with a_mu = a: Im lambda = 0 and lambda vanishes on the edge.
PropertyResult check_integral_consequences(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Type A: strictly negative classes are singletons with integral pairings.
PropertyResult check_type_a_classes(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Sigma(w lambda) = w Sigma(lambda) for every w.
PropertyResult check_integral_equivariance(const RootSystem& rs, const std::vector<Parameter>& grid);
/// Strict verdicts are unchanged by lambda -> lambda + omega_0, omega_0 in span Sigma(lambda), when Sigma is unchanged.
PropertyResult check_shift_invariance(const RootSystem& rs, const std::vector<Parameter>& grid,
                                      std::uint64_t seed = kGridSeed);

/// BdS and brute force give the same multiset of (label, N) pairs.
PropertyResult check_enumeration_agreement(const RootSystem& rs);
/// dual(dual(rs)) has the same spec and Gram matrix, and dual(rs) has the expected spec.
PropertyResult check_dual_involution(const RootSystem& rs);
/// U A V = D, unimodular U and V, divisor chain, rank, on random matrices.
PropertyResult check_snf_random(std::size_t count, std::uint64_t seed = kGridSeed);

struct IndexExpectation {
  std::string type;
  Integer index;
};
/// Weight/root lattice indices at lambda = -rho.
const std::vector<IndexExpectation>& lattice_index_table();
PropertyResult check_lattice_index_table();

/// The suite behind the `verify` command.
std::vector<PropertyResult> run_verify_suite();

}  // namespace rootcomb
