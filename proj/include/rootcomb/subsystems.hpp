#pragma once

// Root subsystems: the closure axioms, parabolic closures, enumeration of
// full-rank subsystems (iterated extended-diagram node removal, or exhaustive
// search at small rank) and the coroot-lattice constants N(S) and N_Sigma.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rootcomb/lattice.hpp"
#include "rootcomb/root_system.hpp"

namespace rootcomb {

using RootSet = std::vector<std::size_t>;  // sorted indices into RootSystem::roots()

struct Subsystem {
  RootSet roots;
  std::string label;             // canonical type of the abstract root system, "" when empty
  bool closed_in_sigma = false;  // S satisfies both subsystem axioms inside Sigma
  bool closed_in_dual = false;   // S^vee satisfies both axioms inside Sigma^vee

  std::size_t size() const { return roots.size(); }
  bool operator==(const Subsystem&) const = default;
};

enum class EnumerationMethod { Bds, BruteForce };

RootSet to_root_set(const RootSystem& rs, std::span<const Root> roots);
std::vector<Root> to_roots(const RootSystem& rs, const RootSet& set);

/// Closed under negation, a root system in its span (stable under its own
/// reflections), and alpha + beta in Sigma implies alpha + beta in S
/// (alpha = beta included). Throws InputError for elements outside Sigma.
bool is_root_subsystem(const RootSystem& rs, std::span<const Root> roots);
bool is_root_subsystem(const RootSystem& rs, const RootSet& set);

/// span(S) intersected with Sigma.
Subsystem parabolic_closure(const RootSystem& rs, std::span<const Root> roots);
Subsystem parabolic_closure(const RootSystem& rs, const RootSet& set);

/// Rank of span(S).
std::size_t subsystem_rank(const RootSystem& rs, const RootSet& set);

/// Simple roots of the positive system S cap Sigma^+ (indecomposable elements).
RootSet subsystem_base(const RootSystem& rs, const RootSet& set);

/// Canonical type string of S as an abstract root system, e.g. "A1xA1".
/// S must be stable under its own reflections.
std::string subsystem_label(const RootSystem& rs, const RootSet& set);

Subsystem make_subsystem(const RootSystem& rs, RootSet set);

/// Extended Dynkin diagram of one irreducible reduced subsystem given by its base.
struct AffineDiagram {
  RootSet nodes;            // the base followed by the lowest root
  std::vector<int> marks;   // highest-root coefficients; 1 for the lowest-root node
  IntMatrix bonds;          // bonds[i][j] = nodes_j(nodes_i^vee)
};

/// One diagram per irreducible component of the indivisible roots of rs.
std::vector<AffineDiagram> affine_diagrams(const RootSystem& rs);
AffineDiagram affine_diagram(const RootSystem& rs, const RootSet& irreducible_base);

/// Full-rank subsystems up to W-conjugacy: sets S with S closed in Sigma or S^vee
/// closed in Sigma^vee. Brute force is refused (CapacityError) above rank 3.
std::vector<Subsystem> full_rank_subsystems(const RootSystem& rs, EnumerationMethod method);

/// Elementary divisors of Z[Sigma^vee] / Z[S^vee]. S must have full rank.
std::vector<Integer> coroot_quotient_divisors(const RootSystem& rs, const RootSet& set);
/// lcm of coroot_quotient_divisors.
Integer n_of_subsystem(const RootSystem& rs, const RootSet& set);
Integer n_of_subsystem(const RootSystem& rs, const Subsystem& s);

struct NSigmaEntry {
  Subsystem subsystem;
  Integer n;
};

struct NSigmaTable {
  std::string type;
  Integer n_sigma;
  std::vector<NSigmaEntry> entries;
};

/// lcm of N(S) over full_rank_subsystems(rs, Bds). Memoized per spec string.
NSigmaTable n_sigma_table(const RootSystem& rs);
Integer n_sigma(const RootSystem& rs);

/// Conjugacy key: the lexicographically smallest W-image of S (needs |W| enumeration).
class ConjugacyCanonicalizer {
 public:
  explicit ConjugacyCanonicalizer(const RootSystem& rs);
  RootSet canonical(const RootSet& set) const;

 private:
  std::vector<std::vector<std::size_t>> perms_;
};

}  // namespace rootcomb
