#pragma once

// Finite root systems (types A-G, non-reduced BC, and direct products),
// their Weyl groups and the exact pairings between weights and coroots.
//
// Coordinate conventions used throughout the library:
//   * roots and other elements of a* are written in the simple-root basis;
//   * parameters (weights) are written in the fundamental-weight basis, so
//     lambda(alpha_i^vee) is the i-th coordinate;
//   * vectors X of a (the space the chambers live in) are written in the
//     fundamental-coweight basis, so alpha_j(X) = X_j and the dominant
//     chamber C is the nonnegative orthant.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rootcomb/linalg.hpp"

namespace rootcomb {

enum class Family { A, B, BC, C, D, E, F, G };

std::string_view family_name(Family f);

struct ComponentSpec {
  Family family;
  int rank;
  auto operator<=>(const ComponentSpec&) const = default;
};

/// A product of irreducible types, e.g. "A3xBC2".
struct RootSystemSpec {
  std::vector<ComponentSpec> components;

  /// Parses and canonicalizes (components sorted by family, then rank).
  static RootSystemSpec parse(std::string_view text);
  /// Throws InputError when a family/rank combination does not exist.
  void validate() const;
  RootSystemSpec canonical() const;
  std::string to_string() const;
  int rank() const;

  auto operator<=>(const RootSystemSpec&) const = default;
};

/// Integer coordinates in the simple-root basis.
struct Root {
  std::vector<int> coords;

  int height() const;
  Root operator-() const;
  auto operator<=>(const Root&) const = default;
};

/// Element of W stored extensionally by the images of the simple roots.
struct WeylElement {
  std::vector<Root> images;
  auto operator<=>(const WeylElement&) const = default;
};

struct ComplexRational {
  Rational re;
  Rational im;
  bool operator==(const ComplexRational&) const = default;
};

/// A point of a*_C in fundamental-weight coordinates: lambda(alpha_i^vee) = re_i + i im_i.
struct Parameter {
  QVector re;
  QVector im;

  static Parameter real(QVector re);
  std::size_t dim() const { return re.size(); }
  bool is_real() const { return is_zero(im); }
  auto operator<=>(const Parameter&) const = default;
};

using IntMatrix = std::vector<std::vector<int>>;

class RootSystem {
 public:
  struct Component {
    Family family;
    int rank;
    std::size_t offset;  // first simple-root index of this component
  };

  const RootSystemSpec& spec() const { return spec_; }
  std::string name() const { return spec_.to_string(); }
  std::size_t rank() const { return rank_; }
  /// Components in simple-root order (may differ from the canonical spec order).
  const std::vector<Component>& components() const { return components_; }

  /// <alpha_i, alpha_j>.
  const QMatrix& gram() const { return gram_; }
  /// A_ij = alpha_j(alpha_i^vee).
  const IntMatrix& cartan() const { return cartan_; }
  /// Fundamental coweights written in the simple-coroot basis (rows of A^{-1}).
  const QMatrix& fundamental_coweights() const { return cartan_inverse_; }
  /// Simple roots i for which 2 alpha_i is also a root (non-reduced components).
  const std::vector<bool>& doubled() const { return doubled_; }

  /// All roots: the positive ones (height, then lexicographic) followed by their negatives.
  const std::vector<Root>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  std::span<const Root> positive_roots() const { return {roots_.data(), num_positive()}; }
  const Root& root(std::size_t idx) const { return roots_[idx]; }
  Root simple_root(std::size_t i) const;

  std::optional<std::size_t> find(const Root& r) const;
  /// Index of r; throws InputError when r is not a root.
  std::size_t index_of(const Root& r) const;
  bool is_positive(std::size_t idx) const { return idx < num_positive(); }
  std::size_t negation(std::size_t idx) const;
  bool is_indivisible(std::size_t idx) const { return indivisible_[idx]; }
  const Rational& squared_length(std::size_t idx) const { return sq_len_[idx]; }

  /// beta^vee in the simple-coroot basis.
  const QVector& coroot_coefficients(std::size_t idx) const { return coroot_coeffs_[idx]; }
  /// beta^vee in fundamental-coweight coordinates: entry k is alpha_k(beta^vee), always an integer.
  const std::vector<int>& coroot_coweight(std::size_t idx) const { return coroot_cw_[idx]; }

  Rational inner(const Root& a, const Root& b) const;
  Rational inner(const QVector& a, const QVector& b) const;

  /// Convert a form on a between fundamental-weight and simple-root coordinates.
  QVector weight_to_root_coords(const QVector& weight) const;
  QVector root_to_weight_coords(const QVector& root_coords) const;
  QVector root_to_weight_coords(const Root& r) const;

  friend RootSystem build_root_system(const RootSystemSpec& spec);
  friend RootSystem dual(const RootSystem& rs);

 private:
  RootSystem(std::vector<Component> comps, QMatrix gram, std::vector<bool> doubled);

  RootSystemSpec spec_;
  std::size_t rank_ = 0;
  std::vector<Component> components_;
  QMatrix gram_;
  IntMatrix cartan_;
  QMatrix cartan_q_;
  QMatrix cartan_inverse_;
  std::vector<bool> doubled_;
  std::vector<Root> roots_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<bool> indivisible_;
  std::vector<Rational> sq_len_;
  std::vector<QVector> coroot_coeffs_;
  std::vector<std::vector<int>> coroot_cw_;
};

RootSystem build_root_system(const RootSystemSpec& spec);
RootSystem build_root_system(std::string_view spec);

/// lambda(beta^vee) = 2<lambda, beta>/<beta, beta>. Throws InputError when beta is not a root.
ComplexRational pairing(const RootSystem& rs, const Parameter& lambda, const Root& beta);
ComplexRational pairing(const RootSystem& rs, const Parameter& lambda, std::size_t root_idx);

/// The dual system: simple roots alpha_i^vee (or (2 alpha_i)^vee on non-reduced
/// nodes), rescaled per component to the library's length normalization.
RootSystem dual(const RootSystem& rs);

/// For each root beta of rs, the index of beta^vee among the roots of dual(rs).
std::vector<std::size_t> coroot_correspondence(const RootSystem& rs, const RootSystem& dual_rs);

/// Half the sum of the positive roots, in fundamental-weight coordinates.
Parameter rho(const RootSystem& rs);

/// |W| from the classical order formulas.
Integer weyl_group_order(const RootSystemSpec& spec);

inline constexpr std::uint64_t kDefaultWeylLimit = 1'000'000;

/// Closure of the simple reflections, in breadth-first order from e (right
/// multiplication by s_1..s_r). Throws CapacityError above `limit` elements.
std::vector<WeylElement> weyl_group(const RootSystem& rs, std::uint64_t limit = kDefaultWeylLimit);

WeylElement identity_element(const RootSystem& rs);
WeylElement simple_reflection(const RootSystem& rs, std::size_t i);
/// u o v.
WeylElement compose(const RootSystem& rs, const WeylElement& u, const WeylElement& v);
WeylElement inverse(const RootSystem& rs, const WeylElement& w);
/// Reduced word (0-based simple indices) with w = s_{i1} ... s_{ik}.
std::vector<std::size_t> reduced_word(const RootSystem& rs, const WeylElement& w);
WeylElement from_word(const RootSystem& rs, std::span<const std::size_t> word);

Root act(const RootSystem& rs, const WeylElement& w, const Root& r);
QVector act(const RootSystem& rs, const WeylElement& w, const QVector& root_coords);
Parameter act(const RootSystem& rs, const WeylElement& w, const Parameter& lambda);
/// w acting on a vector of a given in fundamental-coweight coordinates.
QVector act_on_coweight(const RootSystem& rs, const WeylElement& w, const QVector& x);

/// w as a permutation of root indices.
std::vector<std::size_t> root_permutation(const RootSystem& rs, const WeylElement& w);

}  // namespace rootcomb
