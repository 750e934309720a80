#include "rootcomb/checks.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "rootcomb/lattice.hpp"
#include "rootcomb/negativity.hpp"
#include "rootcomb/params.hpp"
#include "rootcomb/subsystems.hpp"

namespace rootcomb {

namespace {

constexpr std::size_t kMaxSamples = 5;

std::string describe(const Parameter& p) {
  std::ostringstream os;
  os << "re=(";
  for (std::size_t i = 0; i < p.re.size(); ++i) os << (i ? "," : "") << to_string(p.re[i]);
  os << ") im=(";
  for (std::size_t i = 0; i < p.im.size(); ++i) os << (i ? "," : "") << to_string(p.im[i]);
  os << ")";
  return os.str();
}

// Runs check(i) for every i, in parallel; an empty string means the case passed.
template <class F>
PropertyResult sweep(std::string property, std::string scope, std::size_t n, F check) {
  std::vector<std::string> outcome(n);
  std::vector<char> counted(n, 1);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) {
          auto r = check(i);
          if (!r) {
            counted[i] = 0;
          } else {
            outcome[i] = std::move(*r);
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  PropertyResult res{std::move(property), std::move(scope), 0, 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (!counted[i]) continue;
    ++res.cases;
    if (outcome[i].empty()) continue;
    ++res.failures;
    if (res.failure_samples.size() < kMaxSamples) res.failure_samples.push_back(outcome[i]);
  }
  return res;
}

// nullopt: case not applicable; "" pass; otherwise failure text.
using Outcome = std::optional<std::string>;

std::set<Parameter> orbit_through_gallery(const RootSystem& rs, const Parameter& lambda) {
  std::set<Parameter> out;
  for (const auto& u : gallery_class(rs, lambda).chambers) out.insert(act(rs, inverse(rs, u), lambda));
  return out;
}

bool all_pairings_in(const RootSystem& rs, const Parameter& lambda, const Integer& n) {
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (!in_fraction_lattice(pairing(rs, lambda, i), n)) return false;
  return true;
}

}  // namespace

const QVector& grid_real_values() {
  static const QVector v{Rational(0),    Rational(1, 3), Rational(-1, 3), Rational(1, 2), Rational(-1, 2),
                         Rational(1),    Rational(-1),   Rational(3, 2),  Rational(-3, 2)};
  return v;
}

const QVector& grid_imaginary_values() {
  static const QVector v{Rational(0), Rational(1, 2), Rational(-1, 2)};
  return v;
}

std::vector<Parameter> parameter_grid(const RootSystem& rs, std::size_t samples, std::uint64_t seed) {
  const std::size_t r = rs.rank();
  const auto& re = grid_real_values();
  const auto& im = grid_imaginary_values();
  std::vector<Parameter> out;
  if (r == 1) {
    for (int k = -36; k <= 36; ++k)
      for (const auto& y : im) out.push_back(Parameter{{Rational(k, 12)}, {y}});
    for (auto& p : out) p.re[0].canonicalize();
  } else if (r == 2) {
    for (const auto& a : re)
      for (const auto& ai : im)
        for (const auto& b : re)
          for (const auto& bi : im) out.push_back(Parameter{{a, b}, {ai, bi}});
  } else {
    // Raw engine output keeps the sample identical across standard libraries.
    std::mt19937_64 gen(seed);
    std::set<Parameter> seen;
    while (out.size() < samples) {
      Parameter p{zero_vector(r), zero_vector(r)};
      for (std::size_t i = 0; i < r; ++i) {
        p.re[i] = re[gen() % re.size()];
        p.im[i] = (gen() % 4 == 0) ? im[1 + gen() % 2] : Rational(0);
      }
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  return out;
}

PropertyResult check_chamber_union(const RootSystem& rs, const std::vector<Parameter>& grid) {
  return sweep("chamber-union-equals-gallery-class", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const auto g = gallery_class(rs, grid[i]);
    const auto c = c_lambda(rs, grid[i]);
    if (g.same_set(c)) return std::string();
    return describe(grid[i]) + ": gallery class has " + std::to_string(g.chambers.size()) + " chambers, C(lambda) has " +
           std::to_string(c.chambers.size());
  });
}

PropertyResult check_class_via_gallery(const RootSystem& rs, const std::vector<Parameter>& grid) {
  return sweep("class-equals-gallery-orbit", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const auto cls = equivalence_class(rs, lambda);
    std::set<Parameter> members;
    for (const auto& m : cls.members) members.insert(m.mu);
    if (members != orbit_through_gallery(rs, lambda))
      return describe(lambda) + ": class has " + std::to_string(members.size()) + " members, gallery orbit differs";
    const auto gallery = gallery_class(rs, lambda);
    for (const auto& m : cls.members) {
      if (act(rs, m.w, lambda) != m.mu) return describe(lambda) + ": witness does not map lambda to its member";
      if (!gallery.contains(inverse(rs, m.w))) return describe(lambda) + ": witness inverse is outside the gallery class";
    }
    return std::string();
  });
}

PropertyResult check_strict_consequences(const RootSystem& rs, const std::vector<Parameter>& grid) {
  const SubspaceAssignment none;
  return sweep("strict-negativity-consequences", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const auto rep = verify_fundamental_lemma(rs, lambda, NegativityMode::Strict, none);
    if (rep.vacuous) return std::nullopt;
    if (!rep.edge_trivial.value_or(false)) return describe(lambda) + ": edge is not trivial";
    if (!rep.coroots_full_rank.value_or(false)) return describe(lambda) + ": Sigma(lambda)^vee is not full rank";
    if (!rep.n_integral_subsystem) return describe(lambda) + ": N(Sigma(lambda)) unavailable";
    if (!all_pairings_in(rs, lambda, *rep.n_integral_subsystem))
      return describe(lambda) + ": a pairing is outside (1/" + to_string(*rep.n_integral_subsystem) + ")Z";
    if (!rep.containing_member) return describe(lambda) + ": no class member contains the edge";
    return std::string();
  });
}

PropertyResult check_nsigma_bound(const RootSystem& rs, const std::vector<Parameter>& grid) {
  const SubspaceAssignment none;
  const Integer bound = n_sigma(rs);
  return sweep("nsigma-upper-bound", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const auto rep = verify_fundamental_lemma(rs, lambda, NegativityMode::Strict, none);
    if (rep.vacuous || !rep.n_integral_subsystem) return std::nullopt;
    if (bound % *rep.n_integral_subsystem != 0)
      return describe(lambda) + ": N(Sigma(lambda)) = " + to_string(*rep.n_integral_subsystem) +
             " does not divide N_Sigma = " + to_string(bound);
    if (!all_pairings_in(rs, lambda, bound))
      return describe(lambda) + ": a pairing is outside (1/" + to_string(bound) + ")Z";
    return std::string();
  });
}

PropertyResult check_integral_consequences(const RootSystem& rs, const std::vector<Parameter>& grid) {
  const auto whole = SubspaceAssignment::whole_space(rs.rank());
  return sweep("integral-negativity-consequences", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const auto rep = verify_fundamental_lemma(rs, lambda, NegativityMode::Integral, whole);
    if (rep.vacuous) return std::nullopt;
    if (!rep.lambda_real.value_or(false)) return describe(lambda) + ": Im lambda is nonzero";
    if (!rep.re_lambda_on_edge_zero || !rep.im_lambda_on_edge_zero.value_or(false))
      return describe(lambda) + ": lambda does not vanish on the edge";
    if (!rep.containing_member) return describe(lambda) + ": no class member contains the edge";
    return std::string();
  });
}

PropertyResult check_type_a_classes(const RootSystem& rs, const std::vector<Parameter>& grid) {
  return sweep("type-a-strict-classes-are-integral", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const auto cn = check_class_negativity(rs, lambda, NegativityMode::Strict, {});
    if (!cn.all_negative) return std::nullopt;
    if (cn.cls.members.size() != 1)
      return describe(lambda) + ": class has " + std::to_string(cn.cls.members.size()) + " members";
    if (!all_pairings_in(rs, lambda, 1)) return describe(lambda) + ": a pairing is not an integer";
    return std::string();
  });
}

PropertyResult check_integral_equivariance(const RootSystem& rs, const std::vector<Parameter>& grid) {
  const auto group = weyl_group(rs);
  return sweep("integral-roots-equivariance", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const RootSet base = integral_roots(rs, lambda);
    for (const auto& w : group) {
      const auto perm = root_permutation(rs, w);
      RootSet moved;
      for (auto k : base) moved.push_back(perm[k]);
      std::sort(moved.begin(), moved.end());
      if (moved != integral_roots(rs, act(rs, w, lambda))) return describe(lambda) + ": Sigma(w lambda) != w Sigma(lambda)";
    }
    return std::string();
  });
}

PropertyResult check_shift_invariance(const RootSystem& rs, const std::vector<Parameter>& grid, std::uint64_t seed) {
  // Shifts are drawn sequentially so the result does not depend on scheduling.
  std::mt19937_64 gen(seed);
  std::vector<QVector> coeffs(grid.size());
  for (auto& c : coeffs) {
    c = zero_vector(rs.rank());
    for (auto& x : c) x = Rational(static_cast<long>(gen() % 7) - 3, (gen() % 3 == 0) ? 2 : 1);
  }
  return sweep("strict-verdict-shift-invariance", rs.name(), grid.size(), [&](std::size_t i) -> Outcome {
    const Parameter& lambda = grid[i];
    const RootSet integral = integral_roots(rs, lambda);
    NegativityQuery q{lambda, NegativityMode::Strict, std::nullopt, 1};
    const auto before = check_negativity(rs, q);
    // omega_0 = sum_k c_k beta_k over the basis of span Sigma(lambda).
    QVector omega0 = zero_vector(rs.rank());
    for (std::size_t k = 0; k < before.omega_basis.size(); ++k)
      for (std::size_t j = 0; j < rs.rank(); ++j) omega0[j] += coeffs[i][k] * rs.root(before.omega_basis[k]).coords[j];
    Parameter shifted = lambda;
    const QVector w0 = rs.root_to_weight_coords(omega0);
    for (std::size_t j = 0; j < rs.rank(); ++j) shifted.re[j] += w0[j];
    if (integral_roots(rs, shifted) != integral) return std::nullopt;
    q.lambda = shifted;
    const auto after = check_negativity(rs, q);
    if (before.feasible != after.feasible) return describe(lambda) + ": strict verdict changes under a shift";
    if (before.feasible) {
      // Re-witness: omega + omega_0 certifies the shifted parameter with the same generator values.
      const QVector omega = witness_form(rs, before);
      const QVector rc = rs.weight_to_root_coords(shifted.re);
      for (std::size_t j = 0; j < rs.rank(); ++j)
        if (rc[j] - omega[j] - omega0[j] >= 0) return describe(lambda) + ": shifted witness fails";
    }
    return std::string();
  });
}

PropertyResult check_enumeration_agreement(const RootSystem& rs) {
  PropertyResult res{"bds-matches-brute-force", rs.name(), 1, 0, {}};
  auto key = [&](const std::vector<Subsystem>& subs) {
    std::multiset<std::pair<std::string, std::string>> out;
    for (const auto& s : subs) out.insert({s.label, to_string(n_of_subsystem(rs, s))});
    return out;
  };
  const auto a = key(full_rank_subsystems(rs, EnumerationMethod::Bds));
  const auto b = key(full_rank_subsystems(rs, EnumerationMethod::BruteForce));
  if (a != b) {
    res.failures = 1;
    std::ostringstream os;
    os << "bds:";
    for (const auto& [l, n] : a) os << " " << l << "/" << n;
    os << "; brute force:";
    for (const auto& [l, n] : b) os << " " << l << "/" << n;
    res.failure_samples.push_back(os.str());
  }
  return res;
}

PropertyResult check_dual_involution(const RootSystem& rs) {
  PropertyResult res{"dual-involution", rs.name(), 1, 0, {}};
  const RootSystem d = dual(rs);
  const RootSystem dd = dual(d);
  if (dd.name() != rs.name() || dd.gram() != rs.gram()) {
    res.failures = 1;
    res.failure_samples.push_back("dual(dual(" + rs.name() + ")) = " + dd.name());
  }
  if (d.size() != rs.size()) {
    res.failures = 1;
    res.failure_samples.push_back("dual has a different number of roots");
  }
  return res;
}

PropertyResult check_snf_random(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<IntegerMatrix> mats;
  for (std::size_t k = 0; k < count; ++k) {
    IntegerMatrix m(1 + gen() % 6, 1 + gen() % 6);
    for (auto& x : m.data) x = static_cast<long>(gen() % 19) - 9;
    mats.push_back(std::move(m));
  }
  return sweep("snf-soundness", "random", mats.size(), [&](std::size_t i) -> Outcome {
    const IntegerMatrix& a = mats[i];
    const SNFResult s = smith_normal_form(a);
    if (!(s.U * a * s.V == s.D)) return "U A V != D for matrix " + std::to_string(i);
    const Integer du = determinant(s.U), dv = determinant(s.V);
    if (abs(du) != 1 || abs(dv) != 1) return "non-unimodular factor for matrix " + std::to_string(i);
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < a.rows; ++r)
      for (std::size_t c = 0; c < a.cols; ++c) {
        const Integer& v = s.D.data[r * a.cols + c];
        if (r != c && v != 0) return "D is not diagonal for matrix " + std::to_string(i);
      }
    for (std::size_t k = 0; k < s.divisors.size(); ++k) {
      if (s.divisors[k] < 0) return "negative divisor for matrix " + std::to_string(i);
      if (s.divisors[k] != 0) ++nonzero;
      if (k + 1 < s.divisors.size()) {
        const Integer& d = s.divisors[k];
        const Integer& e = s.divisors[k + 1];
        if (d == 0 ? e != 0 : e % d != 0) return "divisor chain broken for matrix " + std::to_string(i);
      }
    }
    QMatrix q(a.rows, zero_vector(a.cols));
    for (std::size_t r = 0; r < a.rows; ++r)
      for (std::size_t c = 0; c < a.cols; ++c) q[r][c] = a.data[r * a.cols + c];
    if (nonzero != rank(q, a.cols)) return "nonzero divisors do not match the rank for matrix " + std::to_string(i);
    return std::string();
  });
}

const std::vector<IndexExpectation>& lattice_index_table() {
  static const std::vector<IndexExpectation> t{
      {"A1", 2}, {"A2", 3}, {"A3", 4}, {"A4", 5}, {"B1", 2}, {"B2", 2}, {"B3", 2},
      {"C1", 2}, {"C2", 2}, {"C3", 2}, {"D4", 4}, {"G2", 1},
  };
  return t;
}

PropertyResult check_lattice_index_table() {
  const auto& table = lattice_index_table();
  return sweep("weight-root-index-table", "classical", table.size(), [&](std::size_t i) -> Outcome {
    const RootSystem rs = build_root_system(table[i].type);
    Parameter lambda = rho(rs);
    for (auto& x : lambda.re) x = -x;
    if (integral_roots(rs, lambda).size() != rs.size()) return table[i].type + ": Sigma(-rho) is not Sigma";
    const auto rep = verify_fundamental_lemma(rs, lambda, NegativityMode::Strict, {});
    if (rep.n_lattice != table[i].index)
      return table[i].type + ": index " + to_string(rep.n_lattice) + ", expected " + to_string(table[i].index);
    return std::string();
  });
}

std::vector<PropertyResult> run_verify_suite() {
  std::vector<PropertyResult> out;
  for (const char* t : {"A2", "B2", "G2", "BC1"}) {
    const RootSystem rs = build_root_system(t);
    const auto grid = parameter_grid(rs);
    out.push_back(check_chamber_union(rs, grid));
    out.push_back(check_class_via_gallery(rs, grid));
  }
  for (const char* t : {"A1", "A2", "B2", "G2", "BC1"}) {
    const RootSystem rs = build_root_system(t);
    const auto grid = parameter_grid(rs);
    out.push_back(check_strict_consequences(rs, grid));
    out.push_back(check_nsigma_bound(rs, grid));
    out.push_back(check_integral_consequences(rs, grid));
  }
  for (const char* t : {"A1", "A2", "A3"}) {
    const RootSystem rs = build_root_system(t);
    out.push_back(check_type_a_classes(rs, parameter_grid(rs)));
  }
  for (const char* t : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "BC1", "BC2"})
    out.push_back(check_enumeration_agreement(build_root_system(t)));
  out.push_back(check_snf_random(1000));
  out.push_back(check_lattice_index_table());
  for (const char* t : {"A2", "B2", "G2", "BC1"}) {
    const RootSystem rs = build_root_system(t);
    const auto grid = parameter_grid(rs);
    out.push_back(check_integral_equivariance(rs, grid));
    out.push_back(check_shift_invariance(rs, grid));
  }
  for (const char* t : {"A2", "B2", "B3", "C3", "G2", "F4", "BC2", "A1xG2"})
    out.push_back(check_dual_involution(build_root_system(t)));
  return out;
}

}  // namespace rootcomb
