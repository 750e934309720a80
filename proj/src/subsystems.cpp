#include "rootcomb/subsystems.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <utility>

#include "rootcomb/errors.hpp"

namespace rootcomb {

namespace {

QVector as_qvector(const Root& r) { return QVector(r.coords.begin(), r.coords.end()); }

QMatrix rows_of(const RootSystem& rs, const RootSet& set) {
  QMatrix m;
  m.reserve(set.size());
  for (auto idx : set) m.push_back(as_qvector(rs.root(idx)));
  return m;
}

std::optional<std::size_t> sum_index(const RootSystem& rs, std::size_t a, std::size_t b) {
  Root s = rs.root(a);
  for (std::size_t k = 0; k < rs.rank(); ++k) s.coords[k] += rs.root(b).coords[k];
  return rs.find(s);
}

// gamma(beta^vee)
int cartan_pairing(const RootSystem& rs, std::size_t gamma, std::size_t beta) {
  const auto& cw = rs.coroot_coweight(beta);
  int p = 0;
  for (std::size_t k = 0; k < rs.rank(); ++k) p += rs.root(gamma).coords[k] * cw[k];
  return p;
}

std::size_t reflect(const RootSystem& rs, std::size_t beta, std::size_t gamma) {
  const int p = cartan_pairing(rs, gamma, beta);
  Root r = rs.root(gamma);
  for (std::size_t k = 0; k < rs.rank(); ++k) r.coords[k] -= p * rs.root(beta).coords[k];
  auto idx = rs.find(r);
  if (!idx) throw InvariantError("reflection left the root system");
  return *idx;
}

// Root system generated by a set of roots under its own reflections.
RootSet generate_from_base(const RootSystem& rs, const RootSet& base) {
  std::set<std::size_t> seen;
  std::deque<std::size_t> queue;
  auto push = [&](std::size_t i) {
    if (seen.insert(i).second) queue.push_back(i);
  };
  for (auto b : base) {
    push(b);
    push(rs.negation(b));
  }
  while (!queue.empty()) {
    auto g = queue.front();
    queue.pop_front();
    for (auto b : base) push(reflect(rs, b, g));
  }
  return {seen.begin(), seen.end()};
}

// Connected components of a base under non-orthogonality.
std::vector<RootSet> base_components(const RootSystem& rs, const RootSet& base) {
  std::vector<int> comp(base.size(), -1);
  int count = 0;
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < base.size(); ++j) {
        if (comp[j] >= 0) continue;
        if (rs.inner(rs.root(base[i]), rs.root(base[j])) != 0) {
          comp[j] = count;
          q.push_back(j);
        }
      }
    }
    ++count;
  }
  std::vector<RootSet> out(count);
  for (std::size_t i = 0; i < base.size(); ++i) out[comp[i]].push_back(base[i]);
  return out;
}

RootSet roots_in_component(const RootSystem& rs, const RootSet& set, const RootSet& comp_base) {
  RootSet out;
  for (auto g : set) {
    for (auto b : comp_base) {
      if (rs.inner(rs.root(g), rs.root(b)) != 0) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

std::string classify_component(const RootSystem& rs, const RootSet& comp_roots, std::size_t k) {
  const std::size_t m = comp_roots.size();
  std::set<std::size_t> members(comp_roots.begin(), comp_roots.end());
  bool nonreduced = false;
  std::map<Rational, std::size_t> length_counts;
  for (auto g : comp_roots) {
    Root twice = rs.root(g);
    for (auto& c : twice.coords) c *= 2;
    auto t = rs.find(twice);
    if (t && members.count(*t)) nonreduced = true;
  }
  for (auto g : comp_roots) {
    bool divisible = false;
    const auto& c = rs.root(g).coords;
    if (std::all_of(c.begin(), c.end(), [](int x) { return x % 2 == 0; })) {
      Root half = rs.root(g);
      for (auto& x : half.coords) x /= 2;
      auto h = rs.find(half);
      divisible = h && members.count(*h);
    }
    if (!divisible) ++length_counts[rs.squared_length(g)];
  }
  const std::string r = std::to_string(k);
  if (nonreduced) return "BC" + r;
  if (length_counts.size() == 1) {
    if (m == k * (k + 1)) return "A" + r;
    if (k >= 4 && m == 2 * k * (k - 1)) return "D" + r;
    if (k == 6 && m == 72) return "E6";
    if (k == 7 && m == 126) return "E7";
    if (k == 8 && m == 240) return "E8";
  } else if (length_counts.size() == 2) {
    const Rational ratio = length_counts.rbegin()->first / length_counts.begin()->first;
    const std::size_t short_count = length_counts.begin()->second;
    const std::size_t long_count = length_counts.rbegin()->second;
    if (k == 2 && ratio == 3) return "G2";
    if (k == 4 && m == 48) return "F4";
    if (ratio == 2 && short_count == 2 * k) return "B" + r;
    if (ratio == 2 && long_count == 2 * k) return "C" + r;
  }
  throw InvariantError("unrecognized irreducible root system of rank " + r + " with " + std::to_string(m) + " roots");
}

RootSet indivisible_roots(const RootSystem& rs) {
  RootSet out;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs.is_indivisible(i)) out.push_back(i);
  return out;
}

// Roots whose double is not a root; in BC_n this is the C_n part.
RootSet non_multipliable_roots(const RootSystem& rs) {
  RootSet out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Root twice = rs.root(i);
    for (auto& c : twice.coords) c *= 2;
    if (!rs.find(twice)) out.push_back(i);
  }
  return out;
}

// Doubles and halves of the given roots that lie in rs.
RootSet multiples(const RootSystem& rs, const RootSet& set) {
  RootSet out;
  for (auto g : set) {
    Root twice = rs.root(g);
    for (auto& c : twice.coords) c *= 2;
    if (auto t = rs.find(twice)) out.push_back(*t);
    const auto& c = rs.root(g).coords;
    if (std::all_of(c.begin(), c.end(), [](int x) { return x % 2 == 0; })) {
      Root half = rs.root(g);
      for (auto& x : half.coords) x /= 2;
      if (auto h = rs.find(half)) out.push_back(*h);
    }
  }
  return out;
}

// Every way of adjoining multiples to a subset of the irreducible components of a reduced set.
std::vector<RootSet> multiple_variants(const RootSystem& rs, const RootSet& set) {
  const auto comps = base_components(rs, subsystem_base(rs, set));
  std::vector<RootSet> extra;
  for (const auto& comp : comps) extra.push_back(multiples(rs, roots_in_component(rs, set, comp)));
  std::set<RootSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << comps.size()); ++mask) {
    std::set<std::size_t> v(set.begin(), set.end());
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (mask >> c & 1u) v.insert(extra[c].begin(), extra[c].end());
    out.emplace(v.begin(), v.end());
  }
  return {out.begin(), out.end()};
}

// Iterated extended-diagram node removal starting from the indivisible roots.
std::vector<RootSet> bds_sets(const RootSystem& rs, const ConjugacyCanonicalizer* canon) {
  std::vector<RootSet> found;
  std::set<RootSet> seen;
  std::deque<RootSet> queue;
  auto push = [&](RootSet s) {
    RootSet key = canon ? canon->canonical(s) : s;
    if (!seen.insert(std::move(key)).second) return;
    found.push_back(s);
    queue.push_back(std::move(s));
  };
  const bool reduced = rs.size() == indivisible_roots(rs).size();
  push(indivisible_roots(rs));
  if (!reduced) push(non_multipliable_roots(rs));
  while (!queue.empty()) {
    RootSet cur = queue.front();
    queue.pop_front();
    const RootSet base = subsystem_base(rs, cur);
    for (const auto& comp : base_components(rs, base)) {
      const RootSet comp_roots = roots_in_component(rs, cur, comp);
      const AffineDiagram diag = affine_diagram(rs, comp);
      for (std::size_t drop = 0; drop < comp.size(); ++drop) {
        if (diag.marks[drop] == 1) continue;  // removal returns a conjugate of the component
        RootSet nb;
        for (std::size_t i = 0; i < diag.nodes.size(); ++i)
          if (i != drop) nb.push_back(diag.nodes[i]);
        const RootSet gen = generate_from_base(rs, nb);
        std::set<std::size_t> next(cur.begin(), cur.end());
        for (auto g : comp_roots) next.erase(g);
        next.insert(gen.begin(), gen.end());
        RootSet ns(next.begin(), next.end());
        if (ns.size() >= cur.size()) throw InvariantError("node removal did not shrink the subsystem");
        push(std::move(ns));
      }
    }
  }
  if (reduced) return found;
  std::vector<RootSet> all;
  for (const auto& s : found)
    for (auto& v : multiple_variants(rs, s)) all.push_back(std::move(v));
  return all;
}

std::vector<std::size_t> invert_correspondence(const std::vector<std::size_t>& corr) {
  std::vector<std::size_t> inv(corr.size());
  for (std::size_t i = 0; i < corr.size(); ++i) inv[corr[i]] = i;
  return inv;
}

RootSet map_set(const RootSet& s, const std::vector<std::size_t>& map) {
  RootSet out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(map[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string fingerprint(const RootSystem& rs) {
  std::string key = rs.name() + "|";
  for (std::size_t i = 0; i < rs.rank(); ++i) key += rs.gram()[i][i].get_str() + ",";
  return key;
}

}  // namespace

RootSet to_root_set(const RootSystem& rs, std::span<const Root> roots) {
  std::set<std::size_t> s;
  for (const auto& r : roots) s.insert(rs.index_of(r));
  return {s.begin(), s.end()};
}

std::vector<Root> to_roots(const RootSystem& rs, const RootSet& set) {
  std::vector<Root> out;
  for (auto i : set) out.push_back(rs.root(i));
  return out;
}

bool is_root_subsystem(const RootSystem& rs, std::span<const Root> roots) {
  return is_root_subsystem(rs, to_root_set(rs, roots));
}

bool is_root_subsystem(const RootSystem& rs, const RootSet& set) {
  std::vector<bool> in(rs.size(), false);
  for (auto i : set) {
    if (i >= rs.size()) throw InputError("root index out of range");
    in[i] = true;
  }
  for (auto a : set) {
    if (!in[rs.negation(a)]) return false;
    for (auto b : set) {
      if (!in[reflect(rs, a, b)]) return false;
      auto s = sum_index(rs, a, b);
      if (s && !in[*s]) return false;
    }
  }
  return true;
}

std::size_t subsystem_rank(const RootSystem& rs, const RootSet& set) { return rank(rows_of(rs, set), rs.rank()); }

Subsystem parabolic_closure(const RootSystem& rs, std::span<const Root> roots) {
  return parabolic_closure(rs, to_root_set(rs, roots));
}

Subsystem parabolic_closure(const RootSystem& rs, const RootSet& set) {
  Echelon span = rref(rows_of(rs, set), rs.rank());
  RootSet out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (span.rows.empty()) break;
    if (in_row_span(span.rows, as_qvector(rs.root(i)), rs.rank())) out.push_back(i);
  }
  return make_subsystem(rs, std::move(out));
}

RootSet subsystem_base(const RootSystem& rs, const RootSet& set) {
  std::set<std::size_t> pos;
  for (auto i : set)
    if (rs.is_positive(i)) pos.insert(i);
  RootSet base;
  for (auto b : pos) {
    bool decomposable = false;
    for (auto g : pos) {
      Root d = rs.root(b);
      for (std::size_t k = 0; k < rs.rank(); ++k) d.coords[k] -= rs.root(g).coords[k];
      auto idx = rs.find(d);
      if (idx && pos.count(*idx)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) base.push_back(b);
  }
  return base;
}

std::string subsystem_label(const RootSystem& rs, const RootSet& set) {
  if (set.empty()) return "";
  const RootSet base = subsystem_base(rs, set);
  RootSystemSpec spec;
  std::vector<std::string> parts;
  for (const auto& comp : base_components(rs, base)) {
    parts.push_back(classify_component(rs, roots_in_component(rs, set, comp), comp.size()));
  }
  // Reuse the spec canonicalization for ordering.
  for (const auto& p : parts) {
    RootSystemSpec one = RootSystemSpec::parse(p);
    spec.components.push_back(one.components.front());
  }
  return spec.to_string();
}

Subsystem make_subsystem(const RootSystem& rs, RootSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  Subsystem s;
  s.label = subsystem_label(rs, set);
  s.closed_in_sigma = is_root_subsystem(rs, set);
  RootSystem drs = dual(rs);
  s.closed_in_dual = is_root_subsystem(drs, map_set(set, coroot_correspondence(rs, drs)));
  s.roots = std::move(set);
  return s;
}

AffineDiagram affine_diagram(const RootSystem& rs, const RootSet& base) {
  const RootSet comp = generate_from_base(rs, base);
  std::set<std::size_t> members(comp.begin(), comp.end());
  std::optional<std::size_t> theta;
  for (auto g : comp) {
    if (!rs.is_positive(g)) continue;
    bool maximal = true;
    for (auto b : base) {
      auto s = sum_index(rs, g, b);
      if (s && members.count(*s)) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      if (theta) throw InvariantError("component is not irreducible: two maximal roots");
      theta = g;
    }
  }
  if (!theta) throw InvariantError("no highest root found");
  auto coeffs = express_in_rows(rows_of(rs, base), as_qvector(rs.root(*theta)), rs.rank());
  if (!coeffs) throw InvariantError("highest root outside the span of its base");
  AffineDiagram d;
  d.nodes = base;
  d.nodes.push_back(rs.negation(*theta));
  for (const auto& c : *coeffs) {
    if (!is_integer(c) || c <= 0) throw InvariantError("highest root coefficients must be positive integers");
    d.marks.push_back(static_cast<int>(c.get_num().get_si()));
  }
  d.marks.push_back(1);
  const std::size_t n = d.nodes.size();
  d.bonds.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.bonds[i][j] = cartan_pairing(rs, d.nodes[j], d.nodes[i]);
  return d;
}

std::vector<AffineDiagram> affine_diagrams(const RootSystem& rs) {
  const RootSet ind = indivisible_roots(rs);
  std::vector<AffineDiagram> out;
  for (const auto& comp : base_components(rs, subsystem_base(rs, ind))) out.push_back(affine_diagram(rs, comp));
  return out;
}

ConjugacyCanonicalizer::ConjugacyCanonicalizer(const RootSystem& rs) {
  for (const auto& w : weyl_group(rs)) perms_.push_back(root_permutation(rs, w));
}

RootSet ConjugacyCanonicalizer::canonical(const RootSet& set) const {
  RootSet best;
  RootSet img(set.size());
  bool first = true;
  for (const auto& p : perms_) {
    for (std::size_t i = 0; i < set.size(); ++i) img[i] = p[set[i]];
    std::sort(img.begin(), img.end());
    if (first || img < best) {
      best = img;
      first = false;
    }
  }
  return best;
}

std::vector<Subsystem> full_rank_subsystems(const RootSystem& rs, EnumerationMethod method) {
  const RootSystem drs = dual(rs);
  const auto corr = coroot_correspondence(rs, drs);
  const auto back = invert_correspondence(corr);
  const bool orbit_dedupe = rs.rank() <= 4;

  std::vector<RootSet> candidates;
  if (method == EnumerationMethod::Bds) {
    std::optional<ConjugacyCanonicalizer> canon, dcanon;
    if (orbit_dedupe) {
      canon.emplace(rs);
      dcanon.emplace(drs);
    }
    for (auto& s : bds_sets(rs, canon ? &*canon : nullptr)) candidates.push_back(std::move(s));
    for (auto& s : bds_sets(drs, dcanon ? &*dcanon : nullptr)) candidates.push_back(map_set(s, back));
    // Adjoining multiples in non-reduced types can leave a set closed in neither sense.
    std::erase_if(candidates, [&](const RootSet& s) {
      return !is_root_subsystem(rs, s) && !is_root_subsystem(drs, map_set(s, corr));
    });
  } else {
    if (rs.rank() > 3) {
      throw CapacityError("brute-force subsystem enumeration is limited to rank 3; " + rs.name() + " has rank " +
                          std::to_string(rs.rank()));
    }
    const std::size_t p = rs.num_positive();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
      RootSet s;
      for (std::size_t i = 0; i < p; ++i)
        if (mask & (std::uint64_t{1} << i)) s.push_back(i);
      if (subsystem_rank(rs, s) != rs.rank()) continue;
      const std::size_t half = s.size();
      for (std::size_t i = 0; i < half; ++i) s.push_back(rs.negation(s[i]));
      std::sort(s.begin(), s.end());
      if (is_root_subsystem(rs, s) || is_root_subsystem(drs, map_set(s, corr))) candidates.push_back(std::move(s));
    }
  }

  std::vector<Subsystem> out;
  if (orbit_dedupe) {
    ConjugacyCanonicalizer canon(rs);
    std::set<RootSet> keys;
    for (const auto& c : candidates) keys.insert(canon.canonical(c));
    for (const auto& k : keys) out.push_back(make_subsystem(rs, k));
  } else {
    std::set<std::pair<std::string, std::vector<Integer>>> keys;
    for (const auto& c : candidates) {
      Subsystem s = make_subsystem(rs, c);
      auto key = std::make_pair(s.label, coroot_quotient_divisors(rs, s.roots));
      if (keys.insert(std::move(key)).second) out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const Subsystem& a, const Subsystem& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    if (a.label != b.label) return a.label < b.label;
    return a.roots < b.roots;
  });
  return out;
}

std::vector<Integer> coroot_quotient_divisors(const RootSystem& rs, const RootSet& set) {
  if (subsystem_rank(rs, set) != rs.rank()) throw InputError("subsystem is not of full rank");
  auto coroots = [&](auto&& indices) {
    QMatrix g;
    for (auto i : indices) {
      const auto& cw = rs.coroot_coweight(i);
      g.emplace_back(cw.begin(), cw.end());
    }
    return lattice_from_generators(g, rs.rank());
  };
  std::vector<std::size_t> all(rs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return quotient_divisors(coroots(set), coroots(all));
}

Integer n_of_subsystem(const RootSystem& rs, const RootSet& set) {
  Integer n(1);
  for (const auto& d : coroot_quotient_divisors(rs, set)) n = lcm(n, d);
  return n;
}

Integer n_of_subsystem(const RootSystem& rs, const Subsystem& s) { return n_of_subsystem(rs, s.roots); }

NSigmaTable n_sigma_table(const RootSystem& rs) {
  static std::mutex mu;
  static std::map<std::string, NSigmaTable> cache;
  const std::string key = fingerprint(rs);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  NSigmaTable t;
  t.type = rs.name();
  t.n_sigma = 1;
  for (auto& s : full_rank_subsystems(rs, EnumerationMethod::Bds)) {
    Integer n = n_of_subsystem(rs, s);
    t.n_sigma = lcm(t.n_sigma, n);
    t.entries.push_back({std::move(s), n});
  }
  std::lock_guard lock(mu);
  cache.emplace(key, t);  // concurrent writers compute identical tables
  return t;
}

Integer n_sigma(const RootSystem& rs) { return n_sigma_table(rs).n_sigma; }

}  // namespace rootcomb
