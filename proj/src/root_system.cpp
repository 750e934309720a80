#include "rootcomb/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <unordered_map>
#include <utility>

#include "rootcomb/errors.hpp"

namespace rootcomb {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::BC: return "BC";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
  }
  return "?";
}

namespace {

std::optional<Family> family_from(std::string_view s) {
  static const std::pair<std::string_view, Family> table[] = {
      {"A", Family::A}, {"B", Family::B}, {"BC", Family::BC}, {"C", Family::C},
      {"D", Family::D}, {"E", Family::E}, {"F", Family::F},   {"G", Family::G}};
  for (const auto& [name, fam] : table)
    if (name == s) return fam;
  return std::nullopt;
}

}  // namespace

RootSystemSpec RootSystemSpec::parse(std::string_view text) {
  if (text.empty()) throw InputError("empty root system type");
  RootSystemSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto sep = text.find('x', start);
    std::string_view tok = text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
    std::size_t split = 0;
    while (split < tok.size() && std::isupper(static_cast<unsigned char>(tok[split]))) ++split;
    std::string_view fam = tok.substr(0, split);
    std::string_view digits = tok.substr(split);
    auto family = family_from(fam);
    if (!family || digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw InputError("unknown root system component '" + std::string(tok) + "'");
    }
    spec.components.push_back({*family, std::stoi(std::string(digits))});
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  spec.validate();
  return spec.canonical();
}

void RootSystemSpec::validate() const {
  if (components.empty()) throw InputError("root system needs at least one component");
  for (const auto& c : components) {
    const int n = c.rank;
    bool ok = n >= 1;
    switch (c.family) {
      case Family::A:
      case Family::B:
      case Family::C:
      case Family::BC: break;
      case Family::D: ok = n >= 2; break;
      case Family::E: ok = n >= 6 && n <= 8; break;
      case Family::F: ok = n == 4; break;
      case Family::G: ok = n == 2; break;
    }
    if (!ok) {
      throw InputError("invalid rank " + std::to_string(n) + " for family " + std::string(family_name(c.family)));
    }
  }
}

RootSystemSpec RootSystemSpec::canonical() const {
  RootSystemSpec out = *this;
  std::sort(out.components.begin(), out.components.end());
  return out;
}

std::string RootSystemSpec::to_string() const {
  std::string s;
  for (const auto& c : canonical().components) {
    if (!s.empty()) s += 'x';
    s += family_name(c.family);
    s += std::to_string(c.rank);
  }
  return s;
}

int RootSystemSpec::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

int Root::height() const {
  int h = 0;
  for (int c : coords) h += c;
  return h;
}

Root Root::operator-() const {
  Root r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

Parameter Parameter::real(QVector re) {
  Parameter p;
  p.im = zero_vector(re.size());
  p.re = std::move(re);
  return p;
}

namespace {

struct ComponentData {
  std::vector<Rational> lengths;  // squared lengths of simple roots
  std::vector<std::pair<int, int>> edges;
  std::vector<bool> doubled;
};

ComponentData component_data(Family f, int n) {
  ComponentData d;
  d.lengths.assign(n, Rational(2));
  d.doubled.assign(n, false);
  auto chain = [&] {
    for (int i = 0; i + 1 < n; ++i) d.edges.emplace_back(i, i + 1);
  };
  switch (f) {
    case Family::A: chain(); break;
    case Family::B:
      chain();
      if (n >= 2) {
        for (int i = 0; i + 1 < n; ++i) d.lengths[i] = 4;
      }
      break;
    case Family::C:
      chain();
      if (n >= 2) d.lengths[n - 1] = 4;
      break;
    case Family::BC:
      chain();
      d.lengths[n - 1] = 1;
      d.doubled[n - 1] = true;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) d.edges.emplace_back(i, i + 1);
      if (n >= 3) d.edges.emplace_back(n - 3, n - 1);
      break;
    case Family::E: {
      const std::pair<int, int> e8[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
      for (auto [a, b] : e8)
        if (a < n && b < n) d.edges.emplace_back(a, b);
      break;
    }
    case Family::F:
      chain();
      d.lengths = {4, 4, 2, 2};
      break;
    case Family::G:
      chain();
      d.lengths = {6, 2};
      break;
  }
  return d;
}

Family dual_family(Family f) {
  if (f == Family::B) return Family::C;
  if (f == Family::C) return Family::B;
  return f;
}

WeylElement right_mult_simple(const RootSystem& rs, const WeylElement& w, std::size_t i) {
  // (w s_i)(alpha_j) = w(alpha_j) - A_ij w(alpha_i)
  WeylElement out = w;
  const auto& a = rs.cartan();
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    const int c = a[i][j];
    if (c == 0) continue;
    for (std::size_t k = 0; k < rs.rank(); ++k) out.images[j].coords[k] -= c * w.images[i].coords[k];
  }
  return out;
}

std::vector<int> flatten(const WeylElement& w) {
  std::vector<int> key;
  for (const auto& r : w.images) key.insert(key.end(), r.coords.begin(), r.coords.end());
  return key;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x + 0x9e3779b9);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

RootSystem::RootSystem(std::vector<Component> comps, QMatrix gram, std::vector<bool> doubled)
    : components_(std::move(comps)), gram_(std::move(gram)), doubled_(std::move(doubled)) {
  for (const auto& c : components_) spec_.components.push_back({c.family, c.rank});
  spec_ = spec_.canonical();
  rank_ = gram_.size();
  const std::size_t r = rank_;

  cartan_.assign(r, std::vector<int>(r, 0));
  cartan_q_.assign(r, zero_vector(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Rational v = 2 * gram_[i][j] / gram_[i][i];
      if (!is_integer(v)) throw InvariantError("non-integral Cartan entry");
      cartan_[i][j] = static_cast<int>(v.get_num().get_si());
      cartan_q_[i][j] = v;
    }
  }
  auto inv = inverse(cartan_q_);
  if (!inv) throw InvariantError("singular Cartan matrix");
  cartan_inverse_ = std::move(*inv);

  // Roots: orbit of the simple roots (and doubled simple roots) under the simple reflections.
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  auto push = [&](std::vector<int> v) {
    if (seen.insert(v).second) queue.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<int> v(r, 0);
    v[i] = 1;
    push(v);
    if (doubled_[i]) {
      v[i] = 2;
      push(v);
    }
  }
  while (!queue.empty()) {
    std::vector<int> b = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      int p = 0;
      for (std::size_t j = 0; j < r; ++j) p += b[j] * cartan_[i][j];
      if (p == 0) continue;
      std::vector<int> s = b;
      s[i] -= p;
      push(std::move(s));
    }
  }
  std::vector<Root> pos;
  for (const auto& v : seen) {
    Root root{v};
    if (root.height() > 0) pos.push_back(root);
  }
  std::sort(pos.begin(), pos.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coords < b.coords;
  });
  if (2 * pos.size() != seen.size()) throw InvariantError("root set is not symmetric");
  roots_ = pos;
  for (const auto& p : pos) roots_.push_back(-p);
  for (std::size_t k = 0; k < roots_.size(); ++k) index_.emplace(roots_[k].coords, k);

  const std::size_t n = roots_.size();
  indivisible_.assign(n, true);
  sq_len_.resize(n);
  coroot_coeffs_.resize(n);
  coroot_cw_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& b = roots_[k].coords;
    if (std::all_of(b.begin(), b.end(), [](int c) { return c % 2 == 0; })) {
      std::vector<int> half = b;
      for (auto& c : half) c /= 2;
      if (index_.count(half)) indivisible_[k] = false;
    }
    sq_len_[k] = inner(roots_[k], roots_[k]);
    QVector c(r);
    for (std::size_t j = 0; j < r; ++j) c[j] = Rational(b[j]) * gram_[j][j] / sq_len_[k];
    std::vector<int> cw(r);
    for (std::size_t m = 0; m < r; ++m) {
      Rational v(0);
      for (std::size_t j = 0; j < r; ++j) v += c[j] * cartan_q_[j][m];
      if (!is_integer(v)) throw InvariantError("non-integral root/coroot pairing");
      cw[m] = static_cast<int>(v.get_num().get_si());
    }
    coroot_coeffs_[k] = std::move(c);
    coroot_cw_[k] = std::move(cw);
  }
}

Root RootSystem::simple_root(std::size_t i) const {
  Root r{std::vector<int>(rank_, 0)};
  r.coords[i] = 1;
  return r;
}

std::optional<std::size_t> RootSystem::find(const Root& r) const {
  auto it = index_.find(r.coords);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::index_of(const Root& r) const {
  if (r.coords.size() != rank_) throw InputError("root has wrong dimension");
  auto idx = find(r);
  if (!idx) {
    std::string s;
    for (int c : r.coords) s += (s.empty() ? "" : ",") + std::to_string(c);
    throw InputError("(" + s + ") is not a root of " + name());
  }
  return *idx;
}

std::size_t RootSystem::negation(std::size_t idx) const {
  const std::size_t p = num_positive();
  return idx < p ? idx + p : idx - p;
}

Rational RootSystem::inner(const Root& a, const Root& b) const {
  Rational s(0);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      if (b.coords[j] == 0) continue;
      s += a.coords[i] * b.coords[j] * gram_[i][j];
    }
  }
  return s;
}

Rational RootSystem::inner(const QVector& a, const QVector& b) const {
  Rational s(0);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) s += a[i] * b[j] * gram_[i][j];
  return s;
}

QVector RootSystem::weight_to_root_coords(const QVector& weight) const {
  return mat_vec(cartan_inverse_, weight);
}

QVector RootSystem::root_to_weight_coords(const QVector& root_coords) const {
  return mat_vec(cartan_q_, root_coords);
}

QVector RootSystem::root_to_weight_coords(const Root& r) const {
  QVector q(r.coords.begin(), r.coords.end());
  return root_to_weight_coords(q);
}

RootSystem build_root_system(const RootSystemSpec& spec_in) {
  spec_in.validate();
  RootSystemSpec spec = spec_in.canonical();
  const std::size_t r = static_cast<std::size_t>(spec.rank());
  QMatrix gram(r, zero_vector(r));
  std::vector<bool> doubled(r, false);
  std::vector<RootSystem::Component> comps;
  std::size_t offset = 0;
  for (const auto& c : spec.components) {
    ComponentData d = component_data(c.family, c.rank);
    for (int i = 0; i < c.rank; ++i) {
      gram[offset + i][offset + i] = d.lengths[i];
      doubled[offset + i] = d.doubled[i];
    }
    for (auto [a, b] : d.edges) {
      Rational v = -std::max(d.lengths[a], d.lengths[b]) / 2;
      gram[offset + a][offset + b] = v;
      gram[offset + b][offset + a] = v;
    }
    comps.push_back({c.family, c.rank, offset});
    offset += c.rank;
  }
  return RootSystem(std::move(comps), std::move(gram), std::move(doubled));
}

RootSystem build_root_system(std::string_view spec) { return build_root_system(RootSystemSpec::parse(spec)); }

ComplexRational pairing(const RootSystem& rs, const Parameter& lambda, std::size_t idx) {
  const auto& c = rs.coroot_coefficients(idx);
  return {dot(c, lambda.re), dot(c, lambda.im)};
}

ComplexRational pairing(const RootSystem& rs, const Parameter& lambda, const Root& beta) {
  if (lambda.re.size() != rs.rank() || lambda.im.size() != rs.rank())
    throw InputError("parameter dimension does not match the rank");
  return pairing(rs, lambda, rs.index_of(beta));
}

RootSystem dual(const RootSystem& rs) {
  const std::size_t r = rs.rank();
  const auto& g = rs.gram();
  const auto& dbl = rs.doubled();
  // gamma_i = alpha_i^vee, or (2 alpha_i)^vee = alpha_i^vee / 2 on doubled nodes.
  QVector scale(r);
  for (std::size_t i = 0; i < r; ++i) scale[i] = Rational(2) / g[i][i] / (dbl[i] ? 2 : 1);
  QMatrix dg(r, zero_vector(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) dg[i][j] = scale[i] * scale[j] * g[i][j];

  std::vector<RootSystem::Component> comps;
  for (const auto& c : rs.components()) {
    Rational shortest = dg[c.offset][c.offset];
    bool nonreduced = false;
    for (int i = 0; i < c.rank; ++i) {
      shortest = std::min(shortest, dg[c.offset + i][c.offset + i]);
      nonreduced = nonreduced || dbl[c.offset + i];
    }
    Rational f = Rational(nonreduced ? 1 : 2) / shortest;
    for (int i = 0; i < c.rank; ++i)
      for (int j = 0; j < c.rank; ++j) dg[c.offset + i][c.offset + j] *= f;
    comps.push_back({dual_family(c.family), c.rank, c.offset});
  }
  return RootSystem(std::move(comps), std::move(dg), dbl);
}

std::vector<std::size_t> coroot_correspondence(const RootSystem& rs, const RootSystem& dual_rs) {
  std::vector<std::size_t> out(rs.size());
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto& c = rs.coroot_coefficients(k);
    Root d{std::vector<int>(rs.rank())};
    for (std::size_t j = 0; j < rs.rank(); ++j) {
      Rational v = c[j] * (rs.doubled()[j] ? 2 : 1);
      if (!is_integer(v)) throw InvariantError("coroot is not integral in the dual base");
      d.coords[j] = static_cast<int>(v.get_num().get_si());
    }
    auto idx = dual_rs.find(d);
    if (!idx) throw InvariantError("coroot missing from dual system");
    out[k] = *idx;
  }
  return out;
}

Parameter rho(const RootSystem& rs) {
  QVector sum = zero_vector(rs.rank());
  for (const auto& r : rs.positive_roots())
    for (std::size_t i = 0; i < rs.rank(); ++i) sum[i] += r.coords[i];
  for (auto& x : sum) x /= 2;
  return Parameter::real(rs.root_to_weight_coords(sum));
}

Integer weyl_group_order(const RootSystemSpec& spec) {
  Integer order(1);
  auto fact = [](int n) {
    Integer f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (const auto& c : spec.components) {
    const int n = c.rank;
    Integer pow2(1);
    mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned long>(n));
    switch (c.family) {
      case Family::A: order *= fact(n + 1); break;
      case Family::B:
      case Family::C:
      case Family::BC: order *= pow2 * fact(n); break;
      case Family::D: order *= pow2 / 2 * fact(n); break;
      case Family::E: order *= n == 6 ? Integer(51840) : n == 7 ? Integer(2903040) : Integer(696729600); break;
      case Family::F: order *= 1152; break;
      case Family::G: order *= 12; break;
    }
  }
  return order;
}

WeylElement identity_element(const RootSystem& rs) {
  WeylElement e;
  for (std::size_t i = 0; i < rs.rank(); ++i) e.images.push_back(rs.simple_root(i));
  return e;
}

WeylElement simple_reflection(const RootSystem& rs, std::size_t i) {
  return right_mult_simple(rs, identity_element(rs), i);
}

std::vector<WeylElement> weyl_group(const RootSystem& rs, std::uint64_t limit) {
  Integer order = weyl_group_order(rs.spec());
  if (order > Integer(std::to_string(limit))) {
    throw CapacityError("Weyl group of " + rs.name() + " has " + order.get_str() +
                        " elements, above the enumeration limit of " + std::to_string(limit));
  }
  std::vector<WeylElement> out;
  std::unordered_map<std::vector<int>, std::size_t, VecHash> seen;
  WeylElement e = identity_element(rs);
  seen.emplace(flatten(e), 0);
  out.push_back(std::move(e));
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      WeylElement next = right_mult_simple(rs, out[head], i);
      auto key = flatten(next);
      if (seen.emplace(std::move(key), out.size()).second) out.push_back(std::move(next));
    }
  }
  if (Integer(static_cast<unsigned long>(out.size())) != order)
    throw InvariantError("Weyl group closure does not match the order formula");
  return out;
}

WeylElement compose(const RootSystem& rs, const WeylElement& u, const WeylElement& v) {
  WeylElement out;
  out.images.reserve(rs.rank());
  for (const auto& img : v.images) out.images.push_back(act(rs, u, img));
  return out;
}

WeylElement inverse(const RootSystem& rs, const WeylElement& w) {
  WeylElement out;
  out.images.resize(rs.rank());
  std::size_t found = 0;
  for (const auto& beta : rs.roots()) {
    Root img = act(rs, w, beta);
    if (img.height() != 1) continue;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (img.coords[i] == 1) {
        out.images[i] = beta;
        ++found;
      }
    }
  }
  if (found != rs.rank()) throw InvariantError("Weyl element is not invertible on the roots");
  return out;
}

std::vector<std::size_t> reduced_word(const RootSystem& rs, const WeylElement& w) {
  std::deque<std::size_t> word;
  WeylElement cur = w;
  while (true) {
    std::size_t i = 0;
    while (i < rs.rank() && cur.images[i].height() > 0) ++i;
    if (i == rs.rank()) break;  // no right descent: cur = e
    cur = right_mult_simple(rs, cur, i);
    word.push_front(i);
  }
  return {word.begin(), word.end()};
}

WeylElement from_word(const RootSystem& rs, std::span<const std::size_t> word) {
  WeylElement w = identity_element(rs);
  for (auto i : word) {
    if (i >= rs.rank()) throw InputError("simple reflection index out of range");
    w = right_mult_simple(rs, w, i);
  }
  return w;
}

Root act(const RootSystem& rs, const WeylElement& w, const Root& r) {
  Root out{std::vector<int>(rs.rank(), 0)};
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    if (r.coords[j] == 0) continue;
    for (std::size_t k = 0; k < rs.rank(); ++k) out.coords[k] += r.coords[j] * w.images[j].coords[k];
  }
  return out;
}

QVector act(const RootSystem& rs, const WeylElement& w, const QVector& v) {
  QVector out = zero_vector(rs.rank());
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    if (v[j] == 0) continue;
    for (std::size_t k = 0; k < rs.rank(); ++k) out[k] += v[j] * w.images[j].coords[k];
  }
  return out;
}

Parameter act(const RootSystem& rs, const WeylElement& w, const Parameter& lambda) {
  if (lambda.dim() != rs.rank() || lambda.im.size() != rs.rank())
    throw InputError("parameter dimension does not match the rank");
  Parameter out;
  out.re = rs.root_to_weight_coords(act(rs, w, rs.weight_to_root_coords(lambda.re)));
  out.im = rs.root_to_weight_coords(act(rs, w, rs.weight_to_root_coords(lambda.im)));
  return out;
}

QVector act_on_coweight(const RootSystem& rs, const WeylElement& w, const QVector& x) {
  // alpha_j(w X) = (w^{-1} alpha_j)(X)
  WeylElement inv = inverse(rs, w);
  QVector out(rs.rank());
  for (std::size_t j = 0; j < rs.rank(); ++j) {
    Rational s(0);
    for (std::size_t k = 0; k < rs.rank(); ++k) s += inv.images[j].coords[k] * x[k];
    out[j] = s;
  }
  return out;
}

std::vector<std::size_t> root_permutation(const RootSystem& rs, const WeylElement& w) {
  std::vector<std::size_t> perm(rs.size());
  for (std::size_t k = 0; k < rs.size(); ++k) {
    auto idx = rs.find(act(rs, w, rs.root(k)));
    if (!idx) throw InvariantError("Weyl element does not permute the roots");
    perm[k] = *idx;
  }
  return perm;
}

}  // namespace rootcomb
