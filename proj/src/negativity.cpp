#include "rootcomb/negativity.hpp"

#include <algorithm>

#include "rootcomb/errors.hpp"
#include "rootcomb/lattice.hpp"
#include "rootcomb/simplex.hpp"

namespace rootcomb {

namespace {

QVector root_vector(const Root& r) { return QVector(r.coords.begin(), r.coords.end()); }

QVector coroot_vector(const RootSystem& rs, std::size_t idx) {
  const auto& c = rs.coroot_coweight(idx);
  return QVector(c.begin(), c.end());
}

// Greedy independent subset of the positive integral roots.
RootSet span_basis(const RootSystem& rs, const RootSet& integral) {
  RootSet basis;
  QMatrix rows;
  for (auto i : integral) {
    if (!rs.is_positive(i)) continue;
    rows.push_back(root_vector(rs.root(i)));
    if (is_independent(rows, rs.rank())) {
      basis.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  return basis;
}

bool is_unit_vector_in(const SubspaceBasis& s, std::size_t i) {
  QVector e = zero_vector(s.ambient_dim);
  e[i] = 1;
  return s.contains(e);
}

// Value of a form given in simple-root coordinates on X in coweight coordinates.
Rational evaluate(const QVector& root_coords, const QVector& x) { return dot(root_coords, x); }

}  // namespace

NegativityVerdict check_negativity(const RootSystem& rs, const NegativityQuery& q) {
  require_dimension(rs, q.lambda);
  const std::size_t r = rs.rank();
  const bool strict = q.mode == NegativityMode::Strict;
  if (strict && q.a_lambda) throw InputError("strict mode takes no subspace");
  if (!strict && !q.a_lambda) throw InputError("weak and integral modes require a subspace a_lambda");
  if (q.a_lambda) {
    if (q.a_lambda->ambient_dim != r) throw InputError("subspace lives in the wrong dimension");
    SubspaceBasis::checked(q.a_lambda->vectors, r);
  }

  NegativityVerdict v;
  const RootSet integral = integral_roots(rs, q.lambda, q.denominator);
  v.omega_basis = span_basis(rs, integral);

  if (q.mode == NegativityMode::Integral) {
    const QVector im_root = rs.weight_to_root_coords(q.lambda.im);
    for (const auto& x : q.a_lambda->vectors) {
      if (evaluate(im_root, x) != 0) {
        v.imaginary_obstruction = true;
        return v;
      }
    }
  }

  for (std::size_t i = 0; i < r; ++i)
    if (strict || !is_unit_vector_in(*q.a_lambda, i)) v.strict_generators.push_back(i);

  // (Re lambda - omega)(varpi_i^vee) = rc_i - sum_k y_k beta_k[i], with rc the root coordinates of Re lambda.
  const QVector rc = rs.weight_to_root_coords(q.lambda.re);
  const std::size_t k = v.omega_basis.size();
  LinearProgram lp;
  lp.num_vars = k + 1;  // y_1..y_k, t
  lp.free.assign(k + 1, true);
  lp.objective = zero_vector(k + 1);
  lp.objective[k] = 1;
  for (std::size_t i = 0; i < r; ++i) {
    QVector row = zero_vector(k + 1);
    for (std::size_t j = 0; j < k; ++j) row[j] = -rs.root(v.omega_basis[j]).coords[i];
    if (std::binary_search(v.strict_generators.begin(), v.strict_generators.end(), i)) row[k] = 1;
    lp.lhs.push_back(std::move(row));
    lp.rhs.push_back(-rc[i]);
  }
  QVector cap = zero_vector(k + 1);
  cap[k] = 1;
  lp.lhs.push_back(std::move(cap));
  lp.rhs.push_back(Rational(1));

  const LpResult res = maximize(lp);
  if (res.status == LpStatus::Unbounded) throw InvariantError("negativity program is unbounded despite t <= 1");
  if (res.status != LpStatus::Optimal) return v;
  if (!v.strict_generators.empty() && res.value <= 0) return v;

  QVector y(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(k));
  v.feasible = true;
  v.witness_omega = y;
  v.generator_values = rc;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) v.generator_values[i] -= y[j] * rs.root(v.omega_basis[j]).coords[i];
    if (v.generator_values[i] > 0) throw InvariantError("negativity witness violates a constraint");
    if (v.generator_values[i] == 0) {
      if (std::binary_search(v.strict_generators.begin(), v.strict_generators.end(), i))
        throw InvariantError("negativity witness is tight on a strict generator");
      v.tight_generators.push_back(i);
    }
  }
  return v;
}

QVector witness_form(const RootSystem& rs, const NegativityVerdict& v) {
  QVector omega = zero_vector(rs.rank());
  if (!v.witness_omega) return omega;
  for (std::size_t j = 0; j < v.omega_basis.size(); ++j)
    for (std::size_t i = 0; i < rs.rank(); ++i) omega[i] += (*v.witness_omega)[j] * rs.root(v.omega_basis[j]).coords[i];
  return omega;
}

SubspaceAssignment SubspaceAssignment::whole_space(std::size_t dim) {
  SubspaceAssignment a;
  a.uniform = SubspaceBasis::whole(dim);
  return a;
}

const SubspaceBasis& SubspaceAssignment::for_member(const Parameter& mu) const {
  auto it = per_member.find(mu);
  if (it != per_member.end()) return it->second;
  if (uniform) return *uniform;
  throw InputError("no subspace assigned to a class member");
}

namespace {

NegativityQuery member_query(const Parameter& mu, NegativityMode mode, const SubspaceAssignment& subspaces,
                             const Integer& n) {
  NegativityQuery q{mu, mode, std::nullopt, n};
  if (mode != NegativityMode::Strict) q.a_lambda = subspaces.for_member(mu);
  return q;
}

}  // namespace

ClassNegativity check_class_negativity(const RootSystem& rs, const Parameter& lambda, NegativityMode mode,
                                       const SubspaceAssignment& subspaces, const Integer& n) {
  ClassNegativity out;
  out.cls = equivalence_class(rs, lambda, n);
  out.all_negative = true;
  for (const auto& m : out.cls.members) {
    out.verdicts.push_back(check_negativity(rs, member_query(m.mu, mode, subspaces, n)));
    out.all_negative = out.all_negative && out.verdicts.back().feasible;
  }
  return out;
}

FundamentalLemmaReport verify_fundamental_lemma(const RootSystem& rs, const Parameter& lambda, NegativityMode mode,
                                                const SubspaceAssignment& subspaces, const Integer& n) {
  FundamentalLemmaReport rep;
  const ClassNegativity cn = check_class_negativity(rs, lambda, mode, subspaces, n);
  rep.class_negative = cn.all_negative;
  rep.vacuous = !cn.all_negative;
  const std::size_t r = rs.rank();

  rep.integral = integral_roots(rs, lambda, n);
  rep.edge_basis = edge(rs, lambda, n);

  for (const auto& u : gallery_class(rs, lambda, n).chambers) {
    WeylElement w = inverse(rs, u);
    const Parameter mu = act(rs, w, lambda);
    if (!cn.cls.contains(mu)) continue;
    SubspaceBasis a_mu = mode == NegativityMode::Strict ? SubspaceBasis::zero(r) : subspaces.for_member(mu);
    if (act(rs, u, a_mu).contains(rep.edge_basis)) {
      rep.containing_member = ContainingMember{std::move(w), std::move(a_mu)};
      break;
    }
  }

  const QVector re_root = rs.weight_to_root_coords(lambda.re);
  rep.re_lambda_on_edge_zero = std::all_of(rep.edge_basis.vectors.begin(), rep.edge_basis.vectors.end(),
                                           [&](const QVector& x) { return evaluate(re_root, x) == 0; });

  rep.parabolic_closure = parabolic_closure(rs, rep.integral);

  // Weight lattice of Sigma(lambda): the dual of Z[Sigma(lambda)^vee] inside span Sigma(lambda).
  QMatrix coroot_gens, parabolic_gens;
  for (auto i : rep.integral) coroot_gens.push_back(coroot_vector(rs, i));
  for (auto i : rep.parabolic_closure.roots) parabolic_gens.push_back(root_vector(rs.root(i)));
  const Lattice coroots = lattice_from_generators(coroot_gens, r);
  const Lattice root_lattice = lattice_from_generators(parabolic_gens, r);
  const std::size_t k = coroots.rank();
  if (root_lattice.rank() != k) throw InvariantError("parabolic closure changes the rank of Sigma(lambda)");
  if (k > 0) {
    QMatrix g(k, zero_vector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(root_lattice.basis[i], coroots.basis[j]);
    const auto ginv = inverse(g);
    if (!ginv) throw InvariantError("root and coroot lattices of Sigma(lambda) pair degenerately");
    QMatrix weights(k, zero_vector(r));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t c = 0; c < r; ++c) weights[i][c] += (*ginv)[i][l] * root_lattice.basis[l][c];
    rep.lattice_divisors = quotient_divisors(root_lattice, Lattice(weights, r));
    rep.n_lattice = 1;
    for (const auto& d : rep.lattice_divisors) rep.n_lattice *= d;
  }

  rep.integrality_ok = true;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (!in_fraction_lattice(pairing(rs, lambda, i).re, rep.n_lattice)) rep.integrality_ok = false;

  if (subsystem_rank(rs, rep.integral) == r) rep.n_integral_subsystem = n_of_subsystem(rs, rep.integral);

  if (mode == NegativityMode::Integral) {
    const QVector im_root = rs.weight_to_root_coords(lambda.im);
    rep.lambda_real = lambda.is_real();
    rep.im_lambda_on_edge_zero = std::all_of(rep.edge_basis.vectors.begin(), rep.edge_basis.vectors.end(),
                                             [&](const QVector& x) { return evaluate(im_root, x) == 0; });
  }
  if (mode == NegativityMode::Strict) {
    rep.edge_trivial = rep.edge_basis.dim() == 0;
    rep.coroots_full_rank = k == r;
  }
  return rep;
}

ExponentCertificate certify_exponent(const ExponentInput& in) {
  const std::size_t r = in.rank;
  if (r == 0) throw InputError("rank of a_Z must be positive");
  if (in.n < 1) throw InputError("N must be a positive integer");
  auto check = [&](const QVector& v, const char* what) {
    if (v.size() != r) throw InputError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                                        ", expected " + std::to_string(r));
  };
  for (const auto& a : in.spherical) check(a, "spherical root");
  check(in.mu, "mu");
  check(in.rho_q, "rho_Q");
  check(in.nu, "nu");
  if (in.chi_im) check(*in.chi_im, "chi");
  if (!is_independent(in.spherical, r)) throw InputError("spherical roots are linearly dependent");
  const std::size_t s = in.spherical.size();
  if (in.edge_dim && *in.edge_dim != r - s)
    throw InputError("edge dimension " + std::to_string(*in.edge_dim) + " is inconsistent with " +
                     std::to_string(s) + " independent spherical roots in rank " + std::to_string(r));

  ExponentCertificate cert;
  cert.nu = in.nu;
  QVector f = in.mu;
  for (std::size_t i = 0; i < r; ++i) f[i] -= in.rho_q[i];

  cert.edge.ambient_dim = r;
  cert.edge.vectors = nullspace(in.spherical, r);

  // X_beta in the row space of S with alpha(X_beta) = -delta_{alpha beta}.
  QMatrix gram(s, zero_vector(s));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) gram[a][b] = dot(in.spherical[a], in.spherical[b]);
  for (std::size_t b = 0; b < s; ++b) {
    QVector rhs = zero_vector(s);
    rhs[b] = -1;
    const auto z = solve(gram, rhs, s);
    if (!z) throw InvariantError("Gram matrix of independent spherical roots is singular");
    QVector x = zero_vector(r);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t c = 0; c < r; ++c) x[c] += (*z)[a] * in.spherical[a][c];
    cert.generator_values.push_back(dot(f, x));
    cert.cone_generators.push_back(std::move(x));
  }
  cert.ds1_ok = std::all_of(cert.generator_values.begin(), cert.generator_values.end(),
                            [](const Rational& v) { return v < 0; });
  cert.ds2_ok = std::all_of(cert.edge.vectors.begin(), cert.edge.vectors.end(),
                            [&](const QVector& x) { return dot(f, x) == 0; });
  if (in.chi_im) {
    QVector sum = in.nu;
    for (std::size_t i = 0; i < r; ++i) sum[i] += (*in.chi_im)[i];
    cert.ds3_ok = std::all_of(cert.edge.vectors.begin(), cert.edge.vectors.end(),
                              [&](const QVector& x) { return dot(f, x) == 0 && dot(sum, x) == 0; });
  }

  const auto c = express_in_rows(in.spherical, f, r);
  if (c) {
    cert.solvable = true;
    cert.coefficients = *c;
    for (std::size_t b = 0; b < s; ++b)
      if (-cert.generator_values[b] != cert.coefficients[b])
        throw InvariantError("cone generator values disagree with the expansion coefficients");
    cert.lattice_ok = std::all_of(cert.coefficients.begin(), cert.coefficients.end(), [&](const Rational& v) {
      return v > 0 && in_fraction_lattice(v, in.n);
    });
  }
  return cert;
}

Integer cartan_determinant(const RootSystem& rs) {
  QMatrix a(rs.rank(), zero_vector(rs.rank()));
  for (std::size_t i = 0; i < rs.rank(); ++i)
    for (std::size_t j = 0; j < rs.rank(); ++j) a[i][j] = rs.cartan()[i][j];
  const Rational d = determinant(a);
  if (!is_integer(d)) throw InvariantError("Cartan determinant is not an integer");
  return d.get_num();
}

Integer rank_one_bound(const std::optional<RootSystemSpec>& type) {
  Integer d = 1;
  if (type && type->rank() > 0) d = cartan_determinant(build_root_system(*type));
  return 18 * d * d;
}

}  // namespace rootcomb
