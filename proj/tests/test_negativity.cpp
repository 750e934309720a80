#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rootcomb/checks.hpp"
#include "rootcomb/errors.hpp"
#include "rootcomb/negativity.hpp"
#include "rootcomb/simplex.hpp"

using namespace rootcomb;

namespace {

Parameter real(std::initializer_list<Rational> v) { return Parameter::real(QVector(v)); }

NegativityVerdict strict(const RootSystem& rs, const Parameter& p) {
  return check_negativity(rs, NegativityQuery{p, NegativityMode::Strict, std::nullopt, 1});
}

// Value of Re lambda - omega on varpi_i^vee, with Re lambda(varpi_i^vee) = (A^{-1} re)_i.
// Variables y range over all positive integral roots (not a chosen basis).
bool oracle_feasible(const RootSystem& rs, const Parameter& p, NegativityMode mode, const SubspaceBasis* a) {
  const std::size_t r = rs.rank();
  const QMatrix ainv = oracle::invert(oracle::cartan_from_gram(rs.gram()));
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < rs.num_positive(); ++i) {
    const auto z = pairing(rs, p, i);
    if (z.im == 0 && is_integer(z.re)) vars.push_back(i);
  }
  if (mode == NegativityMode::Integral) {
    // Im lambda must vanish on a basis of a_lambda.
    for (const auto& x : a->vectors) {
      Rational v(0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) v += x[i] * ainv[i][j] * p.im[j];
      if (v != 0) return false;
    }
  }
  std::vector<oracle::Constraint> cs;
  for (std::size_t i = 0; i < r; ++i) {
    Rational lam(0);
    for (std::size_t j = 0; j < r; ++j) lam += ainv[i][j] * p.re[j];
    // lam - sum_k y_k beta_k(varpi_i^vee) (<|<=) 0  <=>  -sum_k y_k beta_k[i] (<|<=) -lam
    oracle::Constraint c{QVector(vars.size()), -lam, true};
    for (std::size_t k = 0; k < vars.size(); ++k) c.a[k] = -rs.root(vars[k]).coords[i];
    if (mode != NegativityMode::Strict) {
      QVector e(r, Rational(0));
      e[i] = 1;
      c.strict = !a->contains(e);
    }
    cs.push_back(std::move(c));
  }
  return oracle::fm_feasible(cs, vars.size());
}

Rational form_at(const QVector& root_coords, const QVector& x) {
  Rational v(0);
  for (std::size_t i = 0; i < x.size(); ++i) v += root_coords[i] * x[i];
  return v;
}

}  // namespace

TEST_CASE("exact simplex") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5)
  LinearProgram lp{2, {false, false}, {1, 1}, {{1, 2}, {3, 1}}, {4, 6}};
  auto r = maximize(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(14, 5));
  // Infeasible: x <= -1 with x >= 0.
  CHECK(maximize(LinearProgram{1, {false}, {1}, {{1}}, {-1}}).status == LpStatus::Infeasible);
  // Unbounded free variable.
  CHECK(maximize(LinearProgram{1, {true}, {1}, {{-1}}, {0}}).status == LpStatus::Unbounded);
  // Free variable pushed negative: max -x s.t. -x <= 3, x <= -2 -> x = -3.
  r = maximize(LinearProgram{1, {true}, {-1}, {{-1}, {1}}, {3, -2}});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == -3);
  // Degenerate and redundant rows.
  r = maximize(LinearProgram{2, {false, false}, {1, 0}, {{1, 1}, {1, 1}, {-1, -1}}, {1, 1, -1}});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 1);
}

TEST_CASE("negativity examples") {
  const auto a1 = build_root_system("A1");
  auto v = strict(a1, real({-1}));
  CHECK(v.feasible);
  REQUIRE(v.witness_omega);
  CHECK(v.generator_values[0] < 0);
  CHECK_FALSE(strict(a1, real({Rational(1, 2)})).feasible);
  CHECK(strict(a1, real({Rational(1, 2)})).omega_basis.empty());

  for (const char* t : {"A2", "B2", "G2", "BC1", "A3"}) {
    const auto rs = build_root_system(t);
    const Parameter zero = Parameter::real(zero_vector(rs.rank()));
    const auto w = check_negativity(rs, NegativityQuery{zero, NegativityMode::Weak, SubspaceBasis::whole(rs.rank()), 1});
    CHECK(w.feasible);
  }

  const auto a2 = build_root_system("A2");
  CHECK(strict(a2, real({-1, -1})).feasible);
  // Positive pairings with Sigma(lambda) = Sigma: omega absorbs them.
  CHECK(strict(a2, real({3, 5})).feasible);
  // Sigma(lambda) empty and lambda dominant.
  CHECK_FALSE(strict(a2, real({Rational(1, 3), Rational(1, 3)})).feasible);
}

TEST_CASE("query validation") {
  const auto a2 = build_root_system("A2");
  const auto p = real({-1, -1});
  CHECK_THROWS_AS(check_negativity(a2, NegativityQuery{p, NegativityMode::Weak, std::nullopt, 1}), InputError);
  CHECK_THROWS_AS(check_negativity(a2, NegativityQuery{p, NegativityMode::Strict, SubspaceBasis::whole(2), 1}), InputError);
  SubspaceBasis bad;
  bad.ambient_dim = 2;
  bad.vectors = {{1, 1}, {2, 2}};
  CHECK_THROWS_AS(check_negativity(a2, NegativityQuery{p, NegativityMode::Weak, bad, 1}), InputError);
  CHECK_THROWS_AS(check_negativity(a2, NegativityQuery{p, NegativityMode::Strict, std::nullopt, 0}), InputError);
}

TEST_CASE("integral mode rejects imaginary parts on a_lambda") {
  const auto a1 = build_root_system("A1");
  const Parameter p{{Rational(-1)}, {Rational(1, 2)}};
  const auto v = check_negativity(a1, NegativityQuery{p, NegativityMode::Integral, SubspaceBasis::whole(1), 1});
  CHECK_FALSE(v.feasible);
  CHECK(v.imaginary_obstruction);
  const auto w = check_negativity(a1, NegativityQuery{p, NegativityMode::Integral, SubspaceBasis::zero(1), 1});
  CHECK_FALSE(w.imaginary_obstruction);
}

TEST_CASE("verdicts agree with Fourier-Motzkin") {
  std::mt19937_64 gen(11);
  for (const char* t : {"A1", "A2", "B2", "G2", "BC1", "A1xA1"}) {
    CAPTURE(t);
    const auto rs = build_root_system(t);
    const std::size_t r = rs.rank();
    std::vector<SubspaceBasis> subspaces{SubspaceBasis::whole(r), SubspaceBasis::zero(r)};
    for (std::size_t i = 0; i < r; ++i) {
      QVector e(r, Rational(0));
      e[i] = 1;
      subspaces.push_back(SubspaceBasis::checked({e}, r));
    }
    if (r == 2) subspaces.push_back(SubspaceBasis::checked({{1, 1}}, 2));
    for (const auto& p : parameter_grid(rs)) {
      CAPTURE(p.re[0]);
      CHECK(strict(rs, p).feasible == oracle_feasible(rs, p, NegativityMode::Strict, nullptr));
      const auto& a = subspaces[gen() % subspaces.size()];
      for (auto mode : {NegativityMode::Weak, NegativityMode::Integral}) {
        const auto v = check_negativity(rs, NegativityQuery{p, mode, a, 1});
        CHECK(v.feasible == oracle_feasible(rs, p, mode, &a));
      }
    }
  }
}

TEST_CASE("witnesses are negative on random points of the chamber") {
  std::mt19937_64 gen(5);
  for (const char* t : {"A2", "B2", "G2", "A3"}) {
    const auto rs = build_root_system(t);
    std::size_t checked = 0;
    for (const auto& p : parameter_grid(rs, 300)) {
      const auto v = strict(rs, p);
      if (!v.feasible) continue;
      const QVector rc = rs.weight_to_root_coords(p.re);
      const QVector omega = witness_form(rs, v);
      QVector f(rs.rank());
      for (std::size_t i = 0; i < rs.rank(); ++i) f[i] = rc[i] - omega[i];
      for (int k = 0; k < 40; ++k) {
        QVector x(rs.rank());
        bool nonzero = false;
        for (auto& c : x) {
          c = Rational(static_cast<long>(gen() % 5), static_cast<long>(1 + gen() % 4));
          nonzero = nonzero || c != 0;
        }
        if (!nonzero) x[0] = 1;
        CHECK(form_at(f, x) < 0);
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("tight faces lie in a_lambda") {
  std::mt19937_64 gen(9);
  const auto b2 = build_root_system("B2");
  const std::vector<SubspaceBasis> subspaces{SubspaceBasis::whole(2), SubspaceBasis::checked({{1, 0}}, 2),
                                             SubspaceBasis::checked({{0, 1}}, 2), SubspaceBasis::checked({{1, 2}}, 2)};
  std::size_t tight_seen = 0;
  for (const auto& p : parameter_grid(b2)) {
    for (const auto& a : subspaces) {
      const auto v = check_negativity(b2, NegativityQuery{p, NegativityMode::Weak, a, 1});
      if (!v.feasible) continue;
      for (auto i : v.tight_generators) {
        QVector e(2, Rational(0));
        e[i] = 1;
        CHECK(a.contains(e));
      }
      if (v.tight_generators.empty()) continue;
      ++tight_seen;
      QVector x(2, Rational(0));
      for (auto i : v.tight_generators) x[i] = Rational(static_cast<long>(1 + gen() % 5), 3);
      CHECK(a.contains(x));
    }
  }
  CHECK(tight_seen > 0);
}

TEST_CASE("class negativity") {
  const auto a1 = build_root_system("A1");
  const auto half = check_class_negativity(a1, real({Rational(1, 2)}), NegativityMode::Strict, {});
  CHECK_FALSE(half.all_negative);
  CHECK(half.cls.members.size() == 2);
  CHECK(check_class_negativity(a1, real({-1}), NegativityMode::Strict, {}).all_negative);
  const auto a2 = build_root_system("A2");
  CHECK(check_class_negativity(a2, real({0, 0}), NegativityMode::Weak, SubspaceAssignment::whole_space(2)).all_negative);
  CHECK_THROWS_AS(check_class_negativity(a2, real({0, 0}), NegativityMode::Weak, SubspaceAssignment{}), InputError);

  // Per-member assignment takes precedence over the uniform default.
  // (1/3, -2/3) has root coordinates (0, -1/3) and no integral roots: weakly but not strictly negative.
  const auto edge_point = real({Rational(1, 3), Rational(-2, 3)});
  SubspaceAssignment mixed = SubspaceAssignment::whole_space(2);
  mixed.per_member.emplace(edge_point, SubspaceBasis::zero(2));
  const auto c = check_class_negativity(a2, edge_point, NegativityMode::Weak, mixed);
  const auto w = check_class_negativity(a2, edge_point, NegativityMode::Weak, SubspaceAssignment::whole_space(2));
  REQUIRE(c.cls.members.front().mu == edge_point);
  CHECK_FALSE(c.verdicts.front().feasible);
  CHECK(w.verdicts.front().feasible);
  CHECK_FALSE(c.all_negative);
}

TEST_CASE("edge and integrality reports") {
  const auto a1 = build_root_system("A1");
  auto rep = verify_fundamental_lemma(a1, real({-1}), NegativityMode::Strict, {});
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.edge_trivial == std::optional<bool>(true));
  CHECK(rep.parabolic_closure.label == "A1");
  CHECK(rep.n_lattice == 2);
  CHECK(rep.integrality_ok);

  const auto a2 = build_root_system("A2");
  rep = verify_fundamental_lemma(a2, real({-1, -1}), NegativityMode::Strict, {});
  CHECK(rep.n_lattice == 3);
  CHECK(rep.lattice_divisors == std::vector<Integer>{1, 3});
  CHECK(rep.integrality_ok);

  rep = verify_fundamental_lemma(a2, real({0, 0}), NegativityMode::Weak, SubspaceAssignment::whole_space(2));
  CHECK(rep.edge_basis.dim() == 0);
  CHECK(rep.re_lambda_on_edge_zero);
  CHECK(rep.n_lattice == 3);

  rep = verify_fundamental_lemma(a1, real({Rational(1, 2)}), NegativityMode::Strict, {});
  CHECK(rep.vacuous);
  CHECK(rep.n_lattice == 1);  // Sigma(lambda) empty

  // Rank-one Sigma(lambda) inside A2: index of Z alpha in Z alpha / 2.
  rep = verify_fundamental_lemma(a2, real({Rational(1, 2), Rational(1, 2)}), NegativityMode::Weak,
                                 SubspaceAssignment::whole_space(2));
  CHECK(rep.n_lattice == 2);
  CHECK(rep.edge_basis.dim() == 1);
}

TEST_CASE("exponent certificates") {
  ExponentInput in;
  in.rank = 1;
  in.spherical = {{1}};
  in.rho_q = {Rational(1, 3)};
  in.nu = {0};
  in.n = 2;
  in.mu = {Rational(1, 3) + Rational(1, 2)};
  auto c = certify_exponent(in);
  CHECK(c.solvable);
  CHECK(c.coefficients == QVector{Rational(1, 2)});
  CHECK(c.lattice_ok);
  CHECK(c.ds1_ok);
  CHECK(c.ds2_ok);

  in.mu = in.rho_q;
  c = certify_exponent(in);
  CHECK(c.coefficients == QVector{0});
  CHECK_FALSE(c.lattice_ok);
  CHECK_FALSE(c.ds1_ok);

  ExponentInput two;
  two.rank = 2;
  two.spherical = {{1, 0}, {0, 1}};
  two.rho_q = {1, 1};
  two.mu = {Rational(4, 3), Rational(5, 3)};
  two.nu = {0, 0};
  two.n = 3;
  c = certify_exponent(two);
  CHECK(c.coefficients == QVector{Rational(1, 3), Rational(2, 3)});
  CHECK(c.lattice_ok);

  two.spherical = {{1, 0}, {2, 0}};
  CHECK_THROWS_AS(certify_exponent(two), InputError);
  two.spherical = {{1, 0, 0}};
  CHECK_THROWS_AS(certify_exponent(two), InputError);
}

TEST_CASE("Cartan determinants and the rank-one bound") {
  CHECK(rank_one_bound(std::nullopt) == 18);
  CHECK(rank_one_bound(RootSystemSpec::parse("A1")) == 72);
  CHECK(rank_one_bound(RootSystemSpec::parse("A2")) == 162);
  CHECK(rank_one_bound(RootSystemSpec::parse("B2")) == 72);
  CHECK(rank_one_bound(RootSystemSpec::parse("A1xA1")) == 18 * 16);
  const std::vector<std::pair<const char*, int>> dets{{"A4", 5}, {"B3", 2}, {"C4", 2}, {"D4", 4}, {"D5", 4},
                                                      {"E6", 3}, {"E7", 2}, {"E8", 1}, {"F4", 1}, {"G2", 1}};
  for (const auto& [t, d] : dets) CHECK(cartan_determinant(build_root_system(t)) == d);
}
