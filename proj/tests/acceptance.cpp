// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rootcomb/checks.hpp"
#include "rootcomb/cli.hpp"
#include "rootcomb/negativity.hpp"
#include "rootcomb/subsystems.hpp"

using namespace rootcomb;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

void absorb(Verdict& v, const PropertyResult& r, std::size_t min_cases = 0) {
  std::ostringstream os;
  os << r.property << "[" << r.scope << "] " << r.cases << " cases";
  if (!r.passed()) os << ", " << r.failures << " failures";
  if (r.cases < min_cases) os << " (need " << min_cases << ")";
  if (!v.detail.empty()) v.detail += "; ";
  v.detail += os.str();
  if (!r.passed() || r.cases < min_cases) v.ok = false;
  for (const auto& s : r.failure_samples) std::cerr << "    " << r.property << "[" << r.scope << "]: " << s << "\n";
}

Verdict n_sigma_type_a() {
  Verdict v;
  for (int n = 1; n <= 6; ++n) {
    const auto rs = build_root_system("A" + std::to_string(n));
    const Integer k = n_sigma(rs);
    if (k != 1) {
      v.ok = false;
      v.detail += "A" + std::to_string(n) + " gives " + to_string(k) + " ";
    }
  }
  if (v.ok) v.detail = "n_sigma(A1..A6) = 1";
  return v;
}

Verdict enumeration_agreement() {
  Verdict v;
  for (const char* t : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1"})
    absorb(v, check_enumeration_agreement(build_root_system(t)));
  return v;
}

template <class Check>
Verdict grid_property(std::initializer_list<const char*> types, Check check, std::size_t min_cases = 0) {
  Verdict v;
  for (const char* t : types) {
    const auto rs = build_root_system(t);
    absorb(v, check(rs, parameter_grid(rs)), min_cases);
  }
  return v;
}

Verdict snf_soundness() {
  Verdict v;
  absorb(v, check_snf_random(1000));
  return v;
}

// Oracle: [weight lattice : root lattice] = |det A| with A rebuilt from the Gram matrix.
Verdict index_table() {
  Verdict v;
  for (const auto& e : lattice_index_table()) {
    const auto rs = build_root_system(e.type);
    const Rational det = determinant(oracle::cartan_from_gram(rs.gram()));
    Parameter lambda = rho(rs);
    for (auto& x : lambda.re) x = -x;
    const auto rep = verify_fundamental_lemma(rs, lambda, NegativityMode::Strict, {});
    const bool good = rep.n_lattice == e.index && Rational(rep.n_lattice) == abs(det) &&
                      rep.integral.size() == rs.size();
    v.detail += e.type + "=" + to_string(rep.n_lattice) + (good ? " " : "(expected " + to_string(e.index) + ") ");
    v.ok = v.ok && good;
  }
  return v;
}

Verdict rank_one_bounds() {
  Verdict v;
  const std::vector<std::pair<std::optional<std::string>, int>> cases{
      {std::nullopt, 18}, {"A1", 72}, {"A2", 162}, {"B2", 72}};
  for (const auto& [t, expected] : cases) {
    std::optional<RootSystemSpec> spec;
    if (t) spec = RootSystemSpec::parse(*t);
    const Integer b = rank_one_bound(spec);
    v.detail += (t ? *t : std::string("empty")) + "=" + to_string(b) + " ";
    v.ok = v.ok && b == expected;
  }
  return v;
}

struct ExponentCase {
  std::size_t rank;
  QMatrix spherical;
  QVector rho_q, mu, nu;
  long n;
  std::optional<QVector> chi;
  bool solvable;
  QVector c;  // hand-computed expansion (when solvable)
  bool lattice_ok, ds1_ok, ds2_ok;
  std::optional<bool> ds3_ok;
};

Verdict exponent_suite() {
  using Q = Rational;
  const std::vector<ExponentCase> cases{
      {1, {{1}}, {0}, {Q(1, 2)}, {0}, 2, {}, true, {Q(1, 2)}, true, true, true, {}},
      {1, {{1}}, {0}, {0}, {0}, 2, {}, true, {0}, false, false, true, {}},
      {1, {{1}}, {0}, {Q(-1, 2)}, {0}, 2, {}, true, {Q(-1, 2)}, false, false, true, {}},
      {1, {{1}}, {0}, {Q(1, 3)}, {0}, 2, {}, true, {Q(1, 3)}, false, true, true, {}},
      {1, {{2}}, {Q(1, 4)}, {Q(5, 4)}, {0}, 2, {}, true, {Q(1, 2)}, true, true, true, {}},
      {1, {}, {0}, {0}, {3}, 1, {}, true, {}, true, true, true, {}},
      {1, {}, {0}, {1}, {0}, 1, {}, false, {}, false, true, false, {}},
      {2, {{1, 0}, {0, 1}}, {1, 1}, {Q(4, 3), Q(5, 3)}, {Q(1, 2), 0}, 3, {}, true, {Q(1, 3), Q(2, 3)}, true, true, true, {}},
      {2, {{1, 0}, {0, 1}}, {1, 1}, {1, Q(5, 3)}, {0, 0}, 3, {}, true, {0, Q(2, 3)}, false, false, true, {}},
      {2, {{1, 0}}, {0, 0}, {1, 0}, {0, Q(1, 4)}, 1, QVector{0, Q(-1, 4)}, true, {1}, true, true, true, true},
      {2, {{1, 0}}, {0, 0}, {1, 1}, {0, 0}, 1, {}, false, {}, false, true, false, {}},
      {2, {{1, 1}, {1, -1}}, {0, 0}, {2, 0}, {0, 0}, 1, {}, true, {1, 1}, true, true, true, {}},
      {2, {{1, 0}}, {0, 0}, {-1, 1}, {0, 0}, 1, {}, false, {}, false, false, false, {}},
      {2, {{2, 1}, {1, 1}}, {0, 0}, {3, 2}, {0, 0}, 1, {}, true, {1, 1}, true, true, true, {}},
      {2, {{2, 1}, {1, 1}}, {0, 0}, {Q(3, 2), 1}, {0, 0}, 2, {}, true, {Q(1, 2), Q(1, 2)}, true, true, true, {}},
      {2, {{2, 1}, {1, 1}}, {0, 0}, {Q(3, 2), 1}, {0, 0}, 1, {}, true, {Q(1, 2), Q(1, 2)}, false, true, true, {}},
      {3, {{1, 0, 0}, {0, 1, 0}}, {1, 1, 1}, {2, Q(3, 2), 1}, {0, 0, 1}, 2, QVector{0, 0, 0}, true, {1, Q(1, 2)}, true, true, true, false},
      {3, {{1, 0, 0}, {0, 1, 0}}, {1, 1, 1}, {2, Q(3, 2), 2}, {0, 0, 0}, 2, {}, false, {}, false, true, false, {}},
      {3, {{1, -1, 0}, {0, 1, -1}}, {0, 0, 0}, {1, 0, -1}, {0, 0, 0}, 1, {}, true, {1, 1}, true, true, true, {}},
      {2, {{1, 0}, {0, 1}}, {0, 0}, {Q(-1, 2), Q(1, 2)}, {0, 0}, 2, {}, true, {Q(-1, 2), Q(1, 2)}, false, false, true, {}},
  };
  Verdict v;
  std::size_t passed = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& e = cases[k];
    ExponentInput in{e.rank, e.spherical, e.rank - e.spherical.size(), e.mu, e.rho_q, e.nu, e.n, e.chi};
    const auto cert = certify_exponent(in);
    bool good = cert.solvable == e.solvable && cert.lattice_ok == e.lattice_ok && cert.ds1_ok == e.ds1_ok &&
                cert.ds2_ok == e.ds2_ok && cert.ds3_ok == e.ds3_ok && cert.nu == e.nu;
    if (e.solvable) {
      good = good && cert.coefficients == e.c;
      // mu = rho_Q + sum c_alpha alpha, rebuilt by hand.
      QVector rebuilt = e.rho_q;
      for (std::size_t a = 0; a < e.c.size(); ++a)
        for (std::size_t i = 0; i < e.rank; ++i) rebuilt[i] += e.c[a] * e.spherical[a][i];
      good = good && rebuilt == e.mu;
    }
    if (good) {
      ++passed;
    } else {
      v.ok = false;
      std::cerr << "    exponent case " << k + 1 << " disagrees with the hand computation\n";
    }
  }
  bool corners[2][2][2] = {};
  for (const auto& e : cases) corners[e.lattice_ok][e.ds1_ok][e.ds2_ok] = true;
  int covered = 0;
  for (auto& a : corners)
    for (auto& b : a)
      for (bool c : b) covered += c;
  // lattice_ok forces ds1_ok and ds2_ok is solvability, leaving five reachable corners.
  v.ok = v.ok && covered == 5;
  v.detail = std::to_string(passed) + "/" + std::to_string(cases.size()) + " cases, " + std::to_string(covered) +
             "/5 reachable truth-table corners";
  return v;
}

Verdict metamorphic() {
  Verdict v;
  for (const char* t : {"A2", "B2", "G2", "BC1"}) {
    const auto rs = build_root_system(t);
    const auto grid = parameter_grid(rs);
    absorb(v, check_integral_equivariance(rs, grid));
    absorb(v, check_shift_invariance(rs, grid));
  }
  for (const char* t : {"A2", "B2", "B3", "C3", "G2", "F4", "BC2", "A1xG2"}) absorb(v, check_dual_involution(build_root_system(t)));
  // Byte-identical reruns of the command-line front end.
  const std::vector<std::vector<std::string>> cmds{
      {"nsigma", "--type", "F4"},
      {"subsystems", "--type", "C3", "--method", "brute-force"},
      {"class", "--type", "G2", "--re", "1/2,-1/3", "--im", "1/2,0"},
      {"fundamental", "--type", "B2", "--re", "-1,-1", "--mode", "strict"},
      {"negativity", "--type", "G2", "--re", "-3/2,1", "--mode", "weak", "--subspace", "1,0"},
      {"exponent", "--spherical", "2,1;1,1", "--mu", "3/2,1", "--n", "2"},
      {"snf", "--matrix", "4,6,8;3,9,12"},
  };
  std::size_t same = 0;
  for (const auto& c : cmds) {
    const auto a = cli::run(c), b = cli::run(c);
    if (a.exit_code == 0 && a.out == b.out && a.err == b.err) ++same;
  }
  v.detail += "; determinism " + std::to_string(same) + "/" + std::to_string(cmds.size());
  v.ok = v.ok && same == cmds.size();
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "type-A constant N_Sigma = 1", 30, n_sigma_type_a},
      {2, "BdS enumeration matches brute force", 120, enumeration_agreement},
      {3, "chamber union equals gallery class", 60,
       [] { return grid_property({"A2", "B2", "G2", "BC1"}, check_chamber_union, 200); }},
      {4, "class equals gallery orbit", 60,
       [] { return grid_property({"A2", "B2", "G2", "BC1"}, check_class_via_gallery, 200); }},
      {5, "strict classes: trivial edge and 1/N(Sigma(lambda)) integrality", 120,
       [] { return grid_property({"A1", "A2", "B2", "G2"}, check_strict_consequences); }},
      {6, "integral classes: real and vanishing on the edge", 120,
       [] { return grid_property({"A1", "A2", "B2", "G2", "BC1"}, check_integral_consequences); }},
      {7, "Smith normal form soundness", 30, snf_soundness},
      {8, "weight/root lattice index table", 60, index_table},
      {9, "rank-one bounds 18 d^2", 10, rank_one_bounds},
      {10, "exponent certificate suite", 10, exponent_suite},
      {11, "metamorphic and structural suites", 120, metamorphic},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = v.ok && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " -- " << v.detail << " ["
              << timing << (in_time ? "" : ", over budget") << "]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
