#include "rootcomb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "rootcomb/checks.hpp"
#include "rootcomb/errors.hpp"
#include "rootcomb/lattice.hpp"
#include "rootcomb/negativity.hpp"
#include "rootcomb/params.hpp"
#include "rootcomb/subsystems.hpp"

namespace rootcomb::cli {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Integer& z) { return to_string(z); }

Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json to_json(const QMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(to_json(row));
  return a;
}

Json to_json(const Root& r) { return Json(r.coords); }

Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(to_string(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

Json to_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json roots_json(const RootSystem& rs, const RootSet& set) {
  Json a = Json::array();
  for (auto i : set) a.push_back(to_json(rs.root(i)));
  return a;
}

Json parameter_json(const Parameter& p) { return Json{{"re", to_json(p.re)}, {"im", to_json(p.im)}}; }

Json weyl_json(const RootSystem& rs, const WeylElement& w) { return Json(reduced_word(rs, w)); }

Json subspace_json(const SubspaceBasis& s) { return to_json(s.canonical().vectors); }

Json subsystem_json(const RootSystem& rs, const Subsystem& s) {
  Json j;
  j["label"] = s.label;
  j["n"] = to_string(n_of_subsystem(rs, s));
  j["size"] = s.size();
  j["closed_in_sigma"] = s.closed_in_sigma;
  j["closed_in_dual"] = s.closed_in_dual;
  j["roots"] = roots_json(rs, s.roots);
  return j;
}

struct Flags {
  std::string type;
  std::string re;
  std::string im;
  std::string denominator = "1";
  std::string mode = "strict";
  std::optional<std::string> subspace;
  std::string matrix;
  std::string spherical;
  std::string mu;
  std::string rhoq;
  std::string nu;
  std::optional<std::string> chi;
  std::optional<std::size_t> edge_dim;
  std::string n = "1";
  std::string method = "bds";
  std::optional<std::string> cache_dir;
  bool pretty = false;
  bool real_part_moves = false;
};

Integer parse_positive(const std::string& text, const char* what) {
  const Rational q = parse_rational(text);
  if (!is_integer(q) || q < 1) throw InputError(std::string(what) + " must be a positive integer, got '" + text + "'");
  return q.get_num();
}

QMatrix parse_rows(const std::string& text) {
  QMatrix rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    if (row.find_first_not_of(" \t") == std::string::npos) continue;
    rows.push_back(parse_rational_list(row));
  }
  return rows;
}

RootSystem system_of(const Flags& f) { return build_root_system(f.type); }

void require_enumerable(const RootSystem& rs) {
  const Integer order = weyl_group_order(rs.spec());
  if (order > kDefaultWeylLimit)
    throw CapacityError("Weyl group of " + rs.name() + " has " + order.get_str() + " elements, above the limit of " +
                        std::to_string(kDefaultWeylLimit));
}

Parameter parameter_of(const RootSystem& rs, const Flags& f) {
  if (f.re.empty()) throw InputError("--re is required");
  Parameter p{parse_rational_list(f.re), {}};
  p.im = f.im.empty() ? zero_vector(p.re.size()) : parse_rational_list(f.im);
  require_dimension(rs, p);
  return p;
}

NegativityMode mode_of(const Flags& f) {
  if (f.mode == "weak") return NegativityMode::Weak;
  if (f.mode == "integral") return NegativityMode::Integral;
  if (f.mode == "strict") return NegativityMode::Strict;
  throw InputError("unknown mode '" + f.mode + "' (expected weak, integral or strict)");
}

const char* mode_name(NegativityMode m) {
  switch (m) {
    case NegativityMode::Weak: return "weak";
    case NegativityMode::Integral: return "integral";
    case NegativityMode::Strict: return "strict";
  }
  return "";
}

std::optional<SubspaceBasis> subspace_of(const RootSystem& rs, const Flags& f, NegativityMode mode) {
  if (mode == NegativityMode::Strict) {
    if (f.subspace) throw InputError("--subspace is not accepted in strict mode");
    return std::nullopt;
  }
  if (!f.subspace) return SubspaceBasis::whole(rs.rank());
  return SubspaceBasis::checked(parse_rows(*f.subspace), rs.rank());
}

Json cmd_build(const Flags& f) {
  const RootSystem rs = system_of(f);
  Json j;
  j["type"] = rs.name();
  j["rank"] = rs.rank();
  Json comps = Json::array();
  for (const auto& c : rs.components())
    comps.push_back(Json{{"family", std::string(family_name(c.family))}, {"rank", c.rank}, {"offset", c.offset}});
  j["components"] = comps;
  j["num_roots"] = rs.size();
  Json pos = Json::array();
  for (const auto& r : rs.positive_roots()) pos.push_back(to_json(r));
  j["positive_roots"] = pos;
  j["gram"] = to_json(rs.gram());
  j["cartan"] = rs.cartan();
  j["fundamental_coweights"] = to_json(rs.fundamental_coweights());
  j["weyl_group_order"] = to_string(weyl_group_order(rs.spec()));
  j["rho"] = to_json(rho(rs).re);
  j["dual"] = dual(rs).name();
  return j;
}

Json nsigma_json(const RootSystem& rs) {
  const NSigmaTable table = n_sigma_table(rs);
  Json j;
  j["type"] = rs.name();
  j["n_sigma"] = to_string(table.n_sigma);
  Json subs = Json::array();
  for (const auto& e : table.entries) subs.push_back(Json{{"label", e.subsystem.label}, {"n", to_string(e.n)}});
  j["subsystems"] = subs;
  return j;
}

Json cmd_nsigma(const Flags& f) {
  const RootSystem rs = system_of(f);
  if (!f.cache_dir) return nsigma_json(rs);

  namespace fs = std::filesystem;
  const fs::path dir(*f.cache_dir);
  const fs::path file = dir / "nsigma.json";
  Json cache = Json::object();
  if (fs::exists(file)) {
    std::ifstream in(file);
    try {
      cache = Json::parse(in);
    } catch (const Json::parse_error&) {
      cache = Json::object();  // unreadable cache is rebuilt
    }
    if (cache.is_object() && cache.contains(rs.name())) return cache[rs.name()];
    if (!cache.is_object()) cache = Json::object();
  }
  Json entry = nsigma_json(rs);
  cache[rs.name()] = entry;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create cache directory " + dir.string() + ": " + ec.message());
  std::random_device rd;
  const fs::path tmp = dir / ("nsigma.json.tmp." + std::to_string(rd()));
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write cache file in " + dir.string());
    out << cache.dump(2) << "\n";
  }
  fs::rename(tmp, file, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot update cache file " + file.string());
  }
  return entry;
}

Json cmd_subsystems(const Flags& f) {
  const RootSystem rs = system_of(f);
  EnumerationMethod m;
  if (f.method == "bds") {
    m = EnumerationMethod::Bds;
  } else if (f.method == "brute-force" || f.method == "brute_force") {
    m = EnumerationMethod::BruteForce;
  } else {
    throw InputError("unknown method '" + f.method + "' (expected bds or brute-force)");
  }
  Json j;
  j["type"] = rs.name();
  j["method"] = m == EnumerationMethod::Bds ? "bds" : "brute-force";
  Json subs = Json::array();
  for (const auto& s : full_rank_subsystems(rs, m)) subs.push_back(subsystem_json(rs, s));
  j["subsystems"] = subs;
  return j;
}

Json cmd_class(const Flags& f) {
  const RootSystem rs = system_of(f);
  require_enumerable(rs);
  const Parameter lambda = parameter_of(rs, f);
  const Integer n = parse_positive(f.denominator, "--denominator");
  const auto cls = equivalence_class(rs, lambda, n, f.real_part_moves ? MoveTest::RealPart : MoveTest::Complex);
  Json j;
  j["type"] = rs.name();
  j["lambda"] = parameter_json(lambda);
  j["denominator"] = to_string(n);
  j["move_test"] = f.real_part_moves ? "real-part" : "complex";
  j["integral_roots"] = roots_json(rs, integral_roots(rs, lambda, n));
  Json members = Json::array();
  for (const auto& m : cls.members)
    members.push_back(Json{{"word", weyl_json(rs, m.w)}, {"re", to_json(m.mu.re)}, {"im", to_json(m.mu.im)}});
  j["members"] = members;
  j["gallery_class_size"] = gallery_class(rs, lambda, n).chambers.size();
  j["c_lambda_size"] = c_lambda(rs, lambda, n).chambers.size();
  j["edge"] = subspace_json(edge(rs, lambda, n));
  return j;
}

Json cmd_gallery(const Flags& f) {
  const RootSystem rs = system_of(f);
  require_enumerable(rs);
  const Parameter lambda = parameter_of(rs, f);
  const Integer n = parse_positive(f.denominator, "--denominator");
  const auto g = gallery_class(rs, lambda, n);
  const auto c = c_lambda(rs, lambda, n);
  Json j;
  j["type"] = rs.name();
  j["lambda"] = parameter_json(lambda);
  Json chambers = Json::array();
  for (const auto& w : g.chambers) chambers.push_back(weyl_json(rs, w));
  j["chambers"] = chambers;
  j["size"] = g.chambers.size();
  j["c_lambda_size"] = c.chambers.size();
  j["equals_c_lambda"] = g.same_set(c);
  return j;
}

Json cmd_edge(const Flags& f) {
  const RootSystem rs = system_of(f);
  const Parameter lambda = parameter_of(rs, f);
  const Integer n = parse_positive(f.denominator, "--denominator");
  const auto e = edge(rs, lambda, n);
  Json j;
  j["type"] = rs.name();
  j["lambda"] = parameter_json(lambda);
  j["integral_roots"] = roots_json(rs, integral_roots(rs, lambda, n));
  j["dimension"] = e.dim();
  j["basis"] = subspace_json(e);
  return j;
}

Json verdict_json(const RootSystem& rs, const NegativityVerdict& v) {
  Json j;
  j["feasible"] = v.feasible;
  j["imaginary_obstruction"] = v.imaginary_obstruction;
  j["omega_basis"] = roots_json(rs, v.omega_basis);
  j["witness"] = v.witness_omega ? to_json(*v.witness_omega) : Json(nullptr);
  j["omega"] = v.witness_omega ? to_json(witness_form(rs, v)) : Json(nullptr);
  j["generator_values"] = v.feasible ? to_json(v.generator_values) : Json(nullptr);
  j["tight_generators"] = v.tight_generators;
  j["strict_generators"] = v.strict_generators;
  return j;
}

Json cmd_negativity(const Flags& f) {
  const RootSystem rs = system_of(f);
  const Parameter lambda = parameter_of(rs, f);
  const NegativityMode mode = mode_of(f);
  NegativityQuery q{lambda, mode, subspace_of(rs, f, mode), parse_positive(f.denominator, "--denominator")};
  Json j;
  j["type"] = rs.name();
  j["lambda"] = parameter_json(lambda);
  j["mode"] = mode_name(mode);
  j["subspace"] = q.a_lambda ? subspace_json(*q.a_lambda) : Json(nullptr);
  j["verdict"] = verdict_json(rs, check_negativity(rs, q));
  return j;
}

Json cmd_fundamental(const Flags& f) {
  const RootSystem rs = system_of(f);
  require_enumerable(rs);
  const Parameter lambda = parameter_of(rs, f);
  const NegativityMode mode = mode_of(f);
  const Integer n = parse_positive(f.denominator, "--denominator");
  SubspaceAssignment assign;
  assign.uniform = subspace_of(rs, f, mode);
  const auto rep = verify_fundamental_lemma(rs, lambda, mode, assign, n);
  Json j;
  j["type"] = rs.name();
  j["lambda"] = parameter_json(lambda);
  j["mode"] = mode_name(mode);
  j["class_negative"] = rep.class_negative;
  j["vacuous"] = rep.vacuous;
  j["integral_roots"] = roots_json(rs, rep.integral);
  j["edge_basis"] = subspace_json(rep.edge_basis);
  if (rep.containing_member) {
    j["containing_member"] = Json{{"word", weyl_json(rs, rep.containing_member->w)},
                                  {"subspace", subspace_json(rep.containing_member->a_mu)}};
  } else {
    j["containing_member"] = nullptr;
  }
  j["re_lambda_on_edge_zero"] = rep.re_lambda_on_edge_zero;
  j["parabolic_closure"] = Json{{"label", rep.parabolic_closure.label},
                                {"roots", roots_json(rs, rep.parabolic_closure.roots)}};
  j["lattice_divisors"] = to_json(rep.lattice_divisors);
  j["n_lattice"] = to_string(rep.n_lattice);
  j["integrality_ok"] = rep.integrality_ok;
  j["n_integral_subsystem"] = rep.n_integral_subsystem ? to_json(*rep.n_integral_subsystem) : Json(nullptr);
  j["n_sigma"] = to_string(n_sigma(rs));
  auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  j["im_lambda_on_edge_zero"] = opt(rep.im_lambda_on_edge_zero);
  j["lambda_real"] = opt(rep.lambda_real);
  j["edge_trivial"] = opt(rep.edge_trivial);
  j["coroots_full_rank"] = opt(rep.coroots_full_rank);
  return j;
}

Json cmd_exponent(const Flags& f) {
  ExponentInput in;
  if (f.mu.empty()) throw InputError("--mu is required");
  in.mu = parse_rational_list(f.mu);
  in.rank = in.mu.size();
  in.spherical = parse_rows(f.spherical);
  in.rho_q = f.rhoq.empty() ? zero_vector(in.rank) : parse_rational_list(f.rhoq);
  in.nu = f.nu.empty() ? zero_vector(in.rank) : parse_rational_list(f.nu);
  in.n = parse_positive(f.n, "--n");
  in.edge_dim = f.edge_dim;
  if (f.chi) in.chi_im = parse_rational_list(*f.chi);
  const auto cert = certify_exponent(in);
  Json j;
  j["rank"] = in.rank;
  j["spherical_roots"] = to_json(in.spherical);
  j["solvable"] = cert.solvable;
  j["coefficients"] = cert.solvable ? to_json(cert.coefficients) : Json(nullptr);
  j["nu"] = to_json(cert.nu);
  j["n"] = to_string(in.n);
  j["edge"] = subspace_json(cert.edge);
  j["cone_generators"] = to_json(cert.cone_generators);
  j["generator_values"] = to_json(cert.generator_values);
  j["lattice_ok"] = cert.lattice_ok;
  j["ds1_ok"] = cert.ds1_ok;
  j["ds2_ok"] = cert.ds2_ok;
  j["ds3_ok"] = cert.ds3_ok ? Json(*cert.ds3_ok) : Json(nullptr);
  return j;
}

Json cmd_rank_one_bound(const Flags& f) {
  std::optional<RootSystemSpec> spec;
  if (!f.type.empty() && f.type != "0" && f.type != "empty") spec = RootSystemSpec::parse(f.type);
  Json j;
  j["type"] = spec ? spec->to_string() : "";
  j["bound"] = to_string(rank_one_bound(spec));
  return j;
}

Json cmd_snf(const Flags& f) {
  if (f.matrix.empty()) throw InputError("--matrix is required");
  const IntegerMatrix a = IntegerMatrix::parse(f.matrix);
  const SNFResult s = smith_normal_form(a);
  Json j;
  j["divisors"] = to_json(s.divisors);
  j["U"] = to_json(s.U);
  j["D"] = to_json(s.D);
  j["V"] = to_json(s.V);
  return j;
}

Json cmd_verify(const Flags&) {
  Json props = Json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& r : run_verify_suite()) {
    (r.passed() ? passed : failed)++;
    props.push_back(Json{{"property", r.property},
                         {"scope", r.scope},
                         {"cases", r.cases},
                         {"failures", r.failures},
                         {"passed", r.passed()},
                         {"failure_samples", r.failure_samples}});
  }
  Json j;
  j["properties"] = props;
  j["passed"] = passed;
  j["failed"] = failed;
  return j;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  Flags f;
  CLI::App app{"Exact root-system combinatorics", "rootcomb"};
  app.require_subcommand(1);
  app.add_flag("--pretty", f.pretty, "Indent the JSON output");

  std::map<std::string, std::function<Json(const Flags&)>> handlers;
  auto sub = [&](const char* name, const char* desc, std::function<Json(const Flags&)> h) {
    handlers[name] = std::move(h);
    auto* s = app.add_subcommand(name, desc);
    s->add_flag("--pretty", f.pretty, "Indent the JSON output");
    return s;
  };
  auto type_opt = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--type", f.type, "Root system, e.g. A3, BC2, B2xG2");
    if (required) o->required();
  };
  auto param_opts = [&](CLI::App* s) {
    type_opt(s);
    s->add_option("--re", f.re, "Real parts lambda(alpha_i^vee), comma separated")->required();
    s->add_option("--im", f.im, "Imaginary parts, comma separated (default 0)");
    s->add_option("--denominator", f.denominator, "Positive integer N for (1/N)Z integrality");
  };

  type_opt(sub("build", "Construct a root system", cmd_build));
  {
    auto* s = sub("nsigma", "Full-rank subsystem constants", cmd_nsigma);
    type_opt(s);
    s->add_option("--cache-dir", f.cache_dir, "Directory for the on-disk N_Sigma cache");
  }
  {
    auto* s = sub("subsystems", "Full-rank subsystems up to conjugacy", cmd_subsystems);
    type_opt(s);
    s->add_option("--method", f.method, "bds or brute-force");
  }
  {
    auto* s = sub("class", "Equivalence class of a parameter", cmd_class);
    param_opts(s);
    s->add_flag("--real-part-moves", f.real_part_moves, "Admit moves by testing only the real part of the pairing");
  }
  param_opts(sub("gallery", "Gallery class of the identity chamber", cmd_gallery));
  param_opts(sub("edge", "Edge of a parameter", cmd_edge));
  for (auto [name, desc, h] :
       {std::tuple{"negativity", "Integral-negativity verdict", cmd_negativity},
        std::tuple{"fundamental", "Edge and integrality report for a parameter class", cmd_fundamental}}) {
    auto* s = sub(name, desc, h);
    param_opts(s);
    s->add_option("--mode", f.mode, "weak, integral or strict");
    s->add_option("--subspace", f.subspace, "Basis of a_lambda as \"a,b;c,d\" (default: all of a)");
  }
  {
    auto* s = sub("exponent", "Leading exponent certificate", cmd_exponent);
    s->add_option("--spherical", f.spherical, "Spherical roots as rows \"a11,a12;a21,a22\"")->required();
    s->add_option("--mu", f.mu, "Re mu")->required();
    s->add_option("--rhoq", f.rhoq, "rho_Q (default 0)");
    s->add_option("--nu", f.nu, "nu with mu = Re mu + i nu (default 0)");
    s->add_option("--n", f.n, "Denominator N");
    s->add_option("--edge-dim", f.edge_dim, "Expected dimension of the edge");
    s->add_option("--chi", f.chi, "chi = i chi on a_Z, checked against nu on the edge");
  }
  type_opt(sub("rank-one-bound", "The constant 18 d^2", cmd_rank_one_bound), false);
  sub("snf", "Smith normal form", cmd_snf)->add_option("--matrix", f.matrix, "Integer matrix \"a,b;c,d\"")->required();
  sub("verify", "Run the property suite", cmd_verify);

  std::vector<std::string> argv_store{"rootcomb"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  Outcome res;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    res.out = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = 2;
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }

  try {
    const auto* chosen = app.get_subcommands().front();
    const Json j = handlers.at(chosen->get_name())(f);
    res.out = j.dump(f.pretty ? 2 : -1) + "\n";
  } catch (const InputError& e) {
    res.exit_code = 2;
    res.err = std::string("input error: ") + e.what() + "\n";
  } catch (const CapacityError& e) {
    res.exit_code = 2;
    res.err = std::string("capacity error: ") + e.what() + "\n";
  } catch (const InvariantError& e) {
    res.exit_code = 3;
    res.err = std::string("invariant violation: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = 3;
    res.err = std::string("internal error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace rootcomb::cli
