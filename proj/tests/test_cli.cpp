#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "rootcomb/cli.hpp"

using rootcomb::cli::run;
using Json = nlohmann::ordered_json;

namespace {

Json ok(const std::vector<std::string>& args) {
  const auto r = run(args);
  INFO(r.err);
  REQUIRE(r.exit_code == 0);
  return Json::parse(r.out);
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j)
      if (has_float(x)) return true;
  return false;
}

}  // namespace

TEST_CASE("nsigma") {
  const auto j = ok({"nsigma", "--type", "A3"});
  CHECK(j["type"] == "A3");
  CHECK(j["n_sigma"] == "1");
  CHECK(j.begin().key() == "type");
  CHECK(ok({"nsigma", "--type", "B2"})["n_sigma"] == "2");
  CHECK(ok({"nsigma", "--type", "G2xB2"})["type"] == "B2xG2");
  const auto bad = run({"nsigma", "--type", "Z9"});
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.empty());
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
}

TEST_CASE("snf") {
  const auto j = ok({"snf", "--matrix", "2,1;0,2"});
  CHECK(j["divisors"] == Json::array({"1", "4"}));
  CHECK(run({"snf", "--matrix", "1,2;3"}).exit_code == 2);
}

TEST_CASE("rank-one bound") {
  CHECK(ok({"rank-one-bound", "--type", "A2"})["bound"] == "162");
  CHECK(ok({"rank-one-bound"})["bound"] == "18");
  CHECK(ok({"rank-one-bound", "--type", "B2"})["bound"] == "72");
}

TEST_CASE("parameter commands") {
  auto j = ok({"class", "--type", "A2", "--re", "1/2,1/2", "--im", "0,0"});
  CHECK(j["members"].size() == 3);
  CHECK(j["gallery_class_size"] == 3);
  CHECK(j["c_lambda_size"] == 3);
  CHECK(j["edge"].size() == 1);

  j = ok({"class", "--type", "A1", "--re", "1", "--im", "1/2", "--real-part-moves"});
  CHECK(j["members"].size() == 1);
  CHECK(j["move_test"] == "real-part");

  j = ok({"gallery", "--type", "A2", "--re", "1/2,1/2"});
  CHECK(j["size"] == 3);
  CHECK(j["equals_c_lambda"] == true);

  j = ok({"edge", "--type", "A2", "--re", "0,0"});
  CHECK(j["dimension"] == 0);

  j = ok({"negativity", "--type", "A2", "--re", "-1,-1", "--im", "0,0", "--mode", "strict"});
  CHECK(j["verdict"]["feasible"] == true);
  CHECK(j["verdict"]["witness"].is_array());

  j = ok({"negativity", "--type", "A1", "--re", "1/2", "--mode", "strict"});
  CHECK(j["verdict"]["feasible"] == false);
  CHECK(j["verdict"]["witness"].is_null());

  j = ok({"negativity", "--type", "A2", "--re", "0,0", "--mode", "weak", "--subspace", "1,0;0,1"});
  CHECK(j["verdict"]["feasible"] == true);

  j = ok({"fundamental", "--type", "A2", "--re", "-1,-1", "--mode", "strict"});
  CHECK(j["n_lattice"] == "3");
  CHECK(j["edge_trivial"] == true);
  CHECK(j["integrality_ok"] == true);
}

TEST_CASE("exponent") {
  auto j = ok({"exponent", "--spherical", "1", "--mu", "1/2", "--rhoq", "0", "--nu", "0", "--n", "2"});
  CHECK(j["coefficients"] == Json::array({"1/2"}));
  CHECK(j["lattice_ok"] == true);
  CHECK(j["ds1_ok"] == true);
  j = ok({"exponent", "--spherical", "1,0;0,1", "--mu", "1/3,2/3", "--rhoq", "0,0", "--nu", "0,0", "--n", "3"});
  CHECK(j["lattice_ok"] == true);
  CHECK(run({"exponent", "--spherical", "1,0;2,0", "--mu", "1,1"}).exit_code == 2);
  CHECK(run({"exponent", "--spherical", "1,0", "--mu", "1,1", "--edge-dim", "0"}).exit_code == 2);
}

TEST_CASE("input errors exit with 2") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"nsigma"},
           {"nsigma", "--type", "A2", "--bogus", "1"},
           {"class", "--type", "A2", "--re", "1"},
           {"class", "--type", "A2", "--re", "1,x"},
           {"class", "--type", "A2", "--re", "0.5,1"},
           {"class", "--type", "A2", "--re", "1,1", "--denominator", "0"},
           {"negativity", "--type", "A2", "--re", "1,1", "--mode", "sideways"},
           {"negativity", "--type", "A2", "--re", "1,1", "--mode", "strict", "--subspace", "1,0"},
           {"negativity", "--type", "A2", "--re", "1,1", "--mode", "weak", "--subspace", "1,0;2,0"},
           {"subsystems", "--type", "A4", "--method", "brute-force"},
           {"subsystems", "--type", "A2", "--method", "guess"},
           {"class", "--type", "E8", "--re", "0,0,0,0,0,0,0,0"},
       }) {
    const auto r = run(args);
    CAPTURE(args.size());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.err.empty());
  }
  CHECK(run({"class", "--type", "E8", "--re", "0,0,0,0,0,0,0,0"}).err.find("1000000") != std::string::npos);
}

TEST_CASE("determinism and round trip") {
  const std::vector<std::vector<std::string>> cmds{
      {"build", "--type", "G2"},
      {"subsystems", "--type", "B3"},
      {"class", "--type", "G2", "--re", "1/2,1/3", "--im", "0,1/2"},
      {"fundamental", "--type", "B2", "--re", "-1,-1", "--mode", "integral"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK(j.dump() + "\n" == a.out);
    CHECK_FALSE(has_float(j));
  }
  auto p = run({"build", "--type", "A2", "--pretty"});
  CHECK(Json::parse(p.out) == Json::parse(run({"build", "--type", "A2"}).out));
}

TEST_CASE("nsigma cache") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rootcomb_cache_test";
  fs::remove_all(dir);
  const auto first = run({"nsigma", "--type", "G2", "--cache-dir", dir.string()});
  REQUIRE(first.exit_code == 0);
  REQUIRE(fs::exists(dir / "nsigma.json"));
  std::ifstream in(dir / "nsigma.json");
  const Json cache = Json::parse(in);
  CHECK(cache.contains("G2"));
  const auto second = run({"nsigma", "--type", "G2", "--cache-dir", dir.string()});
  CHECK(second.out == first.out);
  CHECK(second.out == run({"nsigma", "--type", "G2"}).out);
  fs::remove_all(dir);
}
