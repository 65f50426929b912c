#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "liefock/errors.hpp"
#include "liefock/io.hpp"
#include "liefock/scenario.hpp"

using namespace liefock;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("liefock_test_" + name);
  fs::remove_all(p);
  return p;
}

std::map<std::string, std::string> snapshot_dir(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path().string());
  }
  return out;
}

std::string error_path(const nlohmann::json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

Eigen::MatrixXd snapshot_image(const RunSpec& r, std::size_t index) {
  const auto mh = build_hamiltonian(r.hamiltonian);
  const Vector psi0 = build_initial_state(r.initial, mh.model);
  const auto res = evolve(mh.h, psi0, r.times.expand());
  return lattice_image(mh.model, res.populations.row(static_cast<Eigen::Index>(index)).transpose());
}

const RunSpec& run_named(const ScenarioConfig& c, const std::string& id) {
  for (const auto& r : c.runs) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("missing run " + id);
}

}  // namespace

TEST_CASE("built-in configs round trip through json") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const ScenarioConfig c = builtin_scenario(name);
    CHECK(parse_config(to_json(c)) == c);
    CHECK(parse_config_text(to_json(c).dump()) == c);
  }
}

TEST_CASE("strict config parsing") {
  nlohmann::json base = to_json(builtin_scenario("ws_breathing"));
  SUBCASE("unknown field") {
    auto j = base;
    j["runs"][0]["bogus"] = 1;
    CHECK(error_path(j) == "runs[0].bogus");
  }
  SUBCASE("wrong type") {
    auto j = base;
    j["runs"][0]["method"] = 3;
    CHECK(error_path(j) == "runs[0].method");
  }
  SUBCASE("empty times") {
    auto j = base;
    j["runs"][0]["times"] = nlohmann::json::array();
    const std::string p = error_path(j);
    CHECK(p.find("times") != std::string::npos);
    j["runs"][0]["times"] = {{"start", 0.0}, {"stop", 1.0}, {"steps", 0}};
    CHECK(error_path(j).find("times") != std::string::npos);
  }
  SUBCASE("non-increasing times") {
    auto j = base;
    j["runs"][0]["times"] = {0.0, 1.0, 1.0};
    CHECK(error_path(j).find("times") != std::string::npos);
  }
  SUBCASE("version and duplicate ids") {
    auto j = base;
    j["version"] = 2;
    CHECK(error_path(j) == "version");
    auto d = base;
    d["runs"].push_back(d["runs"][0]);
    CHECK_FALSE(error_path(d).empty());
  }
  SUBCASE("hamiltonian needs exactly one form") {
    auto j = base;
    j["runs"][0]["hamiltonian"]["algebra"] = "hw";
    CHECK(error_path(j).find("hamiltonian") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("{not json"), ConfigError);
  CHECK_THROWS_AS(builtin_scenario("nope"), InvalidArgument);
}

TEST_CASE("scenario runs are deterministic") {
  const auto c = builtin_scenario("jc_sectors");
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const RunArchive ra = run_scenario(c, a.string());
  run_scenario(c, b.string(), {4, 1e-10});
  const auto fa = snapshot_dir(a), fb = snapshot_dir(b);
  CHECK(fa.size() == ra.outputs.size() + 1);
  CHECK(fa == fb);
  CHECK(fa.count("manifest.json") == 1);
  CHECK(fa.count("config.json") == 1);
  CHECK(parse_config_text(fa.at("config.json")) == c);
  const auto manifest = nlohmann::json::parse(fa.at("manifest.json"));
  CHECK(manifest.at("config_hash") == ra.config_hash);
  CHECK_FALSE(manifest.contains("wall_seconds"));
  for (const auto& f : manifest.at("outputs")) CHECK(fnv1a_hex(fa.at(f.at("path").get<std::string>())) == f.at("fnv1a"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("su(2) transfer is complete at a half period") {
  auto c = builtin_scenario("fig2_su2", {{"S", 10}});
  auto& r = c.runs[0];
  const auto mh = build_hamiltonian(r.hamiltonian);
  const Vector psi0 = build_initial_state(r.initial, mh.model);
  const auto t = r.times.expand();
  REQUIRE(t.size() == 121u);
  CHECK(t[60] == doctest::Approx(std::numbers::pi / 2));
  const auto res = evolve(mh.h, psi0, t);
  // Lowest level of the spin mode is m = -S.
  CHECK(res.populations(60, 0) > 1 - 1e-8);
  CHECK(res.populations(120, 20) > 1 - 1e-8);
}

TEST_CASE("three-mode snapshots without flux are mirror symmetric") {
  const auto c = builtin_scenario("fig3_su3", {{"N", 9}});
  const Eigen::MatrixXd zero = snapshot_image(run_named(c, "phi_0"), 1);
  CHECK((zero - zero.rowwise().reverse()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::MatrixXd flux = snapshot_image(run_named(c, "phi_pi3"), 1);
  CHECK((flux - flux.rowwise().reverse()).cwiseAbs().maxCoeff() > 1e-6);
  CHECK(zero.sum() == doctest::Approx(1.0));
}

TEST_CASE("so5 center snapshot at phi = pi/2 breaks the left-right mirror") {
  const auto c = builtin_scenario("fig4_so5", {{"N", 8}});
  const Eigen::MatrixXd img = snapshot_image(run_named(c, "center_phi_pi2"), 2);
  CHECK(img.sum() == doctest::Approx(1.0));
  CHECK((img - img.rowwise().reverse()).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("heatmap encoding") {
  SUBCASE("single pixel") {
    Eigen::MatrixXd m(1, 1);
    m << 0.3;
    const std::string s = encode_heatmap(m);
    CHECK(s.rfind("P5\n", 0) == 0);
    CHECK(static_cast<unsigned char>(s[s.size() - 2]) == 0xff);
    CHECK(static_cast<unsigned char>(s[s.size() - 1]) == 0xff);
  }
  SUBCASE("constant zero image stays black") {
    const std::string s = encode_heatmap(Eigen::MatrixXd::Zero(2, 3));
    for (std::size_t i = s.size() - 12; i < s.size(); ++i) CHECK(s[i] == '\0');
  }
  SUBCASE("header dimensions are width then height") {
    const std::string s = encode_heatmap(Eigen::MatrixXd::Ones(2, 3));
    CHECK(s.find("\n3 2\n65535\n") != std::string::npos);
    CHECK(s.find("# normalization") != std::string::npos);
  }
  SUBCASE("fourth root brightens small values") {
    Eigen::MatrixXd m(1, 2);
    m << 1.0, 1.0 / 16.0;
    const std::string lin = encode_heatmap(m), root = encode_heatmap(m, {true});
    auto last = [](const std::string& s) { return 256 * static_cast<unsigned char>(s[s.size() - 2]) + static_cast<unsigned char>(s.back()); };
    CHECK(last(lin) == 4096);
    CHECK(last(root) == 32768);
  }
  SUBCASE("invalid input") {
    Eigen::MatrixXd neg(1, 1);
    neg << -1.0;
    CHECK_THROWS_AS(encode_heatmap(neg), InvalidArgument);
    CHECK_THROWS_AS(encode_heatmap(Eigen::MatrixXd(0, 0)), InvalidArgument);
  }
}

TEST_CASE("resource guard and bad output indices") {
  auto c = builtin_scenario("fig3_su3");
  c.runs.resize(1);
  c.runs[0].method = Method::dense_eig;
  const fs::path out = scratch("guard");
  CHECK_THROWS_AS(run_scenario(c, out.string()), ResourceGuardError);
  CHECK_FALSE(fs::exists(out / "manifest.json"));
  auto bad = builtin_scenario("ws_breathing");
  bad.runs[0].outputs.snapshots.push_back({999, "x.pgm", "", false});
  CHECK_THROWS_AS(run_scenario(bad, out.string()), ConfigError);
  fs::remove_all(out);
}

TEST_CASE("closure scenario writes one report per seed") {
  const fs::path out = scratch("closure");
  const RunArchive a = run_scenario(builtin_scenario("closure_gallery"), out.string());
  CHECK(a.results.at("sp4").at("dim") == 10);
  CHECK(fs::exists(out / "sp4" / "closure.json"));
  fs::remove_all(out);
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(format_double(x)) == x);
  CsvTable t({"a", "b"});
  t.add_row({1.0, 0.5});
  CHECK(t.str() == "a,b\n1,0.5\n");
  CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);
}
