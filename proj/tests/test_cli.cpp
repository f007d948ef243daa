#include "doctest.h"

#include "fgm/config.hpp"
#include "fgm/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace fgm;
namespace fs = std::filesystem;

namespace {

CaseConfig small_case() {
  CaseConfig c;
  c.plate = PlateSpec{1.0, 1.0, 0.1, 8, 8, BoundaryCondition::SSSS};
  c.material.k = 1.0;
  c.thermal = ThermalBC{400, 300, 300};
  c.solver.n_modes = 2;
  return c;
}

CaseConfig cracked_case() {
  CaseConfig c = small_case();
  CutoutConfig hole;
  hole.type = "ellipse";
  hole.semi_major = 0.2;
  hole.semi_minor = 0.1;
  hole.orientation_deg = 30;
  c.geometry.cutouts.push_back(hole);
  CrackConfig crack;
  crack.cutout = 0;
  crack.angle_deg = 30;
  crack.length = 0.1;
  c.geometry.cracks.push_back(crack);
  CrackConfig edge;
  edge.point = Vec2(0.0, 0.27);
  edge.direction_deg = 0.0;
  edge.length = 0.15;
  c.geometry.cracks.push_back(edge);
  c.output.mode_shapes = true;
  c.solver.normalization = NormalizationStyle::table3;
  return c;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fgmplate_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FGMPLATE_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("case configuration round trip") {
  for (const CaseConfig& c : {CaseConfig{}, small_case(), cracked_case()}) {
    const std::string text = dump_case(c);
    const CaseConfig back = parse_case(text);
    CHECK(back == c);
    CHECK(dump_case(back) == text);
  }
}

TEST_CASE("defaults fill missing keys") {
  const CaseConfig c = parse_case(R"({"plate": {"nx": 10, "ny": 12}})");
  CHECK(c.plate.nx == 10);
  CHECK(c.plate.ny == 12);
  CHECK(c.plate.a == 1.0);
  CHECK(c.material.system == "Si3N4/SUS304");
  CHECK(c.material.nu_fixed == 0.28);
  CHECK(c.solver.normalization == NormalizationStyle::main);
}

TEST_CASE("malformed configurations are rejected") {
  CHECK_THROWS_AS(parse_case(R"({"plate": {"a": 1.0, "colour": 3}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case(R"({"plates": {}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case(R"({"plate": {"nx": "forty"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case(R"({"plate": {"nx": 10.5}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case(R"({"material": {"k": -1}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case(R"({"plate": {"bc": "SCSC"}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case(R"({"solver": {"n_modes": 0}})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case("{ not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_case("/nonexistent/case.json"), std::invalid_argument);
}

TEST_CASE("parameter substitution") {
  const CaseConfig c = with_parameter(small_case(), "material.k", 5.0);
  CHECK(c.material.k == 5.0);
  const CaseConfig t = with_parameter(cracked_case(), "geometry.cutouts.0.orientation_deg", 60.0);
  CHECK(t.geometry.cutouts[0].orientation_deg == 60.0);
  CHECK(with_parameter(small_case(), "plate.nx", 12.0).plate.nx == 12);
  CHECK_THROWS_AS(with_parameter(small_case(), "plate.nx", 12.5), std::invalid_argument);
  CHECK_THROWS_AS(with_parameter(small_case(), "material.colour", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(with_parameter(small_case(), "plate.bc", 1.0), std::invalid_argument);
}

TEST_CASE("sweep round trip and expansion order") {
  SweepSpec s;
  s.base = small_case();
  s.axes = {{"material.k", {0.0, 1.0}}, {"thermal.Tc", {300.0, 400.0, 500.0}}};
  const std::string text = sweep_to_json(s).dump();
  CHECK(parse_sweep(text) == s);
  const auto cases = s.expand();
  REQUIRE(cases.size() == 6);
  CHECK(cases[0].material.k == 0.0);
  CHECK(cases[2].thermal.Tc == 500.0);
  CHECK(cases[3].material.k == 1.0);
  CHECK(cases[3].thermal.Tc == 300.0);
  CHECK_THROWS_AS(parse_sweep(R"({"base": {}, "parameters": [{"name": "plate.q", "values": [1]}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep(R"({"base": {}, "parameters": []})"), std::invalid_argument);
}

TEST_CASE("empty sweep writes the header only") {
  SweepSpec s;
  s.base = small_case();
  s.axes = {{"material.k", {}}};
  const SweepTable t = run_sweep(s);
  CHECK(t.rows.empty());
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str() == "material.k,mode_1,mode_2,error\n");
}

TEST_CASE("sweep output is deterministic and records failures") {
  SweepSpec s;
  s.base = small_case();
  s.axes = {{"material.k", {0.5, -2.0, 2.0}}};
  std::ostringstream a, b;
  run_sweep(s, 1).write_csv(a);
  run_sweep(s, 3).write_csv(b);
  CHECK(a.str() == b.str());
  const SweepTable t = run_sweep(s);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].back().empty());
  CHECK_FALSE(t.rows[1].back().empty());
  CHECK(t.rows[1][1].empty());
  CHECK_FALSE(t.rows[2][1].empty());
}

TEST_CASE("run_case matches the library pipeline") {
  const CaseConfig c = small_case();
  const CaseResult r = run_case(c);
  const MaterialSystem mat = c.material.resolve();
  const SectionProperties sec = integrate_section(mat, c.plate.h, c.thermal, ShearCorrection{c.material.shear_correction});
  const Mesh m = generate_mesh(c.plate);
  const EnrichmentPlan plan = classify(m, {});
  const DiscreteSystem sys = assemble(m, plan, sec, c.plate.bc);
  SpectralResult direct = solve_eigen(sys, c.solver.n_modes);
  apply_normalization(direct, c.solver.normalization,
                      normalization_reference(mat, c.plate.a, c.plate.h, c.thermal.T0));
  REQUIRE(r.spectrum.Omega.size() == 2);
  for (int i = 0; i < 2; ++i)
    CHECK(r.spectrum.Omega[i] == doctest::Approx(direct.Omega[i]).epsilon(1e-12));
}

TEST_CASE("errors carry the failing stage") {
  CaseConfig c = small_case();
  CrackConfig floating;
  floating.point = Vec2(0.4, 0.4);
  floating.direction_deg = 0;
  floating.length = 0.1;
  c.geometry.cracks.push_back(floating);
  try {
    run_case(c);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).rfind("config: ", 0) == 0);
    CHECK(std::string(e.what()).find("crack mouth") != std::string::npos);
  }
}

TEST_CASE("case outputs are written") {
  const fs::path dir = scratch_dir("outputs");
  CaseConfig c = cracked_case();
  c.output.directory = dir.string();
  c.output.prefix = "x";
  c.output.static_field = true;
  c.output.plan_dump = true;
  const CaseResult r = run_case(c);
  const auto files = write_case_outputs(c, r);
  CHECK(files.size() == 4);
  for (const char* name : {"x_frequencies.csv", "x_modes.txt", "x_static.csv", "x_plan.txt"})
    CHECK(fs::exists(dir / name));
  fs::remove_all(dir);
}

TEST_CASE("command line exit codes") {
  const fs::path dir = scratch_dir("exit");
  write_file(dir / "good.json", dump_case(small_case()));
  write_file(dir / "unknown.json", R"({"plate": {"a": 1, "wings": 2}})");
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("run " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("run " + (dir / "unknown.json").string()) == 2);
  CHECK(run_cli("--quiet --out " + dir.string() + " run " + (dir / "good.json").string()) == 0);
  CHECK(fs::exists(dir / "case_frequencies.csv"));
  CHECK(run_cli("reproduce T99") != 0);
  fs::remove_all(dir);
}

}  // TEST_SUITE
