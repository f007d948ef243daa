// Command line front end: run, sweep, reproduce, modes.

#include "fgm/config.hpp"
#include "fgm/errors.hpp"
#include "fgm/runner.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Flags {
  std::string out;
  int threads = 1;
  std::string mesh;
  bool quiet = false;
};

std::optional<std::pair<int, int>> parse_mesh(const std::string& s) {
  if (s.empty()) return std::nullopt;
  static const std::regex re(R"((\d+)[xX](\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw std::invalid_argument("--mesh expects NXxNY, got '" + s + "'");
  return std::make_pair(std::stoi(m[1]), std::stoi(m[2]));
}

void apply_flags(fgm::CaseConfig& c, const Flags& f) {
  if (auto mesh = parse_mesh(f.mesh)) {
    c.plate.nx = mesh->first;
    c.plate.ny = mesh->second;
  }
  if (!f.out.empty()) c.output.directory = f.out;
  c.validate();
}

void print_spectrum(const fgm::CaseResult& r) {
  std::printf("%-6s %-16s %-14s\n", "mode", "omega [rad/s]", to_string(r.spectrum.style).c_str());
  for (std::size_t i = 0; i < r.spectrum.omega.size(); ++i)
    std::printf("%-6zu %-16.8g %-14.6f%s\n", i + 1, r.spectrum.omega[i], r.spectrum.Omega[i],
                r.spectrum.buckled[i] ? "  (buckled)" : "");
}

int run(const std::string& path, const Flags& f, bool modes) {
  fgm::CaseConfig c = fgm::load_case(path);
  if (modes) c.output.mode_shapes = true;
  apply_flags(c, f);
  fgm::RunOptions ro;
  ro.threads = f.threads;
  const fgm::CaseResult r = fgm::run_case(c, ro);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  const auto files = fgm::write_case_outputs(c, r);
  if (!f.quiet) {
    print_spectrum(r);
    for (const auto& p : files) std::printf("wrote %s\n", p.c_str());
  }
  return 0;
}

int sweep(const std::string& path, const Flags& f) {
  fgm::SweepSpec s = fgm::load_sweep(path);
  apply_flags(s.base, f);
  const fgm::SweepTable t = fgm::run_sweep(s, f.threads);
  const std::string dir = s.base.output.directory;
  std::filesystem::create_directories(dir);
  const std::string file = (std::filesystem::path(dir) / (s.base.output.prefix + "_sweep.csv")).string();
  std::ofstream out(file);
  if (!out) throw std::invalid_argument("cannot write '" + file + "'");
  t.write_csv(out);
  if (!f.quiet) {
    t.write_csv(std::cout);
    std::printf("wrote %s\n", file.c_str());
  }
  return 0;
}

int reproduce(const std::string& id, const Flags& f) {
  fgm::ReproduceOptions ro;
  ro.threads = f.threads;
  ro.mesh = parse_mesh(f.mesh);
  std::vector<std::string> ids;
  if (id == "all")
    ids = fgm::table_ids();
  else
    ids.push_back(id);
  const std::string dir = f.out.empty() ? "." : f.out;
  std::filesystem::create_directories(dir);
  for (const auto& t : ids) {
    const fgm::TableReport rep = fgm::reproduce_table(t, ro);
    const std::string file = (std::filesystem::path(dir) / (t + "_report.csv")).string();
    std::ofstream out(file);
    if (!out) throw std::invalid_argument("cannot write '" + file + "'");
    rep.write_csv(out);
    if (!f.quiet) {
      std::printf("%s: %zu cells, max relative error %.3f%% (threshold %.1f%%) -> %s\n", t.c_str(),
                  rep.rows.size(), 100.0 * rep.max_relative_error(), 100.0 * rep.threshold,
                  rep.passed() ? "PASS" : "FAIL");
      for (const auto& c : rep.checks)
        std::printf("  %s: %s (%s)\n", c.name.c_str(), c.passed ? "ok" : "FAILED", c.detail.c_str());
      for (const auto& r : rep.rows)
        if (!r.error.empty()) std::printf("  %s / %s: %s\n", r.reference.row.c_str(),
                                          r.reference.column.c_str(), r.error.c_str());
      std::printf("  wrote %s\n", file.c_str());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free vibration and thermal deflection of graded Mindlin plates with cutouts and cracks"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--out", flags.out, "output directory");
  app.add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--mesh", flags.mesh, "mesh override, e.g. 40x40");
  app.add_flag("--quiet", flags.quiet, "suppress console tables");

  std::string config;
  std::string table;
  auto* run_cmd = app.add_subcommand("run", "solve one case");
  run_cmd->add_option("config", config, "case JSON")->required();
  auto* modes_cmd = app.add_subcommand("modes", "solve one case and export mode shapes");
  modes_cmd->add_option("config", config, "case JSON")->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "parametric sweep");
  sweep_cmd->add_option("config", config, "sweep JSON")->required();
  auto* rep_cmd = app.add_subcommand("reproduce", "compare against a published table");
  rep_cmd->add_option("table", table, "T3..T8 or all")->required();
  for (auto* sub : {run_cmd, modes_cmd, sweep_cmd, rep_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run_cmd) return run(config, flags, false);
    if (*modes_cmd) return run(config, flags, true);
    if (*sweep_cmd) return sweep(config, flags);
    if (*rep_cmd) return reproduce(table, flags);
  } catch (const fgm::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
