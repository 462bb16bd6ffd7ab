// evtol-plan: plan hover-to-hover traversals, print benchmark tables, export sweeps.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evtol/errors.hpp"
#include "evtol/mission.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw evtol::ConfigError(p.string() + ": cannot open for writing");
  return out;
}

int run_plan(const std::string& config, const std::string& out_dir, const std::string& format) {
  const auto cfg = evtol::MissionConfig::load(config);
  const auto model = cfg.load_vehicle();
  const evtol::PlanResult res = evtol::plan(cfg, model);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (!res.series.empty()) {
    if (format == "csv") {
      auto out = open_out(dir / "trajectory.csv");
      evtol::write_csv(out, res.series);
    } else {
      auto out = open_out(dir / "trajectory.json");
      out << evtol::to_json(res.series).dump() << '\n';
    }
  }
  nlohmann::json report = evtol::to_json(res.report);
  report["vehicle"] = model.name();
  {
    auto out = open_out(dir / "report.json");
    out << report.dump(2) << '\n';
  }

  const auto& r = res.report;
  std::printf("verdict: %s (%s)\n", evtol::to_string(r.verdict), r.method.c_str());
  if (!r.reason.empty()) std::printf("note: %s\n", r.reason.c_str());
  if (r.verdict != evtol::Verdict::Infeasible) {
    std::printf("energy: %.1f J  peak power: %.1f W  duration: %.2f s\n", r.total_energy, r.peak_power,
                r.phases.duration());
    std::printf("cruise: ground %.3f m/s  air %.3f m/s  crab %.2f deg\n", r.v_gc, r.v_ac, evtol::rad2deg(r.crab));
  }
  return r.verdict == evtol::Verdict::Infeasible ? kExitInfeasible : kExitOk;
}

int run_bench(const std::string& config, bool as_json) {
  const auto cfg = evtol::MissionConfig::load(config);
  const auto model = cfg.load_vehicle();
  const auto rows = evtol::benchmark_table(cfg, model);
  if (as_json) {
    std::cout << evtol::to_json(rows).dump(2) << '\n';
    return kExitOk;
  }
  std::printf("%-20s %9s %10s %14s %11s %11s\n", "configuration", "crab_deg", "peak_w", "energy_kj", "savings_%",
              "airspeed");
  for (const auto& r : rows) {
    std::printf("%-20s %9.2f %10.1f %14.2f %11.1f %11.3f%s\n", r.name.c_str(), r.crab_deg, r.peak_power,
                r.energy / 1000.0, 100.0 * r.savings, r.cruise_airspeed, r.stf ? "" : "  (STF=false)");
  }
  return kExitOk;
}

int run_sweep(const std::string& kind, const std::string& config, const std::string& out) {
  const auto cfg = evtol::MissionConfig::load(config);
  const auto model = cfg.load_vehicle();
  const auto table = evtol::sweep(kind, cfg, model);
  if (out.empty()) {
    evtol::write_csv(std::cout, table);
  } else {
    auto f = open_out(out);
    evtol::write_csv(f, table);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-energy hover-to-hover traversal planner for Lift+Cruise eVTOL aircraft"};
  app.require_subcommand(1);

  std::string config, out_dir, format = "csv", kind, sweep_out;
  bool bench_json = false;

  auto* plan_cmd = app.add_subcommand("plan", "Plan one traversal and write trajectory + report");
  plan_cmd->add_option("--config", config, "Mission config JSON")->required()->check(CLI::ExistingFile);
  plan_cmd->add_option("--out-dir", out_dir, "Output directory")->required();
  plan_cmd->add_option("--format", format, "Trajectory format")->check(CLI::IsMember({"csv", "json"}));

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark tables");
  auto* table1 = bench_cmd->add_subcommand("table1", "Quad-only / Plane-only / Quad+Hybrid / Quad+Hybrid+Plane");
  bench_cmd->require_subcommand(1);
  table1->add_option("--config", config, "Mission config JSON")->required()->check(CLI::ExistingFile);
  table1->add_flag("--json", bench_json, "Print JSON instead of a text table");

  auto* sweep_cmd = app.add_subcommand("sweep", "Plot-ready parameter sweeps as CSV");
  sweep_cmd->add_option("--kind", kind, "Sweep kind")->required()->check(CLI::IsMember({"fig8", "fig9", "fig10", "fig11"}));
  sweep_cmd->add_option("--config", config, "Mission config JSON")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_out, "Output CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*plan_cmd) return run_plan(config, out_dir, format);
    if (*table1) return run_bench(config, bench_json);
    if (*sweep_cmd) return run_sweep(kind, config, sweep_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
