// Command-line front end for the experiment matrix and trajectory comparison.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ahmp/bench.hpp"
#include "ahmp/error.hpp"

namespace fs = std::filesystem;

namespace {

int run(const fs::path& scenario_path,
        const fs::path& out_dir,
        const std::string& format_name,
        bool include_30k,
        std::optional<std::uint64_t> seed_override,
        bool strict)
{
  ahmp::Scenario scenario = ahmp::load_scenario(scenario_path);
  if (include_30k)
    scenario.matrix.include_30k = true;
  if (seed_override)
    scenario.matrix.seeds = {*seed_override};

  const ahmp::ReportFormat format =
      format_name == "markdown" ? ahmp::ReportFormat::Markdown : ahmp::ReportFormat::Csv;
  const std::string ext = format == ahmp::ReportFormat::Csv ? ".csv" : ".md";

  const auto rows = ahmp::run_matrix(scenario, [](const ahmp::CellOutcome& cell) {
    std::cerr << cell.spec.planner << " samples=" << cell.spec.max_samples
              << " goals=" << cell.spec.n_goals << " seed=" << cell.spec.seed
              << " expanded=" << cell.row.nodes_expanded << '\n';
  });

  fs::create_directories(out_dir);
  ahmp::emit_report(rows, format, out_dir / ("report" + ext));
  const auto ratios = ahmp::expansion_ratios(rows);
  {
    std::ofstream f(out_dir / ("expansion_ratios" + ext), std::ios::binary | std::ios::trunc);
    if (!f)
      throw ahmp::IoError("cannot write expansion ratios to " + out_dir.string());
    f << ahmp::format_ratios(ratios, format);
  }
  std::cout << "wrote " << rows.size() << " rows to " << (out_dir / ("report" + ext)).string()
            << '\n';

  if (strict)
    for (const auto& r : rows)
      if (r.failed())
        return 3;
  return 0;
}

int compare(const fs::path& a, const fs::path& b)
{
  const auto ta = ahmp::read_trajectory(a);
  const auto tb = ahmp::read_trajectory(b);
  const auto err = ahmp::mean_abs_joint_error(ta, tb);
  std::printf("joint,mean_abs_error,std\n");
  for (std::size_t k = 0; k < err.size(); ++k)
    std::printf("%zu,%.6f,%.6f\n", k, err[k].mean, err[k].std);
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Multi-goal motion planning benchmark"};
  app.require_subcommand(1);

  fs::path scenario_path, out_dir;
  std::string format = "csv";
  bool include_30k = false;
  bool strict = false;
  std::optional<std::uint64_t> seed_override;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario's experiment matrix");
  run_cmd->add_option("scenario", scenario_path, "Scenario file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "markdown"}));
  run_cmd->add_flag("--include-30k", include_30k, "Add the 30000-sample roadmap");
  run_cmd->add_option("--seed-override", seed_override, "Run a single seed");
  run_cmd->add_flag("--strict", strict, "Exit nonzero if any cell failed");

  fs::path traj_a, traj_b;
  auto* cmp_cmd = app.add_subcommand("compare-trajectories",
                                     "Per-joint mean absolute error between two trajectories");
  cmp_cmd->add_option("fileA", traj_a)->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("fileB", traj_b)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*run_cmd)
      return run(scenario_path, out_dir, format, include_30k, seed_override, strict);
    return compare(traj_a, traj_b);
  }
  catch (const ahmp::Error& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
