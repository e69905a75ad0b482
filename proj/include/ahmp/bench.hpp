#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahmp/bayesnet.hpp"
#include "ahmp/planner.hpp"
#include "ahmp/roadmap.hpp"
#include "ahmp/search.hpp"
#include "ahmp/world.hpp"

namespace ahmp {

inline const std::string kPlannerPrmAstar = "prm_astar";
inline const std::string kPlannerRrt = "rrt";
inline const std::string kPlannerAhmp = "ahmp";

struct GoalRule
{
  enum class Mode
  {
    Explicit,
    Random,
    Clustered,
  };

  Mode mode = Mode::Clustered;
  std::vector<GoalSpec> goals;             // Explicit
  std::size_t count = 10;                  // Random, Clustered
  std::uint64_t seed = 0;                  // mixed with the cell seed
  std::vector<Configuration> centers;      // Clustered; goal i uses centers[i % n]
  double spread = 0.15;                    // Clustered; per-joint half-width

  bool operator==(const GoalRule& other) const;
};

struct ExperimentMatrix
{
  std::vector<std::string> planners;
  std::vector<std::size_t> max_samples;
  std::vector<std::size_t> goal_counts;
  std::vector<std::uint64_t> seeds;
  bool include_30k = false;

  /// max_samples with 30000 appended when include_30k is set.
  std::vector<std::size_t> effective_max_samples() const;

  bool operator==(const ExperimentMatrix&) const = default;
};

struct Scenario
{
  KinematicChain chain = KinematicChain::default_chain();
  JointLimits limits = JointLimits::default_limits();
  Environment environment = Environment::default_tank();
  BuildParams roadmap;      // max_samples and seed come from the matrix cell
  RrtParams rrt;            // seed comes from the matrix cell
  BayesNet bayes_net = BayesNet::default_net();
  std::vector<Evidence> evidence_schedule;
  PlannerConfig planner;
  Configuration start;
  GoalRule goals;
  ExperimentMatrix matrix;

  bool operator==(const Scenario& other) const;
};

/// Parses and validates a scenario document. Throws SchemaError listing
/// every problem as (JSON pointer, reason).
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Goal list for one matrix seed. Lists for different goal counts share a
/// prefix, so the 1-goal cell plans the first goal of the 10-goal cell.
std::vector<GoalSpec> generate_goals(const Scenario& scenario,
                                     std::uint64_t cell_seed,
                                     std::size_t count);

struct CellSpec
{
  std::string planner;
  std::size_t max_samples = 0;
  std::size_t n_goals = 0;
  std::uint64_t seed = 0;
};

struct ReportRow
{
  std::string planner;
  std::size_t max_samples = 0;
  std::size_t n_goals = 0;
  std::uint64_t seed = 0;
  std::size_t nodes_expanded = 0;
  double path_cost = 0.0;
  double wall_time = 0.0;                // informational
  std::vector<std::string> modes;        // per goal, or {"infeasible"}

  bool failed() const;
};

/// Everything a checker needs to audit one cell's paths. The environment and
/// chain pointers refer into the scenario.
struct CellOutcome
{
  CellSpec spec;
  ReportRow row;
  std::shared_ptr<const Roadmap> roadmap;   // the cell's roadmap; null for rrt
                                            // cells and failed builds
  const Environment* environment = nullptr;
  const KinematicChain* chain = nullptr;
  Configuration start;
  std::vector<Configuration> goal_configurations;
  // Per goal: node path for roadmap planners (empty for rrt) and the
  // configuration trajectory for every planner. Empty on failure.
  std::vector<std::vector<NodeIndex>> node_paths;
  std::vector<std::vector<Configuration>> trajectories;
};

using CellObserver = std::function<void(const CellOutcome&)>;

/// Runs a single cell against a prebuilt base roadmap (copied, so goal
/// attachment never leaks between cells). A null roadmap marks the cell as
/// infeasible.
CellOutcome run_cell(const Scenario& scenario, const CellSpec& spec, const Roadmap* base);

/// One row per (planner, max_samples, n_goals, seed) in matrix order:
/// max_samples outermost, then seed, goal count, planner. Roadmaps are
/// built once per (max_samples, seed) and shared by the cells that use them.
std::vector<ReportRow> run_matrix(const Scenario& scenario,
                                  const CellObserver& observer = {});

struct JointError
{
  double mean = 0.0;
  double std = 0.0;
};

inline constexpr std::size_t kResamplePoints = 200;

/// Resamples both polylines to 200 points evenly spaced in normalized arc
/// length (unit-weight config distance) and returns per-joint mean and
/// population standard deviation of |a - b|. A zero-length trajectory is
/// treated as constant. Throws ContractViolation if either is empty.
std::array<JointError, kDof> mean_abs_joint_error(const std::vector<Configuration>& a,
                                                  const std::vector<Configuration>& b);

/// The arc-length resampling used above.
std::vector<Configuration> resample_by_arc_length(const std::vector<Configuration>& path,
                                                  std::size_t points);

enum class ReportFormat
{
  Csv,
  Markdown,
};

inline const std::string kCsvHeader =
    "planner,max_samples,n_goals,seed,nodes_expanded,path_cost,wall_time_s,modes";

/// path_cost uses the shortest representation that parses back exactly;
/// modes are joined with ';'.
std::string format_report(const std::vector<ReportRow>& rows, ReportFormat format);
void emit_report(const std::vector<ReportRow>& rows,
                 ReportFormat format,
                 const std::filesystem::path& out);
std::vector<ReportRow> parse_csv_report(const std::string& text);

struct ExpansionRatio
{
  std::size_t max_samples = 0;
  std::size_t n_goals = 0;
  std::uint64_t seed = 0;
  std::size_t ahmp_expanded = 0;
  std::size_t prm_astar_expanded = 0;
  double ratio = 0.0;
};

/// ahmp / prm_astar expansions for every multi-goal cell present for both.
std::vector<ExpansionRatio> expansion_ratios(const std::vector<ReportRow>& rows);
std::string format_ratios(const std::vector<ExpansionRatio>& ratios, ReportFormat format);

/// One configuration per line, five whitespace-separated reals; blank lines
/// and lines starting with '#' are skipped.
std::vector<Configuration> read_trajectory(const std::filesystem::path& path);
void write_trajectory(const std::vector<Configuration>& trajectory,
                      const std::filesystem::path& path);

} // namespace ahmp
