#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "indep/problem.hpp"

namespace indep::cli {

enum class TaskStatus { Pass, Fail, Error };
std::string_view to_string(TaskStatus status) noexcept;

struct TaskOutcome {
  std::size_t index = 0;
  std::string name;
  TaskType type = TaskType::CheckIndependence;
  TaskStatus status = TaskStatus::Pass;
  nlohmann::ordered_json result = nlohmann::ordered_json::object();  // on success or false verdict
  nlohmann::ordered_json error;                                     // {"code", "message", ...} on error
  /// (step, statistic) rows for simulation tasks.
  std::optional<std::vector<std::pair<std::uint64_t, double>>> series;
};

struct Report {
  std::vector<TaskOutcome> tasks;

  /// 0 all pass, 1 some verdict differs from its expectation, 2 some task errored.
  int exit_code() const noexcept;
};

struct RunConfig {
  unsigned threads = 1;
};

/// Runs every task in order. Errors are captured per task.
Report run(const ProblemFile& problem, const RunConfig& config = {});

/// Double rounded to 12 significant digits.
double round12(double value);

nlohmann::ordered_json report_json(const Report& report);
std::string render_json(const Report& report);
std::string render_text(const Report& report);

/// "step,statistic" CSV of one simulation task.
std::string render_csv(const TaskOutcome& outcome);
/// Writes task-<index>-<type>.csv for every simulation task; returns the paths.
std::vector<std::filesystem::path> write_csv(const Report& report, const std::filesystem::path& dir);

}  // namespace indep::cli
