#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "indep/rational.hpp"

namespace indep::cli {

inline constexpr std::string_view kProblemVersion = "indep-problem/1";

enum class ProblemErrorCode { SyntaxError, SchemaError, UnknownReference, BadRational, UnknownTask };
std::string_view to_string(ProblemErrorCode code) noexcept;

/// Diagnostic for a rejected problem file, with the JSON pointer of the
/// offending value and, for syntax errors, the line number.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(ProblemErrorCode code, std::string path, const std::string& message,
               std::optional<std::size_t> line = std::nullopt);
  ProblemErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ProblemErrorCode code_;
  std::string path_;
  std::optional<std::size_t> line_;
};

enum class TaskType {
  CheckIndependence,
  Extend,
  VerifyAdditivity,
  Jordan,
  SignedIndependence,
  UniformIndependence,
  Lln,
  Clt,
  Lil,
  Lindeberg,
  Kolmogorov,
};
std::string_view to_string(TaskType type) noexcept;
std::optional<TaskType> task_type_from(std::string_view name) noexcept;

struct AlgebraDecl {
  std::string name;
  std::vector<std::vector<std::string>> generators;  // events as atom labels
  bool operator==(const AlgebraDecl&) const = default;
};

struct WeightEntry {
  std::vector<std::string> event;
  Rational weight;
  bool operator==(const WeightEntry&) const = default;
};

/// With an algebra: one weight per listed block. Without: atom weights, each
/// entry's event holding a single label; unlisted atoms weigh 0.
struct MeasureDecl {
  std::string name;
  std::optional<std::string> algebra;
  std::vector<WeightEntry> weights;
  bool operator==(const MeasureDecl&) const = default;
};

/// Exactly one of `probs` (identical laws) and `cycle` (coordinate k uses
/// cycle[(k-1) % size]) is set.
struct SequenceDecl {
  std::vector<Rational> support;
  std::optional<std::vector<Rational>> probs;
  std::optional<std::vector<std::vector<Rational>>> cycle;
  bool operator==(const SequenceDecl&) const = default;
};

/// One entry per algebra name: the member event used for that factor.
using CylinderDecl = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct CheckIndependenceTask {
  std::vector<std::string> algebras;
  std::optional<std::string> measure;  // set: probabilistic check
  std::string method = "block";        // block | bruteforce | sigma
  bool expect = true;
  bool operator==(const CheckIndependenceTask&) const = default;
};

struct ExtendTask {
  std::vector<std::string> measures;
  bool operator==(const ExtendTask&) const = default;
};

struct VerifyAdditivityTask {
  std::vector<std::string> measures;
  std::vector<CylinderDecl> parts;
  bool expect = true;
  bool operator==(const VerifyAdditivityTask&) const = default;
};

struct JordanTask {
  std::string measure;
  bool operator==(const JordanTask&) const = default;
};

struct SignedIndependenceTask {
  std::vector<std::string> algebras;
  std::string measure;
  bool expect = true;
  bool operator==(const SignedIndependenceTask&) const = default;
};

struct UniformIndependenceTask {
  std::vector<std::string> algebras;
  std::vector<std::string> measures;
  bool expect = true;
  bool operator==(const UniformIndependenceTask&) const = default;
};

/// lln, clt and lil. `tolerance` bounds |final deviation| (lln) or the KS
/// distance (clt); `band` bounds the running maximum (lil).
struct SimulationTask {
  SequenceDecl sequence;
  std::uint64_t n = 0;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::optional<std::array<double, 2>> band;
  std::optional<Rational> lindeberg_epsilon;
  std::optional<Rational> lindeberg_threshold;
  bool operator==(const SimulationTask&) const = default;
};

struct LindebergTask {
  SequenceDecl sequence;
  std::uint64_t n = 0;
  Rational epsilon;
  bool operator==(const LindebergTask&) const = default;
};

struct GrowthBoundDecl {
  std::string direction = "upper";  // upper | lower
  std::uint64_t from_index = 1;
  Rational coefficient;
  Rational exponent;
  bool operator==(const GrowthBoundDecl&) const = default;
};

/// power: sigma^2_n = coefficient * n^exponent (integer exponent), certified
///        by its own exact growth bound.
/// values: sigma^2_n = values[(n-1) % size].
/// n-over-log: sigma^2_n = coefficient * n / log(n + 1), rounded to a rational.
struct VarianceRuleDecl {
  std::string kind = "power";
  Rational coefficient{1};
  Rational exponent{0};
  std::vector<Rational> values;
  std::optional<GrowthBoundDecl> bound;
  bool operator==(const VarianceRuleDecl&) const = default;
};

struct KolmogorovTask {
  VarianceRuleDecl rule;
  std::uint64_t terms = 10000;
  double tolerance = 1e-3;
  std::string expect = "convergent";
  bool operator==(const KolmogorovTask&) const = default;
};

using TaskParams = std::variant<CheckIndependenceTask, ExtendTask, VerifyAdditivityTask, JordanTask,
                                SignedIndependenceTask, UniformIndependenceTask, SimulationTask, LindebergTask,
                                KolmogorovTask>;

struct TaskDecl {
  std::string name;
  TaskType type = TaskType::CheckIndependence;
  TaskParams params;
  bool operator==(const TaskDecl&) const = default;
};

struct ProblemFile {
  std::string version{kProblemVersion};
  std::vector<std::string> atoms;
  std::vector<AlgebraDecl> algebras;
  std::vector<MeasureDecl> measures;
  std::vector<TaskDecl> tasks;
  bool operator==(const ProblemFile&) const = default;
};

/// Parses and validates a problem file. Throws ProblemError.
ProblemFile parse_problem(std::string_view text);

/// Stable-key-order JSON text that parse_problem maps back to an equal file.
std::string serialize_problem(const ProblemFile& problem);

/// Names accepted by `indep example`.
std::vector<std::string> example_names();
/// Bundled problem file text. Throws std::out_of_range for unknown names.
std::string example_problem(std::string_view name);

}  // namespace indep::cli
