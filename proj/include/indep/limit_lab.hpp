#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "indep/rational.hpp"

namespace indep {

// Sequences live on the product of per-coordinate finite spaces. On a product
// space the coordinate sigma-algebras are sigma-logically independent by
// construction (every product of nonempty sets is nonempty), so no runtime
// independence check is performed for sequences. The joint law sampled here
// is the unique independence-preserving extension of the per-coordinate
// measures.

/// Common finite range of every X_n: strictly increasing exact values.
struct RangeSpec {
  std::vector<Rational> support;

  /// Throws Error{SupportMismatch} when empty or not strictly increasing.
  static RangeSpec make(std::vector<Rational> support);
  bool operator==(const RangeSpec&) const = default;
};

/// Law of one coordinate: one probability per support point.
struct CoordinateMeasure {
  std::vector<Rational> probs;

  /// Throws Error{NotAProbability}.
  static CoordinateMeasure make(std::vector<Rational> probs);
  bool operator==(const CoordinateMeasure&) const = default;
};

struct Moments {
  Rational mean;
  Rational variance;
};

/// Exact mean and variance. Throws Error{SupportMismatch}.
Moments moments(const RangeSpec& range, const CoordinateMeasure& measure);

/// Declared eventual growth of a variance rule: for n >= from_index,
/// sigma^2_n <= coefficient * n^exponent (Upper) or >= (Lower).
struct GrowthBound {
  enum class Direction { Upper, Lower };
  Direction direction = Direction::Upper;
  std::uint64_t from_index = 1;
  Rational coefficient;
  Rational exponent;  // denominator must be small; checked exactly via powers
};

struct VarianceRule {
  std::function<Rational(std::uint64_t)> value;  // n >= 1
  std::optional<GrowthBound> bound;
};

enum class SeriesVerdict { Convergent, Divergent, Undecided };
std::string to_string(SeriesVerdict v);

struct KolmogorovReport {
  SeriesVerdict verdict = SeriesVerdict::Undecided;
  std::uint64_t terms = 0;
  double partial_sum = 0;  // sum_{n <= terms} sigma^2_n / n^2
  /// Certified bound on the remaining tail (only for Convergent).
  std::optional<double> tail_bound;
  bool within_tolerance = false;  // tail_bound <= tolerance
  std::string reason;
};

/// Decides sum sigma^2_n / n^2 < infinity. Only a declared growth bound, checked
/// exactly on 1..n_max, can certify: an upper bound C n^p with p < 1 gives
/// convergence by comparison with sum C n^(p-2); a lower bound c n^p with
/// p >= 1 and c > 0 gives divergence. Otherwise the verdict is Undecided.
KolmogorovReport kolmogorov_condition(const VarianceRule& rule, std::uint64_t n_max, double tolerance);

/// Per-coordinate rule for non-identically distributed sequences.
struct PerCoordinate {
  std::function<CoordinateMeasure(std::uint64_t)> rule;  // coordinate k >= 1
  std::optional<GrowthBound> variance_bound;
};

struct SequenceSpec {
  RangeSpec range;
  std::variant<CoordinateMeasure, PerCoordinate> measures;
  std::uint64_t horizon = 0;

  bool identical() const noexcept { return std::holds_alternative<CoordinateMeasure>(measures); }
  /// Law of coordinate k (1-based).
  CoordinateMeasure measure_at(std::uint64_t k) const;
  VarianceRule variance_rule() const;
};

/// Every coordinate gets the base law. With `for_clt`, a zero-variance base
/// is rejected. Throws Error{SupportMismatch}, Error{ZeroVarianceForCLT}.
SequenceSpec select_identical_measures(RangeSpec range, CoordinateMeasure base, std::uint64_t horizon,
                                       bool for_clt = false);

/// Coordinate k uses laws[(k - 1) % laws.size()]; the variance bound is
/// declared from the largest variance in the cycle.
SequenceSpec select_cyclic_measures(RangeSpec range, std::vector<CoordinateMeasure> laws, std::uint64_t horizon);

struct RunOptions {
  unsigned threads = 1;
  Rational lindeberg_epsilon{1, 10};
  Rational lindeberg_threshold{1, 10};
  std::uint64_t kolmogorov_terms = 10000;
};

enum class LimitMode { LLN, CLT, LIL };
std::string to_string(LimitMode m);

struct SimulationReport {
  LimitMode mode = LimitMode::LLN;
  std::uint64_t n = 0;
  std::uint64_t replications = 1;
  std::uint64_t seed = 0;
  double mu_p = 0;      // E[X_1]
  double sigma2 = 0;    // Var[X_1]
  double mean_sum = 0;  // sum of E[X_i], i <= n
  double b_n2 = 0;      // sum of Var[X_i], i <= n

  /// LLN: running centered means for steps 1..n.
  /// LIL: normalized statistic for steps trajectory_start..n.
  std::vector<double> trajectory;
  std::uint64_t trajectory_start = 1;
  double final_deviation = 0;

  /// CLT: sorted standardized sums, KS distance to N(0,1), sample moments.
  std::vector<double> sorted_statistics;
  double ks_distance = 0;
  double statistic_mean = 0;
  double statistic_variance = 0;

  /// LIL: running maximum at logarithmically spaced steps.
  std::vector<std::pair<std::uint64_t, double>> checkpoints;
  double running_max = 0;

  bool operator==(const SimulationReport&) const = default;
};

/// Values X_1..X_n of replication `replication`. Throws Error{HorizonExceeded}.
std::vector<double> sample_path(const SequenceSpec& spec, std::uint64_t n, std::uint64_t seed,
                                std::uint64_t replication = 0);

/// Throws Error{HorizonExceeded}, Error{ConditionNotVerified}.
SimulationReport run_lln(const SequenceSpec& spec, std::uint64_t n, std::uint64_t seed, const RunOptions& options = {});

/// Throws Error{EmptyExperiment}, Error{ZeroVariance}, Error{HorizonExceeded},
/// Error{ConditionNotVerified}.
SimulationReport run_clt(const SequenceSpec& spec, std::uint64_t n, std::uint64_t replications, std::uint64_t seed,
                         const RunOptions& options = {});

/// Throws Error{TooShort}, Error{ZeroVariance}, Error{HorizonExceeded}.
SimulationReport run_lil(const SequenceSpec& spec, std::uint64_t n, std::uint64_t seed, const RunOptions& options = {});

/// (1/B_n^2) sum_i E_i[(X_i - E_i X_i)^2 1{|X_i - E_i X_i| > eps B_n}], exact.
/// The strict comparison is decided exactly as d^2 > eps^2 B_n^2.
/// Throws Error{ZeroVariance}, Error{InvalidArgument}, Error{HorizonExceeded}.
Rational lindeberg_sum(const SequenceSpec& spec, std::uint64_t n, const Rational& epsilon);

/// Standard normal CDF through std::erfc.
double normal_cdf(double x);

/// sup_x |F_n(x) - Phi(x)| for sorted samples.
double ks_distance_to_normal(std::span<const double> sorted);

/// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

}  // namespace indep
