#include "indep/limit_lab.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "indep/error.hpp"
#include "indep/random.hpp"

namespace indep {

// ------------------------------------------------------------------ types

RangeSpec RangeSpec::make(std::vector<Rational> support) {
  for (auto& x : support) x.canonicalize();
  if (support.empty()) throw Error(ErrorCode::SupportMismatch, "a range needs at least one point");
  for (std::size_t j = 1; j < support.size(); ++j) {
    if (!(support[j - 1] < support[j])) throw Error(ErrorCode::SupportMismatch, "support must be strictly increasing");
  }
  return RangeSpec{std::move(support)};
}

CoordinateMeasure CoordinateMeasure::make(std::vector<Rational> probs) {
  Rational total = 0;
  for (auto& p : probs) {
    p.canonicalize();
    if (p < 0) throw Error(ErrorCode::NotAProbability, "negative probability " + to_string(p));
    total += p;
  }
  if (total != 1) throw Error(ErrorCode::NotAProbability, "probabilities sum to " + to_string(total));
  return CoordinateMeasure{std::move(probs)};
}

Moments moments(const RangeSpec& range, const CoordinateMeasure& measure) {
  if (range.support.size() != measure.probs.size()) {
    throw Error(ErrorCode::SupportMismatch, std::to_string(measure.probs.size()) + " probabilities for " +
                                                std::to_string(range.support.size()) + " support points");
  }
  Rational mean = 0;
  for (std::size_t j = 0; j < range.support.size(); ++j) mean += measure.probs[j] * range.support[j];
  Rational variance = 0;
  for (std::size_t j = 0; j < range.support.size(); ++j) {
    const Rational d = range.support[j] - mean;
    variance += measure.probs[j] * d * d;
  }
  return {mean, variance};
}

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Convergent: return "convergent";
    case SeriesVerdict::Divergent: return "divergent";
    case SeriesVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

std::string to_string(LimitMode m) {
  switch (m) {
    case LimitMode::LLN: return "lln";
    case LimitMode::CLT: return "clt";
    case LimitMode::LIL: return "lil";
  }
  return "lln";
}

CoordinateMeasure SequenceSpec::measure_at(std::uint64_t k) const {
  if (const auto* m = std::get_if<CoordinateMeasure>(&measures)) return *m;
  return std::get<PerCoordinate>(measures).rule(k);
}

VarianceRule SequenceSpec::variance_rule() const {
  VarianceRule out;
  out.value = [spec = *this](std::uint64_t k) { return moments(spec.range, spec.measure_at(k)).variance; };
  if (const auto* m = std::get_if<CoordinateMeasure>(&measures)) {
    out.bound = GrowthBound{GrowthBound::Direction::Upper, 1, moments(range, *m).variance, 0};
  } else {
    out.bound = std::get<PerCoordinate>(measures).variance_bound;
  }
  return out;
}

SequenceSpec select_identical_measures(RangeSpec range, CoordinateMeasure base, std::uint64_t horizon, bool for_clt) {
  const Moments mo = moments(range, base);
  if (for_clt && mo.variance == 0) {
    throw Error(ErrorCode::ZeroVarianceForCLT, "a constant sequence has no central limit");
  }
  return SequenceSpec{std::move(range), std::move(base), horizon};
}

SequenceSpec select_cyclic_measures(RangeSpec range, std::vector<CoordinateMeasure> laws, std::uint64_t horizon) {
  if (laws.empty()) throw Error(ErrorCode::InvalidArgument, "at least one law is required");
  Rational max_var = 0;
  for (const auto& law : laws) max_var = std::max(max_var, moments(range, law).variance);
  PerCoordinate per;
  per.rule = [laws = std::move(laws)](std::uint64_t k) { return laws[(k - 1) % laws.size()]; };
  per.variance_bound = GrowthBound{GrowthBound::Direction::Upper, 1, max_var, 0};
  return SequenceSpec{std::move(range), std::move(per), horizon};
}

// ---------------------------------------------------------- Kolmogorov

namespace {

Rational rpow(const Rational& base, unsigned long e) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

// Compares v against C * n^(a/b) exactly, for v, C >= 0: returns sign of
// v^b - C^b n^a.
int compare_with_power(const Rational& v, const Rational& c, std::uint64_t n, const Rational& exponent) {
  const unsigned long b = exponent.get_den().get_ui();
  const mpz_class a = exponent.get_num();
  const Rational lhs = rpow(v, b);
  Rational npow = rpow(Rational(mpz_class(std::to_string(n))), abs(Rational(a)).get_num().get_ui());
  if (a < 0) npow = 1 / npow;
  const Rational rhs = rpow(c, b) * npow;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

KolmogorovReport kolmogorov_condition(const VarianceRule& rule, std::uint64_t n_max, double tolerance) {
  KolmogorovReport report;
  report.terms = n_max;
  std::vector<Rational> values;
  values.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    values.push_back(rule.value(n));
    values.back().canonicalize();
  }
  {
    double s = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) s += to_double(values[n - 1]) / (static_cast<double>(n) * static_cast<double>(n));
    report.partial_sum = s;
  }

  if (!rule.bound) {
    report.reason = "no growth bound declared; partial sums cannot certify the series";
    return report;
  }
  GrowthBound g = *rule.bound;
  g.coefficient.canonicalize();
  g.exponent.canonicalize();
  if (g.coefficient < 0 || g.exponent.get_den() > 64 || abs(g.exponent) > 64) {
    report.reason = "growth bound outside the checkable range";
    return report;
  }
  const bool upper = g.direction == GrowthBound::Direction::Upper;
  for (std::uint64_t n = std::max<std::uint64_t>(g.from_index, 1); n <= n_max; ++n) {
    const Rational& v = values[n - 1];
    if (v < 0) {
      report.reason = "negative variance at n=" + std::to_string(n);
      return report;
    }
    const int cmp = compare_with_power(v, g.coefficient, n, g.exponent);
    if ((upper && cmp > 0) || (!upper && cmp < 0)) {
      report.reason = "declared bound violated at n=" + std::to_string(n);
      return report;
    }
  }

  const double p = to_double(g.exponent);
  if (upper && g.exponent < 1) {
    report.verdict = SeriesVerdict::Convergent;
    const double big_n = static_cast<double>(std::max<std::uint64_t>({n_max, g.from_index, 1}));
    report.tail_bound = to_double(g.coefficient) * std::pow(big_n, p - 1.0) / (1.0 - p);
    report.within_tolerance = *report.tail_bound <= tolerance;
    report.reason = "sigma^2_n <= C n^p with p < 1: dominated by a convergent p-series";
  } else if (!upper && g.exponent >= 1 && g.coefficient > 0) {
    report.verdict = SeriesVerdict::Divergent;
    report.reason = "sigma^2_n >= c n^p with p >= 1: dominates the harmonic series";
  } else {
    report.reason = "declared bound does not decide the series";
  }
  return report;
}

// ----------------------------------------------------------- sampling core

namespace {

using u128 = unsigned __int128;

struct CoordinateTable {
  std::vector<u128> thresholds;  // ceil(cumulative * 2^64)
  std::vector<double> values;
  std::vector<double> centered;  // exact X - E[X], rounded once
  Rational mean;
  Rational variance;
};

CoordinateTable build_table(const RangeSpec& range, const CoordinateMeasure& measure) {
  const Moments mo = moments(range, measure);
  CoordinateTable t;
  t.mean = mo.mean;
  t.variance = mo.variance;
  Rational cum = 0;
  const mpz_class two64 = mpz_class(1) << 64;
  for (std::size_t j = 0; j < measure.probs.size(); ++j) {
    cum += measure.probs[j];
    mpz_class scaled = cum.get_num() * two64;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), cum.get_den_mpz_t());
    const u128 hi = static_cast<u128>(mpz_class(q >> 64).get_ui());
    const u128 lo = static_cast<u128>(mpz_class(q & mpz_class("18446744073709551615")).get_ui());
    t.thresholds.push_back((hi << 64) | lo);
    t.values.push_back(to_double(range.support[j]));
    t.centered.push_back(to_double(Rational(range.support[j] - mo.mean)));
  }
  return t;
}

std::size_t draw(const CoordinateTable& t, std::uint64_t seed, std::uint64_t k, std::uint64_t r) {
  const u128 u = keyed_u64(seed, k, r);
  for (std::size_t j = 0; j < t.thresholds.size(); ++j) {
    if (u < t.thresholds[j]) return j;
  }
  return t.thresholds.size() - 1;
}

class Tables {
 public:
  Tables(const SequenceSpec& spec, std::uint64_t n) {
    if (spec.identical()) {
      tables_.push_back(build_table(spec.range, std::get<CoordinateMeasure>(spec.measures)));
    } else {
      tables_.reserve(n);
      for (std::uint64_t k = 1; k <= n; ++k) tables_.push_back(build_table(spec.range, spec.measure_at(k)));
    }
  }
  const CoordinateTable& at(std::uint64_t k) const { return tables_.size() == 1 ? tables_[0] : tables_[k - 1]; }
  bool shared() const noexcept { return tables_.size() == 1; }

 private:
  std::vector<CoordinateTable> tables_;
};

void require_horizon(const SequenceSpec& spec, std::uint64_t n) {
  if (n > spec.horizon) {
    throw Error(ErrorCode::HorizonExceeded,
                "n=" + std::to_string(n) + " exceeds the horizon " + std::to_string(spec.horizon));
  }
}

// Exact sums of means and variances over coordinates 1..n.
std::pair<Rational, Rational> exact_sums(const Tables& tables, std::uint64_t n) {
  if (tables.shared()) {
    const auto& t = tables.at(1);
    return {t.mean * Rational(mpz_class(std::to_string(n))), t.variance * Rational(mpz_class(std::to_string(n)))};
  }
  Rational means = 0;
  Rational vars = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    means += tables.at(k).mean;
    vars += tables.at(k).variance;
  }
  return {means, vars};
}

SimulationReport base_report(LimitMode mode, const Tables& tables, std::uint64_t n, std::uint64_t reps,
                             std::uint64_t seed, const std::pair<Rational, Rational>& sums) {
  SimulationReport r;
  r.mode = mode;
  r.n = n;
  r.replications = reps;
  r.seed = seed;
  r.mu_p = to_double(tables.at(1).mean);
  r.sigma2 = to_double(tables.at(1).variance);
  r.mean_sum = to_double(sums.first);
  r.b_n2 = to_double(sums.second);
  return r;
}

double centered_sum(const Tables& tables, std::uint64_t n, std::uint64_t seed, std::uint64_t rep) {
  double s = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const auto& t = tables.at(k);
    s += t.centered[draw(t, seed, k, rep)];
  }
  return s;
}

}  // namespace

std::vector<double> sample_path(const SequenceSpec& spec, std::uint64_t n, std::uint64_t seed,
                                std::uint64_t replication) {
  require_horizon(spec, n);
  const Tables tables(spec, n);
  std::vector<double> out;
  out.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) {
    const auto& t = tables.at(k);
    out.push_back(t.values[draw(t, seed, k, replication)]);
  }
  return out;
}

SimulationReport run_lln(const SequenceSpec& spec, std::uint64_t n, std::uint64_t seed, const RunOptions& options) {
  require_horizon(spec, n);
  if (!spec.identical()) {
    const auto k = kolmogorov_condition(spec.variance_rule(), std::min(options.kolmogorov_terms, std::max<std::uint64_t>(n, 1)), 0);
    if (k.verdict != SeriesVerdict::Convergent) {
      throw Error(ErrorCode::ConditionNotVerified, "Kolmogorov condition not certified: " + k.reason);
    }
  }
  const Tables tables(spec, std::max<std::uint64_t>(n, 1));
  SimulationReport r = base_report(LimitMode::LLN, tables, n, 1, seed, exact_sums(tables, n));
  r.trajectory.reserve(n);
  double s = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const auto& t = tables.at(k);
    s += t.centered[draw(t, seed, k, 0)];
    r.trajectory.push_back(s / static_cast<double>(k));
  }
  r.final_deviation = n == 0 ? 0.0 : r.trajectory.back();
  return r;
}

SimulationReport run_clt(const SequenceSpec& spec, std::uint64_t n, std::uint64_t replications, std::uint64_t seed,
                         const RunOptions& options) {
  if (replications == 0) throw Error(ErrorCode::EmptyExperiment, "no replications requested");
  require_horizon(spec, n);
  if (n == 0) throw Error(ErrorCode::ZeroVariance, "n = 0");
  const Tables tables(spec, n);
  const auto sums = exact_sums(tables, n);
  if (sums.second == 0) throw Error(ErrorCode::ZeroVariance, "B_n^2 = 0: the sequence is constant");
  if (!spec.identical()) {
    const Rational l = lindeberg_sum(spec, n, options.lindeberg_epsilon);
    if (l > options.lindeberg_threshold) {
      throw Error(ErrorCode::ConditionNotVerified,
                  "Lindeberg sum " + to_string(l) + " exceeds the threshold " + to_string(options.lindeberg_threshold));
    }
  }

  SimulationReport r = base_report(LimitMode::CLT, tables, n, replications, seed, sums);
  const double b_n = std::sqrt(to_double(sums.second));
  std::vector<double> stats(replications);
  const auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t rep = begin; rep < end; ++rep) stats[rep] = centered_sum(tables, n, seed, rep) / b_n;
  };
  const std::uint64_t threads = std::clamp<std::uint64_t>(options.threads, 1, replications);
  if (threads == 1) {
    worker(0, replications);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (replications + threads - 1) / threads;
    for (std::uint64_t t = 0; t < threads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min(replications, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  const double count = static_cast<double>(replications);
  r.statistic_mean = pairwise_sum(stats) / count;
  std::vector<double> sq(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) sq[i] = (stats[i] - r.statistic_mean) * (stats[i] - r.statistic_mean);
  r.statistic_variance = replications > 1 ? pairwise_sum(sq) / (count - 1) : 0.0;
  std::sort(stats.begin(), stats.end());
  r.ks_distance = ks_distance_to_normal(stats);
  r.sorted_statistics = std::move(stats);
  return r;
}

SimulationReport run_lil(const SequenceSpec& spec, std::uint64_t n, std::uint64_t seed, const RunOptions&) {
  if (n < 100) throw Error(ErrorCode::TooShort, "the iterated-logarithm statistic needs n >= 100");
  require_horizon(spec, n);
  const Tables tables(spec, n);
  const auto sums = exact_sums(tables, n);
  if (sums.second == 0) throw Error(ErrorCode::ZeroVariance, "B_n^2 = 0: the sequence is constant");

  SimulationReport r = base_report(LimitMode::LIL, tables, n, 1, seed, sums);

  // Normalizer: sqrt(2 sigma^2 k log log k) in identical mode,
  // sqrt(2 B_k^2 log log B_k) otherwise. Steps start once log log >= 1.
  std::vector<double> norm(n + 1, 0.0);
  std::uint64_t start = 0;
  if (spec.identical()) {
    const double s2 = to_double(tables.at(1).variance);
    for (std::uint64_t k = 3; k <= n; ++k) {
      const double ll = std::log(std::log(static_cast<double>(k)));
      if (start == 0 && ll >= 1.0) start = k;
      norm[k] = std::sqrt(2.0 * s2 * static_cast<double>(k) * ll);
    }
  } else {
    Rational b2 = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      b2 += tables.at(k).variance;
      const double bk2 = to_double(b2);
      if (bk2 <= 0) continue;
      const double ll = std::log(std::log(std::sqrt(bk2)));
      if (start == 0 && ll >= 1.0) start = k;
      if (ll > 0) norm[k] = std::sqrt(2.0 * bk2 * ll);
    }
  }
  if (start == 0) throw Error(ErrorCode::TooShort, "log log of the normalizer never reaches 1 within n steps");

  r.trajectory_start = start;
  r.trajectory.reserve(n - start + 1);
  double s = 0;
  double running = -INFINITY;
  std::vector<std::uint64_t> grid;
  for (int j = 0;; ++j) {
    const auto step = static_cast<std::uint64_t>(std::llround(std::pow(10.0, j / 4.0)));
    if (step > n) break;
    if (step >= start && (grid.empty() || grid.back() != step)) grid.push_back(step);
  }
  if (grid.empty() || grid.back() != n) grid.push_back(n);
  std::size_t next = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const auto& t = tables.at(k);
    s += t.centered[draw(t, seed, k, 0)];
    if (k < start) continue;
    const double stat = s / norm[k];
    r.trajectory.push_back(stat);
    running = std::max(running, stat);
    if (next < grid.size() && grid[next] == k) {
      r.checkpoints.emplace_back(k, running);
      ++next;
    }
  }
  r.running_max = running;
  r.final_deviation = r.trajectory.back();
  return r;
}

Rational lindeberg_sum(const SequenceSpec& spec, std::uint64_t n, const Rational& eps_in) {
  Rational epsilon = eps_in;
  epsilon.canonicalize();
  if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  require_horizon(spec, n);
  const Rational count(mpz_class(std::to_string(n)));

  std::vector<Moments> mo;
  Rational b2 = 0;
  if (spec.identical()) {
    mo.push_back(moments(spec.range, std::get<CoordinateMeasure>(spec.measures)));
    b2 = mo[0].variance * count;
  } else {
    for (std::uint64_t k = 1; k <= n; ++k) {
      mo.push_back(moments(spec.range, spec.measure_at(k)));
      b2 += mo.back().variance;
    }
  }
  if (b2 == 0) throw Error(ErrorCode::ZeroVariance, "B_n^2 = 0");
  const Rational cut = epsilon * epsilon * b2;

  const auto truncated = [&](const CoordinateMeasure& m, const Rational& mean) {
    Rational acc = 0;
    for (std::size_t j = 0; j < spec.range.support.size(); ++j) {
      const Rational d = spec.range.support[j] - mean;
      const Rational d2 = d * d;
      if (d2 > cut) acc += m.probs[j] * d2;
    }
    return acc;
  };

  Rational total = 0;
  if (spec.identical()) {
    total = truncated(std::get<CoordinateMeasure>(spec.measures), mo[0].mean) * count;
  } else {
    for (std::uint64_t k = 1; k <= n; ++k) total += truncated(spec.measure_at(k), mo[k - 1].mean);
  }
  return total / b2;
}

// ------------------------------------------------------------- statistics

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance_to_normal(std::span<const double> sorted) {
  const double count = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / count - phi, phi - static_cast<double>(i) / count});
  }
  return d;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace indep
