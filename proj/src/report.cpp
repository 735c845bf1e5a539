#include "indep/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "indep/error.hpp"
#include "indep/extension.hpp"
#include "indep/independence.hpp"
#include "indep/limit_lab.hpp"
#include "indep/measure.hpp"
#include "indep/signed.hpp"
#include "indep/space.hpp"

namespace indep::cli {

using json = nlohmann::ordered_json;
using indep::to_string;

std::string_view to_string(TaskStatus status) noexcept {
  switch (status) {
    case TaskStatus::Pass: return "pass";
    case TaskStatus::Fail: return "fail";
    case TaskStatus::Error: return "error";
  }
  return "error";
}

int Report::exit_code() const noexcept {
  int code = 0;
  for (const auto& t : tasks) {
    if (t.status == TaskStatus::Error) return 2;
    if (t.status == TaskStatus::Fail) code = 1;
  }
  return code;
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

json rat(const Rational& r) { return to_string(r); }

json labels(const EventSet& e) { return e.labels(); }

// Lazily built library objects; construction errors surface in the task
// that first needs them.
class Context {
 public:
  explicit Context(const ProblemFile& pf) : pf_(pf) {}

  const SpaceRef& space() {
    if (!space_) space_ = make_space(pf_.atoms);
    return space_;
  }

  EventSet event(const std::vector<std::string>& names) { return EventSet::from_labels(space(), names); }

  const SigmaAlgebra& algebra(const std::string& name) {
    if (auto it = algebras_.find(name); it != algebras_.end()) return it->second;
    const auto& decl = *std::find_if(pf_.algebras.begin(), pf_.algebras.end(),
                                     [&](const AlgebraDecl& a) { return a.name == name; });
    std::vector<EventSet> gens;
    for (const auto& g : decl.generators) gens.push_back(event(g));
    return algebras_.emplace(name, generate_sigma_algebra(space(), gens)).first->second;
  }

  std::vector<SigmaAlgebra> algebras(const std::vector<std::string>& names) {
    std::vector<SigmaAlgebra> out;
    for (const auto& n : names) out.push_back(algebra(n));
    return out;
  }

  const MeasureDecl& measure_decl(const std::string& name) const {
    return *std::find_if(pf_.measures.begin(), pf_.measures.end(),
                         [&](const MeasureDecl& m) { return m.name == name; });
  }

  BlockMeasure measure(const std::string& name) {
    const auto& decl = measure_decl(name);
    if (!decl.algebra) {
      std::vector<Rational> w(space()->atom_count(), Rational(0));
      for (const auto& e : decl.weights) w[space()->index_of(e.event.at(0))] += e.weight;
      return BlockMeasure::on_atoms(space(), std::move(w));
    }
    const SigmaAlgebra& alg = algebra(*decl.algebra);
    std::vector<std::optional<Rational>> w(alg.block_count());
    for (const auto& e : decl.weights) {
      const EventSet ev = event(e.event);
      const auto it = std::find(alg.blocks().begin(), alg.blocks().end(), ev);
      if (it == alg.blocks().end()) {
        throw Error(ErrorCode::NotInAlgebra, "measure " + name + ": " + ev.to_string() + " is not a block of " +
                                                 *decl.algebra);
      }
      auto& slot = w[static_cast<std::size_t>(it - alg.blocks().begin())];
      if (slot) throw Error(ErrorCode::MeasureMismatch, "measure " + name + ": block " + ev.to_string() + " listed twice");
      slot = e.weight;
    }
    std::vector<Rational> weights;
    for (std::size_t b = 0; b < w.size(); ++b) {
      if (!w[b]) {
        throw Error(ErrorCode::MeasureMismatch,
                    "measure " + name + ": no weight for block " + alg.block(b).to_string());
      }
      weights.push_back(*w[b]);
    }
    return BlockMeasure(alg, std::move(weights));
  }

  FactorMeasure factor(const std::string& name) {
    const BlockMeasure m = measure(name);
    return FactorMeasure(m.algebra(), m.weights());
  }

  /// Display name of a factor: its algebra, or the measure name for atom measures.
  std::string factor_label(const std::string& measure) const {
    const auto& d = measure_decl(measure);
    return d.algebra ? *d.algebra : measure;
  }

 private:
  const ProblemFile& pf_;
  SpaceRef space_;
  std::map<std::string, SigmaAlgebra> algebras_;
};

json witness_json(const std::vector<WitnessEntry>& witness, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& w : witness) out.push_back(json{{"algebra", names.at(w.algebra)}, {"set", labels(w.set)}});
  return out;
}

json verdict_json(const IndependenceVerdict& v, const std::vector<std::string>& names) {
  json out = json::object();
  out["independent"] = v.independent;
  out["witness"] = v.witness ? witness_json(*v.witness, names) : json(nullptr);
  if (v.mismatch) {
    json f = json::array();
    for (const auto& x : v.mismatch->factors) f.push_back(rat(x));
    out["mismatch"] = json{{"joint", rat(v.mismatch->joint)}, {"factors", std::move(f)},
                           {"product", rat(v.mismatch->product)}};
  } else {
    out["mismatch"] = nullptr;
  }
  return out;
}

json cylinder_json(const CylinderEvent& c, const std::vector<std::string>& names) {
  if (c.empty_marker) return nullptr;
  json out = json::object();
  for (const auto& [i, e] : c.factors) out[names.at(i)] = labels(e);
  return out;
}

json weights_json(const BlockMeasure& m) {
  json out = json::array();
  for (std::size_t b = 0; b < m.weights().size(); ++b) {
    if (m.weights()[b] != 0) out.push_back(json{{"block", labels(m.algebra().block(b))}, {"weight", rat(m.weights()[b])}});
  }
  return out;
}

SequenceSpec build_sequence(const SequenceDecl& decl, std::uint64_t horizon, bool for_clt) {
  RangeSpec range = RangeSpec::make(decl.support);
  if (decl.probs) return select_identical_measures(std::move(range), CoordinateMeasure::make(*decl.probs), horizon, for_clt);
  std::vector<CoordinateMeasure> laws;
  for (const auto& law : *decl.cycle) laws.push_back(CoordinateMeasure::make(law));
  return select_cyclic_measures(std::move(range), std::move(laws), horizon);
}

void put_moments(json& out, const SequenceSpec& spec) {
  if (!spec.identical()) return;
  const Moments mo = moments(spec.range, spec.measure_at(1));
  out["mu"] = rat(mo.mean);
  out["sigma2"] = rat(mo.variance);
}

TaskStatus expectation(bool verdict, bool expect) { return verdict == expect ? TaskStatus::Pass : TaskStatus::Fail; }

// Integer power, exponent of either sign.
Rational ipow(const Rational& base, std::uint64_t n, long e) {
  Rational out = 1;
  const Rational nb(mpz_class(std::to_string(n)));
  for (long i = 0; i < std::labs(e); ++i) out *= nb;
  if (e < 0) out = 1 / out;
  return base * out;
}

VarianceRule build_rule(const VarianceRuleDecl& d, bool& bound_declared) {
  VarianceRule rule;
  if (d.kind == "power") {
    const long e = d.exponent.get_num().get_si();
    rule.value = [c = d.coefficient, e](std::uint64_t n) { return ipow(c, n, e); };
    rule.bound = GrowthBound{d.exponent < 1 ? GrowthBound::Direction::Upper : GrowthBound::Direction::Lower, 1,
                             d.coefficient, d.exponent};
  } else if (d.kind == "values") {
    rule.value = [v = d.values](std::uint64_t n) { return v[(n - 1) % v.size()]; };
    rule.bound = GrowthBound{GrowthBound::Direction::Upper, 1, *std::max_element(d.values.begin(), d.values.end()), 0};
  } else {
    rule.value = [c = d.coefficient](std::uint64_t n) {
      const double x = static_cast<double>(n);
      return Rational(c * from_double(x / std::log(x + 1.0)));
    };
  }
  bound_declared = d.bound.has_value();
  if (d.bound) {
    rule.bound = GrowthBound{d.bound->direction == "upper" ? GrowthBound::Direction::Upper : GrowthBound::Direction::Lower,
                             d.bound->from_index, d.bound->coefficient, d.bound->exponent};
  }
  return rule;
}

json lln_checkpoints(const SimulationReport& r) {
  json out = json::array();
  for (std::uint64_t k = 10; k < r.n; k *= 10) out.push_back(json::array({k, num(r.trajectory[k - 1])}));
  if (r.n > 0) out.push_back(json::array({r.n, num(r.trajectory.back())}));
  return out;
}

void run_task(const TaskDecl& task, Context& ctx, const RunConfig& cfg, TaskOutcome& out) {
  json& res = out.result;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, CheckIndependenceTask>) {
          const auto algs = ctx.algebras(p.algebras);
          IndependenceVerdict v;
          if (p.measure) {
            v = check_probabilistic_independence(algs, ctx.measure(*p.measure));
            res["kind"] = "probabilistic";
          } else if (p.method == "bruteforce") {
            v = check_logical_independence_bruteforce(algs);
            res["kind"] = "logical";
          } else if (p.method == "sigma") {
            v = check_sigma_logical_independence(algs);
            res["kind"] = "sigma-logical";
          } else {
            v = check_logical_independence(algs);
            res["kind"] = "logical";
          }
          res.update(verdict_json(v, p.algebras));
          out.status = expectation(v.independent, p.expect);
        } else if constexpr (std::is_same_v<P, ExtendTask>) {
          std::vector<FactorMeasure> factors;
          std::vector<std::string> names;
          for (const auto& m : p.measures) {
            factors.push_back(ctx.factor(m));
            names.push_back(ctx.factor_label(m));
          }
          const ExtensionMeasure ext = extend(factors);
          json cells = json::array();
          for (std::size_t c = 0; c < ext.cell_prob().size(); ++c) {
            json blocks = json::object();
            for (std::size_t f = 0; f < factors.size(); ++f) {
              blocks[names[f]] = labels(factors[f].algebra().block(ext.cell_blocks()[c][f]));
            }
            cells.push_back(json{{"atoms", labels(ext.join_algebra().block(c))}, {"blocks", std::move(blocks)},
                                 {"p", rat(ext.cell_prob()[c])}});
          }
          res["cells"] = std::move(cells);
          res["total"] = rat(sum(ext.cell_prob()));
        } else if constexpr (std::is_same_v<P, VerifyAdditivityTask>) {
          std::vector<FactorMeasure> factors;
          std::vector<std::string> names;
          for (const auto& m : p.measures) {
            factors.push_back(ctx.factor(m));
            names.push_back(ctx.factor_label(m));
          }
          const ExtensionMeasure ext = extend(factors);
          std::vector<CylinderEvent> parts;
          for (const auto& decl : p.parts) {
            CylinderEvent c;
            for (const auto& [alg, ev] : decl) {
              const auto it = std::find(names.begin(), names.end(), alg);
              if (it == names.end()) {
                throw Error(ErrorCode::UnknownAlgebraIndex, "algebra " + alg + " is not a factor of this task");
              }
              c.factors.insert_or_assign(static_cast<std::size_t>(it - names.begin()), ctx.event(ev));
            }
            parts.push_back(std::move(c));
          }
          const AdditivityReport r = verify_finite_additivity(ext, parts);
          res["holds"] = r.holds;
          res["parts_sum"] = rat(r.parts_sum);
          res["union_measure"] = rat(r.union_measure);
          res["chain_sum"] = rat(r.chain_sum);
          res["union"] = cylinder_json(r.union_cylinder, names);
          res["d_chain_count"] = r.d_chain_count;
          res["chains_partition_parts"] = r.chains_partition_parts;
          res["chains_per_part"] = r.chains_per_part;
          out.status = expectation(r.holds, p.expect);
        } else if constexpr (std::is_same_v<P, JordanTask>) {
          const JordanPair jp = jordan_decompose(ctx.measure(p.measure));
          res["positive"] = weights_json(jp.positive);
          res["negative"] = weights_json(jp.negative);
          res["hahn_positive_set"] = labels(jp.hahn_positive_set);
          res["positive_mass"] = rat(jp.positive.total());
          res["negative_mass"] = rat(jp.negative.total());
        } else if constexpr (std::is_same_v<P, SignedIndependenceTask>) {
          const SignedVerdict v = check_independence_signed(ctx.algebras(p.algebras), ctx.measure(p.measure));
          res["independent"] = v.independent;
          res["positive"] = v.positive ? verdict_json(*v.positive, p.algebras) : json(nullptr);
          res["negative"] = v.negative ? verdict_json(*v.negative, p.algebras) : json(nullptr);
          out.status = expectation(v.independent, p.expect);
        } else if constexpr (std::is_same_v<P, UniformIndependenceTask>) {
          std::vector<BlockMeasure> ms;
          for (const auto& m : p.measures) ms.push_back(ctx.measure(m));
          const UniformVerdict v = check_uniform_independence(ctx.algebras(p.algebras), ms);
          res["independent"] = v.independent;
          res["failing_measure"] = v.failing_measure ? json(p.measures[*v.failing_measure]) : json(nullptr);
          const json d = verdict_json(v.detail, p.algebras);
          res["witness"] = d["witness"];
          res["mismatch"] = d["mismatch"];
          out.status = expectation(v.independent, p.expect);
        } else if constexpr (std::is_same_v<P, SimulationTask>) {
          RunOptions opt;
          opt.threads = cfg.threads;
          if (p.lindeberg_epsilon) opt.lindeberg_epsilon = *p.lindeberg_epsilon;
          if (p.lindeberg_threshold) opt.lindeberg_threshold = *p.lindeberg_threshold;
          const SequenceSpec spec = build_sequence(p.sequence, p.n, task.type == TaskType::Clt);
          res["n"] = p.n;
          res["seed"] = p.seed;
          put_moments(res, spec);
          std::vector<std::pair<std::uint64_t, double>> rows;
          if (task.type == TaskType::Lln) {
            const SimulationReport r = run_lln(spec, p.n, p.seed, opt);
            res["mean_sum"] = num(r.mean_sum);
            res["final_deviation"] = num(r.final_deviation);
            res["checkpoints"] = lln_checkpoints(r);
            bool ok = true;
            if (p.tolerance) {
              ok = std::abs(r.final_deviation) <= *p.tolerance;
              res["tolerance"] = num(*p.tolerance);
              res["within_tolerance"] = ok;
            }
            for (std::size_t i = 0; i < r.trajectory.size(); ++i) rows.emplace_back(i + 1, r.trajectory[i]);
            out.status = ok ? TaskStatus::Pass : TaskStatus::Fail;
          } else if (task.type == TaskType::Clt) {
            const SimulationReport r = run_clt(spec, p.n, p.reps, p.seed, opt);
            res["reps"] = p.reps;
            res["b_n2"] = num(r.b_n2);
            res["ks_distance"] = num(r.ks_distance);
            res["statistic_mean"] = num(r.statistic_mean);
            res["statistic_variance"] = num(r.statistic_variance);
            bool ok = true;
            if (p.tolerance) {
              ok = r.ks_distance <= *p.tolerance;
              res["tolerance"] = num(*p.tolerance);
              res["within_tolerance"] = ok;
            }
            for (std::size_t i = 0; i < r.sorted_statistics.size(); ++i) rows.emplace_back(i + 1, r.sorted_statistics[i]);
            out.status = ok ? TaskStatus::Pass : TaskStatus::Fail;
          } else {
            const SimulationReport r = run_lil(spec, p.n, p.seed, opt);
            res["trajectory_start"] = r.trajectory_start;
            res["running_max"] = num(r.running_max);
            json cps = json::array();
            for (const auto& [k, v] : r.checkpoints) cps.push_back(json::array({k, num(v)}));
            res["checkpoints"] = std::move(cps);
            bool ok = true;
            if (p.band) {
              ok = r.running_max >= (*p.band)[0] && r.running_max <= (*p.band)[1];
              res["band"] = json::array({num((*p.band)[0]), num((*p.band)[1])});
              res["within_band"] = ok;
            }
            for (std::size_t i = 0; i < r.trajectory.size(); ++i) rows.emplace_back(r.trajectory_start + i, r.trajectory[i]);
            out.status = ok ? TaskStatus::Pass : TaskStatus::Fail;
          }
          out.series = std::move(rows);
        } else if constexpr (std::is_same_v<P, LindebergTask>) {
          const SequenceSpec spec = build_sequence(p.sequence, p.n, false);
          const Rational v = lindeberg_sum(spec, p.n, p.epsilon);
          res["n"] = p.n;
          res["epsilon"] = rat(p.epsilon);
          res["value"] = rat(v);
          res["value_float"] = num(to_double(v));
        } else if constexpr (std::is_same_v<P, KolmogorovTask>) {
          bool declared = false;
          const VarianceRule rule = build_rule(p.rule, declared);
          const KolmogorovReport r = kolmogorov_condition(rule, p.terms, p.tolerance);
          res["verdict"] = to_string(r.verdict);
          res["terms"] = r.terms;
          res["partial_sum"] = num(r.partial_sum);
          res["tail_bound"] = r.tail_bound ? num(*r.tail_bound) : json(nullptr);
          res["within_tolerance"] = r.within_tolerance;
          if (rule.bound) {
            res["bound"] = json{{"direction", rule.bound->direction == GrowthBound::Direction::Upper ? "upper" : "lower"},
                                {"from", rule.bound->from_index},
                                {"coefficient", rat(rule.bound->coefficient)},
                                {"exponent", rat(rule.bound->exponent)},
                                {"declared", declared}};
          } else {
            res["bound"] = nullptr;
          }
          res["reason"] = r.reason;
          const bool ok = to_string(r.verdict) == p.expect && (r.verdict != SeriesVerdict::Convergent || r.within_tolerance);
          out.status = ok ? TaskStatus::Pass : TaskStatus::Fail;
        }
      },
      task.params);
}

std::vector<std::string> algebra_names_of(const TaskDecl& task) {
  if (const auto* p = std::get_if<CheckIndependenceTask>(&task.params)) return p->algebras;
  if (const auto* p = std::get_if<SignedIndependenceTask>(&task.params)) return p->algebras;
  if (const auto* p = std::get_if<UniformIndependenceTask>(&task.params)) return p->algebras;
  return {};
}

}  // namespace

Report run(const ProblemFile& problem, const RunConfig& config) {
  Report report;
  Context ctx(problem);
  for (std::size_t i = 0; i < problem.tasks.size(); ++i) {
    const TaskDecl& task = problem.tasks[i];
    TaskOutcome out;
    out.index = i;
    out.name = task.name;
    out.type = task.type;
    try {
      run_task(task, ctx, config, out);
    } catch (const NotIndependentError& e) {
      out.status = TaskStatus::Error;
      auto names = algebra_names_of(task);
      if (names.empty()) {
        if (const auto* p = std::get_if<ExtendTask>(&task.params)) {
          for (const auto& m : p->measures) names.push_back(ctx.factor_label(m));
        } else if (const auto* v = std::get_if<VerifyAdditivityTask>(&task.params)) {
          for (const auto& m : v->measures) names.push_back(ctx.factor_label(m));
        }
      }
      out.error = json{{"code", std::string(to_string(e.code()))}, {"message", e.what()},
                       {"witness", witness_json(e.witness(), names)}};
    } catch (const Error& e) {
      out.status = TaskStatus::Error;
      out.error = json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    } catch (const std::exception& e) {
      out.status = TaskStatus::Error;
      out.error = json{{"code", "InternalError"}, {"message", e.what()}};
    }
    if (out.status == TaskStatus::Error) {
      out.result = json::object();
      out.series.reset();
    }
    report.tasks.push_back(std::move(out));
  }
  return report;
}

json report_json(const Report& report) {
  json root = json::object();
  root["version"] = "indep-report/1";
  json tasks = json::array();
  std::size_t passed = 0, failed = 0, errors = 0;
  for (const auto& t : report.tasks) {
    json j = json::object();
    j["index"] = t.index;
    j["name"] = t.name;
    j["type"] = std::string(to_string(t.type));
    j["status"] = std::string(to_string(t.status));
    if (t.status == TaskStatus::Error) {
      j["error"] = t.error;
      ++errors;
    } else {
      j["result"] = t.result;
      (t.status == TaskStatus::Pass ? passed : failed) += 1;
    }
    tasks.push_back(std::move(j));
  }
  root["tasks"] = std::move(tasks);
  root["summary"] = json{{"tasks", report.tasks.size()}, {"passed", passed}, {"failed", failed},
                         {"errors", errors},         {"exit_code", report.exit_code()}};
  return root;
}

std::string render_json(const Report& report) { return report_json(report).dump(2) + "\n"; }

namespace {

std::string plain(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream os;
  const json root = report_json(report);
  for (const auto& t : root["tasks"]) {
    os << "[" << t["index"].get<std::size_t>() << "] ";
    if (!t["name"].get<std::string>().empty()) os << t["name"].get<std::string>() << " ";
    os << "(" << t["type"].get<std::string>() << "): ";
    std::string status = t["status"].get<std::string>();
    std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::toupper(c); });
    os << status << "\n";
    const json& body = t.contains("error") ? t["error"] : t["result"];
    for (const auto& [k, v] : body.items()) {
      if (k == "cells") {
        for (const auto& c : v) os << "    cell " << plain(c["atoms"]) << ": " << plain(c["p"]) << "\n";
      } else {
        os << "    " << k << ": " << plain(v) << "\n";
      }
    }
  }
  const json& s = root["summary"];
  os << "summary: " << s["passed"] << " passed, " << s["failed"] << " failed, " << s["errors"] << " errors (exit "
     << s["exit_code"] << ")\n";
  return os.str();
}

std::string render_csv(const TaskOutcome& outcome) {
  std::string out = "step,statistic\n";
  if (!outcome.series) return out;
  char buf[64];
  for (const auto& [step, v] : *outcome.series) {
    std::snprintf(buf, sizeof buf, "%llu,%.12g\n", static_cast<unsigned long long>(step), v);
    out += buf;
  }
  return out;
}

std::vector<std::filesystem::path> write_csv(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& t : report.tasks) {
    if (!t.series) continue;
    auto path = dir / ("task-" + std::to_string(t.index) + "-" + std::string(to_string(t.type)) + ".csv");
    std::ofstream(path, std::ios::binary) << render_csv(t);
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace indep::cli
