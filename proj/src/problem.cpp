#include "indep/problem.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <nlohmann/json.hpp>

#include "indep/error.hpp"

namespace indep::cli {

using json = nlohmann::ordered_json;
using indep::to_string;

std::string_view to_string(ProblemErrorCode code) noexcept {
  switch (code) {
    case ProblemErrorCode::SyntaxError: return "SyntaxError";
    case ProblemErrorCode::SchemaError: return "SchemaError";
    case ProblemErrorCode::UnknownReference: return "UnknownReference";
    case ProblemErrorCode::BadRational: return "BadRational";
    case ProblemErrorCode::UnknownTask: return "UnknownTask";
  }
  return "SchemaError";
}

namespace {

std::string describe(ProblemErrorCode code, const std::string& path, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " at line " + std::to_string(*line);
  if (!path.empty()) out += " at " + path;
  return out + ": " + message;
}

}  // namespace

ProblemError::ProblemError(ProblemErrorCode code, std::string path, const std::string& message,
                           std::optional<std::size_t> line)
    : std::runtime_error(describe(code, path, message, line)), code_(code), path_(std::move(path)), line_(line) {}

namespace {

constexpr std::pair<TaskType, std::string_view> kTaskNames[] = {
    {TaskType::CheckIndependence, "check-independence"},
    {TaskType::Extend, "extend"},
    {TaskType::VerifyAdditivity, "verify-additivity"},
    {TaskType::Jordan, "jordan"},
    {TaskType::SignedIndependence, "signed-independence"},
    {TaskType::UniformIndependence, "uniform-independence"},
    {TaskType::Lln, "lln"},
    {TaskType::Clt, "clt"},
    {TaskType::Lil, "lil"},
    {TaskType::Lindeberg, "lindeberg"},
    {TaskType::Kolmogorov, "kolmogorov"},
};

}  // namespace

std::string_view to_string(TaskType type) noexcept {
  for (const auto& [t, name] : kTaskNames) {
    if (t == type) return name;
  }
  return "check-independence";
}

std::optional<TaskType> task_type_from(std::string_view name) noexcept {
  for (const auto& [t, n] : kTaskNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ parsing

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw ProblemError(ProblemErrorCode::SchemaError, path, msg);
}

[[noreturn]] void unknown(const std::string& path, const std::string& msg) {
  throw ProblemError(ProblemErrorCode::UnknownReference, path, msg);
}

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& object_at(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  return j;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

void allow_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) schema(child(path, k), "unknown field");
  }
}

const json& field(const json& obj, const std::string& path, std::string_view key) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) schema(path, "missing field '" + std::string(key) + "'");
  return *it;
}

const json* optional_field(const json& obj, std::string_view key) {
  const auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected true or false");
  return j.get<bool>();
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  schema(path, "expected a non-negative integer");
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

// Rationals are "p/q" strings or JSON integers; JSON floats are rejected.
Rational get_rational(const json& j, const std::string& path) {
  if (j.is_number_float()) {
    throw ProblemError(ProblemErrorCode::BadRational, path, "decimal numbers are not accepted; write \"p/q\"");
  }
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (!j.is_string()) throw ProblemError(ProblemErrorCode::BadRational, path, "expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw ProblemError(ProblemErrorCode::BadRational, path, e.what());
  }
}

std::vector<std::string> get_strings(const json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; const auto& v : array_at(j, path)) out.push_back(get_string(v, child(path, i++)));
  return out;
}

std::vector<Rational> get_rationals(const json& j, const std::string& path) {
  std::vector<Rational> out;
  for (std::size_t i = 0; const auto& v : array_at(j, path)) out.push_back(get_rational(v, child(path, i++)));
  return out;
}

struct Names {
  std::set<std::string> atoms;
  std::map<std::string, std::size_t> algebras;
  std::map<std::string, const MeasureDecl*> measures;
};

std::vector<std::string> get_event(const json& j, const std::string& path, const Names& names) {
  auto labels = get_strings(j, path);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!names.atoms.contains(labels[i])) unknown(child(path, i), "undeclared atom '" + labels[i] + "'");
  }
  return labels;
}

std::string algebra_ref(const json& j, const std::string& path, const Names& names) {
  auto name = get_string(j, path);
  if (!names.algebras.contains(name)) unknown(path, "undeclared algebra '" + name + "'");
  return name;
}

std::string measure_ref(const json& j, const std::string& path, const Names& names) {
  auto name = get_string(j, path);
  if (!names.measures.contains(name)) unknown(path, "undeclared measure '" + name + "'");
  return name;
}

std::vector<std::string> algebra_refs(const json& j, const std::string& path, const Names& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; const auto& v : array_at(j, path)) out.push_back(algebra_ref(v, child(path, i++), names));
  return out;
}

std::vector<std::string> measure_refs(const json& j, const std::string& path, const Names& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; const auto& v : array_at(j, path)) out.push_back(measure_ref(v, child(path, i++), names));
  return out;
}

SequenceDecl get_sequence(const json& obj, const std::string& path) {
  SequenceDecl seq;
  seq.support = get_rationals(field(obj, path, "support"), child(path, "support"));
  const json* probs = optional_field(obj, "probs");
  const json* cycle = optional_field(obj, "cycle");
  if ((probs == nullptr) == (cycle == nullptr)) schema(path, "exactly one of 'probs' and 'cycle' is required");
  if (probs) {
    seq.probs = get_rationals(*probs, child(path, "probs"));
  } else {
    const auto cpath = child(path, "cycle");
    seq.cycle.emplace();
    for (std::size_t i = 0; const auto& law : array_at(*cycle, cpath)) {
      seq.cycle->push_back(get_rationals(law, child(cpath, i++)));
    }
  }
  return seq;
}

GrowthBoundDecl get_bound(const json& j, const std::string& path) {
  object_at(j, path);
  allow_keys(j, path, {"direction", "from", "coefficient", "exponent"});
  GrowthBoundDecl b;
  if (const json* d = optional_field(j, "direction")) b.direction = get_string(*d, child(path, "direction"));
  if (b.direction != "upper" && b.direction != "lower") {
    schema(child(path, "direction"), "expected \"upper\" or \"lower\"");
  }
  if (const json* f = optional_field(j, "from")) b.from_index = get_u64(*f, child(path, "from"));
  b.coefficient = get_rational(field(j, path, "coefficient"), child(path, "coefficient"));
  b.exponent = get_rational(field(j, path, "exponent"), child(path, "exponent"));
  return b;
}

VarianceRuleDecl get_rule(const json& j, const std::string& path) {
  object_at(j, path);
  allow_keys(j, path, {"kind", "coefficient", "exponent", "values", "bound"});
  VarianceRuleDecl r;
  r.kind = get_string(field(j, path, "kind"), child(path, "kind"));
  if (const json* c = optional_field(j, "coefficient")) r.coefficient = get_rational(*c, child(path, "coefficient"));
  if (r.kind == "power") {
    r.exponent = get_rational(field(j, path, "exponent"), child(path, "exponent"));
    if (r.exponent.get_den() != 1) schema(child(path, "exponent"), "power rules take an integer exponent");
  } else if (r.kind == "values") {
    r.values = get_rationals(field(j, path, "values"), child(path, "values"));
    if (r.values.empty()) schema(child(path, "values"), "at least one value is required");
  } else if (r.kind != "n-over-log") {
    schema(child(path, "kind"), "expected \"power\", \"values\" or \"n-over-log\"");
  }
  if (r.kind != "power" && optional_field(j, "exponent")) schema(child(path, "exponent"), "only power rules take an exponent");
  if (r.kind != "values" && optional_field(j, "values")) schema(child(path, "values"), "only values rules take values");
  if (const json* b = optional_field(j, "bound")) r.bound = get_bound(*b, child(path, "bound"));
  return r;
}

TaskDecl get_task(const json& j, const std::string& path, const Names& names) {
  object_at(j, path);
  TaskDecl t;
  const auto type_name = get_string(field(j, path, "type"), child(path, "type"));
  const auto type = task_type_from(type_name);
  if (!type) throw ProblemError(ProblemErrorCode::UnknownTask, child(path, "type"), "unknown task '" + type_name + "'");
  t.type = *type;
  if (const json* n = optional_field(j, "name")) t.name = get_string(*n, child(path, "name"));
  auto opt_expect = [&](bool& out) {
    if (const json* e = optional_field(j, "expect")) out = get_bool(*e, child(path, "expect"));
  };

  switch (t.type) {
    case TaskType::CheckIndependence: {
      allow_keys(j, path, {"name", "type", "algebras", "measure", "method", "expect"});
      CheckIndependenceTask p;
      p.algebras = algebra_refs(field(j, path, "algebras"), child(path, "algebras"), names);
      if (const json* m = optional_field(j, "measure")) p.measure = measure_ref(*m, child(path, "measure"), names);
      if (const json* m = optional_field(j, "method")) p.method = get_string(*m, child(path, "method"));
      if (p.method != "block" && p.method != "bruteforce" && p.method != "sigma") {
        schema(child(path, "method"), "expected \"block\", \"bruteforce\" or \"sigma\"");
      }
      opt_expect(p.expect);
      t.params = std::move(p);
      break;
    }
    case TaskType::Extend: {
      allow_keys(j, path, {"name", "type", "measures"});
      t.params = ExtendTask{measure_refs(field(j, path, "measures"), child(path, "measures"), names)};
      break;
    }
    case TaskType::VerifyAdditivity: {
      allow_keys(j, path, {"name", "type", "measures", "parts", "expect"});
      VerifyAdditivityTask p;
      p.measures = measure_refs(field(j, path, "measures"), child(path, "measures"), names);
      const auto ppath = child(path, "parts");
      for (std::size_t i = 0; const auto& part : array_at(field(j, path, "parts"), ppath)) {
        const auto cpath = child(ppath, i++);
        CylinderDecl cyl;
        for (const auto& [alg, ev] : object_at(part, cpath).items()) {
          if (!names.algebras.contains(alg)) unknown(child(cpath, alg), "undeclared algebra '" + alg + "'");
          cyl.emplace_back(alg, get_event(ev, child(cpath, alg), names));
        }
        p.parts.push_back(std::move(cyl));
      }
      opt_expect(p.expect);
      t.params = std::move(p);
      break;
    }
    case TaskType::Jordan: {
      allow_keys(j, path, {"name", "type", "measure"});
      t.params = JordanTask{measure_ref(field(j, path, "measure"), child(path, "measure"), names)};
      break;
    }
    case TaskType::SignedIndependence: {
      allow_keys(j, path, {"name", "type", "algebras", "measure", "expect"});
      SignedIndependenceTask p;
      p.algebras = algebra_refs(field(j, path, "algebras"), child(path, "algebras"), names);
      p.measure = measure_ref(field(j, path, "measure"), child(path, "measure"), names);
      opt_expect(p.expect);
      t.params = std::move(p);
      break;
    }
    case TaskType::UniformIndependence: {
      allow_keys(j, path, {"name", "type", "algebras", "measures", "expect"});
      UniformIndependenceTask p;
      p.algebras = algebra_refs(field(j, path, "algebras"), child(path, "algebras"), names);
      p.measures = measure_refs(field(j, path, "measures"), child(path, "measures"), names);
      opt_expect(p.expect);
      t.params = std::move(p);
      break;
    }
    case TaskType::Lln:
    case TaskType::Clt:
    case TaskType::Lil: {
      if (t.type == TaskType::Lln) allow_keys(j, path, {"name", "type", "support", "probs", "cycle", "n", "seed", "tolerance"});
      if (t.type == TaskType::Clt) {
        allow_keys(j, path, {"name", "type", "support", "probs", "cycle", "n", "reps", "seed", "tolerance",
                             "lindeberg_epsilon", "lindeberg_threshold"});
      }
      if (t.type == TaskType::Lil) allow_keys(j, path, {"name", "type", "support", "probs", "cycle", "n", "seed", "band"});
      SimulationTask p;
      p.sequence = get_sequence(j, path);
      p.n = get_u64(field(j, path, "n"), child(path, "n"));
      p.seed = get_u64(field(j, path, "seed"), child(path, "seed"));
      if (t.type == TaskType::Clt) p.reps = get_u64(field(j, path, "reps"), child(path, "reps"));
      if (const json* tol = optional_field(j, "tolerance")) p.tolerance = get_double(*tol, child(path, "tolerance"));
      if (const json* band = optional_field(j, "band")) {
        const auto bpath = child(path, "band");
        if (!band->is_array() || band->size() != 2) schema(bpath, "expected [low, high]");
        p.band = std::array<double, 2>{get_double((*band)[0], child(bpath, 0)), get_double((*band)[1], child(bpath, 1))};
      }
      if (const json* e = optional_field(j, "lindeberg_epsilon")) {
        p.lindeberg_epsilon = get_rational(*e, child(path, "lindeberg_epsilon"));
      }
      if (const json* e = optional_field(j, "lindeberg_threshold")) {
        p.lindeberg_threshold = get_rational(*e, child(path, "lindeberg_threshold"));
      }
      t.params = std::move(p);
      break;
    }
    case TaskType::Lindeberg: {
      allow_keys(j, path, {"name", "type", "support", "probs", "cycle", "n", "epsilon"});
      LindebergTask p;
      p.sequence = get_sequence(j, path);
      p.n = get_u64(field(j, path, "n"), child(path, "n"));
      p.epsilon = get_rational(field(j, path, "epsilon"), child(path, "epsilon"));
      t.params = std::move(p);
      break;
    }
    case TaskType::Kolmogorov: {
      allow_keys(j, path, {"name", "type", "rule", "terms", "tolerance", "expect"});
      KolmogorovTask p;
      p.rule = get_rule(field(j, path, "rule"), child(path, "rule"));
      if (const json* n = optional_field(j, "terms")) p.terms = get_u64(*n, child(path, "terms"));
      if (const json* tol = optional_field(j, "tolerance")) p.tolerance = get_double(*tol, child(path, "tolerance"));
      if (const json* e = optional_field(j, "expect")) p.expect = get_string(*e, child(path, "expect"));
      if (p.expect != "convergent" && p.expect != "divergent" && p.expect != "undecided") {
        schema(child(path, "expect"), "expected \"convergent\", \"divergent\" or \"undecided\"");
      }
      t.params = std::move(p);
      break;
    }
  }
  return t;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ProblemError(ProblemErrorCode::SyntaxError, "", e.what(), line_of(text, byte));
  }
  const std::string path;
  object_at(root, "/");
  allow_keys(root, path, {"version", "atoms", "algebras", "measures", "tasks"});

  ProblemFile pf;
  pf.version = get_string(field(root, "/", "version"), "/version");
  if (pf.version != kProblemVersion) schema("/version", "expected \"" + std::string(kProblemVersion) + "\"");

  Names names;
  pf.atoms = get_strings(field(root, "/", "atoms"), "/atoms");
  for (std::size_t i = 0; i < pf.atoms.size(); ++i) {
    if (!names.atoms.insert(pf.atoms[i]).second) schema(child("/atoms", i), "duplicate atom '" + pf.atoms[i] + "'");
  }

  if (const json* algs = optional_field(root, "algebras")) {
    for (const auto& [name, gens] : object_at(*algs, "/algebras").items()) {
      const auto apath = child("/algebras", name);
      AlgebraDecl decl{name, {}};
      for (std::size_t i = 0; const auto& g : array_at(gens, apath)) decl.generators.push_back(get_event(g, child(apath, i++), names));
      names.algebras.emplace(name, pf.algebras.size());
      pf.algebras.push_back(std::move(decl));
    }
  }

  if (const json* ms = optional_field(root, "measures")) {
    for (const auto& [name, body] : object_at(*ms, "/measures").items()) {
      const auto mpath = child("/measures", name);
      object_at(body, mpath);
      MeasureDecl decl{name, std::nullopt, {}};
      if (const json* alg = optional_field(body, "algebra")) {
        allow_keys(body, mpath, {"algebra", "blocks"});
        decl.algebra = algebra_ref(*alg, child(mpath, "algebra"), names);
        const auto bpath = child(mpath, "blocks");
        for (std::size_t i = 0; const auto& entry : array_at(field(body, mpath, "blocks"), bpath)) {
          const auto epath = child(bpath, i++);
          object_at(entry, epath);
          allow_keys(entry, epath, {"event", "p"});
          decl.weights.push_back({get_event(field(entry, epath, "event"), child(epath, "event"), names),
                                  get_rational(field(entry, epath, "p"), child(epath, "p"))});
        }
      } else {
        allow_keys(body, mpath, {"atoms"});
        const auto apath = child(mpath, "atoms");
        for (const auto& [label, w] : object_at(field(body, mpath, "atoms"), apath).items()) {
          if (!names.atoms.contains(label)) unknown(child(apath, label), "undeclared atom '" + label + "'");
          decl.weights.push_back({{label}, get_rational(w, child(apath, label))});
        }
      }
      pf.measures.push_back(std::move(decl));
    }
    for (const auto& m : pf.measures) names.measures.emplace(m.name, &m);
  }

  if (const json* tasks = optional_field(root, "tasks")) {
    for (std::size_t i = 0; const auto& t : array_at(*tasks, "/tasks")) pf.tasks.push_back(get_task(t, child("/tasks", i++), names));
  }
  return pf;
}

// ------------------------------------------------------------ serializing

namespace {

json rationals(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

void put_sequence(json& out, const SequenceDecl& seq) {
  out["support"] = rationals(seq.support);
  if (seq.probs) out["probs"] = rationals(*seq.probs);
  if (seq.cycle) {
    json c = json::array();
    for (const auto& law : *seq.cycle) c.push_back(rationals(law));
    out["cycle"] = std::move(c);
  }
}

json task_json(const TaskDecl& t) {
  json out = json::object();
  out["name"] = t.name;
  out["type"] = std::string(to_string(t.type));
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, CheckIndependenceTask>) {
          out["algebras"] = p.algebras;
          if (p.measure) out["measure"] = *p.measure;
          out["method"] = p.method;
          out["expect"] = p.expect;
        } else if constexpr (std::is_same_v<P, ExtendTask>) {
          out["measures"] = p.measures;
        } else if constexpr (std::is_same_v<P, VerifyAdditivityTask>) {
          out["measures"] = p.measures;
          json parts = json::array();
          for (const auto& cyl : p.parts) {
            json c = json::object();
            for (const auto& [alg, ev] : cyl) c[alg] = ev;
            parts.push_back(std::move(c));
          }
          out["parts"] = std::move(parts);
          out["expect"] = p.expect;
        } else if constexpr (std::is_same_v<P, JordanTask>) {
          out["measure"] = p.measure;
        } else if constexpr (std::is_same_v<P, SignedIndependenceTask>) {
          out["algebras"] = p.algebras;
          out["measure"] = p.measure;
          out["expect"] = p.expect;
        } else if constexpr (std::is_same_v<P, UniformIndependenceTask>) {
          out["algebras"] = p.algebras;
          out["measures"] = p.measures;
          out["expect"] = p.expect;
        } else if constexpr (std::is_same_v<P, SimulationTask>) {
          put_sequence(out, p.sequence);
          out["n"] = p.n;
          if (t.type == TaskType::Clt) out["reps"] = p.reps;
          out["seed"] = p.seed;
          if (p.tolerance) out["tolerance"] = *p.tolerance;
          if (p.band) out["band"] = {(*p.band)[0], (*p.band)[1]};
          if (p.lindeberg_epsilon) out["lindeberg_epsilon"] = to_string(*p.lindeberg_epsilon);
          if (p.lindeberg_threshold) out["lindeberg_threshold"] = to_string(*p.lindeberg_threshold);
        } else if constexpr (std::is_same_v<P, LindebergTask>) {
          put_sequence(out, p.sequence);
          out["n"] = p.n;
          out["epsilon"] = to_string(p.epsilon);
        } else if constexpr (std::is_same_v<P, KolmogorovTask>) {
          json rule = json::object();
          rule["kind"] = p.rule.kind;
          rule["coefficient"] = to_string(p.rule.coefficient);
          if (p.rule.kind == "power") rule["exponent"] = to_string(p.rule.exponent);
          if (p.rule.kind == "values") rule["values"] = rationals(p.rule.values);
          if (p.rule.bound) {
            const auto& b = *p.rule.bound;
            rule["bound"] = {{"direction", b.direction},
                             {"from", b.from_index},
                             {"coefficient", to_string(b.coefficient)},
                             {"exponent", to_string(b.exponent)}};
          }
          out["rule"] = std::move(rule);
          out["terms"] = p.terms;
          out["tolerance"] = p.tolerance;
          out["expect"] = p.expect;
        }
      },
      t.params);
  return out;
}

}  // namespace

std::string serialize_problem(const ProblemFile& pf) {
  json root = json::object();
  root["version"] = pf.version;
  root["atoms"] = pf.atoms;
  json algs = json::object();
  for (const auto& a : pf.algebras) algs[a.name] = a.generators;
  root["algebras"] = std::move(algs);
  json ms = json::object();
  for (const auto& m : pf.measures) {
    json body = json::object();
    if (m.algebra) {
      body["algebra"] = *m.algebra;
      json blocks = json::array();
      for (const auto& w : m.weights) blocks.push_back(json{{"event", w.event}, {"p", to_string(w.weight)}});
      body["blocks"] = std::move(blocks);
    } else {
      json atoms = json::object();
      for (const auto& w : m.weights) atoms[w.event.at(0)] = to_string(w.weight);
      body["atoms"] = std::move(atoms);
    }
    ms[m.name] = std::move(body);
  }
  root["measures"] = std::move(ms);
  json tasks = json::array();
  for (const auto& t : pf.tasks) tasks.push_back(task_json(t));
  root["tasks"] = std::move(tasks);
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------- examples

namespace {

constexpr std::string_view kCoin = R"({
  "version": "indep-problem/1",
  "atoms": ["HH", "HT", "TH", "TT"],
  "algebras": {
    "A": [["HH", "HT"]],
    "B": [["HH", "TH"]]
  },
  "measures": {
    "PA": {"algebra": "A", "blocks": [{"event": ["HH", "HT"], "p": "1/4"}, {"event": ["TH", "TT"], "p": "3/4"}]},
    "PB": {"algebra": "B", "blocks": [{"event": ["HH", "TH"], "p": "3/4"}, {"event": ["HT", "TT"], "p": "1/4"}]},
    "P3": {"atoms": {"HH": "3/16", "HT": "5/16", "TH": "5/16", "TT": "3/16"}}
  },
  "tasks": [
    {"name": "logical", "type": "check-independence", "algebras": ["A", "B"]},
    {"name": "extend", "type": "extend", "measures": ["PA", "PB"]},
    {"name": "mixture", "type": "check-independence", "algebras": ["A", "B"], "measure": "P3"}
  ]
}
)";

}  // namespace

std::vector<std::string> example_names() { return {"coin"}; }

std::string example_problem(std::string_view name) {
  if (name == "coin") return std::string(kCoin);
  throw std::out_of_range("no bundled example named '" + std::string(name) + "'");
}

}  // namespace indep::cli
