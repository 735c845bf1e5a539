#include <map>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "indep/error.hpp"
#include "indep/extension.hpp"
#include "indep/independence.hpp"
#include "indep/limit_lab.hpp"
#include "indep/problem.hpp"
#include "indep/report.hpp"
#include "indep/signed.hpp"

namespace py = pybind11;
using namespace indep;

namespace {

using Labels = std::vector<std::string>;
using Generators = std::vector<Labels>;

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

// Accepts Fraction, int or "p/q".
Rational rational(const py::handle& obj) { return parse_rational(py::str(obj).cast<std::string>()); }

std::vector<SigmaAlgebra> algebras(const SpaceRef& space, const std::vector<Generators>& gens) {
  std::vector<SigmaAlgebra> out;
  for (const auto& g : gens) {
    std::vector<EventSet> events;
    for (const auto& e : g) events.push_back(EventSet::from_labels(space, e));
    out.push_back(generate_sigma_algebra(space, events));
  }
  return out;
}

BlockMeasure atom_measure(const SpaceRef& space, const py::dict& weights) {
  std::vector<Rational> w(space->atom_count(), Rational(0));
  for (const auto& [k, v] : weights) w[space->index_of(k.cast<std::string>())] = rational(v);
  return BlockMeasure::on_atoms(space, std::move(w));
}

py::object witness(const std::optional<std::vector<WitnessEntry>>& w) {
  if (!w) return py::none();
  py::list out;
  for (const auto& e : *w) out.append(py::make_tuple(e.algebra, e.set.labels()));
  return out;
}

py::dict verdict(const IndependenceVerdict& v) {
  py::dict out;
  out["independent"] = v.independent;
  out["witness"] = witness(v.witness);
  if (v.mismatch) {
    py::list factors;
    for (const auto& f : v.mismatch->factors) factors.append(fraction(f));
    out["joint"] = fraction(v.mismatch->joint);
    out["factors"] = factors;
    out["product"] = fraction(v.mismatch->product);
  }
  return out;
}

py::dict weights_by_block(const BlockMeasure& m) {
  py::dict out;
  for (std::size_t b = 0; b < m.weights().size(); ++b) {
    if (m.weights()[b] != 0) out[py::tuple(py::cast(m.algebra().block(b).labels()))] = fraction(m.weights()[b]);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_indep, m) {
  m.doc() = "Exact independence checks, independence-preserving extensions and seeded limit-theorem runs";

  static py::exception<Error> indep_error(m, "IndepError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cli::ProblemError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      py::set_error(indep_error, e.what());
    }
  });

  m.def(
      "sigma_algebra_blocks",
      [](const Labels& atoms, const Generators& generators) {
        const auto space = make_space(atoms);
        std::vector<Labels> out;
        const SigmaAlgebra alg = algebras(space, {generators}).front();
        for (const auto& b : alg.blocks()) out.push_back(b.labels());
        return out;
      },
      py::arg("atoms"), py::arg("generators"));

  m.def(
      "check_logical_independence",
      [](const Labels& atoms, const std::vector<Generators>& family, const std::string& method) {
        const auto algs = algebras(make_space(atoms), family);
        if (method == "bruteforce") return verdict(check_logical_independence_bruteforce(algs));
        if (method == "sigma") return verdict(check_sigma_logical_independence(algs));
        if (method != "block") throw Error(ErrorCode::InvalidArgument, "method must be block, bruteforce or sigma");
        return verdict(check_logical_independence(algs));
      },
      py::arg("atoms"), py::arg("algebras"), py::arg("method") = "block");

  m.def(
      "check_probabilistic_independence",
      [](const Labels& atoms, const std::vector<Generators>& family, const py::dict& weights) {
        const auto space = make_space(atoms);
        return verdict(check_probabilistic_independence(algebras(space, family), atom_measure(space, weights)));
      },
      py::arg("atoms"), py::arg("algebras"), py::arg("weights"));

  m.def(
      "extend",
      [](const Labels& atoms, const std::vector<std::pair<Generators, py::dict>>& factors) {
        const auto space = make_space(atoms);
        std::vector<FactorMeasure> fs;
        for (const auto& [gens, weights] : factors) {
          const SigmaAlgebra alg = algebras(space, {gens}).front();
          std::vector<std::optional<Rational>> w(alg.block_count());
          for (const auto& [k, v] : weights) {
            const EventSet ev = EventSet::from_labels(space, k.cast<Labels>());
            const auto it = std::find(alg.blocks().begin(), alg.blocks().end(), ev);
            if (it == alg.blocks().end()) throw Error(ErrorCode::NotInAlgebra, ev.to_string() + " is not a block");
            w[static_cast<std::size_t>(it - alg.blocks().begin())] = rational(v);
          }
          std::vector<Rational> probs;
          for (auto& x : w) {
            if (!x) throw Error(ErrorCode::MeasureMismatch, "every block needs a weight");
            probs.push_back(*x);
          }
          fs.emplace_back(alg, std::move(probs));
        }
        const ExtensionMeasure ext = extend(fs);
        py::dict out;
        for (std::size_t c = 0; c < ext.cell_prob().size(); ++c) {
          out[py::tuple(py::cast(ext.join_algebra().block(c).labels()))] = fraction(ext.cell_prob()[c]);
        }
        return out;
      },
      py::arg("atoms"), py::arg("factors"),
      "factors: list of (generators, {block labels tuple: probability}). Returns {cell labels tuple: probability}.");

  m.def(
      "jordan",
      [](const Labels& atoms, const py::dict& weights) {
        const JordanPair jp = jordan_decompose(atom_measure(make_space(atoms), weights));
        return py::make_tuple(weights_by_block(jp.positive), weights_by_block(jp.negative),
                              jp.hahn_positive_set.labels());
      },
      py::arg("atoms"), py::arg("weights"));

  m.def(
      "lindeberg_sum",
      [](const std::vector<py::object>& support, const std::vector<py::object>& probs, std::uint64_t n,
         const py::object& epsilon) {
        std::vector<Rational> s, p;
        for (const auto& x : support) s.push_back(rational(x));
        for (const auto& x : probs) p.push_back(rational(x));
        const auto spec = select_identical_measures(RangeSpec::make(s), CoordinateMeasure::make(p), n);
        return fraction(lindeberg_sum(spec, n, rational(epsilon)));
      },
      py::arg("support"), py::arg("probs"), py::arg("n"), py::arg("epsilon"));

  m.def(
      "run_problem",
      [](const std::string& text, unsigned threads) {
        const auto report = cli::run(cli::parse_problem(text), {threads});
        return py::make_tuple(cli::render_json(report), report.exit_code());
      },
      py::arg("text"), py::arg("threads") = 1, "Returns (JSON report, exit code).");

  m.def(
      "roundtrip_problem", [](const std::string& text) { return cli::serialize_problem(cli::parse_problem(text)); },
      py::arg("text"));

  m.def("example", [](const std::string& name) { return cli::example_problem(name); }, py::arg("name"));
}
