#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "indep/problem.hpp"
#include "indep/report.hpp"

namespace {

int run_command(const std::string& file, bool json_out, const std::string& csv_dir, unsigned threads) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "indep: cannot open " << file << "\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();
  indep::cli::ProblemFile problem;
  try {
    problem = indep::cli::parse_problem(text.str());
  } catch (const indep::cli::ProblemError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return 2;
  }
  const auto report = indep::cli::run(problem, {threads});
  std::cout << (json_out ? indep::cli::render_json(report) : indep::cli::render_text(report));
  if (!csv_dir.empty()) {
    try {
      indep::cli::write_csv(report, csv_dir);
    } catch (const std::exception& e) {
      std::cerr << "indep: " << e.what() << "\n";
      return 2;
    }
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact independence checks, extensions and seeded limit-theorem runs"};
  app.require_subcommand(1);

  std::string file;
  std::string csv_dir;
  bool json_out = false;
  bool text_out = false;
  unsigned threads = 1;
  auto* run = app.add_subcommand("run", "Run every task of a problem file");
  run->add_option("file", file, "Problem file (JSON)")->required();
  auto* json_flag = run->add_flag("--json", json_out, "Print the JSON report");
  run->add_flag("--text", text_out, "Print the text report (default)")->excludes(json_flag);
  run->add_option("--csv-dir", csv_dir, "Write step,statistic CSV files for simulation tasks");
  run->add_option("--threads", threads, "Worker threads for simulations")->check(CLI::Range(1u, 1024u));

  std::string name;
  auto* example = app.add_subcommand("example", "Print a bundled problem file");
  example->add_option("name", name, "Example name")->required()->check(CLI::IsMember(indep::cli::example_names()));

  CLI11_PARSE(app, argc, argv);

  if (*example) {
    std::cout << indep::cli::example_problem(name);
    return 0;
  }
  return run_command(file, json_out, csv_dir, threads);
}
