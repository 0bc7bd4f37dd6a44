#include "cli.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace boxqp;

namespace {

void add_common(CLI::App* cmd, std::string& mode, std::string& format) {
  cmd->add_option("--mode", mode, "Arithmetic: exact, float, or auto (file's \"mode\" field, else exact)")
      ->check(CLI::IsMember({"exact", "float", "auto"}));
  cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "structured"}));
}

Mode to_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  return Mode::Auto;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box-constrained quadratic maximization for low-rank objectives"};
  app.require_subcommand(1);

  cli::Flags flags;
  std::string mode = "auto", format = "human", path, g_rows, out_path;
  bool random = false;
  std::size_t generic_n = 0;
  cli::RandomCorpus corpus;
  GeneratorOptions gen;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  auto* oracle_cmd = app.add_subcommand("oracle", "Solve an instance file by enumerating all 3^n box faces");
  auto* compare_cmd = app.add_subcommand("compare", "Check the solver against the oracle");
  auto* count_cmd = app.add_subcommand("count-faces", "Count the faces the solver enumerates");
  auto* gen_cmd = app.add_subcommand("gen", "Write a random instance");

  for (auto* cmd : {solve_cmd, oracle_cmd, compare_cmd, count_cmd}) add_common(cmd, mode, format);
  for (auto* cmd : {solve_cmd, compare_cmd}) {
    cmd->add_flag("--min-rank", flags.min_rank, "Replace Q by a minimal-rank representer when q = 0");
    cmd->add_flag("--parallel", flags.parallel, "Solve face LPs on several threads");
  }
  for (auto* cmd : {oracle_cmd, compare_cmd}) cmd->add_option("--cap", flags.cap, "Largest n the oracle accepts");

  solve_cmd->add_option("path", path, "Instance file")->required();
  oracle_cmd->add_option("path", path, "Instance file")->required();

  compare_cmd->add_option("path", path, "Instance file");
  compare_cmd->add_flag("--random", random, "Use a seeded random corpus instead of a file");
  compare_cmd->add_option("--n", corpus.n, "Corpus dimension");
  compare_cmd->add_option("--rank", corpus.rank, "Corpus rank of Q");
  compare_cmd->add_option("--count", corpus.count, "Corpus size");
  compare_cmd->add_option("--seed", corpus.seed, "Seed of the first corpus instance");
  compare_cmd->add_flag("--zero-linear", corpus.zero_linear, "Corpus instances have q = 0");
  compare_cmd->add_flag("--degenerate", corpus.degenerate, "Pin one coordinate per corpus instance");
  compare_cmd->add_option("--tol", flags.tol, "Float-mode agreement tolerance (relative)");

  count_cmd->add_option("path", path, "Instance file");
  count_cmd->add_option("-G,--matrix", g_rows, "G row by row, e.g. \"1,2;0,0\"");
  count_cmd->add_option("--generic", generic_n, "Generic 2 x n matrix with columns (1, j)");

  gen_cmd->add_option("--n", gen.n, "Dimension")->required();
  gen_cmd->add_option("--rank", gen.rank, "Rank of Q")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--coeff-range", gen.coeff_range, "Factor and linear coefficients in [-c, c]");
  gen_cmd->add_option("--bound-range", gen.bound_range, "Lower bounds in [-b, b], widths in [0, b]");
  gen_cmd->add_flag("--zero-linear", gen.zero_linear, "Set q = 0");
  gen_cmd->add_flag("--degenerate", gen.force_degenerate, "Pin one coordinate");
  gen_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }
  flags.mode = to_mode(mode);
  flags.structured = format == "structured";

  if (*solve_cmd) return cli::cmd_solve(path, flags, std::cout, std::cerr);
  if (*oracle_cmd) return cli::cmd_oracle(path, flags, std::cout, std::cerr);
  if (*compare_cmd) {
    if (random) return cli::cmd_compare_random(corpus, flags, std::cout, std::cerr);
    if (path.empty()) {
      std::cerr << "error: compare needs an instance file or --random\n";
      return cli::kInputError;
    }
    return cli::cmd_compare(path, flags, std::cout, std::cerr);
  }
  if (*count_cmd) {
    if (!g_rows.empty()) return cli::cmd_count_faces_matrix(g_rows, flags, std::cout, std::cerr);
    if (generic_n > 0) return cli::cmd_count_faces_generic(generic_n, flags, std::cout, std::cerr);
    if (path.empty()) {
      std::cerr << "error: count-faces needs an instance file, -G, or --generic\n";
      return cli::kInputError;
    }
    return cli::cmd_count_faces(path, flags, std::cout, std::cerr);
  }
  return cli::cmd_gen(gen, out_path, std::cout, std::cerr);
}
