// atomloop: header classes and forwarding-loop detection for wildcard and
// multi-range rule tables.
//
//   atomloop atoms   <instance> [--algo add|basic]
//   atomloop metrics <instance> [--algo add|basic]
//   atomloop loops   <instance> [--first] [--witness] [--jobs N]
//   atomloop check   <instance>
//   atomloop gen     fig2|hsa|veriflow|random [params] [--out FILE]
//
// <instance> may be "-" for standard input. ATOMLOOP_LOG sets the log level
// (trace, debug, info, warn, error, off; default warn).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "atomloop/commands.hpp"

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("atomloop");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("ATOMLOOP_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

atomloop::Algorithm parse_algo(const std::string& name) {
  return name == "basic" ? atomloop::Algorithm::Basic : atomloop::Algorithm::Incremental;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace atomloop;
  configure_logging();

  CLI::App app{"Header classes and forwarding-loop detection for rule tables"};
  app.require_subcommand(1);

  std::string input;
  std::string algo = "add";
  const std::map<std::string, std::string> algos{{"add", "add"}, {"basic", "basic"}};

  auto* atoms = app.add_subcommand("atoms", "List uncovered combinations (one per header class)");
  atoms->add_option("instance", input, "Instance file, or - for stdin")->required();
  atoms->add_option("--algo", algo, "Update algorithm")->transform(CLI::CheckedTransformer(algos));

  auto* metrics = app.add_subcommand("metrics", "Overlapping degree metrics as JSON");
  metrics->add_option("instance", input, "Instance file, or - for stdin")->required();
  metrics->add_option("--algo", algo, "Update algorithm")->transform(CLI::CheckedTransformer(algos));

  DetectOptions detect;
  auto* loops = app.add_subcommand("loops", "Detect forwarding loops; exit 1 if any");
  loops->add_option("instance", input, "Instance file, or - for stdin")->required();
  loops->add_option("--algo", algo, "Update algorithm")->transform(CLI::CheckedTransformer(algos));
  loops->add_flag("--first", detect.first_only, "Stop at the first looping class");
  loops->add_flag("--witness", detect.witness, "Report one concrete header per looping class");
  loops->add_option("--jobs", detect.jobs, "Worker threads for per-class detection")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Compare against brute force (headers up to 22 bits)");
  check->add_option("instance", input, "Instance file, or - for stdin")->required();
  check->add_option("--algo", algo, "Update algorithm")->transform(CLI::CheckedTransformer(algos));

  cli::GenOptions gen;
  std::string family;
  std::string out_path = "-";
  const std::map<std::string, cli::Family> families{{"fig2", cli::Family::Fig2},
                                                    {"hsa", cli::Family::Hsa},
                                                    {"veriflow", cli::Family::Veriflow},
                                                    {"random", cli::Family::Random}};
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance file");
  gen_cmd->add_option("family", family, "fig2, hsa, veriflow or random")
      ->required()
      ->check(CLI::IsMember({"fig2", "hsa", "veriflow", "random"}));
  gen_cmd->add_option("--ell", gen.ell, "Header bits (hsa, random wildcard)");
  gen_cmd->add_option("--d", gen.d, "Fields (veriflow)");
  gen_cmd->add_option("--p", gen.p, "Breakpoints per field (veriflow)");
  gen_cmd->add_option("--breakpoints", gen.breakpoints, "Explicit a_1 < ... < a_p (veriflow)")->delimiter(',');
  gen_cmd->add_option("--b", gen.b, "Value b > a_p (veriflow)");
  gen_cmd->add_option("--width", gen.width, "Uniform field width (veriflow)");
  gen_cmd->add_option("--seed", gen.seed, "Seed (random)");
  gen_cmd->add_option("--n", gen.n, "Rule count (random)");
  gen_cmd->add_option("--kind", gen.kind, "wildcard or multirange (random)");
  gen_cmd->add_option("--star-density", gen.star_density, "Probability of * per letter (random)")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--widths", gen.widths, "Field widths (random multirange)")->delimiter(',');
  gen_cmd->add_option("--nodes", gen.nodes, "Node count (random)");
  gen_cmd->add_option("--out", out_path, "Output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  auto with_instance = [&](auto&& run) {
    return cli::guarded(std::cerr, [&] {
      spdlog::debug("loading {}", input);
      const io::AnyInstance instance = io::load_instance(input);
      return run(instance);
    });
  };

  if (atoms->parsed()) {
    return with_instance([&](const io::AnyInstance& inst) { return cli::run_atoms(inst, parse_algo(algo), std::cout, std::cerr); });
  }
  if (metrics->parsed()) {
    return with_instance([&](const io::AnyInstance& inst) { return cli::run_metrics(inst, parse_algo(algo), std::cout, std::cerr); });
  }
  if (loops->parsed()) {
    detect.algorithm = parse_algo(algo);
    return with_instance([&](const io::AnyInstance& inst) {
      const int code = cli::run_loops(inst, detect, std::cout, std::cerr);
      spdlog::info("loops finished with exit code {}", code);
      return code;
    });
  }
  if (check->parsed()) {
    cli::CheckOptions opts;
    opts.algorithm = parse_algo(algo);
    return with_instance([&](const io::AnyInstance& inst) { return cli::run_check(inst, opts, std::cout, std::cerr); });
  }
  if (gen_cmd->parsed()) {
    gen.family = families.at(family);
    if (out_path == "-") return cli::run_gen(gen, std::cout, std::cerr);
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return cli::kInputError;
    }
    return cli::run_gen(gen, out, std::cerr);
  }
  return cli::kInputError;
}
