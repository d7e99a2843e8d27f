#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qflag/commands.hpp"
#include "qflag/errors.hpp"

namespace {

using namespace qflag;

int emit(const cli::CommandResult& r, const std::string& out_path) {
  if (!r.error.empty()) std::cerr << "qflag: " << r.error << "\n";
  if (r.output.empty()) return r.exit_code;
  if (out_path.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "qflag: cannot write " << out_path << "\n";
      return cli::kUsage;
    }
    f << r.output;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic flag manifolds: decompositions and 4-vector field checks"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config (seed, output_path, tolerances)")
      ->check(CLI::ExistingFile);

  std::string kind;
  std::string input;
  std::string out;
  auto* decompose = app.add_subcommand("decompose", "Strict Bruhat or Iwasawa factors of a matrix");
  decompose->add_option("kind", kind, "bruhat or iwasawa")
      ->required()
      ->check(CLI::IsMember({"bruhat", "iwasawa"}));
  decompose->add_option("--input", input, "matrix JSON")->required();
  decompose->add_option("--out", out, "output file");

  auto* ddet = app.add_subcommand("ddet", "Dieudonné determinant");
  ddet->add_option("--input", input, "matrix JSON")->required();

  std::string g_path;
  std::string k_path;
  auto* dress = app.add_subcommand("dress", "Dressing action of G in RU on K in Sp(n)");
  dress->add_option("--g", g_path, "G JSON")->required();
  dress->add_option("--k", k_path, "K JSON")->required();

  std::string suite;
  int n = 2;
  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "schouten|lambda|spheroid|hp1|leaves|dressing")
      ->required()
      ->check(CLI::IsMember(cli::kSuites));
  verify->add_option("--n", n, "matrix size");
  verify->add_option("--seed", seed, "random seed");

  cli::ProfileArgs pa;
  auto* profile = app.add_subcommand("profile", "CSV of the radial profile on HP^1");
  profile->add_option("--rho-min", pa.rho_min)->required();
  profile->add_option("--rho-max", pa.rho_max)->required();
  profile->add_option("--steps", pa.steps)->required();
  profile->add_option("--directions", pa.directions);
  profile->add_option("--seed", seed);
  profile->add_option("--out", out);

  std::string word_text;
  auto* leaf = app.add_subcommand("leaf", "Leaf point, cell and dimension for a reduced word");
  leaf->add_option("--word", word_text, "reduced word, e.g. \"1 2 1\"")->required();
  leaf->add_option("--n", n)->required();
  leaf->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  try {
    cli::Config cfg;
    if (!config_path.empty()) cfg = cli::config_from_json(io::read_file(config_path));
    const std::string out_path = out.empty() ? cfg.output_path : out;

    if (*decompose) return emit(cli::cmd_decompose(kind, io::read_file(input)), out_path);
    if (*ddet) return emit(cli::cmd_ddet(io::read_file(input)), "");
    if (*dress) return emit(cli::cmd_dress(io::read_file(g_path), io::read_file(k_path)), "");
    if (*verify) return emit(cli::cmd_verify(suite, n, cli::resolve_seed(seed, cfg), cfg), "");
    if (*profile) {
      pa.seed = cli::resolve_seed(seed, cfg);
      return emit(cli::cmd_profile(pa), out_path);
    }
    if (*leaf) {
      return emit(cli::cmd_leaf(cli::parse_word(word_text), n, cli::resolve_seed(seed, cfg)), "");
    }
  } catch (const ParseError& e) {
    std::cerr << "qflag: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::kUsage;
}
