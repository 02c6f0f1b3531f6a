#include "approx/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  approx::CliConfig cfg;
  std::vector<std::string> perforate;

  CLI::App app{"approxc: approximating compiler and error-bound checker"};
  app.require_subcommand(1, 1);
  auto add_common = [&](CLI::App* sub, bool with_inputs) {
    if (with_inputs) sub->add_option("inputs", cfg.inputs, "program files (.ax) or, for check, corpus directories")->required();
    sub->add_option("--perforate", perforate, "perforate reduction site, e.g. L0=2")->allow_extra_args(false);
    sub->add_flag("--subst-sin", cfg.subst_sin, "replace sinr by the identity");
    sub->add_option("--trials", cfg.trials, "sampled trials per check")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    sub->add_option("--precision-bits", cfg.precision_bits, "oracle precision")->capture_default_str();
    sub->add_option("--fuel", cfg.fuel, "evaluation step budget")->capture_default_str();
    sub->add_option("--emit", cfg.emit, "approx, err, derivation or all")
        ->check(CLI::IsMember({"approx", "err", "derivation", "all"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
    sub->add_flag("--json", cfg.json, "newline-delimited JSON on stdout");
  };
  add_common(app.add_subcommand("compile", "compile programs to float programs with error bounds"), true);
  add_common(app.add_subcommand("check", "compile and check the bounds by sampling"), true);
  add_common(app.add_subcommand("axioms", "check the approximation and quantification axioms"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "approxc: " << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  for (const auto& p : perforate) {
    if (!approx::parse_perforate(p, cfg.perforate)) {
      std::cerr << "approxc: bad --perforate '" << p << "', expected SITE=K with K >= 1\n";
      return 2;
    }
  }
  return approx::run_cli(cfg, std::cout, std::cerr);
}
