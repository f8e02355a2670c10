#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "dispatch.hpp"

int main(int argc, char** argv) {
  CLI::App app{"interdependent network resilience toolkit"};
  app.get_formatter()->column_width(28);

  std::string command;
  app.add_option("command", command,
                 "bound | de | one2one | threshold | sweep | optimize | "
                 "delay | simulate (may come from the config file instead)");
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file");

  // flag text wins over the file; values stay strings until validation
  std::string a, p, pmp, pmc, pmi, lambda, rho, epsilon, delay_slots, n_cyber,
      trials, seed, resolution, max_iters, out;
  app.add_option("--a", a, "cyber block size");
  app.add_option("--p", p, "contagion probability");
  app.add_option("--pmp", pmp, "physical-message loss probability");
  app.add_option("--pmc", pmc, "connectivity-announcement loss probability");
  app.add_option("--pmi", pmi, "heal-command loss probability");
  app.add_option("--lambda", lambda,
                 "physical degree distribution literal, e.g. z^2 or "
                 "1:0.5,3:0.5 or er(1.4,1,13) or sf(2.8,1,100)");
  app.add_option("--rho", rho, "cyber degree distribution literal");
  app.add_option("--epsilon", epsilon, "initial failed fraction");
  app.add_option("--delay-slots", delay_slots, "response delay in slots");
  app.add_option("--n-cyber", n_cyber, "number of cyber nodes to simulate");
  app.add_option("--trials", trials, "Monte-Carlo trials");
  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--resolution", resolution, "threshold bisection width");
  app.add_option("--max-iters", max_iters, "iteration cap");
  app.add_option("--out", out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    cli::RunConfig config;
    if (!config_path.empty()) config = cli::parse_config_file(config_path);
    if (!command.empty()) config.command = command;
    if (app.count("--a")) config.a = a;
    if (app.count("--p")) config.p = p;
    if (app.count("--pmp")) config.pmp = pmp;
    if (app.count("--pmc")) config.pmc = pmc;
    if (app.count("--pmi")) config.pmi = pmi;
    if (app.count("--lambda")) config.lambda = lambda;
    if (app.count("--rho")) config.rho = rho;
    if (app.count("--epsilon")) config.epsilon = epsilon;
    if (app.count("--delay-slots")) config.delay_slots = delay_slots;
    if (app.count("--n-cyber")) config.n_cyber = n_cyber;
    if (app.count("--trials")) config.trials = trials;
    if (app.count("--seed")) config.seed = seed;
    if (app.count("--resolution")) config.resolution = resolution;
    if (app.count("--max-iters")) config.max_iters = max_iters;
    if (app.count("--out")) config.out = out;

    if (config.command.empty()) {
      std::fprintf(stderr,
                   "error: no command given (positional argument or "
                   "'command =' in the config file)\n");
      return 1;
    }
    cli::validate_config(config);
    return cli::dispatch(config);
  } catch (const cli::ConfigError& error) {
    std::fprintf(stderr, "error: %s\n", error.message.c_str());
    return 1;
  }
}
