// Command-line front end: adist <eval|empirical|limit|compare|check|convolve> [options]

#include "adist/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <string>

namespace {

void add_common(CLI::App *sub, adist::run_config &cfg, std::uint64_t &prime_cutoff) {
  sub->add_option("--function", cfg.function, "built-in name or function spec file")->required();
  sub->add_option("--prime-cutoff", prime_cutoff, "largest prime P in products and series");
  sub->add_option("--alpha-cutoff", cfg.alpha_cutoff, "largest exponent A")->default_val(cfg.alpha_cutoff);
  sub->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, adist::output_format>{{"json", adist::output_format::json},
                                                      {"csv", adist::output_format::csv}}));
  sub->add_option("--output", cfg.output, "report path (default: standard output)");
  sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores (output does not depend on it)");
}

void add_t_grid(CLI::App *sub, adist::run_config &cfg) {
  sub->add_option("--t-min", cfg.t_min)->default_val(cfg.t_min);
  sub->add_option("--t-max", cfg.t_max)->default_val(cfg.t_max);
  sub->add_option("--t-steps", cfg.t_steps)->default_val(cfg.t_steps);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Limit distributions of additive arithmetic functions"};
  app.set_version_flag("--version", adist::version);
  app.require_subcommand(1);

  adist::run_config cfg;
  std::uint64_t prime_cutoff = 0;

  auto *eval = app.add_subcommand("eval", "values f(1..n)");
  add_common(eval, cfg, prime_cutoff);
  eval->add_option("--n", cfg.n)->default_val(cfg.n);

  auto *empirical = app.add_subcommand("empirical", "mean, variance, CDF and char. function on {1..n}");
  add_common(empirical, cfg, prime_cutoff);
  empirical->add_option("--n", cfg.n)->default_val(cfg.n);
  empirical->add_option("--cdf-points", cfg.cdf_points)->default_val(cfg.cdf_points);
  add_t_grid(empirical, cfg);

  auto *limit = app.add_subcommand("limit", "limit-law mean, variance and truncated Euler product");
  add_common(limit, cfg, prime_cutoff);
  add_t_grid(limit, cfg);

  auto *compare = app.add_subcommand("compare", "empirical law on {1..n} against Monte Carlo limit samples");
  add_common(compare, cfg, prime_cutoff);
  compare->add_option("--n", cfg.n)->default_val(cfg.n);
  compare->add_option("--samples", cfg.samples)->default_val(cfg.samples);
  compare->add_option("--seed", cfg.seed)->default_val(cfg.seed);
  add_t_grid(compare, cfg);

  auto *check = app.add_subcommand("check", "convergence-condition series with heuristic verdicts");
  add_common(check, cfg, prime_cutoff);
  check->add_option("--radius", cfg.radius, "Erdos-Wintner truncation R")->default_val(cfg.radius);
  check->add_option("--t", cfg.twist_t, "t of the Moebius-inversion tail sum")->default_val(cfg.twist_t);
  check->add_option("--tolerance", cfg.tolerance)->default_val(cfg.tolerance);

  auto *convolve = app.add_subcommand("convolve", "Dirichlet convolution at m, brute force and factorized");
  add_common(convolve, cfg, prime_cutoff);
  convolve->add_option("--second", cfg.second_function, "second multiplicative function")->required();
  convolve->add_option("--m", cfg.m)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (eval->parsed()) cfg.cmd = adist::command::eval;
  if (empirical->parsed()) cfg.cmd = adist::command::empirical;
  if (limit->parsed()) cfg.cmd = adist::command::limit;
  if (compare->parsed()) cfg.cmd = adist::command::compare;
  if (check->parsed()) cfg.cmd = adist::command::check;
  if (convolve->parsed()) cfg.cmd = adist::command::convolve;
  for (auto *sub : {eval, empirical, limit, compare, check, convolve}) {
    if (sub->parsed() && sub->count("--prime-cutoff") > 0) {
      cfg.prime_cutoff = prime_cutoff;
    }
  }

  std::string text;
  try {
    text = adist::render(adist::run(cfg), cfg.format);
  } catch (const adist::usage_error &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const adist::kind_mismatch_error &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc &) {
    std::cerr << "error: out of memory\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return std::cout ? 0 : 1;
  }
  std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open '" << cfg.output << "' for writing\n";
    return 1;
  }
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing '" << cfg.output << "'\n";
    return 1;
  }
  return 0;
}
