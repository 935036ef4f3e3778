#pragma once

#include "adist/arith_fn.hpp"
#include "adist/dirichlet.hpp"
#include "adist/empirical.hpp"
#include "adist/limit_law.hpp"
#include "adist/series.hpp"
#include "adist/sieve.hpp"
#include "adist/spec_file.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adist {

inline constexpr const char *version = "0.1.0";

/// Bad command-line input (unknown function, wrong kind, invalid values).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class command { eval, empirical, limit, compare, check, convolve };
enum class output_format { json, csv };

[[nodiscard]] inline std::string to_string(command c) {
  switch (c) {
    case command::eval: return "eval";
    case command::empirical: return "empirical";
    case command::limit: return "limit";
    case command::compare: return "compare";
    case command::check: return "check";
    case command::convolve: return "convolve";
  }
  return "eval";
}

struct run_config {
  command cmd = command::eval;
  std::string function;
  std::string second_function;  // convolve only
  std::uint64_t n = 1000;
  std::uint64_t m = 1;  // convolve only
  /// Unset means the command default: 2^20 for check, 10^5 otherwise.
  std::optional<std::uint64_t> prime_cutoff;
  unsigned alpha_cutoff = default_alpha_cutoff;
  double t_min = -10.0;
  double t_max = 10.0;
  std::size_t t_steps = 201;
  std::size_t cdf_points = 101;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  double radius = 1.0;      // check: Erdos-Wintner truncation R
  double twist_t = 1.0;     // check: t of the inversion tail sum
  double tolerance = default_series_tolerance;
  std::size_t threads = 0;  // 0 = hardware concurrency; never affects output
  output_format format = output_format::json;
  std::string output;  // empty = standard output

  [[nodiscard]] std::uint64_t resolved_prime_cutoff() const {
    if (prime_cutoff) {
      return *prime_cutoff;
    }
    return cmd == command::check ? default_check_prime_cutoff : default_prime_cutoff;
  }
};

/// Checks the numeric invariants of a configuration; throws usage_error.
inline void validate(const run_config &c) {
  auto fail = [](const std::string &msg) { throw usage_error(msg); };
  if (c.function.empty()) fail("--function is required");
  if (c.n < 1) fail("--n must be positive");
  if (c.n > max_sieve_limit) fail("--n exceeds 2^32");
  if (c.resolved_prime_cutoff() < 2) fail("--prime-cutoff must be at least 2");
  if (c.alpha_cutoff < 1) fail("--alpha-cutoff must be positive");
  if (c.t_steps < 1) fail("--t-steps must be at least 1");
  if (!(c.t_min <= c.t_max)) fail("--t-min must not exceed --t-max");
  if (c.cdf_points < 1) fail("--cdf-points must be at least 1");
  if (!(c.radius > 0)) fail("--radius must be positive");
  if (!(c.tolerance > 0)) fail("--tolerance must be positive");
  if (c.cmd == command::compare && c.samples < 1000) fail("compare needs --samples >= 1000");
  if (c.samples < 1) fail("--samples must be positive");
  if (c.cmd == command::convolve) {
    if (c.second_function.empty()) fail("convolve needs --second");
    if (c.m < 1 || c.m > max_sieve_limit) fail("--m must be in [1, 2^32]");
  }
}

/// A rectangular table written as one CSV block.
struct csv_block {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct report {
  nlohmann::json config;
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> warnings;
  /// Scalars first (key,value), then grids, for CSV output.
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<csv_block> grids;
};

/// Seventeen significant digits, enough to round-trip a double.
[[nodiscard]] inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[nodiscard]] inline nlohmann::json config_json(const run_config &c) {
  nlohmann::json j;
  j["command"] = to_string(c.cmd);
  j["function"] = c.function;
  if (c.cmd == command::convolve) {
    j["second"] = c.second_function;
    j["m"] = c.m;
  } else {
    j["n"] = c.n;
  }
  j["prime_cutoff"] = c.resolved_prime_cutoff();
  j["alpha_cutoff"] = c.alpha_cutoff;
  j["t_grid"] = {{"min", c.t_min}, {"max", c.t_max}, {"steps", c.t_steps}};
  j["cdf_points"] = c.cdf_points;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["radius"] = c.radius;
  j["twist_t"] = c.twist_t;
  j["tolerance"] = c.tolerance;
  j["format"] = c.format == output_format::json ? "json" : "csv";
  j["output"] = c.output;
  return j;
}

/// Built-in name, or else a path to a spec file.
[[nodiscard]] inline function_spec resolve_function(const std::string &name_or_path) {
  if (auto f = builtin::by_name(name_or_path)) {
    return *f;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) {
    try {
      return load_function_spec(name_or_path);
    } catch (const spec_parse_error &e) {
      throw usage_error(e.what());
    }
  }
  std::string known;
  for (const auto &n : builtin::names()) {
    known += (known.empty() ? "" : ", ") + n;
  }
  throw usage_error("unknown function '" + name_or_path + "' (built-ins: " + known + "; or a spec file path)");
}

namespace detail {

inline function_spec resolve_additive(const std::string &name) {
  auto f = resolve_function(name);
  if (!f.additive()) {
    throw usage_error("function '" + name + "' is " + std::string(to_string(f.kind())) +
                      "; this command needs an additive function");
  }
  return f;
}

inline nlohmann::json series_json(const series_report &r) {
  return {{"description", r.description},
          {"cutoffs", r.cutoffs},
          {"partial_sums", r.partial_sums},
          {"verdict", std::string(to_string(r.result))},
          {"verdict_basis", "heuristic: last three partial-sum increments at doubling cutoffs"},
          {"tolerance", r.tolerance}};
}

inline void add_char_fn(report &rep, const std::string &key, const std::vector<double> &ts,
                        const std::vector<complex> &vals) {
  nlohmann::json grid = nlohmann::json::array();
  csv_block block{{"t", "re", "im"}, {}};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    grid.push_back({{"t", ts[k]}, {"re", vals[k].real()}, {"im", vals[k].imag()}});
    block.rows.push_back({ts[k], vals[k].real(), vals[k].imag()});
  }
  rep.results[key] = std::move(grid);
  rep.grids.push_back(std::move(block));
}

inline void add_scalar(report &rep, const std::string &key, double v) {
  rep.results[key] = v;
  rep.scalars.emplace_back(key, v);
}

}  // namespace detail

[[nodiscard]] inline report cmd_eval(const run_config &c) {
  const auto f = resolve_function(c.function);
  report rep;
  const spf_sieve sieve(std::max<std::uint64_t>(c.n, 2));
  rep.results["kind"] = std::string(to_string(f.kind()));
  if (f.additive()) {
    const auto v = bulk_eval_additive(f, c.n, sieve);
    csv_block block{{"m", "value"}, {}};
    for (std::uint64_t m = 1; m <= c.n; ++m) {
      block.rows.push_back({double(m), v[m - 1]});
    }
    rep.results["values"] = v;
    rep.grids.push_back(std::move(block));
  } else {
    const auto v = bulk_eval_multiplicative(f, c.n, sieve);
    std::vector<double> re, im;
    csv_block block{{"m", "re", "im"}, {}};
    for (std::uint64_t m = 1; m <= c.n; ++m) {
      re.push_back(v[m - 1].real());
      im.push_back(v[m - 1].imag());
      block.rows.push_back({double(m), re.back(), im.back()});
    }
    rep.results["re"] = re;
    rep.results["im"] = im;
    rep.grids.push_back(std::move(block));
  }
  return rep;
}

[[nodiscard]] inline report cmd_empirical(const run_config &c) {
  const auto f = detail::resolve_additive(c.function);
  report rep;
  const spf_sieve sieve(std::max<std::uint64_t>(c.n, 2));
  auto values = bulk_eval_additive(f, c.n, sieve);
  const auto ts = linear_grid(c.t_min, c.t_max, c.t_steps);
  const auto cf = char_fn(values, ts, c.threads);
  const auto s = summarize(std::move(values));
  rep.results["n"] = s.n;
  detail::add_scalar(rep, "mean", s.mean);
  detail::add_scalar(rep, "variance", s.variance);
  rep.results["variance_clamped"] = s.variance_clamped;
  if (s.variance_clamped) {
    rep.warnings.push_back("empirical variance was negative from cancellation and was clamped to 0");
  }
  const auto ys = linear_grid(s.sorted_values.front(), s.sorted_values.back(), c.cdf_points);
  nlohmann::json cdf_grid = nlohmann::json::array();
  csv_block cdf_block{{"y", "F"}, {}};
  for (const double y : ys) {
    const double F = cdf(s, y);
    cdf_grid.push_back({{"y", y}, {"F", F}});
    cdf_block.rows.push_back({y, F});
  }
  rep.results["cdf"] = std::move(cdf_grid);
  detail::add_char_fn(rep, "char_fn", ts, cf);
  rep.grids.push_back(std::move(cdf_block));
  return rep;
}

[[nodiscard]] inline report cmd_limit(const run_config &c) {
  const auto f = detail::resolve_additive(c.function);
  const auto P = c.resolved_prime_cutoff();
  const auto A = c.alpha_cutoff;
  report rep;
  const auto mom = compute_limit_moments(f, P, A);
  detail::add_scalar(rep, "mean", mom.mean);
  detail::add_scalar(rep, "variance", mom.variance);
  rep.results["variance_clamped"] = mom.variance_clamped;
  if (mom.variance_clamped) {
    rep.warnings.push_back("truncated limit variance was negative and was clamped to 0");
  }
  const auto ts = linear_grid(c.t_min, c.t_max, c.t_steps);
  const auto cf = limit_char_fn(f, ts, P, A, c.threads);
  const double zero_t[] = {0.0};
  const auto at_zero = limit_char_fn(f, zero_t, P, A, 1).front();
  const double defect = normalization_defect_bound(P, A);
  const double mean_tail = tail_estimate(f, P, 1);
  const double sq_tail = tail_estimate(f, P, 2);
  const double t_abs = std::max(std::abs(c.t_min), std::abs(c.t_max));
  detail::add_scalar(rep, "char_fn_at_zero_re", at_zero.real());
  detail::add_scalar(rep, "char_fn_at_zero_im", at_zero.imag());
  detail::add_scalar(rep, "normalization_defect_bound", defect);
  rep.results["truncation"] = {
      {"basis", "estimate: integral of |f(x)|^k / (x ln x) over (P, 1e18], not a certificate"},
      {"mean_tail_estimate", mean_tail},
      {"second_moment_tail_estimate", sq_tail},
      {"char_fn_tail_estimate", t_abs * mean_tail + defect}};
  rep.scalars.emplace_back("mean_tail_estimate", mean_tail);
  rep.scalars.emplace_back("second_moment_tail_estimate", sq_tail);
  rep.scalars.emplace_back("char_fn_tail_estimate", t_abs * mean_tail + defect);
  rep.results["cutoffs"] = {{"prime_cutoff", P}, {"alpha_cutoff", A}};
  detail::add_char_fn(rep, "char_fn", ts, cf);
  return rep;
}

[[nodiscard]] inline report cmd_compare(const run_config &c) {
  const auto f = detail::resolve_additive(c.function);
  const auto P = c.resolved_prime_cutoff();
  const auto A = c.alpha_cutoff;
  report rep;
  const spf_sieve sieve(std::max<std::uint64_t>(c.n, 2));
  auto empirical_values = bulk_eval_additive(f, c.n, sieve);
  const auto ts = linear_grid(c.t_min, c.t_max, c.t_steps);
  const auto emp_cf = char_fn(empirical_values, ts, c.threads);
  const auto lim_cf = limit_char_fn(f, ts, P, A, c.threads);
  const auto emp = summarize(std::move(empirical_values));

  const auto model = build_limit_model(f, P, A);
  auto mc = sample_limit(model, c.samples, c.seed, c.threads);
  std::sort(mc.begin(), mc.end());
  const double ks = ks_distance(emp.sorted_values, mc);

  double gap = 0.0;
  std::vector<complex> diff(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    diff[k] = emp_cf[k] - lim_cf[k];
    gap = std::max(gap, std::abs(diff[k]));
  }
  const auto mom = compute_limit_moments(f, P, A);
  detail::add_scalar(rep, "ks_distance", ks);
  detail::add_scalar(rep, "char_fn_sup_gap", gap);
  detail::add_scalar(rep, "empirical_mean", emp.mean);
  detail::add_scalar(rep, "limit_mean", mom.mean);
  detail::add_scalar(rep, "empirical_variance", emp.variance);
  detail::add_scalar(rep, "limit_variance", mom.variance);
  rep.results["empirical_sample_size"] = c.n;
  rep.results["limit_sample_size"] = c.samples;
  rep.results["seed"] = c.seed;
  detail::add_char_fn(rep, "char_fn_difference", ts, diff);
  return rep;
}

[[nodiscard]] inline report cmd_check(const run_config &c) {
  const auto f = detail::resolve_additive(c.function);
  const auto P = c.resolved_prime_cutoff();
  const auto tol = c.tolerance;
  report rep;
  const auto ew = check_erdos_wintner(f, c.radius, P, tol);
  const auto simple_check = check_simple_condition(f, P, tol);
  const auto &simple = simple_check.series;
  const bool all_bounded = simple_check.all_bounded;
  const auto inversion = inversion_tail_sum(f, c.twist_t, P, c.alpha_cutoff, tol);
  const auto ew_verdict = ew.overall;

  nlohmann::json ew_json = nlohmann::json::array();
  for (const auto &r : ew.series) {
    ew_json.push_back(detail::series_json(r));
  }
  rep.results["erdos_wintner"] = {
      {"radius", ew.radius}, {"series", ew_json}, {"verdict", std::string(to_string(ew_verdict))}};
  rep.results["simple_condition"] = {{"series", detail::series_json(simple)},
                                     {"all_bounded", all_bounded},
                                     {"max_abs_f_p", simple_check.max_abs_value}};
  rep.results["inversion_tail"] = detail::series_json(inversion);

  // Any satisfied sufficient condition settles existence of the limit law.
  const bool simple_ok = simple.result == verdict::converges && all_bounded;
  verdict overall = verdict::inconclusive;
  if (ew_verdict == verdict::converges || simple_ok || inversion.result == verdict::converges) {
    overall = verdict::converges;
  } else if (ew_verdict == verdict::diverges || simple.result == verdict::diverges ||
             inversion.result == verdict::diverges) {
    overall = verdict::diverges;
  }
  rep.results["overall_verdict"] = std::string(to_string(overall));
  rep.warnings.push_back("verdicts are numerical heuristics from partial sums, not proofs");
  rep.warnings.push_back(
      "the bounded-values side condition is checked as |f(p)| <= 1 on the function itself (the usual statement "
      "for general additive f names the strongly additive part)");

  for (std::size_t k = 0; k < ew.series.size(); ++k) {
    rep.scalars.emplace_back("erdos_wintner_" + std::to_string(k + 1) + "_last_partial_sum",
                             ew.series[k].partial_sums.back());
  }
  rep.scalars.emplace_back("simple_condition_last_partial_sum", simple.partial_sums.back());
  rep.scalars.emplace_back("inversion_tail_last_partial_sum", inversion.partial_sums.back());
  rep.scalars.emplace_back("all_bounded", all_bounded ? 1.0 : 0.0);
  auto code = [](verdict v) { return v == verdict::converges ? 1.0 : v == verdict::diverges ? -1.0 : 0.0; };
  rep.scalars.emplace_back("overall_verdict_code", code(overall));
  return rep;
}

[[nodiscard]] inline report cmd_convolve(const run_config &c) {
  const auto h = resolve_function(c.function);
  const auto g = resolve_function(c.second_function);
  if (h.additive() || g.additive()) {
    throw usage_error("the factorized convolution needs two multiplicative functions");
  }
  report rep;
  const spf_sieve sieve(std::max<std::uint64_t>(c.m, 2));
  const auto brute = convolve_bruteforce(h, g, c.m, sieve);
  const auto fact = convolve_factored(h, g, factorize(c.m, sieve));
  const double diff = std::abs(brute - fact);
  rep.results["bruteforce"] = {{"re", brute.real()}, {"im", brute.imag()}};
  rep.results["factored"] = {{"re", fact.real()}, {"im", fact.imag()}};
  rep.results["abs_difference"] = diff;
  rep.scalars = {{"bruteforce_re", brute.real()}, {"bruteforce_im", brute.imag()},
                 {"factored_re", fact.real()},    {"factored_im", fact.imag()},
                 {"abs_difference", diff}};
  return rep;
}

/// Runs one command and returns its report with config and version filled in.
[[nodiscard]] inline report run(const run_config &c) {
  validate(c);
  report rep;
  switch (c.cmd) {
    case command::eval: rep = cmd_eval(c); break;
    case command::empirical: rep = cmd_empirical(c); break;
    case command::limit: rep = cmd_limit(c); break;
    case command::compare: rep = cmd_compare(c); break;
    case command::check: rep = cmd_check(c); break;
    case command::convolve: rep = cmd_convolve(c); break;
  }
  rep.config = config_json(c);
  return rep;
}

[[nodiscard]] inline std::string render_json(const report &rep) {
  nlohmann::json doc;
  doc["config"] = rep.config;
  doc["results"] = rep.results;
  doc["warnings"] = rep.warnings;
  doc["version"] = version;
  return doc.dump(2) + "\n";
}

/// CSV blocks separated by blank lines: `key,value` scalars first, then each
/// grid with its own header row.
[[nodiscard]] inline std::string render_csv(const report &rep) {
  std::string out;
  if (!rep.scalars.empty()) {
    out += "key,value\n";
    for (const auto &[k, v] : rep.scalars) {
      out += k + "," + format_double(v) + "\n";
    }
  }
  for (const auto &g : rep.grids) {
    if (!out.empty()) {
      out += "\n";
    }
    for (std::size_t i = 0; i < g.header.size(); ++i) {
      out += (i ? "," : "") + g.header[i];
    }
    out += "\n";
    for (const auto &row : g.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += (i ? "," : "") + format_double(row[i]);
      }
      out += "\n";
    }
  }
  return out;
}

[[nodiscard]] inline std::string render(const report &rep, output_format fmt) {
  return fmt == output_format::json ? render_json(rep) : render_csv(rep);
}

}  // namespace adist
