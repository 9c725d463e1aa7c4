// Command-line surface for the wiretap-channel analysis library. Every
// subcommand prints a JSON run report to stdout (and optionally to a file);
// failures print {"error": {...}} to stderr and exit with the status code.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiretap_capi.h"

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct ReportContext {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  std::uint64_t seed = 0;
  Clock::time_point started = Clock::now();
  std::string report_path;
};

[[noreturn]] void fail(wtl_status status) {
  json err{{"error",
            {{"category", wtl_status_name(status)}, {"message", wtl_last_error()}}}};
  std::cerr << err.dump(2) << '\n';
  std::exit(static_cast<int>(status));
}

void check(wtl_status status) {
  if (status != WTL_OK) fail(status);
}

void emit(const ReportContext& ctx) {
  const double ms =
      std::chrono::duration<double, std::milli>(Clock::now() - ctx.started).count();
  json report{{"command", ctx.command}, {"parameters", ctx.parameters},
              {"results", ctx.results}, {"version", wtl_version()},
              {"seed", ctx.seed},       {"duration_ms", ms}};
  const std::string text = report.dump(2);
  std::cout << text << '\n';
  if (!ctx.report_path.empty()) {
    std::ofstream out(ctx.report_path);
    if (!out) {
      json err{{"error",
                {{"category", "io"},
                 {"message", "cannot write report to '" + ctx.report_path + "'"}}}};
      std::cerr << err.dump(2) << '\n';
      std::exit(static_cast<int>(WTL_ERR_IO));
    }
    out << text << '\n';
  }
}

json ternary_json(int v) {
  if (v == 1) return "yes";
  if (v == 0) return "no";
  return "undetermined";
}

json optional_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

wtl_channel* open_channel(const std::string& family, double param, const std::string& config) {
  wtl_channel* ch = nullptr;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) {
      std::cerr << json{{"error",
                         {{"category", "io"},
                          {"message", "cannot read channel config '" + config + "'"}}}}
                       .dump(2)
                << '\n';
      std::exit(static_cast<int>(WTL_ERR_IO));
    }
    std::stringstream ss;
    ss << in.rdbuf();
    check(wtl_channel_from_json(ss.str().c_str(), &ch));
    return ch;
  }
  if (family == "bob")
    check(wtl_channel_bob_family(param, &ch));
  else if (family == "eve")
    check(wtl_channel_eve_family(param, &ch));
  else {
    std::cerr << json{{"error",
                       {{"category", "domain"},
                        {"message", "unknown family '" + family + "'; expected bob or eve"}}}}
                     .dump(2)
              << '\n';
    std::exit(static_cast<int>(WTL_ERR_DOMAIN));
  }
  return ch;
}

bool parse_range(const std::string& text, double* lo, double* hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    *lo = std::stod(text.substr(0, colon));
    *hi = std::stod(text.substr(colon + 1));
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private information, classification and non-additivity rates for hybrid "
               "classical-quantum wiretap channels"};
  app.require_subcommand(1);

  std::string report_path;
  std::uint64_t seed = 0;
  app.add_option("--report", report_path, "Also write the JSON run report to this file");
  app.add_option("--seed", seed, "Seed for randomized commands");

  // classify
  auto* classify = app.add_subcommand("classify", "Channel comparison flags with witnesses");
  std::string family = "bob", config;
  double param = 0.5;
  classify->add_option("--family", family, "bob (BPC/BEC) or eve (BSC/BPC)");
  classify->add_option("--param", param, "family parameter");
  classify->add_option("--config", config, "JSON channel description file");

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Family parameter thresholds");
  std::string kind;
  threshold->add_option("kind", kind,
                        "bob_less_noisy | bob_more_capable | bob_degradable | "
                        "eve_less_noisy | eve_degradable")
      ->required();

  // curve
  auto* curve = app.add_subcommand("curve", "Rate curves as .dat plot data");
  std::string curve_family, range_text = "", output;
  double step = 5e-4;
  int threads = 0;
  curve->add_option("family", curve_family, "bob_n1 | bob_n2_parity | eve_n1 | eve_n3_rep")
      ->required();
  curve->add_option("--range", range_text, "lo:hi, inside (0,1)")->required();
  curve->add_option("--step", step, "parameter grid step");
  curve->add_option("--output", output, ".dat output path (default <family>.dat)");
  curve->add_option("--threads", threads, "worker cap (0 = auto, also WIRETAP_LAB_THREADS)");

  // rate
  auto* rate = app.add_subcommand("rate", "Preprocessed achievable rates");
  std::string rate_family = "bob", scheme = "parity";
  double rate_param = 0.543, noise_q = -1.0;
  int block_n = 3;
  rate->add_option("--family", rate_family, "bob or eve");
  rate->add_option("--param", rate_param, "family parameter")->required();
  rate->add_option("--scheme", scheme, "parity (bob) or rep (eve)");
  rate->add_option("--n", block_n, "repetition block length");
  rate->add_option("--q", noise_q, "fix the preprocessing noise rate instead of optimizing");

  // additivity
  auto* additivity = app.add_subcommand("additivity", "Random-channel additivity probe");
  int restarts = 24, count = 20;
  additivity->add_option("--restarts", restarts, "local-search restarts per optimization");
  additivity->add_option("--count", count, "number of random channels to self-pair");

  CLI11_PARSE(app, argc, argv);

  ReportContext ctx;
  ctx.seed = seed;
  ctx.report_path = report_path;

  if (classify->parsed()) {
    ctx.command = "classify";
    ctx.parameters = {{"family", config.empty() ? family : "config"},
                      {"param", param},
                      {"config", config}};
    wtl_channel* ch = open_channel(family, param, config);
    wtl_classification c{};
    check(wtl_classify(ch, &c));
    wtl_channel_free(ch);
    ctx.results = {
        {"more_capable", ternary_json(c.more_capable)},
        {"anti_more_capable", ternary_json(c.anti_more_capable)},
        {"less_noisy", ternary_json(c.less_noisy)},
        {"anti_less_noisy", ternary_json(c.anti_less_noisy)},
        {"degradable", ternary_json(c.degradable)},
        {"anti_degradable", ternary_json(c.anti_degradable)},
        {"witnesses",
         {{"more_capable_q", optional_number(c.more_capable_witness_q)},
          {"anti_more_capable_q", optional_number(c.anti_more_capable_witness_q)},
          {"less_noisy_q", optional_number(c.less_noisy_witness_q)},
          {"anti_less_noisy_q", optional_number(c.anti_less_noisy_witness_q)},
          {"degradable_fidelities",
           {{"source", optional_number(c.degradable_fidelity_source)},
            {"target", optional_number(c.degradable_fidelity_target)}}},
          {"anti_degradable_fidelities",
           {{"source", optional_number(c.anti_degradable_fidelity_source)},
            {"target", optional_number(c.anti_degradable_fidelity_target)}}}}}};
    emit(ctx);
    return 0;
  }

  if (threshold->parsed()) {
    ctx.command = "threshold";
    ctx.parameters = {{"kind", kind}};
    double value = 0;
    check(wtl_threshold(kind.c_str(), &value));
    ctx.results = {{"value", value}};
    emit(ctx);
    return 0;
  }

  if (curve->parsed()) {
    ctx.command = "curve";
    double lo = 0, hi = 0;
    if (!parse_range(range_text, &lo, &hi)) {
      std::cerr << json{{"error",
                         {{"category", "domain"},
                          {"message", "range must be lo:hi, got '" + range_text + "'"}}}}
                       .dump(2)
                << '\n';
      return static_cast<int>(WTL_ERR_DOMAIN);
    }
    if (output.empty()) output = curve_family + ".dat";
    ctx.parameters = {{"family", curve_family}, {"lo", lo},       {"hi", hi},
                      {"step", step},           {"output", output}, {"threads", threads}};
    double* params = nullptr;
    double* rates = nullptr;
    double* qstars = nullptr;
    int n = 0;
    check(wtl_rate_curve(curve_family.c_str(), lo, hi, step, threads, &params, &rates, &qstars,
                         &n));
    check(wtl_write_dat(output.c_str(), params, rates, n));
    double crossing = 0;
    int found = 0;
    check(wtl_curve_zero_crossing(curve_family.c_str(), params, rates, n, &crossing, &found));
    double max_rate = 0, max_param = lo, q_at_max = 0.5;
    for (int i = 0; i < n; ++i)
      if (rates[i] > max_rate) {
        max_rate = rates[i];
        max_param = params[i];
        q_at_max = qstars[i];
      }
    ctx.results = {{"output", output},
                   {"points", n},
                   {"zero_crossing", found ? json(crossing) : json(nullptr)},
                   {"max_rate", max_rate},
                   {"max_rate_param", max_param},
                   {"q_star_at_max", q_at_max}};
    wtl_vector_free(params);
    wtl_vector_free(rates);
    wtl_vector_free(qstars);
    emit(ctx);
    return 0;
  }

  if (rate->parsed()) {
    ctx.command = "rate";
    ctx.parameters = {{"family", rate_family},
                      {"param", rate_param},
                      {"scheme", scheme},
                      {"n", block_n},
                      {"q", noise_q < 0.0 ? json(nullptr) : json(noise_q)}};
    if (scheme == "parity") {
      if (rate_family != "bob") {
        std::cerr << json{{"error",
                           {{"category", "unsupported"},
                            {"message", "the parity scheme is defined on the bob family"}}}}
                         .dump(2)
                  << '\n';
        return static_cast<int>(WTL_ERR_UNSUPPORTED);
      }
      double value = 0, q_star = 0;
      check(wtl_parity_rate(rate_param, &value, &q_star));
      ctx.results = {{"rate", value}, {"q_star", q_star}};
    } else if (scheme == "rep") {
      if (rate_family != "eve") {
        std::cerr << json{{"error",
                           {{"category", "unsupported"},
                            {"message", "the repetition scheme is defined on the eve family"}}}}
                         .dump(2)
                  << '\n';
        return static_cast<int>(WTL_ERR_UNSUPPORTED);
      }
      wtl_rep_breakdown bd{};
      if (noise_q >= 0.0) {
        check(wtl_repcode_rate(rate_param, noise_q, block_n, &bd));
        ctx.results = {{"rate", bd.rate},
                       {"bob_term", bd.bob_term},
                       {"charlie_term", bd.charlie_term},
                       {"q", noise_q}};
      } else {
        double value = 0, q_star = 0;
        check(wtl_rep_best_uniform_rate(rate_param, block_n, &value, &q_star));
        check(wtl_repcode_rate(rate_param, q_star, block_n, &bd));
        ctx.results = {{"rate", value},
                       {"q_star", q_star},
                       {"bob_term", bd.bob_term},
                       {"charlie_term", bd.charlie_term}};
        if (block_n <= 3) {  // envelope evaluation stays cheap for small blocks
          double env_rate = 0, env_q = 0;
          check(wtl_rep_private_rate(rate_param, block_n, &env_rate, &env_q));
          ctx.results["envelope_rate"] = env_rate;
          ctx.results["envelope_q_star"] = env_q;
        }
      }
    } else {
      std::cerr << json{{"error",
                         {{"category", "domain"},
                          {"message", "unknown scheme '" + scheme + "'; expected parity or rep"}}}}
                       .dump(2)
                << '\n';
      return static_cast<int>(WTL_ERR_DOMAIN);
    }
    emit(ctx);
    return 0;
  }

  if (additivity->parsed()) {
    ctx.command = "additivity";
    ctx.parameters = {{"restarts", restarts}, {"count", count}};
    std::vector<double> gaps(static_cast<std::size_t>(count));
    double max_gap = 0;
    check(wtl_additivity_scan(seed, restarts, count, gaps.data(), &max_gap));
    json rows = json::array();
    for (int i = 0; i < count; ++i)
      rows.push_back({{"channel_seed", seed + static_cast<std::uint64_t>(i)}, {"gap", gaps[static_cast<std::size_t>(i)]}});
    ctx.results = {{"gaps", rows}, {"max_gap", max_gap}};
    emit(ctx);
    return 0;
  }

  return 0;
}
