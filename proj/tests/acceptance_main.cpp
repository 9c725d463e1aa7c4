// Acceptance checklist for the wiretap-channel analysis toolkit. Every
// criterion prints one PASS/FAIL line; the binary exits nonzero if any
// criterion fails. The CLI under test is passed as argv[1].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/entropy.hpp"
#include "wiretap/preprocessing.hpp"
#include "wiretap/private_info.hpp"

using namespace wiretap;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct CliResult {
  int exit_code = -1;
  json report;
  double seconds = 0;
};

CliResult run_cli(const std::string& args) {
  CliResult res;
  const std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
  const auto t0 = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  res.exit_code = pclose(pipe);
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  try {
    res.report = json::parse(out);
  } catch (...) {
    res.exit_code = res.exit_code == 0 ? -2 : res.exit_code;
  }
  return res;
}

std::vector<std::pair<double, double>> read_dat(const std::string& path) {
  std::vector<std::pair<double, double>> pts;
  std::ifstream in(path);
  double x = 0, y = 0;
  while (in >> x >> y) pts.emplace_back(x, y);
  return pts;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void criterion_1_and_2() {
  {
    const CliResult r = run_cli("threshold bob_less_noisy");
    const double v = r.exit_code == 0 ? r.report["results"]["value"].get<double>() : -1;
    report(1, r.exit_code == 0 && std::abs(v - 0.5424) <= 5e-4 && r.seconds < 1.0,
           "threshold bob_less_noisy = 0.5424 +- 5e-4 in under a second",
           "value " + fmt(v) + ", " + fmt(r.seconds) + " s");
  }
  {
    const CliResult r = run_cli("threshold eve_less_noisy");
    const double v = r.exit_code == 0 ? r.report["results"]["value"].get<double>() : -1;
    report(2, r.exit_code == 0 && std::abs(v - 0.1241) <= 5e-4 && r.seconds < 1.0,
           "threshold eve_less_noisy = 0.1241 +- 5e-4 in under a second",
           "value " + fmt(v) + ", " + fmt(r.seconds) + " s");
  }
}

void criterion_3() {
  const CliResult deg = run_cli("threshold bob_degradable");
  const CliResult anti = run_cli("threshold eve_degradable");
  const CliResult mc = run_cli("threshold bob_more_capable");
  bool ok = deg.exit_code == 0 && anti.exit_code == 0 && mc.exit_code == 0;
  std::string detail = "cli failure";
  if (ok) {
    const double vd = deg.report["results"]["value"].get<double>();
    const double va = anti.report["results"]["value"].get<double>();
    const double vm = mc.report["results"]["value"].get<double>();
    ok = std::abs(vd - 0.5 * (3.0 - std::sqrt(5.0))) <= 1e-12 &&
         std::abs(va - 0.25 * (2.0 - std::sqrt(2.0))) <= 1e-12 && std::abs(vm - 0.5342) <= 5e-4;
    detail = "degradable " + fmt(vd) + ", anti-degradable " + fmt(va) + ", more-capable " + fmt(vm);
  }
  report(3, ok, "radical thresholds exact to 1e-12, more-capable 0.5342 +- 5e-4", detail);
}

void criterion_4() {
  const auto t0 = Clock::now();
  namespace fs = std::filesystem;
  const std::string n1_path = (fs::temp_directory_path() / "acc_bob_n1.dat").string();
  const std::string n2_path = (fs::temp_directory_path() / "acc_bob_n2.dat").string();
  const double r_hat = solve_threshold(ThresholdKind::bob_less_noisy);

  const CliResult c1 =
      run_cli("curve bob_n1 --range 0.52:0.55 --step 0.0005 --output '" + n1_path + "'");
  const CliResult c2 =
      run_cli("curve bob_n2_parity --range 0.52:0.55 --step 0.0005 --output '" + n2_path + "'");
  const CliResult spot = run_cli("rate --family bob --param 0.543 --scheme parity");

  bool ok = c1.exit_code == 0 && c2.exit_code == 0 && spot.exit_code == 0;
  std::string detail = "cli failure";
  if (ok) {
    const auto n1 = read_dat(n1_path);
    const auto n2 = read_dat(n2_path);
    bool n1_ok = n1.size() == 61;
    for (const auto& [r, rate] : n1) {
      if (rate < 0.0) n1_ok = false;
      if (r >= r_hat && rate > 1e-9) n1_ok = false;
    }
    const double crossing = c2.report["results"]["zero_crossing"].is_null()
                                ? -1.0
                                : c2.report["results"]["zero_crossing"].get<double>();
    bool n2_ok = n2.size() == 61 && std::abs(crossing - 0.545) <= 1e-3;
    bool exceeds = true;
    for (std::size_t i = 0; i < n1.size(); ++i) {
      const double r = n1[i].first;
      if (r >= r_hat && r < 0.545 && n2[i].second <= n1[i].second) exceeds = false;
    }
    const double rate = spot.report["results"]["rate"].get<double>();
    const double q_star = spot.report["results"]["q_star"].get<double>();
    const bool spot_ok = rate >= 2e-4 && rate <= 4e-4 && std::abs(q_star - 0.2281) <= 5e-3;
    const double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    ok = n1_ok && n2_ok && exceeds && spot_ok && wall < 120.0;
    detail = "crossing " + fmt(crossing) + ", spot rate " + fmt(rate) + " at q* " + fmt(q_star) +
             ", wall " + fmt(wall) + " s";
  }
  report(4, ok, "bob-family comparison curves reproduce the two-use gain", detail);
}

void criterion_5() {
  const auto t0 = Clock::now();
  namespace fs = std::filesystem;
  const std::string n1_path = (fs::temp_directory_path() / "acc_eve_n1.dat").string();
  const std::string n3_path = (fs::temp_directory_path() / "acc_eve_n3.dat").string();
  const double p_hat = solve_threshold(ThresholdKind::eve_less_noisy);

  const CliResult c1 =
      run_cli("curve eve_n1 --range 0.1201:0.125 --step 0.0001 --output '" + n1_path + "'");
  const CliResult c3 =
      run_cli("curve eve_n3_rep --range 0.1201:0.125 --step 0.0001 --output '" + n3_path + "'");

  bool ok = c1.exit_code == 0 && c3.exit_code == 0;
  std::string detail = "cli failure";
  if (ok) {
    const auto n1 = read_dat(n1_path);
    const auto n3 = read_dat(n3_path);
    bool n1_ok = !n1.empty();
    for (const auto& [p, rate] : n1)
      if (p >= p_hat && rate > 1e-9) n1_ok = false;
    const double crossing = c3.report["results"]["zero_crossing"].is_null()
                                ? -1.0
                                : c3.report["results"]["zero_crossing"].get<double>();
    const bool cross_ok = std::abs(crossing - 0.1245) <= 5e-4;

    // optimal noise rate at the last sampled point before the curve dies
    double probe_at = 0.1245;
    for (const auto& [p, rate] : n3)
      if (rate > 1e-9 && p <= 0.1245) probe_at = p;
    const RepPrivateRate best = rep_private_rate(probe_at, 3);
    const bool q_ok = std::abs(best.q_star - 0.32) <= 0.02;

    const double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    ok = n1_ok && cross_ok && q_ok && wall < 300.0;
    detail = "crossing " + fmt(crossing) + ", q* " + fmt(best.q_star) + " at p " + fmt(probe_at) +
             ", wall " + fmt(wall) + " s";
  }
  report(5, ok, "eve-family comparison curves reproduce the three-use gain", detail);
}

void criterion_6() {
  double worst = 0;
  for (int i = 1; i <= 9; ++i) {
    const double q = i / 10.0;
    for (int j = 1; j <= 9; ++j) {
      const SecondDerivativeReport rb = bob_second_derivative_report(j / 10.0, q);
      worst = std::max(worst, std::abs(rb.closed_form - rb.finite_difference));
      const SecondDerivativeReport re = eve_second_derivative_report(j / 20.5, q);
      worst = std::max(worst, std::abs(re.closed_form - re.finite_difference));
    }
  }

  auto numeric_zero = [](WiretapChannel (*family)(double), double lo, double hi) {
    auto fd = [&](double x) { return d2f_numeric(family(x), 0.5, 1e-4); };
    double flo = fd(lo);
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((fd(mid) > 0) == (flo > 0)) {
        lo = mid;
        flo = fd(mid);
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  const double zb = numeric_zero(&bob_family, 0.5, 0.6);
  const double ze = numeric_zero(&eve_family, 0.1, 0.15);
  const double db = std::abs(zb - solve_threshold(ThresholdKind::bob_less_noisy));
  const double de = std::abs(ze - solve_threshold(ThresholdKind::eve_less_noisy));

  report(6, worst <= 1e-5 && db <= 1e-3 && de <= 1e-3,
         "closed-form curvatures match finite differences, zero sets agree",
         "worst deviation " + fmt(worst) + ", zero-set gaps " + fmt(db) + " / " + fmt(de));
}

void criterion_7() {
  double worst = 0;
  for (int i = 1; i <= 21; ++i)
    for (int j = 1; j <= 21; ++j) {
      const double q = j / 22.0;
      {
        const double r = i / 22.0;
        const auto ev =
            hermitian_eigenvalues(average_output(bpc(r), InputDistribution::binary(q)).matrix());
        const auto [hi, lo] = pure_pair_mixture_eigenvalues(r, q);
        worst = std::max({worst, std::abs(ev[0] - hi), std::abs(ev[1] - lo)});
      }
      {
        const double p = i / 46.0;
        const auto ev = hermitian_eigenvalues(
            average_output(eve_family(p).charlie(), InputDistribution::binary(q)).matrix());
        const auto [hi, lo] = pure_pair_mixture_eigenvalues(1.0 - 2.0 * p, q);
        worst = std::max({worst, std::abs(ev[0] - hi), std::abs(ev[1] - lo)});
      }
    }
  report(7, worst <= 1e-12, "mixture eigenvalues match the dense solver on 21x21 grids",
         "worst deviation " + fmt(worst));
}

void criterion_8() {
  auto gen = testutil::rng(808);
  bool sandwich_ok = true;
  bool equality_ok = true;
  double worst_gap = 0;
  std::vector<WiretapChannel> channels;
  for (int trial = 0; trial < 200; ++trial)
    channels.push_back(testutil::random_binary_channel(gen, 2 + static_cast<int>(gen() % 2), 2));

  for (const WiretapChannel& w : channels) {
    const double p1 = p1_binary(w).p1;
    const double ub = upper_bound(w);
    if (p1 < 0.0 || p1 > ub + 1e-9) sandwich_ok = false;
    const ClassificationReport rep = classify(w);
    if (rep.more_capable == Ternary::yes) {
      const double v0 = p0(w).first;
      if (std::abs(p1 - v0) > 1e-7) equality_ok = false;
    }
  }

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int c = 0; c < 50; ++c) {
    const WiretapChannel& w = channels[static_cast<std::size_t>(c)];
    const BinaryFSection f(w);
    const double p1 = p1_binary(w).p1;
    double best = 0;
    for (int start = 0; start < 40; ++start) {
      double qs[3] = {uni(gen), uni(gen), uni(gen)};
      double ws[3];
      double wsum = 0;
      for (double& v : ws) {
        v = -std::log(uni(gen));
        wsum += v;
      }
      for (double& v : ws) v /= wsum;
      for (int pass = 0; pass < 3; ++pass)
        for (int k = 0; k < 3; ++k) {
          double lo = 0.0, hi = 1.0;
          auto value = [&](double qk) {
            const double saved = qs[k];
            qs[k] = qk;
            const double avg = ws[0] * qs[0] + ws[1] * qs[1] + ws[2] * qs[2];
            const double v = f(avg) - ws[0] * f(qs[0]) - ws[1] * f(qs[1]) - ws[2] * f(qs[2]);
            qs[k] = saved;
            return v;
          };
          for (int it = 0; it < 40; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (value(m1) < value(m2))
              lo = m1;
            else
              hi = m2;
          }
          qs[k] = 0.5 * (lo + hi);
        }
      const double avg = ws[0] * qs[0] + ws[1] * qs[1] + ws[2] * qs[2];
      best = std::max(best, f(avg) - ws[0] * f(qs[0]) - ws[1] * f(qs[1]) - ws[2] * f(qs[2]));
    }
    worst_gap = std::max(worst_gap, best - p1);
  }

  report(8, sandwich_ok && equality_ok && worst_gap <= 1e-6,
         "envelope properties hold on 200 random channels",
         std::string("sandwich ") + (sandwich_ok ? "ok" : "violated") + ", p1=p0 " +
             (equality_ok ? "ok" : "violated") + ", three-point excess " + fmt(worst_gap));
}

void criterion_9() {
  double worst_reduction = 0;
  for (int i = 1; i <= 50; ++i) {
    const double p = 0.5 * i / 51.0;
    worst_reduction =
        std::max(worst_reduction, std::abs(repcode_rate(p, 0.0, 1).rate - (1.0 - 2.0 * h2(p))));
  }

  double worst_norm = 0;
  for (int n = 1; n <= 12; ++n)
    for (double p : {0.05, 0.124, 0.3, 0.5})
      for (double q : {0.0, 0.1, 0.32, 0.5}) {
        const double t = q * (1.0 - p) + p * (1.0 - q);
        double total = 0;
        for (int k = 0; k <= n - 1; ++k) {
          const double a = std::pow(t, k) * std::pow(1.0 - t, n - k);
          const double b = std::pow(t, n - k) * std::pow(1.0 - t, k);
          total += std::exp(std::lgamma(n) - std::lgamma(k + 1.0) - std::lgamma(n - k)) * (a + b);
        }
        worst_norm = std::max(worst_norm, std::abs(total - 1.0));
      }

  double worst_z = 0;
  for (double p : {0.1, 0.3})
    for (double q : {0.2, 0.32}) {
      const DensityMatrix a = rep_charlie_state(p, q);
      const DensityMatrix b = rep_charlie_state(p, 1.0 - q);
      const DensityMatrix a2 = tensor(a, a);
      const DensityMatrix b2 = tensor(b, b);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double sign = ((i ^ j) == 1 || (i ^ j) == 2) ? -1.0 : 1.0;
          worst_z = std::max(worst_z, std::abs(sign * a2(i, j) - b2(i, j)));
        }
    }

  report(9, worst_reduction <= 1e-10 && worst_norm <= 1e-12 && worst_z <= 1e-12,
         "repetition-rate identities hold",
         "bare-channel reduction " + fmt(worst_reduction) + ", syndrome normalization " +
             fmt(worst_norm) + ", conjugation identity " + fmt(worst_z));
}

void criterion_10() {
  const CliResult r = run_cli("additivity --seed 7 --count 20");
  bool ok = r.exit_code == 0;
  std::string detail = "cli failure";
  if (ok) {
    const double max_gap = r.report["results"]["max_gap"].get<double>();
    ok = max_gap <= 1e-4 && r.seconds < 600.0;
    detail = "max gap " + fmt(max_gap) + ", wall " + fmt(r.seconds) + " s";
  }
  report(10, ok, "no additivity violation across 20 random qcc channels", detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-wiretaplab-cli>\n");
    return 2;
  }
  g_cli = argv[1];

  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", g_failures);
  return 1;
}
