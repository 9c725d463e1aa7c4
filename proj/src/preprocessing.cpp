#include "wiretap/preprocessing.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "wiretap/entropy.hpp"
#include "wiretap/error.hpp"
#include "wiretap/parallel.hpp"

namespace wiretap {

namespace {

constexpr double kGolden = 0.6180339887498949;

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

int popcount_ll(long long v) {
  int c = 0;
  while (v) {
    c += static_cast<int>(v & 1);
    v >>= 1;
  }
  return c;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

Preprocessor parity_preprocessor() {
  // logical 0 -> uniform {00, 11}; logical 1 -> uniform {01, 10}
  return Preprocessor{2, 2, ClassicalChannel(2, 4, {0.5, 0.0, 0.0, 0.5, 0.0, 0.5, 0.5, 0.0})};
}

Preprocessor repetition_noise_preprocessor(int n, double q) {
  if (n < 1) throw DomainError("repetition block length must be at least 1");
  if (q < 0.0 || q > 1.0) throw DomainError("noise rate outside [0,1]");
  const long long strings = 1LL << n;
  std::vector<double> rows(static_cast<std::size_t>(2 * strings));
  for (int x = 0; x < 2; ++x) {
    const long long code = x == 0 ? 0 : strings - 1;
    for (long long w = 0; w < strings; ++w) {
      const int d = popcount_ll(w ^ code);
      rows[static_cast<std::size_t>(x) * strings + w] =
          std::pow(q, d) * std::pow(1.0 - q, n - d);
    }
  }
  return Preprocessor{2, n, ClassicalChannel(2, static_cast<int>(strings), std::move(rows))};
}

WiretapChannel compose(const Preprocessor& pre, const WiretapChannel& w,
                       const NumericConfig& cfg) {
  if (w.input_size() != 2)
    throw UnsupportedError("preprocessing composition needs a binary-input channel");
  const int n = pre.block_length;
  const long long strings = 1LL << n;
  if (pre.map.output_size() != strings)
    throw ValidationError("preprocessor table does not cover the block strings");
  double bob_dim = 1, charlie_dim = 1;
  for (int i = 0; i < n; ++i) {
    bob_dim *= w.bob().output_dim();
    charlie_dim *= w.charlie().output_dim();
  }
  if (bob_dim > cfg.dim_cap || charlie_dim > cfg.dim_cap)
    throw SizeError("composed block needs dimension " +
                    std::to_string(static_cast<long long>(std::max(bob_dim, charlie_dim))) +
                    ", beyond the cap of " + std::to_string(cfg.dim_cap));

  const WiretapChannel block = tensor_power(w, n, cfg);
  auto mix_side = [&](const CqChannel& ch) {
    std::vector<DensityMatrix> outs;
    for (int x = 0; x < 2; ++x)
      outs.push_back(mix(pre.map.row(x), ch.outputs(), cfg));
    return CqChannel(std::move(outs));
  };
  return WiretapChannel(mix_side(block.bob()), mix_side(block.charlie()));
}

ParityRate parity_rate(double r, const NumericConfig& cfg) {
  if (r <= 0.0 || r >= 1.0) throw DomainError("parity rate needs r in (0,1)");
  const WiretapChannel composed = compose(parity_preprocessor(), bob_family(r), cfg);
  BinaryFSection f(composed, cfg);

  for (double q : {0.1, 0.23, 0.31, 0.37, 0.45})  // f must be symmetric about 1/2
    if (std::abs(f(q) - f(1.0 - q)) > 1e-10)
      throw SolverError("composed parity channel lost its input symmetry");

  const double f_half = f(0.5);
  const int grid = 2001;
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i < grid; ++i) {
    const double q = 0.5 * i / (grid - 1);
    const double v = f(q);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double h = 0.5 / (grid - 1);
  double q_at = best * h;
  auto consider = [&](double lo, double hi) {
    const double q = golden_max([&](double x) { return -f(x); }, lo, hi, cfg.golden_tol);
    const double v = f(q);
    if (v < best_val) {
      best_val = v;
      q_at = q;
    }
  };
  consider(std::max(0.0, best * h - h), std::min(0.5, best * h + h));
  consider(0.0, h);  // output entropies have x log x slopes at the boundary,
                     // which can hide a minimum inside the first cell
  double rate = 0.5 * (f_half - best_val);
  if (rate < 0.0) {  // the supremum includes q = 1/2, where the gap is zero
    rate = 0.0;
    q_at = 0.5;
  }

  const double p1 = p1_binary(composed, cfg).p1;
  if (std::abs(2.0 * rate - p1) > 1e-8)
    throw SolverError("parity rate disagrees with the composed channel's private information by " +
                      std::to_string(std::abs(2.0 * rate - p1)));
  return ParityRate{rate, q_at};
}

DensityMatrix rep_charlie_state(double p, double q) {
  const double a = std::sqrt(1.0 - p);
  const double b = std::sqrt(p);
  PureState plus({cx(a, 0.0), cx(b, 0.0)});
  PureState minus({cx(a, 0.0), cx(-b, 0.0)});
  const DensityMatrix states[2] = {projector(plus), projector(minus)};
  const double weights[2] = {1.0 - q, q};
  return mix(weights, states);
}

RepRateBreakdown repcode_rate(double p, double q, int n, const NumericConfig& cfg) {
  if (p < 0.0 || p > 0.5) throw DomainError("repetition rate needs p in [0, 0.5]");
  if (q < 0.0 || q > 1.0) throw DomainError("noise rate outside [0,1]");
  if (n < 1) throw DomainError("block length must be at least 1");
  if ((1LL << n) > cfg.dim_cap || n > cfg.rep_n_cap)
    throw SizeError("dense block entropy is capped at n <= " + std::to_string(cfg.rep_n_cap));

  RepRateBreakdown out;

  // Syndrome decomposition of Bob's side. With total flip rate t, a syndrome
  // of weight k is consistent with exactly two error patterns, of weights k
  // and n-k.
  const double t = q * (1.0 - p) + p * (1.0 - q);
  double cond = 0;
  for (int k = 0; k <= n - 1; ++k) {
    const double a = std::pow(t, k) * std::pow(1.0 - t, n - k);
    const double b = std::pow(t, n - k) * std::pow(1.0 - t, k);
    const double ps = a + b;
    if (ps <= 0.0) continue;
    const double mult = std::exp(log_binomial(n - 1, k));
    cond += mult * ps * h2(a / ps);
  }
  out.bob_term = 1.0 - cond;

  const DensityMatrix rho = rep_charlie_state(p, q);
  DensityMatrix block = rho;
  for (int i = 1; i < n; ++i) block = tensor(block, rho, cfg);
  // Z^(x)n rho^(x)n Z^(x)n flips the sign of entries whose index parities differ
  const int dim = block.dim();
  std::vector<cx> mixture(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const cx v = block(i, j);
      const double sign = (popcount_ll(i ^ j) % 2 == 0) ? 1.0 : -1.0;
      mixture[static_cast<std::size_t>(i) * dim + j] = 0.5 * v + 0.5 * sign * v;
    }
  const DensityMatrix mixed =
      DensityMatrix::unchecked(HermitianMatrix(dim, std::move(mixture), cfg), cfg);
  out.charlie_term = von_neumann_entropy(mixed, cfg) - n * von_neumann_entropy(rho, cfg);
  out.rate = (out.bob_term - out.charlie_term) / n;
  return out;
}

namespace {

RepPrivateRate maximize_over_noise(const std::function<double(double)>& rate_at,
                                   const NumericConfig& cfg) {
  // rate(1/2) = 0 exactly, and the rate is symmetric under q -> 1-q
  int best = 0;
  double best_val = rate_at(0.0);
  const int steps = static_cast<int>(std::round(0.5 / cfg.rep_q_step));
  for (int i = 1; i <= steps; ++i) {
    const double q = std::min(0.5, i * cfg.rep_q_step);
    const double v = rate_at(q);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1) * cfg.rep_q_step);
  const double hi = std::min(0.5, (best + 1) * cfg.rep_q_step);
  const double q_star = golden_max(rate_at, lo, hi, cfg.rep_q_refine);
  const double refined = rate_at(q_star);
  RepPrivateRate out;
  if (refined >= best_val) {
    out.rate = refined;
    out.q_star = q_star;
  } else {
    out.rate = best_val;
    out.q_star = std::min(0.5, best * cfg.rep_q_step);
  }
  if (out.rate < 0.0) {
    out.rate = 0.0;
    out.q_star = 0.5;
  }
  return out;
}

}  // namespace

RepPrivateRate rep_private_rate(double p, int n, const NumericConfig& cfg) {
  if (p < 0.0 || p > 0.5) throw DomainError("repetition rate needs p in [0, 0.5]");
  const WiretapChannel base = eve_family(p);
  return maximize_over_noise(
      [&](double q) {
        const WiretapChannel composed = compose(repetition_noise_preprocessor(n, q), base, cfg);
        return p1_binary(composed, cfg).p1 / n;
      },
      cfg);
}

RepPrivateRate rep_best_uniform_rate(double p, int n, const NumericConfig& cfg) {
  return maximize_over_noise([&](double q) { return repcode_rate(p, q, n, cfg).rate; }, cfg);
}

const char* curve_family_name(CurveFamily f) {
  switch (f) {
    case CurveFamily::bob_n1: return "bob_n1";
    case CurveFamily::bob_n2_parity: return "bob_n2_parity";
    case CurveFamily::eve_n1: return "eve_n1";
    case CurveFamily::eve_n3_rep: return "eve_n3_rep";
  }
  return "";
}

std::optional<CurveFamily> curve_family_from_name(const std::string& name) {
  for (CurveFamily f : {CurveFamily::bob_n1, CurveFamily::bob_n2_parity, CurveFamily::eve_n1,
                        CurveFamily::eve_n3_rep}) {
    if (name == curve_family_name(f)) return f;
  }
  return std::nullopt;
}

namespace {

double curve_rate_at(CurveFamily family, double x, CurvePoint* point, const NumericConfig& cfg) {
  CurvePoint p;
  p.param = x;
  switch (family) {
    case CurveFamily::bob_n1:
      p.rate = p1_binary(bob_family(x), cfg).p1;
      p.q_star = 0.5;
      break;
    case CurveFamily::bob_n2_parity: {
      const ParityRate r = parity_rate(x, cfg);
      p.rate = r.rate;
      p.q_star = r.q_star;
      break;
    }
    case CurveFamily::eve_n1:
      p.rate = p1_binary(eve_family(x), cfg).p1;
      p.q_star = 0.5;
      break;
    case CurveFamily::eve_n3_rep: {
      const RepPrivateRate r = rep_private_rate(x, 3, cfg);
      p.rate = r.rate;
      p.q_star = r.q_star;
      break;
    }
  }
  if (point) *point = p;
  return p.rate;
}

}  // namespace

std::vector<CurvePoint> rate_curve(CurveFamily family, double lo, double hi, double step,
                                   int threads, const NumericConfig& cfg) {
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) throw DomainError("curve range must lie inside (0,1)");
  if (step <= 0.0) throw DomainError("curve step must be positive");
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<CurvePoint> pts(static_cast<std::size_t>(count));
  parallel_for(count, worker_count(threads), [&](int i) {
    const double x = std::min(hi, lo + i * step);
    curve_rate_at(family, x, &pts[static_cast<std::size_t>(i)], cfg);
  });
  return pts;
}

std::optional<double> curve_zero_crossing(CurveFamily family, const std::vector<CurvePoint>& pts,
                                          const NumericConfig& cfg) {
  constexpr double kDead = 1e-12;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i - 1].rate > kDead && pts[i].rate <= kDead) {
      double lo = pts[i - 1].param, hi = pts[i].param;
      for (int it = 0; it < 30 && hi - lo > 1e-7; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (curve_rate_at(family, mid, nullptr, cfg) > kDead)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return std::nullopt;
}

std::string format_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_dat(const std::string& path, const std::vector<CurvePoint>& pts) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    for (const CurvePoint& p : pts)
      out << format_shortest(p.param) << ' ' << format_shortest(p.rate) << '\n';
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot move plot data into place: " + ec.message());
}

}  // namespace wiretap
