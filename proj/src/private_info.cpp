#include "wiretap/private_info.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "wiretap/entropy.hpp"
#include "wiretap/error.hpp"

namespace wiretap {

BinaryFSection::BinaryFSection(const WiretapChannel& w, const NumericConfig& cfg) : cfg_(&cfg) {
  if (w.input_size() != 2)
    throw UnsupportedError("simplex section requires a binary-input channel");
  auto build = [&](const CqChannel& ch) {
    Side s;
    s.dim = ch.output_dim();
    const DensityMatrix& o0 = ch.output(0);
    const DensityMatrix& o1 = ch.output(1);
    s.diagonal = o0.matrix().is_diagonal(0.0) && o1.matrix().is_diagonal(0.0);
    auto is_real = [](const DensityMatrix& m) {
      for (const cx& v : m.matrix().entries())
        if (v.imag() != 0.0) return false;
      return true;
    };
    s.real = s.diagonal || (is_real(o0) && is_real(o1));
    if (s.diagonal) {
      s.rout0 = o0.matrix().diagonal_real();
      s.rout1 = o1.matrix().diagonal_real();
    } else if (s.real) {
      s.rout0.reserve(o0.matrix().entries().size());
      s.rout1.reserve(o1.matrix().entries().size());
      for (const cx& v : o0.matrix().entries()) s.rout0.push_back(v.real());
      for (const cx& v : o1.matrix().entries()) s.rout1.push_back(v.real());
    } else {
      s.out0.assign(o0.matrix().entries().begin(), o0.matrix().entries().end());
      s.out1.assign(o1.matrix().entries().begin(), o1.matrix().entries().end());
    }
    s.h_cond0 = von_neumann_entropy(o0, cfg);
    s.h_cond1 = von_neumann_entropy(o1, cfg);
    return s;
  };
  bob_ = build(w.bob());
  charlie_ = build(w.charlie());
}

double BinaryFSection::side_term(const Side& s, double q) const {
  double h_avg;
  if (s.diagonal) {
    std::vector<double> d(static_cast<std::size_t>(s.dim));
    for (int i = 0; i < s.dim; ++i)
      d[static_cast<std::size_t>(i)] =
          q * s.rout0[static_cast<std::size_t>(i)] + (1.0 - q) * s.rout1[static_cast<std::size_t>(i)];
    h_avg = shannon_entropy(d, *cfg_);
  } else if (s.real) {
    std::vector<double> avg(s.rout0.size());
    for (std::size_t k = 0; k < avg.size(); ++k)
      avg[k] = q * s.rout0[k] + (1.0 - q) * s.rout1[k];
    h_avg = shannon_entropy(detail::symmetric_eigenvalues_inplace(avg, s.dim, *cfg_), *cfg_);
  } else {
    std::vector<cx> avg(s.out0.size());
    for (std::size_t k = 0; k < avg.size(); ++k)
      avg[k] = q * s.out0[k] + (1.0 - q) * s.out1[k];
    h_avg = shannon_entropy(detail::eigenvalues_inplace(avg, s.dim, *cfg_), *cfg_);
  }
  return h_avg - (q * s.h_cond0 + (1.0 - q) * s.h_cond1);
}

double BinaryFSection::operator()(double q) const {
  return side_term(bob_, q) - side_term(charlie_, q);
}

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

// Golden-section minimizer on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
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

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  return golden_min([&](double x) { return -f(x); }, a, b, tol);
}

struct GridScan {
  std::vector<double> qs;
  std::vector<double> fs;
};

GridScan scan_section(const BinaryFSection& f, int points) {
  GridScan g;
  g.qs.resize(static_cast<std::size_t>(points));
  g.fs.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double q = static_cast<double>(i) / (points - 1);
    g.qs[static_cast<std::size_t>(i)] = q;
    g.fs[static_cast<std::size_t>(i)] = f(q);
  }
  return g;
}

// Indices of the lower convex hull of (qs, fs), by monotone chain.
std::vector<int> lower_hull(const GridScan& g) {
  std::vector<int> hull;
  const int n = static_cast<int>(g.qs.size());
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const int i1 = hull[hull.size() - 2];
      const int i2 = hull[hull.size() - 1];
      const double cross = (g.qs[i2] - g.qs[i1]) * (g.fs[i] - g.fs[i1]) -
                           (g.fs[i2] - g.fs[i1]) * (g.qs[i] - g.qs[i1]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  return hull;
}

}  // namespace

std::pair<double, InputDistribution> p0(const WiretapChannel& w, const NumericConfig& cfg) {
  if (w.input_size() != 2)
    throw UnsupportedError("p0 is implemented for binary classical inputs");
  BinaryFSection f(w, cfg);
  const GridScan g = scan_section(f, cfg.grid_points);
  int best = 0;
  for (int i = 1; i < static_cast<int>(g.qs.size()); ++i)
    if (g.fs[i] > g.fs[best]) best = i;  // ties keep the smallest q
  const double lo = g.qs[std::max(0, best - 1)];
  const double hi = g.qs[std::min(static_cast<int>(g.qs.size()) - 1, best + 1)];
  const double q = golden_max([&](double x) { return f(x); }, lo, hi, cfg.golden_tol);
  double value = f(q);
  double q_star = q;
  if (g.fs[best] >= value) {  // endpoint maxima stay on the grid point
    value = g.fs[best];
    q_star = g.qs[best];
  }
  return {value, InputDistribution::binary(q_star)};
}

EnvelopeResult p1_binary(const WiretapChannel& w, const NumericConfig& cfg) {
  if (w.input_size() != 2)
    throw UnsupportedError(
        "p1 via the lower convex envelope needs a binary input; larger alphabets require an "
        "ensemble search");
  BinaryFSection f(w, cfg);
  const GridScan g = scan_section(f, cfg.grid_points);
  const std::vector<int> hull = lower_hull(g);
  const int n = static_cast<int>(g.qs.size());

  EnvelopeResult res;
  res.grid = g.qs;
  res.f_values = g.fs;
  res.envelope.resize(static_cast<std::size_t>(n));

  int seg = 0;
  int best = 0;
  double best_gap = -1.0;
  std::vector<int> seg_of(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    while (seg + 1 < static_cast<int>(hull.size()) - 1 && g.qs[hull[seg + 1]] <= g.qs[i]) ++seg;
    const int a = hull[seg];
    const int b = hull[seg + 1];
    const double t = (g.qs[i] - g.qs[a]) / (g.qs[b] - g.qs[a]);
    res.envelope[static_cast<std::size_t>(i)] = g.fs[a] + t * (g.fs[b] - g.fs[a]);
    seg_of[static_cast<std::size_t>(i)] = seg;
    const double gap = g.fs[i] - res.envelope[static_cast<std::size_t>(i)];
    if (gap > best_gap + 1e-18) {
      best_gap = gap;
      best = i;
    }
  }

  // Refine the supporting segment: polish the two support points against the
  // current chord, then re-maximize the gap inside the segment. Segments of a
  // single grid step carry no gap worth refining.
  double ql = g.qs[hull[seg_of[static_cast<std::size_t>(best)]]];
  double qr = g.qs[hull[seg_of[static_cast<std::size_t>(best)] + 1]];
  const double h = 1.0 / (n - 1);
  double p1 = best_gap;
  double argmax = g.qs[best];
  if (qr - ql > 2.5 * h) {
    // Support points are polished inside their grid cell. Boundary vertices
    // are included: x log x slopes of the output entropies can hide a true
    // support point just inside the simplex.
    for (int pass = 0; pass < 3; ++pass) {
      const double fl = f(ql), fr = f(qr);
      const double slope = (fr - fl) / (qr - ql);
      {
        const double lo = std::max(0.0, ql - h);
        const double hi = std::min(qr - h, ql + h);
        const double cand =
            golden_min([&](double x) { return f(x) - slope * x; }, lo, hi, cfg.golden_tol);
        if (f(cand) - slope * cand <= fl - slope * ql) ql = cand;
      }
      {
        const double lo = std::max(ql + h, qr - h);
        const double hi = std::min(1.0, qr + h);
        const double cand =
            golden_min([&](double x) { return f(x) - slope * x; }, lo, hi, cfg.golden_tol);
        if (f(cand) - slope * cand <= f(qr) - slope * qr) qr = cand;
      }
    }
    const double fl = f(ql), fr = f(qr);
    auto chord = [&](double x) { return fl + (x - ql) * (fr - fl) / (qr - ql); };
    const double q_star =
        golden_max([&](double x) { return f(x) - chord(x); }, ql, qr, cfg.golden_tol);
    const double refined = f(q_star) - chord(q_star);
    if (refined > p1) {
      p1 = refined;
      argmax = q_star;
    }
  }
  res.p1 = std::max(0.0, p1);
  res.gap_argmax = argmax;
  res.support_left = ql;
  res.support_right = qr;
  return res;
}

double upper_bound(const WiretapChannel& w, const NumericConfig& cfg) {
  if (w.input_size() != 2)
    throw UnsupportedError("upper_bound is implemented for binary classical inputs");
  BinaryFSection f(w, cfg);
  const GridScan g = scan_section(f, cfg.grid_points);
  int imax = 0, imin = 0;
  for (int i = 1; i < static_cast<int>(g.qs.size()); ++i) {
    if (g.fs[i] > g.fs[imax]) imax = i;
    if (g.fs[i] < g.fs[imin]) imin = i;
  }
  const int n = static_cast<int>(g.qs.size());
  auto polish = [&](int idx, bool maximize) {
    const double lo = g.qs[std::max(0, idx - 1)];
    const double hi = g.qs[std::min(n - 1, idx + 1)];
    const double q = maximize ? golden_max([&](double x) { return f(x); }, lo, hi, cfg.golden_tol)
                              : golden_min([&](double x) { return f(x); }, lo, hi, cfg.golden_tol);
    const double v = f(q);
    return maximize ? std::max(v, g.fs[idx]) : std::min(v, g.fs[idx]);
  };
  return polish(imax, true) - polish(imin, false);
}

const char* ternary_name(Ternary t) {
  switch (t) {
    case Ternary::yes: return "yes";
    case Ternary::no: return "no";
    case Ternary::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

// Pure iff the second-largest eigenvalue is negligible.
bool output_is_pure(const DensityMatrix& m, const NumericConfig& cfg) {
  const std::vector<double> ev = hermitian_eigenvalues(m.matrix(), cfg);
  return ev.size() < 2 || std::abs(ev[1]) <= cfg.purity_tol;
}

// |<psi|phi>| for two pure states given as projectors: tr(rho sigma) = |<psi|phi>|^2.
double pure_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  cx t = 0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  return std::sqrt(std::max(0.0, t.real()));
}

}  // namespace

ClassificationReport classify(const WiretapChannel& w, const NumericConfig& cfg) {
  if (w.input_size() != 2)
    throw UnsupportedError("classification is implemented for binary classical inputs");
  BinaryFSection f(w, cfg);
  ClassificationReport rep;

  const GridScan g = scan_section(f, cfg.grid_points);
  rep.more_capable = Ternary::yes;
  rep.anti_more_capable = Ternary::yes;
  for (int i = 0; i < static_cast<int>(g.qs.size()); ++i) {
    if (g.fs[i] < -cfg.zero_band && rep.more_capable == Ternary::yes) {
      rep.more_capable = Ternary::no;
      rep.more_capable_witness_q = g.qs[i];
    }
    if (g.fs[i] > cfg.zero_band && rep.anti_more_capable == Ternary::yes) {
      rep.anti_more_capable = Ternary::no;
      rep.anti_more_capable_witness_q = g.qs[i];
    }
  }

  // Convexity flags from second differences on a coarser interior grid; the
  // second difference of a genuinely convex (concave) section has the exact
  // sign regardless of step size.
  const int m = cfg.curvature_grid;
  const double h = 1.0 / (m - 1);
  rep.less_noisy = Ternary::yes;
  rep.anti_less_noisy = Ternary::yes;
  double prev = f(0.0), cur = f(h);
  for (int i = 1; i + 1 < m; ++i) {
    const double next = f((i + 1) * h);
    const double d2 = (next - 2.0 * cur + prev) / (h * h);
    if (d2 > cfg.curvature_band && rep.less_noisy == Ternary::yes) {
      rep.less_noisy = Ternary::no;
      rep.less_noisy_witness_q = i * h;
    }
    if (d2 < -cfg.curvature_band && rep.anti_less_noisy == Ternary::yes) {
      rep.anti_less_noisy = Ternary::no;
      rep.anti_less_noisy_witness_q = i * h;
    }
    prev = cur;
    cur = next;
  }

  // Degradability via the pure-source criterion: a channel mapping one
  // side's pure outputs onto the other side's outputs pointwise exists iff
  // the target fidelity is at least the source overlap.
  const bool bob_pure =
      output_is_pure(w.bob().output(0), cfg) && output_is_pure(w.bob().output(1), cfg);
  const bool charlie_pure =
      output_is_pure(w.charlie().output(0), cfg) && output_is_pure(w.charlie().output(1), cfg);

  if (bob_pure) {
    const double src = pure_overlap(w.bob().output(0), w.bob().output(1));
    const double tgt = fidelity(w.charlie().output(0), w.charlie().output(1), cfg);
    rep.degradable = tgt >= src - cfg.fidelity_tol ? Ternary::yes : Ternary::no;
    rep.degradable_fidelities = {src, tgt};
  }
  if (charlie_pure) {
    const double src = pure_overlap(w.charlie().output(0), w.charlie().output(1));
    const double tgt = fidelity(w.bob().output(0), w.bob().output(1), cfg);
    rep.anti_degradable = tgt >= src - cfg.fidelity_tol ? Ternary::yes : Ternary::no;
    rep.anti_degradable_fidelities = {src, tgt};
  }
  return rep;
}

const char* threshold_kind_name(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::bob_less_noisy: return "bob_less_noisy";
    case ThresholdKind::bob_more_capable: return "bob_more_capable";
    case ThresholdKind::bob_degradable: return "bob_degradable";
    case ThresholdKind::eve_less_noisy: return "eve_less_noisy";
    case ThresholdKind::eve_degradable: return "eve_degradable";
  }
  return "";
}

std::optional<ThresholdKind> threshold_kind_from_name(const std::string& name) {
  for (ThresholdKind k :
       {ThresholdKind::bob_less_noisy, ThresholdKind::bob_more_capable,
        ThresholdKind::bob_degradable, ThresholdKind::eve_less_noisy,
        ThresholdKind::eve_degradable}) {
    if (name == threshold_kind_name(k)) return k;
  }
  return std::nullopt;
}

namespace {

double bisect(const std::function<double(double)>& fn, double lo, double hi, double width,
              const char* what) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw SolverError(std::string("no sign change on the bracket for ") + what);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double solve_threshold(ThresholdKind kind, const NumericConfig& cfg) {
  switch (kind) {
    case ThresholdKind::bob_less_noisy:
      // curvature of f at q = 1/2 changes sign; equivalently
      // 2r^2(r-2)/(r^2-1) = ln((1+r)/(1-r))
      return bisect(
          [](double r) {
            return 2.0 * r * r * (r - 2.0) / (r * r - 1.0) - std::log((1.0 + r) / (1.0 - r));
          },
          0.4, 0.7, cfg.bisect_width, "bob_less_noisy");
    case ThresholdKind::bob_more_capable:
      // f at the uniform input changes sign: h2((1-r)/2) = r(2-r)
      return bisect([](double r) { return h2(0.5 * (1.0 - r)) - r * (2.0 - r); }, 0.4, 0.7,
                    cfg.bisect_width, "bob_more_capable");
    case ThresholdKind::bob_degradable:
      return 0.5 * (3.0 - std::sqrt(5.0));
    case ThresholdKind::eve_less_noisy:
      // (1-2p)^3 / (2p(1-p)) = ln((1-p)/p)
      return bisect(
          [](double p) {
            const double a = 1.0 - 2.0 * p;
            return a * a * a / (2.0 * p * (1.0 - p)) - std::log((1.0 - p) / p);
          },
          0.05, 0.2, cfg.bisect_width, "eve_less_noisy");
    case ThresholdKind::eve_degradable:
      return 0.25 * (2.0 - std::sqrt(2.0));
  }
  throw DomainError("unknown threshold kind");
}

}  // namespace wiretap
