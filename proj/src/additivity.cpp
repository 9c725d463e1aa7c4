#include "wiretap/additivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "wiretap/entropy.hpp"
#include "wiretap/error.hpp"
#include "wiretap/parallel.hpp"

namespace wiretap {

QccChannel::QccChannel(int input_dim, int bob_outputs, int charlie_outputs,
                       std::vector<HermitianMatrix> povm, const NumericConfig& cfg)
    : dim_(input_dim), ny_(bob_outputs), nz_(charlie_outputs), povm_(std::move(povm)) {
  if (dim_ <= 0 || ny_ <= 0 || nz_ <= 0) throw ValidationError("qcc channel sizes must be positive");
  if (povm_.size() != static_cast<std::size_t>(ny_) * nz_)
    throw ValidationError("POVM element count does not match the outcome grid");
  std::vector<cx> sum(static_cast<std::size_t>(dim_) * dim_);
  for (const HermitianMatrix& el : povm_) {
    if (el.dim() != dim_) throw ValidationError("POVM element dimension mismatch");
    const std::vector<double> ev = hermitian_eigenvalues(el, cfg);
    if (ev.back() < cfg.psd_floor)
      throw ValidationError("POVM element has eigenvalue " + std::to_string(ev.back()));
    std::span<const cx> e = el.entries();
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += e[k];
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const cx expect = i == j ? cx(1.0) : cx(0.0);
      if (std::abs(sum[static_cast<std::size_t>(i) * dim_ + j] - expect) > cfg.trace_tol)
        throw ValidationError("POVM elements do not sum to the identity");
    }
}

double f_qcc(const QccChannel& ch, const DensityMatrix& rho, const NumericConfig& cfg) {
  if (rho.dim() != ch.input_dim())
    throw ValidationError("state dimension does not match the channel input");
  const int d = ch.input_dim();
  const int ny = ch.bob_outputs();
  const int nz = ch.charlie_outputs();
  const EigenSystem es = hermitian_eig(rho.matrix(), cfg);

  // joint[x][y][z] = p(x) <x| Lambda^{y,z} |x>
  std::vector<double> py(static_cast<std::size_t>(ny), 0.0);
  std::vector<double> pz(static_cast<std::size_t>(nz), 0.0);
  double h_y_given_x = 0, h_z_given_x = 0;
  std::vector<double> row_y(static_cast<std::size_t>(ny));
  std::vector<double> row_z(static_cast<std::size_t>(nz));
  for (int x = 0; x < d; ++x) {
    const double px = std::max(0.0, es.values[x]);
    if (px <= cfg.eig_clip) continue;
    std::fill(row_y.begin(), row_y.end(), 0.0);
    std::fill(row_z.begin(), row_z.end(), 0.0);
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) {
        const HermitianMatrix& el = ch.element(y, z);
        cx quad = 0;
        for (int i = 0; i < d; ++i) {
          const cx vi = es.vector_entry(i, x);
          for (int j = 0; j < d; ++j) quad += std::conj(vi) * el(i, j) * es.vector_entry(j, x);
        }
        const double val = std::max(0.0, quad.real());
        row_y[static_cast<std::size_t>(y)] += val;
        row_z[static_cast<std::size_t>(z)] += val;
      }
    for (int y = 0; y < ny; ++y) py[static_cast<std::size_t>(y)] += px * row_y[static_cast<std::size_t>(y)];
    for (int z = 0; z < nz; ++z) pz[static_cast<std::size_t>(z)] += px * row_z[static_cast<std::size_t>(z)];
    h_y_given_x += px * shannon_entropy(row_y, cfg);
    h_z_given_x += px * shannon_entropy(row_z, cfg);
  }
  const double i_xy = shannon_entropy(py, cfg) - h_y_given_x;
  const double i_xz = shannon_entropy(pz, cfg) - h_z_given_x;
  return i_xy - i_xz;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 restart_stream(std::uint64_t seed, std::uint64_t lane) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(lane + 1)));
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0;
};

NelderMeadResult nelder_mead_min(const std::function<double(const std::vector<double>&)>& fn,
                                 std::vector<double> x0, double step, int max_iters, double tol) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> fs(static_cast<std::size_t>(n + 1));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += step;
  for (int i = 0; i <= n; ++i) fs[static_cast<std::size_t>(i)] = fn(xs[static_cast<std::size_t>(i)]);

  std::vector<int> order(static_cast<std::size_t>(n + 1));
  std::vector<double> centroid(static_cast<std::size_t>(n));
  std::vector<double> cand(static_cast<std::size_t>(n));
  for (int iter = 0; iter < max_iters; ++iter) {
    for (int i = 0; i <= n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)]; });
    const int best = order[0];
    const int worst = order[static_cast<std::size_t>(n)];
    const int second = order[static_cast<std::size_t>(n - 1)];
    if (fs[static_cast<std::size_t>(worst)] - fs[static_cast<std::size_t>(best)] < tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < n; ++k)
        centroid[static_cast<std::size_t>(k)] += xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < n; ++k) centroid[static_cast<std::size_t>(k)] /= n;

    auto blend = [&](double coeff) {
      for (int k = 0; k < n; ++k)
        cand[static_cast<std::size_t>(k)] =
            centroid[static_cast<std::size_t>(k)] +
            coeff * (centroid[static_cast<std::size_t>(k)] - xs[static_cast<std::size_t>(worst)][static_cast<std::size_t>(k)]);
    };

    blend(1.0);  // reflect
    const double fr = fn(cand);
    if (fr < fs[static_cast<std::size_t>(best)]) {
      std::vector<double> refl = cand;
      blend(2.0);  // expand
      const double fe = fn(cand);
      if (fe < fr) {
        xs[static_cast<std::size_t>(worst)] = cand;
        fs[static_cast<std::size_t>(worst)] = fe;
      } else {
        xs[static_cast<std::size_t>(worst)] = std::move(refl);
        fs[static_cast<std::size_t>(worst)] = fr;
      }
    } else if (fr < fs[static_cast<std::size_t>(second)]) {
      xs[static_cast<std::size_t>(worst)] = cand;
      fs[static_cast<std::size_t>(worst)] = fr;
    } else {
      const bool outside = fr < fs[static_cast<std::size_t>(worst)];
      blend(outside ? 0.5 : -0.5);  // contract
      const double fc = fn(cand);
      if (fc < (outside ? fr : fs[static_cast<std::size_t>(worst)])) {
        xs[static_cast<std::size_t>(worst)] = cand;
        fs[static_cast<std::size_t>(worst)] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {  // shrink
          if (i == best) continue;
          for (int k = 0; k < n; ++k)
            xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                0.5 * (xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                       xs[static_cast<std::size_t>(best)][static_cast<std::size_t>(k)]);
          fs[static_cast<std::size_t>(i)] = fn(xs[static_cast<std::size_t>(i)]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[static_cast<std::size_t>(i)] < fs[static_cast<std::size_t>(best)]) best = i;
  return NelderMeadResult{xs[static_cast<std::size_t>(best)], fs[static_cast<std::size_t>(best)]};
}

// --- ensemble parameterizations -------------------------------------------

int state_param_count(int dim) { return dim == 2 ? 3 : dim * dim; }

// dim 2: Bloch vector, radially clipped to the ball.
// dim > 2: complex lower-triangular factor, rho = L L^dag / tr.
DensityMatrix decode_state(int dim, std::span<const double> p, const NumericConfig& cfg) {
  if (dim == 2) {
    double x = p[0], y = p[1], z = p[2];
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1.0) {
      x /= r;
      y /= r;
      z /= r;
    }
    std::vector<cx> e{cx(0.5 * (1.0 + z), 0.0), cx(0.5 * x, -0.5 * y), cx(0.5 * x, 0.5 * y),
                      cx(0.5 * (1.0 - z), 0.0)};
    return DensityMatrix::unchecked(HermitianMatrix(2, std::move(e), cfg), cfg);
  }
  std::vector<cx> L(static_cast<std::size_t>(dim) * dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j) {
      L[static_cast<std::size_t>(i) * dim + j] = cx(p[k], p[k + 1]);
      k += 2;
    }
    L[static_cast<std::size_t>(i) * dim + i] = cx(p[k], 0.0);
    ++k;
  }
  std::vector<cx> rho(static_cast<std::size_t>(dim) * dim);
  double tr = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      cx s = 0;
      for (int m = 0; m <= std::min(i, j); ++m)
        s += L[static_cast<std::size_t>(i) * dim + m] * std::conj(L[static_cast<std::size_t>(j) * dim + m]);
      rho[static_cast<std::size_t>(i) * dim + j] = s;
      rho[static_cast<std::size_t>(j) * dim + i] = std::conj(s);
      if (i == j) tr += s.real();
    }
  if (tr < 1e-12) return DensityMatrix::maximally_mixed(dim);
  for (cx& v : rho) v /= tr;
  return DensityMatrix::unchecked(HermitianMatrix(dim, std::move(rho), cfg), cfg);
}

// H(Y) - H(Z) of the measurement outcome marginals. Unlike f_qcc this needs
// no eigenbasis, and g(avg) - sum_v w_v g(rho_v) equals I(V:Y) - I(V:Z) of
// the concrete ensemble, so maximizing it yields certified lower bounds.
double g_qcc(const QccChannel& ch, const DensityMatrix& rho, const NumericConfig& cfg) {
  const int d = ch.input_dim();
  const int ny = ch.bob_outputs();
  const int nz = ch.charlie_outputs();
  std::vector<double> py(static_cast<std::size_t>(ny), 0.0);
  std::vector<double> pz(static_cast<std::size_t>(nz), 0.0);
  for (int y = 0; y < ny; ++y)
    for (int z = 0; z < nz; ++z) {
      const HermitianMatrix& el = ch.element(y, z);
      double tr = 0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) tr += (el(i, j) * rho(j, i)).real();
      const double v = std::max(0.0, tr);
      py[static_cast<std::size_t>(y)] += v;
      pz[static_cast<std::size_t>(z)] += v;
    }
  return shannon_entropy(py, cfg) - shannon_entropy(pz, cfg);
}

QuantumEnsemble decode_ensemble(int dim, int states, std::span<const double> params,
                                const NumericConfig& cfg) {
  const int sp = state_param_count(dim);
  QuantumEnsemble ens;
  ens.states.reserve(static_cast<std::size_t>(states));
  double zmax = -1e300;
  for (int v = 0; v < states; ++v) zmax = std::max(zmax, params[static_cast<std::size_t>(states * sp + v)]);
  double zsum = 0;
  ens.weights.resize(static_cast<std::size_t>(states));
  for (int v = 0; v < states; ++v) {
    ens.weights[static_cast<std::size_t>(v)] = std::exp(params[static_cast<std::size_t>(states * sp + v)] - zmax);
    zsum += ens.weights[static_cast<std::size_t>(v)];
  }
  for (double& w : ens.weights) w /= zsum;
  for (int v = 0; v < states; ++v)
    ens.states.push_back(decode_state(dim, params.subspan(static_cast<std::size_t>(v) * sp, static_cast<std::size_t>(sp)), cfg));
  return ens;
}

double ensemble_value(const QccChannel& ch, const QuantumEnsemble& ens, const NumericConfig& cfg) {
  const DensityMatrix avg = mix(ens.weights, ens.states, cfg);
  double expected = 0;
  for (std::size_t v = 0; v < ens.states.size(); ++v)
    if (ens.weights[v] > 1e-15) expected += ens.weights[v] * g_qcc(ch, ens.states[v], cfg);
  return g_qcc(ch, avg, cfg) - expected;
}

std::vector<double> random_ensemble_params(int dim, int states, std::mt19937_64& rng) {
  const int sp = state_param_count(dim);
  std::vector<double> p(static_cast<std::size_t>(states * sp + states));
  std::normal_distribution<double> gauss(0.0, 0.6);
  for (double& v : p) v = gauss(rng);
  return p;
}

// Lower-triangular factor of a PSD matrix; zero pivots are skipped, so rank
// deficient inputs (pure states) are handled.
std::vector<double> encode_state(const DensityMatrix& rho) {
  const int dim = rho.dim();
  if (dim == 2) {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), rho(0, 0).real() - rho(1, 1).real()};
  }
  std::vector<cx> L(static_cast<std::size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    cx diag = rho(j, j);
    for (int m = 0; m < j; ++m) diag -= L[static_cast<std::size_t>(j) * dim + m] * std::conj(L[static_cast<std::size_t>(j) * dim + m]);
    const double d = diag.real();
    if (d <= 1e-14) continue;
    const double root = std::sqrt(d);
    L[static_cast<std::size_t>(j) * dim + j] = root;
    for (int i = j + 1; i < dim; ++i) {
      cx s = rho(i, j);
      for (int m = 0; m < j; ++m)
        s -= L[static_cast<std::size_t>(i) * dim + m] * std::conj(L[static_cast<std::size_t>(j) * dim + m]);
      L[static_cast<std::size_t>(i) * dim + j] = s / root;
    }
  }
  std::vector<double> p(static_cast<std::size_t>(dim) * dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j) {
      p[static_cast<std::size_t>(k)] = L[static_cast<std::size_t>(i) * dim + j].real();
      p[static_cast<std::size_t>(k + 1)] = L[static_cast<std::size_t>(i) * dim + j].imag();
      k += 2;
    }
    p[static_cast<std::size_t>(k)] = L[static_cast<std::size_t>(i) * dim + i].real();
    ++k;
  }
  return p;
}

std::vector<double> encode_ensemble(int dim, int states, const QuantumEnsemble& ens) {
  const int sp = state_param_count(dim);
  std::vector<double> p(static_cast<std::size_t>(states * sp + states), 0.0);
  for (int v = 0; v < states; ++v) {
    const std::size_t src = std::min<std::size_t>(static_cast<std::size_t>(v), ens.states.size() - 1);
    const std::vector<double> sparams = encode_state(ens.states[src]);
    std::copy(sparams.begin(), sparams.end(), p.begin() + static_cast<std::size_t>(v) * sp);
    const double w = v < static_cast<int>(ens.weights.size()) ? ens.weights[static_cast<std::size_t>(v)] : 0.0;
    p[static_cast<std::size_t>(states * sp + v)] = std::log(std::max(w, 1e-9));
  }
  return p;
}

EnsembleSearchResult search_from(const QccChannel& ch, std::vector<std::vector<double>> inits,
                                 int threads, const NumericConfig& cfg) {
  const int dim = ch.input_dim();
  const int states = dim * dim;
  auto objective = [&](const std::vector<double>& p) {
    return -ensemble_value(ch, decode_ensemble(dim, states, p, cfg), cfg);
  };
  std::vector<EnsembleSearchResult> results(inits.size());
  parallel_for(static_cast<int>(inits.size()), threads, [&](int i) {
    const NelderMeadResult nm =
        nelder_mead_min(objective, inits[static_cast<std::size_t>(i)], 0.25, cfg.nm_max_iters, cfg.nm_tol);
    QuantumEnsemble ens = decode_ensemble(dim, states, nm.x, cfg);
    results[static_cast<std::size_t>(i)] = {ensemble_value(ch, ens, cfg), std::move(ens)};
  });
  // the empty ensemble value 0 (a single repeated state) is always feasible
  EnsembleSearchResult best;
  best.value = 0.0;
  best.ensemble.weights = {1.0};
  best.ensemble.states = {DensityMatrix::maximally_mixed(dim)};
  for (EnsembleSearchResult& r : results)
    if (r.value > best.value) best = std::move(r);

  // A fresh simplex around the incumbent escapes stalled configurations;
  // shrinking steps tighten the final digits.
  for (const double step : {0.1, 0.02, 0.004}) {
    const NelderMeadResult nm = nelder_mead_min(
        objective, encode_ensemble(dim, states, best.ensemble), step, cfg.nm_max_iters, cfg.nm_tol);
    QuantumEnsemble ens = decode_ensemble(dim, states, nm.x, cfg);
    const double v = ensemble_value(ch, ens, cfg);
    if (v > best.value) best = {v, std::move(ens)};
  }
  return best;
}

}  // namespace

EnsembleSearchResult p1_qcc_lower(const QccChannel& ch, int restarts, std::uint64_t seed,
                                  const NumericConfig& cfg) {
  if (restarts < 1) throw DomainError("ensemble search needs at least one restart");
  const int dim = ch.input_dim();
  if (dim != 2 && dim != 4)
    throw UnsupportedError("ensemble search covers qubit channels and their pairwise products");
  const int states = dim * dim;
  std::vector<std::vector<double>> inits;
  inits.reserve(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng = restart_stream(seed, static_cast<std::uint64_t>(r));
    inits.push_back(random_ensemble_params(dim, states, rng));
  }
  return search_from(ch, std::move(inits), worker_count(0), cfg);
}

QccChannel tensor(const QccChannel& a, const QccChannel& b, const NumericConfig& cfg) {
  std::vector<HermitianMatrix> povm;
  povm.reserve(static_cast<std::size_t>(a.bob_outputs()) * b.bob_outputs() * a.charlie_outputs() *
               b.charlie_outputs());
  for (int y1 = 0; y1 < a.bob_outputs(); ++y1)
    for (int y2 = 0; y2 < b.bob_outputs(); ++y2)
      for (int z1 = 0; z1 < a.charlie_outputs(); ++z1)
        for (int z2 = 0; z2 < b.charlie_outputs(); ++z2)
          povm.push_back(tensor(a.element(y1, z1), b.element(y2, z2), cfg));
  return QccChannel(a.input_dim() * b.input_dim(), a.bob_outputs() * b.bob_outputs(),
                    a.charlie_outputs() * b.charlie_outputs(), std::move(povm), cfg);
}

namespace {

bool same_povm(const QccChannel& a, const QccChannel& b) {
  if (a.input_dim() != b.input_dim() || a.bob_outputs() != b.bob_outputs() ||
      a.charlie_outputs() != b.charlie_outputs())
    return false;
  for (int y = 0; y < a.bob_outputs(); ++y)
    for (int z = 0; z < a.charlie_outputs(); ++z) {
      std::span<const cx> ea = a.element(y, z).entries();
      std::span<const cx> eb = b.element(y, z).entries();
      for (std::size_t k = 0; k < ea.size(); ++k)
        if (ea[k] != eb[k]) return false;
    }
  return true;
}

}  // namespace

AdditivityReport additivity_probe(const QccChannel& ch1, const QccChannel& ch2, int restarts,
                                  std::uint64_t seed, const NumericConfig& cfg) {
  if (ch1.input_dim() != 2 || ch2.input_dim() != 2)
    throw ValidationError("the additivity probe pairs qubit-input channels");
  EnsembleSearchResult r1 = p1_qcc_lower(ch1, restarts, splitmix64(seed ^ 0x1), cfg);
  EnsembleSearchResult r2 = p1_qcc_lower(ch2, restarts, splitmix64(seed ^ 0x2), cfg);
  if (same_povm(ch1, ch2)) {
    // identical channels share one true value; keep the better lower bound
    if (r1.value < r2.value)
      r1 = r2;
    else
      r2 = r1;
  }
  const QccChannel product = tensor(ch1, ch2, cfg);

  // Random joint restarts plus seeds built from the product of the two best
  // single-channel ensembles; the latter make joint >= value1 + value2 up to
  // local-search slack, so any further improvement is a real signal.
  std::vector<std::vector<double>> inits;
  inits.reserve(static_cast<std::size_t>(restarts) + 1);
  const std::uint64_t jseed = splitmix64(seed ^ 0x3);
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng = restart_stream(jseed, static_cast<std::uint64_t>(r));
    inits.push_back(random_ensemble_params(4, 16, rng));
  }
  QuantumEnsemble prod;
  for (std::size_t i = 0; i < r1.ensemble.states.size(); ++i)
    for (std::size_t j = 0; j < r2.ensemble.states.size(); ++j) {
      prod.weights.push_back(r1.ensemble.weights[i] * r2.ensemble.weights[j]);
      prod.states.push_back(tensor(r1.ensemble.states[i], r2.ensemble.states[j], cfg));
    }
  inits.push_back(encode_ensemble(4, 16, prod));

  const EnsembleSearchResult joint = search_from(product, std::move(inits), worker_count(0), cfg);
  AdditivityReport rep;
  rep.value1 = r1.value;
  rep.value2 = r2.value;
  rep.joint = joint.value;
  rep.gap = joint.value - r1.value - r2.value;
  rep.anomaly = rep.gap > cfg.anomaly_tol;
  return rep;
}

QccChannel random_qcc_channel(std::uint64_t seed, int dim, int elements, const NumericConfig& cfg) {
  if (elements < 2 || elements % 2 != 0)
    throw DomainError("random channel needs an even number of POVM elements");
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Lambda_i = S^{-1/2} G_i G_i^dag S^{-1/2} with S the sum of the G G^dag
  std::vector<std::vector<cx>> gram(static_cast<std::size_t>(elements));
  std::vector<cx> total(static_cast<std::size_t>(dim) * dim);
  for (int e = 0; e < elements; ++e) {
    std::vector<cx> g(static_cast<std::size_t>(dim) * dim);
    for (cx& v : g) v = cx(gauss(rng), gauss(rng));
    std::vector<cx>& gg = gram[static_cast<std::size_t>(e)];
    gg.assign(static_cast<std::size_t>(dim) * dim, cx(0.0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        cx s = 0;
        for (int k = 0; k < dim; ++k)
          s += g[static_cast<std::size_t>(i) * dim + k] * std::conj(g[static_cast<std::size_t>(j) * dim + k]);
        gg[static_cast<std::size_t>(i) * dim + j] = s;
        total[static_cast<std::size_t>(i) * dim + j] += s;
      }
  }
  const EigenSystem es = hermitian_eig(HermitianMatrix(dim, total, cfg), cfg);
  std::vector<cx> isqrt(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      cx s = 0;
      for (int k = 0; k < dim; ++k)
        s += es.vector_entry(i, k) * (1.0 / std::sqrt(es.values[k])) * std::conj(es.vector_entry(j, k));
      isqrt[static_cast<std::size_t>(i) * dim + j] = s;
    }
  auto matmul = [dim](const std::vector<cx>& x, const std::vector<cx>& y) {
    std::vector<cx> z(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k)
        for (int j = 0; j < dim; ++j)
          z[static_cast<std::size_t>(i) * dim + j] +=
              x[static_cast<std::size_t>(i) * dim + k] * y[static_cast<std::size_t>(k) * dim + j];
    return z;
  };
  std::vector<HermitianMatrix> povm;
  povm.reserve(static_cast<std::size_t>(elements));
  for (int e = 0; e < elements; ++e)
    povm.push_back(HermitianMatrix(dim, matmul(matmul(isqrt, gram[static_cast<std::size_t>(e)]), isqrt), cfg));
  return QccChannel(dim, 2, elements / 2, std::move(povm), cfg);
}

QccChannel measure_and_forward(const ClassicalChannel& bob, const ClassicalChannel& charlie,
                               const NumericConfig& cfg) {
  if (bob.input_size() != charlie.input_size())
    throw ValidationError("reductions disagree on the measured alphabet");
  const int d = bob.input_size();
  std::vector<HermitianMatrix> povm;
  for (int y = 0; y < bob.output_size(); ++y)
    for (int z = 0; z < charlie.output_size(); ++z) {
      std::vector<double> diag(static_cast<std::size_t>(d));
      for (int x = 0; x < d; ++x) diag[static_cast<std::size_t>(x)] = bob(x, y) * charlie(x, z);
      povm.push_back(HermitianMatrix::diagonal(diag));
    }
  return QccChannel(d, bob.output_size(), charlie.output_size(), std::move(povm), cfg);
}

QccChannel input_ignoring_qcc(int dim, int ny, int nz, const NumericConfig& cfg) {
  std::vector<HermitianMatrix> povm;
  const double w = 1.0 / (ny * nz);
  for (int i = 0; i < ny * nz; ++i) povm.push_back(HermitianMatrix::identity(dim).scaled(w));
  return QccChannel(dim, ny, nz, std::move(povm), cfg);
}

}  // namespace wiretap
