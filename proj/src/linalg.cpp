#include "wiretap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wiretap/error.hpp"

namespace wiretap {

const NumericConfig& default_config() {
  static const NumericConfig cfg{};
  return cfg;
}

const char* error_category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::size: return "size";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::unsupported: return "unsupported";
    case ErrorCategory::solver: return "solver";
    case ErrorCategory::io: return "io";
    case ErrorCategory::internal: return "internal";
  }
  return "unknown";
}

HermitianMatrix::HermitianMatrix(int dim, std::vector<cx> entries, const NumericConfig& cfg)
    : dim_(dim), e_(std::move(entries)) {
  if (dim <= 0) throw ValidationError("matrix dimension must be positive");
  if (e_.size() != static_cast<std::size_t>(dim) * dim)
    throw ValidationError("entry count does not match dimension");
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      const cx d = e_[static_cast<std::size_t>(i) * dim_ + j] -
                   std::conj(e_[static_cast<std::size_t>(j) * dim_ + i]);
      if (std::abs(d) > cfg.hermitian_tol)
        throw ValidationError("matrix is not Hermitian at (" + std::to_string(i) + "," +
                              std::to_string(j) + "), violation " + std::to_string(std::abs(d)));
    }
  }
  // exact symmetrization so later arithmetic cannot drift
  for (int i = 0; i < dim_; ++i) {
    e_[static_cast<std::size_t>(i) * dim_ + i] = cx(e_[static_cast<std::size_t>(i) * dim_ + i].real(), 0.0);
    for (int j = i + 1; j < dim_; ++j) {
      const cx a = e_[static_cast<std::size_t>(i) * dim_ + j];
      const cx b = std::conj(e_[static_cast<std::size_t>(j) * dim_ + i]);
      const cx avg = 0.5 * (a + b);
      e_[static_cast<std::size_t>(i) * dim_ + j] = avg;
      e_[static_cast<std::size_t>(j) * dim_ + i] = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(dim, std::vector<cx>(static_cast<std::size_t>(dim) * dim));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  std::vector<cx> e(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = 1.0;
  return HermitianMatrix(dim, std::move(e));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  std::vector<cx> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = d[i];
  return HermitianMatrix(n, std::move(e));
}

double HermitianMatrix::trace() const {
  double t = 0;
  for (int i = 0; i < dim_; ++i) t += e_[static_cast<std::size_t>(i) * dim_ + i].real();
  return t;
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0;
  for (const cx& v : e_) s += std::norm(v);
  return std::sqrt(s);
}

bool HermitianMatrix::is_diagonal(double tol) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && std::abs(e_[static_cast<std::size_t>(i) * dim_ + j]) > tol) return false;
  return true;
}

std::vector<double> HermitianMatrix::diagonal_real() const {
  std::vector<double> d(dim_);
  for (int i = 0; i < dim_; ++i) d[i] = e_[static_cast<std::size_t>(i) * dim_ + i].real();
  return d;
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
  std::vector<cx> e(e_);
  for (cx& v : e) v *= s;
  return HermitianMatrix(dim_, std::move(e));
}

HermitianMatrix HermitianMatrix::plus(const HermitianMatrix& other) const {
  if (other.dim_ != dim_) throw ValidationError("dimension mismatch in matrix sum");
  std::vector<cx> e(e_);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += other.e_[k];
  return HermitianMatrix(dim_, std::move(e));
}

PureState::PureState(std::vector<cx> amplitudes, const NumericConfig& cfg)
    : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw ValidationError("pure state must have positive dimension");
  double n2 = 0;
  for (const cx& a : amp_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > cfg.norm_tol)
    throw ValidationError("pure state is not normalized: ||v||^2 = " + std::to_string(n2));
}

PureState PureState::basis(int dim, int index) {
  std::vector<cx> a(dim);
  a[index] = 1.0;
  return PureState(std::move(a));
}

DensityMatrix::DensityMatrix(HermitianMatrix m, const NumericConfig& cfg) : m_(std::move(m)) {
  if (std::abs(m_.trace() - 1.0) > cfg.trace_tol)
    throw ValidationError("density matrix trace is " + std::to_string(m_.trace()));
  const std::vector<double> ev = hermitian_eigenvalues(m_, cfg);
  if (ev.back() < cfg.psd_floor)
    throw ValidationError("density matrix has eigenvalue " + std::to_string(ev.back()));
}

DensityMatrix DensityMatrix::unchecked(HermitianMatrix m, const NumericConfig& cfg) {
  if (std::abs(m.trace() - 1.0) > cfg.trace_tol)
    throw ValidationError("density matrix trace is " + std::to_string(m.trace()));
  return DensityMatrix(Trusted{}, std::move(m));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs, const NumericConfig& cfg) {
  for (double p : probs)
    if (p < cfg.psd_floor) throw ValidationError("negative probability on the diagonal");
  return DensityMatrix(Trusted{}, HermitianMatrix::diagonal(probs));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  std::vector<double> d(dim, 1.0 / dim);
  return DensityMatrix::diagonal(d);
}

namespace {

// One cyclic Jacobi pass target: annihilate a[p][q] with the unitary plane
// rotation G(pp)=c, G(pq)=-s*phase, G(qp)=s*conj(phase), G(qq)=c.
struct JacobiWorkspace {
  int n;
  std::vector<cx> a;  // row-major, kept Hermitian
  std::vector<cx> v;  // accumulated eigenvectors (columns)

  double off_norm() const {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += std::norm(a[static_cast<std::size_t>(i) * n + j]);
    return std::sqrt(2.0 * s);
  }

  void rotate(int p, int q) {
    const std::size_t np = static_cast<std::size_t>(p) * n;
    const std::size_t nq = static_cast<std::size_t>(q) * n;
    const cx apq = a[np + q];
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cx phase = apq / r;
    const double alpha = a[np + p].real();
    const double beta = a[nq + q].real();
    const double tau = (beta - alpha) / (2.0 * r);
    // smaller root of t^2 - 2*tau*t - 1 = 0, rotation angle <= pi/4
    const double tt = -std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + tt * tt);
    const double s = tt * c;

    for (int k = 0; k < n; ++k) {
      if (k == p || k == q) continue;
      const std::size_t nk = static_cast<std::size_t>(k) * n;
      const cx akp = a[nk + p];
      const cx akq = a[nk + q];
      a[nk + p] = akp * c + akq * (s * std::conj(phase));
      a[nk + q] = -akp * (s * phase) + akq * c;
      a[np + k] = std::conj(a[nk + p]);
      a[nq + k] = std::conj(a[nk + q]);
    }
    const double app = c * c * alpha + 2.0 * s * c * r + s * s * beta;
    const double aqq = s * s * alpha - 2.0 * s * c * r + c * c * beta;
    a[np + p] = app;
    a[nq + q] = aqq;
    a[np + q] = 0.0;
    a[nq + p] = 0.0;

    for (int k = 0; k < n; ++k) {
      const std::size_t nk = static_cast<std::size_t>(k) * n;
      const cx vkp = v[nk + p];
      const cx vkq = v[nk + q];
      v[nk + p] = vkp * c + vkq * (s * std::conj(phase));
      v[nk + q] = -vkp * (s * phase) + vkq * c;
    }
  }
};

}  // namespace

namespace detail {

std::vector<double> eigenvalues_inplace(std::vector<cx>& a, int n, const NumericConfig& cfg) {
  double fro = 0;
  for (const cx& v : a) fro += std::norm(v);
  const double target = cfg.jacobi_off_tol * std::max(1.0, std::sqrt(fro));
  auto off_norm = [&] {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += std::norm(a[static_cast<std::size_t>(i) * n + j]);
    return std::sqrt(2.0 * s);
  };
  int sweep = 0;
  while (off_norm() > target) {
    if (++sweep > cfg.jacobi_max_sweeps)
      throw SolverError("Jacobi eigensolver did not converge");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const std::size_t np = static_cast<std::size_t>(p) * n;
        const std::size_t nq = static_cast<std::size_t>(q) * n;
        const cx apq = a[np + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cx phase = apq / r;
        const double alpha = a[np + p].real();
        const double beta = a[nq + q].real();
        const double tau = (beta - alpha) / (2.0 * r);
        const double t = -std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const std::size_t nk = static_cast<std::size_t>(k) * n;
          const cx akp = a[nk + p];
          const cx akq = a[nk + q];
          a[nk + p] = akp * c + akq * (s * std::conj(phase));
          a[nk + q] = -akp * (s * phase) + akq * c;
          a[np + k] = std::conj(a[nk + p]);
          a[nq + k] = std::conj(a[nk + q]);
        }
        a[np + p] = c * c * alpha + 2.0 * s * c * r + s * s * beta;
        a[nq + q] = s * s * alpha - 2.0 * s * c * r + c * c * beta;
        a[np + q] = 0.0;
        a[nq + p] = 0.0;
      }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i].real();
  return values;
}

std::vector<double> symmetric_eigenvalues_inplace(std::vector<double>& a, int n,
                                                  const NumericConfig& cfg) {
  double fro = 0;
  for (double v : a) fro += v * v;
  const double target = cfg.jacobi_off_tol * std::max(1.0, std::sqrt(fro));
  auto off_norm = [&] {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = a[static_cast<std::size_t>(i) * n + j];
        s += v * v;
      }
    return std::sqrt(2.0 * s);
  };
  int sweep = 0;
  while (off_norm() > target) {
    if (++sweep > cfg.jacobi_max_sweeps)
      throw SolverError("Jacobi eigensolver did not converge");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const std::size_t np = static_cast<std::size_t>(p) * n;
        const std::size_t nq = static_cast<std::size_t>(q) * n;
        const double apq = a[np + q];
        if (apq == 0.0) continue;
        const double r = std::abs(apq);
        const double sign = apq > 0.0 ? 1.0 : -1.0;
        const double alpha = a[np + p];
        const double beta = a[nq + q];
        const double tau = (beta - alpha) / (2.0 * r);
        const double t = -std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const std::size_t nk = static_cast<std::size_t>(k) * n;
          const double akp = a[nk + p];
          const double akq = a[nk + q];
          a[nk + p] = akp * c + akq * (s * sign);
          a[nk + q] = -akp * (s * sign) + akq * c;
          a[np + k] = a[nk + p];
          a[nq + k] = a[nk + q];
        }
        a[np + p] = c * c * alpha + 2.0 * s * c * r + s * s * beta;
        a[nq + q] = s * s * alpha - 2.0 * s * c * r + c * c * beta;
        a[np + q] = 0.0;
        a[nq + p] = 0.0;
      }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i];
  return values;
}

}  // namespace detail

EigenSystem hermitian_eig(const HermitianMatrix& m, const NumericConfig& cfg) {
  const int n = m.dim();
  JacobiWorkspace ws;
  ws.n = n;
  ws.a.assign(m.entries().begin(), m.entries().end());
  ws.v.assign(static_cast<std::size_t>(n) * n, cx(0.0));
  for (int i = 0; i < n; ++i) ws.v[static_cast<std::size_t>(i) * n + i] = 1.0;

  const double target = cfg.jacobi_off_tol * std::max(1.0, m.frobenius_norm());
  int sweep = 0;
  while (ws.off_norm() > target) {
    if (++sweep > cfg.jacobi_max_sweeps)
      throw SolverError("Jacobi eigensolver did not converge in " +
                        std::to_string(cfg.jacobi_max_sweeps) + " sweeps");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) ws.rotate(p, q);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return ws.a[static_cast<std::size_t>(i) * n + i].real() >
           ws.a[static_cast<std::size_t>(j) * n + j].real();
  });

  EigenSystem out;
  out.dim = n;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = ws.a[static_cast<std::size_t>(order[j]) * n + order[j]].real();
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(i) * n + j] =
          ws.v[static_cast<std::size_t>(i) * n + order[j]];
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m, const NumericConfig& cfg) {
  if (m.is_diagonal(0.0)) {
    std::vector<double> d = m.diagonal_real();
    std::sort(d.begin(), d.end(), std::greater<double>());
    return d;
  }
  std::span<const cx> e = m.entries();
  bool real = true;
  for (const cx& v : e)
    if (v.imag() != 0.0) {
      real = false;
      break;
    }
  std::vector<double> values;
  if (real) {
    std::vector<double> work(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) work[k] = e[k].real();
    values = detail::symmetric_eigenvalues_inplace(work, m.dim(), cfg);
  } else {
    std::vector<cx> work(e.begin(), e.end());
    values = detail::eigenvalues_inplace(work, m.dim(), cfg);
  }
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b,
                       const NumericConfig& cfg) {
  const long long prod = static_cast<long long>(a.dim()) * b.dim();
  if (prod > cfg.dim_cap)
    throw SizeError("tensor product dimension " + std::to_string(prod) +
                    " exceeds the cap of " + std::to_string(cfg.dim_cap));
  const int da = a.dim(), db = b.dim(), n = da * db;
  std::vector<cx> e(static_cast<std::size_t>(n) * n);
  for (int i1 = 0; i1 < da; ++i1)
    for (int j1 = 0; j1 < da; ++j1) {
      const cx aij = a(i1, j1);
      if (aij == cx(0.0)) continue;
      for (int i2 = 0; i2 < db; ++i2)
        for (int j2 = 0; j2 < db; ++j2)
          e[static_cast<std::size_t>(i1 * db + i2) * n + (j1 * db + j2)] = aij * b(i2, j2);
    }
  return HermitianMatrix(n, std::move(e), cfg);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b, const NumericConfig& cfg) {
  return DensityMatrix::unchecked(tensor(a.matrix(), b.matrix(), cfg), cfg);
}

DensityMatrix projector(const PureState& v, const NumericConfig& cfg) {
  const int n = v.dim();
  std::span<const cx> a = v.amplitudes();
  std::vector<cx> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = a[i] * std::conj(a[j]);
  return DensityMatrix::unchecked(HermitianMatrix(n, std::move(e), cfg), cfg);
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states,
                  const NumericConfig& cfg) {
  if (weights.size() != states.size() || states.empty())
    throw ValidationError("mixture needs matching weights and states");
  const int n = states[0].dim();
  std::vector<cx> e(static_cast<std::size_t>(n) * n);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim() != n) throw ValidationError("mixture states differ in dimension");
    if (weights[k] == 0.0) continue;
    std::span<const cx> src = states[k].matrix().entries();
    for (std::size_t idx = 0; idx < e.size(); ++idx) e[idx] += weights[k] * src[idx];
  }
  return DensityMatrix::unchecked(HermitianMatrix(n, std::move(e), cfg), cfg);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b, const NumericConfig& cfg) {
  if (a.dim() != b.dim()) throw ValidationError("fidelity needs equal dimensions");
  const int n = a.dim();
  const EigenSystem ea = hermitian_eig(a.matrix(), cfg);

  // sqrt(a) = V diag(sqrt(lambda)) V^dagger
  std::vector<cx> sqrta(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cx s = 0;
      for (int k = 0; k < n; ++k) {
        const double lam = std::max(0.0, ea.values[k]);
        s += ea.vector_entry(i, k) * std::sqrt(lam) * std::conj(ea.vector_entry(j, k));
      }
      sqrta[static_cast<std::size_t>(i) * n + j] = s;
    }

  auto matmul = [n](const std::vector<cx>& x, const std::vector<cx>& y) {
    std::vector<cx> z(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cx xik = x[static_cast<std::size_t>(i) * n + k];
        if (xik == cx(0.0)) continue;
        for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(i) * n + j] += xik * y[static_cast<std::size_t>(k) * n + j];
      }
    return z;
  };

  std::vector<cx> bm(b.matrix().entries().begin(), b.matrix().entries().end());
  std::vector<cx> inner = matmul(matmul(sqrta, bm), sqrta);
  // inner is Hermitian PSD up to roundoff
  HermitianMatrix im(n, std::move(inner), cfg);
  double f = 0;
  for (double lam : hermitian_eigenvalues(im, cfg)) f += std::sqrt(std::max(0.0, lam));
  return f;
}

}  // namespace wiretap
