#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wiretap/config.hpp"

namespace wiretap {

using cx = std::complex<double>;

// Dense complex Hermitian matrix, row-major storage. Hermitian symmetry is
// validated on construction, so downstream spectral code may assume it.
class HermitianMatrix {
 public:
  HermitianMatrix(int dim, std::vector<cx> entries,
                  const NumericConfig& cfg = default_config());

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(std::span<const double> d);

  int dim() const { return dim_; }
  const cx& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * dim_ + j];
  }
  std::span<const cx> entries() const { return e_; }

  double trace() const;
  double frobenius_norm() const;
  bool is_diagonal(double tol) const;
  std::vector<double> diagonal_real() const;

  HermitianMatrix scaled(double s) const;
  HermitianMatrix plus(const HermitianMatrix& other) const;

 private:
  int dim_;
  std::vector<cx> e_;
};

// Normalized state vector.
class PureState {
 public:
  PureState(std::vector<cx> amplitudes, const NumericConfig& cfg = default_config());

  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amp_.size()); }
  std::span<const cx> amplitudes() const { return amp_; }

 private:
  std::vector<cx> amp_;
};

// Unit-trace positive semidefinite operator.
class DensityMatrix {
 public:
  // Validates trace and the spectrum (full eigendecomposition).
  explicit DensityMatrix(HermitianMatrix m, const NumericConfig& cfg = default_config());

  // Skips the spectral check. For operations that preserve positivity by
  // construction (tensor products and convex mixtures of valid states).
  static DensityMatrix unchecked(HermitianMatrix m, const NumericConfig& cfg = default_config());

  static DensityMatrix diagonal(std::span<const double> probs,
                                const NumericConfig& cfg = default_config());
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return m_.dim(); }
  const HermitianMatrix& matrix() const { return m_; }
  const cx& operator()(int i, int j) const { return m_(i, j); }

 private:
  struct Trusted {};
  DensityMatrix(Trusted, HermitianMatrix m) : m_(std::move(m)) {}
  HermitianMatrix m_;
};

struct EigenSystem {
  std::vector<double> values;  // non-increasing
  std::vector<cx> vectors;     // row-major: vectors[i*dim + j] = <i|v_j>
  int dim = 0;

  cx vector_entry(int component, int which) const {
    return vectors[static_cast<std::size_t>(component) * dim + which];
  }
};

// Cyclic complex Jacobi eigensolver. Sweeps until the off-diagonal Frobenius
// norm drops below cfg.jacobi_off_tol (scaled by the matrix norm).
EigenSystem hermitian_eig(const HermitianMatrix& m,
                          const NumericConfig& cfg = default_config());

// Eigenvalues only, sorted non-increasing.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m,
                                          const NumericConfig& cfg = default_config());

namespace detail {
// Values-only Jacobi passes for trusted Hermitian buffers; the input is
// destroyed. Unsorted output.
std::vector<double> eigenvalues_inplace(std::vector<cx>& a, int n, const NumericConfig& cfg);
std::vector<double> symmetric_eigenvalues_inplace(std::vector<double>& a, int n,
                                                  const NumericConfig& cfg);
}  // namespace detail

// Kronecker product; entry ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2).
HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b,
                       const NumericConfig& cfg = default_config());
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     const NumericConfig& cfg = default_config());

// Outer product |v><v|.
DensityMatrix projector(const PureState& v, const NumericConfig& cfg = default_config());

// Convex mixture sum_i w[i] * states[i]; weights are assumed to form a
// probability vector.
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states,
                  const NumericConfig& cfg = default_config());

// Uhlmann fidelity tr sqrt(sqrt(a) b sqrt(a)).
double fidelity(const DensityMatrix& a, const DensityMatrix& b,
                const NumericConfig& cfg = default_config());

}  // namespace wiretap
