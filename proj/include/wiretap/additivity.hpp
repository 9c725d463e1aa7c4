#pragma once

#include <cstdint>
#include <vector>

#include "wiretap/channels.hpp"

namespace wiretap {

// Wiretap channel with a quantum input and classical outputs to both
// receivers: a POVM whose outcomes are split into a pair (y, z).
class QccChannel {
 public:
  QccChannel(int input_dim, int bob_outputs, int charlie_outputs,
             std::vector<HermitianMatrix> povm, const NumericConfig& cfg = default_config());

  int input_dim() const { return dim_; }
  int bob_outputs() const { return ny_; }
  int charlie_outputs() const { return nz_; }
  const HermitianMatrix& element(int y, int z) const {
    return povm_[static_cast<std::size_t>(y) * nz_ + z];
  }

 private:
  int dim_, ny_, nz_;
  std::vector<HermitianMatrix> povm_;
};

struct QuantumEnsemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> states;
};

// I(X:Y) - I(X:Z) for the classical distribution induced by measuring the
// eigenbasis of rho. Under spectral ties the eigenbasis returned by the
// deterministic solver is used; any choice yields a feasible ensemble.
double f_qcc(const QccChannel& ch, const DensityMatrix& rho,
             const NumericConfig& cfg = default_config());

struct EnsembleSearchResult {
  double value = 0;
  QuantumEnsemble ensemble;
};

// Lower bound on the private information by derivative-free local search
// over ensembles of at most input_dim^2 states. Deterministic given the
// seed; restarts are independent streams, so the result is monotone in
// `restarts` for a fixed seed.
EnsembleSearchResult p1_qcc_lower(const QccChannel& ch, int restarts, std::uint64_t seed,
                                  const NumericConfig& cfg = default_config());

struct AdditivityReport {
  double value1 = 0;
  double value2 = 0;
  double joint = 0;
  double gap = 0;  // joint - value1 - value2
  bool anomaly = false;
};

// Compares the best joint ensemble over ch1 (x) ch2 (possibly entangled
// two-qubit states) against the sum of the single-channel values. A gap
// above cfg.anomaly_tol is flagged for investigation, never treated as a
// disproof.
AdditivityReport additivity_probe(const QccChannel& ch1, const QccChannel& ch2, int restarts,
                                  std::uint64_t seed, const NumericConfig& cfg = default_config());

QccChannel tensor(const QccChannel& a, const QccChannel& b,
                  const NumericConfig& cfg = default_config());

// POVM from normalized random PSD decompositions of the identity, split into
// a 2x2 outcome grid.
QccChannel random_qcc_channel(std::uint64_t seed, int dim = 2, int elements = 4,
                              const NumericConfig& cfg = default_config());

// Basis measurement followed by classical reductions: Lambda^{y,z} =
// sum_x bob(y|x) charlie(z|x) |x><x|.
QccChannel measure_and_forward(const ClassicalChannel& bob, const ClassicalChannel& charlie,
                               const NumericConfig& cfg = default_config());

// Channel that ignores its input: Lambda^{y,z} = c_{y,z} * identity.
QccChannel input_ignoring_qcc(int dim, int ny, int nz,
                              const NumericConfig& cfg = default_config());

}  // namespace wiretap
