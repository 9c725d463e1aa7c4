#pragma once

#include <string>
#include <vector>

#include "wiretap/linalg.hpp"

namespace wiretap {

// Conditional probability table p(y|x), one row per input letter.
class ClassicalChannel {
 public:
  ClassicalChannel(int input_size, int output_size, std::vector<double> matrix,
                   const NumericConfig& cfg = default_config());

  int input_size() const { return in_; }
  int output_size() const { return out_; }
  double operator()(int x, int y) const { return m_[static_cast<std::size_t>(x) * out_ + y]; }
  std::span<const double> row(int x) const {
    return {m_.data() + static_cast<std::size_t>(x) * out_, static_cast<std::size_t>(out_)};
  }

 private:
  int in_, out_;
  std::vector<double> m_;
};

// Map from a finite classical alphabet to density matrices.
class CqChannel {
 public:
  explicit CqChannel(std::vector<DensityMatrix> outputs);

  int input_size() const { return static_cast<int>(outputs_.size()); }
  int output_dim() const { return outputs_[0].dim(); }
  const DensityMatrix& output(int x) const { return outputs_[static_cast<std::size_t>(x)]; }
  std::span<const DensityMatrix> outputs() const { return outputs_; }

 private:
  std::vector<DensityMatrix> outputs_;
};

class InputDistribution {
 public:
  explicit InputDistribution(std::vector<double> probabilities,
                             const NumericConfig& cfg = default_config());

  static InputDistribution uniform(int size);
  static InputDistribution point_mass(int size, int letter);
  static InputDistribution binary(double q);  // (q, 1-q)

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int x) const { return p_[static_cast<std::size_t>(x)]; }
  std::span<const double> probabilities() const { return p_; }

 private:
  std::vector<double> p_;
};

// Pair of reductions fed by a classically copied input.
class WiretapChannel {
 public:
  WiretapChannel(CqChannel bob, CqChannel charlie);

  int input_size() const { return bob_.input_size(); }
  const CqChannel& bob() const { return bob_; }
  const CqChannel& charlie() const { return charlie_; }

 private:
  CqChannel bob_;
  CqChannel charlie_;
};

// Named constructors.
ClassicalChannel bsc(double p);
ClassicalChannel bec(double p);  // 2x3; output letter 2 is the erasure symbol
CqChannel bpc(double f);         // |psi> = |0>, |phi> = f|0> + sqrt(1-f^2)|1>
CqChannel embed_classical(const ClassicalChannel& c);
WiretapChannel make_wiretap(CqChannel bob, CqChannel charlie);
WiretapChannel tensor_power(const WiretapChannel& w, int n,
                            const NumericConfig& cfg = default_config());

// The two channel families studied throughout: "bob" has the quantum
// legitimate receiver, "eve" the quantum adversary.
WiretapChannel bob_family(double r);  // BPC(r) / BEC((1-r)^2)
WiretapChannel eve_family(double p);  // BSC(p) / BPC(1-2p)

DensityMatrix average_output(const CqChannel& ch, const InputDistribution& px,
                             const NumericConfig& cfg = default_config());

// JSON channel description: {"bob": {...}, "charlie": {...}} where each
// reduction is {"kind":"bsc"|"bec"|"bpc","param":x} or
// {"kind":"cq","outputs":[[[ [re,im], ... ], ...], ...]}.
WiretapChannel channel_from_json(const std::string& text);
std::string channel_to_json(const WiretapChannel& w);

}  // namespace wiretap
