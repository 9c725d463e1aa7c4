#pragma once

#include <optional>
#include <utility>

#include "wiretap/channels.hpp"

namespace wiretap {

// Fast evaluator for q -> f_w(w, (q, 1-q)). Conditional output entropies are
// cached; only the average-output entropies depend on q.
class BinaryFSection {
 public:
  explicit BinaryFSection(const WiretapChannel& w, const NumericConfig& cfg = default_config());
  double operator()(double q) const;

 private:
  struct Side {
    std::vector<cx> out0, out1;        // dense complex outputs
    std::vector<double> rout0, rout1;  // dense real-symmetric or diagonal outputs
    int dim = 0;
    bool diagonal = false;
    bool real = false;
    double h_cond0 = 0, h_cond1 = 0;
  };
  double side_term(const Side& s, double q) const;
  Side bob_, charlie_;
  const NumericConfig* cfg_;
};

struct EnvelopeResult {
  std::vector<double> grid;      // q samples
  std::vector<double> f_values;  // f on the grid
  std::vector<double> envelope;  // lower convex envelope on the grid
  double gap_argmax = 0;         // refined argmax of f - envelope
  double p1 = 0;
  double support_left = 0;   // refined support points of the envelope segment
  double support_right = 1;  // under gap_argmax
};

// V = X restriction: max over the input simplex of f. Binary inputs only.
std::pair<double, InputDistribution> p0(const WiretapChannel& w,
                                        const NumericConfig& cfg = default_config());

// Private information of a binary-input channel via the lower convex
// envelope of f.
EnvelopeResult p1_binary(const WiretapChannel& w, const NumericConfig& cfg = default_config());

// max f - min f over the simplex.
double upper_bound(const WiretapChannel& w, const NumericConfig& cfg = default_config());

enum class Ternary { yes, no, undetermined };
const char* ternary_name(Ternary t);

struct ClassificationReport {
  Ternary more_capable = Ternary::undetermined;
  Ternary anti_more_capable = Ternary::undetermined;
  Ternary less_noisy = Ternary::undetermined;
  Ternary anti_less_noisy = Ternary::undetermined;
  Ternary degradable = Ternary::undetermined;
  Ternary anti_degradable = Ternary::undetermined;

  // witnesses for "no" verdicts
  std::optional<double> more_capable_witness_q;       // f(q) < -band
  std::optional<double> anti_more_capable_witness_q;  // f(q) > band
  std::optional<double> less_noisy_witness_q;         // curvature > band
  std::optional<double> anti_less_noisy_witness_q;    // curvature < -band
  // (source fidelity, target fidelity) whenever the flag is determined
  std::optional<std::pair<double, double>> degradable_fidelities;
  std::optional<std::pair<double, double>> anti_degradable_fidelities;
};

ClassificationReport classify(const WiretapChannel& w,
                              const NumericConfig& cfg = default_config());

enum class ThresholdKind {
  bob_less_noisy,
  bob_more_capable,
  bob_degradable,
  eve_less_noisy,
  eve_degradable,
};

const char* threshold_kind_name(ThresholdKind k);
std::optional<ThresholdKind> threshold_kind_from_name(const std::string& name);

// Channel-parameter thresholds of the two families. The curvature thresholds
// are solved by bisection; the degradability ones are closed-form radicals.
double solve_threshold(ThresholdKind kind, const NumericConfig& cfg = default_config());

}  // namespace wiretap
