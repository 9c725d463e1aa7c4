#pragma once

#include <string>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/private_info.hpp"

namespace wiretap {

// Classical encoder prepended to a block of channel uses: a stochastic map
// from one logical bit to n-bit strings.
struct Preprocessor {
  int logical_size = 2;
  int block_length = 1;
  ClassicalChannel map;  // 2 x 2^n
};

Preprocessor parity_preprocessor();
Preprocessor repetition_noise_preprocessor(int n, double q);

// The block channel W^(x) n preceded by the encoder, collapsed back to a
// binary-input wiretap channel.
WiretapChannel compose(const Preprocessor& pre, const WiretapChannel& w,
                       const NumericConfig& cfg = default_config());

struct ParityRate {
  double rate = 0;    // per channel use
  double q_star = 0;  // optimal noisy-preprocessing weight
};

// Achievable rate of the n=2 parity scheme on the bob family, equal to half
// the private information of the composed channel.
ParityRate parity_rate(double r, const NumericConfig& cfg = default_config());

struct RepRateBreakdown {
  double bob_term = 0;      // 1 - sum_s p(s) H(W|S=s)
  double charlie_term = 0;  // H(mixture) - n H(rho_pq)
  double rate = 0;          // (bob_term - charlie_term) / n
};

// Repetition-plus-noise rate at a uniform logical input, evaluated from the
// syndrome decomposition and a dense block-state entropy.
RepRateBreakdown repcode_rate(double p, double q, int n,
                              const NumericConfig& cfg = default_config());

struct RepPrivateRate {
  double rate = 0;    // per channel use
  double q_star = 0;  // optimal noise rate
};

// max over q of the repetition-composed channel's private information / n.
// This is the quantity the eve-family comparison curves plot; the uniform
//-input breakdown above lower-bounds it.
RepPrivateRate rep_private_rate(double p, int n, const NumericConfig& cfg = default_config());

// max over q of repcode_rate(p, q, n).rate.
RepPrivateRate rep_best_uniform_rate(double p, int n,
                                     const NumericConfig& cfg = default_config());

// Single-use Charlie state of the noisy repetition block.
DensityMatrix rep_charlie_state(double p, double q);

enum class CurveFamily { bob_n1, bob_n2_parity, eve_n1, eve_n3_rep };
const char* curve_family_name(CurveFamily f);
std::optional<CurveFamily> curve_family_from_name(const std::string& name);

struct CurvePoint {
  double param = 0;
  double rate = 0;
  double q_star = 0;  // inner optimum for preprocessed families, else 0.5
};

// Rates on an inclusive parameter grid. Points are evaluated concurrently
// when threads > 1 and assembled by index.
std::vector<CurvePoint> rate_curve(CurveFamily family, double lo, double hi, double step,
                                   int threads = 0, const NumericConfig& cfg = default_config());

// Parameter where the curve's rate falls below 1e-12, refined by bisection
// between the bracketing grid points. Empty when the curve never crosses.
std::optional<double> curve_zero_crossing(CurveFamily family, const std::vector<CurvePoint>& pts,
                                          const NumericConfig& cfg = default_config());

// ASCII plot data, one "x y" pair per line, shortest round-trip formatting.
// Written atomically (temp file + rename).
void write_dat(const std::string& path, const std::vector<CurvePoint>& pts);
std::string format_shortest(double v);

}  // namespace wiretap
