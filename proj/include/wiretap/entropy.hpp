#pragma once

#include <span>

#include "wiretap/channels.hpp"

namespace wiretap {

// Binary entropy in bits, with 0 log 0 = 0.
double h2(double p);

// Shannon entropy in bits of a nonnegative vector; values below cfg.eig_clip
// are treated as zero.
double shannon_entropy(std::span<const double> probs,
                       const NumericConfig& cfg = default_config());

double von_neumann_entropy(const DensityMatrix& rho,
                           const NumericConfig& cfg = default_config());

// I(X:B) - I(X:C) for the cq state induced by feeding px through both
// reductions of w.
double f_w(const WiretapChannel& w, const InputDistribution& px,
           const NumericConfig& cfg = default_config());

// H of Bob's average output minus H of Charlie's average output.
double g_w(const WiretapChannel& w, const InputDistribution& px,
           const NumericConfig& cfg = default_config());

// Central second difference of q -> f_w(w, (q, 1-q)). Binary input only.
// Steps below cfg.fd_min_step are rejected when strict is set.
double d2f_numeric(const WiretapChannel& w, double q, double step, bool strict = true,
                   const NumericConfig& cfg = default_config());

// Closed-form curvature of f for the bob family. This expression carries an
// overall factor of ln 2 relative to the bits-valued second derivative; its
// sign and zero set are what downstream code uses.
double d2f_bob_closed(double r, double q);

// Closed-form curvature of f for the eve family, in bits.
double d2f_eve_closed(double p, double q);

// Admixture eigenvalues of q|psi><psi| + (1-q)|phi><phi| for pure states with
// overlap f: (1 +- sqrt(1 - 4 q (1-q) (1-f^2))) / 2.
std::pair<double, double> pure_pair_mixture_eigenvalues(double f, double q);

struct SecondDerivativeReport {
  double q = 0;
  double closed_form = 0;        // bits
  double finite_difference = 0;  // bits, Richardson-refined central difference
  double step = 0;
};

SecondDerivativeReport bob_second_derivative_report(double r, double q, double step = 1e-4,
                                                    const NumericConfig& cfg = default_config());
SecondDerivativeReport eve_second_derivative_report(double p, double q, double step = 1e-4,
                                                    const NumericConfig& cfg = default_config());

}  // namespace wiretap
