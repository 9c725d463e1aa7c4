#include "wiretap/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wiretap/error.hpp"

namespace wiretap {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

double h2(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("h2 argument outside [0,1]");
  double s = 0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

double shannon_entropy(std::span<const double> probs, const NumericConfig& cfg) {
  double s = 0;
  for (double v : probs) {
    if (v > cfg.eig_clip) s -= v * std::log2(v);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, const NumericConfig& cfg) {
  if (rho.matrix().is_diagonal(0.0)) return shannon_entropy(rho.matrix().diagonal_real(), cfg);
  return shannon_entropy(hermitian_eigenvalues(rho.matrix(), cfg), cfg);
}

namespace {

// Holevo-style mutual information H(avg) - sum_x p(x) H(out_x).
double cq_mutual_information(const CqChannel& ch, const InputDistribution& px,
                             const NumericConfig& cfg) {
  double cond = 0;
  for (int x = 0; x < ch.input_size(); ++x)
    if (px[x] > 0.0) cond += px[x] * von_neumann_entropy(ch.output(x), cfg);
  return von_neumann_entropy(average_output(ch, px, cfg), cfg) - cond;
}

}  // namespace

double f_w(const WiretapChannel& w, const InputDistribution& px, const NumericConfig& cfg) {
  if (px.size() != w.input_size())
    throw ValidationError("input distribution size does not match the channel");
  return cq_mutual_information(w.bob(), px, cfg) - cq_mutual_information(w.charlie(), px, cfg);
}

double g_w(const WiretapChannel& w, const InputDistribution& px, const NumericConfig& cfg) {
  if (px.size() != w.input_size())
    throw ValidationError("input distribution size does not match the channel");
  return von_neumann_entropy(average_output(w.bob(), px, cfg), cfg) -
         von_neumann_entropy(average_output(w.charlie(), px, cfg), cfg);
}

double d2f_numeric(const WiretapChannel& w, double q, double step, bool strict,
                   const NumericConfig& cfg) {
  if (w.input_size() != 2) throw UnsupportedError("d2f_numeric needs a binary-input channel");
  if (step <= 0.0) throw DomainError("finite-difference step must be positive");
  if (strict && step < cfg.fd_min_step)
    throw DomainError("finite-difference step below " + std::to_string(cfg.fd_min_step) +
                      " is ill-conditioned");
  if (q - step <= 0.0 || q + step >= 1.0)
    throw DomainError("q +- step must stay inside (0,1)");
  auto f = [&](double qq) { return f_w(w, InputDistribution::binary(qq), cfg); };
  return (f(q + step) - 2.0 * f(q) + f(q - step)) / (step * step);
}

double d2f_bob_closed(double r, double q) {
  if (r <= 0.0 || r >= 1.0) throw DomainError("bob family curvature needs r in (0,1)");
  if (q <= 0.0 || q >= 1.0) throw DomainError("bob family curvature is singular at q in {0,1}");
  const double g = std::sqrt(1.0 - 4.0 * (1.0 - r * r) * q * (1.0 - q));
  const double one_minus_r = 1.0 - r;
  return (4.0 * one_minus_r * one_minus_r * one_minus_r * (1.0 + r) +
          (2.0 * r - 1.0) / ((1.0 - q) * q) -
          4.0 * r * r * (1.0 - r * r) * std::atanh(g) / g) /
         (g * g);
}

double d2f_eve_closed(double p, double q) {
  if (p <= 0.0 || p >= 0.5) throw DomainError("eve family curvature needs p in (0,0.5)");
  if (q <= 0.0 || q >= 1.0) throw DomainError("eve family curvature is singular at q in {0,1}");
  const double c = 1.0 - 16.0 * p * (1.0 - p) * q * (1.0 - q);
  const double sc = std::sqrt(c);
  const double om2p = 1.0 - 2.0 * p;
  const double term1 =
      om2p * om2p / ((q + p * (1.0 - 2.0 * q)) * (1.0 - q - p * (1.0 - 2.0 * q)));
  const double term2 =
      4.0 * p * (1.0 - p) * (1.0 - 2.0 * q) * (1.0 - 2.0 * q) / (c * (1.0 - q) * q);
  const double term3 =
      8.0 * om2p * om2p * p * (1.0 - p) * std::log((1.0 - sc) / (1.0 + sc)) / (c * sc);
  return -(term1 - term2 + term3) / kLn2;
}

std::pair<double, double> pure_pair_mixture_eigenvalues(double f, double q) {
  if (f < 0.0 || f > 1.0) throw DomainError("overlap outside [0,1]");
  if (q < 0.0 || q > 1.0) throw DomainError("weight outside [0,1]");
  const double g = std::sqrt(std::max(0.0, 1.0 - 4.0 * q * (1.0 - q) * (1.0 - f * f)));
  return {0.5 * (1.0 + g), 0.5 * (1.0 - g)};
}

namespace {

// Richardson-refined central difference: eliminates the h^2 truncation term,
// which otherwise dominates near the simplex boundary.
double d2_richardson(const WiretapChannel& w, double q, double step, const NumericConfig& cfg) {
  const double coarse = d2f_numeric(w, q, step, true, cfg);
  const double fine = d2f_numeric(w, q, 0.5 * step, true, cfg);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

SecondDerivativeReport bob_second_derivative_report(double r, double q, double step,
                                                    const NumericConfig& cfg) {
  SecondDerivativeReport rep;
  rep.q = q;
  rep.step = step;
  rep.closed_form = d2f_bob_closed(r, q) / kLn2;  // closed form carries ln 2
  rep.finite_difference = d2_richardson(bob_family(r), q, step, cfg);
  return rep;
}

SecondDerivativeReport eve_second_derivative_report(double p, double q, double step,
                                                    const NumericConfig& cfg) {
  SecondDerivativeReport rep;
  rep.q = q;
  rep.step = step;
  rep.closed_form = d2f_eve_closed(p, q);
  rep.finite_difference = d2_richardson(eve_family(p), q, step, cfg);
  return rep;
}

}  // namespace wiretap
