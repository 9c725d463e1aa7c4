#pragma once

namespace wiretap {

// Central record for every numeric tolerance and size cap used by the
// library. Values here are defaults; callers that need different trade-offs
// pass their own copy.
struct NumericConfig {
  // linear algebra
  double hermitian_tol = 1e-12;    // |a_ij - conj(a_ji)| admitted on input
  double trace_tol = 1e-10;        // |tr(rho) - 1| for density matrices
  double psd_floor = -1e-10;       // smallest admissible eigenvalue
  double norm_tol = 1e-12;         // | ||v||^2 - 1 | for pure states
  double jacobi_off_tol = 1e-13;   // off-diagonal Frobenius target
  int jacobi_max_sweeps = 64;
  int dim_cap = 4096;              // largest dense dimension (12 qubits)

  // entropies and derivatives
  double eig_clip = 1e-14;         // eigenvalues below this are treated as 0
  double fd_step = 1e-4;           // default central-difference step
  double fd_min_step = 1e-7;       // smaller steps are rejected in strict mode

  // simplex scans and classification
  int grid_points = 4097;          // f(q) sample count on [0,1]
  int curvature_grid = 513;        // grid for convexity classification
  double zero_band = 1e-9;         // |f| band for (anti-)more-capable flags
  double curvature_band = 1e-7;    // second-derivative band for (anti-)less-noisy
  double fidelity_tol = 1e-12;     // slack in the degradability comparison
  double purity_tol = 1e-10;       // rank-1 test for degradability flags

  // solvers
  double bisect_width = 1e-10;     // threshold root bracket width
  double golden_tol = 1e-12;       // golden-section interval width in q

  // preprocessing
  int rep_n_cap = 12;              // dense Charlie term cap
  double rep_q_step = 0.005;       // coarse q grid for rate optimization
  double rep_q_refine = 1e-6;      // golden refinement width in q

  // ensemble search
  int nm_restarts = 64;
  int nm_max_iters = 2000;
  double nm_tol = 1e-9;            // simplex spread termination
  double anomaly_tol = 1e-4;       // additivity gap treated as an anomaly
};

const NumericConfig& default_config();

}  // namespace wiretap
