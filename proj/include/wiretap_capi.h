/* C interface to the wiretap-channel analysis library.
 *
 * All functions return a wtl_status; outputs are written through pointers
 * only on WTL_OK. A human-readable message for the most recent failure on
 * the calling thread is available from wtl_last_error(). Heap objects are
 * released with their matching wtl_*_free function.
 */
#ifndef WIRETAP_CAPI_H
#define WIRETAP_CAPI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WTL_API __declspec(dllexport)
#else
#define WTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wtl_status {
  WTL_OK = 0,
  WTL_ERR_VALIDATION = 1,
  WTL_ERR_DOMAIN = 2,
  WTL_ERR_SIZE = 3,
  WTL_ERR_PARSE = 4,
  WTL_ERR_UNSUPPORTED = 5,
  WTL_ERR_SOLVER = 6,
  WTL_ERR_IO = 7,
  WTL_ERR_INTERNAL = 8,
} wtl_status;

WTL_API const char* wtl_version(void);
WTL_API const char* wtl_status_name(wtl_status status);
/* Message for the last failing call on this thread; empty string if none. */
WTL_API const char* wtl_last_error(void);

/* ---- channels ---------------------------------------------------------- */

typedef struct wtl_channel wtl_channel;

/* BPC(r) to Bob, BEC((1-r)^2) to Charlie. */
WTL_API wtl_status wtl_channel_bob_family(double r, wtl_channel** out);
/* BSC(p) to Bob, BPC(1-2p) to Charlie. */
WTL_API wtl_status wtl_channel_eve_family(double p, wtl_channel** out);
/* JSON description: {"bob": {...}, "charlie": {...}}. */
WTL_API wtl_status wtl_channel_from_json(const char* json_text, wtl_channel** out);
WTL_API wtl_status wtl_channel_to_json(const wtl_channel* ch, char** out_text);
WTL_API void wtl_channel_free(wtl_channel* ch);
WTL_API void wtl_string_free(char* text);
WTL_API int wtl_channel_input_size(const wtl_channel* ch);

/* ---- private information ------------------------------------------------ */

/* f_W at the input distribution px (length len). */
WTL_API wtl_status wtl_f_w(const wtl_channel* ch, const double* px, int len, double* out);
WTL_API wtl_status wtl_p0(const wtl_channel* ch, double* value, double* q_star);
/* Private information of a binary-input channel; q_star is the gap argmax. */
WTL_API wtl_status wtl_p1(const wtl_channel* ch, double* value, double* q_star);
WTL_API wtl_status wtl_upper_bound(const wtl_channel* ch, double* out);

/* Ternary flags: 1 = yes, 0 = no, -1 = undetermined. Witness fields are NaN
 * when absent. Fidelities are (source, target) pairs of the degradability
 * comparison, NaN when undetermined. */
typedef struct wtl_classification {
  int more_capable;
  int anti_more_capable;
  int less_noisy;
  int anti_less_noisy;
  int degradable;
  int anti_degradable;
  double more_capable_witness_q;
  double anti_more_capable_witness_q;
  double less_noisy_witness_q;
  double anti_less_noisy_witness_q;
  double degradable_fidelity_source;
  double degradable_fidelity_target;
  double anti_degradable_fidelity_source;
  double anti_degradable_fidelity_target;
} wtl_classification;

WTL_API wtl_status wtl_classify(const wtl_channel* ch, wtl_classification* out);

/* Kinds: "bob_less_noisy", "bob_more_capable", "bob_degradable",
 * "eve_less_noisy", "eve_degradable". */
WTL_API wtl_status wtl_threshold(const char* kind, double* out);

/* ---- preprocessing rates ------------------------------------------------ */

WTL_API wtl_status wtl_parity_rate(double r, double* rate, double* q_star);

typedef struct wtl_rep_breakdown {
  double bob_term;
  double charlie_term;
  double rate;
} wtl_rep_breakdown;

WTL_API wtl_status wtl_repcode_rate(double p, double q, int n, wtl_rep_breakdown* out);
/* Maximizes the uniform-input repetition rate over the noise rate q. */
WTL_API wtl_status wtl_rep_best_uniform_rate(double p, int n, double* rate, double* q_star);
/* Maximizes the composed channel's private information / n over q. */
WTL_API wtl_status wtl_rep_private_rate(double p, int n, double* rate, double* q_star);

/* Families: "bob_n1", "bob_n2_parity", "eve_n1", "eve_n3_rep". Arrays of
 * length *count are allocated for params/rates/q_stars (pass NULL to skip
 * q_stars); free them with wtl_vector_free. threads <= 0 selects the
 * hardware default, capped by WIRETAP_LAB_THREADS. */
WTL_API wtl_status wtl_rate_curve(const char* family, double lo, double hi, double step,
                                  int threads, double** params, double** rates, double** q_stars,
                                  int* count);
WTL_API void wtl_vector_free(double* data);

/* Zero crossing of a computed curve; *found is 0 when the curve does not
 * cross inside the sampled range. */
WTL_API wtl_status wtl_curve_zero_crossing(const char* family, const double* params,
                                           const double* rates, int count, double* crossing,
                                           int* found);

/* Writes "x y" pairs in shortest round-trip decimal form, atomically. */
WTL_API wtl_status wtl_write_dat(const char* path, const double* params, const double* rates,
                                 int count);

/* ---- additivity probe --------------------------------------------------- */

/* Self-pairs `count` seeded random qubit qcc channels and reports each
 * additivity gap (array of length count) plus the maximum. */
WTL_API wtl_status wtl_additivity_scan(uint64_t seed, int restarts, int count, double* gaps,
                                       double* max_gap);

/* Probe a single pair built from two seeded random channels. */
WTL_API wtl_status wtl_additivity_probe_random(uint64_t seed1, uint64_t seed2, int restarts,
                                               uint64_t search_seed, double* value1,
                                               double* value2, double* joint, double* gap);

#ifdef __cplusplus
}
#endif

#endif /* WIRETAP_CAPI_H */
