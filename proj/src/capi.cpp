#include "wiretap_capi.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "wiretap/additivity.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/entropy.hpp"
#include "wiretap/error.hpp"
#include "wiretap/preprocessing.hpp"
#include "wiretap/private_info.hpp"

struct wtl_channel {
  wiretap::WiretapChannel ch;
};

namespace {

thread_local std::string g_last_error;

wtl_status status_of(wiretap::ErrorCategory c) {
  using wiretap::ErrorCategory;
  switch (c) {
    case ErrorCategory::validation: return WTL_ERR_VALIDATION;
    case ErrorCategory::domain: return WTL_ERR_DOMAIN;
    case ErrorCategory::size: return WTL_ERR_SIZE;
    case ErrorCategory::parse: return WTL_ERR_PARSE;
    case ErrorCategory::unsupported: return WTL_ERR_UNSUPPORTED;
    case ErrorCategory::solver: return WTL_ERR_SOLVER;
    case ErrorCategory::io: return WTL_ERR_IO;
    case ErrorCategory::internal: return WTL_ERR_INTERNAL;
  }
  return WTL_ERR_INTERNAL;
}

template <typename Fn>
wtl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return WTL_OK;
  } catch (const wiretap::Error& e) {
    g_last_error = e.what();
    return status_of(e.category());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WTL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WTL_ERR_INTERNAL;
  }
}

double* copy_out(const std::vector<double>& v) {
  double* out = new double[v.size()];
  std::memcpy(out, v.data(), v.size() * sizeof(double));
  return out;
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int ternary_int(wiretap::Ternary t) {
  switch (t) {
    case wiretap::Ternary::yes: return 1;
    case wiretap::Ternary::no: return 0;
    case wiretap::Ternary::undetermined: return -1;
  }
  return -1;
}

}  // namespace

extern "C" {

const char* wtl_version(void) { return "1.0.0"; }

const char* wtl_status_name(wtl_status status) {
  switch (status) {
    case WTL_OK: return "ok";
    case WTL_ERR_VALIDATION: return "validation";
    case WTL_ERR_DOMAIN: return "domain";
    case WTL_ERR_SIZE: return "size";
    case WTL_ERR_PARSE: return "parse";
    case WTL_ERR_UNSUPPORTED: return "unsupported";
    case WTL_ERR_SOLVER: return "solver";
    case WTL_ERR_IO: return "io";
    case WTL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* wtl_last_error(void) { return g_last_error.c_str(); }

wtl_status wtl_channel_bob_family(double r, wtl_channel** out) {
  return guarded([&] { *out = new wtl_channel{wiretap::bob_family(r)}; });
}

wtl_status wtl_channel_eve_family(double p, wtl_channel** out) {
  return guarded([&] { *out = new wtl_channel{wiretap::eve_family(p)}; });
}

wtl_status wtl_channel_from_json(const char* json_text, wtl_channel** out) {
  return guarded([&] {
    if (json_text == nullptr) throw wiretap::ParseError("null channel description");
    *out = new wtl_channel{wiretap::channel_from_json(json_text)};
  });
}

wtl_status wtl_channel_to_json(const wtl_channel* ch, char** out_text) {
  return guarded([&] {
    const std::string text = wiretap::channel_to_json(ch->ch);
    *out_text = new char[text.size() + 1];
    std::memcpy(*out_text, text.c_str(), text.size() + 1);
  });
}

void wtl_channel_free(wtl_channel* ch) { delete ch; }
void wtl_string_free(char* text) { delete[] text; }
void wtl_vector_free(double* data) { delete[] data; }

int wtl_channel_input_size(const wtl_channel* ch) { return ch->ch.input_size(); }

wtl_status wtl_f_w(const wtl_channel* ch, const double* px, int len, double* out) {
  return guarded([&] {
    std::vector<double> p(px, px + len);
    *out = wiretap::f_w(ch->ch, wiretap::InputDistribution(std::move(p)));
  });
}

wtl_status wtl_p0(const wtl_channel* ch, double* value, double* q_star) {
  return guarded([&] {
    const auto [v, dist] = wiretap::p0(ch->ch);
    *value = v;
    if (q_star) *q_star = dist[0];
  });
}

wtl_status wtl_p1(const wtl_channel* ch, double* value, double* q_star) {
  return guarded([&] {
    const wiretap::EnvelopeResult res = wiretap::p1_binary(ch->ch);
    *value = res.p1;
    if (q_star) *q_star = res.gap_argmax;
  });
}

wtl_status wtl_upper_bound(const wtl_channel* ch, double* out) {
  return guarded([&] { *out = wiretap::upper_bound(ch->ch); });
}

wtl_status wtl_classify(const wtl_channel* ch, wtl_classification* out) {
  return guarded([&] {
    const wiretap::ClassificationReport rep = wiretap::classify(ch->ch);
    out->more_capable = ternary_int(rep.more_capable);
    out->anti_more_capable = ternary_int(rep.anti_more_capable);
    out->less_noisy = ternary_int(rep.less_noisy);
    out->anti_less_noisy = ternary_int(rep.anti_less_noisy);
    out->degradable = ternary_int(rep.degradable);
    out->anti_degradable = ternary_int(rep.anti_degradable);
    out->more_capable_witness_q = rep.more_capable_witness_q.value_or(kNan);
    out->anti_more_capable_witness_q = rep.anti_more_capable_witness_q.value_or(kNan);
    out->less_noisy_witness_q = rep.less_noisy_witness_q.value_or(kNan);
    out->anti_less_noisy_witness_q = rep.anti_less_noisy_witness_q.value_or(kNan);
    out->degradable_fidelity_source = rep.degradable_fidelities ? rep.degradable_fidelities->first : kNan;
    out->degradable_fidelity_target = rep.degradable_fidelities ? rep.degradable_fidelities->second : kNan;
    out->anti_degradable_fidelity_source =
        rep.anti_degradable_fidelities ? rep.anti_degradable_fidelities->first : kNan;
    out->anti_degradable_fidelity_target =
        rep.anti_degradable_fidelities ? rep.anti_degradable_fidelities->second : kNan;
  });
}

wtl_status wtl_threshold(const char* kind, double* out) {
  return guarded([&] {
    if (kind == nullptr) throw wiretap::DomainError("null threshold kind");
    const auto k = wiretap::threshold_kind_from_name(kind);
    if (!k)
      throw wiretap::DomainError("unknown threshold kind '" + std::string(kind) +
                                 "'; expected bob_less_noisy, bob_more_capable, bob_degradable, "
                                 "eve_less_noisy or eve_degradable");
    *out = wiretap::solve_threshold(*k);
  });
}

wtl_status wtl_parity_rate(double r, double* rate, double* q_star) {
  return guarded([&] {
    const wiretap::ParityRate res = wiretap::parity_rate(r);
    *rate = res.rate;
    if (q_star) *q_star = res.q_star;
  });
}

wtl_status wtl_repcode_rate(double p, double q, int n, wtl_rep_breakdown* out) {
  return guarded([&] {
    const wiretap::RepRateBreakdown res = wiretap::repcode_rate(p, q, n);
    out->bob_term = res.bob_term;
    out->charlie_term = res.charlie_term;
    out->rate = res.rate;
  });
}

wtl_status wtl_rep_best_uniform_rate(double p, int n, double* rate, double* q_star) {
  return guarded([&] {
    const wiretap::RepPrivateRate res = wiretap::rep_best_uniform_rate(p, n);
    *rate = res.rate;
    if (q_star) *q_star = res.q_star;
  });
}

wtl_status wtl_rep_private_rate(double p, int n, double* rate, double* q_star) {
  return guarded([&] {
    const wiretap::RepPrivateRate res = wiretap::rep_private_rate(p, n);
    *rate = res.rate;
    if (q_star) *q_star = res.q_star;
  });
}

wtl_status wtl_rate_curve(const char* family, double lo, double hi, double step, int threads,
                          double** params, double** rates, double** q_stars, int* count) {
  return guarded([&] {
    if (family == nullptr) throw wiretap::DomainError("null curve family");
    const auto fam = wiretap::curve_family_from_name(family);
    if (!fam)
      throw wiretap::DomainError("unknown curve family '" + std::string(family) +
                                 "'; expected bob_n1, bob_n2_parity, eve_n1 or eve_n3_rep");
    const std::vector<wiretap::CurvePoint> pts = wiretap::rate_curve(*fam, lo, hi, step, threads);
    std::vector<double> xs, ys, qs;
    xs.reserve(pts.size());
    ys.reserve(pts.size());
    qs.reserve(pts.size());
    for (const wiretap::CurvePoint& p : pts) {
      xs.push_back(p.param);
      ys.push_back(p.rate);
      qs.push_back(p.q_star);
    }
    *params = copy_out(xs);
    *rates = copy_out(ys);
    if (q_stars) *q_stars = copy_out(qs);
    *count = static_cast<int>(pts.size());
  });
}

wtl_status wtl_curve_zero_crossing(const char* family, const double* params, const double* rates,
                                   int count, double* crossing, int* found) {
  return guarded([&] {
    if (family == nullptr) throw wiretap::DomainError("null curve family");
    const auto fam = wiretap::curve_family_from_name(family);
    if (!fam) throw wiretap::DomainError("unknown curve family '" + std::string(family) + "'");
    std::vector<wiretap::CurvePoint> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      pts[static_cast<std::size_t>(i)].param = params[i];
      pts[static_cast<std::size_t>(i)].rate = rates[i];
    }
    const auto c = wiretap::curve_zero_crossing(*fam, pts);
    *found = c.has_value() ? 1 : 0;
    *crossing = c.value_or(kNan);
  });
}

wtl_status wtl_write_dat(const char* path, const double* params, const double* rates, int count) {
  return guarded([&] {
    if (path == nullptr) throw wiretap::IoError("null output path");
    std::vector<wiretap::CurvePoint> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      pts[static_cast<std::size_t>(i)].param = params[i];
      pts[static_cast<std::size_t>(i)].rate = rates[i];
    }
    wiretap::write_dat(path, pts);
  });
}

wtl_status wtl_additivity_scan(uint64_t seed, int restarts, int count, double* gaps,
                               double* max_gap) {
  return guarded([&] {
    if (count < 1) throw wiretap::DomainError("additivity scan needs count >= 1");
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
      const uint64_t channel_seed = seed + static_cast<uint64_t>(i);
      const wiretap::QccChannel ch = wiretap::random_qcc_channel(channel_seed);
      const wiretap::AdditivityReport rep =
          wiretap::additivity_probe(ch, ch, restarts, channel_seed);
      if (gaps) gaps[i] = rep.gap;
      worst = std::max(worst, rep.gap);
    }
    *max_gap = worst;
  });
}

wtl_status wtl_additivity_probe_random(uint64_t seed1, uint64_t seed2, int restarts,
                                       uint64_t search_seed, double* value1, double* value2,
                                       double* joint, double* gap) {
  return guarded([&] {
    const wiretap::QccChannel ch1 = wiretap::random_qcc_channel(seed1);
    const wiretap::QccChannel ch2 = wiretap::random_qcc_channel(seed2);
    const wiretap::AdditivityReport rep =
        wiretap::additivity_probe(ch1, ch2, restarts, search_seed);
    *value1 = rep.value1;
    *value2 = rep.value2;
    *joint = rep.joint;
    *gap = rep.gap;
  });
}

}  // extern "C"
