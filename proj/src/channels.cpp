#include "wiretap/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <json.hpp>

#include "wiretap/error.hpp"

namespace wiretap {

ClassicalChannel::ClassicalChannel(int input_size, int output_size, std::vector<double> matrix,
                                   const NumericConfig& cfg)
    : in_(input_size), out_(output_size), m_(std::move(matrix)) {
  if (in_ <= 0 || out_ <= 0) throw ValidationError("channel sizes must be positive");
  if (m_.size() != static_cast<std::size_t>(in_) * out_)
    throw ValidationError("conditional probability table has wrong shape");
  for (int x = 0; x < in_; ++x) {
    double s = 0;
    for (int y = 0; y < out_; ++y) {
      const double v = m_[static_cast<std::size_t>(x) * out_ + y];
      if (v < -1e-15 || v > 1.0 + 1e-15)
        throw ValidationError("conditional probability outside [0,1]");
      s += v;
    }
    if (std::abs(s - 1.0) > cfg.norm_tol)
      throw ValidationError("row " + std::to_string(x) + " sums to " + std::to_string(s));
  }
}

CqChannel::CqChannel(std::vector<DensityMatrix> outputs) : outputs_(std::move(outputs)) {
  if (outputs_.empty()) throw ValidationError("cq channel needs at least one output");
  const int d = outputs_[0].dim();
  for (const DensityMatrix& m : outputs_)
    if (m.dim() != d) throw ValidationError("cq channel outputs differ in dimension");
}

InputDistribution::InputDistribution(std::vector<double> probabilities, const NumericConfig& cfg)
    : p_(std::move(probabilities)) {
  if (p_.empty()) throw ValidationError("input distribution must be nonempty");
  double s = 0;
  for (double v : p_) {
    if (v < -1e-15) throw ValidationError("negative input probability");
    s += v;
  }
  if (std::abs(s - 1.0) > cfg.norm_tol)
    throw ValidationError("input distribution sums to " + std::to_string(s));
}

InputDistribution InputDistribution::uniform(int size) {
  return InputDistribution(std::vector<double>(size, 1.0 / size));
}

InputDistribution InputDistribution::point_mass(int size, int letter) {
  std::vector<double> p(size, 0.0);
  p.at(static_cast<std::size_t>(letter)) = 1.0;
  return InputDistribution(std::move(p));
}

InputDistribution InputDistribution::binary(double q) {
  if (q < 0.0 || q > 1.0) throw DomainError("binary input weight outside [0,1]");
  return InputDistribution({q, 1.0 - q});
}

WiretapChannel::WiretapChannel(CqChannel bob, CqChannel charlie)
    : bob_(std::move(bob)), charlie_(std::move(charlie)) {
  if (bob_.input_size() != charlie_.input_size())
    throw ValidationError("wiretap reductions disagree on input size: " +
                          std::to_string(bob_.input_size()) + " vs " +
                          std::to_string(charlie_.input_size()));
}

ClassicalChannel bsc(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("BSC crossover probability outside [0,1]");
  return ClassicalChannel(2, 2, {1.0 - p, p, p, 1.0 - p});
}

ClassicalChannel bec(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("BEC erasure probability outside [0,1]");
  return ClassicalChannel(2, 3, {1.0 - p, 0.0, p, 0.0, 1.0 - p, p});
}

CqChannel bpc(double f) {
  if (f < 0.0 || f > 1.0) throw DomainError("BPC fidelity outside [0,1]");
  PureState psi = PureState::basis(2, 0);
  PureState phi({cx(f, 0.0), cx(std::sqrt(std::max(0.0, 1.0 - f * f)), 0.0)});
  return CqChannel({projector(psi), projector(phi)});
}

CqChannel embed_classical(const ClassicalChannel& c) {
  std::vector<DensityMatrix> outs;
  outs.reserve(static_cast<std::size_t>(c.input_size()));
  for (int x = 0; x < c.input_size(); ++x) outs.push_back(DensityMatrix::diagonal(c.row(x)));
  return CqChannel(std::move(outs));
}

WiretapChannel make_wiretap(CqChannel bob, CqChannel charlie) {
  return WiretapChannel(std::move(bob), std::move(charlie));
}

namespace {

CqChannel cq_tensor_power(const CqChannel& ch, int n, const NumericConfig& cfg) {
  const int k = ch.input_size();
  long long letters = 1;
  double dim = 1;
  for (int i = 0; i < n; ++i) {
    letters *= k;
    dim *= ch.output_dim();
  }
  if (dim > cfg.dim_cap)
    throw SizeError("tensor power output dimension " + std::to_string(static_cast<long long>(dim)) +
                    " exceeds the cap of " + std::to_string(cfg.dim_cap));
  std::vector<DensityMatrix> outs;
  outs.reserve(static_cast<std::size_t>(letters));
  for (long long s = 0; s < letters; ++s) {
    // digit order: the first factor is the most significant digit
    long long rem = s;
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(rem % k);
      rem /= k;
    }
    DensityMatrix acc = ch.output(digits[0]);
    for (int i = 1; i < n; ++i) acc = tensor(acc, ch.output(digits[static_cast<std::size_t>(i)]), cfg);
    outs.push_back(std::move(acc));
  }
  return CqChannel(std::move(outs));
}

}  // namespace

WiretapChannel tensor_power(const WiretapChannel& w, int n, const NumericConfig& cfg) {
  if (n < 1) throw DomainError("tensor power needs n >= 1");
  if (n == 1) return w;
  return WiretapChannel(cq_tensor_power(w.bob(), n, cfg), cq_tensor_power(w.charlie(), n, cfg));
}

WiretapChannel bob_family(double r) {
  if (r < 0.0 || r > 1.0) throw DomainError("bob family parameter outside [0,1]");
  return WiretapChannel(bpc(r), embed_classical(bec((1.0 - r) * (1.0 - r))));
}

WiretapChannel eve_family(double p) {
  if (p < 0.0 || p > 0.5) throw DomainError("eve family parameter outside [0,0.5]");
  return WiretapChannel(embed_classical(bsc(p)), bpc(1.0 - 2.0 * p));
}

DensityMatrix average_output(const CqChannel& ch, const InputDistribution& px,
                             const NumericConfig& cfg) {
  if (px.size() != ch.input_size())
    throw ValidationError("input distribution size does not match the channel");
  return mix(px.probabilities(), ch.outputs(), cfg);
}

namespace {

using nlohmann::json;

json reduction_to_json(const CqChannel& ch) {
  json outs = json::array();
  for (const DensityMatrix& m : ch.outputs()) {
    json mat = json::array();
    for (int i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      mat.push_back(std::move(row));
    }
    outs.push_back(std::move(mat));
  }
  return json{{"kind", "cq"}, {"outputs", std::move(outs)}};
}

CqChannel reduction_from_json(const json& j, const std::string& which) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("reduction '" + which + "' needs a string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "bsc" || kind == "bec" || kind == "bpc") {
    if (!j.contains("param") || !j["param"].is_number())
      throw ParseError("reduction '" + which + "' of kind '" + kind +
                       "' needs a numeric field 'param'");
    const double p = j["param"].get<double>();
    if (kind == "bsc") return embed_classical(bsc(p));
    if (kind == "bec") return embed_classical(bec(p));
    return bpc(p);
  }
  if (kind != "cq")
    throw ParseError("reduction '" + which + "' has unknown kind '" + kind + "'");
  if (!j.contains("outputs") || !j["outputs"].is_array() || j["outputs"].empty())
    throw ParseError("reduction '" + which + "' of kind 'cq' needs a nonempty 'outputs' array");
  std::vector<DensityMatrix> outs;
  for (const json& mat : j["outputs"]) {
    if (!mat.is_array() || mat.empty())
      throw ParseError("reduction '" + which + "': each output must be a square matrix");
    const int d = static_cast<int>(mat.size());
    std::vector<cx> e;
    e.reserve(static_cast<std::size_t>(d) * d);
    for (const json& row : mat) {
      if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw ParseError("reduction '" + which + "': output matrix is not square");
      for (const json& ent : row) {
        if (!ent.is_array() || ent.size() != 2 || !ent[0].is_number() || !ent[1].is_number())
          throw ParseError("reduction '" + which + "': matrix entries must be [re, im] pairs");
        e.emplace_back(ent[0].get<double>(), ent[1].get<double>());
      }
    }
    try {
      outs.emplace_back(HermitianMatrix(d, std::move(e)));
    } catch (const Error& err) {
      throw ParseError("reduction '" + which + "': " + err.what());
    }
  }
  return CqChannel(std::move(outs));
}

}  // namespace

WiretapChannel channel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("bob") || !j.contains("charlie"))
    throw ParseError("channel description needs 'bob' and 'charlie' reductions");
  return WiretapChannel(reduction_from_json(j["bob"], "bob"),
                        reduction_from_json(j["charlie"], "charlie"));
}

std::string channel_to_json(const WiretapChannel& w) {
  json j{{"bob", reduction_to_json(w.bob())}, {"charlie", reduction_to_json(w.charlie())}};
  return j.dump();
}

}  // namespace wiretap
