#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/error.hpp"

using namespace wiretap;

namespace {

// |<psi|phi>| for projector-form pure states
double overlap(const DensityMatrix& a, const DensityMatrix& b) {
  cx t = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
  return std::sqrt(std::max(0.0, t.real()));
}

}  // namespace

TEST_CASE("binary symmetric channel") {
  const ClassicalChannel id = bsc(0.0);
  CHECK(id(0, 0) == 1.0);
  CHECK(id(0, 1) == 0.0);
  CHECK(id(1, 1) == 1.0);

  const ClassicalChannel noise = bsc(0.5);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(noise(x, y) == 0.5);

  const ClassicalChannel c = bsc(0.1);
  CHECK(c(0, 0) == doctest::Approx(0.9));
  CHECK(c(0, 1) == doctest::Approx(0.1));
  CHECK(c(1, 0) == doctest::Approx(0.1));
  CHECK(c(1, 1) == doctest::Approx(0.9));

  CHECK_THROWS_AS(bsc(-0.1), DomainError);
  CHECK_THROWS_AS(bsc(1.1), DomainError);
}

TEST_CASE("binary erasure channel") {
  const ClassicalChannel lossless = bec(0.0);
  CHECK(lossless.output_size() == 3);
  CHECK(lossless(0, 0) == 1.0);
  CHECK(lossless(1, 1) == 1.0);
  CHECK(lossless(0, 2) == 0.0);

  const ClassicalChannel dead = bec(1.0);
  CHECK(dead(0, 2) == 1.0);
  CHECK(dead(1, 2) == 1.0);

  // the bob family's adversary at r = 1/2 erases with probability 1/4
  const double r = 0.5;
  const ClassicalChannel e = bec((1.0 - r) * (1.0 - r));
  CHECK(e(0, 2) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(bec(2.0), DomainError);
}

TEST_CASE("binary pure state channel") {
  const CqChannel orth = bpc(0.0);
  CHECK(orth.output(0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(orth.output(1)(1, 1).real() == doctest::Approx(1.0));

  const CqChannel same = bpc(1.0);
  CHECK(overlap(same.output(0), same.output(1)) == doctest::Approx(1.0).epsilon(1e-12));

  // the eve family's adversary at p = 0.1 has overlap 0.8
  const CqChannel eve = bpc(1.0 - 2.0 * 0.1);
  CHECK(overlap(eve.output(0), eve.output(1)) == doctest::Approx(0.8).epsilon(1e-12));

  CHECK_THROWS_AS(bpc(-0.2), DomainError);
}

TEST_CASE("bpc reproduces its overlap across the parameter range") {
  for (int k = 0; k <= 100; ++k) {
    const double f = k / 100.0;
    const CqChannel ch = bpc(f);
    CHECK(std::abs(overlap(ch.output(0), ch.output(1)) - f) <= 1e-12);
  }
}

TEST_CASE("classical embedding") {
  const CqChannel id = embed_classical(bsc(0.0));
  CHECK(id.output(0)(0, 0).real() == 1.0);
  CHECK(id.output(1)(1, 1).real() == 1.0);

  const CqChannel dead = embed_classical(bec(1.0));
  CHECK(dead.output(0)(2, 2).real() == 1.0);
  CHECK(dead.output(1)(2, 2).real() == 1.0);

  const CqChannel noisy = embed_classical(bsc(0.1));
  CHECK(noisy.output(0)(0, 0).real() == doctest::Approx(0.9));
  CHECK(noisy.output(0)(1, 1).real() == doctest::Approx(0.1));
}

TEST_CASE("wiretap composition checks input sizes") {
  CHECK_THROWS_AS(make_wiretap(bpc(0.5), CqChannel({projector(PureState::basis(2, 0))})),
                  ValidationError);
  const WiretapChannel same = make_wiretap(bpc(0.5), bpc(0.5));
  CHECK(same.input_size() == 2);
}

TEST_CASE("named families have the documented shapes") {
  const WiretapChannel bz = bob_family(0.5);
  CHECK(bz.bob().output_dim() == 2);
  CHECK(bz.charlie().output_dim() == 3);
  CHECK(bz.charlie().output(0)(2, 2).real() == doctest::Approx(0.25));

  const WiretapChannel yc = eve_family(0.1);
  CHECK(yc.bob().output_dim() == 2);
  CHECK(yc.bob().output(0).matrix().is_diagonal(0.0));
  CHECK(yc.charlie().output_dim() == 2);
}

TEST_CASE("tensor power bookkeeping") {
  const WiretapChannel w = bob_family(0.4);
  const WiretapChannel w1 = tensor_power(w, 1);
  for (int x = 0; x < 2; ++x) {
    std::span<const cx> a = w.bob().output(x).matrix().entries();
    std::span<const cx> b = w1.bob().output(x).matrix().entries();
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  }

  const WiretapChannel w2 = tensor_power(w, 2);
  CHECK(w2.input_size() == 4);
  CHECK(w2.bob().output_dim() == 4);
  CHECK(w2.charlie().output_dim() == 9);

  // cube of the eve family: the adversary sees 8-dimensional pure products
  const WiretapChannel y3 = tensor_power(eve_family(0.1), 3);
  CHECK(y3.input_size() == 8);
  for (int x = 0; x < 8; ++x) {
    const std::vector<double> ev = hermitian_eigenvalues(y3.charlie().output(x).matrix());
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev[1]) <= 1e-12);
  }

  NumericConfig cfg;
  cfg.dim_cap = 16;
  CHECK_THROWS_AS(tensor_power(bob_family(0.4), 3, cfg), SizeError);
}

TEST_CASE("average outputs are density matrices") {
  auto gen = testutil::rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const WiretapChannel w = testutil::random_binary_channel(gen, 3, 2);
    const double q = (trial + 1) / 12.0;
    const DensityMatrix avg = average_output(w.bob(), InputDistribution::binary(q));
    CHECK(avg.matrix().trace() == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> ev = hermitian_eigenvalues(avg.matrix());
    for (double v : ev) CHECK(v >= -1e-10);
  }
}

TEST_CASE("input distribution invariants") {
  CHECK_THROWS_AS(InputDistribution({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(InputDistribution({-0.1, 1.1}), ValidationError);
  const InputDistribution u = InputDistribution::uniform(4);
  CHECK(u[3] == doctest::Approx(0.25));
  const InputDistribution pm = InputDistribution::point_mass(3, 1);
  CHECK(pm[1] == 1.0);
}

TEST_CASE("json round trip stays within 1e-15 per entry") {
  const WiretapChannel original = eve_family(0.1);
  const WiretapChannel back = channel_from_json(channel_to_json(original));
  auto compare = [](const CqChannel& a, const CqChannel& b) {
    REQUIRE(a.input_size() == b.input_size());
    for (int x = 0; x < a.input_size(); ++x) {
      std::span<const cx> ea = a.output(x).matrix().entries();
      std::span<const cx> eb = b.output(x).matrix().entries();
      for (std::size_t k = 0; k < ea.size(); ++k) CHECK(std::abs(ea[k] - eb[k]) <= 1e-15);
    }
  };
  compare(original.bob(), back.bob());
  compare(original.charlie(), back.charlie());
}

TEST_CASE("json named kinds and errors") {
  const WiretapChannel w = channel_from_json(
      R"({"bob": {"kind": "bpc", "param": 0.5}, "charlie": {"kind": "bec", "param": 0.25}})");
  CHECK(w.bob().output_dim() == 2);
  CHECK(w.charlie().output_dim() == 3);

  CHECK_THROWS_AS(channel_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(channel_from_json(R"({"bob": {"kind": "bpc", "param": 0.5}})"), ParseError);
  CHECK_THROWS_AS(
      channel_from_json(
          R"({"bob": {"kind": "huh", "param": 0.5}, "charlie": {"kind": "bec", "param": 0.2}})"),
      ParseError);
  CHECK_THROWS_AS(
      channel_from_json(
          R"({"bob": {"kind": "bpc"}, "charlie": {"kind": "bec", "param": 0.2}})"),
      ParseError);
  // out-of-range parameter surfaces as a domain error, not a parse error
  CHECK_THROWS_AS(
      channel_from_json(
          R"({"bob": {"kind": "bpc", "param": 1.5}, "charlie": {"kind": "bec", "param": 0.2}})"),
      DomainError);
}
