#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wiretap/additivity.hpp"
#include "wiretap/entropy.hpp"
#include "wiretap/error.hpp"
#include "wiretap/private_info.hpp"

using namespace wiretap;

namespace {

WiretapChannel classical_counterpart(const ClassicalChannel& bob, const ClassicalChannel& charlie) {
  return make_wiretap(embed_classical(bob), embed_classical(charlie));
}

}  // namespace

TEST_CASE("povm validation") {
  // does not sum to the identity
  std::vector<HermitianMatrix> short_povm{HermitianMatrix::identity(2).scaled(0.4),
                                          HermitianMatrix::identity(2).scaled(0.4)};
  CHECK_THROWS_AS(QccChannel(2, 2, 1, std::move(short_povm)), ValidationError);

  // negative element
  std::vector<HermitianMatrix> neg{HermitianMatrix::diagonal(std::vector<double>{1.5, 0.5}),
                                   HermitianMatrix::diagonal(std::vector<double>{-0.5, 0.5})};
  CHECK_THROWS_AS(QccChannel(2, 2, 1, std::move(neg)), ValidationError);

  CHECK_NOTHROW(input_ignoring_qcc(2, 2, 2));
  CHECK_NOTHROW(random_qcc_channel(5));
}

TEST_CASE("f_qcc basics") {
  const QccChannel ch = random_qcc_channel(7);
  auto gen = testutil::rng(51);

  // pure inputs make X deterministic
  for (int trial = 0; trial < 5; ++trial)
    CHECK(std::abs(f_qcc(ch, projector(testutil::random_pure(2, gen)))) <= 1e-10);

  // input-ignoring channels carry nothing
  const QccChannel blind = input_ignoring_qcc(2, 2, 2);
  for (int trial = 0; trial < 5; ++trial)
    CHECK(std::abs(f_qcc(blind, testutil::random_density(2, gen))) <= 1e-10);
}

TEST_CASE("f_qcc matches the classical path on diagonal states") {
  const ClassicalChannel to_bob = bsc(0.1);
  const ClassicalChannel to_charlie = bec(0.3);
  const QccChannel measured = measure_and_forward(to_bob, to_charlie);
  const WiretapChannel classical = classical_counterpart(to_bob, to_charlie);
  for (double q : {0.1, 0.3, 0.5, 0.8}) {
    const DensityMatrix rho = DensityMatrix::diagonal(std::vector<double>{q, 1.0 - q});
    CHECK(f_qcc(measured, rho) ==
          doctest::Approx(f_w(classical, InputDistribution::binary(q))).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("f_qcc is gauge invariant") {
  const QccChannel ch = random_qcc_channel(11);
  auto gen = testutil::rng(52);
  // any eigenvector matrix of a random Hermitian is a unitary
  const EigenSystem es = hermitian_eig(testutil::random_hermitian(2, gen));
  auto conjugate = [&](const HermitianMatrix& m) {
    std::vector<cx> out(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cx s = 0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            s += std::conj(es.vector_entry(a, i)) * m(a, b) * es.vector_entry(b, j);
        out[static_cast<std::size_t>(i) * 2 + j] = s;
      }
    return HermitianMatrix(2, std::move(out));
  };
  std::vector<HermitianMatrix> povm;
  for (int y = 0; y < ch.bob_outputs(); ++y)
    for (int z = 0; z < ch.charlie_outputs(); ++z) povm.push_back(conjugate(ch.element(y, z)));
  const QccChannel rotated(2, ch.bob_outputs(), ch.charlie_outputs(), std::move(povm));

  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = testutil::random_density(2, gen);
    const DensityMatrix rho_rot =
        DensityMatrix::unchecked(conjugate(rho.matrix()));
    CHECK(f_qcc(ch, rho) == doctest::Approx(f_qcc(rotated, rho_rot)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("ensemble search finds the classical envelope value") {
  // eavesdropper strictly better: the classical private information is zero,
  // and no quantum-input ensemble may pretend otherwise
  {
    const QccChannel measured = measure_and_forward(bsc(0.1), bec(0.3));
    const double classical_p1 = p1_binary(classical_counterpart(bsc(0.1), bec(0.3))).p1;
    CHECK(classical_p1 <= 1e-9);
    const EnsembleSearchResult res = p1_qcc_lower(measured, 24, 99);
    CHECK(std::abs(res.value - classical_p1) <= 1e-4);
  }
  // legitimate receiver strictly better: the search has to actually reach the
  // envelope value
  {
    const QccChannel measured = measure_and_forward(bsc(0.1), bec(0.8));
    const double classical_p1 = p1_binary(classical_counterpart(bsc(0.1), bec(0.8))).p1;
    CHECK(classical_p1 > 0.3);
    const EnsembleSearchResult res = p1_qcc_lower(measured, 24, 99);
    CHECK(std::abs(res.value - classical_p1) <= 1e-4);

    // feasibility of the reported ensemble
    double wsum = 0;
    for (double w : res.ensemble.weights) {
      CHECK(w >= 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("ensemble search dominates any fixed two-point ensemble") {
  const QccChannel ch = random_qcc_channel(21);
  const EnsembleSearchResult res = p1_qcc_lower(ch, 16, 5);
  CHECK(res.value >= -1e-12);

  const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.2, 0.8});
  const DensityMatrix b = DensityMatrix::diagonal(std::vector<double>{0.8, 0.2});
  const DensityMatrix avg = mix(std::vector<double>{0.5, 0.5}, std::vector<DensityMatrix>{a, b});
  const double two_point =
      f_qcc(ch, avg) - 0.5 * f_qcc(ch, a) - 0.5 * f_qcc(ch, b);
  CHECK(res.value >= two_point - 1e-6);
}

TEST_CASE("ensemble search value is monotone in the restart count") {
  const QccChannel ch = random_qcc_channel(31);
  const double v4 = p1_qcc_lower(ch, 4, 17).value;
  const double v8 = p1_qcc_lower(ch, 8, 17).value;
  const double v16 = p1_qcc_lower(ch, 16, 17).value;
  CHECK(v4 <= v8 + 1e-15);
  CHECK(v8 <= v16 + 1e-15);
}

TEST_CASE("input-ignoring channels have zero search value") {
  const EnsembleSearchResult res = p1_qcc_lower(input_ignoring_qcc(2, 2, 2), 4, 3);
  CHECK(res.value <= 1e-10);
}

TEST_CASE("pairing with a trivial channel adds nothing") {
  const QccChannel ch = random_qcc_channel(41);
  const QccChannel blind = input_ignoring_qcc(2, 2, 2);
  const AdditivityReport rep = additivity_probe(ch, blind, 8, 2024);
  CHECK(rep.value2 <= 1e-9);
  CHECK(rep.gap <= 1e-4);
  CHECK_FALSE(rep.anomaly);
}

TEST_CASE("classical pairs respect additivity") {
  const QccChannel measured = measure_and_forward(bsc(0.1), bec(0.3));
  const AdditivityReport rep = additivity_probe(measured, measured, 8, 7);
  CHECK(rep.gap <= 1e-4);
}

TEST_CASE("random self-pairs stay within optimizer slack") {
  for (std::uint64_t seed : {101ULL, 102ULL}) {
    const QccChannel ch = random_qcc_channel(seed);
    const AdditivityReport rep = additivity_probe(ch, ch, 8, seed);
    CHECK(rep.value1 == rep.value2);  // identical channels share the better bound
    CHECK(rep.gap <= 1e-4);
  }
}

TEST_CASE("product channel assembles the outcome grid") {
  const QccChannel a = random_qcc_channel(61);
  const QccChannel b = random_qcc_channel(62);
  const QccChannel prod = tensor(a, b);
  CHECK(prod.input_dim() == 4);
  CHECK(prod.bob_outputs() == 4);
  CHECK(prod.charlie_outputs() == 4);
}
