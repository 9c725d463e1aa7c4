#pragma once

#include <random>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/linalg.hpp"

namespace testutil {

using wiretap::cx;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline wiretap::HermitianMatrix random_hermitian(int dim, std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cx> e(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    e[static_cast<std::size_t>(i) * dim + i] = g(gen);
    for (int j = i + 1; j < dim; ++j) {
      const cx v(g(gen), g(gen));
      e[static_cast<std::size_t>(i) * dim + j] = v;
      e[static_cast<std::size_t>(j) * dim + i] = std::conj(v);
    }
  }
  return wiretap::HermitianMatrix(dim, std::move(e));
}

inline wiretap::DensityMatrix random_density(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cx> a(static_cast<std::size_t>(dim) * dim);
  for (cx& v : a) v = cx(g(gen), g(gen));
  std::vector<cx> rho(static_cast<std::size_t>(dim) * dim);
  double tr = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      cx s = 0;
      for (int k = 0; k < dim; ++k)
        s += a[static_cast<std::size_t>(i) * dim + k] * std::conj(a[static_cast<std::size_t>(j) * dim + k]);
      rho[static_cast<std::size_t>(i) * dim + j] = s;
      if (i == j) tr += s.real();
    }
  for (cx& v : rho) v /= tr;
  return wiretap::DensityMatrix::unchecked(wiretap::HermitianMatrix(dim, std::move(rho)));
}

inline wiretap::PureState random_pure(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cx> a(static_cast<std::size_t>(dim));
  double n2 = 0;
  for (cx& v : a) {
    v = cx(g(gen), g(gen));
    n2 += std::norm(v);
  }
  for (cx& v : a) v /= std::sqrt(n2);
  return wiretap::PureState(std::move(a));
}

// Binary-input wiretap channel with random mixed outputs.
inline wiretap::WiretapChannel random_binary_channel(std::mt19937_64& gen, int bob_dim = 2,
                                                     int charlie_dim = 2) {
  std::vector<wiretap::DensityMatrix> bob{random_density(bob_dim, gen),
                                          random_density(bob_dim, gen)};
  std::vector<wiretap::DensityMatrix> charlie{random_density(charlie_dim, gen),
                                              random_density(charlie_dim, gen)};
  return wiretap::WiretapChannel(wiretap::CqChannel(std::move(bob)),
                                 wiretap::CqChannel(std::move(charlie)));
}

}  // namespace testutil
