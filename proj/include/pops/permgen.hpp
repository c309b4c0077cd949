#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pops/model.hpp"

namespace pops {

/// PRNG identifier recorded in generated-permutation metadata; random
/// corpora are reproducible across runs and machines.
inline constexpr const char* kPrngId = "mt19937_64/fisher-yates";

struct PermSpec {
  enum class Kind {
    identity,
    reversal,
    random_shuffle,
    cyclic_shift,
    hypercube_flip,
    mesh_shift,
    bpc,
  };
  enum class Axis { column, row };

  Kind kind = Kind::identity;
  int n = 0;
  std::uint64_t seed = 0;        // random_shuffle
  int offset = 1;                // cyclic_shift
  int bit = 0;                   // hypercube_flip
  int mesh_n = 0;                // mesh_shift: n = mesh_n^2
  Axis axis = Axis::column;      // mesh_shift
  int direction = 1;             // mesh_shift: +1 or -1
  std::vector<int> sigma;        // bpc: bit permutation, sigma.size() = log2 n
  std::uint64_t mask = 0;        // bpc: complement mask
};

namespace detail {

inline int log2_exact(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  if ((1 << k) != n) throw Error("n = " + std::to_string(n) +
                                 " is not a power of two");
  return k;
}

}  // namespace detail

inline Permutation random_permutation(int n, std::uint64_t seed) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(image[i], image[j]);
  }
  return Permutation(std::move(image));
}

/// Bit permute-complement: bit j of the image is bit sigma(j) of the source,
/// then the mask is XORed in.
inline Permutation bpc_permutation(int n, const std::vector<int>& sigma,
                                   std::uint64_t mask) {
  const int k = detail::log2_exact(n);
  validate_permutation(sigma, k);  // sigma must permute the bit positions
  if (mask >= static_cast<std::uint64_t>(n))
    throw Error("bpc: mask out of range for n = " + std::to_string(n));
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) {
    int v = 0;
    for (int j = 0; j < k; ++j)
      if (i & (1 << sigma[j])) v |= 1 << j;
    image[i] = v ^ static_cast<int>(mask);
  }
  return Permutation(std::move(image));
}

inline Permutation generate(const PermSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw Error("generate: n must be >= 1");
  std::vector<int> image(n);
  switch (spec.kind) {
    case PermSpec::Kind::identity:
      return identity_permutation(n);
    case PermSpec::Kind::reversal:
      for (int i = 0; i < n; ++i) image[i] = n - 1 - i;
      return Permutation(std::move(image));
    case PermSpec::Kind::random_shuffle:
      return random_permutation(n, spec.seed);
    case PermSpec::Kind::cyclic_shift: {
      const int off = ((spec.offset % n) + n) % n;
      for (int i = 0; i < n; ++i) image[i] = (i + off) % n;
      return Permutation(std::move(image));
    }
    case PermSpec::Kind::hypercube_flip: {
      const int k = detail::log2_exact(n);
      if (spec.bit < 0 || spec.bit >= k)
        throw Error("hypercube_flip: bit " + std::to_string(spec.bit) +
                    " out of range for n = " + std::to_string(n));
      for (int i = 0; i < n; ++i) image[i] = i ^ (1 << spec.bit);
      return Permutation(std::move(image));
    }
    case PermSpec::Kind::mesh_shift: {
      const int N = spec.mesh_n;
      if (N < 1 || N * N != n)
        throw Error("mesh_shift: n = " + std::to_string(n) +
                    " is not mesh_n^2");
      if (spec.direction != 1 && spec.direction != -1)
        throw Error("mesh_shift: direction must be +1 or -1");
      // Processor (i,j) of the wraparound mesh lives at index i + j*N.
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
          int ti = i, tj = j;
          if (spec.axis == PermSpec::Axis::column)
            ti = (i + spec.direction + N) % N;
          else
            tj = (j + spec.direction + N) % N;
          image[i + j * N] = ti + tj * N;
        }
      return Permutation(std::move(image));
    }
    case PermSpec::Kind::bpc:
      return bpc_permutation(n, spec.sigma, spec.mask);
  }
  throw Error("generate: unknown kind");
}

struct BpcSpec {
  std::vector<int> sigma;
  std::uint64_t mask = 0;
};

/// Recovers (sigma, mask) from a BPC permutation: the mask is the image of
/// 0, and the image of each basis index 2^b pins where bit b lands.
inline BpcSpec recover_bpc(const Permutation& pi) {
  const int k = detail::log2_exact(pi.n());
  BpcSpec spec;
  spec.mask = static_cast<std::uint64_t>(pi(0));
  spec.sigma.assign(k, -1);
  for (int b = 0; b < k; ++b) {
    const int t = pi(1 << b) ^ pi(0);
    if (t == 0 || (t & (t - 1)) != 0)
      throw Error("not a BPC permutation: basis image is not a bit");
    int j = 0;
    while ((1 << j) != t) ++j;
    spec.sigma[j] = b;
  }
  if (bpc_permutation(pi.n(), spec.sigma, spec.mask) != pi)
    throw Error("not a BPC permutation: recovered spec does not reproduce it");
  return spec;
}

/// Composes two BPC permutations and checks closure: the composition must
/// again be expressible as bpc(sigma, mask).
inline Permutation compose_bpc_checked(const Permutation& p1,
                                       const Permutation& p2) {
  if (p1.n() != p2.n()) throw Error("compose_bpc_checked: size mismatch");
  const Permutation composed = compose(p1, p2);
  const BpcSpec spec = recover_bpc(composed);
  if (bpc_permutation(composed.n(), spec.sigma, spec.mask) != composed)
    throw Error("BPC closure violated");
  return composed;
}

}  // namespace pops
