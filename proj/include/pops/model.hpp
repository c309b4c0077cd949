#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace pops {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A POPS(d,g) network: n = d*g processors in g groups of d, one coupler
/// c(b,a) per ordered group pair carrying packets from group a to group b.
struct NetworkConfig {
  int d;
  int g;

  NetworkConfig(int d_, int g_) : d(d_), g(g_) {
    if (d < 1 || g < 1)
      throw Error("NetworkConfig: d and g must be >= 1, got d=" +
                  std::to_string(d) + " g=" + std::to_string(g));
  }

  int n() const { return d * g; }
  int couplers() const { return g * g; }
};

inline void check_processor_index(const NetworkConfig& cfg, int i) {
  if (i < 0 || i >= cfg.n())
    throw Error("processor index " + std::to_string(i) + " out of range [0," +
                std::to_string(cfg.n()) + ")");
}

/// group(i) = floor(i/d)
inline int group_of(const NetworkConfig& cfg, int i) {
  check_processor_index(cfg, i);
  return i / cfg.d;
}

/// i mod d, so that i = local_index(i) + group_of(i)*d.
inline int local_index(const NetworkConfig& cfg, int i) {
  check_processor_index(cfg, i);
  return i % cfg.d;
}

/// Coupler c(b,a): sources are the processors of group a, destinations the
/// processors of group b.
struct CouplerId {
  int dst_group;
  int src_group;

  friend bool operator==(const CouplerId&, const CouplerId&) = default;
  friend auto operator<=>(const CouplerId&, const CouplerId&) = default;
};

/// A bijection on {0..n-1}. The inverse is computed once at construction.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    inverse_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      const int v = image_[i];
      if (v < 0 || v >= n)
        throw Error("permutation entry " + std::to_string(v) + " at position " +
                    std::to_string(i) + " out of range [0," + std::to_string(n) +
                    ")");
      if (inverse_[v] != -1)
        throw Error("duplicate permutation value " + std::to_string(v) +
                    " at positions " + std::to_string(inverse_[v]) + " and " +
                    std::to_string(i));
      inverse_[v] = i;
    }
  }

  int n() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_.at(i); }
  int inverse(int j) const { return inverse_.at(j); }
  const std::vector<int>& image() const { return image_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
  std::vector<int> inverse_;
};

/// Checks length and bijectivity; the error message names the first
/// duplicate or out-of-range entry.
inline Permutation validate_permutation(const std::vector<int>& raw, int n) {
  if (static_cast<int>(raw.size()) != n)
    throw Error("permutation has " + std::to_string(raw.size()) +
                " entries, expected " + std::to_string(n));
  return Permutation(raw);
}

inline Permutation identity_permutation(int n) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[i] = i;
  return Permutation(std::move(image));
}

/// a after b: result(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) throw Error("compose: size mismatch");
  std::vector<int> image(a.n());
  for (int i = 0; i < a.n(); ++i) image[i] = a(b(i));
  return Permutation(std::move(image));
}

}  // namespace pops
