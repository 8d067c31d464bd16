#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace vcw {

inline constexpr int kMaxUniverseBits = 30;

// Integer-valued function on the subsets of an s-element universe.
class SetFunction {
 public:
  SetFunction() = default;
  explicit SetFunction(int s) : s_(check(s)), values_(std::size_t{1} << s, 0) {}
  SetFunction(int s, std::vector<std::int64_t> values) : s_(check(s)), values_(std::move(values)) {
    if (values_.size() != std::size_t{1} << s) throw InputError("set function table has the wrong length");
  }

  int universe_bits() const { return s_; }
  std::size_t size() const { return values_.size(); }
  std::int64_t& operator[](std::size_t x) { return values_[x]; }
  std::int64_t operator[](std::size_t x) const { return values_[x]; }
  std::vector<std::int64_t>& values() { return values_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  bool operator==(const SetFunction&) const = default;

 private:
  static int check(int s) {
    if (s < 0 || s > kMaxUniverseBits)
      throw ResourceError("universe of " + std::to_string(s) + " elements is outside [0," +
                          std::to_string(kMaxUniverseBits) + "]");
    return s;
  }
  int s_ = 0;
  std::vector<std::int64_t> values_;
};

// In-place sum over subsets. Works on any unsigned or wrapping buffer.
template <class T>
void zeta_in_place(std::span<T> f, int s) {
  for (int i = 0; i < s; ++i) {
    const std::size_t b = std::size_t{1} << i;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (x & b) f[x] += f[x ^ b];
  }
}

template <class T>
void mobius_in_place(std::span<T> f, int s) {
  for (int i = 0; i < s; ++i) {
    const std::size_t b = std::size_t{1} << i;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (x & b) f[x] -= f[x ^ b];
  }
}

inline SetFunction zeta(SetFunction f) {
  zeta_in_place(std::span<std::int64_t>(f.values()), f.universe_bits());
  return f;
}

inline SetFunction mobius(SetFunction f) {
  mobius_in_place(std::span<std::int64_t>(f.values()), f.universe_bits());
  return f;
}

// Ranked zeta transform: out[r][Y] = sum of f(Z) over Z subset of Y with |Z| = r.
// Arithmetic is modulo 2^64; callers recover exact values when they fit.
inline std::vector<std::vector<std::uint64_t>> ranked_zeta(std::span<const std::uint64_t> f, int s) {
  std::vector<std::vector<std::uint64_t>> out(static_cast<std::size_t>(s + 1),
                                              std::vector<std::uint64_t>(f.size(), 0));
  for (std::size_t x = 0; x < f.size(); ++x) out[static_cast<std::size_t>(std::popcount(x))][x] = f[x];
  for (auto& layer : out) zeta_in_place(std::span<std::uint64_t>(layer), s);
  return out;
}

// (f * g)(X) = sum over Y subset of X of f(Y) g(X \ Y), via rank-split transforms in O(2^s s^2).
inline SetFunction convolve(const SetFunction& f, const SetFunction& g) {
  const int s = f.universe_bits();
  if (g.universe_bits() != s) throw InputError("convolution operands have different universes");
  std::uint64_t max_f = 0, max_g = 0;
  for (auto v : f.values()) {
    if (v < 0) throw InputError("convolution operands must be non-negative");
    max_f = std::max<std::uint64_t>(max_f, static_cast<std::uint64_t>(v));
  }
  for (auto v : g.values()) {
    if (v < 0) throw InputError("convolution operands must be non-negative");
    max_g = std::max<std::uint64_t>(max_g, static_cast<std::uint64_t>(v));
  }
  // Every result is a sum of at most 2^s products; if that bound fits, the
  // wrapping arithmetic below is exact.
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(max_f) * max_g * (static_cast<unsigned __int128>(1) << s);
  if (bound > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
    throw std::overflow_error("subset convolution could overflow 64-bit values");

  const std::size_t size = f.size();
  std::vector<std::uint64_t> a(size), b(size);
  for (std::size_t x = 0; x < size; ++x) {
    a[x] = static_cast<std::uint64_t>(f[x]);
    b[x] = static_cast<std::uint64_t>(g[x]);
  }
  const auto za = ranked_zeta(a, s), zb = ranked_zeta(b, s);
  SetFunction out(s);
  std::vector<std::uint64_t> product(size);
  for (int r = 0; r <= s; ++r) {
    std::fill(product.begin(), product.end(), 0);
    for (int i = 0; i <= r; ++i) {
      const auto& left = za[static_cast<std::size_t>(i)];
      const auto& right = zb[static_cast<std::size_t>(r - i)];
      for (std::size_t x = 0; x < size; ++x) product[x] += left[x] * right[x];
    }
    mobius_in_place(std::span<std::uint64_t>(product), s);
    for (std::size_t x = 0; x < size; ++x)
      if (std::popcount(x) == r) out[x] = static_cast<std::int64_t>(product[x]);
  }
  return out;
}

}  // namespace vcw
