#pragma once

#include "regseq/numeric.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace regseq {

template <class N>
concept BinaryNatural = std::unsigned_integral<N> || std::same_as<N, Integer>;

template <std::unsigned_integral N>
std::size_t bit_length(N n) {
  std::size_t len = 0;
  while (n) {
    ++len;
    n >>= 1;
  }
  return len;
}

inline std::size_t bit_length(const Integer& n) {
  if (n < 0) throw std::domain_error("bit_length of a negative integer");
  return n == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(n)) + 1;
}

template <std::unsigned_integral N>
bool bit_at(N n, std::size_t i) {
  return i < sizeof(N) * 8 && ((n >> i) & 1u);
}

inline bool bit_at(const Integer& n, std::size_t i) {
  return boost::multiprecision::bit_test(n, static_cast<unsigned>(i));
}

/// A binary numeral stored most-significant digit first.
///
/// Words produced by to_bits() are canonical (no leading zero, the empty
/// word for 0). Arbitrary words, leading zeros included, are allowed too:
/// linear representations are formal series over all of {0,1}*.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::vector<bool> msd_first) : digits_(std::move(msd_first)) {}

  static BitWord from_string(const std::string& s) {
    std::vector<bool> digits;
    digits.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("not a binary digit: " + s);
      digits.push_back(c == '1');
    }
    return BitWord(std::move(digits));
  }

  const std::vector<bool>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  bool operator[](std::size_t i) const { return digits_[i]; }

  bool canonical() const { return digits_.empty() || digits_.front(); }

  std::vector<bool> lsd_first() const {
    return std::vector<bool>(digits_.rbegin(), digits_.rend());
  }

  Integer value() const {
    Integer v = 0;
    for (bool d : digits_) {
      v <<= 1;
      if (d) v += 1;
    }
    return v;
  }

  std::string str() const {
    std::string s;
    s.reserve(digits_.size());
    for (bool d : digits_) s.push_back(d ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  std::vector<bool> digits_;
};

template <BinaryNatural N>
BitWord to_bits(const N& n) {
  const std::size_t len = bit_length(n);
  std::vector<bool> digits(len);
  for (std::size_t i = 0; i < len; ++i) digits[len - 1 - i] = bit_at(n, i);
  return BitWord(std::move(digits));
}

/// Lengths of the maximal runs of 1's of [n]_2, most significant run first.
using RunList = std::vector<std::size_t>;

namespace detail {
inline RunList runs_of(const BitWord& word, bool digit) {
  RunList runs;
  std::size_t current = 0;
  for (bool d : word.digits()) {
    if (d == digit) {
      ++current;
    } else if (current) {
      runs.push_back(current);
      current = 0;
    }
  }
  if (current) runs.push_back(current);
  return runs;
}
}  // namespace detail

template <BinaryNatural N>
RunList runs_of_ones(const N& n) {
  return detail::runs_of(to_bits(n), true);
}

// Runs of 0's inside the canonical numeral (no leading zeros, so 0 has none).
template <BinaryNatural N>
RunList runs_of_zeros(const N& n) {
  return detail::runs_of(to_bits(n), false);
}

// Lucas at p = 2: binom(n, k) is odd iff the bits of k are a subset of the
// bits of n. This also yields 0 whenever k > n.
template <std::unsigned_integral N>
constexpr bool binom_parity(N n, N k) {
  return (k & ~n) == 0;
}

inline bool binom_parity(const Integer& n, const Integer& k) {
  if (n < 0 || k < 0) throw std::domain_error("binom_parity needs naturals");
  return (k & n) == k;
}

// Negative arguments contribute nothing, matching sums whose linear forms
// range over the naturals.
constexpr bool binom_parity_signed(std::int64_t x, std::int64_t y) {
  if (x < 0 || y < 0) return false;
  return binom_parity(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
}

/// The coefficients of
///   T(n) = sum_{k=0}^{n} [ binom(a1 n + a2 k, a3 n + a4 k) binom(n, k) mod 2 ].
struct SumSpec {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t a3 = 0;
  std::int64_t a4 = 0;

  bool well_formed() const { return a1 + a2 >= 0 && a3 + a4 >= 0; }

  void validate() const {
    if (!well_formed()) {
      throw std::invalid_argument("sum spec " + str() +
                                  " violates a1+a2 >= 0 and a3+a4 >= 0");
    }
  }

  std::string str() const {
    return "(" + std::to_string(a1) + "," + std::to_string(a2) + "," +
           std::to_string(a3) + "," + std::to_string(a4) + ")";
  }

  friend bool operator==(const SumSpec&, const SumSpec&) = default;
};

inline constexpr std::uint64_t kSumOracleLimit = std::uint64_t{1} << 32;

// Ground truth by direct summation over k = 0..n.
inline std::uint64_t sum_oracle(const SumSpec& spec, std::uint64_t n) {
  if (n >= kSumOracleLimit) throw std::out_of_range("sum_oracle: n too large");
  const auto sn = static_cast<std::int64_t>(n);
  std::uint64_t total = 0;
  for (std::int64_t k = 0; k <= sn; ++k) {
    if (!binom_parity(n, static_cast<std::uint64_t>(k))) continue;
    total += binom_parity_signed(spec.a1 * sn + spec.a2 * k, spec.a3 * sn + spec.a4 * k);
  }
  return total;
}

}  // namespace regseq
