#pragma once

#include "regseq/bitnum.hpp"
#include "regseq/rlt.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regseq {

/// T_m(n) = sum_k [ binom(2^m k, n + k) binom(n, k) mod 2 ], m >= 2.
struct BsSpec {
  unsigned m = 2;

  explicit BsSpec(unsigned m_) : m(m_) {
    if (m < 2) throw std::invalid_argument("T_m needs m >= 2, got " + std::to_string(m));
    if (m > 16) throw std::invalid_argument("T_m supports m <= 16");
  }

  // The same sum in the general shape a1 n + a2 k over a3 n + a4 k.
  SumSpec as_sum_spec() const {
    return SumSpec{0, std::int64_t{1} << m, 1, 1};
  }
};

// Every k in 0..n whose term is odd.
inline std::vector<std::uint64_t> tm_odd_terms(const BsSpec& spec, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (binom_parity(n, k) && binom_parity(k << spec.m, n + k)) out.push_back(k);
  }
  return out;
}

inline std::uint64_t tm_sum(const BsSpec& spec, std::uint64_t n) {
  if (n >= (std::uint64_t{1} << (63 - spec.m))) throw std::out_of_range("tm_sum: n too large");
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    total += binom_parity(k << spec.m, n + k) && binom_parity(n, k);
  }
  return total;
}

/// 1 iff every run of 1's in [n]_2 has length divisible by m.
template <BinaryNatural N>
bool tm_predicate(const BsSpec& spec, const N& n) {
  const RunList runs = runs_of_ones(n);
  return std::all_of(runs.begin(), runs.end(), [&](std::size_t l) { return l % spec.m == 0; });
}

/// The unique k with an odd term, when there is one: each run 1^l of [n]_2
/// is replaced by (0^(m-1) 1)^(l/m) and the 0-blocks are kept.
inline std::optional<std::uint64_t> tm_witness(const BsSpec& spec, std::uint64_t n) {
  if (!tm_predicate(spec, n)) return std::nullopt;
  std::uint64_t k = 0;
  std::size_t i = 0;
  const std::size_t len = bit_length(n);
  while (i < len) {
    if (!bit_at(n, i)) {
      ++i;
      continue;
    }
    std::size_t run = 0;
    while (i + run < len && bit_at(n, i + run)) ++run;
    for (std::size_t j = 0; j < run; j += spec.m) k |= std::uint64_t{1} << (i + j);
    i += run;
  }
  return k;
}

/// S_m = 1, 0, ..., 0 repeating with period m, written as an order m-1
/// recurrence S(n+1) = S(n-m+1).
inline LinearRecurrence tm_run_length_form(const BsSpec& spec) {
  std::vector<Integer> d(spec.m, 0), init(spec.m, 0);
  d.back() = 1;
  init.front() = 1;
  return LinearRecurrence(std::move(d), std::move(init));
}

/// Classical Baum-Sweet: 1 iff every run of 0's in [n]_2 has even length.
template <BinaryNatural N>
bool baum_sweet(const N& n) {
  const RunList runs = runs_of_zeros(n);
  return std::all_of(runs.begin(), runs.end(), [](std::size_t l) { return l % 2 == 0; });
}

}  // namespace regseq
