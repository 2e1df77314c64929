#pragma once

#include "regseq/automaton.hpp"
#include "regseq/bitnum.hpp"
#include "regseq/linrep.hpp"
#include "regseq/rlt.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace regseq {

/// SumSpec -> pair automaton -> counting representation (LSD) -> MSD,
/// optionally minimized. The result satisfies r(n) = sum_oracle(spec, n).
inline LinearRepresentation compile(const SumSpec& spec, bool minimized = false) {
  auto rep = reverse(counting_representation(compile_pair_automaton(spec)));
  return minimized ? minimize(rep) : rep;
}

struct Fixture {
  std::string name;
  std::string description;
  SumSpec spec;
  LinearRecurrence recurrence;
  std::size_t rank;
  // Reference (v, gamma(0), gamma(1), w), entered literally.
  std::optional<LinearRepresentation> matrices;
  // Initial terms of S as the sequence is named, e.g. 1,1,2,3,5,8.
  std::vector<Integer> named_prefix;
  std::string oeis;
};

namespace detail {

using IntList = std::vector<Integer>;

inline LinearRepresentation reference_matrices(const std::vector<std::vector<int>>& g1,
                                      const std::vector<int>& w) {
  const std::size_t d = w.size();
  LinearRepresentation::Vec vv(d), ww(d);
  LinearRepresentation::Mat m0(d, d), m1(d, d);
  vv[0] = 1;
  for (std::size_t i = 0; i < d; ++i) {
    ww[i] = w[i];
    m0(i, 0) = w[i];
    for (std::size_t j = 0; j < d; ++j) m1(i, j) = g1[i][j];
  }
  return LinearRepresentation(std::move(vv), std::move(m0), std::move(m1), std::move(ww));
}

inline Fixture make_fixture(std::string name, std::string description, SumSpec spec,
                            IntList d, IntList init, std::vector<std::vector<int>> g1,
                            std::vector<int> w, IntList prefix, std::string oeis) {
  LinearRecurrence rec(std::move(d), std::move(init));
  const std::size_t rank = w.size();
  return Fixture{std::move(name), std::move(description), spec, std::move(rec), rank,
                 reference_matrices(g1, w), std::move(prefix), std::move(oeis)};
}

}  // namespace detail

/// The fourteen binomial sums whose run-length-transform structure is known,
/// with their minimal representations.
inline const std::vector<Fixture>& fixtures() {
  using detail::make_fixture;
  static const std::vector<Fixture> all = {
      make_fixture("thm6", "binom(n-k,2k): Fibonacci", {1, -1, 0, 2}, {1, 1}, {1, 1},
                   {{0, 1}, {1, 1}}, {1, 1}, {1, 1, 2, 3, 5, 8}, "A000045"),
      make_fixture("thm7", "binom(3k,k): truncated Fibonacci", {0, 3, 0, 1}, {1, 1}, {1, 2},
                   {{0, 1}, {1, 1}}, {1, 2}, {1, 2, 3, 5, 8, 13}, ""),
      make_fixture("thm8", "binom(n,2k): 1 then powers of 2", {1, 0, 0, 2}, {2, 0}, {1, 1},
                   {{0, 1}, {0, 2}}, {1, 1}, {1, 1, 2, 4, 8, 16}, "A000079"),
      make_fixture("thm9", "binom(n+2k,2k): 1 then 2's", {1, 2, 0, 2}, {1, 0}, {1, 2},
                   {{0, 1}, {0, 1}}, {1, 2}, {1, 2, 2, 2, 2, 2}, "A040000"),
      make_fixture("thm10", "binom(n+k,n-k): positive integers", {1, 1, 1, -1}, {2, -1}, {1, 2},
                   {{0, 1}, {-1, 2}}, {1, 2}, {1, 2, 3, 4, 5, 6}, "A000027"),
      make_fixture("thm14", "binom(n-k,6k): Narayana's cows", {1, -1, 0, 6}, {1, 0, 1},
                   {1, 1, 1}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 1}}, {1, 1, 1},
                   {1, 1, 1, 2, 3, 4, 6, 9}, "A000930"),
      make_fixture("thm15", "binom(n+3k,6k): doubled positive integers", {1, 3, 0, 6},
                   {1, 1, -1}, {1, 1, 2}, {{0, 1, 0}, {0, 0, 1}, {-1, 1, 1}}, {1, 1, 2},
                   {1, 1, 2, 2, 3, 3, 4, 4}, "A008619"),
      make_fixture("thm17", "binom(n+2k,2n-k): 1,1 then Lucas numbers", {1, 2, 2, -1},
                   {1, 1, 0, 0}, {1, 1, 2, 1},
                   {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}}, {1, 1, 2, 1},
                   {1, 1, 2, 1, 3, 4, 7, 11}, "A329723"),
      make_fixture("rlt1", "binom(n+5k,2n+2k)", {1, 5, 2, 2}, {1, 1, -1, 1}, {1, 1, 1, 1},
                   {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, -1, 1, 1}}, {1, 1, 1, 1},
                   {1, 1, 1, 1, 2, 3, 5, 7, 11, 16, 25}, ""),
      make_fixture("rlt2", "binom(n+5k,2k)", {1, 5, 0, 2}, {1, 1, -1, 1}, {1, 2, 2, 3},
                   {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, -1, 1, 1}}, {1, 2, 2, 3},
                   {1, 2, 2, 3}, ""),
      make_fixture("rlt3", "binom(-n+7k,n+k): Padovan from offset 5", {-1, 7, 1, 1}, {0, 1, 1},
                   {1, 1, 1}, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}, {1, 1, 1},
                   {1, 1, 1, 2, 2, 3, 4, 5}, "A000931"),
      make_fixture("rlt4", "binom(n+7k,3n+k): Padovan from offset 3", {1, 7, 3, 1}, {0, 1, 1},
                   {1, 0, 1}, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}, {1, 0, 1},
                   {1, 0, 1, 1, 1, 2, 2, 3}, "A000931"),
      make_fixture("rlt5", "binom(6k,n+3k): 1 alternating with naturals", {0, 6, 1, 3},
                   {0, 2, 0, -1}, {1, 1, 1, 2},
                   {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 2, 0}}, {1, 1, 1, 2},
                   {1, 1, 1, 2, 1, 3, 1, 4}, ""),
      make_fixture("rlt6", "binom(-2n+8k,n+k): period 1,1,0", {-2, 8, 1, 1}, {0, 0, 1},
                   {1, 1, 0}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {1, 1, 0},
                   {1, 1, 0, 1, 1, 0}, ""),
  };
  return all;
}

inline const Fixture* find_fixture(std::string_view name) {
  for (const auto& f : fixtures()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

// First fixture whose transform is equivalent to r.
inline const Fixture* match_fixture(const LinearRepresentation& r) {
  for (const auto& f : fixtures()) {
    if (equivalent(r, normal_form(f.recurrence))) return &f;
  }
  return nullptr;
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FixtureReport {
  std::string fixture;
  std::vector<CheckResult> checks;
  std::optional<LinearRecurrence> identified;
  std::size_t minimized_rank = 0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

/// Runs every check for one fixture: oracle / transform / compiled
/// representation agreement for n < bound, minimized rank, equivalence with
/// (and exact reproduction of) the reference matrices, and identification.
inline FixtureReport verify_fixture(const Fixture& f, std::uint64_t bound) {
  FixtureReport report;
  report.fixture = f.name;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const auto raw = compile(f.spec);
  const auto rep = minimize(raw);
  report.minimized_rank = rep.rank();

  std::uint64_t mismatches = 0;
  std::optional<std::uint64_t> first_bad;
  for (std::uint64_t n = 0; n < bound; ++n) {
    const Integer oracle = sum_oracle(f.spec, n);
    const Integer transform = run_length_transform(f.recurrence, n);
    const Rational value = evaluate(rep, n);
    if (oracle != transform || Rational(oracle) != value) {
      ++mismatches;
      if (!first_bad) first_bad = n;
    }
  }
  {
    std::ostringstream os;
    os << mismatches << " mismatches for n < " << bound;
    if (first_bad) os << " (first at n = " << *first_bad << ")";
    add("triple-equality", mismatches == 0, os.str());
  }

  add("rank", rep.rank() == f.rank,
      "minimized rank " + std::to_string(rep.rank()) + ", expected " + std::to_string(f.rank));

  if (f.matrices) {
    add("matrices-equivalent", equivalent(rep, *f.matrices),
        "compiled+minimized vs reference matrices");
  }

  const auto id = identify_rlt(rep);
  if (!id) {
    add("identify", false, id.failure);
    return report;
  }
  report.identified = id.recurrence;
  const std::size_t count = std::max<std::size_t>(10, f.named_prefix.size());
  const auto got = recurrence_terms(*id.recurrence, count);
  const auto want = recurrence_terms(f.recurrence, count);
  const bool prefix_ok = std::equal(f.named_prefix.begin(), f.named_prefix.end(), got.begin());
  add("identify", got == want && prefix_ok, id.recurrence->str());

  if (f.matrices) {
    add("normal-form-entrywise", normal_form(*id.recurrence) == *f.matrices,
        "normal form of the identified recurrence vs reference matrices");
  }
  return report;
}

}  // namespace regseq
