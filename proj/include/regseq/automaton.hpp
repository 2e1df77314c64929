#pragma once

#include "regseq/bitnum.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace regseq {

/// One input symbol: the aligned digits of n and k at the same position.
struct DigitPair {
  bool n = false;
  bool k = false;

  constexpr std::size_t index() const { return (n ? 2u : 0u) | (k ? 1u : 0u); }
  static constexpr DigitPair from_index(std::size_t i) { return {(i & 2u) != 0, (i & 1u) != 0}; }

  friend bool operator==(const DigitPair&, const DigitPair&) = default;
};

inline constexpr std::size_t kAlphabetSize = 4;

/// carry1 belongs to the top form a1 n + a2 k, carry2 to the bottom form.
struct AutomatonState {
  std::int64_t carry1 = 0;
  std::int64_t carry2 = 0;
  bool alive = true;

  friend bool operator==(const AutomatonState&, const AutomatonState&) = default;
  friend auto operator<=>(const AutomatonState& a, const AutomatonState& b) {
    return std::tie(a.alive, a.carry1, a.carry2) <=> std::tie(b.alive, b.carry1, b.carry2);
  }
};

inline constexpr AutomatonState kDeadState{0, 0, false};

/// Deterministic automaton over DigitPair with an absorbing dead state.
///
/// States are numbered in breadth-first discovery order; the initial state
/// is 0 and the dead state is always present.
struct PairAutomaton {
  std::vector<AutomatonState> states;
  std::vector<std::array<std::size_t, kAlphabetSize>> transitions;
  std::size_t initial = 0;
  std::size_t dead = 0;
  std::int64_t carry_bound = 0;
  std::optional<SumSpec> spec;

  std::size_t size() const { return states.size(); }

  std::size_t step(std::size_t s, DigitPair p) const { return transitions.at(s)[p.index()]; }

  std::size_t run(std::size_t s, std::span<const DigitPair> input) const {
    for (const auto& p : input) s = step(s, p);
    return s;
  }

  std::size_t live_count() const {
    std::size_t c = 0;
    for (const auto& st : states) c += st.alive;
    return c;
  }
};

/// Two states: live (initial, accepting) and dead. Reading n-bit 0 against
/// k-bit 1 kills the run for good; this is binom(n, k) mod 2 by Lucas.
inline PairAutomaton lucas_automaton() {
  PairAutomaton a;
  a.states = {AutomatonState{}, kDeadState};
  a.initial = 0;
  a.dead = 1;
  a.transitions.resize(2);
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    const auto p = DigitPair::from_index(i);
    a.transitions[0][i] = (!p.n && p.k) ? 1 : 0;
    a.transitions[1][i] = 1;
  }
  return a;
}

/// Aligned digit pairs of (n, k) over exactly |[n]_2| positions, LSD first.
/// Returns nullopt when k has more digits than n (then binom(n, k) = 0).
template <BinaryNatural N>
std::optional<std::vector<DigitPair>> digit_pairs_lsd(const N& n, const N& k) {
  const std::size_t len = bit_length(n);
  if (bit_length(k) > len) return std::nullopt;
  std::vector<DigitPair> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = {bit_at(n, i), bit_at(k, i)};
  return out;
}

inline bool lucas_accepts(std::uint64_t n, std::uint64_t k) {
  static const PairAutomaton automaton = lucas_automaton();
  auto pairs = digit_pairs_lsd(n, k);
  if (!pairs) return false;
  std::vector<DigitPair> msd(pairs->rbegin(), pairs->rend());
  return automaton.states[automaton.run(automaton.initial, msd)].alive;
}

namespace detail {

inline std::int64_t carry_bound(const SumSpec& s) {
  return std::max(std::llabs(s.a1) + std::llabs(s.a2), std::llabs(s.a3) + std::llabs(s.a4)) + 1;
}

// One LSD step of both carry adders. Right shift of a signed value is floor
// division, and & 1 reads the two's-complement low bit.
inline AutomatonState advance(const SumSpec& s, const AutomatonState& st, DigitPair p) {
  if (!st.alive) return kDeadState;
  const std::int64_t nb = p.n, kb = p.k;
  const std::int64_t t1 = s.a1 * nb + s.a2 * kb + st.carry1;
  const std::int64_t t2 = s.a3 * nb + s.a4 * kb + st.carry2;
  const bool top = t1 & 1;
  const bool bottom = t2 & 1;
  if ((bottom && !top) || (p.k && !p.n)) return kDeadState;
  return {t1 >> 1, t2 >> 1, true};
}

}  // namespace detail

/// Compiles the predicate
///   binom(a1 n + a2 k, a3 n + a4 k) odd  and  binom(n, k) odd
/// into an automaton reading (n, k) digit pairs least significant first.
/// The trailing digits of the linear forms past |[n]_2| are handled by
/// flush_accepts(), not by extra transitions.
inline PairAutomaton compile_pair_automaton(const SumSpec& spec) {
  spec.validate();
  PairAutomaton a;
  a.spec = spec;
  a.carry_bound = detail::carry_bound(spec);

  std::map<AutomatonState, std::size_t> index;
  std::deque<std::size_t> queue;
  auto intern = [&](const AutomatonState& st) {
    auto [it, fresh] = index.try_emplace(st, a.states.size());
    if (fresh) {
      if (std::llabs(st.carry1) > a.carry_bound || std::llabs(st.carry2) > a.carry_bound) {
        throw std::logic_error("carry escaped its bound while compiling " + spec.str());
      }
      a.states.push_back(st);
      a.transitions.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };

  a.initial = intern(AutomatonState{});
  a.dead = intern(kDeadState);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < kAlphabetSize; ++i) {
      const auto next = detail::advance(spec, a.states[s], DigitPair::from_index(i));
      const std::size_t t = intern(next);
      a.transitions[s][i] = t;
    }
  }
  return a;
}

/// Feeds (0, 0) pairs until the state repeats. The run is accepted iff it
/// settles on a live state with both carries 0; a negative form settles on
/// carry -1 (1-bits forever) and is rejected.
inline bool flush_accepts(const PairAutomaton& a, std::size_t s) {
  constexpr DigitPair zero{false, false};
  std::vector<bool> seen(a.size(), false);
  while (!seen[s]) {
    seen[s] = true;
    s = a.step(s, zero);
  }
  const auto& st = a.states[s];
  return st.alive && st.carry1 == 0 && st.carry2 == 0 && a.step(s, zero) == s;
}

inline bool automaton_accepts(const PairAutomaton& a, std::uint64_t n, std::uint64_t k) {
  auto pairs = digit_pairs_lsd(n, k);
  if (!pairs) return false;
  return flush_accepts(a, a.run(a.initial, *pairs));
}

}  // namespace regseq
