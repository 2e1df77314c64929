#pragma once

#include "regseq/automaton.hpp"
#include "regseq/bitnum.hpp"
#include "regseq/numeric.hpp"

#include <array>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace regseq {

enum class ReadingOrder { msd, lsd };

inline ReadingOrder flipped(ReadingOrder o) {
  return o == ReadingOrder::msd ? ReadingOrder::lsd : ReadingOrder::msd;
}

inline const char* to_string(ReadingOrder o) { return o == ReadingOrder::msd ? "msd" : "lsd"; }

/// (v, gamma(0), gamma(1), w) over exact rationals.
///
/// In MSD order a word d_m ... d_1 (d_m most significant) is sent to
///   v * gamma(d_m) * ... * gamma(d_1) * w,
/// in LSD order to v * gamma(d_1) * ... * gamma(d_m) * w. Rank 0 is the
/// zero series and only arises from minimization.
class LinearRepresentation {
 public:
  using Vec = Vector<Rational>;
  using Mat = Matrix<Rational>;

  LinearRepresentation() = default;

  LinearRepresentation(Vec v, Mat gamma0, Mat gamma1, Vec w,
                       ReadingOrder order = ReadingOrder::msd)
      : v_(std::move(v)),
        gamma_{std::move(gamma0), std::move(gamma1)},
        w_(std::move(w)),
        order_(order) {
    const std::size_t d = v_.size();
    if (w_.size() != d) throw std::invalid_argument("linrep: |w| != |v|");
    for (const auto& g : gamma_) {
      if (g.rows() != d || g.cols() != d) {
        throw std::invalid_argument("linrep: gamma must be " + std::to_string(d) + "x" +
                                    std::to_string(d));
      }
    }
  }

  std::size_t rank() const { return v_.size(); }
  ReadingOrder order() const { return order_; }
  const Vec& v() const { return v_; }
  const Vec& w() const { return w_; }
  const Mat& gamma(bool digit) const { return gamma_[digit ? 1 : 0]; }
  const Mat& gamma0() const { return gamma_[0]; }
  const Mat& gamma1() const { return gamma_[1]; }

  /// Value on a word given most significant digit first, leading zeros
  /// included.
  Rational evaluate_word(const BitWord& word) const {
    Vec x = v_;
    const auto& d = word.digits();
    if (order_ == ReadingOrder::msd) {
      for (bool b : d) x = row_times<Rational>(x, gamma(b));
    } else {
      for (auto it = d.rbegin(); it != d.rend(); ++it) x = row_times<Rational>(x, gamma(*it));
    }
    return dot<Rational>(x, w_);
  }

  friend bool operator==(const LinearRepresentation&, const LinearRepresentation&) = default;

 private:
  Vec v_;
  std::array<Mat, 2> gamma_;
  Vec w_;
  ReadingOrder order_ = ReadingOrder::msd;
};

/// a(n) = v gamma([n]_2) w on the canonical numeral (n = 0 gives v.w).
template <BinaryNatural N>
Rational evaluate(const LinearRepresentation& r, const N& n) {
  return r.evaluate_word(to_bits(n));
}

/// Transposes everything and swaps the reading order; the value on every
/// word is unchanged.
inline LinearRepresentation reverse(const LinearRepresentation& r) {
  return LinearRepresentation(r.w(), r.gamma0().transpose(), r.gamma1().transpose(), r.v(),
                              flipped(r.order()));
}

/// Counts, for each n, the k accepted by a compiled pair automaton.
///
/// One dimension per live state (the dead state contributes nothing).
/// gamma(b)[s][t] is the number of k-digits e with step(s, (b, e)) = t,
/// v marks the initial state and w the states whose flush accepts. The
/// result reads n least significant digit first.
inline LinearRepresentation counting_representation(const PairAutomaton& a) {
  std::vector<std::size_t> slot(a.size(), a.size());
  std::size_t d = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a.states[s].alive) slot[s] = d++;
  }
  LinearRepresentation::Vec v(d), w(d);
  LinearRepresentation::Mat g0(d, d), g1(d, d);
  if (!a.states[a.initial].alive) throw std::invalid_argument("initial state is dead");
  v[slot[a.initial]] = 1;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (!a.states[s].alive) continue;
    w[slot[s]] = flush_accepts(a, s) ? 1 : 0;
    for (std::size_t i = 0; i < kAlphabetSize; ++i) {
      const auto p = DigitPair::from_index(i);
      const std::size_t t = a.step(s, p);
      if (!a.states[t].alive) continue;
      auto& g = p.n ? g1 : g0;
      g(slot[s], slot[t]) += 1;
    }
  }
  return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w),
                              ReadingOrder::lsd);
}

/// Block-diagonal sum evaluating to c1 * r1 + c2 * r2.
inline LinearRepresentation linear_combination(const Rational& c1, const LinearRepresentation& r1,
                                               const Rational& c2, const LinearRepresentation& r2) {
  if (r1.order() != r2.order()) {
    throw std::invalid_argument("linear_combination: reading orders differ");
  }
  const std::size_t d1 = r1.rank(), d = d1 + r2.rank();
  LinearRepresentation::Vec v(d), w(d);
  LinearRepresentation::Mat g0(d, d), g1(d, d);
  auto place = [&](const LinearRepresentation& r, const Rational& c, std::size_t off) {
    for (std::size_t i = 0; i < r.rank(); ++i) {
      v[off + i] = c * r.v()[i];
      w[off + i] = r.w()[i];
      for (std::size_t j = 0; j < r.rank(); ++j) {
        g0(off + i, off + j) = r.gamma0()(i, j);
        g1(off + i, off + j) = r.gamma1()(i, j);
      }
    }
  };
  place(r1, c1, 0);
  place(r2, c2, d1);
  return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w),
                              r1.order());
}

namespace detail {

// Breadth-first basis of span{ v * gamma(x) : x in {0,1}* }.
inline RowSpace<Rational> left_reachable(const LinearRepresentation& r) {
  RowSpace<Rational> space(r.rank());
  std::deque<std::size_t> queue;
  if (space.insert(r.v())) queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (bool b : {false, true}) {
      if (space.insert(row_times<Rational>(space.basis()[i], r.gamma(b)))) {
        queue.push_back(space.size() - 1);
      }
    }
  }
  return space;
}

// Restricts r to its left-reachable subspace P: P gamma(b) = gamma'(b) P,
// v = v' P, w' = P w.
inline LinearRepresentation left_reduce(const LinearRepresentation& r) {
  const auto space = left_reachable(r);
  const auto& basis = space.basis();
  const std::size_t k = basis.size();
  LinearRepresentation::Vec v(k), w(k);
  LinearRepresentation::Mat g[2] = {LinearRepresentation::Mat(k, k),
                                    LinearRepresentation::Mat(k, k)};
  if (k > 0) v = *space.coordinates(r.v());
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = dot<Rational>(basis[i], r.w());
    for (bool b : {false, true}) {
      const auto coords = space.coordinates(row_times<Rational>(basis[i], r.gamma(b)));
      if (!coords) throw std::logic_error("left_reduce: span not closed under gamma");
      for (std::size_t j = 0; j < k; ++j) g[b](i, j) = (*coords)[j];
    }
  }
  return LinearRepresentation(std::move(v), std::move(g[0]), std::move(g[1]), std::move(w),
                              r.order());
}

}  // namespace detail

/// Reduces to minimal rank: restrict to the left-reachable span of
/// v gamma(x), then (on the transposed representation) to the span of
/// gamma(x) w. Exact throughout, so the rank cannot collapse spuriously.
/// The value on every word, leading zeros included, is preserved.
inline LinearRepresentation minimize(const LinearRepresentation& r) {
  const auto left = detail::left_reduce(r);
  return reverse(detail::left_reduce(reverse(left)));
}

/// True iff r1 and r2 agree on every word of {0,1}*. The difference series
/// is zero iff w annihilates the span of all v gamma(x); that span is
/// generated by words of length < rank(r1) + rank(r2), which is exactly the
/// set the breadth-first closure explores.
inline bool equivalent(const LinearRepresentation& r1, const LinearRepresentation& r2) {
  const auto aligned = r1.order() == r2.order() ? r2 : reverse(r2);
  const auto diff = linear_combination(1, r1, -1, aligned);
  const auto space = detail::left_reachable(diff);
  for (const auto& b : space.basis()) {
    if (dot<Rational>(b, diff.w()) != 0) return false;
  }
  return true;
}

}  // namespace regseq
