#pragma once

#include "regseq/bitnum.hpp"
#include "regseq/linrep.hpp"
#include "regseq/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace regseq {

/// S(n+1) = d_0 S(n) + d_1 S(n-1) + ... + d_r S(n-r), with the first r+1
/// terms S(0) = 1, S(1) = c_1, ..., S(r) = c_r given explicitly.
class LinearRecurrence {
 public:
  LinearRecurrence(std::vector<Integer> coefficients, std::vector<Integer> initial)
      : coefficients_(std::move(coefficients)), initial_(std::move(initial)) {
    if (coefficients_.empty()) throw std::invalid_argument("recurrence needs d_0");
    if (initial_.size() != coefficients_.size()) {
      throw std::invalid_argument("recurrence of order r needs r+1 initial values");
    }
    if (initial_.front() != 1) throw std::invalid_argument("recurrence must have S(0) = 1");
  }

  std::size_t order() const { return coefficients_.size() - 1; }
  const std::vector<Integer>& coefficients() const { return coefficients_; }
  const std::vector<Integer>& initial() const { return initial_; }

  friend bool operator==(const LinearRecurrence&, const LinearRecurrence&) = default;

  // e.g. "S(n)=S(n-1)+S(n-2); 1,1"
  std::string str() const {
    std::ostringstream os;
    os << "S(n)=";
    bool first = true;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      const Integer& c = coefficients_[i];
      if (c == 0) continue;
      const Integer mag = c < 0 ? Integer(-c) : c;
      if (c < 0) {
        os << "-";
      } else if (!first) {
        os << "+";
      }
      if (mag != 1) os << mag << "*";
      os << "S(n-" << (i + 1) << ")";
      first = false;
    }
    if (first) os << "0";
    os << "; ";
    for (std::size_t i = 0; i < initial_.size(); ++i) os << (i ? "," : "") << initial_[i];
    return os.str();
  }

 private:
  std::vector<Integer> coefficients_;
  std::vector<Integer> initial_;
};

inline std::vector<Integer> recurrence_terms(const LinearRecurrence& rec, std::size_t count) {
  if (count == 0) throw std::invalid_argument("recurrence_terms: count must be positive");
  const auto& d = rec.coefficients();
  std::vector<Integer> s(rec.initial().begin(), rec.initial().end());
  while (s.size() < count) {
    Integer next = 0;
    const std::size_t n = s.size() - 1;
    for (std::size_t i = 0; i < d.size(); ++i) next += d[i] * s[n - i];
    s.push_back(std::move(next));
  }
  s.resize(count);
  return s;
}

/// Product of S(l) over the lengths l of the maximal runs of 1's in [n]_2.
/// Written as a sum in some sources; the worked example T(11) = S(1)S(2)
/// and the matrix identity both give the product. T(0) = 1.
template <BinaryNatural N>
Integer run_length_transform(const LinearRecurrence& rec, const N& n) {
  const RunList runs = runs_of_ones(n);
  if (runs.empty()) return 1;
  const auto terms = recurrence_terms(rec, *std::max_element(runs.begin(), runs.end()) + 1);
  Integer t = 1;
  for (std::size_t len : runs) t *= terms[len];
  return t;
}

/// The MSD representation of the run-length transform of rec:
///   v = (1, 0, ..., 0), w = (1, c_1, ..., c_r)^T,
///   gamma(0) = [w | 0 ... 0], gamma(1) = companion with last row (d_r, ..., d_0).
inline LinearRepresentation normal_form(const LinearRecurrence& rec) {
  const std::size_t d = rec.order() + 1;
  LinearRepresentation::Vec v(d), w(d);
  LinearRepresentation::Mat g0(d, d), g1(d, d);
  v[0] = 1;
  for (std::size_t i = 0; i < d; ++i) {
    w[i] = Rational(rec.initial()[i]);
    g0(i, 0) = w[i];
  }
  for (std::size_t i = 0; i + 1 < d; ++i) g1(i, i + 1) = 1;
  for (std::size_t j = 0; j < d; ++j) g1(d - 1, j) = Rational(rec.coefficients()[d - 1 - j]);
  return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w),
                              ReadingOrder::msd);
}

/// Shortest recurrence s(n) = c_1 s(n-1) + ... + c_L s(n-L) holding for all
/// n in [L, terms.size()). Coefficient c_L may be zero: the length counts.
struct MinimalRecurrence {
  std::size_t length = 0;
  std::vector<Rational> coefficients;  // c_1 .. c_L
};

/// Berlekamp-Massey over the rationals. Returns nullopt when the shortest
/// annihilating recurrence is longer than half the prefix, i.e. the prefix
/// does not pin it down.
inline std::optional<MinimalRecurrence> berlekamp_massey(const std::vector<Rational>& s) {
  std::vector<Rational> c{1}, b{1};
  std::size_t len = 0, shift = 1;
  Rational last_discrepancy = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational delta = s[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) delta += c[i] * s[n - i];
    if (delta == 0) {
      ++shift;
      continue;
    }
    const Rational factor = delta / last_discrepancy;
    const auto previous = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= factor * b[i];
    if (2 * len <= n) {
      len = n + 1 - len;
      b = previous;
      last_discrepancy = delta;
      shift = 1;
    } else {
      ++shift;
    }
  }
  if (2 * len > s.size()) return std::nullopt;
  c.resize(len + 1);
  MinimalRecurrence out;
  out.length = len;
  for (std::size_t i = 1; i <= len; ++i) out.coefficients.push_back(-c[i]);
  return out;
}

/// Outcome of identify_rlt: a recurrence, or the reason there is none.
struct Identification {
  std::optional<LinearRecurrence> recurrence;
  std::vector<Rational> probes;  // S(l) = T(2^l - 1)
  std::string failure;

  explicit operator bool() const { return recurrence.has_value(); }
};

/// Recognises r as the run-length transform of a linear recurrence.
///
/// Since [2^l - 1]_2 is a single run, S(l) = r(2^l - 1). 2 rank + 4 probes
/// feed Berlekamp-Massey; the recurrence found is accepted only if its
/// normal form is equivalent to r.
inline Identification identify_rlt(const LinearRepresentation& r) {
  Identification out;
  const std::size_t probes = 2 * r.rank() + 4;
  for (std::size_t l = 0; l < probes; ++l) {
    out.probes.push_back(r.evaluate_word(BitWord(std::vector<bool>(l, true))));
  }
  if (out.probes.front() != 1) {
    out.failure = "not a run-length transform: S(0) = " + to_string(out.probes.front()) + " != 1";
    return out;
  }
  const auto found = berlekamp_massey(out.probes);
  if (!found || found->length == 0) {
    out.failure = "no linear recurrence determined by " + std::to_string(probes) + " probes";
    return out;
  }
  std::vector<Integer> coefficients, initial;
  for (std::size_t i = 0; i < found->length; ++i) {
    if (!is_integral(found->coefficients[i]) || !is_integral(out.probes[i])) {
      out.failure = "recurrence has non-integer data";
      return out;
    }
    coefficients.push_back(to_integer(found->coefficients[i]));
    initial.push_back(to_integer(out.probes[i]));
  }
  LinearRecurrence rec(std::move(coefficients), std::move(initial));
  if (!equivalent(r.order() == ReadingOrder::msd ? r : reverse(r), normal_form(rec))) {
    out.failure = "not a run-length transform: " + rec.str() +
                  " matches single runs but not the whole representation";
    return out;
  }
  out.recurrence = std::move(rec);
  return out;
}

}  // namespace regseq
