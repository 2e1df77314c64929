#pragma once

#include "regseq/linrep.hpp"
#include "regseq/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regseq {

struct BlockStats {
  unsigned r = 0;
  Integer g_r;     // sum of T(n) over 0 <= n < 2^r
  Rational mu_r;   // mean of T(n) over 2^r <= n < 2^(r+1)
};

inline Matrix<Rational> digit_sum_matrix(const LinearRepresentation& rep) {
  return rep.gamma0() + rep.gamma1();
}

/// g(r) = v (gamma(0) + gamma(1))^r w: every word of length r is some
/// n < 2^r padded with leading zeros, which compiled representations ignore.
inline Integer block_sum(const LinearRepresentation& rep, unsigned r) {
  auto x = rep.v();
  const auto m = digit_sum_matrix(rep);
  for (unsigned i = 0; i < r; ++i) x = row_times<Rational>(x, m);
  return to_integer(dot<Rational>(x, rep.w()));
}

inline Rational block_average(const LinearRepresentation& rep, unsigned r) {
  return Rational(block_sum(rep, r + 1) - block_sum(rep, r)) / Rational(Integer(1) << r);
}

inline std::vector<BlockStats> block_table(const LinearRepresentation& rep, unsigned r_max) {
  std::vector<BlockStats> out;
  auto x = rep.v();
  const auto m = digit_sum_matrix(rep);
  std::vector<Integer> g;
  for (unsigned r = 0; r <= r_max + 1; ++r) {
    g.push_back(to_integer(dot<Rational>(x, rep.w())));
    x = row_times<Rational>(x, m);
  }
  for (unsigned r = 0; r <= r_max; ++r) {
    out.push_back({r, g[r], Rational(g[r + 1] - g[r]) / Rational(Integer(1) << r)});
  }
  return out;
}

/// Integer polynomial, coefficients from the constant term up.
struct Polynomial {
  std::vector<Integer> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // e.g. "x^2 - 2x - 1"
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
      const Integer& c = coefficients[i];
      if (c == 0) continue;
      const Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (mag != 1 || i == 0) os << mag;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

/// Smallest k with M^k in span{I, M, ..., M^(k-1)} gives the monic minimal
/// polynomial over Q. For an integer matrix its coefficients are integers.
inline Polynomial minimal_polynomial(const Matrix<Rational>& m) {
  if (!m.square()) throw std::invalid_argument("minimal_polynomial of a non-square matrix");
  const std::size_t d = m.rows();
  auto flatten = [&](const Matrix<Rational>& a) {
    Vector<Rational> out;
    out.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) out.insert(out.end(), a.row(i).begin(), a.row(i).end());
    return out;
  };
  RowSpace<Rational> powers(d * d);
  Matrix<Rational> p = Matrix<Rational>::identity(d);
  for (;;) {
    const auto flat = flatten(p);
    if (auto coords = powers.coordinates(flat)) {
      Polynomial poly;
      for (const auto& c : *coords) poly.coefficients.push_back(to_integer(-c));
      poly.coefficients.push_back(1);
      return poly;
    }
    powers.insert(flat);
    p = p * m;
  }
}

inline Polynomial minimal_polynomial(const LinearRepresentation& rep) {
  return minimal_polynomial(digit_sum_matrix(rep));
}

inline Matrix<Rational> evaluate_polynomial(const Polynomial& poly, const Matrix<Rational>& m) {
  Matrix<Rational> acc(m.rows(), m.cols());
  for (std::size_t i = poly.coefficients.size(); i-- > 0;) {
    acc = acc * m + Rational(poly.coefficients[i]) * Matrix<Rational>::identity(m.rows());
  }
  return acc;
}

/// A known closed form for mu(r) together with the eigenvalues that
/// g(r) is an exponential polynomial in.
struct ClosedForm {
  std::vector<double> roots;
  std::function<double(unsigned)> mu;
  std::string text;
};

struct ClosedFormReport {
  bool passed = false;
  std::vector<double> fitted;  // c_i in g(r) = sum c_i roots_i^r
  double max_error_fit = 0;    // relative, fitted exponential polynomial vs exact mu
  double max_error_formula = 0;  // relative, closed form vs exact mu
  std::string failure;
};

namespace detail {

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_dense(std::vector<std::vector<double>> a,
                                                      std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
    }
    if (std::fabs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double relative_error(double got, double exact) {
  const double scale = std::fabs(exact);
  return scale == 0 ? std::fabs(got) : std::fabs(got - exact) / scale;
}

}  // namespace detail

/// Fits g(r) = sum_i c_i roots_i^r on g(0..deg-1), then checks both the fit
/// and the closed-form mu(r) against the exact block averages for r <= r_max.
inline ClosedFormReport verify_closed_form(const LinearRepresentation& rep, const ClosedForm& form,
                                           unsigned r_max, double tol) {
  ClosedFormReport report;
  if (r_max < 1) {
    report.failure = "r_max must be at least 1";
    return report;
  }
  const std::size_t deg = form.roots.size();
  const auto table = block_table(rep, std::max<unsigned>(r_max, static_cast<unsigned>(deg)));
  std::vector<std::vector<double>> vander(deg, std::vector<double>(deg));
  std::vector<double> rhs(deg);
  for (std::size_t r = 0; r < deg; ++r) {
    for (std::size_t i = 0; i < deg; ++i) vander[r][i] = std::pow(form.roots[i], double(r));
    rhs[r] = table[r].g_r.convert_to<double>();
  }
  auto fitted = detail::solve_dense(vander, rhs);
  if (!fitted) {
    report.failure = "singular fit system (roots not distinct?)";
    return report;
  }
  report.fitted = *fitted;
  auto g_fit = [&](unsigned r) {
    double s = 0;
    for (std::size_t i = 0; i < deg; ++i) s += report.fitted[i] * std::pow(form.roots[i], r);
    return s;
  };
  for (unsigned r = 0; r <= r_max; ++r) {
    const double exact = table[r].mu_r.convert_to<double>();
    const double fit = (g_fit(r + 1) - g_fit(r)) / std::ldexp(1.0, static_cast<int>(r));
    report.max_error_fit = std::max(report.max_error_fit, detail::relative_error(fit, exact));
    if (form.mu) {
      report.max_error_formula =
          std::max(report.max_error_formula, detail::relative_error(form.mu(r), exact));
    }
  }
  report.passed = report.max_error_fit <= tol && report.max_error_formula <= tol;
  if (!report.passed) {
    std::ostringstream os;
    os << "relative error fit=" << report.max_error_fit
       << " formula=" << report.max_error_formula << " exceeds " << tol;
    report.failure = os.str();
  }
  return report;
}

/// Known block-average formulas, keyed by fixture name.
inline std::optional<ClosedForm> known_closed_form(std::string_view fixture) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  auto p = [](double x, double e) { return std::pow(x, e); };
  if (fixture == "thm6") {
    return ClosedForm{{1 + s2, 1 - s2},
                      [=](unsigned r) {
                        return (p(1 + s2, r + 1) + p(1 - s2, r + 1)) / p(2, r + 1);
                      },
                      "(1/2^(r+1))((1+sqrt2)^(r+1) + (1-sqrt2)^(r+1))"};
  }
  if (fixture == "thm7") {
    return ClosedForm{{1 + s3, 1 - s3},
                      [=](unsigned r) {
                        return ((2 + s3) * p(1 + s3, r) + (2 - s3) * p(1 - s3, r)) / p(2, r + 1);
                      },
                      "(1/2^(r+1))((2+sqrt3)(1+sqrt3)^r + (2-sqrt3)(1-sqrt3)^r)"};
  }
  if (fixture == "thm8") {
    return ClosedForm{{(3 + s5) / 2, (3 - s5) / 2},
                      [=](unsigned r) {
                        return (p(1 + s5, 2) * p(3 + s5, r) - p(1 - s5, 2) * p(3 - s5, r)) /
                               (p(2, 2.0 * r + 2) * s5);
                      },
                      "(1/(2^(2r+2) sqrt5))((1+sqrt5)^2 (3+sqrt5)^r - (1-sqrt5)^2 (3-sqrt5)^r)"};
  }
  if (fixture == "thm9") {
    return ClosedForm{{1 + s2, 1 - s2},
                      [=](unsigned r) {
                        return s2 * (p(1 + s2, r + 1) - p(1 - s2, r + 1)) / p(2, r + 1);
                      },
                      "(sqrt2/2^(r+1))((1+sqrt2)^(r+1) - (1-sqrt2)^(r+1))"};
  }
  if (fixture == "thm10") {
    return ClosedForm{{(3 + s5) / 2, (3 - s5) / 2},
                      [=](unsigned r) {
                        return ((1 + s5) * p(3 + s5, r + 1) - (1 - s5) * p(3 - s5, r + 1)) /
                               (p(2, 2.0 * r + 2) * s5);
                      },
                      "(1/(2^(2r+2) sqrt5))((1+sqrt5)(3+sqrt5)^(r+1) - (1-sqrt5)(3-sqrt5)^(r+1))"};
  }
  return std::nullopt;
}

}  // namespace regseq
