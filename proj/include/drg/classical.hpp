#pragma once

// Classical parameters (D, b, alpha, beta): Gaussian brackets, array
// generation, fitting a measured array, the dual-eigenvalue relation
// theta*_i - theta*_0 = (theta*_1 - theta*_0) [i] b^{1-i}, and the
// three-way equivalence check between the Q-polynomial/parallelogram
// conditions and the existence of a classical fit.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "drg/closure.hpp"
#include "drg/core.hpp"
#include "drg/intersection.hpp"
#include "drg/spectral.hpp"

namespace drg {

/// Gaussian bracket [i] = 1 + b + ... + b^{i-1}; [0] = 0 and [i] = i at
/// b = 1.
inline double gaussian_bracket(int i, double b) {
  double sum = 0.0, power = 1.0;
  for (int t = 0; t < i; ++t) {
    sum += power;
    power *= b;
  }
  return sum;
}

struct ClassicalParameters {
  int D = 0;
  double b = 0, alpha = 0, beta = 0;

  std::string to_string() const {
    return "(" + std::to_string(D) + ", " + std::to_string(b) + ", " + std::to_string(alpha) +
           ", " + std::to_string(beta) + ")";
  }
};

namespace detail {

/// Small exact rational on int64 with __int128 intermediates; inputs in
/// this module are tiny, overflow is a program error.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(errc::non_integer_entry, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rat make(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 g = 1;
    {
      __int128 x = a, y = d;
      while (y != 0) {
        __int128 t = x % y;
        x = y;
        y = t;
      }
      g = x > 0 ? x : 1;
    }
    n /= g;
    d /= g;
    const __int128 lim = std::numeric_limits<std::int64_t>::max();
    if (n > lim || n < -lim || d > lim)
      fail(errc::non_integer_entry, "rational overflow in classical fit");
    Rat r;
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) fail(errc::non_integer_entry, "rational division by zero");
    return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }

  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rat bracket(int i, const Rat& b) {
  Rat sum(0), power(1);
  for (int t = 0; t < i; ++t) {
    sum = sum + power;
    power = power * b;
  }
  return sum;
}

struct RatParams {
  int D;
  Rat b, alpha, beta;
};

/// c_i and b_i of Eqs-style classical form, exactly.
inline Rat classical_c(const RatParams& p, int i) {
  return bracket(i, p.b) * (Rat(1) + p.alpha * bracket(i - 1, p.b));
}
inline Rat classical_b(const RatParams& p, int i) {
  return (bracket(p.D, p.b) - bracket(i, p.b)) * (p.beta - p.alpha * bracket(i, p.b));
}

inline std::optional<RatParams> complete_params(int D, const Rat& b,
                                                const IntersectionArray& arr) {
  if (b.num == 0) return std::nullopt;                    // b = 0 excluded
  if (b.num == -1 && b.den == 1) return std::nullopt;     // b = -1 excluded
  Rat one(1);
  Rat bracket2 = one + b;  // [2]
  if (bracket2.num == 0) return std::nullopt;
  Rat alpha = Rat(arr.c(2)) / bracket2 - one;
  Rat bracketD = bracket(D, b);
  if (bracketD.num == 0) return std::nullopt;  // would force b_0 = 0
  Rat beta = Rat(arr.k()) / bracketD;
  return RatParams{D, b, alpha, beta};
}

inline bool reproduces_array(const RatParams& p, const IntersectionArray& arr) {
  for (int i = 1; i <= p.D; ++i) {
    Rat ci = classical_c(p, i);
    if (!ci.is_integer() || ci.num != arr.c(i)) return false;
  }
  for (int i = 0; i < p.D; ++i) {
    Rat bi = classical_b(p, i);
    if (!bi.is_integer() || bi.num != arr.b(i)) return false;
  }
  Rat bD = classical_b(p, p.D);
  return bD.num == 0;
}

}  // namespace detail

/// Generates the intersection array from classical parameters,
/// rejecting tuples whose entries fail to be positive integers (or whose
/// b_D is nonzero). Rational parameters are evaluated exactly; anything
/// else falls back to floating point with a near-integer check.
inline IntersectionArray classical_intersection_array(const ClassicalParameters& p) {
  if (p.D < 1) fail(errc::unsupported_parameters, "classical D must be >= 1");
  if (p.b == 0.0 || p.b == -1.0)
    fail(errc::unsupported_parameters, "classical b must avoid {0, -1}");

  auto snap = [](double v) -> std::optional<detail::Rat> {
    // Continued-fraction snap to denominators <= 10^6.
    double x = v;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
      double fl = std::floor(x);
      if (std::abs(fl) > 1e15) return std::nullopt;
      std::int64_t a = static_cast<std::int64_t>(fl);
      std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > 1'000'000) break;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      double frac = x - fl;
      if (std::abs(static_cast<double>(p1) / q1 - v) < 1e-12 * std::max(1.0, std::abs(v)))
        return detail::Rat(p1, q1);
      if (frac < 1e-15) break;
      x = 1.0 / frac;
    }
    if (std::abs(static_cast<double>(p1) / q1 - v) < 1e-12 * std::max(1.0, std::abs(v)))
      return detail::Rat(p1, q1);
    return std::nullopt;
  };

  auto rb = snap(p.b);
  auto ra = snap(p.alpha);
  auto rbeta = snap(p.beta);
  std::vector<std::int64_t> b_seq(p.D), c_seq(p.D);
  if (rb && ra && rbeta) {
    detail::RatParams rp{p.D, *rb, *ra, *rbeta};
    for (int i = 1; i <= p.D; ++i) {
      detail::Rat ci = detail::classical_c(rp, i);
      if (!ci.is_integer()) fail(errc::non_integer_entry, "c_" + std::to_string(i));
      if (ci.num < 1) fail(errc::non_positive_entry, "c_" + std::to_string(i));
      c_seq[i - 1] = ci.num;
    }
    for (int i = 0; i < p.D; ++i) {
      detail::Rat bi = detail::classical_b(rp, i);
      if (!bi.is_integer()) fail(errc::non_integer_entry, "b_" + std::to_string(i));
      if (bi.num < 1) fail(errc::non_positive_entry, "b_" + std::to_string(i));
      b_seq[i] = bi.num;
    }
    detail::Rat bD = detail::classical_b(rp, p.D);
    if (bD.num != 0) fail(errc::non_positive_entry, "b_D must vanish");
  } else {
    auto check_int = [](double v, const std::string& what) {
      double r = std::round(v);
      if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v)))
        fail(errc::non_integer_entry, what + " = " + std::to_string(v));
      return static_cast<std::int64_t>(r);
    };
    for (int i = 1; i <= p.D; ++i) {
      double ci = gaussian_bracket(i, p.b) * (1.0 + p.alpha * gaussian_bracket(i - 1, p.b));
      c_seq[i - 1] = check_int(ci, "c_" + std::to_string(i));
      if (c_seq[i - 1] < 1) fail(errc::non_positive_entry, "c_" + std::to_string(i));
    }
    for (int i = 0; i < p.D; ++i) {
      double bi = (gaussian_bracket(p.D, p.b) - gaussian_bracket(i, p.b)) *
                  (p.beta - p.alpha * gaussian_bracket(i, p.b));
      b_seq[i] = check_int(bi, "b_" + std::to_string(i));
      if (b_seq[i] < 1) fail(errc::non_positive_entry, "b_" + std::to_string(i));
    }
    // b_D = ([D]-[D])(beta - alpha [D]) vanishes identically.
  }
  return IntersectionArray(std::move(b_seq), std::move(c_seq));
}

struct Fit {
  ClassicalParameters params;
  bool exact = false;        // verified by exact rational regeneration
  double max_deviation = 0;  // worst |entry - regenerated| over the array
};

struct FitReport {
  std::vector<Fit> candidates;
  bool matched = false;
};

/// Fits (D, b, alpha, beta) to a measured array. Eliminating alpha and
/// beta from c_2 = (1+b)(1+alpha), c_3 = (1+b+b^2)(1 + alpha(1+b)) and
/// b_0 = [D] beta leaves the monic integer cubic
///   b^3 - (c_2 - 1) b^2 - (c_2 - 1) b - (c_2 - c_3) = 0,
/// so every rational root is an integer divisor of |c_2 - c_3|. Integer
/// roots are enumerated exactly; the remaining real roots come from a
/// numeric solve. Every candidate is verified by regenerating the full
/// array, exactly when the root is rational.
inline FitReport fit_classical_parameters(const IntersectionArray& arr) {
  if (arr.D() < 3) fail(errc::unsupported_parameters, "classical fit needs D >= 3");
  FitReport report;
  const std::int64_t c2 = arr.c(2), c3 = arr.c(3);

  auto consider_exact = [&](const detail::Rat& b) {
    for (const Fit& f : report.candidates)
      if (std::abs(f.params.b - b.value()) < 1e-9) return;
    auto params = detail::complete_params(arr.D(), b, arr);
    if (!params) return;
    if (!detail::reproduces_array(*params, arr)) return;
    report.candidates.push_back(
        Fit{{arr.D(), params->b.value(), params->alpha.value(), params->beta.value()}, true, 0.0});
  };

  // Integer roots of the cubic.
  const std::int64_t constant = c2 - c3;
  if (constant != 0) {
    for (std::int64_t d = 1; d * d <= std::abs(constant); ++d) {
      if (std::abs(constant) % d != 0) continue;
      for (std::int64_t cand : {d, -d, std::abs(constant) / d, -std::abs(constant) / d}) {
        __int128 v = static_cast<__int128>(cand) * cand * cand -
                     static_cast<__int128>(c2 - 1) * cand * cand -
                     static_cast<__int128>(c2 - 1) * cand - constant;
        if (v == 0) consider_exact(detail::Rat(cand));
      }
    }
  } else {
    // b^3 = (c2-1)(b^2 + b): b = 0 is excluded, solve the quadratic
    // b^2 - (c2-1) b - (c2-1) = 0 over the integers.
    const std::int64_t disc = (c2 - 1) * (c2 - 1) + 4 * (c2 - 1);
    if (disc >= 0) {
      std::int64_t root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(disc))));
      for (std::int64_t r = std::max<std::int64_t>(0, root - 2); r <= root + 2; ++r) {
        if (r * r != disc) continue;
        for (std::int64_t num : {(c2 - 1) + r, (c2 - 1) - r})
          if (num % 2 == 0) consider_exact(detail::Rat(num / 2));
      }
    }
  }

  // Numeric fallback for irrational real roots: companion-matrix solve.
  {
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(1, 0) = 1;
    companion(2, 1) = 1;
    companion(0, 2) = static_cast<double>(c2 - c3);
    companion(1, 2) = static_cast<double>(c2 - 1);
    companion(2, 2) = static_cast<double>(c2 - 1);
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion);
    for (int idx = 0; idx < 3; ++idx) {
      std::complex<double> root = solver.eigenvalues()(idx);
      if (std::abs(root.imag()) > 1e-9 * std::max(1.0, std::abs(root.real()))) continue;
      double b = root.real();
      if (std::abs(b) < 1e-9 || std::abs(b + 1.0) < 1e-9) continue;
      bool dup = false;
      for (const Fit& f : report.candidates)
        if (std::abs(f.params.b - b) < 1e-6 * std::max(1.0, std::abs(b))) dup = true;
      if (dup) continue;
      double alpha = static_cast<double>(c2) / (1.0 + b) - 1.0;
      double bracketD = gaussian_bracket(arr.D(), b);
      if (std::abs(bracketD) < 1e-12) continue;
      double beta = static_cast<double>(arr.k()) / bracketD;
      double worst = 0;
      for (int i = 1; i <= arr.D(); ++i) {
        double ci = gaussian_bracket(i, b) * (1.0 + alpha * gaussian_bracket(i - 1, b));
        worst = std::max(worst, std::abs(ci - static_cast<double>(arr.c(i))));
      }
      for (int i = 0; i <= arr.D(); ++i) {
        double want = (i < arr.D()) ? static_cast<double>(arr.b(i)) : 0.0;
        double bi = (gaussian_bracket(arr.D(), b) - gaussian_bracket(i, b)) *
                    (beta - alpha * gaussian_bracket(i, b));
        worst = std::max(worst, std::abs(bi - want));
      }
      if (worst < 1e-6)
        report.candidates.push_back(Fit{{arr.D(), b, alpha, beta}, false, worst});
    }
  }

  report.matched = !report.candidates.empty();
  return report;
}

/// Worst relative deviation of theta*_i - theta*_0 from
/// (theta*_1 - theta*_0) [i] b^{1-i} over 1 <= i <= D.
inline double verify_dual_bracket_relation(const DualEigenvalues& dual, double b,
                                       const Tolerances& tol = {}) {
  const auto& ts = dual.theta_star;
  if (ts.size() < 2) fail(errc::unsupported_parameters, "need D >= 1 dual eigenvalues");
  double scale = 0;
  for (double t : ts) scale = std::max(scale, std::abs(t));
  const double lead = ts[1] - ts[0];
  if (std::abs(lead) <= tol.zero_rel * std::max(1.0, scale))
    fail(errc::degenerate_dual, "theta*_1 == theta*_0");
  double worst = 0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    double lhs = ts[i] - ts[0];
    double rhs = lead * gaussian_bracket(static_cast<int>(i), b) *
                 std::pow(b, 1.0 - static_cast<double>(i));
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return worst;
}

struct ClassicalEquivalenceReport {
  bool qpoly = false;
  bool no_parallelograms_len3 = false;
  bool no_parallelograms_any = false;
  bool cond_i = false;    // Q-polynomial and no length-3 parallelograms
  bool cond_ii = false;   // Q-polynomial and no parallelograms of length 3..D
  bool cond_iii = false;  // classical fit exists
  bool all_agree = false;
  FitReport fits;
};

/// Evaluates the three equivalent conditions independently and reports
/// their agreement; a disagreement on a certified input is a bug or a
/// numerical misclassification and the caller should treat it loudly.
inline ClassicalEquivalenceReport classical_equivalence_crosscheck(const Graph& g, const DRGCertificate& cert,
                                            const SpectralData& spec,
                                            const Tolerances& tol = {}) {
  GateReport gate = hypothesis_gate(cert);
  if (!gate.admissible())
    fail(errc::hypothesis_violated, "equivalence crosscheck needs D>=3, a1=0, a2!=0");

  ClassicalEquivalenceReport out;
  out.qpoly = !find_qpoly_orderings(spec, tol).empty();
  out.no_parallelograms_len3 = find_parallelograms(g, 3, true).empty();
  out.no_parallelograms_any = out.no_parallelograms_len3;
  for (int len = 4; len <= cert.array.D() && out.no_parallelograms_any; ++len)
    out.no_parallelograms_any = find_parallelograms(g, len, true).empty();
  out.fits = fit_classical_parameters(cert.array);
  out.cond_i = out.qpoly && out.no_parallelograms_len3;
  out.cond_ii = out.qpoly && out.no_parallelograms_any;
  out.cond_iii = out.fits.matched;
  out.all_agree = (out.cond_i == out.cond_ii) && (out.cond_ii == out.cond_iii);
  return out;
}

}  // namespace drg
