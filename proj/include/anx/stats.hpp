#ifndef ANX_STATS_HPP
#define ANX_STATS_HPP

// Welch's two-sample t-test and correlation measures.
//
// The Student-t tail probability goes through the regularized incomplete
// beta function, evaluated with a modified Lentz continued fraction:
//
//   p = I_x(df/2, 1/2),  x = df / (df + t^2)   (two-sided)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "anx/error.hpp"

namespace anx {

class InsufficientSampleError : public DataError {
 public:
  using DataError::DataError;
};

class UndefinedCorrelationError : public DataError {
 public:
  using DataError::DataError;
};

namespace detail {

inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided tail probability P(|T| >= |t|) for Student's t with df degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double p = incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
  return std::clamp(p, 0.0, 1.0);
}

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

inline SampleSummary summarize(std::span<const double> xs) {
  SampleSummary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss / static_cast<double>(s.n - 1);
  }
  return s;
}

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  bool significant = false;
};

/// Welch's unequal-variance two-sided t-test of mean(a) - mean(b).
///
/// When both samples have zero variance the statistic is degenerate: equal
/// means give t = 0, p = 1; different means give t = +/-infinity, p = 0.
/// In both cases df is reported as n_a + n_b - 2.
inline TTestResult welch_t(std::span<const double> a, std::span<const double> b,
                           double alpha = 0.05) {
  if (a.size() < 2 || b.size() < 2) {
    throw InsufficientSampleError("welch t-test needs at least 2 observations per sample (got " +
                                  std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                                  ")");
  }
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  const double va = sa.variance / static_cast<double>(sa.n);
  const double vb = sb.variance / static_cast<double>(sb.n);
  const double se2 = va + vb;
  const double diff = sa.mean - sb.mean;

  TTestResult r;
  if (se2 == 0.0) {
    r.df = static_cast<double>(sa.n + sb.n - 2);
    if (diff == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
      r.p = 0.0;
    }
  } else {
    r.t = diff / std::sqrt(se2);
    r.df = se2 * se2 /
           (va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1));
    r.p = student_t_two_sided_p(r.t, r.df);
  }
  r.significant = r.p < alpha;
  return r;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UndefinedCorrelationError("correlation inputs differ in length");
  if (x.size() < 2) throw UndefinedCorrelationError("correlation needs at least 2 points");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("correlation of a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// 1-based ranks; ties share the average of their positions.
inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UndefinedCorrelationError("correlation inputs differ in length");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

}  // namespace anx

#endif  // ANX_STATS_HPP
