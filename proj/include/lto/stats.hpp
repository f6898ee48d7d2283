#pragma once

// Replicate-run statistics: moments, normality tests, two-sample location and
// scale tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace lto::stats {

class DegenerateSample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Sample {
  std::string label;
  std::vector<double> values;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double level = 0.05;
  bool accepted = true;  // null hypothesis not rejected: p >= level
};

inline TestResult make_result(double statistic, double p, double level) {
  p = std::clamp(p, 0.0, 1.0);
  return {statistic, p, level, p >= level};
}

inline double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Unbiased (n - 1) variance.
inline double variance(std::span<const double> x) {
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

inline double median(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace detail {

struct CentralMoments {
  double m2 = 0, m3 = 0, m4 = 0;
};

inline CentralMoments central_moments(std::span<const double> x) {
  const double m = mean(x);
  CentralMoments c;
  for (double v : x) {
    const double d = v - m;
    c.m2 += d * d;
    c.m3 += d * d * d;
    c.m4 += d * d * d * d;
  }
  const auto n = static_cast<double>(x.size());
  c.m2 /= n;
  c.m3 /= n;
  c.m4 /= n;
  return c;
}

inline bool constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
}

inline double poly(std::span<const double> c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

inline double normal_sf(double z) {
  return boost::math::cdf(boost::math::complement(boost::math::normal_distribution<>(), z));
}

}  // namespace detail

struct Moments {
  double kurtosis_excess = 0.0;  // NaN for n = 3
  double skewness = 0.0;
};

// Bias-adjusted sample skewness (G1) and excess kurtosis (G2).
inline Moments moments(std::span<const double> x) {
  if (x.size() < 3) throw std::invalid_argument("moments need at least 3 observations");
  if (detail::constant(x)) throw DegenerateSample("moments of a constant sample");
  const auto n = static_cast<double>(x.size());
  const auto c = detail::central_moments(x);
  const double g1 = c.m3 / std::pow(c.m2, 1.5);
  const double g2 = c.m4 / (c.m2 * c.m2) - 3.0;
  Moments r;
  r.skewness = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
  r.kurtosis_excess = x.size() < 4 ? std::nan("") : (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0);
  return r;
}

// Shapiro-Wilk W with Royston's approximation for the coefficients and the
// p-value (valid for 3 <= n <= 5000).
inline TestResult shapiro_wilk(std::span<const double> sample, double level = 0.05) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) throw std::invalid_argument("Shapiro-Wilk needs 3 <= n <= 5000");
  if (detail::constant(sample)) throw DegenerateSample("Shapiro-Wilk on a constant sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());

  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[] = {-2.273, 0.459};

  const auto an = static_cast<double>(n);
  const std::size_t half = n / 2;
  std::vector<double> a(half + 1, 0.0);  // 1-based, upper-half coefficients
  if (n == 3) {
    a[1] = std::sqrt(0.5);
  } else {
    const boost::math::normal_distribution<> nd;
    double summ2 = 0.0;
    for (std::size_t i = 1; i <= half; ++i) {
      a[i] = boost::math::quantile(nd, (static_cast<double>(i) - 0.375) / (an + 0.25));
      summ2 += a[i] * a[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = detail::poly(c1, rsn) - a[1] / ssumm2;
    std::size_t first = 2;
    double fac = 0.0;
    if (n > 5) {
      first = 3;
      const double a2 = -a[2] / ssumm2 + detail::poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * a[1] * a[1] - 2.0 * a[2] * a[2]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[2] = a2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1));
    }
    a[1] = a1;
    for (std::size_t i = first; i <= half; ++i) a[i] = -a[i] / fac;
  }

  double numerator = 0.0;
  for (std::size_t i = 1; i <= half; ++i) numerator += a[i] * (x[n - i] - x[i - 1]);
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double w = std::min(1.0, numerator * numerator / ss);

  double p = 0.0;
  if (n == 3) {
    constexpr double pi6 = 1.90985931710274;  // 6 / pi
    constexpr double stqr = 1.04719755119660;  // pi / 3
    p = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
  } else {
    double y = std::log(1.0 - w);
    double mu = 0.0, sigma = 1.0;
    if (n <= 11) {
      const double gamma = detail::poly(g, an);
      if (y >= gamma) return make_result(w, 1e-99, level);
      y = -std::log(gamma - y);
      mu = detail::poly(c3, an);
      sigma = std::exp(detail::poly(c4, an));
    } else {
      const double ln = std::log(an);
      mu = detail::poly(c5, ln);
      sigma = std::exp(detail::poly(c6, ln));
    }
    p = detail::normal_sf((y - mu) / sigma);
  }
  return make_result(w, p, level);
}

// D'Agostino-Pearson omnibus test: K^2 = Z_skew^2 + Z_kurt^2 against chi^2(2).
inline TestResult dagostino_k2(std::span<const double> x, double level = 0.05) {
  if (x.size() < 8) throw std::invalid_argument("D'Agostino K^2 needs at least 8 observations");
  if (detail::constant(x)) throw DegenerateSample("D'Agostino K^2 on a constant sample");
  const auto n = static_cast<double>(x.size());
  const auto c = detail::central_moments(x);
  const double b1 = c.m3 / std::pow(c.m2, 1.5);
  const double b2 = c.m4 / (c.m2 * c.m2);

  const double y = b1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  const double z_skew = delta * std::asinh(y / alpha);

  const double e = 3.0 * (n - 1.0) / (n + 1.0);
  const double var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double xk = (b2 - e) / std::sqrt(var_b2);
  const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                            std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
  const double A = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
  const double term1 = 1.0 - 2.0 / (9.0 * A);
  const double denom = 1.0 + xk * std::sqrt(2.0 / (A - 4.0));
  const double term2 = denom == 0.0 ? 0.0
                                    : std::copysign(std::cbrt((1.0 - 2.0 / A) / std::abs(denom)), denom);
  const double z_kurt = (term1 - term2) / std::sqrt(2.0 / (9.0 * A));

  const double k2 = z_skew * z_skew + z_kurt * z_kurt;
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<>(2.0), k2));
  return make_result(k2, p, level);
}

enum class TTestVariance { Welch, Pooled };

// Two-sided two-sample t-test.
inline TestResult t_test(std::span<const double> a, std::span<const double> b,
                         TTestVariance variance_mode = TTestVariance::Welch, double level = 0.05) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("t-test needs two samples of size >= 2");
  const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double va = variance(a), vb = variance(b);
  // Two constant samples: equal means give t = 0, different means an infinite t.
  if (va == 0.0 && vb == 0.0) {
    if (ma == mb) return make_result(0.0, 1.0, level);
    return make_result((ma > mb ? 1.0 : -1.0) * std::numeric_limits<double>::infinity(), 0.0, level);
  }
  double se = 0.0, df = 0.0;
  if (variance_mode == TTestVariance::Pooled) {
    const double sp = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
    se = std::sqrt(sp * (1.0 / na + 1.0 / nb));
    df = na + nb - 2.0;
  } else {
    const double qa = va / na, qb = vb / nb;
    se = std::sqrt(qa + qb);
    df = (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  }
  const double t = (ma - mb) / se;
  const boost::math::students_t_distribution<> dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return make_result(t, p, level);
}

// Average ranks (1-based) of the pooled samples; ties share their mean rank.
inline std::vector<double> pooled_ranks(std::span<const double> pooled, double* tie_term = nullptr) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n);
  double ties = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && pooled[order[j]] == pooled[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    const auto t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  if (tie_term) *tie_term = ties;
  return ranks;
}

// Number of ways to interleave na and nb distinct values so that the first
// sample's U equals u, for every u in [0, na * nb].
inline std::vector<double> mann_whitney_counts(std::size_t na, std::size_t nb) {
  // f[i][j] = distribution of U for i values from A and j from B.
  const std::size_t umax = na * nb;
  std::vector<std::vector<std::vector<double>>> f(na + 1, std::vector<std::vector<double>>(nb + 1));
  for (std::size_t i = 0; i <= na; ++i)
    for (std::size_t j = 0; j <= nb; ++j) {
      auto& d = f[i][j];
      d.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        d[0] = 1.0;
        continue;
      }
      // The largest value is from A (it exceeds all j values of B) or from B.
      for (std::size_t u = 0; u < f[i - 1][j].size(); ++u) d[u + j] += f[i - 1][j][u];
      for (std::size_t u = 0; u < f[i][j - 1].size(); ++u) d[u] += f[i][j - 1][u];
    }
  auto out = f[na][nb];
  out.resize(umax + 1, 0.0);
  return out;
}

inline constexpr std::size_t kMannWhitneyExactMax = 20;

// Mann-Whitney U for the first sample (U = R_a - n_a (n_a + 1) / 2). Exact
// two-sided p when both samples have at most 20 values and there are no ties;
// otherwise the tie-corrected normal approximation with continuity correction.
inline TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, double level = 0.05) {
  if (a.empty() || b.empty()) throw std::invalid_argument("Mann-Whitney U needs two non-empty samples");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  double ties = 0.0;
  const auto ranks = pooled_ranks(pooled, &ties);
  const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double ra = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ra += ranks[i];
  const double u = ra - na * (na + 1.0) / 2.0;

  if (ties == 0.0 && a.size() <= kMannWhitneyExactMax && b.size() <= kMannWhitneyExactMax) {
    const auto counts = mann_whitney_counts(a.size(), b.size());
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto ui = static_cast<std::size_t>(std::llround(u));
    double lower = 0.0, upper = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (k <= ui) lower += counts[k];
      if (k >= ui) upper += counts[k];
    }
    return make_result(u, std::min(1.0, 2.0 * std::min(lower, upper) / total), level);
  }

  const double n = na + nb;
  const double mu = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (var <= 0.0) return make_result(u, 1.0, level);
  const double z = (std::abs(u - mu) - 0.5) / std::sqrt(var);
  return make_result(u, 2.0 * detail::normal_sf(z), level);
}

// Levene test centered on the median (Brown-Forsythe variant), two groups.
inline TestResult homoscedasticity(std::span<const double> a, std::span<const double> b, double level = 0.05) {
  if (a.size() < 3 || b.size() < 3) throw std::invalid_argument("Levene test needs samples of size >= 3");
  auto deviations = [](std::span<const double> x) {
    const double med = median(x);
    std::vector<double> z;
    z.reserve(x.size());
    for (double v : x) z.push_back(std::abs(v - med));
    return z;
  };
  const auto za = deviations(a), zb = deviations(b);
  const auto na = static_cast<double>(za.size()), nb = static_cast<double>(zb.size());
  const double ma = mean(za), mb = mean(zb);
  const double grand = (ma * na + mb * nb) / (na + nb);
  const double between = na * (ma - grand) * (ma - grand) + nb * (mb - grand) * (mb - grand);
  double within = 0.0;
  for (double z : za) within += (z - ma) * (z - ma);
  for (double z : zb) within += (z - mb) * (z - mb);
  if (within == 0.0) {
    if (between == 0.0) return make_result(0.0, 1.0, level);
    return make_result(std::numeric_limits<double>::infinity(), 0.0, level);
  }
  const double df2 = na + nb - 2.0;
  const double w = df2 * between / within;
  const boost::math::fisher_f_distribution<> dist(1.0, df2);
  return make_result(w, boost::math::cdf(boost::math::complement(dist, w)), level);
}

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
inline double stddev(std::span<const double> x) { return x.size() < 2 ? 0.0 : std::sqrt(variance(x)); }

}  // namespace lto::stats
