#include "sonia/eval/stats.hpp"

#include <cmath>
#include <limits>

namespace sonia::eval {

namespace {

constexpr double kBetaTolerance = 1e-12;
constexpr int kMaxIterations = 10000;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) * B(a, b) / (x^a (1-x)^b) * a.
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
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
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kBetaTolerance) return h;
  }
  throw EvalError(EvalErrorCode::kDomain, "incomplete beta continued fraction did not converge");
}

}  // namespace

std::string_view to_string(EvalErrorCode code) {
  switch (code) {
    case EvalErrorCode::kRange: return "E_RANGE";
    case EvalErrorCode::kLength: return "E_LEN";
    case EvalErrorCode::kDomain: return "E_DOMAIN";
  }
  return "E_DOMAIN";
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
    throw EvalError(EvalErrorCode::kDomain, "incomplete beta needs a, b > 0 and 0 <= x <= 1");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0) || std::isnan(t)) throw EvalError(EvalErrorCode::kDomain, "t-distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(x, df / 2.0, 0.5);
}

TTestResult t_test_summary(const SummaryStats& stats, double mu0) {
  if (!(stats.sd > 0.0) || stats.n < 2 || !std::isfinite(stats.mean) || !std::isfinite(mu0)) {
    throw EvalError(EvalErrorCode::kDomain, "t-test needs sd > 0, n >= 2 and finite means");
  }
  TTestResult r;
  r.t = (stats.mean - mu0) / (stats.sd / std::sqrt(static_cast<double>(stats.n)));
  r.df = stats.n - 1;
  r.p = student_t_two_sided_p(r.t, static_cast<double>(r.df));
  return r;
}

SummaryStats summarize(std::span<const double> values) {
  if (values.size() < 2) throw EvalError(EvalErrorCode::kDomain, "need at least two observations");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return SummaryStats{mean, std::sqrt(ss / static_cast<double>(values.size() - 1)), static_cast<long>(values.size())};
}

TTestResult t_test_sample(std::span<const double> values, double mu0) {
  return t_test_summary(summarize(values), mu0);
}

double sus_score(std::span<const int> answers) {
  if (answers.size() != kSusItems) {
    throw EvalError(EvalErrorCode::kLength,
                    "SUS needs exactly 10 answers, got " + std::to_string(answers.size()));
  }
  int sum = 0;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const int x = answers[i];
    if (x < 1 || x > 5) {
      throw EvalError(EvalErrorCode::kRange,
                      "answer " + std::to_string(i + 1) + " = " + std::to_string(x) + " outside 1..5");
    }
    // i is 0-based: even i is an odd-numbered question.
    sum += (i % 2 == 0) ? x - 1 : 5 - x;
  }
  return 2.5 * sum;
}

}  // namespace sonia::eval
