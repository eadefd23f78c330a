#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sonia::eval {

enum class EvalErrorCode { kRange, kLength, kDomain };

std::string_view to_string(EvalErrorCode code);

class EvalError : public std::invalid_argument {
 public:
  EvalError(EvalErrorCode code, const std::string& message) : std::invalid_argument(message), code_(code) {}
  EvalErrorCode code() const noexcept { return code_; }

 private:
  EvalErrorCode code_;
};

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued fraction (modified Lentz) with relative tolerance 1e-12,
/// evaluated on whichever side of the mean converges fastest.
double regularized_incomplete_beta(double x, double a, double b);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` degrees
/// of freedom: I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

struct SummaryStats {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
  long n = 0;
};

struct TTestResult {
  double t = 0.0;
  long df = 0;
  double p = 1.0;  // two-sided
};

/// One-sample t-test from published summary statistics.
/// Throws EvalError(E_DOMAIN) when sd <= 0 or n < 2.
TTestResult t_test_summary(const SummaryStats& stats, double mu0);

/// Mean and sample sd (n-1 denominator). Throws EvalError(E_DOMAIN) when
/// fewer than two values are given.
SummaryStats summarize(std::span<const double> values);

/// One-sample t-test on raw observations.
TTestResult t_test_sample(std::span<const double> values, double mu0);

inline constexpr std::size_t kSusItems = 10;

/// System Usability Scale score in [0, 100]. Odd-numbered items contribute
/// x-1, even-numbered items 5-x; the sum is scaled by 2.5.
/// Throws EvalError: E_LEN unless exactly ten answers, E_RANGE outside 1..5.
double sus_score(std::span<const int> answers);

}  // namespace sonia::eval
