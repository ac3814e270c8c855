#pragma once

#include <vector>

namespace ptb {

/// Extreme mass-ratio quantities for m1 = gamma m2, eps = gamma^2,
/// Lambda = alpha m2^2.
struct RatioAnalysis {
  double gamma = 0.0;
  double eps = 0.0;
  double alpha = 0.0;
  double M2 = 0.0;
  double beta = 0.0;    // 2 alpha + 2 sqrt(alpha^2 + alpha); NaN for alpha < 0
  double offset = 0.0;  // 1/2 + nu/M^2, coefficient of r in x2 - Xi
};

/// Throws BadParameter for m2 <= 0 or eps outside (0, 1], and
/// InadmissibleAlpha unless alpha > -eps.
RatioAnalysis analyze(double m2, double alpha, double eps);

struct RatioRow {
  RatioAnalysis analysis;
  double reference = 0.0;  // gamma/(1+gamma) for alpha = 0, beta/(2(1+beta)) for alpha > 0, 0 otherwise
  double residual = 0.0;   // |offset - reference|
  double residual_ratio = 0.0;  // residual of the previous row / this residual; 0 on the first row
};

/// One row per eps (strictly decreasing).
std::vector<RatioRow> limit_report(double m2, double alpha,
                                   const std::vector<double>& eps_sequence);

}  // namespace ptb
