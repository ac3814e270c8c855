#include "ptb/mass_ratio.hpp"

#include <cmath>

#include "ptb/errors.hpp"
#include "ptb/mass_shell.hpp"

namespace ptb {

RatioAnalysis analyze(double m2, double alpha, double eps) {
  if (!(m2 > 0.0) || !std::isfinite(m2)) {
    throw Error(ErrorKind::BadParameter, "m2 must be positive");
  }
  if (!(eps > 0.0) || !(eps <= 1.0)) {
    throw Error(ErrorKind::BadParameter, "eps must lie in (0, 1]");
  }
  if (!(alpha > -eps) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InadmissibleAlpha,
                "alpha must exceed -eps (m1^2 + Lambda > 0)");
  }
  RatioAnalysis r;
  r.eps = eps;
  r.gamma = std::sqrt(eps);
  r.alpha = alpha;
  const double m22 = m2 * m2;
  const double root = std::sqrt((1.0 + alpha) * (alpha + eps));
  if (alpha >= 0.0) {
    r.M2 = m22 * (1.0 + 2.0 * alpha + eps + 2.0 * root);
    r.beta = 2.0 * alpha + 2.0 * std::sqrt(alpha * alpha + alpha);
  } else {
    r.M2 = mass_shell_from_lambda(r.gamma * m2, m2, alpha * m22).M2;
    r.beta = NAN;
  }
  // 1/2 + nu/M^2 = (M^2 + 2 nu) / (2 M^2) with
  // M^2 + 2 nu = 2 m2^2 (alpha + eps + root), which stays accurate as eps -> 0.
  r.offset = m22 * (alpha + eps + root) / r.M2;
  return r;
}

std::vector<RatioRow> limit_report(double m2, double alpha,
                                   const std::vector<double>& eps_sequence) {
  for (std::size_t i = 1; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] < eps_sequence[i - 1])) {
      throw Error(ErrorKind::BadParameter, "eps sequence must be strictly decreasing");
    }
  }
  std::vector<RatioRow> rows;
  rows.reserve(eps_sequence.size());
  for (double eps : eps_sequence) {
    RatioRow row;
    row.analysis = analyze(m2, alpha, eps);
    if (alpha == 0.0) {
      row.reference = row.analysis.gamma / (1.0 + row.analysis.gamma);
    } else if (alpha > 0.0) {
      row.reference = row.analysis.beta / (2.0 * (1.0 + row.analysis.beta));
    }
    row.residual = std::abs(row.analysis.offset - row.reference);
    if (!rows.empty() && row.residual > 0.0) {
      row.residual_ratio = rows.back().residual / row.residual;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ptb
