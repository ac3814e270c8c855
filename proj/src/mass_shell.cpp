#include "ptb/mass_shell.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "ptb/errors.hpp"

namespace ptb {
namespace {

constexpr double kSlack = 1e-12;

void require_masses(double m1, double m2) {
  if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2)) {
    throw Error(ErrorKind::BadParameter, "masses must be positive and finite");
  }
  if (m1 > m2) {
    throw Error(ErrorKind::BadParameter, "masses must be ordered m1 <= m2");
  }
}

// sqrt((mu+Lambda)^2 - nu^2) written as a product of the two positive factors
// m1^2+Lambda and m2^2+Lambda, which avoids cancellation near the bound.
double discriminant_root(double m1, double m2, double lambda_) {
  return std::sqrt((m1 * m1 + lambda_) * (m2 * m2 + lambda_));
}

}  // namespace

MassShell mass_shell_from_lambda(double m1, double m2, double lambda_) {
  require_masses(m1, m2);
  if (!std::isfinite(lambda_)) {
    throw Error(ErrorKind::BadParameter, "Lambda must be finite");
  }
  MassShell s;
  s.m1 = m1;
  s.m2 = m2;
  s.mu = 0.5 * (m1 * m1 + m2 * m2);
  s.nu = 0.5 * (m1 - m2) * (m1 + m2);
  s.lambda_ = lambda_;

  const double slack = kSlack * std::max(m2 * m2, std::abs(lambda_));
  if (!(m1 * m1 + lambda_ > slack)) {
    throw Error(ErrorKind::LambdaBoundViolation,
                "m1^2 + Lambda must be positive (positive individual energies)");
  }
  if (!(s.mu + lambda_ - std::abs(s.nu) > slack)) {
    throw Error(ErrorKind::RealityViolation,
                "mu + Lambda must exceed |nu| for a real positive M^2");
  }
  const double root = discriminant_root(m1, m2, lambda_);
  s.M2 = 2.0 * (s.mu + lambda_) + 2.0 * root;
  if (!(s.M2 - 2.0 * std::abs(s.nu) > slack)) {
    throw Error(ErrorKind::EnergyConditionViolation,
                "M^2 must exceed 2|nu| for positive individual energies");
  }
  s.M = std::sqrt(s.M2);
  // M^2 + 2 nu = 2(m1^2 + Lambda) + 2 root, free of cancellation.
  s.E1 = (m1 * m1 + lambda_ + root) / s.M;
  s.E2 = (m2 * m2 + lambda_ + root) / s.M;
  return s;
}

MassShell mass_shell_from_invariants(double M2, double nu, double lambda_) {
  if (!(M2 > 0.0) || !std::isfinite(M2) || !std::isfinite(nu) ||
      !std::isfinite(lambda_)) {
    throw Error(ErrorKind::BadParameter, "M^2 must be positive and finite");
  }
  if (nu > 0.0) {
    throw Error(ErrorKind::BadParameter, "nu must be <= 0 (m1 <= m2)");
  }
  const double slack = kSlack * std::max(M2, std::abs(lambda_));
  if (!(M2 - 2.0 * std::abs(nu) > slack)) {
    throw Error(ErrorKind::EnergyConditionViolation,
                "M^2 must exceed 2|nu| for positive individual energies");
  }
  MassShell s;
  s.M2 = M2;
  s.M = std::sqrt(M2);
  s.nu = nu;
  s.lambda_ = lambda_;
  s.mu = 0.25 * M2 + nu * nu / M2 - lambda_;
  const double m1sq = s.mu + nu;
  if (!(m1sq > slack)) {
    throw Error(ErrorKind::LambdaBoundViolation,
                "m1^2 + Lambda must be positive (positive individual energies)");
  }
  s.m1 = std::sqrt(m1sq);
  s.m2 = std::sqrt(s.mu - nu);
  s.E1 = (0.5 * M2 + nu) / s.M;
  s.E2 = (0.5 * M2 - nu) / s.M;
  return s;
}

double lambda_from_M2(double m1, double m2, double M2) {
  require_masses(m1, m2);
  const double mu = 0.5 * (m1 * m1 + m2 * m2);
  const double nu = 0.5 * (m1 - m2) * (m1 + m2);
  const double slack = kSlack * std::max(m2 * m2, std::abs(M2));
  if (!(M2 > 0.0) || !(M2 - 2.0 * std::abs(nu) > slack)) {
    throw Error(ErrorKind::EnergyConditionViolation,
                "M^2 must exceed 2|nu| for positive individual energies");
  }
  if (!(M2 - (m2 * m2 - m1 * m1) > slack)) {
    throw Error(ErrorKind::MassBoundViolation, "M^2 must exceed m2^2 - m1^2");
  }
  return 0.25 * M2 + nu * nu / M2 - mu;
}

QuarticRoots quartic_roots(double m1, double m2, double lambda_) {
  require_masses(m1, m2);
  const double mu = 0.5 * (m1 * m1 + m2 * m2);
  const double nu = 0.5 * (m1 - m2) * (m1 + m2);
  if (!(m1 * m1 + lambda_ > 0.0)) {
    throw Error(ErrorKind::RealityViolation,
                "roots are not real and positive for m1^2 + Lambda <= 0");
  }
  QuarticRoots r;
  r.plus = 2.0 * (mu + lambda_) + 2.0 * discriminant_root(m1, m2, lambda_);
  // Vieta: the product of the roots is 4 nu^2.
  r.minus = 4.0 * nu * nu / r.plus;
  return r;
}

double quartic_residual(double M2, double mu, double nu, double lambda_) {
  return M2 * M2 - 4.0 * (mu + lambda_) * M2 + 4.0 * nu * nu;
}

double nonrel_check(double m1, double m2, double lambda_) {
  const MassShell s = mass_shell_from_lambda(m1, m2, lambda_);
  if (lambda_ == 0.0) return 1.0;
  // M - (m1+m2) = (M^2 - (m1+m2)^2) / (M + m1 + m2), and
  // M^2 - (m1+m2)^2 = 2 Lambda + 2 (sqrt(ab) - m1 m2) with
  // a b - m1^2 m2^2 = Lambda (m1^2 + m2^2) + Lambda^2.
  const double a = m1 * m1 + lambda_;
  const double b = m2 * m2 + lambda_;
  const double p = m1 * m2;
  const double root_excess =
      (lambda_ * (m1 * m1 + m2 * m2) + lambda_ * lambda_) / (std::sqrt(a * b) + p);
  const double excess = (2.0 * lambda_ + 2.0 * root_excess) / (s.M + m1 + m2);
  const double m0 = p / (m1 + m2);
  return excess * 2.0 * m0 / lambda_;
}

std::pair<double, double> individual_energy_limits(double m1, double m2,
                                                   double lambda_) {
  const MassShell s = mass_shell_from_lambda(m1, m2, lambda_);
  return {s.E1 - m1, s.E2 - m2};
}

MassShell self_consistent_shell(double m1, double m2,
                                const std::function<double(double)>& lambda_of_M,
                                double tol) {
  require_masses(m1, m2);

  // M(Lambda(M)) or nothing when Lambda(M) is inadmissible.
  // The first admissibility failure is kept: when no fixed point exists and
  // the orbit is already inadmissible at M = m1 + m2, that is the reason
  // reported.
  std::optional<Error> first_failure;
  auto image = [&](double M) -> std::optional<MassShell> {
    const double lam = lambda_of_M(M);
    if (!std::isfinite(lam)) return std::nullopt;
    try {
      return mass_shell_from_lambda(m1, m2, lam);
    } catch (const Error& e) {
      if (!first_failure) first_failure = e;
      return std::nullopt;
    }
  };

  double M = m1 + m2;
  const bool start_admissible = image(M).has_value();
  double damping = 1.0;
  double last_residual = INFINITY;
  for (int it = 0; it < 200; ++it) {
    const auto s = image(M);
    if (!s) break;
    const double residual = s->M - M;
    if (std::abs(residual) <= tol * M) {
      if (auto fin = image(s->M)) return *fin;
      break;
    }
    if (std::abs(residual) >= last_residual) damping *= 0.5;
    if (damping < 1e-6) break;
    last_residual = std::abs(residual);
    M += damping * residual;
    if (!(M > 0.0)) break;
  }

  // Fallback: bracket a sign change of f(M) = M(Lambda(M)) - M on a
  // geometric grid around m1 + m2, then refine.
  auto f = [&](double x) {
    const auto s = image(x);
    return s ? s->M - x : NAN;
  };
  const double centre = m1 + m2;
  std::optional<std::pair<double, double>> bracket;
  double prev_x = NAN, prev_f = NAN;
  for (int k = -60; k <= 60 && !bracket; ++k) {
    const double x = centre * std::pow(2.0, 0.25 * k);
    const double fx = f(x);
    if (std::isfinite(fx) && std::isfinite(prev_f)) {
      if (fx == 0.0) bracket = {{x, x}};
      else if ((fx > 0.0) != (prev_f > 0.0)) bracket = {{prev_x, x}};
    }
    prev_x = x;
    prev_f = fx;
  }
  if (!bracket) {
    if (!start_admissible && first_failure) throw *first_failure;
    throw Error(ErrorKind::NoRoot,
                "no self-consistent total mass for the given masses and orbit");
  }
  double root = bracket->first;
  if (bracket->first != bracket->second) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, bracket->first, bracket->second,
        [tol](double a, double b) { return std::abs(b - a) <= tol * std::abs(a); },
        iters);
    root = 0.5 * (r.first + r.second);
  }
  if (auto fin = image(root)) {
    if (std::abs(fin->M - root) <= 10.0 * tol * root) return *fin;
  }
  throw Error(ErrorKind::NoRoot,
              "self-consistent total mass did not converge to tolerance");
}

}  // namespace ptb
