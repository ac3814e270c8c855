#include "ptb/potential.hpp"

#include <cmath>

#include "ptb/errors.hpp"

namespace ptb {
namespace {

void require_timelike(const ScalarQuintet& q) {
  if (!(q.P2 > 0.0)) {
    throw Error(ErrorKind::NonTimelikeP, "potential evaluated with P^2 <= 0");
  }
}

class FreePotential final : public PotentialModel {
 public:
  PotentialEval evaluate(const ScalarQuintet& q) const override {
    require_timelike(q);
    return {};
  }
  PotentialStructure structure() const override {
    return {true, true, true, true};
  }
  std::string name() const override { return "free"; }
};

class HarmonicPotential final : public PotentialModel {
 public:
  explicit HarmonicPotential(double chi) : chi_(chi) {}

  PotentialEval evaluate(const ScalarQuintet& q) const override {
    require_timelike(q);
    const double m = std::sqrt(q.P2);
    PotentialEval e;
    e.value = chi_ * m * q.ztil2;
    e.dP2 = chi_ * q.ztil2 / (2.0 * m);
    e.dztil2 = chi_ * m;
    return e;
  }
  PotentialStructure structure() const override {
    return {true, true, false, true};
  }
  std::string name() const override { return "harmonic"; }

 private:
  double chi_;
};

class CentralPowerPotential final : public PotentialModel {
 public:
  CentralPowerPotential(double g, int n) : g_(g), n_(n) {}

  PotentialEval evaluate(const ScalarQuintet& q) const override {
    require_timelike(q);
    if (!(q.ztil2 < 0.0)) {
      throw Error(ErrorKind::DomainError,
                  "central_power is singular at rho = 0 (needs z~^2 < 0)");
    }
    const double m = std::sqrt(q.P2);
    const double rho = std::sqrt(-q.ztil2);
    const double inv_rho_n = std::pow(rho, -n_);
    PotentialEval e;
    e.value = -g_ * m * inv_rho_n;
    e.dP2 = -g_ * inv_rho_n / (2.0 * m);
    // dV/dz~^2 = dV/drho * drho/dz~^2 with drho/dz~^2 = -1/(2 rho).
    e.dztil2 = -0.5 * n_ * g_ * m * inv_rho_n / (rho * rho);
    return e;
  }
  PotentialStructure structure() const override {
    return {true, true, false, true};
  }
  std::string name() const override { return "central_power"; }

 private:
  double g_;
  int n_;
};

}  // namespace

PotentialSpec make_free() { return std::make_shared<FreePotential>(); }

PotentialSpec make_harmonic(double chi) {
  if (!(chi > 0.0) || !std::isfinite(chi)) {
    throw Error(ErrorKind::BadParameter, "harmonic needs chi > 0");
  }
  return std::make_shared<HarmonicPotential>(chi);
}

PotentialSpec make_central_power(double g, int n) {
  if (!std::isfinite(g) || n < 1) {
    throw Error(ErrorKind::BadParameter,
                "central_power needs finite g and integer n >= 1");
  }
  return std::make_shared<CentralPowerPotential>(g, n);
}

}  // namespace ptb
