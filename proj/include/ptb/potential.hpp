#pragma once

#include <memory>
#include <string>

#include "ptb/kinematics.hpp"

namespace ptb {

/// Value of V and its partials with respect to each member of the quintet
/// (P^2, z~^2, y~^2, z~.y~, w).
struct PotentialEval {
  double value = 0.0;
  double dP2 = 0.0;
  double dztil2 = 0.0;
  double dytil2 = 0.0;
  double dzy = 0.0;
  double dw = 0.0;
};

/// Structural facts a model guarantees identically on its domain.
struct PotentialStructure {
  bool ytil2_independent = false;  // dytil2 == 0
  bool zy_independent = false;     // dzy == 0
  bool p2_independent = false;     // dP2 == 0, so F == 0
  bool w_independent = false;      // dw == 0, so G == 0

  /// {z~, V} = 0: the relative momentum equation is that of a central force.
  bool central() const { return ytil2_independent && zy_independent; }
  /// F == G == 0 on every orbit; T is then linear in lambda.
  bool academic() const { return p2_independent && w_independent; }
};

/// Unipotential interaction V(P^2, z~^2, y~^2, z~.y~, (y.P)^2/P^2).
/// Implementations are immutable; evaluate() must be safe to call
/// concurrently.
class PotentialModel {
 public:
  virtual ~PotentialModel() = default;

  /// Throws DomainError outside the model's domain (its singular set).
  virtual PotentialEval evaluate(const ScalarQuintet& q) const = 0;
  virtual PotentialStructure structure() const = 0;
  virtual std::string name() const = 0;
};

using PotentialSpec = std::shared_ptr<const PotentialModel>;

// Built-in models.
//   free:                 V = 0
//   harmonic(chi):        V = chi sqrt(P^2) z~^2, chi > 0
//   central_power(g, n):  V = -g sqrt(P^2) / rho^n, rho = sqrt(-z~^2), n >= 1
// With the (+,-,-,-) signature the non-relativistic analogue of V is -V, so
// central_power is attractive for g < 0.
PotentialSpec make_free();
PotentialSpec make_harmonic(double chi);
PotentialSpec make_central_power(double g, int n);

}  // namespace ptb
