// Regional economy: production, damages, abatement and stock updates.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricegroup {

/// Static description of one region. Ids are 1-based and contiguous.
struct RegionParams {
  int id = 1;
  std::string label;
  std::string continent;
  double K0 = 1.0;      // trillion currency units
  double L0 = 1.0;      // millions
  double A0 = 1.0;
  double gL = 0.0;
  double gA = 0.0;
  double gamma = 0.3;
  double delta = 0.1;
  double sigma0 = 0.0;  // GtC per unit gross output
  double gSigma = 0.0;
  double theta1 = 0.0;
  double theta2 = 2.6;
  double a1 = 0.0;
  double a2 = 0.0;
  std::vector<double> exports;  // per step; the last entry holds past its end
  double alpha = 1.45;
  double beta = 0.98;

  double exports_at(std::size_t t) const {
    if (exports.empty()) return 0.0;
    return t < exports.size() ? exports[t] : exports.back();
  }

  bool operator==(const RegionParams&) const = default;
};

struct RegionState {
  double K = 0.0;
  double L = 1.0;
  double A = 1.0;
  double sigma = 0.0;

  bool operator==(const RegionState&) const = default;
};

/// Savings rate s in [0,1) and mitigation rate mu in [0,1].
struct Action {
  double s = 0.0;
  double mu = 0.0;

  bool operator==(const Action&) const = default;
};

inline RegionState initial_state(const RegionParams& p) {
  return {p.K0, p.L0, p.A0, p.sigma0};
}

namespace detail {
template <typename Scalar>
void require_finite(Scalar v, const char* what) {
  using std::isfinite;
  if (!isfinite(v)) throw std::domain_error(std::string(what) + " must be finite");
}
}  // namespace detail

/// Cobb-Douglas gross output A * K^gamma * L^(1-gamma).
template <typename Scalar>
Scalar gross_output(Scalar A, Scalar K, Scalar L, Scalar gamma) {
  using std::pow;
  detail::require_finite(A, "productivity");
  detail::require_finite(K, "capital");
  detail::require_finite(L, "population");
  detail::require_finite(gamma, "capital elasticity");
  if (!(A > Scalar(0)) || K < Scalar(0) || !(L > Scalar(0)))
    throw std::domain_error("gross_output requires A>0, K>=0, L>0");
  return A * pow(K, gamma) * pow(L, Scalar(1) - gamma);
}

/// Share of output lost at atmospheric anomaly tAT, clamped to [0,1].
template <typename Scalar>
Scalar damage_fraction(Scalar tAT, Scalar a1, Scalar a2) {
  detail::require_finite(tAT, "temperature");
  detail::require_finite(a1, "a1");
  detail::require_finite(a2, "a2");
  return std::clamp(a1 * tAT + a2 * tAT * tAT, Scalar(0), Scalar(1));
}

/// Share of output spent on abatement, theta1 * mu^theta2.
template <typename Scalar>
Scalar abatement_cost_fraction(Scalar mu, Scalar theta1, Scalar theta2) {
  using std::pow;
  detail::require_finite(mu, "mitigation rate");
  if (mu < Scalar(0) || mu > Scalar(1))
    throw std::domain_error("mitigation rate outside [0,1]");
  return theta1 * pow(mu, theta2);
}

template <typename Scalar>
Scalar net_output(Scalar Q, Scalar d, Scalar lam) {
  return Q * (Scalar(1) - d) * (Scalar(1) - lam);
}

template <typename Scalar>
Scalar emissions(Scalar sigma, Scalar mu, Scalar Q) {
  return sigma * (Scalar(1) - mu) * Q;
}

template <typename Scalar>
Scalar capital_step(Scalar K, Scalar s, Scalar Qnet, Scalar delta) {
  return (Scalar(1) - delta) * K + s * Qnet;
}

/// Advances population, productivity and emission intensity. Capital is
/// left to capital_step.
inline RegionState exogenous_step(const RegionState& state, const RegionParams& p) {
  RegionState next = state;
  next.L = state.L * (1.0 + p.gL);
  next.A = state.A * (1.0 + p.gA);
  next.sigma = state.sigma * (1.0 - p.gSigma);
  return next;
}

}  // namespace ricegroup
