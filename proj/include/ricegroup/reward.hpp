// CRRA utility of consumption and the savings-crediting reward.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace ricegroup {

struct RewardParams {
  double alpha = 1.45;
  double omega = 0.0;     // weight on the as-if-reinvested consumption term
  double beta = 0.98;
  double epsilonC = 1e-9;

  bool operator==(const RewardParams&) const = default;
};

template <typename Scalar>
struct Consumption {
  Scalar value;
  bool infeasible;
};

/// Domestic consumption (1-s)*output - exports, floored at epsilonC. Falling
/// under the floor is flagged, not fatal.
template <typename Scalar>
Consumption<Scalar> consumption(Scalar s, Scalar output, Scalar exports,
                                Scalar epsilonC = Scalar(1e-9)) {
  const Scalar c = (Scalar(1) - s) * output - exports;
  if (c < epsilonC) return {epsilonC, true};
  return {c, false};
}

/// L/(1-alpha) * ((C/L)^(1-alpha) - 1), with the L*ln(C/L) limit near alpha=1.
template <typename Scalar>
Scalar baseline_utility(Scalar C, Scalar L, Scalar alpha) {
  using std::abs;
  using std::log;
  using std::pow;
  if (!(C > Scalar(0)) || !(L > Scalar(0)))
    throw std::domain_error("utility requires positive consumption and population");
  if (!(alpha > Scalar(0))) throw std::domain_error("utility requires alpha > 0");
  if (C == L) return Scalar(0);
  const Scalar perCapita = C / L;
  if (abs(alpha - Scalar(1)) < Scalar(1e-9)) return L * log(perCapita);
  const Scalar oneMinus = Scalar(1) - alpha;
  return L / oneMinus * (pow(perCapita, oneMinus) - Scalar(1));
}

/// (1-omega)*U(C) + omega*U(C + s*Qnet). The second term credits savings as if
/// they were consumed; it is a myopic shaping term, the real return on savings
/// arrives through capital accumulation.
template <typename Scalar>
Scalar augmented_reward(Scalar C, Scalar L, Scalar alpha, Scalar s, Scalar Qnet, Scalar omega) {
  const Scalar base = baseline_utility(C, L, alpha);
  if (omega == Scalar(0) || s == Scalar(0)) return base;
  const Scalar credited = baseline_utility(C + s * Qnet, L, alpha);
  return (Scalar(1) - omega) * base + omega * credited;
}

template <typename Scalar>
Scalar discounted_return(std::span<const Scalar> rewards, Scalar beta) {
  Scalar total = Scalar(0);
  Scalar weight = Scalar(1);
  for (const Scalar r : rewards) {
    total += weight * r;
    weight *= beta;
  }
  return total;
}

}  // namespace ricegroup
