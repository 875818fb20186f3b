// Three-reservoir carbon cycle and two-layer temperature response.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace ricegroup {

/// Raised when the climate state leaves its physical domain.
struct SimulationDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct TemperatureParams {
  Scalar c1 = Scalar(0.0196);         // atmospheric response speed
  Scalar c3 = Scalar(0.088);          // atmosphere/deep-ocean coupling
  Scalar c4 = Scalar(0.005);          // deep-ocean response speed
  Scalar sensitivity = Scalar(3.2);   // equilibrium warming per CO2 doubling, degC

  bool operator==(const TemperatureParams&) const = default;
};

template <typename Scalar>
struct ClimateParams {
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

  /// Column-stochastic: m' = transfer * m with m = (AT, UP, LO).
  Matrix3 transfer = Matrix3::Identity();
  Scalar forcingCoeff = Scalar(3.8);          // W/m^2 per doubling
  Scalar preindustrialCarbon = Scalar(588);   // GtC
  TemperatureParams<Scalar> temp;

  bool operator==(const ClimateParams& o) const {
    return transfer == o.transfer && forcingCoeff == o.forcingCoeff &&
           preindustrialCarbon == o.preindustrialCarbon && temp == o.temp;
  }
};

template <typename Scalar>
struct ClimateState {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  Vector3 carbon = Vector3::Zero();
  Scalar tAT = Scalar(0);
  Scalar tLO = Scalar(0);

  Scalar mAT() const { return carbon(0); }
  Scalar mUP() const { return carbon(1); }
  Scalar mLO() const { return carbon(2); }
  Scalar total_carbon() const { return carbon.sum(); }

  bool operator==(const ClimateState& o) const {
    return carbon == o.carbon && tAT == o.tAT && tLO == o.tLO;
  }
};

/// Annual DICE-2013 style transfer coefficients.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> make_transfer(Scalar b12, Scalar b21, Scalar b23, Scalar b32) {
  Eigen::Matrix<Scalar, 3, 3> m;
  m << Scalar(1) - b12, b21, Scalar(0),
       b12, Scalar(1) - b21 - b23, b32,
       Scalar(0), b23, Scalar(1) - b32;
  return m;
}

template <typename Derived>
bool is_column_stochastic(const Eigen::MatrixBase<Derived>& m,
                          typename Derived::Scalar tol = typename Derived::Scalar(1e-12)) {
  using Scalar = typename Derived::Scalar;
  if ((m.array() < Scalar(0)).any() || (m.array() > Scalar(1)).any()) return false;
  return ((m.colwise().sum().array() - Scalar(1)).abs() <= tol).all();
}

template <typename Scalar>
Scalar radiative_forcing(Scalar mAT, const ClimateParams<Scalar>& p) {
  using std::log2;
  return p.forcingCoeff * log2(mAT / p.preindustrialCarbon);
}

/// One step of the shared climate. Emissions enter the atmospheric box; the
/// temperature update uses the forcing of the post-transfer atmosphere.
template <typename Scalar>
ClimateState<Scalar> climate_step(const ClimateState<Scalar>& c, Scalar globalEmissions,
                                  const ClimateParams<Scalar>& p) {
  using std::isfinite;
  ClimateState<Scalar> next;
  next.carbon.noalias() = p.transfer * c.carbon;
  next.carbon(0) += globalEmissions;
  if (!(next.carbon(0) > Scalar(0)) || !isfinite(next.carbon(0)))
    throw SimulationDivergence("atmospheric carbon mass left the positive domain");

  const auto& tp = p.temp;
  const Scalar forcing = radiative_forcing(next.mAT(), p);
  const Scalar feedback = p.forcingCoeff / tp.sensitivity;
  next.tAT = c.tAT + tp.c1 * (forcing - feedback * c.tAT - tp.c3 * (c.tAT - c.tLO));
  next.tLO = c.tLO + tp.c4 * (c.tAT - c.tLO);
  if (!isfinite(next.tAT) || !isfinite(next.tLO))
    throw SimulationDivergence("temperature update produced a non-finite value");
  return next;
}

}  // namespace ricegroup
