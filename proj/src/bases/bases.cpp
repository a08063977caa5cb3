#include "bases/bases.hpp"

#include <cmath>

namespace qfps {

double mixing_angle(const QubitParams& q) {
  if (q.epsilon == 0.0 && q.delta == 0.0)
    throw Error(errc::degenerate_qubit, "mixing_angle: epsilon and delta are both zero");
  return std::atan2(q.delta, q.epsilon);
}

double qubit_freq(const QubitParams& q) { return std::hypot(q.epsilon, q.delta); }

const char* basis_name(BasisTag tag) {
  switch (tag) {
    case BasisTag::Flux: return "flux";
    case BasisTag::EnergyQ2: return "energy_q2";
    case BasisTag::EnergyQ1Q2: return "energy_q1q2";
    case BasisTag::DressedQ2: return "dressed_q2";
    case BasisTag::DressedQ1Q2: return "dressed_q1q2";
  }
  return "unknown";
}

ComplexMatrix flux_energy_unitary(double theta) {
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  ComplexMatrix u(2, 2);
  u << c, s, -s, c;
  return u;
}

DressedTransform exchange_dressed_transform(double delta0, double j) {
  if (delta0 == 0.0 && j == 0.0)
    throw Error(errc::degenerate_qubit,
                "exchange_dressed_transform: both qubit splitting and coupling vanish");
  double sgn = (delta0 < 0.0) ? -1.0 : 1.0;
  DressedTransform t;
  t.gamma0 = std::atan2(sgn * j, std::abs(delta0));
  double c = std::cos(t.gamma0 / 2.0);
  double s = std::sin(t.gamma0 / 2.0);
  t.u4 = ComplexMatrix::Identity(4, 4);
  t.u4(1, 1) = c;
  t.u4(1, 2) = s;
  t.u4(2, 1) = -s;
  t.u4(2, 2) = c;
  return t;
}

DressedAngles fq2_dressed_angles(double delta_eff2_n, double j_zz, double j_zx) {
  double den_minus = delta_eff2_n / 2.0 - j_zz;
  double den_plus = delta_eff2_n / 2.0 + j_zz;
  if (den_minus == 0.0 || den_plus == 0.0)
    throw Error(errc::singular_angle, "fq2_dressed_angles: block denominator is zero");
  DressedAngles a;
  a.theta_n_minus = std::atan2(j_zx, den_minus);
  a.theta_n_plus = std::atan2(-j_zx, den_plus);
  return a;
}

}  // namespace qfps
