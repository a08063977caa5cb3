#pragma once

#include "core/linalg.hpp"

namespace qfps {

// Flux-qubit parameters in angular-frequency units (hbar = 1).
// H_q = -(epsilon sigma_z + delta sigma_x) / 2.
struct QubitParams {
  double epsilon = 0.0;  // magnetic energy bias
  double delta = 0.0;    // tunnel amplitude
};

// theta = atan2(delta, epsilon). Throws degenerate_qubit at (0,0).
double mixing_angle(const QubitParams& q);

// omega_q = sqrt(epsilon^2 + delta^2)
double qubit_freq(const QubitParams& q);

// Measurement/representation basis of a model Hamiltonian.
enum class BasisTag {
  Flux,
  EnergyQ2,
  EnergyQ1Q2,
  DressedQ2,
  DressedQ1Q2,
};

// Stable lowercase name used in CSV output and CLI arguments.
const char* basis_name(BasisTag tag);

// 2x2 rotation [[cos(t/2), sin(t/2)], [-sin(t/2), cos(t/2)]] taking the flux
// basis to the energy basis: U H_q U^dag = diag(-omega_q/2, +omega_q/2) and
// the ground state reads cos(t/2)|R> - sin(t/2)|L> in flux components.
ComplexMatrix flux_energy_unitary(double theta);

struct DressedTransform {
  double gamma0 = 0.0;
  ComplexMatrix u4;  // bare {00,01,10,11} -> dressed, 00 and 11 fixed
};

// Dressing of two exchange-coupled qubits: the 01/10 pair mixes by gamma0
// with sin(gamma0) = sgn(delta0) J / sqrt(delta0^2 + J^2). sgn(0) counts as
// positive so (delta0=0, J>0) lands on gamma0 = pi/2.
// Throws degenerate_qubit when delta0 = J = 0 (splitting fully degenerate).
DressedTransform exchange_dressed_transform(double delta0, double j);

struct DressedAngles {
  double theta_n_minus = 0.0;
  double theta_n_plus = 0.0;
};

// Per-photon-sector mixing angles of the coupled-qubit blocks
//   [[-d/2 + j_zz, -j_zx], [-j_zx, d/2 - j_zz]]   (minus angle)
//   [[-d/2 - j_zz, +j_zx], [+j_zx, d/2 + j_zz]]   (plus angle)
// with d = delta_eff2_n. tan(theta_n_pm) = (-+) j_zx / (d/2 +- j_zz); the
// atan2 branch is chosen so conjugating a block by
// flux_energy_unitary(theta) yields diag(-omega, +omega).
// Throws singular_angle when a denominator d/2 +- j_zz is exactly zero.
DressedAngles fq2_dressed_angles(double delta_eff2_n, double j_zz, double j_zx);

}  // namespace qfps
