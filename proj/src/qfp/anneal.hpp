#pragma once

#include "bases/bases.hpp"
#include "core/fock.hpp"

namespace qfps {

// QFP circuit constants in dimensionless form. Energies are measured in
// units of the inductive energy E_L unless stated otherwise.
struct QfpParams {
  double xi = 0.4;        // impedance parameter; oscillator mass is 1/(2 xi)^2
  double beta_max = 2.5;  // peak of the normalized flux ramp
  double lambda = 0.1;    // qubit-induced tilt of the double well
  double omega = 1.0;     // annealing ramp rate
  double e_l = 1.0;       // inductive energy scale in frequency units

  double t_qfp() const;  // ramp duration pi / (2 omega)
  double mass() const;   // 1 / (2 xi)^2
};

// Normalized flux drive: beta_max * sin(omega t) during the ramp, held at
// beta_max afterwards. Throws invalid_argument for t < 0.
double beta_schedule(const QfpParams& p, double t);

struct WellSolution {
  double phi_p = 0.0;      // well minimum position (nonnegative branch)
  double curvature = 0.0;  // 1 - beta cos(phi_p), strictly positive
  double omega_eff = 0.0;  // 2 xi sqrt(curvature)
  double sigma_hat = 0.0;  // ground-state wavepacket width
};

// Smallest nonnegative root of phi - beta sin(phi) - lambda = 0 that sits in
// a stable well (positive curvature). Bracketed on [0, pi + lambda] and
// polished with safeguarded Newton; residual stays below 1e-12. xi only
// enters the derived omega_eff and sigma_hat fields.
// Throws no_stable_minimum when no such root exists.
WellSolution solve_phi_p(double beta, double lambda, double xi = 0.4);

// Dimensionless well potential phi^2/2 + beta cos(phi) - lambda phi sigma_z.
double potential(double beta, double lambda, int sigma_z, double phi);

// Quadratic expansion of the same potential around its sigma_z-dependent
// minimum; agrees with potential() to third order in the displacement.
double potential_taylor(double beta, double lambda, int sigma_z, double phi);

// How the complex-rotated well position enters the energy-basis fidelity.
enum class Projection {
  RealPart,   // cos(theta) * phi_p
  Magnitude,  // phi_p (identical to the flux basis)
};

// Probability that the latched wavepacket is found on the correct side of
// the barrier at time t_m: Phi(phi_p / sigma_hat) with Phi the standard
// normal CDF. Energy-basis variants project phi_p first (see Projection).
double storage_fidelity(const QfpParams& p, const QubitParams& q, double t_m, BasisTag basis,
                        Projection projection = Projection::RealPart);

// H / E_L on qubit (x) Fock ordering:
//   Omega(t) a^dag a + Omega(t) sqrt(m Omega(t)/2) phi_p(t) (a + a^dag) sigma_z
// plus -(eps sigma_z + delta sigma_x)/2 when a qubit is passed (its fields
// are then read in units of E_L).
ComplexMatrix coupled_qfp_hamiltonian(const QfpParams& p, double t, const FockSpace& space,
                                      const QubitParams* qubit = nullptr);

// Overlap of the bare and dressed eigenstates of the coupled block at Fock
// level N: cos((theta - theta_q)/2) e^{-b^2/2} L_N(b^2) with b = g/omega_r.
// Signed; Laguerre oscillation makes it cross zero as the coupling grows.
double bare_dressed_overlap(int n_fock, double g_over_wr, double theta, double theta_q);

struct DisplacedBlockEigen {
  double e_minus = 0.0;
  double e_plus = 0.0;
  double theta = 0.0;  // atan2(delta * s, eps), s the displaced-state overlap
};

// Eigenvalues E_N -+ sqrt(eps^2 + delta^2 s^2)/2 of the two-level block
// spanned by the displaced oscillator states at level N, where
// s = <N|D(-2g/wr)|N> and E_N = wr (N - (g/wr)^2).
// Throws degenerate_qubit when eps and delta*s both vanish.
DisplacedBlockEigen displaced_block_eigen(int n_fock, double eps, double delta, double g,
                                          double wr);

}  // namespace qfps
