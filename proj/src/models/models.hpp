#pragma once

#include <optional>

#include "bases/bases.hpp"
#include "core/fock.hpp"
#include "jcm/jcm.hpp"

namespace qfps {

enum class ModelKind {
  SingleQubit,         // one latched qubit read out through its resonator
  TwoQubitNoAnneal,    // FQ1 still bare (its QFP not fired), FQ2 latched
  TwoQubitWithAnneal,  // both QFPs latched, both qubits effective
  ExchangeReference,   // flip-flop coupled pair with a direct sigma_z shift
};

enum class InteractionMode { Full, ZZ, XX };

const char* model_kind_name(ModelKind k);
const char* interaction_mode_name(InteractionMode m);

// Parameter record for every catalog model. Which fields matter depends on
// the kind; unused ones are ignored:
//   SingleQubit:        q2, eta2, eps_scale2, g, omega_r
//   TwoQubitNoAnneal:   + q1 (bare, eta1/eps_scale1 ignored), j
//   TwoQubitWithAnneal: + eta1, eps_scale1 (FQ1 latched as well)
//   ExchangeReference:  omega1, omega2, j, chi_direct
struct ModelParams {
  QubitParams q1;
  QubitParams q2;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eps_scale1 = 1.0;
  double eps_scale2 = 1.0;
  double j = 0.0;        // qubit-qubit coupling
  double g = 0.0;        // FQ2-resonator coupling
  double omega_r = 0.0;  // resonator frequency
  double omega1 = 0.0;   // exchange-reference splittings
  double omega2 = 0.0;
  double chi_direct = 0.0;  // exchange kind takes its shift as a plain input
  int n_max = 27;           // retained Fock levels

  // Readout-frame switch: drop the photon-number-independent detuning terms
  // so only the measurement back-action acts on the qubits. Spectra within a
  // representation shift rigidly per photon sector; dressing angles and RWA
  // ratios then use the frame's static detuning (zero).
  bool drop_static_detuning = false;

  // Swapped mixing-angle convention theta1 = atan2(eps1, delta1) for the
  // bare first qubit of the no-anneal kind. Off by default.
  bool theta1_eps_over_delta = false;
};

struct ModelSpec {
  ModelKind kind = ModelKind::SingleQubit;
  BasisTag basis = BasisTag::EnergyQ2;
  InteractionMode interaction = InteractionMode::Full;
  ModelParams params;
};

// Frequencies, angles and coupling coefficients implied by a spec. The
// coupling fields read per kind:
//   no-anneal:   j_zz = J cos(theta2), j_zx = J sin(theta2),
//                j_xx = J sin(theta1) sin(theta2)
//   with-anneal: j_zz = J cos(theta1) cos(theta2),
//                j_xx = J sin(theta1) sin(theta2), j_zx unused
// chi always derives from the true detuning delta2 regardless of the
// readout-frame switch; delta*_static are what the frame keeps.
struct DerivedModel {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double omega_eff1 = 0.0;  // bare frequency for the no-anneal first qubit
  double omega_eff2 = 0.0;
  double delta1 = 0.0;  // omega_eff1 - omega_r (with-anneal kind)
  double delta2 = 0.0;  // omega_eff2 - omega_r
  double delta1_static = 0.0;
  double delta2_static = 0.0;
  double delta0 = 0.0;  // (omega2 - omega1)/2, exchange kind
  double chi = 0.0;
  double lambda = 0.0;
  double j_zz = 0.0;
  double j_zx = 0.0;
  double j_xx = 0.0;
  bool zz_regime = false;  // flux-dominated: the zz approximation is honest
  bool xx_regime = false;  // tunnel-dominated: the xx approximation is honest
};

// Throws zero_detuning when the measured qubit sits on the resonator
// frequency (exchange kind excepted, its shift is direct input).
DerivedModel derive_model(const ModelSpec& spec);

// Full qubit(s) x Fock Hamiltonian of the requested model, basis and
// interaction mode. Dispersive frame throughout: the photon number enters
// only through delta_eff2(n) = delta2_static + chi(2n+1), so the result is
// photon-number block-diagonal by construction. Dressed basis tags delegate
// to dressed_model_hamiltonian. regime_warning (optional) is set when a
// ZZ/XX approximation is requested outside its supporting regime; the
// matrix is still built.
// Throws config_error for kind/basis/mode combinations with no catalog
// entry, zero_detuning via derive_model.
ComplexMatrix build_hamiltonian(const ModelSpec& spec, bool* regime_warning = nullptr);

// Same model conjugated per photon sector by the fixed static-angle
// transform (photon dependence evaluated at n = 0 detuning, i.e. the
// frame's static value). spec.basis must be the matching dressed tag.
// J = 0 returns the bare matrix unchanged; ZZ modes are already diagonal
// and likewise pass through. Angle construction throws singular_angle when
// a block loses both its gap and its coupling.
ComplexMatrix dressed_model_hamiltonian(const ModelSpec& spec);

// Which block pair of a two-qubit model a validity ratio refers to. Auto
// picks the sector with the larger dressed ratio (worst case governs).
// Models with a single condition ignore the choice.
enum class CrossoverSector { Auto, Plus, Minus };

struct CrossoverReport {
  double bare_ratio = 0.0;
  double dressed_ratio = 0.0;
  // Coherent amplitude alpha* at which the two ratios coincide, when the
  // model has such a condition. nullopt when no condition exists for the
  // kind/mode (single qubit, zz, J = 0, chi = 0).
  std::optional<double> crossover_value;
};

// Rotating-wave validity ratios with the photon number frozen at photon_n.
// bare_ratio compares the counter-rotating coupling against the block gap
// of the undressed representation, dressed_ratio the residual n-dependent
// coupling left after the static dressing. Throws invalid_argument when
// photon_n is negative or outside the truncation, no_crossover_in_range
// when the equality condition exists but has no real alpha >= 0.
CrossoverReport rwa_ratio(const ModelSpec& spec, int photon_n,
                          CrossoverSector sector = CrossoverSector::Auto);

// Continuous-n variant of rwa_ratio (weights n by a mean photon number
// rather than an integer sector). The crossover self-consistency check
// lives at n_bar = crossover_value^2, generically non-integer.
CrossoverReport rwa_ratio_at_nbar(const ModelSpec& spec, double n_bar,
                                  CrossoverSector sector = CrossoverSector::Auto);

// 4x4 exchange-reference block at a fixed photon number:
//   -(w1/2) sz x I - (w2/2) I x sz + (J/2)(sx sx + sy sy) + chi n (sz x I).
// The dressed form follows by conjugation with exchange_dressed_transform.
ComplexMatrix exchange_reference_hamiltonian(double w1, double w2, double j, double chi,
                                             int photon_n);

}  // namespace qfps
