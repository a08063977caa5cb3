#pragma once

#include <vector>

#include "core/fock.hpp"
#include "core/linalg.hpp"

namespace qfps {

// One-shot readout settings. The resonator starts in |alpha> (real, >= 0),
// evolves for t_m under the qubit-conditioned Hamiltonian and is then
// measured with the half-plane POVM. chi_sign fixes which half-plane counts
// as the "+" outcome so that outcome labels track the sign of the shift.
struct MeasurementConfig {
  double alpha = 1.0;
  double t_m = 0.0;
  int chi_sign = +1;
  FockSpace space;
};

// Matrix element <m|E_x|n> weighted by the coherent amplitudes of the
// initial field state, x = +1 (lower half-plane) or -1 (upper).
complexd g_coeff(int m, int n, double alpha, int x);

// Half-plane POVM element over the truncated Fock space. E(+1) + E(-1) = I.
ComplexMatrix povm_element(const FockSpace& space, int x);

struct ChannelResult {
  ComplexMatrix post_state_plus;   // unnormalized, trace = p_plus
  ComplexMatrix post_state_minus;  // unnormalized, trace = p_minus
  double p_plus = 0.0;
  double p_minus = 0.0;
  double truncation_tail = 0.0;  // coherent weight lost to truncation
};

// Measurement superoperator through the g-sum: the Hamiltonian must commute
// with the photon number so the evolution factors into per-photon qubit
// blocks K_n. rho0 lives on the qubit factor(s) (2x2 or 4x4); for 4x4
// inputs the first qubit is traced out of the post-states.
ChannelResult apply_channel_fast(const ComplexMatrix& h, const ComplexMatrix& rho0,
                                 const MeasurementConfig& cfg);

// Same channel without the block-diagonal shortcut: tensor the field state
// on, evolve the full matrix, apply the POVM, trace the resonator (and the
// first qubit for 4x4 inputs). Deliberately shares no code with the fast
// path so the two can check each other.
ChannelResult apply_channel_oracle(const ComplexMatrix& h, const ComplexMatrix& rho0,
                                   const MeasurementConfig& cfg);

// <psi0|sigma|psi0>. sigma must be Hermitian; unit trace unless
// allow_unnormalized (conditional post-states carry their probability).
double fidelity(const ComplexVector& psi0, const ComplexMatrix& sigma,
                bool allow_unnormalized = false);

struct ProtocolResult {
  double fidelity_nonselective = 0.0;  // vs E_+(rho) + E_-(rho)
  double fidelity_plus = 0.0;          // vs unnormalized E_+(rho)
  double fidelity_minus = 0.0;
  double fidelity_matched = 0.0;  // outcome whose half-plane the pointer enters
  bool matched_is_plus = false;
  ChannelResult channel;
};

// Full readout pass: state preparation, conditioned evolution, POVM,
// fidelities. rho0 on the qubit factor(s); psi_ref is the reference state
// for fidelities and must match the post-state dimension (the second qubit
// for 4x4 inputs). use_oracle switches the channel implementation.
ProtocolResult run_protocol(const ComplexMatrix& h, const ComplexMatrix& rho0,
                            const ComplexVector& psi_ref, const MeasurementConfig& cfg,
                            bool use_oracle = false);

// Pure single-qubit convenience wrapper.
ProtocolResult run_protocol(const ComplexMatrix& h, const ComplexVector& psi0,
                            const MeasurementConfig& cfg, bool use_oracle = false);

ComplexVector default_initial_state();  // (|0> + |1>)/sqrt(2)

// z+, z-, x+, x-, y+, y- single-qubit states for protocol reports.
std::vector<ComplexVector> cardinal_states();

}  // namespace qfps
