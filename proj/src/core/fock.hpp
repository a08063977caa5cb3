#pragma once

#include "core/linalg.hpp"

namespace qfps {

// Truncated oscillator space with levels |0..n_max-1>.
struct FockSpace {
  explicit FockSpace(int n_levels);
  int n_max;  // number of retained levels
  int dim() const { return n_max; }
};

struct Ladder {
  ComplexMatrix a;
  ComplexMatrix adag;
  ComplexMatrix n;
};

Ladder ladder_ops(const FockSpace& space);

struct CoherentState {
  ComplexVector amp;       // normalized amplitudes in the truncated space
  double pre_norm;         // norm^2 before renormalization
  bool truncation_warning; // set when n_max is below the recommended floor
};

// |alpha> with real alpha >= 0, truncated and renormalized. The components
// are computed through exp(log) so large alpha cannot overflow n! directly.
// Throws truncation_too_small when the captured weight drops below 1 - 1e-6.
CoherentState coherent_state(const FockSpace& space, double alpha);

// Recommended minimum truncation for a coherent state of amplitude alpha.
int coherent_n_max(double alpha);

// D(nu) = exp(nu a^dag - conj(nu) a) on the truncated space. Sets
// *truncation_warning when |nu|^2 + 6|nu| + 8 exceeds n_max.
ComplexMatrix displacement(const FockSpace& space, complexd nu,
                           bool* truncation_warning = nullptr);

}  // namespace qfps
