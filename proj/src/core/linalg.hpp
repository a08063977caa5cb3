#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfps {

using complexd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class errc {
  ok = 0,
  invalid_argument,
  dim_mismatch,
  not_hermitian,
  truncation_too_small,
  degenerate_qubit,
  singular_angle,
  no_stable_minimum,
  zero_detuning,
  no_crossover_in_range,
  not_photon_block_diagonal,
  not_a_state,
  config_error,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-9);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b);

struct EigResult {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, phase fixed
};

// Hermitian eigendecomposition with a deterministic eigenvector phase:
// the largest-magnitude component of every column is made real and positive.
// Throws errc::not_hermitian if h deviates from h^dag beyond herm_tol.
EigResult hermitian_eig(const ComplexMatrix& h, double herm_tol = 1e-10);

// U(t) = exp(-i h t), built from the eigendecomposition of h so the result
// is unitary by construction.
ComplexMatrix evolve(const ComplexMatrix& h, double t);

// exp(s) for anti-Hermitian s (displacement generators, frame rotations).
ComplexMatrix exp_antihermitian(const ComplexMatrix& s);

// Trace out every tensor factor not listed in keep. dims holds the factor
// dimensions in order, row-major composite index convention, and keep holds
// indices into dims (ascending).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// 2x2 Pauli helpers used all over the model builders.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix id2();

}  // namespace qfps
