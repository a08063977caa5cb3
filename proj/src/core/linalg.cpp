#include "core/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace qfps {

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid_argument";
    case errc::dim_mismatch: return "dim_mismatch";
    case errc::not_hermitian: return "not_hermitian";
    case errc::truncation_too_small: return "truncation_too_small";
    case errc::degenerate_qubit: return "degenerate_qubit";
    case errc::singular_angle: return "singular_angle";
    case errc::no_stable_minimum: return "no_stable_minimum";
    case errc::zero_detuning: return "zero_detuning";
    case errc::no_crossover_in_range: return "no_crossover_in_range";
    case errc::not_photon_block_diagonal: return "not_photon_block_diagonal";
    case errc::not_a_state: return "not_a_state";
    case errc::config_error: return "config_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix d = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

EigResult hermitian_eig(const ComplexMatrix& h, double herm_tol) {
  if (h.rows() != h.cols())
    throw Error(errc::dim_mismatch, "hermitian_eig: matrix is not square");
  if (!is_hermitian(h, herm_tol))
    throw Error(errc::not_hermitian, "hermitian_eig: matrix is not Hermitian within tolerance");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(errc::invalid_argument, "hermitian_eig: eigensolver failed to converge");

  EigResult res;
  res.values = solver.eigenvalues();
  res.vectors = solver.eigenvectors();

  // Deterministic phase: rotate each column so its largest-magnitude entry
  // (first such entry on ties) is real and positive.
  for (Eigen::Index c = 0; c < res.vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < res.vectors.rows(); ++r) {
      double mag = std::abs(res.vectors(r, c));
      if (mag > best + 1e-15) {
        best = mag;
        imax = r;
      }
    }
    complexd pivot = res.vectors(imax, c);
    if (std::abs(pivot) > 0.0) {
      complexd phase = pivot / std::abs(pivot);
      res.vectors.col(c) /= phase;
    }
  }
  return res;
}

ComplexMatrix evolve(const ComplexMatrix& h, double t) {
  EigResult e = hermitian_eig(h);
  ComplexVector phases(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    phases(k) = std::exp(complexd(0.0, -e.values(k) * t));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix exp_antihermitian(const ComplexMatrix& s) {
  if ((s + s.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(errc::invalid_argument, "exp_antihermitian: generator is not anti-Hermitian");
  // i*s is Hermitian, and exp(s) = exp(-i (i s) * 1).
  return evolve(complexd(0.0, 1.0) * s, 1.0);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw Error(errc::invalid_argument, "partial_trace: factor dims must be positive");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total)
    throw Error(errc::dim_mismatch, "partial_trace: matrix size does not match factor dims");
  for (size_t i = 0; i + 1 < keep.size(); ++i)
    if (keep[i] >= keep[i + 1])
      throw Error(errc::invalid_argument, "partial_trace: keep indices must be strictly ascending");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw Error(errc::invalid_argument, "partial_trace: keep index out of range");

  long kept_dim = 1;
  for (int k : keep) kept_dim *= dims[k];

  const int nf = static_cast<int>(dims.size());
  std::vector<bool> is_kept(nf, false);
  for (int k : keep) is_kept[k] = true;

  // Row-major strides of each factor inside the composite index.
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  // Strides inside the reduced (kept-only) composite index.
  std::vector<long> kstride(nf, 0);
  long acc = 1;
  for (int f = nf - 1; f >= 0; --f) {
    if (is_kept[f]) {
      kstride[f] = acc;
      acc *= dims[f];
    }
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  std::vector<int> digits(nf, 0);
  for (long row = 0; row < total; ++row) {
    long r = row;
    long krow = 0;
    for (int f = 0; f < nf; ++f) {
      digits[f] = static_cast<int>(r / stride[f]);
      r %= stride[f];
      if (is_kept[f]) krow += digits[f] * kstride[f];
    }
    for (long col = 0; col < total; ++col) {
      // Columns contribute only when the traced-out digits match the row's.
      long c = col;
      long kcol = 0;
      bool match = true;
      for (int f = 0; f < nf; ++f) {
        int dc = static_cast<int>(c / stride[f]);
        c %= stride[f];
        if (is_kept[f]) {
          kcol += dc * kstride[f];
        } else if (dc != digits[f]) {
          match = false;
          break;
        }
      }
      if (match) out(krow, kcol) += rho(row, col);
    }
  }
  return out;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix id2() { return ComplexMatrix::Identity(2, 2); }

}  // namespace qfps
