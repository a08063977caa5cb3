#include "qfp/anneal.hpp"

#include "core/special.hpp"

#include <cmath>

namespace qfps {

double QfpParams::t_qfp() const { return M_PI / (2.0 * omega); }

double QfpParams::mass() const { return 1.0 / ((2.0 * xi) * (2.0 * xi)); }

double beta_schedule(const QfpParams& p, double t) {
  if (t < 0.0) throw Error(errc::invalid_argument, "beta_schedule: negative time");
  if (t >= p.t_qfp()) return p.beta_max;
  return p.beta_max * std::sin(p.omega * t);
}

namespace {

double well_grad(double beta, double lambda, double phi) {
  return phi - beta * std::sin(phi) - lambda;
}

double well_curv(double beta, double phi) { return 1.0 - beta * std::cos(phi); }

// Root polish inside a sign-change bracket: Newton steps that stay inside
// the bracket, bisection otherwise.
double polish_root(double beta, double lambda, double lo, double hi) {
  double flo = well_grad(beta, lambda, lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double f = well_grad(beta, lambda, x);
    if (std::abs(f) <= 1e-14) break;
    if ((f < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = f;
    } else {
      hi = x;
    }
    double fp = well_curv(beta, x);
    double step = (fp != 0.0) ? x - f / fp : lo - 1.0;
    x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    if (hi - lo < 1e-16) break;
  }
  return x;
}

}  // namespace

WellSolution solve_phi_p(double beta, double lambda, double xi) {
  if (beta < 0.0 || lambda < 0.0 || xi <= 0.0)
    throw Error(errc::invalid_argument, "solve_phi_p: beta, lambda >= 0 and xi > 0 required");
  const double hi = M_PI + lambda;
  const int grid = 4096;

  double found = -1.0;
  double prev_x = 0.0;
  double prev_f = well_grad(beta, lambda, 0.0);
  if (prev_f == 0.0 && well_curv(beta, 0.0) > 0.0) found = 0.0;

  for (int k = 1; k <= grid && found < 0.0; ++k) {
    double x = hi * k / grid;
    double f = well_grad(beta, lambda, x);
    if (f == 0.0 || (f > 0.0) != (prev_f > 0.0)) {
      double root = (f == 0.0) ? x : polish_root(beta, lambda, prev_x, x);
      if (well_curv(beta, root) > 0.0) {
        found = root;
        break;
      }
    }
    prev_x = x;
    prev_f = f;
  }

  if (found < 0.0)
    throw Error(errc::no_stable_minimum, "solve_phi_p: no stable well in [0, pi + lambda]");

  WellSolution w;
  w.phi_p = found;
  w.curvature = well_curv(beta, found);
  w.omega_eff = 2.0 * xi * std::sqrt(w.curvature);
  w.sigma_hat = std::sqrt(xi) * std::pow(w.curvature, -0.25);
  // residual guard; the polish loop converges far below this in practice
  if (std::abs(well_grad(beta, lambda, found)) > 1e-12)
    throw Error(errc::no_stable_minimum, "solve_phi_p: root polish failed to converge");
  return w;
}

double potential(double beta, double lambda, int sigma_z, double phi) {
  return 0.5 * phi * phi + beta * std::cos(phi) - lambda * phi * sigma_z;
}

double potential_taylor(double beta, double lambda, int sigma_z, double phi) {
  WellSolution w = solve_phi_p(beta, lambda);
  double center = sigma_z * w.phi_p;
  double u_min = potential(beta, lambda, sigma_z, center);
  double d = phi - center;
  return u_min + 0.5 * w.curvature * d * d;
}

double storage_fidelity(const QfpParams& p, const QubitParams& q, double t_m, BasisTag basis,
                        Projection projection) {
  if (t_m < 0.0) throw Error(errc::invalid_argument, "storage_fidelity: negative time");
  double beta = beta_schedule(p, t_m);
  WellSolution w = solve_phi_p(beta, p.lambda, p.xi);
  double position = w.phi_p;
  if (basis != BasisTag::Flux && projection == Projection::RealPart)
    position *= std::cos(mixing_angle(q));
  return normal_cdf(position / w.sigma_hat);
}

ComplexMatrix coupled_qfp_hamiltonian(const QfpParams& p, double t, const FockSpace& space,
                                      const QubitParams* qubit) {
  double beta = beta_schedule(p, t);
  WellSolution w = solve_phi_p(beta, p.lambda, p.xi);
  double coupling = w.omega_eff * std::sqrt(p.mass() * w.omega_eff / 2.0) * w.phi_p;

  Ladder l = ladder_ops(space);
  ComplexMatrix h = w.omega_eff * kron(id2(), l.n) +
                    coupling * kron(pauli_z(), ComplexMatrix(l.a + l.adag));
  if (qubit) {
    ComplexMatrix hq = -0.5 * (qubit->epsilon * pauli_z() + qubit->delta * pauli_x());
    h += kron(hq, ComplexMatrix::Identity(space.dim(), space.dim()));
  }
  return h;
}

double bare_dressed_overlap(int n_fock, double g_over_wr, double theta, double theta_q) {
  if (n_fock < 0) throw Error(errc::invalid_argument, "bare_dressed_overlap: negative level");
  double b2 = g_over_wr * g_over_wr;
  return std::cos((theta - theta_q) / 2.0) * std::exp(-b2 / 2.0) * laguerre(n_fock, b2);
}

DisplacedBlockEigen displaced_block_eigen(int n_fock, double eps, double delta, double g,
                                          double wr) {
  if (n_fock < 0) throw Error(errc::invalid_argument, "displaced_block_eigen: negative level");
  if (wr <= 0.0) throw Error(errc::invalid_argument, "displaced_block_eigen: wr must be positive");
  double b = g / wr;
  // overlap of the two displaced wells: <N|D(-2 g/wr)|N>
  double s = std::exp(-2.0 * b * b) * laguerre(n_fock, 4.0 * b * b);
  double ds = delta * s;
  if (eps == 0.0 && ds == 0.0)
    throw Error(errc::degenerate_qubit, "displaced_block_eigen: block splitting vanishes");
  double e_n = wr * (n_fock - b * b);
  double gap = 0.5 * std::hypot(eps, ds);
  DisplacedBlockEigen out;
  out.e_minus = e_n - gap;
  out.e_plus = e_n + gap;
  out.theta = std::atan2(ds, eps);
  return out;
}

}  // namespace qfps
