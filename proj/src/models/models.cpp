#include "models/models.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qfps {

namespace {

[[noreturn]] void no_catalog_entry(const ModelSpec& spec, const char* where) {
  throw Error(errc::config_error, std::string(where) + ": no catalog entry for " +
                                      model_kind_name(spec.kind) + "/" +
                                      interaction_mode_name(spec.interaction) + " in basis " +
                                      basis_name(spec.basis));
}

// Kind x basis x interaction combinations that exist in the catalog.
void check_combo(const ModelSpec& spec, const char* where) {
  const BasisTag b = spec.basis;
  switch (spec.kind) {
    case ModelKind::SingleQubit:
      if (spec.interaction != InteractionMode::Full) no_catalog_entry(spec, where);
      if (b != BasisTag::Flux && b != BasisTag::EnergyQ2) no_catalog_entry(spec, where);
      return;
    case ModelKind::TwoQubitNoAnneal:
      switch (spec.interaction) {
        case InteractionMode::Full:
          if (b != BasisTag::Flux && b != BasisTag::EnergyQ2 && b != BasisTag::EnergyQ1Q2 &&
              b != BasisTag::DressedQ2)
            no_catalog_entry(spec, where);
          return;
        case InteractionMode::ZZ:
          if (b != BasisTag::EnergyQ2 && b != BasisTag::DressedQ2) no_catalog_entry(spec, where);
          return;
        case InteractionMode::XX:
          if (b != BasisTag::EnergyQ1Q2 && b != BasisTag::DressedQ1Q2)
            no_catalog_entry(spec, where);
          return;
      }
      return;
    case ModelKind::TwoQubitWithAnneal:
      switch (spec.interaction) {
        case InteractionMode::Full:
          if (b != BasisTag::Flux && b != BasisTag::EnergyQ1Q2) no_catalog_entry(spec, where);
          return;
        case InteractionMode::ZZ:
        case InteractionMode::XX:
          if (b != BasisTag::EnergyQ1Q2 && b != BasisTag::DressedQ1Q2)
            no_catalog_entry(spec, where);
          return;
      }
      return;
    case ModelKind::ExchangeReference:
      if (spec.interaction != InteractionMode::Full) no_catalog_entry(spec, where);
      if (b != BasisTag::EnergyQ1Q2 && b != BasisTag::DressedQ1Q2) no_catalog_entry(spec, where);
      return;
  }
  no_catalog_entry(spec, where);
}

double theta1_of(const QubitParams& q, bool eps_over_delta) {
  if (!eps_over_delta) return mixing_angle(q);
  QubitParams swapped{q.delta, q.epsilon};
  return mixing_angle(swapped);
}

// delta_eff2 as a Fock-diagonal operator: stat + chi (2n + 1).
ComplexMatrix delta_hat(const FockSpace& space, double stat, double chi) {
  ComplexMatrix m = ComplexMatrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) m(n, n) = stat + chi * (2.0 * n + 1.0);
  return m;
}

// Rotation angle that takes the block -a sz + b sx to diag(-omega, +omega)
// under flux_energy_unitary: sin(theta) = -b/omega, cos(theta) = a/omega.
// Singular only when gap and coupling both vanish.
double block_angle(double a, double b, const char* where) {
  if (a == 0.0 && b == 0.0)
    throw Error(errc::singular_angle, std::string(where) + ": block has no gap and no coupling");
  return std::atan2(-b, a);
}

// 4x4 rotation mixing the {00,11} pair by theta_outer and the {01,10} pair
// by theta_inner, each with the flux_energy_unitary sign pattern.
ComplexMatrix xx_pair_unitary(double theta_outer, double theta_inner) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  double co = std::cos(theta_outer / 2.0), so = std::sin(theta_outer / 2.0);
  double ci = std::cos(theta_inner / 2.0), si = std::sin(theta_inner / 2.0);
  u(0, 0) = co;
  u(0, 3) = so;
  u(3, 0) = -so;
  u(3, 3) = co;
  u(1, 1) = ci;
  u(1, 2) = si;
  u(2, 1) = -si;
  u(2, 2) = ci;
  return u;
}

double safe_ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(num / den);
}

// alpha* from the solved photon weight; negative weight means the equality
// has no physical coherent amplitude.
std::optional<double> alpha_from_nbar(double nbar_star, const char* cond) {
  if (nbar_star < 0.0)
    throw Error(errc::no_crossover_in_range,
                std::string("rwa_ratio: ") + cond + " crossover needs mean photon number " +
                    std::to_string(nbar_star) + ", below the vacuum");
  return std::sqrt(nbar_star);
}

struct SectorRatios {
  double bare = 0.0;
  double dressed = 0.0;
};

}  // namespace

const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::SingleQubit: return "single_qubit";
    case ModelKind::TwoQubitNoAnneal: return "two_qubit_no_anneal";
    case ModelKind::TwoQubitWithAnneal: return "two_qubit_with_anneal";
    case ModelKind::ExchangeReference: return "exchange_reference";
  }
  return "unknown";
}

const char* interaction_mode_name(InteractionMode m) {
  switch (m) {
    case InteractionMode::Full: return "full";
    case InteractionMode::ZZ: return "zz";
    case InteractionMode::XX: return "xx";
  }
  return "unknown";
}

DerivedModel derive_model(const ModelSpec& spec) {
  const ModelParams& p = spec.params;
  DerivedModel d;

  if (spec.kind == ModelKind::ExchangeReference) {
    d.delta0 = (p.omega2 - p.omega1) / 2.0;
    d.chi = p.chi_direct;
    d.zz_regime = d.xx_regime = true;
    return d;
  }

  EffectiveQubitParams eq2 = effective_qubit(p.q2, p.eta2, p.eps_scale2);
  ResonatorParams res{p.omega_r, FockSpace(p.n_max)};
  DispersiveParams disp = dispersive_params(eq2, res, p.g);
  d.theta2 = eq2.theta_eff();
  d.omega_eff2 = eq2.omega_eff();
  d.delta2 = disp.detuning;
  d.delta2_static = p.drop_static_detuning ? 0.0 : d.delta2;
  d.chi = disp.chi;
  d.lambda = disp.lambda;

  switch (spec.kind) {
    case ModelKind::SingleQubit:
      d.zz_regime = d.xx_regime = true;
      return d;
    case ModelKind::TwoQubitNoAnneal: {
      d.theta1 = theta1_of(p.q1, p.theta1_eps_over_delta);
      d.omega_eff1 = qubit_freq(p.q1);
      d.j_zz = p.j * std::cos(d.theta2);
      d.j_zx = p.j * std::sin(d.theta2);
      d.j_xx = p.j * std::sin(d.theta1) * std::sin(d.theta2);
      d.zz_regime = std::abs(std::sin(d.theta2)) <= std::abs(std::cos(d.theta2));
      d.xx_regime = std::abs(std::cos(d.theta1)) <= std::abs(std::sin(d.theta1)) &&
                    std::abs(std::cos(d.theta2)) <= std::abs(std::sin(d.theta2));
      return d;
    }
    case ModelKind::TwoQubitWithAnneal: {
      EffectiveQubitParams eq1 = effective_qubit(p.q1, p.eta1, p.eps_scale1);
      d.theta1 = eq1.theta_eff();
      d.omega_eff1 = eq1.omega_eff();
      d.delta1 = d.omega_eff1 - p.omega_r;
      d.delta1_static = p.drop_static_detuning ? 0.0 : d.delta1;
      d.j_zz = p.j * std::cos(d.theta1) * std::cos(d.theta2);
      d.j_xx = p.j * std::sin(d.theta1) * std::sin(d.theta2);
      d.zz_regime = std::abs(std::sin(d.theta1)) <= std::abs(std::cos(d.theta1)) &&
                    std::abs(std::sin(d.theta2)) <= std::abs(std::cos(d.theta2));
      d.xx_regime = std::abs(std::cos(d.theta1)) <= std::abs(std::sin(d.theta1)) &&
                    std::abs(std::cos(d.theta2)) <= std::abs(std::sin(d.theta2));
      return d;
    }
    default: break;
  }
  throw Error(errc::config_error, "derive_model: unknown model kind");
}

ComplexMatrix build_hamiltonian(const ModelSpec& spec, bool* regime_warning) {
  check_combo(spec, "build_hamiltonian");
  const ModelParams& p = spec.params;
  DerivedModel d = derive_model(spec);

  if (regime_warning) {
    *regime_warning = (spec.interaction == InteractionMode::ZZ && !d.zz_regime) ||
                      (spec.interaction == InteractionMode::XX && !d.xx_regime);
  }

  if (spec.basis == BasisTag::DressedQ2 || spec.basis == BasisTag::DressedQ1Q2)
    return dressed_model_hamiltonian(spec);

  if (spec.kind == ModelKind::SingleQubit) {
    EffectiveQubitParams eq2 = effective_qubit(p.q2, p.eta2, p.eps_scale2);
    ResonatorParams res{p.omega_r, FockSpace(p.n_max)};
    return single_qubit_dispersive(eq2, res, p.g, spec.basis, nullptr, p.drop_static_detuning);
  }

  FockSpace space(p.n_max);
  int nf = space.dim();
  ComplexMatrix iff = ComplexMatrix::Identity(nf, nf);
  ComplexMatrix dhat = delta_hat(space, d.delta2_static, d.chi);
  ComplexMatrix sz = pauli_z(), sx = pauli_x(), i2 = id2();

  if (spec.kind == ModelKind::ExchangeReference) {
    Ladder l = ladder_ops(space);
    ComplexMatrix sy = pauli_y();
    return -0.5 * p.omega1 * kron(kron(sz, i2), iff) - 0.5 * p.omega2 * kron(kron(i2, sz), iff) +
           0.5 * p.j * (kron(kron(sx, sx), iff) + kron(kron(sy, sy), iff)) +
           p.chi_direct * kron(kron(sz, i2), l.n);
  }

  // Coupling-field cross terms of order lambda*J are negligible against the
  // qubit and resonator frequencies; the catalog forms carry the coupling
  // only through the qubit-qubit products below.
  if (spec.kind == ModelKind::TwoQubitNoAnneal) {
    switch (spec.interaction) {
      case InteractionMode::Full:
        switch (spec.basis) {
          case BasisTag::EnergyQ2:
            return -0.5 * kron(kron(i2, sz), dhat) + d.j_zz * kron(kron(sz, sz), iff) -
                   d.j_zx * kron(kron(sz, sx), iff);
          case BasisTag::Flux: {
            ComplexMatrix q2f = std::cos(d.theta2) * sz + std::sin(d.theta2) * sx;
            return -0.5 * kron(kron(i2, q2f), dhat) + p.j * kron(kron(sz, sz), iff);
          }
          case BasisTag::EnergyQ1Q2: {
            ComplexMatrix q1e = std::cos(d.theta1) * sz - std::sin(d.theta1) * sx;
            ComplexMatrix q2e = std::cos(d.theta2) * sz - std::sin(d.theta2) * sx;
            return -0.5 * kron(kron(i2, sz), dhat) + p.j * kron(kron(q1e, q2e), iff);
          }
          default: break;
        }
        break;
      case InteractionMode::ZZ:
        return -0.5 * kron(kron(i2, sz), dhat) + d.j_zz * kron(kron(sz, sz), iff);
      case InteractionMode::XX:
        return -0.5 * kron(kron(i2, sz), dhat) + d.j_xx * kron(kron(sx, sx), iff);
    }
  }

  if (spec.kind == ModelKind::TwoQubitWithAnneal) {
    ComplexMatrix h1 = -0.5 * d.delta1_static * kron(kron(sz, i2), iff);
    switch (spec.interaction) {
      case InteractionMode::Full:
        switch (spec.basis) {
          case BasisTag::EnergyQ1Q2: {
            ComplexMatrix q1e = std::cos(d.theta1) * sz - std::sin(d.theta1) * sx;
            ComplexMatrix q2e = std::cos(d.theta2) * sz - std::sin(d.theta2) * sx;
            return h1 - 0.5 * kron(kron(i2, sz), dhat) + p.j * kron(kron(q1e, q2e), iff);
          }
          case BasisTag::Flux: {
            ComplexMatrix q1f = std::cos(d.theta1) * sz + std::sin(d.theta1) * sx;
            ComplexMatrix q2f = std::cos(d.theta2) * sz + std::sin(d.theta2) * sx;
            return -0.5 * d.delta1_static * kron(kron(q1f, i2), iff) -
                   0.5 * kron(kron(i2, q2f), dhat) + p.j * kron(kron(sz, sz), iff);
          }
          default: break;
        }
        break;
      case InteractionMode::ZZ:
        return h1 - 0.5 * kron(kron(i2, sz), dhat) + d.j_zz * kron(kron(sz, sz), iff);
      case InteractionMode::XX:
        return h1 - 0.5 * kron(kron(i2, sz), dhat) + d.j_xx * kron(kron(sx, sx), iff);
    }
  }

  no_catalog_entry(spec, "build_hamiltonian");
}

ComplexMatrix dressed_model_hamiltonian(const ModelSpec& spec) {
  check_combo(spec, "dressed_model_hamiltonian");
  if (spec.basis != BasisTag::DressedQ2 && spec.basis != BasisTag::DressedQ1Q2)
    throw Error(errc::config_error, "dressed_model_hamiltonian: spec.basis must be a dressed tag");

  const ModelParams& p = spec.params;
  DerivedModel d = derive_model(spec);

  ModelSpec bare = spec;
  bare.basis = (spec.basis == BasisTag::DressedQ2) ? BasisTag::EnergyQ2 : BasisTag::EnergyQ1Q2;
  ComplexMatrix h = build_hamiltonian(bare);

  // Uncoupled models carry nothing to dress; the dressed labels connect
  // continuously to the bare ones as J -> 0.
  if (p.j == 0.0) return h;

  // ZZ forms are diagonal in their energy representation already.
  if (spec.interaction == InteractionMode::ZZ) return h;

  ComplexMatrix u0;
  if (spec.kind == ModelKind::TwoQubitNoAnneal && spec.interaction == InteractionMode::Full) {
    DressedAngles a = fq2_dressed_angles(d.delta2_static, d.j_zz, d.j_zx);
    u0 = ComplexMatrix::Zero(4, 4);
    u0.block<2, 2>(0, 0) = flux_energy_unitary(a.theta_n_minus);
    u0.block<2, 2>(2, 2) = flux_energy_unitary(a.theta_n_plus);
  } else if (spec.interaction == InteractionMode::XX) {
    // Static pair gaps (delta1 +- delta2)/2; for the no-anneal kind the
    // first qubit contributes no detuning term.
    double outer = block_angle((d.delta1_static + d.delta2_static) / 2.0, d.j_xx,
                               "dressed_model_hamiltonian");
    double inner = block_angle((d.delta1_static - d.delta2_static) / 2.0, d.j_xx,
                               "dressed_model_hamiltonian");
    u0 = xx_pair_unitary(outer, inner);
  } else if (spec.kind == ModelKind::ExchangeReference) {
    u0 = exchange_dressed_transform(d.delta0, p.j).u4;
  } else {
    no_catalog_entry(spec, "dressed_model_hamiltonian");
  }

  FockSpace space(p.n_max);
  ComplexMatrix u = kron(u0, ComplexMatrix::Identity(space.dim(), space.dim()));
  return u * h * u.adjoint();
}

namespace {

// Ratio pair of the no-anneal full model in sector sigma (+1/-1): the
// dressed residual compares the photon-dependent rotation against the
// statically dressed gap.
SectorRatios no_anneal_full_ratios(const DerivedModel& d, double c, int sigma) {
  double a0 = d.delta2_static / 2.0 + sigma * d.j_zz;
  double an = a0 + c;
  SectorRatios r;
  r.bare = safe_ratio(d.j_zx, an);
  r.dressed = safe_ratio(d.j_zx * c, an * a0 + d.j_zx * d.j_zx);
  return r;
}

SectorRatios with_anneal_xx_ratios(const DerivedModel& d, double c, int sigma) {
  double a = (d.delta2_static + sigma * d.delta1_static) / 2.0;
  double ahat = a + c;
  SectorRatios r;
  r.bare = safe_ratio(d.j_xx, ahat);
  // Plus sector keeps the static gap in the numerator (sum-angle rotation);
  // minus sector rotates only by the photon part.
  double num = (sigma > 0) ? d.j_xx * (a + ahat) : d.j_xx * c;
  r.dressed = safe_ratio(num, a * ahat + d.j_xx * d.j_xx);
  return r;
}

}  // namespace

CrossoverReport rwa_ratio_at_nbar(const ModelSpec& spec, double n_bar, CrossoverSector sector) {
  if (n_bar < 0.0)
    throw Error(errc::invalid_argument, "rwa_ratio: mean photon number must be >= 0");
  const ModelParams& p = spec.params;
  DerivedModel d = derive_model(spec);
  CrossoverReport rep;

  if (spec.kind == ModelKind::SingleQubit) {
    EffectiveQubitParams eq2 = effective_qubit(p.q2, p.eta2, p.eps_scale2);
    rep.bare_ratio = safe_ratio(eq2.delta_eff(), eq2.eps_eff());
    return rep;
  }

  if (spec.kind == ModelKind::ExchangeReference) {
    if (p.j == 0.0) return rep;
    double cn = d.chi * n_bar;
    rep.bare_ratio = safe_ratio(p.j, d.delta0 + cn);
    rep.dressed_ratio =
        safe_ratio(p.j * cn, d.delta0 * d.delta0 + p.j * p.j + d.chi * d.delta0 * n_bar);
    if (d.chi != 0.0)
      rep.crossover_value = alpha_from_nbar(std::hypot(d.delta0, p.j) / std::abs(d.chi),
                                            "exchange_reference");
    return rep;
  }

  if (spec.interaction == InteractionMode::ZZ) return rep;
  if (p.j == 0.0) return rep;

  double c = d.chi * (n_bar + 0.5);

  if (spec.kind == ModelKind::TwoQubitNoAnneal && spec.interaction == InteractionMode::Full) {
    SectorRatios plus = no_anneal_full_ratios(d, c, +1);
    SectorRatios minus = no_anneal_full_ratios(d, c, -1);
    int sigma = (sector == CrossoverSector::Plus)    ? +1
                : (sector == CrossoverSector::Minus) ? -1
                                                     : (plus.dressed >= minus.dressed ? +1 : -1);
    SectorRatios pick = (sigma > 0) ? plus : minus;
    rep.bare_ratio = pick.bare;
    rep.dressed_ratio = pick.dressed;
    if (d.j_zx != 0.0 && d.chi != 0.0) {
      double target = std::hypot(d.delta2_static / 2.0 + sigma * d.j_zz, d.j_zx);
      rep.crossover_value =
          alpha_from_nbar(target / std::abs(d.chi) - 0.5, "two_qubit_no_anneal/full");
    }
    return rep;
  }

  if (spec.kind == ModelKind::TwoQubitNoAnneal && spec.interaction == InteractionMode::XX) {
    double a0 = d.delta2_static / 2.0;
    double an = a0 + c;
    rep.bare_ratio = safe_ratio(d.j_xx, an);
    rep.dressed_ratio = safe_ratio(d.j_xx * c, an * a0 + d.j_xx * d.j_xx);
    if (d.j_xx != 0.0 && d.chi != 0.0) {
      rep.crossover_value = alpha_from_nbar(std::hypot(a0, d.j_xx) / std::abs(d.chi) - 0.5,
                                            "two_qubit_no_anneal/xx");
    }
    return rep;
  }

  if (spec.kind == ModelKind::TwoQubitWithAnneal && spec.interaction == InteractionMode::XX) {
    SectorRatios plus = with_anneal_xx_ratios(d, c, +1);
    SectorRatios minus = with_anneal_xx_ratios(d, c, -1);
    int sigma = (sector == CrossoverSector::Plus)    ? +1
                : (sector == CrossoverSector::Minus) ? -1
                                                     : (plus.dressed >= minus.dressed ? +1 : -1);
    SectorRatios pick = (sigma > 0) ? plus : minus;
    rep.bare_ratio = pick.bare;
    rep.dressed_ratio = pick.dressed;
    if (d.j_xx != 0.0 && d.chi != 0.0) {
      double a = (d.delta2_static + sigma * d.delta1_static) / 2.0;
      double target = (sigma > 0) ? std::abs(d.j_xx) - a : std::hypot(a, d.j_xx);
      rep.crossover_value =
          alpha_from_nbar(target / std::abs(d.chi) - 0.5, "two_qubit_with_anneal/xx");
    }
    return rep;
  }

  throw Error(errc::config_error, std::string("rwa_ratio: no validity condition for ") +
                                      model_kind_name(spec.kind) + "/" +
                                      interaction_mode_name(spec.interaction));
}

CrossoverReport rwa_ratio(const ModelSpec& spec, int photon_n, CrossoverSector sector) {
  if (photon_n < 0 || photon_n >= spec.params.n_max)
    throw Error(errc::invalid_argument, "rwa_ratio: photon_n outside the truncated space");
  return rwa_ratio_at_nbar(spec, static_cast<double>(photon_n), sector);
}

ComplexMatrix exchange_reference_hamiltonian(double w1, double w2, double j, double chi,
                                             int photon_n) {
  ComplexMatrix sz = pauli_z(), sx = pauli_x(), sy = pauli_y(), i2 = id2();
  return -0.5 * w1 * kron(sz, i2) - 0.5 * w2 * kron(i2, sz) +
         0.5 * j * (kron(sx, sx) + kron(sy, sy)) +
         chi * static_cast<double>(photon_n) * kron(sz, i2);
}

}  // namespace qfps
