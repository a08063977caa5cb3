#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "models/models.hpp"

namespace qfps {

// What walks over the grid and what lands in the fidelity column. For the
// chi maps and the overlap recipe that column carries the plotted quantity
// itself (chi / omega_eff2 resp. the signed overlap), not a fidelity.
enum class RecipeKind {
  ChiT,            // readout fidelity vs chi * t_m
  Alpha,           // readout fidelity vs coherent amplitude
  JCoupling,       // readout fidelity vs J / (omega_2 - omega_1)
  StorageT,        // storage fidelity vs t / t_qfp
  StorageBetaMax,  // storage fidelity at t_qfp vs beta_max
  OverlapG,        // bare/dressed overlap at Fock level N vs g / omega_r
  ChiVsDelta,      // chi / omega_eff2 vs delta / g
  ChiVsTheta,      // chi / omega_eff2 vs bare mixing angle
};

const char* recipe_kind_name(RecipeKind k);
RecipeKind parse_recipe_kind(const std::string& name);  // throws config_error

// Uniform grid including both endpoints. steps is the point count.
struct SweepGrid {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
};

std::vector<double> grid_values(const SweepGrid& g);

// Figure-style model knobs. Everything is a ratio; the absolute energy scale
// drops out of every reported quantity. epsilon_2 is pinned to 1, the
// resonator sits below the latched qubit by delta_frac * omega_eff2, and the
// qubit-qubit coupling is tied to chi through j_over_w21 * w21_over_chi.
struct ModelInput {
  ModelKind kind = ModelKind::SingleQubit;
  InteractionMode interaction = InteractionMode::Full;
  double delta2_over_eps2 = 1.0;
  double delta1_over_eps1 = -1.0;  // negative: copy delta2_over_eps2
  double eta1 = -1.0;              // negative: 0 bare, eta2 when annealed
  double eta2 = 1.25;
  double eps_scale1 = 1.0;
  double eps_scale2 = 1.0;
  double delta_over_g = 8.0;   // resonator detuning over coupling strength
  double delta_frac = 0.2;     // detuning as a fraction of omega_eff2
  double j_over_w21 = 0.05;    // J in units of omega_2 - omega_1
  double w21_over_chi = 20.0;  // omega_2 - omega_1 in units of chi
  int n_max = 27;
  bool drop_static = true;  // keep only the photon-dependent detuning
};

// Resolves the ratio closure into absolute model parameters for one basis.
// With annealing on both qubits, FQ1 is scaled so that
// omega_eff1 = omega_eff2 - w21_over_chi * chi at equal mixing angles.
ModelSpec to_model_spec(const ModelInput& mi, BasisTag basis);

// Knobs that stay put during the sweep. Swept ones are ignored in favor of
// the grid value (alpha under Alpha, beta_max under StorageBetaMax, ...).
struct FixedParams {
  double alpha = 1.0;
  double t_m_chi = M_PI / 2.0;  // chi * t_m
  bool selective = false;       // matched-outcome fidelity instead of nonselective
  std::string psi0 = "z+";      // initial qubit state in the chosen representation
  bool oracle = false;          // full-evolution channel instead of the g-sum

  double xi = 0.4;  // storage recipes
  double beta_max = 2.5;
  double lambda = 0.1;
  double ramp_omega = 1.0;

  int n_fock = 49;  // overlap recipe
  double theta_q = M_PI / 4.0;
  double theta_dressed = M_PI / 4.0;
};

struct SweepConfig {
  RecipeKind recipe = RecipeKind::ChiT;
  std::string preset = "custom";
  ModelInput model;
  std::vector<BasisTag> bases;  // empty for recipes without basis dependence
  SweepGrid grid;
  FixedParams fixed;
  std::string out_path;  // empty: nothing written
};

struct SweepRow {
  double value = 0.0;
  std::string basis;  // empty when the recipe has no basis dependence
  double fidelity = std::numeric_limits<double>::quiet_NaN();  // NaN: empty CSV field
  double p_plus = std::numeric_limits<double>::quiet_NaN();
  double p_minus = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
};

struct SweepResult {
  std::vector<std::string> header;  // echoed "key = value" lines, '#' stripped
  std::string sweep_var;
  std::vector<SweepRow> rows;  // sorted by (value, basis)
  int failed = 0;              // rows whose status is not "ok"
};

// One catalog entry: a figure's parameter set under a stable name.
struct RecipeInfo {
  std::string name;
  std::string figure;  // chapter the figure sits in
  std::string label;   // which knob it sweeps
  SweepConfig config;
};

const std::vector<RecipeInfo>& recipe_catalog();
SweepConfig preset_config(const std::string& name);  // throws config_error

// Human-readable table of the eight recipe kinds and every preset with its
// defaults. This is what the CLI prints for the recipes subcommand.
std::string list_recipes();

// Builds a SweepConfig from a recipe kind or preset name, an optional config
// file (key = value lines inside [sweep] / [model] / [fixed] sections, '#'
// comments), --set style overrides ("key=value" or "section.key=value") and
// an output path. Later sources win in that order; recipe may be empty when
// the file names one. Throws config_error with line/field diagnostics.
SweepConfig make_sweep_config(const std::string& recipe, const std::string& config_text,
                              const std::vector<std::string>& overrides,
                              const std::string& out_path);

// Walks the grid, sorts rows by (value, basis) and, when out_path is set,
// writes the CSV atomically (temp file + rename). Config problems throw
// config_error before anything runs; per-point failures become rows whose
// status column names the error and never abort the sweep.
SweepResult run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const SweepResult& r);
void write_sweep_csv(const SweepResult& r, const std::string& path);  // atomic

// Inverse of sweep_csv, exact down to the last bit of every number.
SweepResult parse_sweep_csv(const std::string& text);

}  // namespace qfps
