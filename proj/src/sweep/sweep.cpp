#include "sweep/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jcm/jcm.hpp"
#include "measurement/measurement.hpp"
#include "qfp/anneal.hpp"

namespace qfps {

namespace {

constexpr const char* kArtifactVersion = "qfps sweep artifact v1";
constexpr const char* kColumns = "sweep_var,value,basis,fidelity,p_plus,p_minus,status";

[[noreturn]] void config_err(const std::string& msg) { throw Error(errc::config_error, msg); }

std::string fmt_double(double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

double parse_double(const std::string& s, const std::string& where) {
  std::string t = trim(s);
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    config_err(where + ": expected a number, got '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& where) {
  std::string t = trim(s);
  int v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    config_err(where + ": expected an integer, got '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, const std::string& where) {
  std::string t = trim(s);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  config_err(where + ": expected true/false, got '" + s + "'");
}

BasisTag parse_basis(const std::string& s, const std::string& where) {
  static const std::pair<const char*, BasisTag> table[] = {
      {"flux", BasisTag::Flux},
      {"energy_q2", BasisTag::EnergyQ2},
      {"energy_q1q2", BasisTag::EnergyQ1Q2},
      {"dressed_q2", BasisTag::DressedQ2},
      {"dressed_q1q2", BasisTag::DressedQ1Q2},
  };
  for (const auto& [name, tag] : table)
    if (s == name) return tag;
  config_err(where + ": unknown basis '" + s +
             "' (flux, energy_q2, energy_q1q2, dressed_q2, dressed_q1q2)");
}

ModelKind parse_model_kind(const std::string& s, const std::string& where) {
  if (s == "single_qubit") return ModelKind::SingleQubit;
  if (s == "two_qubit_no_anneal") return ModelKind::TwoQubitNoAnneal;
  if (s == "two_qubit_with_anneal") return ModelKind::TwoQubitWithAnneal;
  config_err(where + ": unknown model kind '" + s +
             "' (single_qubit, two_qubit_no_anneal, two_qubit_with_anneal)");
}

InteractionMode parse_interaction(const std::string& s, const std::string& where) {
  if (s == "full") return InteractionMode::Full;
  if (s == "zz") return InteractionMode::ZZ;
  if (s == "xx") return InteractionMode::XX;
  config_err(where + ": unknown interaction '" + s + "' (full, zz, xx)");
}

int cardinal_index(const std::string& name) {
  static const char* names[] = {"z+", "z-", "x+", "x-", "y+", "y-"};
  for (int i = 0; i < 6; ++i)
    if (name == names[i]) return i;
  return -1;
}

bool two_qubit(ModelKind k) {
  return k == ModelKind::TwoQubitNoAnneal || k == ModelKind::TwoQubitWithAnneal;
}

double resolved_ratio1(const ModelInput& mi) {
  return mi.delta1_over_eps1 < 0.0 ? mi.delta2_over_eps2 : mi.delta1_over_eps1;
}

double resolved_eta1(const ModelInput& mi) {
  if (mi.eta1 >= 0.0) return mi.eta1;
  return mi.kind == ModelKind::TwoQubitWithAnneal ? mi.eta2 : 0.0;
}

const char* sweep_var_name(RecipeKind k) {
  switch (k) {
    case RecipeKind::ChiT: return "chi_t";
    case RecipeKind::Alpha: return "alpha";
    case RecipeKind::JCoupling: return "j_over_w21";
    case RecipeKind::StorageT: return "t_over_t_qfp";
    case RecipeKind::StorageBetaMax: return "beta_max";
    case RecipeKind::OverlapG: return "g_over_omega_r";
    case RecipeKind::ChiVsDelta: return "delta_over_g";
    case RecipeKind::ChiVsTheta: return "theta_q";
  }
  return "value";
}

bool measurement_recipe(RecipeKind k) {
  return k == RecipeKind::ChiT || k == RecipeKind::Alpha || k == RecipeKind::JCoupling;
}

bool storage_recipe(RecipeKind k) {
  return k == RecipeKind::StorageT || k == RecipeKind::StorageBetaMax;
}

std::string sanitize_status(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

const char* recipe_kind_name(RecipeKind k) {
  switch (k) {
    case RecipeKind::ChiT: return "chit";
    case RecipeKind::Alpha: return "alpha";
    case RecipeKind::JCoupling: return "jcoupling";
    case RecipeKind::StorageT: return "storage_t";
    case RecipeKind::StorageBetaMax: return "storage_betamax";
    case RecipeKind::OverlapG: return "overlap_g";
    case RecipeKind::ChiVsDelta: return "chi_vs_delta";
    case RecipeKind::ChiVsTheta: return "chi_vs_theta";
  }
  return "unknown";
}

RecipeKind parse_recipe_kind(const std::string& name) {
  static const RecipeKind kinds[] = {
      RecipeKind::ChiT,         RecipeKind::Alpha,      RecipeKind::JCoupling,
      RecipeKind::StorageT,     RecipeKind::StorageBetaMax, RecipeKind::OverlapG,
      RecipeKind::ChiVsDelta,   RecipeKind::ChiVsTheta,
  };
  for (RecipeKind k : kinds)
    if (name == recipe_kind_name(k)) return k;
  config_err("unknown recipe kind '" + name + "'");
}

std::vector<double> grid_values(const SweepGrid& g) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(std::max(g.steps, 0)));
  double step = (g.stop - g.start) / (g.steps - 1);
  for (int i = 0; i < g.steps; ++i)
    out.push_back(i == g.steps - 1 ? g.stop : g.start + i * step);
  return out;
}

ModelSpec to_model_spec(const ModelInput& mi, BasisTag basis) {
  ModelSpec spec;
  spec.kind = mi.kind;
  spec.basis = basis;
  spec.interaction = mi.interaction;
  ModelParams& p = spec.params;

  p.q2 = QubitParams{1.0, mi.delta2_over_eps2};
  p.eta2 = mi.eta2;
  p.eps_scale2 = mi.eps_scale2;
  p.eta1 = resolved_eta1(mi);
  p.eps_scale1 = mi.eps_scale1;
  p.n_max = mi.n_max;
  p.drop_static_detuning = mi.drop_static;

  EffectiveQubitParams eq2 = effective_qubit(p.q2, p.eta2, p.eps_scale2);
  double w2 = eq2.omega_eff();
  double detuning = mi.delta_frac * w2;
  p.omega_r = w2 - detuning;
  p.g = detuning / mi.delta_over_g;
  double chi = dispersive_params(eq2, ResonatorParams{p.omega_r, FockSpace(2)}, p.g).chi;

  double r1 = resolved_ratio1(mi);
  switch (mi.kind) {
    case ModelKind::SingleQubit:
      p.q1 = p.q2;  // unused
      p.j = 0.0;
      break;
    case ModelKind::TwoQubitNoAnneal:
      // FQ1 stays unlatched; only its mixing angle enters the Hamiltonian.
      p.q1 = QubitParams{1.0, r1};
      p.j = mi.j_over_w21 * mi.w21_over_chi * chi;
      break;
    case ModelKind::TwoQubitWithAnneal: {
      double w1 = w2 - mi.w21_over_chi * chi;
      if (w1 <= 0.0)
        config_err("model: omega_eff1 = omega_eff2 - w21_over_chi * chi is not positive");
      QubitParams base{1.0, r1};
      double scale = w1 / effective_qubit(base, p.eta1, p.eps_scale1).omega_eff();
      p.q1 = QubitParams{scale, scale * r1};
      p.j = mi.j_over_w21 * mi.w21_over_chi * chi;
      break;
    }
    case ModelKind::ExchangeReference:
      config_err("model: the exchange reference is not available through sweeps");
  }
  return spec;
}

namespace {

// ---- preset catalog -------------------------------------------------------

const char* kFigQfp = "Das gekoppelte Flussqubit-QFP-System";
const char* kFig1q = "Messung eines Flussqubits";
const char* kFig2qo = "Messung von FQ2 ohne QFP1-Annealing";
const char* kFig2qm = "Messung von FQ2 mit QFP1-Annealing";

std::vector<RecipeInfo> build_catalog() {
  std::vector<RecipeInfo> v;
  auto add = [&](const char* name, const char* figure, const char* label, SweepConfig c) {
    c.preset = name;
    v.push_back(RecipeInfo{name, figure, label, std::move(c)});
  };

  {
    SweepConfig c;
    c.recipe = RecipeKind::StorageT;
    c.model.delta2_over_eps2 = 1.0;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ2};
    c.grid = {0.0, 1.0, 51};
    add("an_t", kFigQfp, "t sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::StorageBetaMax;
    c.model.delta2_over_eps2 = 0.5;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ2};
    c.grid = {1.5, 3.0, 31};
    add("an_betamax", kFigQfp, "β_max sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::OverlapG;
    c.grid = {0.0, 3.0, 61};
    add("bare_dressed", kFigQfp, "g/ω_r sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiVsTheta;
    c.grid = {0.0, M_PI, 65};
    add("1q_chi_theta", kFig1q, "θ sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiVsDelta;
    c.grid = {2.0, 20.0, 37};
    add("1q_chi_delta", kFig1q, "δ/g sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiT;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ2};
    c.grid = {0.1, 2.0, 20};
    c.fixed.selective = true;
    add("1q_chit", kFig1q, "χt sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::Alpha;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ2};
    c.grid = {0.25, 1.5, 26};
    c.fixed.selective = true;
    add("1q_alpha", kFig1q, "α sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiVsDelta;
    c.model.delta2_over_eps2 = 0.3;
    c.grid = {2.0, 20.0, 37};
    add("2qo_chidelta", kFig2qo, "δ/g sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiVsDelta;
    c.model.delta2_over_eps2 = 10.0;
    c.grid = {2.0, 20.0, 37};
    add("2qo_chidelta_xx", kFig2qo, "δ/g sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiT;
    c.model.kind = ModelKind::TwoQubitNoAnneal;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ2, BasisTag::EnergyQ1Q2};
    c.grid = {0.1, 2.0, 20};
    add("2qo_chit", kFig2qo, "χt sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiT;
    c.model.kind = ModelKind::TwoQubitNoAnneal;
    c.bases = {BasisTag::EnergyQ2, BasisTag::DressedQ2};
    c.grid = {0.1, 2.0, 20};
    add("2qo_chit_q2", kFig2qo, "χt sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::Alpha;
    c.model.kind = ModelKind::TwoQubitNoAnneal;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ2, BasisTag::EnergyQ1Q2};
    c.grid = {0.25, 1.5, 26};
    add("2qo_alpha", kFig2qo, "α sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::Alpha;
    c.model.kind = ModelKind::TwoQubitNoAnneal;
    c.bases = {BasisTag::EnergyQ2, BasisTag::DressedQ2};
    c.grid = {0.4, 1.0, 13};
    add("2qo_alpha_q2", kFig2qo, "α sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::Alpha;
    c.model.kind = ModelKind::TwoQubitNoAnneal;
    c.model.interaction = InteractionMode::XX;
    c.model.delta2_over_eps2 = 10.0;
    c.bases = {BasisTag::EnergyQ1Q2, BasisTag::DressedQ1Q2};
    c.grid = {0.25, 1.5, 26};
    add("2qo_alpha_xx", kFig2qo, "α sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::JCoupling;
    c.model.kind = ModelKind::TwoQubitNoAnneal;
    c.model.interaction = InteractionMode::ZZ;
    c.bases = {BasisTag::EnergyQ2};
    c.grid = {0.01, 0.1, 19};
    add("2qo_J", kFig2qo, "J sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiVsDelta;
    c.model.delta2_over_eps2 = 10.0;
    c.model.eta2 = 1.0;
    c.grid = {2.0, 20.0, 37};
    add("2qm_chidelta_xx", kFig2qm, "δ/g sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::ChiT;
    c.model.kind = ModelKind::TwoQubitWithAnneal;
    c.model.delta2_over_eps2 = 0.5;
    c.model.n_max = 21;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ1Q2};
    c.grid = {0.1, 2.0, 20};
    c.fixed.alpha = 2.0;
    add("2qm_chit", kFig2qm, "χt sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::Alpha;
    c.model.kind = ModelKind::TwoQubitWithAnneal;
    c.model.delta2_over_eps2 = 0.5;
    c.model.n_max = 21;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ1Q2};
    c.grid = {0.25, 2.0, 36};
    c.fixed.t_m_chi = M_PI / 4.0;
    add("2qm_alpha", kFig2qm, "α sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::JCoupling;
    c.model.kind = ModelKind::TwoQubitWithAnneal;
    c.model.delta2_over_eps2 = 0.5;
    c.model.n_max = 21;
    c.bases = {BasisTag::Flux, BasisTag::EnergyQ1Q2};
    c.grid = {0.01, 0.1, 19};
    c.fixed.alpha = 0.5;
    c.fixed.t_m_chi = M_PI / 4.0;
    add("2qm_J", kFig2qm, "J sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::Alpha;
    c.model.kind = ModelKind::TwoQubitWithAnneal;
    c.model.interaction = InteractionMode::XX;
    c.model.delta2_over_eps2 = 10.0;
    c.model.eta2 = 1.0;
    c.model.n_max = 21;
    c.bases = {BasisTag::EnergyQ1Q2, BasisTag::DressedQ1Q2};
    c.grid = {0.25, 2.0, 36};
    add("2qm_alpha_xx", kFig2qm, "α sweep", c);
  }
  {
    SweepConfig c;
    c.recipe = RecipeKind::JCoupling;
    c.model.kind = ModelKind::TwoQubitWithAnneal;
    c.model.interaction = InteractionMode::XX;
    c.model.delta2_over_eps2 = 0.8;
    c.model.eta2 = 1.0;
    c.model.n_max = 21;
    c.bases = {BasisTag::EnergyQ1Q2, BasisTag::DressedQ1Q2};
    c.grid = {0.01, 0.1, 19};
    c.fixed.alpha = 0.5;
    add("2qm_J_xx", kFig2qm, "J sweep", c);
  }
  return v;
}

// Kind names resolve to a canonical preset so `sweep --recipe chit` works
// without a config file.
const char* kind_default_preset(RecipeKind k) {
  switch (k) {
    case RecipeKind::ChiT: return "1q_chit";
    case RecipeKind::Alpha: return "1q_alpha";
    case RecipeKind::JCoupling: return "2qo_J";
    case RecipeKind::StorageT: return "an_t";
    case RecipeKind::StorageBetaMax: return "an_betamax";
    case RecipeKind::OverlapG: return "bare_dressed";
    case RecipeKind::ChiVsDelta: return "1q_chi_delta";
    case RecipeKind::ChiVsTheta: return "1q_chi_theta";
  }
  return "";
}

const char* recipe_kind_blurb(RecipeKind k) {
  switch (k) {
    case RecipeKind::ChiT: return "readout fidelity vs chi*t";
    case RecipeKind::Alpha: return "readout fidelity vs coherent amplitude";
    case RecipeKind::JCoupling: return "readout fidelity vs J/(omega_2-omega_1)";
    case RecipeKind::StorageT: return "storage fidelity vs t/t_qfp";
    case RecipeKind::StorageBetaMax: return "storage fidelity at t_qfp vs beta_max";
    case RecipeKind::OverlapG: return "bare/dressed overlap vs g/omega_r";
    case RecipeKind::ChiVsDelta: return "chi/omega_eff2 vs delta/g";
    case RecipeKind::ChiVsTheta: return "chi/omega_eff2 vs bare mixing angle";
  }
  return "";
}

std::string bases_text(const std::vector<BasisTag>& bases) {
  std::string s;
  for (size_t i = 0; i < bases.size(); ++i) {
    if (i) s += ", ";
    s += basis_name(bases[i]);
  }
  return s;
}

std::string grid_text(const SweepGrid& g) {
  return fmt_double(g.start) + " : " + fmt_double(g.stop) + " : " + std::to_string(g.steps);
}

std::string preset_summary(const SweepConfig& c) {
  std::string s;
  switch (c.recipe) {
    case RecipeKind::ChiT:
    case RecipeKind::Alpha:
    case RecipeKind::JCoupling:
      s = std::string(model_kind_name(c.model.kind)) + " " +
          interaction_mode_name(c.model.interaction) + " | N = " + std::to_string(c.model.n_max) +
          ", delta2/eps2 = " + fmt_double(c.model.delta2_over_eps2) +
          ", eta2 = " + fmt_double(c.model.eta2) +
          ", delta/g = " + fmt_double(c.model.delta_over_g);
      if (c.recipe != RecipeKind::Alpha) s += ", alpha = " + fmt_double(c.fixed.alpha);
      if (c.recipe != RecipeKind::ChiT) s += ", chi*t_m = " + fmt_double(c.fixed.t_m_chi);
      if (c.recipe != RecipeKind::JCoupling)
        s += ", J/w21 = " + fmt_double(c.model.j_over_w21);
      s += c.fixed.selective ? ", matched outcome" : ", nonselective";
      break;
    case RecipeKind::StorageT:
    case RecipeKind::StorageBetaMax:
      s = "delta_q/eps_q = " + fmt_double(c.model.delta2_over_eps2) +
          ", xi = " + fmt_double(c.fixed.xi) + ", lambda = " + fmt_double(c.fixed.lambda);
      if (c.recipe == RecipeKind::StorageT)
        s += ", beta_max = " + fmt_double(c.fixed.beta_max);
      break;
    case RecipeKind::OverlapG:
      s = "N = " + std::to_string(c.fixed.n_fock) + ", theta_q = " + fmt_double(c.fixed.theta_q);
      break;
    case RecipeKind::ChiVsDelta:
      s = "delta2/eps2 = " + fmt_double(c.model.delta2_over_eps2) +
          ", eta2 = " + fmt_double(c.model.eta2);
      break;
    case RecipeKind::ChiVsTheta:
      s = "eta2 = " + fmt_double(c.model.eta2) +
          ", delta/g = " + fmt_double(c.model.delta_over_g);
      break;
  }
  if (!c.bases.empty()) s += " | bases " + bases_text(c.bases);
  s += " | grid " + grid_text(c.grid);
  return s;
}

}  // namespace

const std::vector<RecipeInfo>& recipe_catalog() {
  static const std::vector<RecipeInfo> catalog = build_catalog();
  return catalog;
}

SweepConfig preset_config(const std::string& name) {
  for (const RecipeInfo& info : recipe_catalog())
    if (info.name == name) return info.config;
  std::string known;
  for (const RecipeInfo& info : recipe_catalog()) {
    if (!known.empty()) known += ", ";
    known += info.name;
  }
  config_err("unknown preset '" + name + "' (known: " + known + ")");
}

std::string list_recipes() {
  std::string out = "sweep recipes:\n";
  static const RecipeKind kinds[] = {
      RecipeKind::ChiT,       RecipeKind::Alpha,          RecipeKind::JCoupling,
      RecipeKind::StorageT,   RecipeKind::StorageBetaMax, RecipeKind::OverlapG,
      RecipeKind::ChiVsDelta, RecipeKind::ChiVsTheta,
  };
  for (RecipeKind k : kinds) {
    std::string name = recipe_kind_name(k);
    out += "  " + name + std::string(name.size() < 16 ? 16 - name.size() : 1, ' ') +
           recipe_kind_blurb(k) + "  (defaults from " + kind_default_preset(k) + ")\n";
  }
  out += "\npresets:\n";
  for (const RecipeInfo& info : recipe_catalog()) {
    out += "  " + info.name + " → Fig. '" + info.figure + "' " + info.label + "\n";
    out += "      " + preset_summary(info.config) + "\n";
  }
  return out;
}

// ---- config file ----------------------------------------------------------

namespace {

struct RawItem {
  int line = 0;
  std::string section;
  std::string key;
  std::string value;
};

std::vector<RawItem> tokenize_config(const std::string& text) {
  std::vector<RawItem> items;
  std::string section;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    std::string where = "config line " + std::to_string(line_no);
    if (t.front() == '[') {
      if (t.back() != ']') config_err(where + ": unterminated section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "sweep" && section != "model" && section != "fixed")
        config_err(where + ": unknown section [" + section + "] (sweep, model, fixed)");
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) config_err(where + ": expected key = value, got '" + t + "'");
    if (section.empty()) config_err(where + ": key outside any [section]");
    RawItem item;
    item.line = line_no;
    item.section = section;
    item.key = trim(t.substr(0, eq));
    item.value = trim(t.substr(eq + 1));
    if (item.key.empty()) config_err(where + ": empty key");
    items.push_back(std::move(item));
  }
  return items;
}

void apply_sweep_key(SweepConfig& cfg, const RawItem& it, const std::string& where) {
  if (it.key == "out") {
    cfg.out_path = it.value;
  } else if (it.key == "bases") {
    cfg.bases.clear();
    if (!trim(it.value).empty())
      for (const std::string& part : split(it.value, ','))
        cfg.bases.push_back(parse_basis(trim(part), where));
  } else if (it.key == "grid") {
    std::vector<std::string> parts = split(it.value, ':');
    if (parts.size() != 3) config_err(where + ": grid wants start : stop : steps");
    cfg.grid.start = parse_double(parts[0], where + ": grid.start");
    cfg.grid.stop = parse_double(parts[1], where + ": grid.stop");
    cfg.grid.steps = parse_int(parts[2], where + ": grid.steps");
  } else {
    config_err(where + ": unknown key '" + it.key + "' in [sweep]");
  }
}

void apply_model_key(SweepConfig& cfg, const RawItem& it, const std::string& where) {
  ModelInput& m = cfg.model;
  const std::string& k = it.key;
  const std::string& v = it.value;
  if (k == "kind") m.kind = parse_model_kind(v, where);
  else if (k == "interaction") m.interaction = parse_interaction(v, where);
  else if (k == "delta2_over_eps2") m.delta2_over_eps2 = parse_double(v, where);
  else if (k == "delta1_over_eps1") m.delta1_over_eps1 = parse_double(v, where);
  else if (k == "eta1") m.eta1 = parse_double(v, where);
  else if (k == "eta2") m.eta2 = parse_double(v, where);
  else if (k == "eps_scale1") m.eps_scale1 = parse_double(v, where);
  else if (k == "eps_scale2") m.eps_scale2 = parse_double(v, where);
  else if (k == "delta_over_g") m.delta_over_g = parse_double(v, where);
  else if (k == "delta_frac") m.delta_frac = parse_double(v, where);
  else if (k == "j_over_w21") m.j_over_w21 = parse_double(v, where);
  else if (k == "w21_over_chi") m.w21_over_chi = parse_double(v, where);
  else if (k == "n_max") m.n_max = parse_int(v, where);
  else if (k == "drop_static") m.drop_static = parse_bool(v, where);
  else config_err(where + ": unknown key '" + k + "' in [model]");
}

void apply_fixed_key(SweepConfig& cfg, const RawItem& it, const std::string& where) {
  FixedParams& f = cfg.fixed;
  const std::string& k = it.key;
  const std::string& v = it.value;
  if (k == "alpha") f.alpha = parse_double(v, where);
  else if (k == "t_m_chi") f.t_m_chi = parse_double(v, where);
  else if (k == "functional") {
    if (v == "selective") f.selective = true;
    else if (v == "nonselective") f.selective = false;
    else config_err(where + ": functional wants selective or nonselective, got '" + v + "'");
  } else if (k == "psi0") {
    if (cardinal_index(trim(v)) < 0)
      config_err(where + ": unknown psi0 '" + v + "' (z+, z-, x+, x-, y+, y-)");
    f.psi0 = trim(v);
  } else if (k == "oracle") f.oracle = parse_bool(v, where);
  else if (k == "xi") f.xi = parse_double(v, where);
  else if (k == "beta_max") f.beta_max = parse_double(v, where);
  else if (k == "lambda") f.lambda = parse_double(v, where);
  else if (k == "ramp_omega") f.ramp_omega = parse_double(v, where);
  else if (k == "n_fock") f.n_fock = parse_int(v, where);
  else if (k == "theta_q") f.theta_q = parse_double(v, where);
  else if (k == "theta_dressed") f.theta_dressed = parse_double(v, where);
  else config_err(where + ": unknown key '" + k + "' in [fixed]");
}

void apply_item(SweepConfig& cfg, const RawItem& it, const std::string& where) {
  if (it.section == "sweep") apply_sweep_key(cfg, it, where);
  else if (it.section == "model") apply_model_key(cfg, it, where);
  else apply_fixed_key(cfg, it, where);
}

// --set tokens accept "section.key=value" or a bare key when it is unique
// across the three sections.
RawItem parse_override(const std::string& token) {
  size_t eq = token.find('=');
  if (eq == std::string::npos)
    config_err("--set " + token + ": expected key=value");
  RawItem it;
  it.value = trim(token.substr(eq + 1));
  std::string key = trim(token.substr(0, eq));
  size_t dot = key.find('.');
  if (dot != std::string::npos) {
    it.section = key.substr(0, dot);
    it.key = key.substr(dot + 1);
    if (it.section != "sweep" && it.section != "model" && it.section != "fixed")
      config_err("--set " + token + ": unknown section '" + it.section + "'");
    return it;
  }
  static const char* sweep_keys[] = {"recipe", "out", "bases", "grid"};
  static const char* model_keys[] = {"kind", "interaction", "delta2_over_eps2",
                                     "delta1_over_eps1", "eta1", "eta2", "eps_scale1",
                                     "eps_scale2", "delta_over_g", "delta_frac", "j_over_w21",
                                     "w21_over_chi", "n_max", "drop_static"};
  static const char* fixed_keys[] = {"alpha", "t_m_chi", "functional", "psi0", "oracle", "xi",
                                     "beta_max", "lambda", "ramp_omega", "n_fock", "theta_q",
                                     "theta_dressed"};
  for (const char* k : sweep_keys)
    if (key == k) { it.section = "sweep"; it.key = key; return it; }
  for (const char* k : model_keys)
    if (key == k) { it.section = "model"; it.key = key; return it; }
  for (const char* k : fixed_keys)
    if (key == k) { it.section = "fixed"; it.key = key; return it; }
  config_err("--set " + token + ": unknown key '" + key + "'");
}

SweepConfig resolve_recipe_name(const std::string& name) {
  for (const RecipeInfo& info : recipe_catalog())
    if (info.name == name) return info.config;
  std::string kinds;
  for (int k = 0; k < 8; ++k) {
    RecipeKind rk = static_cast<RecipeKind>(k);
    if (name == recipe_kind_name(rk)) return preset_config(kind_default_preset(rk));
    if (k) kinds += ", ";
    kinds += recipe_kind_name(rk);
  }
  config_err("unknown recipe '" + name + "'; expected a preset (see the recipes listing) or one of " +
             kinds);
}

}  // namespace

SweepConfig make_sweep_config(const std::string& recipe, const std::string& config_text,
                              const std::vector<std::string>& overrides,
                              const std::string& out_path) {
  std::vector<RawItem> items = tokenize_config(config_text);

  std::string name = recipe;
  for (const RawItem& it : items)
    if (it.section == "sweep" && it.key == "recipe" && name.empty()) name = it.value;
  if (name.empty()) config_err("no recipe named (pass --recipe or set recipe under [sweep])");

  SweepConfig cfg = resolve_recipe_name(name);
  for (const RawItem& it : items) {
    if (it.section == "sweep" && it.key == "recipe") continue;
    apply_item(cfg, it, "config line " + std::to_string(it.line) + ": " + it.key);
  }
  for (const std::string& token : overrides) {
    RawItem it = parse_override(token);
    if (it.section == "sweep" && it.key == "recipe")
      config_err("--set " + token + ": the recipe is fixed once resolved; pass --recipe instead");
    apply_item(cfg, it, "--set " + it.key);
  }
  if (!out_path.empty()) cfg.out_path = out_path;
  return cfg;
}

// ---- running --------------------------------------------------------------

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

SweepRow error_row(double value, const std::string& basis, const std::string& status) {
  SweepRow r;
  r.value = value;
  r.basis = basis;
  r.status = sanitize_status(status);
  return r;
}

void validate_config(const SweepConfig& cfg) {
  if (cfg.grid.steps < 2) config_err("grid.steps must be at least 2");
  if (!(cfg.grid.start < cfg.grid.stop)) config_err("grid.start must be below grid.stop");
  if (!std::isfinite(cfg.grid.start) || !std::isfinite(cfg.grid.stop))
    config_err("grid endpoints must be finite");
  if (cfg.model.n_max < 2) config_err("model.n_max must be at least 2");
  if (cfg.model.eps_scale1 < 1.0 || cfg.model.eps_scale2 < 1.0)
    config_err("model.eps_scale must not shrink the bias (>= 1)");
  if (!(cfg.model.delta_frac > 0.0 && cfg.model.delta_frac < 1.0))
    config_err("model.delta_frac must lie in (0, 1)");
  if (cfg.model.delta_over_g <= 0.0) config_err("model.delta_over_g must be positive");
  if (cardinal_index(cfg.fixed.psi0) < 0)
    config_err("fixed.psi0 must be one of z+, z-, x+, x-, y+, y-");
  if (cfg.fixed.n_fock < 0) config_err("fixed.n_fock must not be negative");

  auto require_bases = [&](std::initializer_list<BasisTag> allowed) {
    if (cfg.bases.empty()) config_err("bases must not be empty for this recipe");
    for (size_t i = 0; i < cfg.bases.size(); ++i) {
      for (size_t j = i + 1; j < cfg.bases.size(); ++j)
        if (cfg.bases[i] == cfg.bases[j])
          config_err(std::string("duplicate basis '") + basis_name(cfg.bases[i]) + "'");
      if (allowed.size() &&
          std::find(allowed.begin(), allowed.end(), cfg.bases[i]) == allowed.end())
        config_err(std::string("basis '") + basis_name(cfg.bases[i]) +
                   "' is not available for this recipe");
    }
  };

  if (measurement_recipe(cfg.recipe)) {
    require_bases({});
    if (cfg.recipe == RecipeKind::JCoupling && cfg.model.kind == ModelKind::SingleQubit)
      config_err("a single-qubit model has no qubit-qubit coupling to sweep");
    // Probe each basis once so combination problems surface as config errors
    // before anything is written. Point-level failures stay per-point.
    for (BasisTag b : cfg.bases) {
      try {
        ModelInput mi = cfg.model;
        if (cfg.recipe == RecipeKind::JCoupling) mi.j_over_w21 = cfg.grid.start;
        ModelSpec ms = to_model_spec(mi, b);
        if (derive_model(ms).chi == 0.0)
          config_err("model yields chi = 0; measurement sweeps need a dispersive shift");
        build_hamiltonian(ms);
      } catch (const Error& e) {
        if (e.code() == errc::config_error) throw;
      }
    }
  } else if (storage_recipe(cfg.recipe)) {
    require_bases({BasisTag::Flux, BasisTag::EnergyQ2});
    if (cfg.fixed.xi <= 0.0) config_err("fixed.xi must be positive");
    if (cfg.fixed.ramp_omega <= 0.0) config_err("fixed.ramp_omega must be positive");
  } else {
    if (!cfg.bases.empty())
      config_err(std::string("recipe ") + recipe_kind_name(cfg.recipe) +
                 " has no basis dependence; leave bases empty");
    if (cfg.recipe == RecipeKind::ChiVsDelta && cfg.grid.start <= 0.0)
      config_err("grid.start must be positive (delta / g)");
  }
}

std::vector<std::string> build_header(const SweepConfig& cfg) {
  std::vector<std::string> h;
  h.push_back(kArtifactVersion);
  h.push_back(std::string("recipe = ") + recipe_kind_name(cfg.recipe));
  h.push_back("preset = " + cfg.preset);
  h.push_back(std::string("sweep_var = ") + sweep_var_name(cfg.recipe));
  h.push_back("bases = " + bases_text(cfg.bases));
  h.push_back("grid = " + grid_text(cfg.grid));
  h.push_back(std::string("model.kind = ") + model_kind_name(cfg.model.kind));
  h.push_back(std::string("model.interaction = ") + interaction_mode_name(cfg.model.interaction));
  h.push_back("model.delta2_over_eps2 = " + fmt_double(cfg.model.delta2_over_eps2));
  h.push_back("model.delta1_over_eps1 = " + fmt_double(resolved_ratio1(cfg.model)));
  h.push_back("model.eta1 = " + fmt_double(resolved_eta1(cfg.model)));
  h.push_back("model.eta2 = " + fmt_double(cfg.model.eta2));
  h.push_back("model.eps_scale1 = " + fmt_double(cfg.model.eps_scale1));
  h.push_back("model.eps_scale2 = " + fmt_double(cfg.model.eps_scale2));
  h.push_back("model.delta_over_g = " + fmt_double(cfg.model.delta_over_g));
  h.push_back("model.delta_frac = " + fmt_double(cfg.model.delta_frac));
  h.push_back("model.j_over_w21 = " + fmt_double(cfg.model.j_over_w21));
  h.push_back("model.w21_over_chi = " + fmt_double(cfg.model.w21_over_chi));
  h.push_back("model.n_max = " + std::to_string(cfg.model.n_max));
  h.push_back("model.drop_static = " + fmt_bool(cfg.model.drop_static));
  h.push_back("fixed.alpha = " + fmt_double(cfg.fixed.alpha));
  h.push_back("fixed.t_m_chi = " + fmt_double(cfg.fixed.t_m_chi));
  h.push_back(std::string("fixed.functional = ") +
              (cfg.fixed.selective ? "selective" : "nonselective"));
  h.push_back("fixed.psi0 = " + cfg.fixed.psi0);
  h.push_back("fixed.oracle = " + fmt_bool(cfg.fixed.oracle));
  h.push_back("fixed.xi = " + fmt_double(cfg.fixed.xi));
  h.push_back("fixed.beta_max = " + fmt_double(cfg.fixed.beta_max));
  h.push_back("fixed.lambda = " + fmt_double(cfg.fixed.lambda));
  h.push_back("fixed.ramp_omega = " + fmt_double(cfg.fixed.ramp_omega));
  h.push_back("fixed.n_fock = " + std::to_string(cfg.fixed.n_fock));
  h.push_back("fixed.theta_q = " + fmt_double(cfg.fixed.theta_q));
  h.push_back("fixed.theta_dressed = " + fmt_double(cfg.fixed.theta_dressed));
  return h;
}

struct InitialState {
  ComplexMatrix rho0;
  ComplexVector ref;
};

InitialState initial_state(const SweepConfig& cfg) {
  ComplexVector q2 = cardinal_states()[cardinal_index(cfg.fixed.psi0)];
  ComplexVector full = q2;
  if (two_qubit(cfg.model.kind)) {
    ComplexVector ground = ComplexVector::Zero(2);
    ground(0) = 1.0;
    full = kron_vec(ground, q2);
  }
  return InitialState{full * full.adjoint(), q2};
}

void run_measurement(const SweepConfig& cfg, const std::vector<double>& values,
                     std::vector<SweepRow>& rows) {
  InitialState init = initial_state(cfg);
  for (BasisTag b : cfg.bases) {
    std::string bname = basis_name(b);
    ComplexMatrix h;
    double chi = 0.0;
    std::string broken;
    if (cfg.recipe != RecipeKind::JCoupling) {
      try {
        ModelSpec ms = to_model_spec(cfg.model, b);
        chi = derive_model(ms).chi;
        h = build_hamiltonian(ms);
      } catch (const Error& e) {
        broken = errc_name(e.code());
      }
    }
    for (double v : values) {
      if (!broken.empty()) {
        rows.push_back(error_row(v, bname, broken));
        continue;
      }
      try {
        ComplexMatrix hv = h;
        double chi_v = chi;
        if (cfg.recipe == RecipeKind::JCoupling) {
          ModelInput mi = cfg.model;
          mi.j_over_w21 = v;
          ModelSpec ms = to_model_spec(mi, b);
          chi_v = derive_model(ms).chi;
          hv = build_hamiltonian(ms);
        }
        double chi_t = cfg.recipe == RecipeKind::ChiT ? v : cfg.fixed.t_m_chi;
        MeasurementConfig mc{cfg.recipe == RecipeKind::Alpha ? v : cfg.fixed.alpha,
                             chi_t / chi_v, chi_v < 0.0 ? -1 : +1, FockSpace(cfg.model.n_max)};
        ProtocolResult pr = run_protocol(hv, init.rho0, init.ref, mc, cfg.fixed.oracle);
        SweepRow r;
        r.value = v;
        r.basis = bname;
        r.fidelity = cfg.fixed.selective ? pr.fidelity_matched : pr.fidelity_nonselective;
        r.p_plus = pr.channel.p_plus;
        r.p_minus = pr.channel.p_minus;
        rows.push_back(std::move(r));
      } catch (const Error& e) {
        rows.push_back(error_row(v, bname, errc_name(e.code())));
      }
    }
  }
}

void run_storage(const SweepConfig& cfg, const std::vector<double>& values,
                 std::vector<SweepRow>& rows) {
  QfpParams qfp;
  qfp.xi = cfg.fixed.xi;
  qfp.beta_max = cfg.fixed.beta_max;
  qfp.lambda = cfg.fixed.lambda;
  qfp.omega = cfg.fixed.ramp_omega;
  QubitParams q{1.0, cfg.model.delta2_over_eps2};
  for (BasisTag b : cfg.bases) {
    std::string bname = basis_name(b);
    Projection proj = b == BasisTag::Flux ? Projection::Magnitude : Projection::RealPart;
    for (double v : values) {
      try {
        SweepRow r;
        r.value = v;
        r.basis = bname;
        if (cfg.recipe == RecipeKind::StorageT) {
          r.fidelity = storage_fidelity(qfp, q, v * qfp.t_qfp(), b, proj);
        } else {
          QfpParams at = qfp;
          at.beta_max = v;
          r.fidelity = storage_fidelity(at, q, at.t_qfp(), b, proj);
        }
        rows.push_back(std::move(r));
      } catch (const Error& e) {
        rows.push_back(error_row(v, bname, errc_name(e.code())));
      }
    }
  }
}

void run_overlap(const SweepConfig& cfg, const std::vector<double>& values,
                 std::vector<SweepRow>& rows) {
  for (double v : values) {
    try {
      SweepRow r;
      r.value = v;
      r.fidelity =
          bare_dressed_overlap(cfg.fixed.n_fock, v, cfg.fixed.theta_dressed, cfg.fixed.theta_q);
      rows.push_back(std::move(r));
    } catch (const Error& e) {
      rows.push_back(error_row(v, "", errc_name(e.code())));
    }
  }
}

void run_chi_map(const SweepConfig& cfg, const std::vector<double>& values,
                 std::vector<SweepRow>& rows) {
  for (double v : values) {
    try {
      QubitParams base = cfg.recipe == RecipeKind::ChiVsTheta
                             ? QubitParams{std::cos(v), std::sin(v)}
                             : QubitParams{1.0, cfg.model.delta2_over_eps2};
      EffectiveQubitParams eq = effective_qubit(base, cfg.model.eta2, cfg.model.eps_scale2);
      double w = eq.omega_eff();
      double detuning = cfg.model.delta_frac * w;
      double ratio = cfg.recipe == RecipeKind::ChiVsDelta ? v : cfg.model.delta_over_g;
      DispersiveParams dp =
          dispersive_params(eq, ResonatorParams{w - detuning, FockSpace(2)}, detuning / ratio);
      SweepRow r;
      r.value = v;
      r.fidelity = dp.chi / w;
      rows.push_back(std::move(r));
    } catch (const Error& e) {
      rows.push_back(error_row(v, "", errc_name(e.code())));
    }
  }
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);

  SweepResult res;
  res.sweep_var = sweep_var_name(cfg.recipe);
  res.header = build_header(cfg);

  std::vector<double> values = grid_values(cfg.grid);
  if (measurement_recipe(cfg.recipe)) run_measurement(cfg, values, res.rows);
  else if (storage_recipe(cfg.recipe)) run_storage(cfg, values, res.rows);
  else if (cfg.recipe == RecipeKind::OverlapG) run_overlap(cfg, values, res.rows);
  else run_chi_map(cfg, values, res.rows);

  std::sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.basis < b.basis;
  });
  for (const SweepRow& r : res.rows)
    if (r.status != "ok") ++res.failed;

  if (!cfg.out_path.empty()) write_sweep_csv(res, cfg.out_path);
  return res;
}

// ---- CSV ------------------------------------------------------------------

std::string sweep_csv(const SweepResult& r) {
  std::string out;
  for (const std::string& line : r.header) out += "# " + line + "\n";
  out += kColumns;
  out += "\n";
  auto field = [](double v) { return std::isnan(v) ? std::string() : fmt_double(v); };
  for (const SweepRow& row : r.rows) {
    out += r.sweep_var + "," + fmt_double(row.value) + "," + row.basis + "," +
           field(row.fidelity) + "," + field(row.p_plus) + "," + field(row.p_minus) + "," +
           row.status + "\n";
  }
  return out;
}

void write_sweep_csv(const SweepResult& r, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(errc::io_error, "cannot open '" + tmp + "' for writing");
    f << sweep_csv(r);
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw Error(errc::io_error, "write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(errc::io_error, "cannot move '" + tmp + "' to '" + path + "'");
  }
}

SweepResult parse_sweep_csv(const std::string& text) {
  SweepResult res;
  bool columns_seen = false;
  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string where = "csv line " + std::to_string(line_no);
    if (line.rfind("# ", 0) == 0) {
      if (columns_seen) throw Error(errc::io_error, where + ": header after column row");
      res.header.push_back(line.substr(2));
      continue;
    }
    if (!columns_seen) {
      if (line != kColumns)
        throw Error(errc::io_error, where + ": expected column row '" + kColumns + "'");
      columns_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 7) throw Error(errc::io_error, where + ": expected 7 fields");
    if (res.sweep_var.empty()) res.sweep_var = f[0];
    else if (res.sweep_var != f[0])
      throw Error(errc::io_error, where + ": sweep_var changed mid-file");
    auto number = [&](const std::string& s, const char* what) {
      if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
      double v = 0.0;
      auto conv = std::from_chars(s.data(), s.data() + s.size(), v);
      if (conv.ec != std::errc() || conv.ptr != s.data() + s.size())
        throw Error(errc::io_error, where + ": bad " + what + " '" + s + "'");
      return v;
    };
    SweepRow row;
    row.value = number(f[1], "value");
    row.basis = f[2];
    row.fidelity = number(f[3], "fidelity");
    row.p_plus = number(f[4], "p_plus");
    row.p_minus = number(f[5], "p_minus");
    row.status = f[6];
    if (row.status != "ok") ++res.failed;
    res.rows.push_back(std::move(row));
  }
  if (!columns_seen) throw Error(errc::io_error, "csv: no column row found");
  return res;
}

}  // namespace qfps
