#include "sweep/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "core/linalg.hpp"
#include "doctest.h"

using namespace qfps;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* leaf) {
  fs::path d = fs::temp_directory_path() / "qfps_sweep_tests" / leaf;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return errc::ok;
}

const SweepRow& row_at(const SweepResult& r, double value, const std::string& basis) {
  for (const SweepRow& row : r.rows)
    if (row.value == value && row.basis == basis) return row;
  REQUIRE(false);
  return r.rows.front();
}

}  // namespace

TEST_CASE("recipe kind names round-trip") {
  const RecipeKind kinds[] = {RecipeKind::ChiT,           RecipeKind::Alpha,
                              RecipeKind::JCoupling,      RecipeKind::StorageT,
                              RecipeKind::StorageBetaMax, RecipeKind::OverlapG,
                              RecipeKind::ChiVsDelta,     RecipeKind::ChiVsTheta};
  for (RecipeKind k : kinds) CHECK(parse_recipe_kind(recipe_kind_name(k)) == k);
  CHECK(code_of([] { parse_recipe_kind("chi"); }) == errc::config_error);
}

TEST_CASE("grid values hit both endpoints exactly") {
  std::vector<double> v = grid_values({0.25, 1.5, 26});
  REQUIRE(v.size() == 26);
  CHECK(v.front() == 0.25);
  CHECK(v.back() == 1.5);
  CHECK(v[1] == doctest::Approx(0.3).epsilon(1e-12));

  std::vector<double> two = grid_values({0.1, 2.0, 2});
  REQUIRE(two.size() == 2);
  CHECK(two[0] == 0.1);
  CHECK(two[1] == 2.0);
}

TEST_CASE("preset catalog matches the figure captions") {
  struct Expect {
    const char* name;
    RecipeKind recipe;
    ModelKind kind;
    InteractionMode mode;
    double ratio2;
    double eta2;
    int n_max;
    double start, stop;
    int steps;
    size_t n_bases;
    double alpha;
    double t_m_chi;
    bool selective;
  };
  const double pi = M_PI;
  const Expect table[] = {
      {"an_t", RecipeKind::StorageT, ModelKind::SingleQubit, InteractionMode::Full, 1.0, 1.25,
       27, 0.0, 1.0, 51, 2, 1.0, pi / 2, false},
      {"an_betamax", RecipeKind::StorageBetaMax, ModelKind::SingleQubit, InteractionMode::Full,
       0.5, 1.25, 27, 1.5, 3.0, 31, 2, 1.0, pi / 2, false},
      {"bare_dressed", RecipeKind::OverlapG, ModelKind::SingleQubit, InteractionMode::Full, 1.0,
       1.25, 27, 0.0, 3.0, 61, 0, 1.0, pi / 2, false},
      {"1q_chi_theta", RecipeKind::ChiVsTheta, ModelKind::SingleQubit, InteractionMode::Full,
       1.0, 1.25, 27, 0.0, pi, 65, 0, 1.0, pi / 2, false},
      {"1q_chi_delta", RecipeKind::ChiVsDelta, ModelKind::SingleQubit, InteractionMode::Full,
       1.0, 1.25, 27, 2.0, 20.0, 37, 0, 1.0, pi / 2, false},
      {"1q_chit", RecipeKind::ChiT, ModelKind::SingleQubit, InteractionMode::Full, 1.0, 1.25,
       27, 0.1, 2.0, 20, 2, 1.0, pi / 2, true},
      {"1q_alpha", RecipeKind::Alpha, ModelKind::SingleQubit, InteractionMode::Full, 1.0, 1.25,
       27, 0.25, 1.5, 26, 2, 1.0, pi / 2, true},
      {"2qo_chidelta", RecipeKind::ChiVsDelta, ModelKind::SingleQubit, InteractionMode::Full,
       0.3, 1.25, 27, 2.0, 20.0, 37, 0, 1.0, pi / 2, false},
      {"2qo_chidelta_xx", RecipeKind::ChiVsDelta, ModelKind::SingleQubit, InteractionMode::Full,
       10.0, 1.25, 27, 2.0, 20.0, 37, 0, 1.0, pi / 2, false},
      {"2qo_chit", RecipeKind::ChiT, ModelKind::TwoQubitNoAnneal, InteractionMode::Full, 1.0,
       1.25, 27, 0.1, 2.0, 20, 3, 1.0, pi / 2, false},
      {"2qo_chit_q2", RecipeKind::ChiT, ModelKind::TwoQubitNoAnneal, InteractionMode::Full, 1.0,
       1.25, 27, 0.1, 2.0, 20, 2, 1.0, pi / 2, false},
      {"2qo_alpha", RecipeKind::Alpha, ModelKind::TwoQubitNoAnneal, InteractionMode::Full, 1.0,
       1.25, 27, 0.25, 1.5, 26, 3, 1.0, pi / 2, false},
      {"2qo_alpha_q2", RecipeKind::Alpha, ModelKind::TwoQubitNoAnneal, InteractionMode::Full,
       1.0, 1.25, 27, 0.4, 1.0, 13, 2, 1.0, pi / 2, false},
      {"2qo_alpha_xx", RecipeKind::Alpha, ModelKind::TwoQubitNoAnneal, InteractionMode::XX,
       10.0, 1.25, 27, 0.25, 1.5, 26, 2, 1.0, pi / 2, false},
      {"2qo_J", RecipeKind::JCoupling, ModelKind::TwoQubitNoAnneal, InteractionMode::ZZ, 1.0,
       1.25, 27, 0.01, 0.1, 19, 1, 1.0, pi / 2, false},
      {"2qm_chidelta_xx", RecipeKind::ChiVsDelta, ModelKind::SingleQubit, InteractionMode::Full,
       10.0, 1.0, 27, 2.0, 20.0, 37, 0, 1.0, pi / 2, false},
      {"2qm_chit", RecipeKind::ChiT, ModelKind::TwoQubitWithAnneal, InteractionMode::Full, 0.5,
       1.25, 21, 0.1, 2.0, 20, 2, 2.0, pi / 2, false},
      {"2qm_alpha", RecipeKind::Alpha, ModelKind::TwoQubitWithAnneal, InteractionMode::Full,
       0.5, 1.25, 21, 0.25, 2.0, 36, 2, 1.0, pi / 4, false},
      {"2qm_J", RecipeKind::JCoupling, ModelKind::TwoQubitWithAnneal, InteractionMode::Full,
       0.5, 1.25, 21, 0.01, 0.1, 19, 2, 0.5, pi / 4, false},
      {"2qm_alpha_xx", RecipeKind::Alpha, ModelKind::TwoQubitWithAnneal, InteractionMode::XX,
       10.0, 1.0, 21, 0.25, 2.0, 36, 2, 1.0, pi / 2, false},
      {"2qm_J_xx", RecipeKind::JCoupling, ModelKind::TwoQubitWithAnneal, InteractionMode::XX,
       0.8, 1.0, 21, 0.01, 0.1, 19, 2, 0.5, pi / 2, false},
  };

  const std::vector<RecipeInfo>& catalog = recipe_catalog();
  CHECK(catalog.size() == sizeof(table) / sizeof(table[0]));

  for (const Expect& e : table) {
    CAPTURE(e.name);
    SweepConfig c = preset_config(e.name);
    CHECK(c.preset == e.name);
    CHECK(c.recipe == e.recipe);
    CHECK(c.model.kind == e.kind);
    CHECK(c.model.interaction == e.mode);
    CHECK(c.model.delta2_over_eps2 == e.ratio2);
    CHECK(c.model.eta2 == e.eta2);
    CHECK(c.model.n_max == e.n_max);
    CHECK(c.grid.start == e.start);
    CHECK(c.grid.stop == e.stop);
    CHECK(c.grid.steps == e.steps);
    CHECK(c.bases.size() == e.n_bases);
    CHECK(c.fixed.alpha == e.alpha);
    CHECK(c.fixed.t_m_chi == e.t_m_chi);
    CHECK(c.fixed.selective == e.selective);
    // shared closure constants every figure uses
    CHECK(c.model.delta_over_g == 8.0);
    CHECK(c.model.delta_frac == 0.2);
    CHECK(c.model.j_over_w21 == 0.05);
    CHECK(c.model.w21_over_chi == 20.0);
    CHECK(c.model.drop_static);
  }

  // names are unique and every recipe kind has at least one preset
  for (size_t i = 0; i < catalog.size(); ++i)
    for (size_t j = i + 1; j < catalog.size(); ++j) CHECK(catalog[i].name != catalog[j].name);
  for (int k = 0; k < 8; ++k) {
    bool found = false;
    for (const RecipeInfo& info : catalog)
      if (info.config.recipe == static_cast<RecipeKind>(k)) found = true;
    CHECK(found);
  }

  CHECK(code_of([] { preset_config("nope"); }) == errc::config_error);
}

TEST_CASE("recipes listing names every kind and preset") {
  std::string text = list_recipes();
  CHECK(text.find("2qm_chit → Fig. 'Messung von FQ2 mit QFP1-Annealing' χt sweep") !=
        std::string::npos);
  const char* kind_names[] = {"chit",     "alpha",           "jcoupling",    "storage_t",
                              "storage_betamax", "overlap_g", "chi_vs_delta", "chi_vs_theta"};
  for (const char* k : kind_names) CHECK(text.find(k) != std::string::npos);
  for (const RecipeInfo& info : recipe_catalog())
    CHECK(text.find("  " + info.name + " ") != std::string::npos);
}

TEST_CASE("config text, overrides and precedence") {
  std::string text =
      "# sample config\n"
      "[sweep]\n"
      "recipe = 1q_chit\n"
      "bases = flux\n"
      "[fixed]\n"
      "alpha = 2\n"
      "[model]\n"
      "n_max = 9\n";

  SweepConfig c = make_sweep_config("", text, {"fixed.alpha=3", "grid=0.1:0.4:2"}, "out.csv");
  CHECK(c.preset == "1q_chit");
  CHECK(c.recipe == RecipeKind::ChiT);
  REQUIRE(c.bases.size() == 1);
  CHECK(c.bases[0] == BasisTag::Flux);
  CHECK(c.fixed.alpha == 3.0);  // --set beats the file
  CHECK(c.model.n_max == 9);    // file beats the preset
  CHECK(c.grid.steps == 2);
  CHECK(c.out_path == "out.csv");

  // an explicit recipe argument beats the one in the file
  SweepConfig d = make_sweep_config("1q_alpha", text, {}, "");
  CHECK(d.recipe == RecipeKind::Alpha);
  CHECK(d.fixed.alpha == 2.0);

  // bare --set keys resolve across sections; kind names resolve to presets
  SweepConfig e = make_sweep_config("storage_t", "", {"xi=0.5", "drop_static=false"}, "");
  CHECK(e.preset == "an_t");
  CHECK(e.fixed.xi == 0.5);
  CHECK_FALSE(e.model.drop_static);
}

TEST_CASE("config diagnostics carry line and field context") {
  auto message_of = [](const std::function<void()>& f) -> std::string {
    try {
      f();
    } catch (const Error& e) {
      CHECK(e.code() == errc::config_error);
      return e.what();
    }
    return "";
  };

  std::string m = message_of([] {
    make_sweep_config("1q_chit", "[fixed]\nnope = 1\n", {}, "");
  });
  CHECK(m.find("line 2") != std::string::npos);
  CHECK(m.find("nope") != std::string::npos);

  m = message_of([] { make_sweep_config("1q_chit", "[fixed]\nalpha = abc\n", {}, ""); });
  CHECK(m.find("expected a number") != std::string::npos);

  m = message_of([] { make_sweep_config("1q_chit", "alpha = 1\n", {}, ""); });
  CHECK(m.find("outside any") != std::string::npos);

  m = message_of([] { make_sweep_config("1q_chit", "[stuff]\n", {}, ""); });
  CHECK(m.find("unknown section") != std::string::npos);

  m = message_of([] { make_sweep_config("", "", {}, ""); });
  CHECK(m.find("no recipe") != std::string::npos);

  m = message_of([] { make_sweep_config("wat", "", {}, ""); });
  CHECK(m.find("unknown recipe") != std::string::npos);

  m = message_of([] { make_sweep_config("1q_chit", "", {"recipe=alpha"}, ""); });
  CHECK(m.find("--recipe") != std::string::npos);

  m = message_of([] { make_sweep_config("1q_chit", "", {"bases=sideways"}, ""); });
  CHECK(m.find("unknown basis") != std::string::npos);

  m = message_of([] { make_sweep_config("1q_chit", "", {"psi0=q+"}, ""); });
  CHECK(m.find("psi0") != std::string::npos);
}

TEST_CASE("config validation rejects broken sweeps") {
  auto broken = [](const std::function<void(SweepConfig&)>& tweak,
                   const char* preset = "1q_chit") {
    SweepConfig c = preset_config(preset);
    tweak(c);
    return code_of([&] { run_sweep(c); });
  };

  CHECK(broken([](SweepConfig& c) { c.grid.steps = 1; }) == errc::config_error);
  CHECK(broken([](SweepConfig& c) { c.grid = {2.0, 2.0, 5}; }) == errc::config_error);
  CHECK(broken([](SweepConfig& c) { c.bases.clear(); }) == errc::config_error);
  CHECK(broken([](SweepConfig& c) { c.bases = {BasisTag::Flux, BasisTag::Flux}; }) ==
        errc::config_error);
  CHECK(broken([](SweepConfig& c) { c.model.n_max = 1; }) == errc::config_error);
  CHECK(broken([](SweepConfig& c) { c.fixed.psi0 = "up"; }) == errc::config_error);
  // bases only exist for fidelity and storage recipes
  CHECK(broken([](SweepConfig& c) { c.bases = {BasisTag::Flux}; }, "bare_dressed") ==
        errc::config_error);
  // the QFP stores one qubit; only flux and its energy basis make sense
  CHECK(broken([](SweepConfig& c) { c.bases = {BasisTag::EnergyQ1Q2}; }, "an_t") ==
        errc::config_error);
  // no qubit-qubit coupling on a single qubit
  CHECK(broken([](SweepConfig& c) { c.model.kind = ModelKind::SingleQubit; }, "2qo_J") ==
        errc::config_error);
  // model/basis combinations surface before anything is written
  CHECK(broken([](SweepConfig& c) { c.bases = {BasisTag::DressedQ1Q2}; }, "1q_chit") ==
        errc::config_error);
  CHECK(broken([](SweepConfig& c) { c.grid = {-1.0, 1.0, 3}; }, "1q_chi_delta") ==
        errc::config_error);
}

TEST_CASE("sweep output is deterministic and round-trips through csv") {
  fs::path dir = fresh_dir("roundtrip");
  fs::path out = dir / "sweep.csv";

  SweepConfig cfg = preset_config("1q_chit");
  cfg.model.n_max = 12;
  cfg.grid = {0.1, 2.0, 4};
  cfg.out_path = out.string();

  SweepResult first = run_sweep(cfg);
  std::string bytes_a = slurp(out);
  run_sweep(cfg);
  std::string bytes_b = slurp(out);
  CHECK(bytes_a == bytes_b);
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));

  REQUIRE(first.rows.size() == 8);
  CHECK(first.failed == 0);
  for (size_t i = 1; i < first.rows.size(); ++i) {
    bool ordered = first.rows[i - 1].value < first.rows[i].value ||
                   (first.rows[i - 1].value == first.rows[i].value &&
                    first.rows[i - 1].basis < first.rows[i].basis);
    CHECK(ordered);
  }

  SweepResult back = parse_sweep_csv(bytes_a);
  CHECK(back.header == first.header);
  CHECK(back.sweep_var == first.sweep_var);
  CHECK(back.failed == first.failed);
  REQUIRE(back.rows.size() == first.rows.size());
  for (size_t i = 0; i < back.rows.size(); ++i) {
    CHECK(back.rows[i].value == first.rows[i].value);
    CHECK(back.rows[i].basis == first.rows[i].basis);
    CHECK(back.rows[i].fidelity == first.rows[i].fidelity);
    CHECK(back.rows[i].p_plus == first.rows[i].p_plus);
    CHECK(back.rows[i].p_minus == first.rows[i].p_minus);
    CHECK(back.rows[i].status == first.rows[i].status);
  }

  CHECK(first.header.front() == "qfps sweep artifact v1");
  bool has_echo = false;
  for (const std::string& line : first.header)
    if (line == "model.n_max = 12") has_echo = true;
  CHECK(has_echo);
}

TEST_CASE("per-point failures become status rows and never abort") {
  fs::path dir = fresh_dir("status_rows");
  fs::path out = dir / "storage.csv";

  SweepConfig cfg = preset_config("an_t");
  cfg.grid = {-1.0, 1.0, 3};  // first point asks for a negative time
  cfg.out_path = out.string();

  SweepResult res = run_sweep(cfg);
  CHECK(res.failed == 2);  // one bad point in each basis
  const SweepRow& bad = row_at(res, -1.0, "flux");
  CHECK(bad.status == "invalid_argument");
  CHECK(std::isnan(bad.fidelity));
  CHECK(row_at(res, 1.0, "flux").status == "ok");

  std::string bytes = slurp(out);
  CHECK(bytes.find("invalid_argument") != std::string::npos);
  SweepResult back = parse_sweep_csv(bytes);
  CHECK(back.failed == 2);
  CHECK(std::isnan(row_at(back, -1.0, "energy_q2").fidelity));
}

TEST_CASE("storage sweep reproduces the latch curve") {
  SweepConfig cfg = preset_config("an_t");
  cfg.grid = {0.0, 1.0, 11};
  SweepResult res = run_sweep(cfg);
  CHECK(res.failed == 0);

  for (const char* basis : {"flux", "energy_q2"}) {
    double prev = 0.0;
    for (const SweepRow& r : res.rows) {
      if (r.basis != basis) continue;
      CHECK(r.fidelity >= prev - 1e-12);
      prev = r.fidelity;
      CHECK(std::isnan(r.p_plus));  // storage has no outcome probabilities
    }
    CHECK(row_at(res, 1.0, basis).fidelity >= 0.99);
  }
  // projecting the well position onto the energy axis can only shrink it
  for (double v : grid_values(cfg.grid))
    CHECK(row_at(res, v, "energy_q2").fidelity <= row_at(res, v, "flux").fidelity + 1e-12);
}

TEST_CASE("overlap sweep starts at one and collapses by g/omega_r = 3") {
  SweepConfig cfg = preset_config("bare_dressed");
  cfg.grid = {0.0, 3.0, 7};
  SweepResult res = run_sweep(cfg);
  CHECK(res.failed == 0);
  REQUIRE(res.rows.size() == 7);
  CHECK(res.rows.front().basis.empty());
  CHECK(res.rows.front().fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(res.rows.back().fidelity) <= 0.25);
}

TEST_CASE("chi maps follow the dispersive formula") {
  SweepConfig delta = preset_config("1q_chi_delta");
  delta.grid = {2.0, 4.0, 2};
  SweepResult res = run_sweep(delta);
  REQUIRE(res.rows.size() == 2);
  // chi scales like (delta/g)^-2 once the detuning fraction is pinned
  CHECK(res.rows[0].fidelity / res.rows[1].fidelity == doctest::Approx(4.0).epsilon(1e-12));

  SweepConfig theta = preset_config("1q_chi_theta");
  theta.grid = {0.0, M_PI, 5};
  SweepResult tres = run_sweep(theta);
  REQUIRE(tres.rows.size() == 5);
  CHECK(tres.rows[0].fidelity == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(tres.rows[4].fidelity == doctest::Approx(0.0).epsilon(1e-14));
  // damping the tunneling only, the map is symmetric about pi/2
  CHECK(tres.rows[1].fidelity == doctest::Approx(tres.rows[3].fidelity).epsilon(1e-12));
  CHECK(tres.rows[2].fidelity > tres.rows[1].fidelity);
}

TEST_CASE("measurement sweep emits one row per value and basis") {
  SweepConfig cfg = preset_config("2qo_chit");
  cfg.model.n_max = 12;
  cfg.grid = {0.5, 1.0, 2};
  SweepResult res = run_sweep(cfg);
  CHECK(res.failed == 0);
  REQUIRE(res.rows.size() == 6);
  for (const SweepRow& r : res.rows) {
    CHECK(r.status == "ok");
    CHECK(r.fidelity >= 0.0);
    CHECK(r.fidelity <= 1.0 + 1e-9);
    CHECK(r.p_plus + r.p_minus == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(res.sweep_var == "chi_t");

  // matched-outcome functional runs through the same channel
  cfg.fixed.selective = true;
  SweepResult sel = run_sweep(cfg);
  CHECK(sel.failed == 0);
  for (size_t i = 0; i < sel.rows.size(); ++i) {
    CHECK(sel.rows[i].fidelity >= 0.0);
    CHECK(sel.rows[i].p_plus == res.rows[i].p_plus);  // probabilities ignore the functional
  }
}

TEST_CASE("zz coupling sweep keeps the measured qubit diagonal") {
  SweepConfig cfg = preset_config("2qo_J");
  cfg.model.n_max = 10;
  cfg.grid = {0.01, 0.1, 3};
  SweepResult res = run_sweep(cfg);
  CHECK(res.failed == 0);
  REQUIRE(res.rows.size() == 3);
  // the zz-approximated Hamiltonian cannot flip the qubit, so only the
  // coherent-state truncation nibbles at the fidelity
  for (const SweepRow& r : res.rows) CHECK(r.fidelity > 0.999);
}

TEST_CASE("write failures surface as io errors") {
  fs::path dir = fresh_dir("io_fail");
  SweepConfig cfg = preset_config("1q_chi_delta");
  cfg.grid = {2.0, 4.0, 2};
  cfg.out_path = (dir / "missing" / "deep" / "out.csv").string();
  CHECK(code_of([&] { run_sweep(cfg); }) == errc::io_error);
  CHECK_FALSE(fs::exists(dir / "missing"));
}
