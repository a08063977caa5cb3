#include "qfps/qfps.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/linalg.hpp"
#include "sweep/sweep.hpp"

struct qfps_config {
  qfps::SweepConfig cfg;
};

struct qfps_result {
  qfps::SweepResult res;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

qfps_status status_of(qfps::errc code) {
  switch (code) {
    case qfps::errc::config_error: return QFPS_ERROR_CONFIG;
    case qfps::errc::io_error: return QFPS_ERROR_IO;
    default: return QFPS_ERROR_NUMERIC;
  }
}

// every entry point funnels through here so last_error stays consistent
template <typename Fn>
qfps_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QFPS_OK;
  } catch (const qfps::Error& e) {
    g_last_error = std::string(qfps::errc_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QFPS_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QFPS_ERROR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown error";
    return QFPS_ERROR_INTERNAL;
  }
}

qfps_status usage_error(const char* msg) {
  g_last_error = msg;
  return QFPS_ERROR_USAGE;
}

}  // namespace

extern "C" {

const char* qfps_version(void) { return QFPS_VERSION_STRING; }

const char* qfps_status_name(qfps_status status) {
  switch (status) {
    case QFPS_OK: return "ok";
    case QFPS_ERROR_USAGE: return "usage_error";
    case QFPS_ERROR_CONFIG: return "config_error";
    case QFPS_ERROR_IO: return "io_error";
    case QFPS_ERROR_NUMERIC: return "numeric_error";
    case QFPS_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* qfps_last_error(void) { return g_last_error.c_str(); }

const char* qfps_recipes(void) {
  static const std::string text = qfps::list_recipes();
  return text.c_str();
}

qfps_status qfps_config_create(const char* recipe, const char* config_text,
                               const char* const* overrides, size_t n_overrides,
                               const char* out_path, qfps_config** out_config) {
  if (out_config == nullptr) return usage_error("qfps_config_create: out_config is null");
  if (n_overrides > 0 && overrides == nullptr)
    return usage_error("qfps_config_create: overrides is null");
  *out_config = nullptr;
  return guarded([&] {
    std::vector<std::string> sets;
    sets.reserve(n_overrides);
    for (size_t i = 0; i < n_overrides; ++i)
      sets.emplace_back(overrides[i] != nullptr ? overrides[i] : "");
    qfps::SweepConfig cfg = qfps::make_sweep_config(
        recipe != nullptr ? recipe : "", config_text != nullptr ? config_text : "", sets,
        out_path != nullptr ? out_path : "");
    *out_config = new qfps_config{std::move(cfg)};
  });
}

const char* qfps_config_out_path(const qfps_config* config) {
  return config != nullptr ? config->cfg.out_path.c_str() : "";
}

void qfps_config_free(qfps_config* config) { delete config; }

qfps_status qfps_sweep_run(const qfps_config* config, qfps_result** out_result) {
  if (config == nullptr) return usage_error("qfps_sweep_run: config is null");
  if (out_result == nullptr) return usage_error("qfps_sweep_run: out_result is null");
  *out_result = nullptr;
  return guarded([&] {
    qfps::SweepResult res = qfps::run_sweep(config->cfg);
    std::string csv = qfps::sweep_csv(res);
    *out_result = new qfps_result{std::move(res), std::move(csv)};
  });
}

size_t qfps_result_row_count(const qfps_result* result) {
  return result != nullptr ? result->res.rows.size() : 0;
}

int qfps_result_failed_count(const qfps_result* result) {
  return result != nullptr ? result->res.failed : 0;
}

const char* qfps_result_sweep_var(const qfps_result* result) {
  return result != nullptr ? result->res.sweep_var.c_str() : "";
}

const char* qfps_result_csv(const qfps_result* result) {
  return result != nullptr ? result->csv.c_str() : "";
}

qfps_status qfps_result_row(const qfps_result* result, size_t index, qfps_row_view* out_row) {
  if (result == nullptr) return usage_error("qfps_result_row: result is null");
  if (out_row == nullptr) return usage_error("qfps_result_row: out_row is null");
  if (index >= result->res.rows.size()) return usage_error("qfps_result_row: index out of range");
  const qfps::SweepRow& r = result->res.rows[index];
  out_row->value = r.value;
  out_row->fidelity = r.fidelity;
  out_row->p_plus = r.p_plus;
  out_row->p_minus = r.p_minus;
  out_row->basis = r.basis.c_str();
  out_row->status = r.status.c_str();
  g_last_error.clear();
  return QFPS_OK;
}

void qfps_result_free(qfps_result* result) { delete result; }

}  // extern "C"
