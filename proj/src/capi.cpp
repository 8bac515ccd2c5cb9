#include "arcq/arcq.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "adl.hpp"
#include "context.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "runtime.hpp"
#include "selection.hpp"

struct arcq_model {
    arcq::Model model;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_output(char** out, const std::string& value) {
    if (out) *out = dup_string(value);
}

arcq_status fail(arcq_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

arcq::selection::TableFormat table_format(arcq_format format) {
    return format == ARCQ_FORMAT_CSV ? arcq::selection::TableFormat::Csv
                                     : arcq::selection::TableFormat::Text;
}

/// Context files reuse the trace grammar; nullptr means nominal capacities.
bool load_snapshot(const arcq::Model& model, const char* context_text,
                   arcq::ContextSnapshot& out, arcq_status& status) {
    if (!context_text) {
        out = arcq::ContextSnapshot::nominal(model);
        return true;
    }
    arcq::adl::TraceParseResult parsed = arcq::adl::parse_trace(context_text);
    if (!parsed.ok()) {
        std::ostringstream msg;
        for (const auto& e : parsed.errors) msg << arcq::adl::render_parse_error(e) << "\n";
        status = fail(ARCQ_PARSE_ERROR, msg.str());
        return false;
    }
    try {
        out = arcq::snapshot_from_trace(model, parsed.trace);
    } catch (const std::exception& e) {
        status = fail(ARCQ_RUNTIME_ERROR, e.what());
        return false;
    }
    return true;
}

}  // namespace

extern "C" {

const char* arcq_last_error(void) { return g_last_error.c_str(); }

void arcq_string_free(char* str) { std::free(str); }

arcq_status arcq_model_parse(const char* text, arcq_model** out_model) {
    if (!text || !out_model) return fail(ARCQ_RUNTIME_ERROR, "null argument");
    *out_model = nullptr;
    arcq::adl::ParseResult result = arcq::adl::parse_model(text);
    if (!result.ok()) {
        std::ostringstream msg;
        for (const auto& e : result.errors) msg << arcq::adl::render_parse_error(e) << "\n";
        return fail(ARCQ_PARSE_ERROR, msg.str());
    }
    *out_model = new arcq_model{std::move(*result.model)};
    return ARCQ_OK;
}

void arcq_model_free(arcq_model* model) { delete model; }

arcq_status arcq_model_validate(const arcq_model* model, char** out_diagnostics) {
    if (!model) return fail(ARCQ_RUNTIME_ERROR, "null model");
    std::vector<arcq::Diagnostic> diags = arcq::validate_wellformed(model->model);
    std::ostringstream rendered;
    for (const auto& d : diags) rendered << arcq::render_diagnostic(d) << "\n";
    set_output(out_diagnostics, rendered.str());
    if (arcq::has_errors(diags)) return fail(ARCQ_VALIDATION_ERROR, rendered.str());
    return ARCQ_OK;
}

arcq_status arcq_model_serialize(const arcq_model* model, char** out_text) {
    if (!model || !out_text) return fail(ARCQ_RUNTIME_ERROR, "null argument");
    set_output(out_text, arcq::adl::serialize_model(model->model));
    return ARCQ_OK;
}

arcq_status arcq_export_families_xml(const arcq_model* model, char** out_xml) {
    if (!model || !out_xml) return fail(ARCQ_RUNTIME_ERROR, "null argument");
    set_output(out_xml, arcq::adl::export_families_xml(model->model));
    return ARCQ_OK;
}

arcq_status arcq_evaluate(const arcq_model* model, const char* config_name,
                          const char* context_text, const double* thresholds, arcq_format format,
                          char** out_report) {
    if (!model || !config_name) return fail(ARCQ_RUNTIME_ERROR, "null argument");
    arcq_status status = ARCQ_OK;
    arcq::ContextSnapshot ctx;
    if (!load_snapshot(model->model, context_text, ctx, status)) return status;

    arcq::Thresholds gate;
    if (thresholds) {
        gate.coupling_max = thresholds[0];
        gate.cohesion_min = thresholds[1];
        gate.complexity_max = thresholds[2];
    } else if (model->model.thresholds) {
        gate = *model->model.thresholds;
    }
    const bool use_gate = thresholds || model->model.thresholds.has_value();

    try {
        arcq::selection::QualityReport report = arcq::selection::evaluate(
            model->model, config_name, &ctx, use_gate ? &gate : nullptr);
        set_output(out_report, arcq::selection::render_report(report, table_format(format)));
        if (arcq::has_errors(report.diagnostics)) {
            std::ostringstream msg;
            for (const auto& d : report.diagnostics)
                msg << arcq::render_diagnostic(d) << "\n";
            return fail(ARCQ_VALIDATION_ERROR, msg.str());
        }
        if (report.verdict && report.verdict->decision == arcq::metrics::Decision::Reject)
            return fail(ARCQ_REJECTED, "gate rejected configuration '" + std::string(config_name) +
                                           "'");
        return ARCQ_OK;
    } catch (const arcq::selection::SelectionError& e) {
        return fail(ARCQ_RUNTIME_ERROR, e.what());
    }
}

arcq_status arcq_select(const arcq_model* model, const char* const* config_names,
                        size_t config_count, const char* context_text, arcq_format format,
                        char** out_table, int* out_winner_index) {
    if (!model || !config_names) return fail(ARCQ_RUNTIME_ERROR, "null argument");
    arcq_status status = ARCQ_OK;
    arcq::ContextSnapshot ctx;
    if (!load_snapshot(model->model, context_text, ctx, status)) return status;

    std::vector<std::string> names;
    for (size_t i = 0; i < config_count; ++i) names.emplace_back(config_names[i]);
    try {
        arcq::selection::SelectionResult result =
            arcq::selection::select_best(model->model, names, ctx);
        set_output(out_table, arcq::selection::render_selection(result, table_format(format)));
        if (out_winner_index) *out_winner_index = result.winner_index;
        return ARCQ_OK;
    } catch (const arcq::selection::SelectionError& e) {
        if (e.code == "AllCandidatesInvalid") return fail(ARCQ_REJECTED, e.what());
        return fail(ARCQ_RUNTIME_ERROR, e.what());
    }
}

arcq_status arcq_simulate(const arcq_model* model, const char* config_name,
                          const char* family_name, const char* trace_text,
                          double poisson_rate_per_s, int64_t horizon_ms, int64_t dt_ms,
                          uint64_t seed, char** out_log) {
    if (!model || !config_name || !family_name)
        return fail(ARCQ_RUNTIME_ERROR, "null argument");

    arcq::Trace trace;
    if (trace_text) {
        arcq::adl::TraceParseResult parsed = arcq::adl::parse_trace(trace_text);
        if (!parsed.ok()) {
            std::ostringstream msg;
            for (const auto& e : parsed.errors) msg << arcq::adl::render_parse_error(e) << "\n";
            return fail(ARCQ_PARSE_ERROR, msg.str());
        }
        trace = std::move(parsed.trace);
    } else {
        if (poisson_rate_per_s <= 0.0 || horizon_ms < 0)
            return fail(ARCQ_RUNTIME_ERROR,
                        "poisson mode needs a positive rate and a horizon");
        trace = arcq::runtime::gen_poisson_trace(
            arcq::runtime::default_poisson_rows(model->model), poisson_rate_per_s, horizon_ms,
            seed);
    }

    arcq::runtime::RunOptions options;
    options.seed = seed;
    options.horizon_ms = horizon_ms;
    options.dt_ms = dt_ms > 0 ? dt_ms : 100;
    try {
        arcq::runtime::ReconfigurationLog log =
            arcq::runtime::run(model->model, config_name, family_name, trace, options);
        set_output(out_log, arcq::runtime::serialize_log(log));
        return ARCQ_OK;
    } catch (const std::exception& e) {
        return fail(ARCQ_RUNTIME_ERROR, e.what());
    }
}

arcq_status arcq_gen_poisson_trace(const arcq_model* model, double rate_per_s,
                                   int64_t horizon_ms, uint64_t seed, char** out_trace) {
    if (!model || !out_trace) return fail(ARCQ_RUNTIME_ERROR, "null argument");
    if (rate_per_s < 0.0 || horizon_ms < 0)
        return fail(ARCQ_RUNTIME_ERROR, "rate and horizon must be non-negative");
    arcq::Trace trace = arcq::runtime::gen_poisson_trace(
        arcq::runtime::default_poisson_rows(model->model), rate_per_s, horizon_ms, seed);
    set_output(out_trace, arcq::adl::serialize_trace(trace));
    return ARCQ_OK;
}

}  // extern "C"
