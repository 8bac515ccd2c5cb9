/* arcq — architecture quality evaluation, selection and runtime
 * reconfiguration over component/connector models.
 *
 * All functions returning char** allocate with malloc; release results with
 * arcq_string_free. Models are opaque handles owned by the caller. Status
 * codes line up with the CLI exit codes.
 */
#ifndef ARCQ_H
#define ARCQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arcq_status {
    ARCQ_OK = 0,               /* success / gate accept */
    ARCQ_REJECTED = 1,         /* gate reject or no selectable winner */
    ARCQ_PARSE_ERROR = 2,      /* model, trace or context syntax */
    ARCQ_VALIDATION_ERROR = 3, /* well-formedness violations */
    ARCQ_RUNTIME_ERROR = 4     /* evaluation or simulation failure */
} arcq_status;

typedef enum arcq_format { ARCQ_FORMAT_TEXT = 0, ARCQ_FORMAT_CSV = 1 } arcq_format;

typedef struct arcq_model arcq_model;

/* Message describing the most recent failure on this thread; never NULL. */
const char* arcq_last_error(void);

void arcq_string_free(char* str);

/* Parses an ADL document. On ARCQ_PARSE_ERROR the rendered error list is in
 * arcq_last_error(). */
arcq_status arcq_model_parse(const char* text, arcq_model** out_model);

void arcq_model_free(arcq_model* model);

/* Runs the well-formedness catalog. out_diagnostics (optional) receives one
 * rendered diagnostic per line; returns ARCQ_VALIDATION_ERROR when any
 * diagnostic is an error. */
arcq_status arcq_model_validate(const arcq_model* model, char** out_diagnostics);

/* Canonical text form of the model. */
arcq_status arcq_model_serialize(const arcq_model* model, char** out_text);

/* Family descriptors as XML. */
arcq_status arcq_export_families_xml(const arcq_model* model, char** out_xml);

/* Evaluates one configuration. context_text holds trace-format lines applied
 * over nominal capacities (NULL: nominal). thresholds points to
 * {coupling_max, cohesion_min, complexity_max} or is NULL for no gate.
 * Returns ARCQ_REJECTED on a gate reject, ARCQ_VALIDATION_ERROR when the
 * configuration is ill-formed. */
arcq_status arcq_evaluate(const arcq_model* model, const char* config_name,
                          const char* context_text, const double* thresholds, arcq_format format,
                          char** out_report);

/* Ranks candidates by the quality function and picks the best well-formed
 * one. out_winner_index (optional) receives the winner's position in
 * config_names. Returns ARCQ_REJECTED when no candidate qualifies. */
arcq_status arcq_select(const arcq_model* model, const char* const* config_names,
                        size_t config_count, const char* context_text, arcq_format format,
                        char** out_table, int* out_winner_index);

/* Simulates the runtime adaptation loop and renders the reconfiguration
 * log. trace_text==NULL generates a Poisson trace at poisson_rate_per_s
 * over horizon_ms. horizon_ms<0 defaults to the last scripted event plus
 * 60 s. dt_ms<=0 defaults to 100 ms. */
arcq_status arcq_simulate(const arcq_model* model, const char* config_name,
                          const char* family_name, const char* trace_text,
                          double poisson_rate_per_s, int64_t horizon_ms, int64_t dt_ms,
                          uint64_t seed, char** out_log);

/* Seeded Poisson event trace over the model's links and devices, rendered
 * in trace format. */
arcq_status arcq_gen_poisson_trace(const arcq_model* model, double rate_per_s,
                                   int64_t horizon_ms, uint64_t seed, char** out_trace);

#ifdef __cplusplus
}
#endif

#endif /* ARCQ_H */
