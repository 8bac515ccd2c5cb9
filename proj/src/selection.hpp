#pragma once

#include <optional>
#include <string>
#include <vector>

#include "context.hpp"
#include "metrics.hpp"
#include "model.hpp"

namespace arcq::selection {

/// `code` is one of UnknownConfiguration, AllCandidatesInvalid, NotCpim.
struct SelectionError : std::runtime_error {
    std::string code;
    SelectionError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

struct QualityReport {
    std::string model_name;
    std::string config_name;
    ModelLevel level = ModelLevel::PIM;
    metrics::MetricReport metrics;
    metrics::Mark mark;
    std::optional<metrics::Verdict> verdict;  // present iff thresholds supplied
    std::vector<Diagnostic> diagnostics;      // model-scoped + this configuration's
};

struct SelectionResult {
    int winner_index = 0;  // index into the candidate list as given
    std::vector<QualityReport> reports;
    std::vector<double> scores;
};

/// Validation-mode assessment of one configuration. Structural metrics are
/// always present; tbm/maac/quality when the configuration is CPIM, a
/// context is supplied and the values are computable; the verdict when
/// thresholds are supplied (well-formedness errors dominate the gate).
QualityReport evaluate(const Model& model, const std::string& config_name,
                       const ContextSnapshot* ctx, const Thresholds* thresholds);

/// Selection mode: scores every candidate with the quality function and
/// picks the best-scoring candidate that passes well-formedness, promoting
/// the next best over constraint violators. Equal scores keep the earlier
/// candidate.
SelectionResult select_best(const Model& model, const std::vector<std::string>& config_names,
                            const ContextSnapshot& ctx);

enum class TableFormat { Text, Csv };

std::string render_report(const QualityReport& report, TableFormat format);
std::string render_selection(const SelectionResult& result, TableFormat format);

}  // namespace arcq::selection
