#include "selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "families.hpp"

namespace arcq::selection {

namespace {

std::string config_of_location(const std::string& location) {
    constexpr std::string_view prefix = "configuration ";
    if (location.rfind(prefix, 0) != 0) return {};
    std::string rest = location.substr(prefix.size());
    const std::size_t cut = rest.find_first_of("/ ");
    return cut == std::string::npos ? rest : rest.substr(0, cut);
}

std::vector<Diagnostic> scoped_diagnostics(const std::vector<Diagnostic>& all,
                                           const std::string& config_name) {
    std::vector<Diagnostic> out;
    for (const auto& d : all) {
        const std::string owner = config_of_location(d.location);
        if (owner.empty() || owner == config_name) out.push_back(d);
    }
    return out;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

QualityReport evaluate(const Model& model, const std::string& config_name,
                       const ContextSnapshot* ctx, const Thresholds* thresholds) {
    const Configuration* config = model.find_configuration(config_name);
    if (!config)
        throw SelectionError("UnknownConfiguration",
                             "no configuration named '" + config_name + "'");

    QualityReport report;
    report.model_name = model.name;
    report.config_name = config_name;
    report.level = config->level;
    report.diagnostics = scoped_diagnostics(validate_wellformed(model), config_name);

    report.metrics.coupling = metrics::coupling(model, *config);
    report.metrics.cohesion = metrics::cohesion(model, *config);
    report.metrics.complexity = metrics::complexity(*config);
    report.mark = metrics::quantize(report.metrics.coupling, report.metrics.cohesion,
                                    report.metrics.complexity);

    if (config->level == ModelLevel::CPIM && ctx) {
        try {
            report.metrics.tbm_ms = metrics::tbm(model, *config, *ctx);
        } catch (const metrics::MetricsError&) {
            // not computable (e.g. undeployed instance); diagnostics tell why
        }
        if (const Family* family = model.family_of(config_name); family && report.metrics.tbm_ms) {
            try {
                report.metrics.maac = families::maac(model, *family, config_name);
                report.metrics.quality =
                    *report.metrics.tbm_ms / (1.0 + report.metrics.maac->max);
            } catch (const families::FamilyError&) {
            }
        }
    }

    if (thresholds) {
        metrics::Verdict verdict = metrics::gate(report.metrics, *thresholds);
        if (has_errors(report.diagnostics)) {
            verdict.decision = metrics::Decision::Reject;
            verdict.failed.insert(verdict.failed.begin(), "wellformed");
        }
        report.verdict = verdict;
    }
    return report;
}

SelectionResult select_best(const Model& model, const std::vector<std::string>& config_names,
                            const ContextSnapshot& ctx) {
    if (config_names.empty())
        throw SelectionError("AllCandidatesInvalid", "no candidate configurations given");

    SelectionResult result;
    std::vector<bool> valid(config_names.size(), false);
    for (const auto& name : config_names) {
        const Configuration* config = model.find_configuration(name);
        if (!config)
            throw SelectionError("UnknownConfiguration", "no configuration named '" + name + "'");
        if (config->level != ModelLevel::CPIM || config->deployments.empty())
            throw SelectionError("NotCpim",
                                 "candidate '" + name + "' is not a deployed CPIM configuration");
    }

    for (std::size_t i = 0; i < config_names.size(); ++i) {
        QualityReport report = evaluate(model, config_names[i], &ctx, nullptr);
        double score = -std::numeric_limits<double>::infinity();
        if (report.metrics.quality)
            score = *report.metrics.quality;
        else if (report.metrics.tbm_ms)
            score = *report.metrics.tbm_ms;  // configurations outside any family
        valid[i] = !has_errors(report.diagnostics) && std::isfinite(score);
        result.reports.push_back(std::move(report));
        result.scores.push_back(score);
    }

    // ranked by score; the earliest candidate wins ties, constraint
    // violators are passed over
    std::vector<std::size_t> order(config_names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.scores[a] > result.scores[b];
    });
    for (std::size_t idx : order) {
        if (valid[idx]) {
            result.winner_index = static_cast<int>(idx);
            return result;
        }
    }
    throw SelectionError("AllCandidatesInvalid",
                         "every candidate fails well-formedness or scoring");
}

std::string render_report(const QualityReport& report, TableFormat format) {
    std::ostringstream out;
    const auto& m = report.metrics;
    if (format == TableFormat::Csv) {
        out << "metric,value,mark\n";
        out << "coupling," << fixed3(m.coupling) << "," << report.mark.coupling << "\n";
        out << "cohesion," << fixed3(m.cohesion) << "," << report.mark.cohesion << "\n";
        out << "complexity," << fixed3(m.complexity) << "," << report.mark.complexity << "\n";
        if (m.tbm_ms) out << "tbm_ms," << fixed3(*m.tbm_ms) << ",\n";
        if (m.maac)
            out << "maac," << m.maac->min << ".." << m.maac->max << ",\n";
        if (m.quality) out << "quality," << fixed3(*m.quality) << ",\n";
        if (report.verdict) {
            out << "verdict,"
                << (report.verdict->decision == metrics::Decision::Accept ? "Accept" : "Reject")
                << ",\n";
        }
        return out.str();
    }

    out << "configuration " << report.config_name << " (" << to_string(report.level) << ")\n";
    out << "  coupling    " << fixed3(m.coupling) << "  mark " << report.mark.coupling << "\n";
    out << "  cohesion    " << fixed3(m.cohesion) << "  mark " << report.mark.cohesion << "\n";
    out << "  complexity  " << fixed3(m.complexity) << "  mark " << report.mark.complexity << "\n";
    if (m.tbm_ms) out << "  tbm         " << fixed3(*m.tbm_ms) << " ms\n";
    if (m.maac) out << "  maac        " << m.maac->min << ".." << m.maac->max << " artifacts\n";
    if (m.quality) out << "  quality     " << fixed3(*m.quality) << "\n";
    if (report.verdict) {
        out << "  verdict     "
            << (report.verdict->decision == metrics::Decision::Accept ? "Accept" : "Reject");
        if (!report.verdict->failed.empty()) {
            out << " (failed:";
            for (const auto& f : report.verdict->failed) out << " " << f;
            out << ")";
        }
        if (!report.verdict->advisories.empty()) {
            out << " (advisory:";
            for (const auto& a : report.verdict->advisories) out << " " << a;
            out << ")";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_selection(const SelectionResult& result, TableFormat format) {
    std::vector<std::size_t> order(result.reports.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.scores[a] > result.scores[b];
    });

    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "rank,configuration,quality,tbm_ms,maac\n";
        int rank = 1;
        for (std::size_t idx : order) {
            const auto& r = result.reports[idx];
            out << rank++ << "," << r.config_name << "," << fixed3(result.scores[idx]) << ",";
            if (r.metrics.tbm_ms) out << fixed3(*r.metrics.tbm_ms);
            out << ",";
            if (r.metrics.maac) out << r.metrics.maac->min << ".." << r.metrics.maac->max;
            out << "\n";
        }
        out << "winner," << result.reports[result.winner_index].config_name << "\n";
        return out.str();
    }

    out << "rank  configuration        quality      tbm_ms       maac\n";
    int rank = 1;
    for (std::size_t idx : order) {
        const auto& r = result.reports[idx];
        char line[160];
        std::string maac = "-";
        if (r.metrics.maac)
            maac = std::to_string(r.metrics.maac->min) + ".." + std::to_string(r.metrics.maac->max);
        std::snprintf(line, sizeof(line), "%-6d%-21s%-13s%-13s%s\n", rank++, r.config_name.c_str(),
                      fixed3(result.scores[idx]).c_str(),
                      r.metrics.tbm_ms ? fixed3(*r.metrics.tbm_ms).c_str() : "-", maac.c_str());
        out << line;
    }
    out << "winner: " << result.reports[result.winner_index].config_name << "\n";
    return out.str();
}

}  // namespace arcq::selection
