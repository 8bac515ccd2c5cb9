// Command-line front end for the arcq shared library. Talks to the core
// exclusively through the C API in arcq/arcq.h.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcq/arcq.h"

namespace {

struct StringDeleter {
    void operator()(char* s) const { arcq_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ModelDeleter {
    void operator()(arcq_model* m) const { arcq_model_free(m); }
};
using OwnedModel = std::unique_ptr<arcq_model, ModelDeleter>;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

int load_model(const std::string& path, OwnedModel& model) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "cannot read '" << path << "'\n";
        return ARCQ_RUNTIME_ERROR;
    }
    arcq_model* raw = nullptr;
    arcq_status status = arcq_model_parse(text.c_str(), &raw);
    if (status != ARCQ_OK) {
        std::cerr << path << ":" << arcq_last_error();
        return status;
    }
    model.reset(raw);
    return ARCQ_OK;
}

std::optional<std::string> slurp(const std::string& path, int& exit_code) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "cannot read '" << path << "'\n";
        exit_code = ARCQ_RUNTIME_ERROR;
        return std::nullopt;
    }
    return text;
}

arcq_format parse_format(const std::string& format) {
    return format == "csv" ? ARCQ_FORMAT_CSV : ARCQ_FORMAT_TEXT;
}

std::vector<std::string> split_csv(const std::string& list) {
    std::vector<std::string> out;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

bool parse_thresholds(const std::string& spec, double out[3]) {
    std::vector<std::string> parts = split_csv(spec);
    if (parts.size() != 3) return false;
    try {
        for (int i = 0; i < 3; ++i) out[i] = std::stod(parts[i]);
    } catch (...) {
        return false;
    }
    return true;
}

void emit(const std::string& text, const std::string& out_path, int& exit_code) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        exit_code = ARCQ_RUNTIME_ERROR;
        return;
    }
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"architecture quality evaluation, selection and reconfiguration"};
    app.require_subcommand(1);

    std::string model_path, config, family, context_path, trace_path, out_path;
    std::string configs_list, thresholds_spec, format = "text";
    double poisson_rate = 0.0;
    std::int64_t horizon_ms = -1, dt_ms = 100;
    std::uint64_t seed = 0;

    CLI::App* validate = app.add_subcommand("validate", "check a model against the constraint catalog");
    validate->add_option("model", model_path, "ADL model file")->required();

    CLI::App* evaluate = app.add_subcommand("evaluate", "metric report for one configuration");
    evaluate->add_option("model", model_path)->required();
    evaluate->add_option("--config", config, "configuration name")->required();
    evaluate->add_option("--context", context_path, "context file (trace lines)");
    evaluate->add_option("--thresholds", thresholds_spec, "coupling,cohesion,complexity");
    evaluate->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* select = app.add_subcommand("select", "rank candidate configurations");
    select->add_option("model", model_path)->required();
    select->add_option("--configs", configs_list, "comma-separated candidates")->required();
    select->add_option("--context", context_path, "context file (trace lines)")->required();
    select->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* simulate = app.add_subcommand("simulate", "run the adaptation loop over a trace");
    simulate->add_option("model", model_path)->required();
    simulate->add_option("--config", config)->required();
    simulate->add_option("--family", family)->required();
    simulate->add_option("--trace", trace_path, "scripted event trace");
    simulate->add_option("--poisson", poisson_rate, "event rate per second");
    simulate->add_option("--horizon", horizon_ms, "simulated time in ms");
    simulate->add_option("--dt", dt_ms, "probe period in ms");
    simulate->add_option("--seed", seed);
    simulate->add_option("--out", out_path, "write the log to a file");

    CLI::App* export_families = app.add_subcommand("export-families", "family descriptors as XML");
    export_families->add_option("model", model_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return ARCQ_PARSE_ERROR;
    }

    OwnedModel model;
    if (int status = load_model(model_path, model); status != ARCQ_OK) return status;

    int exit_code = ARCQ_OK;

    if (validate->parsed()) {
        char* diagnostics = nullptr;
        arcq_status status = arcq_model_validate(model.get(), &diagnostics);
        OwnedString owned(diagnostics);
        if (owned && *owned) std::cerr << owned.get();
        return status;
    }

    if (evaluate->parsed()) {
        std::optional<std::string> context;
        if (!context_path.empty()) {
            context = slurp(context_path, exit_code);
            if (!context) return exit_code;
        }
        double thresholds[3];
        bool use_thresholds = false;
        if (!thresholds_spec.empty()) {
            if (!parse_thresholds(thresholds_spec, thresholds)) {
                std::cerr << "bad --thresholds, expected coupling,cohesion,complexity\n";
                return ARCQ_PARSE_ERROR;
            }
            use_thresholds = true;
        }
        char* report = nullptr;
        arcq_status status = arcq_evaluate(model.get(), config.c_str(),
                                           context ? context->c_str() : nullptr,
                                           use_thresholds ? thresholds : nullptr,
                                           parse_format(format), &report);
        OwnedString owned(report);
        if (owned && *owned) std::cout << owned.get();
        if (status != ARCQ_OK) std::cerr << arcq_last_error();
        return status;
    }

    if (select->parsed()) {
        std::optional<std::string> context = slurp(context_path, exit_code);
        if (!context) return exit_code;
        std::vector<std::string> names = split_csv(configs_list);
        std::vector<const char*> pointers;
        for (const auto& n : names) pointers.push_back(n.c_str());
        char* table = nullptr;
        int winner = -1;
        arcq_status status = arcq_select(model.get(), pointers.data(), pointers.size(),
                                         context->c_str(), parse_format(format), &table, &winner);
        OwnedString owned(table);
        if (owned && *owned) std::cout << owned.get();
        if (status != ARCQ_OK) std::cerr << arcq_last_error() << "\n";
        return status;
    }

    if (simulate->parsed()) {
        if (trace_path.empty() == (poisson_rate <= 0.0)) {
            std::cerr << "simulate needs exactly one of --trace or --poisson\n";
            return ARCQ_PARSE_ERROR;
        }
        std::optional<std::string> trace;
        if (!trace_path.empty()) {
            trace = slurp(trace_path, exit_code);
            if (!trace) return exit_code;
        }
        char* log = nullptr;
        arcq_status status =
            arcq_simulate(model.get(), config.c_str(), family.c_str(),
                          trace ? trace->c_str() : nullptr, poisson_rate, horizon_ms, dt_ms, seed,
                          &log);
        if (status != ARCQ_OK) {
            std::cerr << arcq_last_error() << "\n";
            return status;
        }
        OwnedString owned(log);
        emit(owned ? owned.get() : "", out_path, exit_code);
        return exit_code;
    }

    if (export_families->parsed()) {
        char* xml = nullptr;
        arcq_status status = arcq_export_families_xml(model.get(), &xml);
        OwnedString owned(xml);
        if (status != ARCQ_OK) {
            std::cerr << arcq_last_error() << "\n";
            return status;
        }
        std::cout << owned.get() << "\n";
        return ARCQ_OK;
    }

    return ARCQ_RUNTIME_ERROR;
}
