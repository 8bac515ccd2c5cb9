#pragma once

#include <optional>
#include <string>
#include <vector>

#include "context.hpp"
#include "families.hpp"
#include "model.hpp"

namespace arcq::metrics {

/// Raised when a time-behavior term cannot be computed. `code` is one of
/// ZeroResource, NotDeployed, NoActiveService.
struct MetricsError : std::runtime_error {
    std::string code;
    MetricsError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

/// Quantized structural metrics; each digit is floor(metric * 10) in [0,10].
struct Mark {
    int coupling = 0;
    int cohesion = 0;
    int complexity = 0;

    bool operator==(const Mark&) const = default;
};

struct MetricReport {
    double coupling = 0.0;
    double cohesion = 1.0;
    double complexity = 0.0;
    std::optional<double> tbm_ms;
    std::optional<families::MaacRange> maac;
    std::optional<double> quality;
};

enum class Decision { Accept, Reject };

struct Verdict {
    Decision decision = Decision::Accept;
    std::vector<std::string> failed;
    std::vector<std::string> advisories;
};

/// Neighbor-pair density: sum over component instances of the number of
/// distinct other components reachable through one shared connector
/// instance, normalized by n*(n-1). Zero when n <= 1.
double coupling(const Model& model, const Configuration& config);

/// Mean over component instances of attached-data-port ratio. Components
/// without data ports contribute 1; an empty configuration scores 1.
double cohesion(const Model& model, const Configuration& config);

/// 1 - 1/(1 + ln(1 + V + E)) with V = instance count, E = attachment count.
double complexity(const Configuration& config);

Mark structural_mark(const Model& model, const Configuration& config);
Mark quantize(double coupling, double cohesion, double complexity);

/// First cross-device outbound attachment's link for an instance: the link
/// its active service transmits on. Null when every consumer is local.
const NetworkLink* outbound_link(const Model& model, const Configuration& config,
                                 const std::string& instance);

/// Time behavior of one deployed artifact in milliseconds:
/// 1000*cpu_demand/cpu_available + 1000*output_rate/bandwidth_available,
/// the transfer term only for a cross-device output.
double tb_artifact(const Model& model, const Configuration& config, const std::string& instance,
                   const ContextSnapshot& ctx);

/// Weighted sum of tb_artifact over instances with an active service.
double tbm(const Model& model, const Configuration& config, const ContextSnapshot& ctx);

/// tbm / (1 + maac.max); higher scores win selection.
double quality(const Model& model, const Configuration& config, const ContextSnapshot& ctx,
               const Family& family);

/// Coupling and complexity above their thresholds reject; cohesion below its
/// threshold only advises.
Verdict gate(const MetricReport& report, const Thresholds& thresholds);

}  // namespace arcq::metrics
