#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace arcq::metrics {

namespace {

bool is_data_out_attachment(const Model& model, const Configuration& config, const Attachment& at) {
    const ArtifactInstance* comp = config.find_instance(at.component);
    const ArtifactInstance* conn = config.find_instance(at.connector);
    if (!comp || !conn) return false;
    const ComponentType* ctype = model.find_component(comp->type_ref);
    const ConnectorType* ntype = model.find_connector(conn->type_ref);
    if (!ctype || !ntype) return false;
    const PortDecl* port = ctype->find_port(at.port);
    const RoleDecl* role = ntype->find_role(at.role);
    return port && role && port->kind == PortKind::DataOut && role->kind == RoleKind::DataSource;
}

bool is_data_in_attachment(const Model& model, const Configuration& config, const Attachment& at) {
    const ArtifactInstance* comp = config.find_instance(at.component);
    const ArtifactInstance* conn = config.find_instance(at.connector);
    if (!comp || !conn) return false;
    const ComponentType* ctype = model.find_component(comp->type_ref);
    const ConnectorType* ntype = model.find_connector(conn->type_ref);
    if (!ctype || !ntype) return false;
    const PortDecl* port = ctype->find_port(at.port);
    const RoleDecl* role = ntype->find_role(at.role);
    return port && role && port->kind == PortKind::DataIn && role->kind == RoleKind::DataSink;
}

}  // namespace

double coupling(const Model& model, const Configuration& config) {
    std::vector<std::string> components;
    for (const auto& inst : config.instances)
        if (model.is_component_instance(inst)) components.push_back(inst.name);
    const std::size_t n = components.size();
    if (n <= 1) return 0.0;

    // components sharing one connector instance are neighbors
    std::map<std::string, std::set<std::string>> attached_to_connector;
    for (const auto& at : config.attachments) {
        const ArtifactInstance* comp = config.find_instance(at.component);
        if (comp && model.is_component_instance(*comp))
            attached_to_connector[at.connector].insert(at.component);
    }
    std::map<std::string, std::set<std::string>> neighbors;
    for (const auto& [conn, comps] : attached_to_connector)
        for (const auto& a : comps)
            for (const auto& b : comps)
                if (a != b) neighbors[a].insert(b);

    std::size_t total = 0;
    for (const auto& name : components) total += neighbors[name].size();
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double cohesion(const Model& model, const Configuration& config) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& inst : config.instances) {
        const ComponentType* type = model.find_component(inst.type_ref);
        if (!type) continue;
        ++count;
        std::size_t declared = 0;
        for (const auto& p : type->ports) declared += p.is_data();
        if (declared == 0) {
            sum += 1.0;
            continue;
        }
        std::set<std::string> attached;
        for (const auto& at : config.attachments) {
            if (at.component != inst.name) continue;
            const PortDecl* port = type->find_port(at.port);
            if (port && port->is_data()) attached.insert(port->name);
        }
        sum += static_cast<double>(attached.size()) / static_cast<double>(declared);
    }
    return count == 0 ? 1.0 : sum / static_cast<double>(count);
}

double complexity(const Configuration& config) {
    const double size =
        static_cast<double>(config.instances.size() + config.attachments.size());
    return 1.0 - 1.0 / (1.0 + std::log(1.0 + size));
}

Mark quantize(double coupling_v, double cohesion_v, double complexity_v) {
    auto bucket = [](double v) {
        int b = static_cast<int>(std::floor(v * 10.0));
        return std::clamp(b, 0, 10);
    };
    return {bucket(coupling_v), bucket(cohesion_v), bucket(complexity_v)};
}

Mark structural_mark(const Model& model, const Configuration& config) {
    return quantize(coupling(model, config), cohesion(model, config), complexity(config));
}

const NetworkLink* outbound_link(const Model& model, const Configuration& config,
                                 const std::string& instance) {
    const ArtifactInstance* inst = config.find_instance(instance);
    if (!inst) return nullptr;
    const std::string* own_device = config.device_of(instance);
    if (!own_device) return nullptr;

    const bool component = model.is_component_instance(*inst);
    for (const auto& at : config.attachments) {
        std::string peer;
        if (component && at.component == instance && is_data_out_attachment(model, config, at))
            peer = at.connector;
        else if (!component && at.connector == instance &&
                 is_data_in_attachment(model, config, at))
            peer = at.component;
        else
            continue;
        const std::string* peer_device = config.device_of(peer);
        if (peer_device && *peer_device != *own_device)
            return model.find_link_between(*own_device, *peer_device);
    }
    return nullptr;
}

double tb_artifact(const Model& model, const Configuration& config, const std::string& instance,
                   const ContextSnapshot& ctx) {
    const ArtifactInstance* inst = config.find_instance(instance);
    if (!inst) throw MetricsError("TargetMissing", "no instance named '" + instance + "'");
    const std::string* device = config.device_of(instance);
    if (!device) throw MetricsError("NotDeployed", "instance '" + instance + "' is not deployed");
    const ServiceProfile* profile = model.active_profile(*inst);
    if (!profile)
        throw MetricsError("NoActiveService",
                           "instance '" + instance + "' resolves no active service");

    const double cpu = ctx.cpu_available(*device);
    if (cpu <= 0.0)
        throw MetricsError("ZeroResource", "device '" + *device + "' has no cpu available");
    double tb = 1000.0 * profile->cpu_mips / cpu;

    if (profile->output_kbps > 0.0) {
        if (const NetworkLink* link = outbound_link(model, config, instance)) {
            const double bw = ctx.bandwidth_available(link->name);
            if (bw <= 0.0)
                throw MetricsError("ZeroResource",
                                   "link '" + link->name + "' has no bandwidth available");
            tb += 1000.0 * profile->output_kbps / bw;
        }
    }
    return tb;
}

double tbm(const Model& model, const Configuration& config, const ContextSnapshot& ctx) {
    double total = 0.0;
    for (const auto& inst : config.instances) {
        if (!model.active_profile(inst)) continue;  // idle artifacts take no time
        total += config.weight_of(inst.name) * tb_artifact(model, config, inst.name, ctx);
    }
    return total;
}

double quality(const Model& model, const Configuration& config, const ContextSnapshot& ctx,
               const Family& family) {
    const families::MaacRange range = families::maac(model, family, config.name);
    return tbm(model, config, ctx) / (1.0 + static_cast<double>(range.max));
}

Verdict gate(const MetricReport& report, const Thresholds& thresholds) {
    Verdict verdict;
    if (report.coupling > thresholds.coupling_max) verdict.failed.push_back("coupling");
    if (report.complexity > thresholds.complexity_max) verdict.failed.push_back("complexity");
    if (report.cohesion < thresholds.cohesion_min) verdict.advisories.push_back("cohesion");
    verdict.decision = verdict.failed.empty() ? Decision::Accept : Decision::Reject;
    return verdict;
}

}  // namespace arcq::metrics
