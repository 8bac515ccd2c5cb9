#include "model.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace arcq {

const char* to_string(PortKind k) {
    switch (k) {
        case PortKind::DataIn: return "data in";
        case PortKind::DataOut: return "data out";
        case PortKind::Context: return "context";
        case PortKind::Control: return "control";
        case PortKind::Qos: return "qos";
    }
    return "?";
}

const char* to_string(RoleKind k) {
    switch (k) {
        case RoleKind::DataSource: return "data source";
        case RoleKind::DataSink: return "data sink";
        case RoleKind::Context: return "context";
    }
    return "?";
}

const char* to_string(QualityLevel q) {
    switch (q) {
        case QualityLevel::High: return "high";
        case QualityLevel::Medium: return "medium";
        case QualityLevel::Low: return "low";
        case QualityLevel::NotApplicable: return "n/a";
    }
    return "?";
}

const char* to_string(ResourceKind r) {
    switch (r) {
        case ResourceKind::Cpu: return "cpu";
        case ResourceKind::Memory: return "memory";
        case ResourceKind::Bandwidth: return "bandwidth";
        case ResourceKind::Battery: return "battery";
        case ResourceKind::BufferFill: return "buffer_fill";
    }
    return "?";
}

const char* to_string(Relation r) { return r == Relation::Ge ? ">=" : "<="; }

const char* to_string(ModelLevel l) { return l == ModelLevel::PIM ? "PIM" : "CPIM"; }

const char* to_string(SignalKind s) {
    switch (s) {
        case SignalKind::Overflow: return "overflow";
        case SignalKind::Underflow: return "underflow";
        case SignalKind::Fault: return "fault";
        case SignalKind::Move: return "move";
    }
    return "?";
}

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::ParamUpdate: return "ParamUpdate";
        case ActionKind::AddService: return "AddService";
        case ActionKind::RemoveService: return "RemoveService";
        case ActionKind::SubstituteService: return "SubstituteService";
        case ActionKind::AttachSubfamily: return "AttachSubfamily";
        case ActionKind::DetachSubfamily: return "DetachSubfamily";
        case ActionKind::Move: return "Move";
    }
    return "?";
}

namespace {

template <class Seq, class Pred>
auto* find_by(Seq& seq, Pred pred) {
    for (auto& item : seq)
        if (pred(item)) return &item;
    using T = decltype(&seq.front());
    return static_cast<T>(nullptr);
}

}  // namespace

const PortDecl* ComponentType::find_port(const std::string& port) const {
    return find_by(ports, [&](const PortDecl& p) { return p.name == port; });
}

const ServiceProfile* ComponentType::find_service(const std::string& svc) const {
    return find_by(services, [&](const ServiceProfile& s) { return s.name == svc; });
}

const RoleDecl* ConnectorType::find_role(const std::string& role) const {
    return find_by(roles, [&](const RoleDecl& r) { return r.name == role; });
}

const ServiceProfile* ConnectorType::find_service(const std::string& svc) const {
    return find_by(services, [&](const ServiceProfile& s) { return s.name == svc; });
}

const ArtifactInstance* Configuration::find_instance(const std::string& inst) const {
    return find_by(instances, [&](const ArtifactInstance& i) { return i.name == inst; });
}

ArtifactInstance* Configuration::find_instance(const std::string& inst) {
    return find_by(instances, [&](ArtifactInstance& i) { return i.name == inst; });
}

const BufferDecl* Configuration::find_buffer(const std::string& buf) const {
    return find_by(buffers, [&](const BufferDecl& b) { return b.name == buf; });
}

double Configuration::weight_of(const std::string& inst) const {
    auto it = weights.find(inst);
    return it == weights.end() ? 1.0 : it->second;
}

const std::string* Configuration::device_of(const std::string& inst) const {
    auto it = deployments.find(inst);
    return it == deployments.end() ? nullptr : &it->second;
}

void Configuration::normalize_weights() {
    for (auto it = weights.begin(); it != weights.end();) {
        if (it->second == 1.0)
            it = weights.erase(it);
        else
            ++it;
    }
}

std::string Trigger::to_text() const {
    std::ostringstream out;
    if (resource) {
        out << to_string(*resource) << to_string(relation) << bound;
    } else if (signal) {
        out << to_string(*signal) << "(" << target << ")";
    }
    return out.str();
}

const Subfamily* Family::find_subfamily(const std::string& sub) const {
    return find_by(subfamilies, [&](const Subfamily& s) { return s.name == sub; });
}

bool Family::has_member(const std::string& config) const {
    return member_index(config) >= 0;
}

int Family::member_index(const std::string& config) const {
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i] == config) return static_cast<int>(i);
    return -1;
}

const Device* Model::find_device(const std::string& dev) const {
    return find_by(devices, [&](const Device& d) { return d.name == dev; });
}

const NetworkLink* Model::find_link(const std::string& link) const {
    return find_by(links, [&](const NetworkLink& l) { return l.name == link; });
}

const NetworkLink* Model::find_link_between(const std::string& d1, const std::string& d2) const {
    return find_by(links, [&](const NetworkLink& l) { return l.joins(d1, d2); });
}

const ComponentType* Model::find_component(const std::string& type) const {
    return find_by(components, [&](const ComponentType& c) { return c.name == type; });
}

const ConnectorType* Model::find_connector(const std::string& type) const {
    return find_by(connectors, [&](const ConnectorType& c) { return c.name == type; });
}

const Configuration* Model::find_configuration(const std::string& config) const {
    return find_by(configurations, [&](const Configuration& c) { return c.name == config; });
}

const Family* Model::find_family(const std::string& family) const {
    return find_by(families, [&](const Family& f) { return f.name == family; });
}

const Family* Model::family_of(const std::string& config) const {
    return find_by(families, [&](const Family& f) { return f.has_member(config); });
}

const ServiceProfile* Model::find_service_of(const std::string& type_ref,
                                             const std::string& svc) const {
    if (const ComponentType* ct = find_component(type_ref)) return ct->find_service(svc);
    if (const ConnectorType* cn = find_connector(type_ref)) return cn->find_service(svc);
    return nullptr;
}

const ServiceProfile* Model::active_profile(const ArtifactInstance& inst) const {
    if (!inst.active_service) return nullptr;
    return find_service_of(inst.type_ref, *inst.active_service);
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string render_diagnostic(const Diagnostic& d) {
    std::ostringstream out;
    out << (d.severity == Severity::Error ? "error" : "warning") << " " << d.rule << " at "
        << d.location << ": " << d.message;
    return out.str();
}

namespace {

using InstanceKey =
    std::tuple<std::string, std::string, std::string, std::map<std::string, std::string>>;

InstanceKey instance_key(const ArtifactInstance& inst) {
    return {inst.name, inst.type_ref, inst.active_service.value_or(""), inst.parameter_overrides};
}

using AttachmentKey = std::tuple<std::string, std::string, std::string, std::string>;

AttachmentKey attachment_key(const Attachment& a) {
    return {a.component, a.port, a.connector, a.role};
}

using BufferKey = std::tuple<std::string, std::string, double, double, double>;

BufferKey buffer_key(const BufferDecl& b) {
    return {b.name, b.owner, b.capacity_kb, b.initial_fill_pct, b.drain_kbps.value_or(-1.0)};
}

struct ConfigShape {
    ModelLevel level;
    std::vector<InstanceKey> instances;
    std::vector<AttachmentKey> attachments;
    std::map<std::string, std::string> deployments;
    std::map<std::string, double> weights;
    std::vector<BufferKey> buffers;

    bool operator==(const ConfigShape&) const = default;
};

ConfigShape shape_of(const Configuration& c) {
    ConfigShape s;
    s.level = c.level;
    for (const auto& i : c.instances) s.instances.push_back(instance_key(i));
    for (const auto& a : c.attachments) s.attachments.push_back(attachment_key(a));
    std::sort(s.instances.begin(), s.instances.end());
    std::sort(s.attachments.begin(), s.attachments.end());
    s.deployments = c.deployments;
    s.weights = c.weights;
    for (auto it = s.weights.begin(); it != s.weights.end();)
        it = it->second == 1.0 ? s.weights.erase(it) : std::next(it);
    for (const auto& b : c.buffers) s.buffers.push_back(buffer_key(b));
    std::sort(s.buffers.begin(), s.buffers.end());
    return s;
}

}  // namespace

bool structurally_equal(const Configuration& a, const Configuration& b) {
    return shape_of(a) == shape_of(b);
}

std::vector<std::string> instance_diff(const Configuration& a, const Configuration& b) {
    // Fingerprint per instance: own fields, deployment, weight, incident
    // attachments and owned buffers.
    auto fingerprints = [](const Configuration& c) {
        std::map<std::string, std::string> fp;
        for (const auto& inst : c.instances) {
            std::ostringstream key;
            key << inst.type_ref << "|" << inst.active_service.value_or("") << "|";
            for (const auto& [k, v] : inst.parameter_overrides) key << k << "=" << v << ";";
            auto dep = c.deployments.find(inst.name);
            key << "|" << (dep == c.deployments.end() ? "" : dep->second);
            key << "|" << c.weight_of(inst.name);
            std::vector<std::string> incident;
            for (const auto& at : c.attachments)
                if (at.component == inst.name || at.connector == inst.name)
                    incident.push_back(at.component + "." + at.port + ">" + at.connector + "." +
                                       at.role);
            std::sort(incident.begin(), incident.end());
            for (const auto& s : incident) key << "|" << s;
            std::vector<std::string> owned;
            for (const auto& buf : c.buffers)
                if (buf.owner == inst.name)
                    owned.push_back(buf.name + ":" + std::to_string(buf.capacity_kb) + ":" +
                                    std::to_string(buf.initial_fill_pct) + ":" +
                                    std::to_string(buf.drain_kbps.value_or(-1.0)));
            std::sort(owned.begin(), owned.end());
            for (const auto& s : owned) key << "|" << s;
            fp[inst.name] = key.str();
        }
        return fp;
    };

    auto fa = fingerprints(a);
    auto fb = fingerprints(b);
    std::vector<std::string> diff;
    for (const auto& [name, key] : fa) {
        auto it = fb.find(name);
        if (it == fb.end() || it->second != key) diff.push_back(name);
    }
    for (const auto& [name, key] : fb)
        if (!fa.count(name)) diff.push_back(name);
    std::sort(diff.begin(), diff.end());
    diff.erase(std::unique(diff.begin(), diff.end()), diff.end());
    return diff;
}

}  // namespace arcq
