#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcq {

enum class PortKind { DataIn, DataOut, Context, Control, Qos };
enum class RoleKind { DataSource, DataSink, Context };
enum class QualityLevel { High, Medium, Low, NotApplicable };
enum class ResourceKind { Cpu, Memory, Bandwidth, Battery, BufferFill };
enum class Relation { Ge, Le };
enum class ModelLevel { PIM, CPIM };

const char* to_string(PortKind k);
const char* to_string(RoleKind k);
const char* to_string(QualityLevel q);
const char* to_string(ResourceKind r);
const char* to_string(Relation r);
const char* to_string(ModelLevel l);

struct PortDecl {
    std::string name;
    PortKind kind = PortKind::DataIn;

    bool is_data() const { return kind == PortKind::DataIn || kind == PortKind::DataOut; }
};

struct RoleDecl {
    std::string name;
    RoleKind kind = RoleKind::DataSource;

    bool is_data() const { return kind != RoleKind::Context; }
};

/// Resource profile of one service offered by a component or connector.
/// cpu demand in MIPS, output rate in kbps, memory demand in MB.
struct ServiceProfile {
    std::string name;
    double cpu_mips = 0.0;
    double output_kbps = 0.0;
    std::optional<double> reduction_ratio;  // >= 1 when present
    QualityLevel quality = QualityLevel::NotApplicable;
    double memory_mb = 0.0;
};

/// A resource bound an artifact needs from its environment,
/// e.g. { bandwidth, Ge, 16 } = "at least 16 kbps available".
struct ContextRequirement {
    ResourceKind resource = ResourceKind::Cpu;
    Relation relation = Relation::Ge;
    double bound = 0.0;
};

struct ComponentType {
    std::string name;
    std::vector<PortDecl> ports;
    std::vector<ServiceProfile> services;
    std::vector<ContextRequirement> requirements;

    const PortDecl* find_port(const std::string& port) const;
    const ServiceProfile* find_service(const std::string& svc) const;
};

struct ConnectorType {
    std::string name;
    bool contextual = false;
    std::vector<RoleDecl> roles;
    std::vector<ServiceProfile> services;  // adaptation services
    std::map<std::string, std::string> parameters;

    const RoleDecl* find_role(const std::string& role) const;
    const ServiceProfile* find_service(const std::string& svc) const;
};

/// Execution host: capacities in MIPS / MB, battery in percent.
struct Device {
    std::string name;
    double cpu_mips = 0.0;
    double memory_mb = 0.0;
    double battery_pct = 100.0;
};

struct NetworkLink {
    std::string name;
    std::string endpoint_a;
    std::string endpoint_b;
    double bandwidth_kbps = 0.0;

    bool joins(const std::string& d1, const std::string& d2) const {
        return (endpoint_a == d1 && endpoint_b == d2) || (endpoint_a == d2 && endpoint_b == d1);
    }
};

struct ArtifactInstance {
    std::string name;
    std::string type_ref;  // component or connector type name
    std::optional<std::string> active_service;
    std::map<std::string, std::string> parameter_overrides;
};

/// Attachment binds a component instance's port to a connector instance's role.
struct Attachment {
    std::string component;
    std::string port;
    std::string connector;
    std::string role;
};

struct BufferDecl {
    std::string name;
    std::string owner;  // connector instance
    double capacity_kb = 0.0;
    double initial_fill_pct = 0.0;
    std::optional<double> drain_kbps;  // default: producer nominal rate
};

struct Configuration {
    std::string name;
    ModelLevel level = ModelLevel::PIM;
    std::vector<ArtifactInstance> instances;
    std::vector<Attachment> attachments;
    std::map<std::string, std::string> deployments;  // instance -> device
    std::map<std::string, double> weights;           // instance -> w, default 1.0
    std::vector<BufferDecl> buffers;

    const ArtifactInstance* find_instance(const std::string& inst) const;
    ArtifactInstance* find_instance(const std::string& inst);
    const BufferDecl* find_buffer(const std::string& buf) const;
    double weight_of(const std::string& inst) const;
    const std::string* device_of(const std::string& inst) const;

    /// Drops weight entries equal to the default so equality and
    /// serialization have one canonical form.
    void normalize_weights();
};

enum class SignalKind { Overflow, Underflow, Fault, Move };

const char* to_string(SignalKind s);

/// Either a resource comparison (e.g. bandwidth <= 32) or a signal on a
/// named target (e.g. underflow VideoBuf). Exactly one arm is populated.
struct Trigger {
    std::optional<ResourceKind> resource;
    Relation relation = Relation::Le;
    double bound = 0.0;

    std::optional<SignalKind> signal;
    std::string target;

    std::string to_text() const;
};

enum class ActionKind {
    ParamUpdate,
    AddService,
    RemoveService,
    SubstituteService,
    AttachSubfamily,
    DetachSubfamily,
    Move,
};

const char* to_string(ActionKind k);

/// One reconfiguration step. Field use per kind:
///   ParamUpdate        target=instance  name=parameter       detail=new value
///   AddService         target=instance  name=service
///   RemoveService      target=instance  name=service
///   SubstituteService  target=instance  name=old service     detail=new service
///   AttachSubfamily    target=subfamily
///   DetachSubfamily    target=subfamily
///   Move               target=instance  detail=device
struct ReconfigurationAction {
    ActionKind kind = ActionKind::ParamUpdate;
    std::string target;
    std::string name;
    std::string detail;
};

struct Transition {
    std::string from;
    std::string to;
    Trigger trigger;
    std::vector<ReconfigurationAction> actions;
};

/// Resource envelope a family must be able to adapt to.
struct ContextState {
    std::string name;
    std::vector<ContextRequirement> envelope;
};

struct Subfamily {
    std::string name;
    std::vector<std::string> members;  // subset of family members
};

struct Family {
    std::string name;
    std::vector<std::string> members;  // configuration names, declaration order
    std::vector<Subfamily> subfamilies;
    std::vector<ContextState> states;
    std::vector<Transition> transitions;

    const Subfamily* find_subfamily(const std::string& sub) const;
    bool has_member(const std::string& config) const;
    int member_index(const std::string& config) const;  // -1 when absent
};

struct Thresholds {
    double coupling_max = 1.0;
    double cohesion_min = 0.0;
    double complexity_max = 1.0;
};

struct Model {
    std::string name;
    std::vector<Device> devices;
    std::vector<NetworkLink> links;
    std::vector<ComponentType> components;
    std::vector<ConnectorType> connectors;
    std::vector<Configuration> configurations;
    std::vector<Family> families;
    std::optional<Thresholds> thresholds;

    const Device* find_device(const std::string& dev) const;
    const NetworkLink* find_link(const std::string& link) const;
    const NetworkLink* find_link_between(const std::string& d1, const std::string& d2) const;
    const ComponentType* find_component(const std::string& type) const;
    const ConnectorType* find_connector(const std::string& type) const;
    const Configuration* find_configuration(const std::string& config) const;
    const Family* find_family(const std::string& family) const;
    /// First family listing `config` as a member, or nullptr.
    const Family* family_of(const std::string& config) const;

    bool is_component_instance(const ArtifactInstance& inst) const {
        return find_component(inst.type_ref) != nullptr;
    }
    bool is_connector_instance(const ArtifactInstance& inst) const {
        return find_connector(inst.type_ref) != nullptr;
    }
    /// Active service profile of an instance, component or connector side.
    const ServiceProfile* active_profile(const ArtifactInstance& inst) const;
    const ServiceProfile* find_service_of(const std::string& type_ref, const std::string& svc) const;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string rule;      // catalog id, e.g. "WF3"
    std::string location;  // model path, e.g. "configuration CPIM5/attachment 2"
    std::string message;
};

bool has_errors(const std::vector<Diagnostic>& diags);
std::string render_diagnostic(const Diagnostic& d);

/// Checks the whole model against the constraint catalog:
///   REF1  cross-references resolve
///   WF1   names unique within their namespace
///   WF2   each port/role attached at most once
///   WF3   data-in<->data-sink, data-out<->data-source, context<->context only
///   WF4   contextual connectors have an attached context role whenever a
///         component in the configuration declares context requirements
///   WF5   non-contextual connectors carry no context roles or services
///   WF6   CPIM instances deployed on exactly one known device; PIM undeployed
///   WF7   cross-device attachments joined by a declared link
///   WF8   active services name a declared service profile
///   TYP1  at most one control and one qos port per component type
///   FAM1  subfamily members and transition endpoints are family members;
///         state envelopes non-empty
///   FAM2  transition actions replayed from `from` reproduce `to`
/// Violations are data, not failures: the list is empty iff well-formed.
std::vector<Diagnostic> validate_wellformed(const Model& model);

/// Configuration-scoped subset of the catalog (REF1, WF2-WF4, WF6-WF8) for
/// configurations that are not part of the model, e.g. mid-reconfiguration.
std::vector<Diagnostic> validate_configuration(const Model& model, const Configuration& config);

/// Error raised by apply_action. `code` is one of TargetMissing, Collision,
/// IllegalMove.
struct ActionError : std::runtime_error {
    std::string code;
    ActionError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

/// Pure: returns a new configuration with the action applied; `config` is
/// untouched. The model resolves types, devices, links and subfamilies.
Configuration apply_action(const Model& model, const Configuration& config,
                           const ReconfigurationAction& action);

/// Subfamily lookup across every family of the model.
const Subfamily* find_subfamily(const Model& model, const std::string& name,
                                const Family** family_out = nullptr);

/// Distinct instance names contributed by a subfamily's member configurations.
std::vector<std::string> subfamily_artifacts(const Model& model, const Subfamily& sub);

/// Order-insensitive equality on everything except the configuration name.
bool structurally_equal(const Configuration& a, const Configuration& b);

/// Instance names whose definition (fields, deployment, attachments, owned
/// buffers, weight) differs between the two configurations, plus names
/// present in only one of them.
std::vector<std::string> instance_diff(const Configuration& a, const Configuration& b);

}  // namespace arcq
