#include <map>
#include <set>
#include <sstream>

#include "model.hpp"

namespace arcq {

namespace {

class Checker {
public:
    explicit Checker(const Model& model) : model_(model) {}

    std::vector<Diagnostic> run_model() {
        check_model_namespaces();
        check_types();
        for (const auto& config : model_.configurations) check_config(config);
        for (const auto& family : model_.families) check_family(family);
        return std::move(diags_);
    }

    std::vector<Diagnostic> run_config(const Configuration& config) {
        check_config(config);
        return std::move(diags_);
    }

private:
    const Model& model_;
    std::vector<Diagnostic> diags_;

    void error(const std::string& rule, const std::string& location, const std::string& msg) {
        diags_.push_back({Severity::Error, rule, location, msg});
    }

    void check_unique(const std::string& rule, const std::string& ns,
                      const std::vector<std::string>& names, const std::string& location) {
        std::set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                error(rule, location, "duplicate " + ns + " name '" + n + "'");
    }

    void check_model_namespaces() {
        std::vector<std::string> names;
        for (const auto& d : model_.devices) names.push_back(d.name);
        check_unique("WF1", "device", names, "model " + model_.name);
        names.clear();
        for (const auto& l : model_.links) names.push_back(l.name);
        check_unique("WF1", "link", names, "model " + model_.name);
        names.clear();
        for (const auto& c : model_.components) names.push_back(c.name);
        for (const auto& c : model_.connectors) names.push_back(c.name);
        check_unique("WF1", "type", names, "model " + model_.name);
        names.clear();
        for (const auto& c : model_.configurations) names.push_back(c.name);
        check_unique("WF1", "configuration", names, "model " + model_.name);
        names.clear();
        for (const auto& f : model_.families) names.push_back(f.name);
        check_unique("WF1", "family", names, "model " + model_.name);
        names.clear();
        for (const auto& f : model_.families)
            for (const auto& s : f.subfamilies) names.push_back(s.name);
        check_unique("WF1", "subfamily", names, "model " + model_.name);

        for (const auto& link : model_.links) {
            const std::string loc = "link " + link.name;
            if (link.endpoint_a == link.endpoint_b)
                error("REF1", loc, "link endpoints must be distinct devices");
            for (const auto& ep : {link.endpoint_a, link.endpoint_b})
                if (!model_.find_device(ep)) error("REF1", loc, "unknown device '" + ep + "'");
        }
    }

    void check_types() {
        for (const auto& comp : model_.components) {
            const std::string loc = "component " + comp.name;
            std::vector<std::string> names;
            for (const auto& p : comp.ports) names.push_back(p.name);
            check_unique("WF1", "port", names, loc);
            names.clear();
            for (const auto& s : comp.services) names.push_back(s.name);
            check_unique("WF1", "service", names, loc);

            int control = 0, qos = 0;
            for (const auto& p : comp.ports) {
                control += p.kind == PortKind::Control;
                qos += p.kind == PortKind::Qos;
            }
            if (control > 1) error("TYP1", loc, "more than one control port");
            if (qos > 1) error("TYP1", loc, "more than one qos port");
        }
        for (const auto& conn : model_.connectors) {
            const std::string loc = "connector " + conn.name;
            std::vector<std::string> names;
            for (const auto& r : conn.roles) names.push_back(r.name);
            check_unique("WF1", "role", names, loc);
            names.clear();
            for (const auto& s : conn.services) names.push_back(s.name);
            check_unique("WF1", "service", names, loc);

            const bool has_context_role =
                std::any_of(conn.roles.begin(), conn.roles.end(),
                            [](const RoleDecl& r) { return r.kind == RoleKind::Context; });
            if (conn.contextual && !has_context_role)
                error("WF5", loc, "contextual connector declares no context role");
            if (!conn.contextual && has_context_role)
                error("WF5", loc, "non-contextual connector declares a context role");
            if (!conn.contextual && !conn.services.empty())
                error("WF5", loc, "non-contextual connector declares adaptation services");
        }
    }

    void check_config(const Configuration& config) {
        const std::string loc = "configuration " + config.name;

        std::vector<std::string> names;
        for (const auto& i : config.instances) names.push_back(i.name);
        check_unique("WF1", "instance", names, loc);
        names.clear();
        for (const auto& b : config.buffers) names.push_back(b.name);
        check_unique("WF1", "buffer", names, loc);

        for (const auto& inst : config.instances) {
            const std::string iloc = loc + "/instance " + inst.name;
            const bool known =
                model_.find_component(inst.type_ref) || model_.find_connector(inst.type_ref);
            if (!known) {
                error("REF1", iloc, "unknown type '" + inst.type_ref + "'");
                continue;
            }
            if (inst.active_service && !model_.find_service_of(inst.type_ref, *inst.active_service))
                error("WF8", iloc,
                      "active service '" + *inst.active_service + "' not declared by type '" +
                          inst.type_ref + "'");
        }

        check_attachments(config, loc);
        check_deployments(config, loc);

        for (const auto& buf : config.buffers) {
            const std::string bloc = loc + "/buffer " + buf.name;
            const ArtifactInstance* owner = config.find_instance(buf.owner);
            if (!owner)
                error("REF1", bloc, "unknown owner instance '" + buf.owner + "'");
            else if (!model_.is_connector_instance(*owner) && model_.is_component_instance(*owner))
                error("REF1", bloc, "buffer owner '" + buf.owner + "' is not a connector instance");
        }
        for (const auto& [inst, w] : config.weights) {
            if (!config.find_instance(inst))
                error("REF1", loc + "/weight " + inst, "unknown instance '" + inst + "'");
            if (w <= 0.0)
                error("REF1", loc + "/weight " + inst, "weights must be positive");
        }
    }

    void check_attachments(const Configuration& config, const std::string& loc) {
        std::map<std::string, int> port_uses;  // "inst.port" -> count
        std::map<std::string, int> role_uses;

        bool any_requirements = false;
        for (const auto& inst : config.instances)
            if (const ComponentType* ct = model_.find_component(inst.type_ref))
                any_requirements |= !ct->requirements.empty();

        int index = 0;
        for (const auto& at : config.attachments) {
            std::ostringstream aloc;
            aloc << loc << "/attachment " << index++ << " (" << at.component << "." << at.port
                 << " -> " << at.connector << "." << at.role << ")";

            const ArtifactInstance* comp = config.find_instance(at.component);
            const ArtifactInstance* conn = config.find_instance(at.connector);
            const ComponentType* ctype = nullptr;
            const ConnectorType* ntype = nullptr;
            if (!comp)
                error("REF1", aloc.str(), "unknown component instance '" + at.component + "'");
            else if (!(ctype = model_.find_component(comp->type_ref)))
                error("REF1", aloc.str(), "'" + at.component + "' is not a component instance");
            if (!conn)
                error("REF1", aloc.str(), "unknown connector instance '" + at.connector + "'");
            else if (!(ntype = model_.find_connector(conn->type_ref)))
                error("REF1", aloc.str(), "'" + at.connector + "' is not a connector instance");

            const PortDecl* port = ctype ? ctype->find_port(at.port) : nullptr;
            const RoleDecl* role = ntype ? ntype->find_role(at.role) : nullptr;
            if (ctype && !port) error("REF1", aloc.str(), "unknown port '" + at.port + "'");
            if (ntype && !role) error("REF1", aloc.str(), "unknown role '" + at.role + "'");

            if (port) ++port_uses[at.component + "." + at.port];
            if (role) ++role_uses[at.connector + "." + at.role];

            if (port && role && !kinds_compatible(port->kind, role->kind))
                error("WF3", aloc.str(),
                      std::string("port kind '") + to_string(port->kind) +
                          "' cannot attach to role kind '" + to_string(role->kind) + "'");
        }

        for (const auto& [key, uses] : port_uses)
            if (uses > 1) error("WF2", loc, "port " + key + " attached " + std::to_string(uses) + " times");
        for (const auto& [key, uses] : role_uses)
            if (uses > 1) error("WF2", loc, "role " + key + " attached " + std::to_string(uses) + " times");

        if (any_requirements) {
            for (const auto& inst : config.instances) {
                const ConnectorType* ntype = model_.find_connector(inst.type_ref);
                if (!ntype || !ntype->contextual) continue;
                bool attached_context = false;
                for (const auto& at : config.attachments) {
                    if (at.connector != inst.name) continue;
                    const RoleDecl* role = ntype->find_role(at.role);
                    attached_context |= role && role->kind == RoleKind::Context;
                }
                if (!attached_context)
                    error("WF4", loc + "/instance " + inst.name,
                          "contextual connector has no attached context role while components "
                          "declare context requirements");
            }
        }
    }

    void check_deployments(const Configuration& config, const std::string& loc) {
        for (const auto& [inst, dev] : config.deployments) {
            if (!config.find_instance(inst))
                error("REF1", loc + "/deploy " + inst, "unknown instance '" + inst + "'");
            if (!model_.find_device(dev))
                error("REF1", loc + "/deploy " + inst, "unknown device '" + dev + "'");
        }
        if (config.level == ModelLevel::PIM) {
            if (!config.deployments.empty())
                error("WF6", loc, "PIM configurations carry no deployments");
            return;
        }
        for (const auto& inst : config.instances)
            if (!config.deployments.count(inst.name))
                error("WF6", loc + "/instance " + inst.name, "instance is not deployed");

        for (const auto& at : config.attachments) {
            const std::string* d1 = config.device_of(at.component);
            const std::string* d2 = config.device_of(at.connector);
            if (!d1 || !d2 || *d1 == *d2) continue;
            if (!model_.find_device(*d1) || !model_.find_device(*d2)) continue;
            if (!model_.find_link_between(*d1, *d2))
                error("WF7", loc + " (" + at.component + "." + at.port + " -> " + at.connector +
                                  "." + at.role + ")",
                      "no link joins devices '" + *d1 + "' and '" + *d2 + "'");
        }
    }

    void check_family(const Family& family) {
        const std::string loc = "family " + family.name;
        for (const auto& member : family.members)
            if (!model_.find_configuration(member))
                error("REF1", loc, "unknown member configuration '" + member + "'");
        for (const auto& sub : family.subfamilies)
            for (const auto& member : sub.members)
                if (!family.has_member(member))
                    error("FAM1", loc + "/subfamily " + sub.name,
                          "'" + member + "' is not a member of the family");
        for (const auto& state : family.states)
            if (state.envelope.empty())
                error("FAM1", loc + "/state " + state.name, "empty context envelope");

        int index = 0;
        for (const auto& t : family.transitions) {
            std::ostringstream tloc;
            tloc << loc << "/transition " << index++ << " (" << t.from << " -> " << t.to << ")";
            if (t.actions.empty()) error("FAM1", tloc.str(), "transition has no actions");
            bool endpoints_ok = true;
            for (const auto& end : {t.from, t.to}) {
                if (!family.has_member(end)) {
                    error("FAM1", tloc.str(), "endpoint '" + end + "' is not a family member");
                    endpoints_ok = false;
                }
            }
            if (!endpoints_ok) continue;
            const Configuration* from = model_.find_configuration(t.from);
            const Configuration* to = model_.find_configuration(t.to);
            if (!from || !to) continue;

            try {
                Configuration replayed = *from;
                for (const auto& action : t.actions)
                    replayed = apply_action(model_, replayed, action);
                if (!structurally_equal(replayed, *to))
                    error("FAM2", tloc.str(),
                          "replaying the action list from '" + t.from +
                              "' does not reproduce '" + t.to + "'");
            } catch (const ActionError& e) {
                error("FAM2", tloc.str(),
                      std::string("action replay failed (") + e.code + "): " + e.what());
            }
        }
    }

    static bool kinds_compatible(PortKind port, RoleKind role) {
        switch (port) {
            case PortKind::DataIn: return role == RoleKind::DataSink;
            case PortKind::DataOut: return role == RoleKind::DataSource;
            case PortKind::Context: return role == RoleKind::Context;
            case PortKind::Control:
            case PortKind::Qos: return false;
        }
        return false;
    }
};

}  // namespace

std::vector<Diagnostic> validate_wellformed(const Model& model) {
    return Checker(model).run_model();
}

std::vector<Diagnostic> validate_configuration(const Model& model, const Configuration& config) {
    return Checker(model).run_config(config);
}

}  // namespace arcq
