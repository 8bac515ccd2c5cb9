#include <sstream>

#include "adl.hpp"

namespace arcq::adl {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void write_service(std::ostream& out, const ServiceProfile& s, const char* indent) {
    out << indent << "service " << s.name << " { cpu = " << format_number(s.cpu_mips) << " MIPS;";
    if (s.output_kbps != 0.0) out << " out = " << format_number(s.output_kbps) << " kbps;";
    if (s.reduction_ratio) out << " reduce = " << format_number(*s.reduction_ratio) << ":1;";
    if (s.quality != QualityLevel::NotApplicable) out << " quality = " << to_string(s.quality) << ";";
    if (s.memory_mb != 0.0) out << " memory = " << format_number(s.memory_mb) << " MB;";
    out << " }\n";
}

void write_requirement(std::ostream& out, const ContextRequirement& r) {
    out << to_string(r.resource) << " " << to_string(r.relation) << " " << format_number(r.bound)
        << ";";
}

void write_action(std::ostream& out, const ReconfigurationAction& a) {
    switch (a.kind) {
        case ActionKind::ParamUpdate:
            out << "set " << a.target << "." << a.name << " = " << quote(a.detail) << ";";
            break;
        case ActionKind::AddService: out << "add " << a.target << "." << a.name << ";"; break;
        case ActionKind::RemoveService: out << "remove " << a.target << "." << a.name << ";"; break;
        case ActionKind::SubstituteService:
            out << "substitute " << a.target << "." << a.name << " with " << a.detail << ";";
            break;
        case ActionKind::AttachSubfamily: out << "attachsub " << a.target << ";"; break;
        case ActionKind::DetachSubfamily: out << "detachsub " << a.target << ";"; break;
        case ActionKind::Move: out << "moveto " << a.target << " on " << a.detail << ";"; break;
    }
}

void write_trigger(std::ostream& out, const Trigger& t) {
    out << "event(";
    if (t.resource)
        out << to_string(*t.resource) << " " << to_string(t.relation) << " "
            << format_number(t.bound);
    else
        out << to_string(*t.signal) << " " << t.target;
    out << ")";
}

}  // namespace

std::string serialize_model(const Model& model) {
    std::ostringstream out;
    out << "model " << model.name << " {\n";

    for (const auto& d : model.devices)
        out << "  device " << d.name << " { cpu = " << format_number(d.cpu_mips)
            << " MIPS; memory = " << format_number(d.memory_mb)
            << " MB; battery = " << format_number(d.battery_pct) << " %; }\n";

    for (const auto& l : model.links)
        out << "  link " << l.name << " { connects " << l.endpoint_a << ", " << l.endpoint_b
            << "; bandwidth = " << format_number(l.bandwidth_kbps) << " kbps; }\n";

    for (const auto& c : model.components) {
        out << "  component " << c.name << " {\n";
        for (const auto& p : c.ports) out << "    port " << to_string(p.kind) << " " << p.name << ";\n";
        for (const auto& s : c.services) write_service(out, s, "    ");
        if (!c.requirements.empty()) {
            out << "    requires {";
            for (const auto& r : c.requirements) {
                out << " ";
                write_requirement(out, r);
            }
            out << " }\n";
        }
        out << "  }\n";
    }

    for (const auto& c : model.connectors) {
        out << "  " << (c.contextual ? "contextual " : "") << "connector " << c.name << " {\n";
        for (const auto& r : c.roles) out << "    role " << to_string(r.kind) << " " << r.name << ";\n";
        for (const auto& s : c.services) write_service(out, s, "    ");
        for (const auto& [name, value] : c.parameters)
            out << "    param " << name << " = " << quote(value) << ";\n";
        out << "  }\n";
    }

    for (const auto& c : model.configurations) {
        out << "  configuration " << c.name << " level " << to_string(c.level) << " {\n";
        for (const auto& i : c.instances) {
            out << "    use " << i.type_ref << " as " << i.name;
            if (i.active_service) out << " with " << *i.active_service;
            out << ";\n";
        }
        for (const auto& a : c.attachments)
            out << "    attach " << a.component << "." << a.port << " to " << a.connector << "."
                << a.role << ";\n";
        for (const auto& [inst, dev] : c.deployments)
            out << "    deploy " << inst << " on " << dev << ";\n";
        for (const auto& b : c.buffers) {
            out << "    buffer " << b.name << " on " << b.owner << " capacity "
                << format_number(b.capacity_kb) << " KB";
            if (b.drain_kbps) out << " drain " << format_number(*b.drain_kbps) << " kbps";
            out << " fill " << format_number(b.initial_fill_pct) << " %;\n";
        }
        for (const auto& [inst, w] : c.weights)
            out << "    weight " << inst << " = " << format_number(w) << ";\n";
        out << "  }\n";
    }

    for (const auto& f : model.families) {
        out << "  family " << f.name << " {\n";
        for (const auto& m : f.members) out << "    member " << m << ";\n";
        for (const auto& sub : f.subfamilies) {
            out << "    subfamily " << sub.name << " {";
            for (const auto& m : sub.members) out << " member " << m << ";";
            out << " }\n";
        }
        for (const auto& s : f.states) {
            out << "    state " << s.name << " {";
            for (const auto& r : s.envelope) {
                out << " ";
                write_requirement(out, r);
            }
            out << " }\n";
        }
        for (const auto& t : f.transitions) {
            out << "    transition " << t.from << " -> " << t.to << " on ";
            write_trigger(out, t.trigger);
            out << " do {";
            for (const auto& a : t.actions) {
                out << " ";
                write_action(out, a);
            }
            out << " }\n";
        }
        out << "  }\n";
    }

    if (model.thresholds) {
        out << "  thresholds { coupling <= " << format_number(model.thresholds->coupling_max)
            << "; cohesion >= " << format_number(model.thresholds->cohesion_min)
            << "; complexity <= " << format_number(model.thresholds->complexity_max) << "; }\n";
    }

    out << "}\n";
    return out.str();
}

}  // namespace arcq::adl
