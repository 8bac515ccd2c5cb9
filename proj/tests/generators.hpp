#pragma once

#include <string>
#include <vector>

#include "context.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace testutil {

using arcq::runtime::SplitMix64;

inline int pick(SplitMix64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng.next_uniform() * (hi - lo + 1));
}

inline double uniform(SplitMix64& rng, double lo, double hi) {
    return lo + rng.next_uniform() * (hi - lo);
}

/// Random deployed CPIM model with one configuration named "Gen". Every
/// attachment respects the kind matrix and port/role single use, every
/// instance is deployed, and services stay strictly positive so time
/// behavior is always defined.
inline arcq::Model gen_deployed_model(SplitMix64& rng, int max_artifacts = 20) {
    using namespace arcq;
    Model model;
    model.name = "Gen";

    const int device_count = pick(rng, 2, 4);
    for (int d = 0; d < device_count; ++d)
        model.devices.push_back({"dev" + std::to_string(d), uniform(rng, 800, 3200),
                                 uniform(rng, 128, 512), uniform(rng, 50, 100)});
    int link_index = 0;
    for (int a = 0; a < device_count; ++a)
        for (int b = a + 1; b < device_count; ++b)
            model.links.push_back({"lnk" + std::to_string(link_index++), model.devices[a].name,
                                   model.devices[b].name, uniform(rng, 64, 1024)});

    const int comp_types = pick(rng, 1, 3);
    for (int t = 0; t < comp_types; ++t) {
        ComponentType type;
        type.name = "CompT" + std::to_string(t);
        const int ins = pick(rng, 0, 2), outs = pick(rng, 1, 2);
        for (int p = 0; p < ins; ++p)
            type.ports.push_back({"in" + std::to_string(p), PortKind::DataIn});
        for (int p = 0; p < outs; ++p)
            type.ports.push_back({"out" + std::to_string(p), PortKind::DataOut});
        if (pick(rng, 0, 1)) type.ports.push_back({"ctx", PortKind::Context});
        const int services = pick(rng, 1, 2);
        for (int s = 0; s < services; ++s) {
            ServiceProfile svc;
            svc.name = "svc" + std::to_string(s);
            svc.cpu_mips = uniform(rng, 20, 300);
            svc.output_kbps = pick(rng, 0, 2) ? uniform(rng, 4, 64) : 0.0;
            svc.memory_mb = uniform(rng, 1, 16);
            type.services.push_back(std::move(svc));
        }
        model.components.push_back(std::move(type));
    }

    const int conn_types = pick(rng, 1, 2);
    for (int t = 0; t < conn_types; ++t) {
        ConnectorType type;
        type.name = "ConnT" + std::to_string(t);
        const int sources = pick(rng, 1, 2), sinks = pick(rng, 1, 2);
        for (int r = 0; r < sources; ++r)
            type.roles.push_back({"src" + std::to_string(r), RoleKind::DataSource});
        for (int r = 0; r < sinks; ++r)
            type.roles.push_back({"snk" + std::to_string(r), RoleKind::DataSink});
        model.connectors.push_back(std::move(type));
    }

    Configuration config;
    config.name = "Gen";
    config.level = ModelLevel::CPIM;
    const int comps = pick(rng, 1, std::max(1, max_artifacts * 2 / 3));
    const int conns = pick(rng, 0, std::max(0, max_artifacts - comps));
    for (int i = 0; i < comps; ++i) {
        ArtifactInstance inst;
        inst.name = "c" + std::to_string(i);
        const ComponentType& type = model.components[pick(rng, 0, comp_types - 1)];
        inst.type_ref = type.name;
        inst.active_service = type.services[pick(rng, 0, (int)type.services.size() - 1)].name;
        config.instances.push_back(std::move(inst));
    }
    for (int i = 0; i < conns; ++i) {
        ArtifactInstance inst;
        inst.name = "k" + std::to_string(i);
        inst.type_ref = model.connectors[pick(rng, 0, conn_types - 1)].name;
        config.instances.push_back(std::move(inst));
    }
    for (const auto& inst : config.instances) {
        config.deployments[inst.name] = model.devices[pick(rng, 0, device_count - 1)].name;
        if (pick(rng, 0, 3) == 0) config.weights[inst.name] = uniform(rng, 0.5, 3.0);
    }

    // free data-out ports to free source roles, data-in ports to sink roles
    struct Slot {
        std::string instance, point;
    };
    std::vector<Slot> out_ports, in_ports, src_roles, snk_roles;
    for (const auto& inst : config.instances) {
        if (const ComponentType* type = model.find_component(inst.type_ref)) {
            for (const auto& p : type->ports) {
                if (p.kind == PortKind::DataOut) out_ports.push_back({inst.name, p.name});
                if (p.kind == PortKind::DataIn) in_ports.push_back({inst.name, p.name});
            }
        } else if (const ConnectorType* type = model.find_connector(inst.type_ref)) {
            for (const auto& r : type->roles) {
                if (r.kind == RoleKind::DataSource) src_roles.push_back({inst.name, r.name});
                if (r.kind == RoleKind::DataSink) snk_roles.push_back({inst.name, r.name});
            }
        }
    }
    auto wire = [&](std::vector<Slot>& ports, std::vector<Slot>& roles) {
        while (!ports.empty() && !roles.empty()) {
            if (pick(rng, 0, 4) == 0) break;  // leave some dangling
            const int p = pick(rng, 0, (int)ports.size() - 1);
            const int r = pick(rng, 0, (int)roles.size() - 1);
            config.attachments.push_back(
                {ports[p].instance, ports[p].point, roles[r].instance, roles[r].point});
            ports.erase(ports.begin() + p);
            roles.erase(roles.begin() + r);
        }
    };
    wire(out_ports, src_roles);
    wire(in_ports, snk_roles);

    config.normalize_weights();
    model.configurations.push_back(std::move(config));
    return model;
}

/// Random syntactically rich model exercising the whole grammar; meant for
/// parser round-trips, not for validation.
inline arcq::Model gen_syntax_model(SplitMix64& rng) {
    using namespace arcq;
    Model model;
    model.name = "Doc" + std::to_string(pick(rng, 0, 999));

    const int devices = pick(rng, 1, 3);
    for (int d = 0; d < devices; ++d)
        model.devices.push_back({"dev" + std::to_string(d), uniform(rng, 100, 4000),
                                 uniform(rng, 16, 512), uniform(rng, 0, 100)});
    if (devices >= 2)
        for (int l = 0, n = pick(rng, 0, 3); l < n; ++l)
            model.links.push_back({"lnk" + std::to_string(l),
                                   model.devices[pick(rng, 0, devices - 1)].name,
                                   model.devices[pick(rng, 0, devices - 1)].name,
                                   uniform(rng, 8, 2048)});

    for (int t = 0, n = pick(rng, 0, 3); t < n; ++t) {
        ComponentType type;
        type.name = "CT" + std::to_string(t);
        const PortKind kinds[] = {PortKind::DataIn, PortKind::DataOut, PortKind::Context,
                                  PortKind::Control, PortKind::Qos};
        for (int p = 0, np = pick(rng, 0, 4); p < np; ++p)
            type.ports.push_back({"p" + std::to_string(p), kinds[pick(rng, 0, 4)]});
        for (int s = 0, ns = pick(rng, 0, 2); s < ns; ++s) {
            ServiceProfile svc;
            svc.name = "sv" + std::to_string(s);
            svc.cpu_mips = uniform(rng, 0, 500);
            if (pick(rng, 0, 1)) svc.output_kbps = uniform(rng, 1, 128);
            if (pick(rng, 0, 1)) svc.reduction_ratio = uniform(rng, 1, 30);
            const QualityLevel q[] = {QualityLevel::High, QualityLevel::Medium, QualityLevel::Low,
                                      QualityLevel::NotApplicable};
            svc.quality = q[pick(rng, 0, 3)];
            if (pick(rng, 0, 1)) svc.memory_mb = uniform(rng, 1, 64);
            type.services.push_back(std::move(svc));
        }
        const ResourceKind res[] = {ResourceKind::Cpu, ResourceKind::Memory,
                                    ResourceKind::Bandwidth, ResourceKind::Battery};
        for (int r = 0, nr = pick(rng, 0, 2); r < nr; ++r)
            type.requirements.push_back({res[pick(rng, 0, 3)],
                                         pick(rng, 0, 1) ? Relation::Ge : Relation::Le,
                                         uniform(rng, 0, 256)});
        model.components.push_back(std::move(type));
    }

    for (int t = 0, n = pick(rng, 0, 2); t < n; ++t) {
        ConnectorType type;
        type.name = "NT" + std::to_string(t);
        type.contextual = pick(rng, 0, 1) == 1;
        const RoleKind kinds[] = {RoleKind::DataSource, RoleKind::DataSink, RoleKind::Context};
        for (int r = 0, nr = pick(rng, 0, 3); r < nr; ++r)
            type.roles.push_back({"r" + std::to_string(r), kinds[pick(rng, 0, 2)]});
        if (type.contextual && pick(rng, 0, 1))
            type.services.push_back({"ad0", uniform(rng, 1, 100), 0.0, std::nullopt,
                                     QualityLevel::NotApplicable, uniform(rng, 1, 8)});
        if (pick(rng, 0, 1)) type.parameters["mode"] = pick(rng, 0, 1) ? "fast \"x\"" : "slow\\path";
        model.connectors.push_back(std::move(type));
    }

    for (int c = 0, n = pick(rng, 0, 2); c < n; ++c) {
        Configuration config;
        config.name = "Cfg" + std::to_string(c);
        config.level = pick(rng, 0, 1) ? ModelLevel::CPIM : ModelLevel::PIM;
        for (int i = 0, ni = pick(rng, 0, 4); i < ni; ++i) {
            ArtifactInstance inst;
            inst.name = "i" + std::to_string(i);
            inst.type_ref = "CT0";
            if (pick(rng, 0, 1)) inst.active_service = "sv0";
            config.instances.push_back(std::move(inst));
        }
        for (int a = 0, na = pick(rng, 0, 2); a < na; ++a)
            config.attachments.push_back({"i0", "p0", "k0", "r0"});
        if (config.level == ModelLevel::CPIM)
            for (const auto& inst : config.instances)
                config.deployments[inst.name] = "dev0";
        for (int b = 0, nb = pick(rng, 0, 2); b < nb; ++b) {
            BufferDecl buf;
            buf.name = "buf" + std::to_string(b);
            buf.owner = "i0";
            buf.capacity_kb = uniform(rng, 1, 512);
            buf.initial_fill_pct = uniform(rng, 0, 100);
            if (pick(rng, 0, 1)) buf.drain_kbps = uniform(rng, 1, 64);
            config.buffers.push_back(std::move(buf));
        }
        if (pick(rng, 0, 1)) config.weights["i0"] = uniform(rng, 0.1, 5.0);
        config.normalize_weights();
        model.configurations.push_back(std::move(config));
    }

    for (int f = 0, n = pick(rng, 0, 2); f < n; ++f) {
        Family family;
        family.name = "Fam" + std::to_string(f);
        for (int m = 0, nm = pick(rng, 1, 3); m < nm; ++m)
            family.members.push_back("Cfg" + std::to_string(m));
        if (pick(rng, 0, 1)) family.subfamilies.push_back({"Sub" + std::to_string(f), {family.members[0]}});
        if (pick(rng, 0, 1))
            family.states.push_back(
                {"St0", {{ResourceKind::Bandwidth, Relation::Le, uniform(rng, 1, 64)}}});
        for (int t = 0, nt = pick(rng, 0, 2); t < nt; ++t) {
            Transition tr;
            tr.from = family.members[0];
            tr.to = family.members.back();
            if (pick(rng, 0, 1)) {
                tr.trigger.resource = ResourceKind::Bandwidth;
                tr.trigger.relation = Relation::Le;
                tr.trigger.bound = uniform(rng, 1, 128);
            } else {
                tr.trigger.signal = SignalKind::Underflow;
                tr.trigger.target = "buf0";
            }
            const ActionKind kinds[] = {ActionKind::ParamUpdate,    ActionKind::AddService,
                                        ActionKind::RemoveService,  ActionKind::SubstituteService,
                                        ActionKind::AttachSubfamily, ActionKind::DetachSubfamily,
                                        ActionKind::Move};
            for (int a = 0, na = pick(rng, 1, 3); a < na; ++a) {
                ReconfigurationAction action;
                action.kind = kinds[pick(rng, 0, 6)];
                switch (action.kind) {
                    case ActionKind::ParamUpdate:
                        action = {action.kind, "i0", "mode", "slow \"quoted\""};
                        break;
                    case ActionKind::AddService:
                    case ActionKind::RemoveService:
                        action = {action.kind, "i0", "sv0", ""};
                        break;
                    case ActionKind::SubstituteService:
                        action = {action.kind, "i0", "sv0", "sv1"};
                        break;
                    case ActionKind::AttachSubfamily:
                    case ActionKind::DetachSubfamily:
                        action = {action.kind, "Sub0", "", ""};
                        break;
                    case ActionKind::Move:
                        action = {action.kind, "i0", "", "dev0"};
                        break;
                }
                tr.actions.push_back(std::move(action));
            }
            family.transitions.push_back(std::move(tr));
        }
        model.families.push_back(std::move(family));
    }

    if (pick(rng, 0, 1))
        model.thresholds =
            arcq::Thresholds{uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1)};
    return model;
}

}  // namespace testutil
