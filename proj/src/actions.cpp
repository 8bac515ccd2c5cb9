#include <algorithm>
#include <set>

#include "model.hpp"

namespace arcq {

const Subfamily* find_subfamily(const Model& model, const std::string& name,
                                const Family** family_out) {
    for (const auto& family : model.families) {
        if (const Subfamily* sub = family.find_subfamily(name)) {
            if (family_out) *family_out = &family;
            return sub;
        }
    }
    return nullptr;
}

std::vector<std::string> subfamily_artifacts(const Model& model, const Subfamily& sub) {
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& member : sub.members) {
        const Configuration* config = model.find_configuration(member);
        if (!config) continue;
        for (const auto& inst : config->instances)
            if (seen.insert(inst.name).second) names.push_back(inst.name);
    }
    return names;
}

namespace {

[[noreturn]] void missing(const std::string& what) { throw ActionError("TargetMissing", what); }
[[noreturn]] void collision(const std::string& what) { throw ActionError("Collision", what); }

ArtifactInstance& require_instance(Configuration& config, const std::string& name) {
    ArtifactInstance* inst = config.find_instance(name);
    if (!inst) missing("no instance named '" + name + "'");
    return *inst;
}

void require_service(const Model& model, const ArtifactInstance& inst, const std::string& svc) {
    if (!model.find_service_of(inst.type_ref, svc))
        missing("type '" + inst.type_ref + "' declares no service '" + svc + "'");
}

void attach_subfamily(const Model& model, Configuration& config,
                      const ReconfigurationAction& action) {
    const Subfamily* sub = find_subfamily(model, action.target, nullptr);
    if (!sub) missing("no subfamily named '" + action.target + "'");

    for (const auto& member : sub->members) {
        const Configuration* part = model.find_configuration(member);
        if (!part) missing("subfamily member '" + member + "' is not a configuration");
        for (const auto& inst : part->instances)
            if (config.find_instance(inst.name))
                collision("instance '" + inst.name + "' already present");
        for (const auto& buf : part->buffers)
            if (config.find_buffer(buf.name)) collision("buffer '" + buf.name + "' already present");
    }
    for (const auto& member : sub->members) {
        const Configuration& part = *model.find_configuration(member);
        config.instances.insert(config.instances.end(), part.instances.begin(),
                                part.instances.end());
        config.attachments.insert(config.attachments.end(), part.attachments.begin(),
                                  part.attachments.end());
        for (const auto& [inst, dev] : part.deployments) config.deployments[inst] = dev;
        for (const auto& [inst, w] : part.weights) config.weights[inst] = w;
        config.buffers.insert(config.buffers.end(), part.buffers.begin(), part.buffers.end());
    }
}

void detach_subfamily(const Model& model, Configuration& config,
                      const ReconfigurationAction& action) {
    const Subfamily* sub = find_subfamily(model, action.target, nullptr);
    if (!sub) missing("no subfamily named '" + action.target + "'");

    const std::vector<std::string> artifact_list = subfamily_artifacts(model, *sub);
    std::set<std::string> artifacts(artifact_list.begin(), artifact_list.end());
    for (const auto& name : artifacts)
        if (!config.find_instance(name)) missing("instance '" + name + "' not present");

    std::erase_if(config.instances,
                  [&](const ArtifactInstance& i) { return artifacts.count(i.name) > 0; });
    std::erase_if(config.attachments, [&](const Attachment& a) {
        return artifacts.count(a.component) > 0 || artifacts.count(a.connector) > 0;
    });
    std::erase_if(config.buffers,
                  [&](const BufferDecl& b) { return artifacts.count(b.owner) > 0; });
    for (const auto& name : artifacts) {
        config.deployments.erase(name);
        config.weights.erase(name);
    }
}

void move_instance(const Model& model, Configuration& config,
                   const ReconfigurationAction& action) {
    ArtifactInstance& inst = require_instance(config, action.target);
    if (config.level != ModelLevel::CPIM)
        throw ActionError("IllegalMove", "only CPIM configurations carry deployments");
    if (!model.find_device(action.detail)) missing("no device named '" + action.detail + "'");

    // Every attachment partner on another device must stay reachable.
    for (const auto& at : config.attachments) {
        std::string peer;
        if (at.component == inst.name)
            peer = at.connector;
        else if (at.connector == inst.name)
            peer = at.component;
        else
            continue;
        const std::string* peer_dev = config.device_of(peer);
        if (!peer_dev || *peer_dev == action.detail) continue;
        if (!model.find_link_between(action.detail, *peer_dev))
            throw ActionError("IllegalMove", "device '" + action.detail +
                                                 "' has no link to '" + *peer_dev +
                                                 "' hosting attached peer '" + peer + "'");
    }
    config.deployments[inst.name] = action.detail;
}

}  // namespace

Configuration apply_action(const Model& model, const Configuration& config,
                           const ReconfigurationAction& action) {
    Configuration next = config;
    switch (action.kind) {
        case ActionKind::ParamUpdate: {
            ArtifactInstance& inst = require_instance(next, action.target);
            inst.parameter_overrides[action.name] = action.detail;
            break;
        }
        case ActionKind::AddService: {
            ArtifactInstance& inst = require_instance(next, action.target);
            require_service(model, inst, action.name);
            if (inst.active_service)
                collision("instance '" + inst.name + "' already runs service '" +
                          *inst.active_service + "'");
            inst.active_service = action.name;
            break;
        }
        case ActionKind::RemoveService: {
            ArtifactInstance& inst = require_instance(next, action.target);
            if (inst.active_service != std::optional<std::string>(action.name))
                missing("instance '" + inst.name + "' does not run service '" + action.name + "'");
            inst.active_service.reset();
            break;
        }
        case ActionKind::SubstituteService: {
            ArtifactInstance& inst = require_instance(next, action.target);
            if (inst.active_service != std::optional<std::string>(action.name))
                missing("instance '" + inst.name + "' does not run service '" + action.name + "'");
            require_service(model, inst, action.detail);
            inst.active_service = action.detail;
            break;
        }
        case ActionKind::AttachSubfamily:
            attach_subfamily(model, next, action);
            break;
        case ActionKind::DetachSubfamily:
            detach_subfamily(model, next, action);
            break;
        case ActionKind::Move:
            move_instance(model, next, action);
            break;
    }
    return next;
}

}  // namespace arcq
