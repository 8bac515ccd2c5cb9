#include "runtime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "adl.hpp"
#include "families.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace arcq::runtime {

const char* to_string(Stage s) {
    switch (s) {
        case Stage::None: return "none";
        case Stage::SingleDiff: return "single-diff";
        case Stage::Subfamily: return "subfamily";
        case Stage::FamilyWide: return "family";
        case Stage::Move: return "move";
        case Stage::Failed: return "failed";
    }
    return "?";
}

std::vector<PoissonRow> default_poisson_rows(const Model& model) {
    std::vector<PoissonRow> rows;
    for (const auto& link : model.links)
        rows.push_back({EventKind::Bandwidth, link.name, 0.25 * link.bandwidth_kbps,
                        link.bandwidth_kbps});
    for (const auto& dev : model.devices) {
        rows.push_back({EventKind::Cpu, dev.name, 0.25 * dev.cpu_mips, dev.cpu_mips});
        rows.push_back({EventKind::Memory, dev.name, 0.25 * dev.memory_mb, dev.memory_mb});
    }
    return rows;
}

Trace gen_poisson_trace(const std::vector<PoissonRow>& rows, double rate_per_s,
                        long long horizon_ms, std::uint64_t seed) {
    Trace trace;
    if (rate_per_s <= 0.0 || horizon_ms <= 0 || rows.empty()) return trace;
    SplitMix64 rng{seed};
    const double mean_gap_ms = 1000.0 / rate_per_s;
    double t = 0.0;
    for (;;) {
        t += -mean_gap_ms * std::log(1.0 - rng.next_uniform());
        if (t > static_cast<double>(horizon_ms)) break;
        const auto index = static_cast<std::size_t>(rng.next_uniform() *
                                                    static_cast<double>(rows.size()));
        const PoissonRow& row = rows[std::min(index, rows.size() - 1)];
        Event event;
        event.time_ms = static_cast<long long>(t);
        event.kind = row.kind;
        event.target = row.target;
        event.value = row.lo + rng.next_uniform() * (row.hi - row.lo);
        trace.push_back(std::move(event));
    }
    return trace;
}

namespace {

int zone_of(double fill_pct) { return fill_pct < 20.0 ? -1 : (fill_pct > 80.0 ? 1 : 0); }

/// Component feeding a connector instance through its data-source role.
const ArtifactInstance* producer_of(const Model& model, const Configuration& config,
                                    const std::string& connector_instance) {
    const ArtifactInstance* conn = config.find_instance(connector_instance);
    if (!conn) return nullptr;
    const ConnectorType* type = model.find_connector(conn->type_ref);
    if (!type) return nullptr;
    for (const auto& at : config.attachments) {
        if (at.connector != connector_instance) continue;
        const RoleDecl* role = type->find_role(at.role);
        if (role && role->kind == RoleKind::DataSource) return config.find_instance(at.component);
    }
    return nullptr;
}

double requirement_level(const Model& model, const Configuration& config,
                         const ArtifactInstance& inst, ResourceKind resource,
                         const ContextSnapshot& ctx, bool& applicable) {
    applicable = true;
    const std::string* device = config.device_of(inst.name);
    switch (resource) {
        case ResourceKind::Cpu:
            if (!device) break;
            return ctx.cpu_available(*device);
        case ResourceKind::Memory:
            if (!device) break;
            return ctx.memory_available(*device);
        case ResourceKind::Battery:
            if (!device) break;
            return ctx.battery(*device);
        case ResourceKind::Bandwidth: {
            const NetworkLink* link = metrics::outbound_link(model, config, inst.name);
            if (!link) break;  // local traffic only
            return ctx.bandwidth_available(link->name);
        }
        case ResourceKind::BufferFill: break;
    }
    applicable = false;
    return 0.0;
}

bool requirement_holds(const Model& model, const Configuration& config,
                       const ArtifactInstance& inst, const ContextRequirement& req,
                       const ContextSnapshot& ctx) {
    bool applicable = false;
    const double level = requirement_level(model, config, inst, req.resource, ctx, applicable);
    if (!applicable) return true;
    return req.relation == Relation::Ge ? level >= req.bound : level <= req.bound;
}

}  // namespace

bool any_requirement_violated(const Model& model, const Configuration& config,
                              const ContextSnapshot& ctx) {
    for (const auto& inst : config.instances) {
        const ComponentType* type = model.find_component(inst.type_ref);
        if (!type) continue;
        for (const auto& req : type->requirements)
            if (!requirement_holds(model, config, inst, req, ctx)) return true;
    }
    return false;
}

bool feasible_now(const Model& model, const Configuration& config, const ContextSnapshot& ctx) {
    if (any_requirement_violated(model, config, ctx)) return false;

    std::map<std::string, double> cpu_demand, memory_demand;
    std::map<std::string, double> link_demand;
    for (const auto& inst : config.instances) {
        const ServiceProfile* profile = model.active_profile(inst);
        if (!profile) continue;
        const std::string* device = config.device_of(inst.name);
        if (device) {
            cpu_demand[*device] += profile->cpu_mips;
            memory_demand[*device] += profile->memory_mb;
        }
        if (profile->output_kbps > 0.0)
            if (const NetworkLink* link = metrics::outbound_link(model, config, inst.name))
                link_demand[link->name] += profile->output_kbps;
    }
    for (const auto& [device, demand] : cpu_demand)
        if (demand > ctx.cpu_available(device)) return false;
    for (const auto& [device, demand] : memory_demand)
        if (demand > ctx.memory_available(device)) return false;
    for (const auto& [link, demand] : link_demand)
        if (demand > ctx.bandwidth_available(link)) return false;
    return true;
}

std::vector<Event> probe_step(const Model& model, SimState& state, long long dt_ms) {
    std::vector<Event> events;
    for (const auto& buffer : state.current.buffers) {
        BufferState& rt = state.buffers[buffer.name];

        double nominal_in = 0.0;
        double in_rate = 0.0;
        if (const ArtifactInstance* producer = producer_of(model, state.current, buffer.owner)) {
            if (const ServiceProfile* profile = model.active_profile(*producer)) {
                nominal_in = profile->output_kbps;
                in_rate = nominal_in;
                const std::string* pd = state.current.device_of(producer->name);
                const std::string* od = state.current.device_of(buffer.owner);
                if (pd && od && *pd != *od)
                    if (const NetworkLink* link = model.find_link_between(*pd, *od))
                        in_rate = std::min(in_rate,
                                           state.context.bandwidth_available(link->name));
            }
        }
        const double out_rate = buffer.drain_kbps.value_or(nominal_in);

        // kbps -> KB over dt
        const double delta_kb =
            (in_rate - out_rate) * static_cast<double>(dt_ms) / 1000.0 / 8.0;
        double fill_kb = rt.fill_pct / 100.0 * buffer.capacity_kb + delta_kb;
        fill_kb = std::clamp(fill_kb, 0.0, buffer.capacity_kb);
        rt.fill_pct = fill_kb / buffer.capacity_kb * 100.0;
        state.context.buffer_fill_pct[buffer.name] = rt.fill_pct;

        const int zone = zone_of(rt.fill_pct);
        if (zone == -1 && rt.zone != -1)
            events.push_back({state.clock_ms, EventKind::Underflow, buffer.name, rt.fill_pct, ""});
        else if (zone == 1 && rt.zone != 1)
            events.push_back({state.clock_ms, EventKind::Overflow, buffer.name, rt.fill_pct, ""});
        rt.zone = zone;
    }
    return events;
}

namespace {

std::optional<double> safe_quality(const Model& model, const Family& family,
                                   const Configuration& config, const ContextSnapshot& ctx) {
    try {
        const double t = metrics::tbm(model, config, ctx);
        families::MaacRange range{0, 0};
        if (family.has_member(config.name)) {
            try {
                range = families::maac(model, family, config.name);
            } catch (const families::FamilyError&) {
            }
        }
        return t / (1.0 + static_cast<double>(range.max));
    } catch (const metrics::MetricsError&) {
        return std::nullopt;
    }
}

/// Instances the event originates from; stage-1 candidates may differ from
/// the current configuration only inside this set.
std::set<std::string> origin_instances(const Model& model, const Configuration& config,
                                       const Event& event) {
    std::set<std::string> origin;
    switch (event.kind) {
        case EventKind::Overflow:
        case EventKind::Underflow: {
            const BufferDecl* buffer = config.find_buffer(event.target);
            if (!buffer) break;
            origin.insert(buffer->owner);
            if (const ArtifactInstance* producer = producer_of(model, config, buffer->owner))
                origin.insert(producer->name);
            break;
        }
        case EventKind::Fault:
        case EventKind::Move:
            origin.insert(event.target);
            break;
        case EventKind::Bandwidth:
            for (const auto& at : config.attachments) {
                const std::string* d1 = config.device_of(at.component);
                const std::string* d2 = config.device_of(at.connector);
                if (!d1 || !d2 || *d1 == *d2) continue;
                const NetworkLink* link = model.find_link_between(*d1, *d2);
                if (link && link->name == event.target) {
                    origin.insert(at.component);
                    origin.insert(at.connector);
                }
            }
            break;
        case EventKind::Cpu:
        case EventKind::Memory:
        case EventKind::Battery:
            for (const auto& [inst, device] : config.deployments)
                if (device == event.target) origin.insert(inst);
            break;
        case EventKind::BufferFill: {
            const BufferDecl* buffer = config.find_buffer(event.target);
            if (buffer) origin.insert(buffer->owner);
            break;
        }
    }
    return origin;
}

std::optional<std::vector<ReconfigurationAction>> synthesize_actions(
    const Model& model, const Configuration& current, const Configuration& target) {
    std::vector<ReconfigurationAction> actions;
    for (const std::string& name : instance_diff(current, target)) {
        const ArtifactInstance* a = current.find_instance(name);
        const ArtifactInstance* b = target.find_instance(name);
        if (!a || !b || a->type_ref != b->type_ref) return std::nullopt;

        if (a->active_service != b->active_service) {
            if (a->active_service && b->active_service)
                actions.push_back({ActionKind::SubstituteService, name, *a->active_service,
                                   *b->active_service});
            else if (b->active_service)
                actions.push_back({ActionKind::AddService, name, *b->active_service, ""});
            else
                actions.push_back({ActionKind::RemoveService, name, *a->active_service, ""});
        }
        for (const auto& [key, value] : b->parameter_overrides) {
            auto it = a->parameter_overrides.find(key);
            if (it == a->parameter_overrides.end() || it->second != value)
                actions.push_back({ActionKind::ParamUpdate, name, key, value});
        }
        for (const auto& [key, value] : a->parameter_overrides)
            if (!b->parameter_overrides.count(key)) return std::nullopt;  // no unset action

        const std::string* da = current.device_of(name);
        const std::string* db = target.device_of(name);
        if ((da == nullptr) != (db == nullptr)) return std::nullopt;
        if (da && db && *da != *db) actions.push_back({ActionKind::Move, name, "", *db});
    }
    if (actions.empty()) return std::nullopt;

    try {
        Configuration replayed = current;
        for (const auto& action : actions) replayed = apply_action(model, replayed, action);
        if (!structurally_equal(replayed, target)) return std::nullopt;
    } catch (const ActionError&) {
        return std::nullopt;
    }
    return actions;
}

std::optional<std::vector<ReconfigurationAction>> resolve_actions(const Model& model,
                                                                  const Family& family,
                                                                  const Configuration& current,
                                                                  const Configuration& target) {
    for (const auto& t : family.transitions) {
        if (t.from != current.name || t.to != target.name) continue;
        try {
            Configuration replayed = current;
            for (const auto& action : t.actions) replayed = apply_action(model, replayed, action);
            if (structurally_equal(replayed, target)) return t.actions;
        } catch (const ActionError&) {
        }
    }
    return synthesize_actions(model, current, target);
}

struct Candidate {
    const Configuration* config = nullptr;
    int member_index = 0;
    std::vector<ReconfigurationAction> actions;
};

/// Members reachable through transitions that (re)assemble subfamilies;
/// action lists concatenate along the cheapest path.
std::map<std::string, std::vector<ReconfigurationAction>> subfamily_reachable(
    const Model& model, const Family& family, const std::string& from) {
    struct Node {
        long long cost;
        int hops;
        int index;
    };
    const int n = static_cast<int>(family.members.size());
    const int start = family.member_index(from);
    std::map<std::string, std::vector<ReconfigurationAction>> result;
    if (start < 0) return result;

    constexpr long long kInf = std::numeric_limits<long long>::max();
    std::vector<long long> cost(n, kInf);
    std::vector<int> hops(n, 0);
    std::vector<int> prev(n, -1);
    std::vector<const Transition*> edge(n, nullptr);
    using Key = std::tuple<long long, int, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    cost[start] = 0;
    queue.push({0, 0, start});
    while (!queue.empty()) {
        auto [c, h, node] = queue.top();
        queue.pop();
        if (c != cost[node] || h != hops[node]) continue;
        for (const auto& t : family.transitions) {
            if (t.from != family.members[node]) continue;
            const bool assembles =
                std::any_of(t.actions.begin(), t.actions.end(), [](const auto& a) {
                    return a.kind == ActionKind::AttachSubfamily ||
                           a.kind == ActionKind::DetachSubfamily;
                });
            if (!assembles) continue;
            const int to = family.member_index(t.to);
            if (to < 0) continue;
            const long long nc = c + families::transition_cost(model, t);
            const int nh = h + 1;
            if (nc < cost[to] || (nc == cost[to] && nh < hops[to])) {
                cost[to] = nc;
                hops[to] = nh;
                prev[to] = node;
                edge[to] = &t;
                queue.push({nc, nh, to});
            }
        }
    }
    for (int m = 0; m < n; ++m) {
        if (m == start || cost[m] == kInf) continue;
        std::vector<const Transition*> path;
        for (int node = m; edge[node]; node = prev[node]) path.push_back(edge[node]);
        std::vector<ReconfigurationAction> actions;
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            actions.insert(actions.end(), (*it)->actions.begin(), (*it)->actions.end());
        result[family.members[m]] = std::move(actions);
    }
    return result;
}

/// Connector instance most constrained by the event: highest traffic over
/// the affected link, or the heaviest service on the affected device.
const ArtifactInstance* pick_bottleneck(const Model& model, const Configuration& config,
                                        const Event& event) {
    if (event.kind == EventKind::Fault || event.kind == EventKind::Move)
        return config.find_instance(event.target);
    if (event.kind == EventKind::Overflow || event.kind == EventKind::Underflow ||
        event.kind == EventKind::BufferFill) {
        const BufferDecl* buffer = config.find_buffer(event.target);
        return buffer ? config.find_instance(buffer->owner) : nullptr;
    }

    const ArtifactInstance* best = nullptr;
    double best_load = -1.0;
    for (const auto& inst : config.instances) {
        const ConnectorType* type = model.find_connector(inst.type_ref);
        if (!type) continue;
        double load = -1.0;
        if (event.kind == EventKind::Bandwidth) {
            const std::string* own = config.device_of(inst.name);
            if (!own) continue;
            for (const auto& at : config.attachments) {
                if (at.connector != inst.name) continue;
                const std::string* peer_dev = config.device_of(at.component);
                if (!peer_dev || *peer_dev == *own) continue;
                const NetworkLink* link = model.find_link_between(*peer_dev, *own);
                if (!link || link->name != event.target) continue;
                if (load < 0) load = 0;
                const RoleDecl* role = type->find_role(at.role);
                if (role && role->kind == RoleKind::DataSource) {
                    const ArtifactInstance* peer = config.find_instance(at.component);
                    const ServiceProfile* p = peer ? model.active_profile(*peer) : nullptr;
                    if (p) load += p->output_kbps;
                } else if (role && role->kind == RoleKind::DataSink) {
                    const ServiceProfile* p = model.active_profile(inst);
                    if (p) load += p->output_kbps;
                }
            }
        } else {
            const std::string* own = config.device_of(inst.name);
            if (!own || *own != event.target) continue;
            const ServiceProfile* p = model.active_profile(inst);
            load = p ? p->cpu_mips : 0.0;
        }
        if (load >= 0 && load > best_load) {
            best_load = load;
            best = &inst;
        }
    }
    return best;
}

std::optional<ReconfigurationAction> find_move(const Model& model, const Configuration& config,
                                               const ContextSnapshot& ctx, const Event& event) {
    const ArtifactInstance* bottleneck = pick_bottleneck(model, config, event);
    if (!bottleneck) return std::nullopt;
    const std::string* home = config.device_of(bottleneck->name);
    if (!home) return std::nullopt;
    const ServiceProfile* own_profile = model.active_profile(*bottleneck);

    std::vector<std::string> devices;
    if (event.kind == EventKind::Move && !event.detail.empty()) devices.push_back(event.detail);
    for (const auto& dev : model.devices) devices.push_back(dev.name);

    std::set<std::string> tried;
    for (const auto& device : devices) {
        if (device == *home || !model.find_device(device) || !tried.insert(device).second)
            continue;

        double cpu_load = own_profile ? own_profile->cpu_mips : 0.0;
        double mem_load = own_profile ? own_profile->memory_mb : 0.0;
        for (const auto& inst : config.instances) {
            const std::string* dev = config.device_of(inst.name);
            if (!dev || *dev != device || inst.name == bottleneck->name) continue;
            if (const ServiceProfile* p = model.active_profile(inst)) {
                cpu_load += p->cpu_mips;
                mem_load += p->memory_mb;
            }
        }
        if (cpu_load > ctx.cpu_available(device) || mem_load > ctx.memory_available(device))
            continue;

        bool links_ok = true;
        for (const auto& at : config.attachments) {
            std::string peer;
            double required = 0.0;
            if (at.connector == bottleneck->name) {
                peer = at.component;
                const ConnectorType* type = model.find_connector(bottleneck->type_ref);
                const RoleDecl* role = type ? type->find_role(at.role) : nullptr;
                if (role && role->kind == RoleKind::DataSource) {
                    const ArtifactInstance* src = config.find_instance(peer);
                    const ServiceProfile* p = src ? model.active_profile(*src) : nullptr;
                    required = p ? p->output_kbps : 0.0;
                } else if (role && role->kind == RoleKind::DataSink) {
                    required = own_profile ? own_profile->output_kbps : 0.0;
                }
            } else if (at.component == bottleneck->name) {
                peer = at.connector;
                const ComponentType* type = model.find_component(bottleneck->type_ref);
                const PortDecl* port = type ? type->find_port(at.port) : nullptr;
                if (port && port->kind == PortKind::DataOut)
                    required = own_profile ? own_profile->output_kbps : 0.0;
                else if (port && port->kind == PortKind::DataIn) {
                    const ArtifactInstance* src = config.find_instance(peer);
                    const ServiceProfile* p = src ? model.active_profile(*src) : nullptr;
                    required = p ? p->output_kbps : 0.0;
                }
            } else {
                continue;
            }
            const std::string* peer_dev = config.device_of(peer);
            if (!peer_dev || *peer_dev == device) continue;
            const NetworkLink* link = model.find_link_between(device, *peer_dev);
            if (!link || ctx.bandwidth_available(link->name) < required) {
                links_ok = false;
                break;
            }
        }
        if (!links_ok) continue;

        return ReconfigurationAction{ActionKind::Move, bottleneck->name, "", device};
    }
    return std::nullopt;
}

}  // namespace

std::optional<SearchOutcome> qm_search(const Model& model, const SimState& state,
                                       const Event& event) {
    const Family* family = model.find_family(state.family);
    if (!family) return std::nullopt;
    const Configuration& current = state.current;
    const ContextSnapshot& ctx = state.context;

    const bool current_feasible = feasible_now(model, current, ctx);
    const std::optional<double> current_quality = safe_quality(model, *family, current, ctx);

    const metrics::Mark current_mark = metrics::structural_mark(model, current);
    const std::set<std::string> origin = origin_instances(model, current, event);

    auto gather = [&](Stage stage) {
        std::vector<Candidate> candidates;
        auto consider = [&](int index, const std::vector<ReconfigurationAction>* path_actions) {
            const std::string& name = family->members[index];
            if (name == current.name) return;
            const Configuration* config = model.find_configuration(name);
            if (!config || !feasible_now(model, *config, ctx)) return;
            if ((stage == Stage::SingleDiff || stage == Stage::Subfamily) &&
                metrics::structural_mark(model, *config) != current_mark)
                return;
            if (stage == Stage::SingleDiff) {
                for (const auto& inst : instance_diff(current, *config))
                    if (!origin.count(inst)) return;
            }
            std::optional<std::vector<ReconfigurationAction>> actions =
                path_actions ? std::optional(*path_actions)
                             : resolve_actions(model, *family, current, *config);
            if (!actions) return;
            candidates.push_back({config, index, std::move(*actions)});
        };

        switch (stage) {
            case Stage::SingleDiff:
                for (int i = 0; i < static_cast<int>(family->members.size()); ++i)
                    consider(i, nullptr);
                break;
            case Stage::Subfamily: {
                std::set<std::string> pool;
                for (const auto& sub : family->subfamilies)
                    if (std::count(sub.members.begin(), sub.members.end(), current.name))
                        pool.insert(sub.members.begin(), sub.members.end());
                for (int i = 0; i < static_cast<int>(family->members.size()); ++i)
                    if (pool.count(family->members[i])) consider(i, nullptr);
                break;
            }
            case Stage::FamilyWide: {
                auto reachable = subfamily_reachable(model, *family, current.name);
                for (int i = 0; i < static_cast<int>(family->members.size()); ++i) {
                    auto it = reachable.find(family->members[i]);
                    if (it != reachable.end()) consider(i, &it->second);
                }
                break;
            }
            default: break;
        }
        return candidates;
    };

    for (Stage stage : {Stage::SingleDiff, Stage::Subfamily, Stage::FamilyWide}) {
        std::vector<Candidate> candidates = gather(stage);
        if (candidates.empty()) continue;

        const Candidate* best = nullptr;
        std::optional<double> best_quality;
        for (const auto& candidate : candidates) {
            std::optional<double> q = safe_quality(model, *family, *candidate.config, ctx);
            const double qv = q.value_or(-std::numeric_limits<double>::infinity());
            const double bv = best_quality.has_value()
                                  ? best_quality.value_or(0.0)
                                  : -std::numeric_limits<double>::infinity();
            if (!best || qv > bv) {
                best = &candidate;
                best_quality = q;
            }
        }
        if (current_feasible &&
            best_quality.value_or(-std::numeric_limits<double>::infinity()) <=
                current_quality.value_or(-std::numeric_limits<double>::infinity()))
            return std::nullopt;
        return SearchOutcome{best->config->name, stage, best->actions};
    }

    if (std::optional<ReconfigurationAction> move = find_move(model, current, ctx, event)) {
        if (current_feasible) return std::nullopt;  // relocation is a last resort
        return SearchOutcome{current.name, Stage::Move, {*move}};
    }
    return std::nullopt;
}

bool am_execute(const Model& model, SimState& state,
                const std::vector<ReconfigurationAction>& actions, const std::string& adopt_name) {
    try {
        Configuration next = state.current;
        for (const auto& action : actions) next = apply_action(model, next, action);
        next.name = adopt_name;
        if (has_errors(validate_configuration(model, next))) return false;
        state.current = std::move(next);
        return true;
    } catch (const ActionError&) {
        return false;
    }
}

namespace {

void sync_buffers(SimState& state) {
    std::set<std::string> live;
    for (const auto& buffer : state.current.buffers) {
        live.insert(buffer.name);
        if (!state.buffers.count(buffer.name)) {
            state.buffers[buffer.name] = {buffer.initial_fill_pct, zone_of(buffer.initial_fill_pct)};
            state.context.buffer_fill_pct[buffer.name] = buffer.initial_fill_pct;
        }
    }
    for (auto it = state.buffers.begin(); it != state.buffers.end();) {
        if (!live.count(it->first)) {
            state.context.buffer_fill_pct.erase(it->first);
            it = state.buffers.erase(it);
        } else {
            ++it;
        }
    }
}

std::string format_event_value(const Event& event) {
    if (event.kind == EventKind::Move) return event.detail;
    if (event.kind == EventKind::Fault) return "0";
    return adl::format_number(event.value);
}

}  // namespace

std::string serialize_log(const ReconfigurationLog& log) {
    std::ostringstream out;
    for (const auto& entry : log.entries) {
        out << "t=" << entry.time_ms << " event=" << to_string(entry.event.kind) << ":"
            << entry.event.target << ":" << format_event_value(entry.event)
            << " stage=" << to_string(entry.stage) << " actions=[";
        for (std::size_t i = 0; i < entry.actions.size(); ++i) {
            if (i) out << " ";
            out << to_string(entry.actions[i].kind) << "(" << entry.actions[i].target << ")";
        }
        out << "] config=" << entry.config_after << " quality=";
        if (entry.quality_after) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3f", *entry.quality_after);
            out << buf;
        } else {
            out << "nan";
        }
        out << "\n";
    }
    return out.str();
}

ReconfigurationLog run(const Model& model, const std::string& config_name,
                       const std::string& family_name, const Trace& trace,
                       const RunOptions& options) {
    const Configuration* config = model.find_configuration(config_name);
    if (!config) throw std::runtime_error("no configuration named '" + config_name + "'");
    const Family* family = model.find_family(family_name);
    if (!family) throw std::runtime_error("no family named '" + family_name + "'");
    if (!family->has_member(config_name))
        throw std::runtime_error("configuration '" + config_name + "' is not a member of family '" +
                                 family_name + "'");
    if (options.dt_ms <= 0) throw std::runtime_error("dt must be positive");

    SimState state;
    state.current = *config;
    state.family = family_name;
    state.context = ContextSnapshot::nominal(model);
    state.context.seed_buffers(*config);
    state.rng_state = options.seed;
    for (const auto& buffer : config->buffers)
        state.buffers[buffer.name] = {buffer.initial_fill_pct, zone_of(buffer.initial_fill_pct)};

    long long horizon = options.horizon_ms;
    if (horizon < 0) {
        horizon = 60000;
        if (!trace.empty()) horizon = trace.back().time_ms + 60000;
    }

    ReconfigurationLog log;
    log.seed = options.seed;

    auto process = [&](const Event& event) {
        LogEntry entry;
        entry.time_ms = event.time_ms;
        entry.event = event;

        bool relevant;
        if (is_resource_event(event.kind)) {
            state.context.apply(event);
            if (event.kind == EventKind::BufferFill) {
                auto it = state.buffers.find(event.target);
                if (it != state.buffers.end()) {
                    it->second.fill_pct = event.value;
                    it->second.zone = zone_of(event.value);
                }
            }
            relevant = any_requirement_violated(model, state.current, state.context);
        } else {
            relevant = true;
        }

        if (relevant) {
            if (std::optional<SearchOutcome> outcome = qm_search(model, state, event)) {
                const bool applied = am_execute(model, state, outcome->actions, outcome->candidate);
                entry.stage = applied ? outcome->stage : Stage::Failed;
                entry.actions = outcome->actions;
                if (applied) sync_buffers(state);
            }
        }
        entry.config_after = state.current.name;
        entry.quality_after = safe_quality(model, *family, state.current, state.context);
        log.entries.push_back(std::move(entry));
    };

    std::size_t next_scripted = 0;
    long long next_probe = options.dt_ms;
    for (;;) {
        const long long te = next_scripted < trace.size() ? trace[next_scripted].time_ms
                                                          : std::numeric_limits<long long>::max();
        const long long tp =
            next_probe <= horizon ? next_probe : std::numeric_limits<long long>::max();
        if (te > horizon && tp == std::numeric_limits<long long>::max()) break;

        if (te <= tp && te <= horizon) {
            state.clock_ms = te;
            process(trace[next_scripted++]);
        } else {
            state.clock_ms = tp;
            for (const Event& event : probe_step(model, state, options.dt_ms)) process(event);
            next_probe += options.dt_ms;
        }
    }
    return log;
}

}  // namespace arcq::runtime
