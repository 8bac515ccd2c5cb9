#include "families.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace arcq::families {

int action_cost(const Model& model, const ReconfigurationAction& action) {
    switch (action.kind) {
        case ActionKind::ParamUpdate: return 0;
        case ActionKind::AddService:
        case ActionKind::RemoveService:
        case ActionKind::SubstituteService:
        case ActionKind::Move: return 1;
        case ActionKind::AttachSubfamily:
        case ActionKind::DetachSubfamily: {
            const Subfamily* sub = find_subfamily(model, action.target, nullptr);
            if (!sub)
                throw FamilyError("TargetMissing", "no subfamily named '" + action.target + "'");
            return static_cast<int>(subfamily_artifacts(model, *sub).size());
        }
    }
    return 0;
}

int transition_cost(const Model& model, const Transition& transition) {
    int cost = 0;
    for (const auto& action : transition.actions) cost += action_cost(model, action);
    return cost;
}

namespace {

struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

Interval envelope_interval(const ContextState& state, ResourceKind resource) {
    Interval iv;
    for (const auto& bound : state.envelope) {
        if (bound.resource != resource) continue;
        if (bound.relation == Relation::Ge)
            iv.lo = std::max(iv.lo, bound.bound);
        else
            iv.hi = std::min(iv.hi, bound.bound);
    }
    return iv;
}

bool requirement_satisfiable(const ContextRequirement& req, const ContextState& state) {
    Interval iv = envelope_interval(state, req.resource);
    if (iv.lo > iv.hi) return false;  // contradictory envelope admits nothing
    return req.relation == Relation::Ge ? iv.hi >= req.bound : iv.lo <= req.bound;
}

}  // namespace

bool feasible_under_state(const Model& model, const Configuration& config,
                          const ContextState& state) {
    for (const auto& inst : config.instances) {
        const ComponentType* type = model.find_component(inst.type_ref);
        if (!type) continue;  // connectors declare no requirements
        for (const auto& req : type->requirements)
            if (!requirement_satisfiable(req, state)) return false;
    }
    return true;
}

std::optional<AdaptationPlan> cheapest_adaptation(const Model& model, const Family& family,
                                                  const std::string& from,
                                                  const ContextState& goal) {
    const int start = family.member_index(from);
    if (start < 0)
        throw FamilyError("TargetMissing", "'" + from + "' is not a member of family '" +
                                               family.name + "'");

    const int n = static_cast<int>(family.members.size());
    auto feasible = [&](int member) {
        const Configuration* config = model.find_configuration(family.members[member]);
        return config && feasible_under_state(model, *config, goal);
    };

    if (feasible(start)) return AdaptationPlan{{}, 0, 0, from};

    constexpr long long kInf = std::numeric_limits<long long>::max();
    std::vector<long long> cost(n, kInf);
    std::vector<int> hops(n, 0);
    std::vector<int> prev_member(n, -1);
    std::vector<const Transition*> prev_edge(n, nullptr);

    using Key = std::tuple<long long, int, int>;  // cost, hops, member index
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    cost[start] = 0;
    queue.push({0, 0, start});

    while (!queue.empty()) {
        auto [c, h, node] = queue.top();
        queue.pop();
        if (c != cost[node] || h != hops[node]) continue;
        for (const auto& t : family.transitions) {
            if (t.from != family.members[node]) continue;
            const int to = family.member_index(t.to);
            if (to < 0) continue;
            const long long edge = transition_cost(model, t);
            const long long nc = c + edge;
            const int nh = h + 1;
            if (nc < cost[to] || (nc == cost[to] && nh < hops[to])) {
                cost[to] = nc;
                hops[to] = nh;
                prev_member[to] = node;
                prev_edge[to] = &t;
                queue.push({nc, nh, to});
            }
        }
    }

    int best = -1;
    for (int m = 0; m < n; ++m) {
        if (cost[m] == kInf || !feasible(m)) continue;
        if (best < 0 || std::tuple(cost[m], hops[m], m) < std::tuple(cost[best], hops[best], best))
            best = m;
    }
    if (best < 0) return std::nullopt;

    AdaptationPlan plan;
    plan.cost = static_cast<int>(cost[best]);
    plan.hops = hops[best];
    plan.target = family.members[best];
    std::vector<const Transition*> path;
    for (int node = best; prev_edge[node]; node = prev_member[node]) path.push_back(prev_edge[node]);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        plan.actions.insert(plan.actions.end(), (*it)->actions.begin(), (*it)->actions.end());
    return plan;
}

MaacRange maac(const Model& model, const Family& family, const std::string& config) {
    if (!family.has_member(config))
        throw FamilyError("TargetMissing", "'" + config + "' is not a member of family '" +
                                               family.name + "'");
    std::vector<int> costs;
    for (const auto& state : family.states)
        if (auto plan = cheapest_adaptation(model, family, config, state))
            costs.push_back(plan->cost);
    if (costs.empty())
        throw FamilyError("NoFeasibleState",
                          "no declared context state is reachable from '" + config + "'");
    auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
    return {*lo, *hi};
}

}  // namespace arcq::families
