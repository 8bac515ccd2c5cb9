#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace arcq::families {

/// Raised by maac when no context state is reachable. `code` is
/// NoFeasibleState.
struct FamilyError : std::runtime_error {
    std::string code;
    FamilyError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

/// Artifact count an action list touches: parameter updates are free,
/// service changes and moves count one artifact, subfamily (dis)assembly
/// counts the subfamily's artifacts.
int action_cost(const Model& model, const ReconfigurationAction& action);
int transition_cost(const Model& model, const Transition& transition);

/// True when every component instance's context requirements can be met by
/// some resource level inside the state's envelope.
bool feasible_under_state(const Model& model, const Configuration& config,
                          const ContextState& state);

struct AdaptationPlan {
    std::vector<ReconfigurationAction> actions;  // empty when already feasible
    int cost = 0;
    int hops = 0;
    std::string target;  // reached member
};

/// Minimum-cost path through the family's transition graph from `from` to
/// any member feasible under `goal`. Ties prefer fewer transitions, then
/// earlier member declaration. Returns nothing when no member qualifies.
std::optional<AdaptationPlan> cheapest_adaptation(const Model& model, const Family& family,
                                                  const std::string& from,
                                                  const ContextState& goal);

struct MaacRange {
    int min = 0;
    int max = 0;

    bool operator==(const MaacRange&) const = default;
};

/// Cheapest-adaptation cost range over the family's declared context states;
/// states no member can serve are excluded. {0,0} iff the configuration is
/// feasible under every state.
MaacRange maac(const Model& model, const Family& family, const std::string& config);

}  // namespace arcq::families
