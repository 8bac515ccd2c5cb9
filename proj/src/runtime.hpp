#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "context.hpp"
#include "model.hpp"

namespace arcq::runtime {

struct PoissonRow {
    EventKind kind = EventKind::Bandwidth;
    std::string target;
    double lo = 0.0;
    double hi = 0.0;
};

/// Bandwidth/cpu/memory rows spanning 25%..100% of each declared capacity.
std::vector<PoissonRow> default_poisson_rows(const Model& model);

/// Events with exponential gaps (mean 1000/rate ms); kind, target and value
/// drawn uniformly from the rows. Identical inputs yield identical traces.
Trace gen_poisson_trace(const std::vector<PoissonRow>& rows, double rate_per_s,
                        long long horizon_ms, std::uint64_t seed);

enum class Stage { None, SingleDiff, Subfamily, FamilyWide, Move, Failed };

const char* to_string(Stage s);

struct BufferState {
    double fill_pct = 0.0;
    int zone = 0;  // -1 below 20%, 0 between, +1 above 80%
};

struct SimState {
    long long clock_ms = 0;
    Configuration current;  // working copy, renamed as members are adopted
    std::string family;
    ContextSnapshot context;
    std::map<std::string, BufferState> buffers;
    std::uint64_t rng_state = 0;
};

struct LogEntry {
    long long time_ms = 0;
    Event event;
    Stage stage = Stage::None;
    std::vector<ReconfigurationAction> actions;
    std::string config_after;
    std::optional<double> quality_after;
};

struct ReconfigurationLog {
    std::uint64_t seed = 0;
    std::vector<LogEntry> entries;
};

/// One line per entry:
/// t=<ms> event=<kind>:<target>:<value> stage=<stage> actions=[...] config=<name> quality=<3dp>
std::string serialize_log(const ReconfigurationLog& log);

/// Advances every buffer of the current configuration by dt and reports
/// edge-triggered 20%/80% threshold crossings stamped at the current clock.
std::vector<Event> probe_step(const Model& model, SimState& state, long long dt_ms);

/// Snapshot feasibility: every component instance's context requirements
/// hold and per-device/per-link demand fits inside available resources.
bool feasible_now(const Model& model, const Configuration& config, const ContextSnapshot& ctx);

/// True when some component instance's context requirement is violated by
/// the snapshot (the condition that makes a resource event adaptation-
/// relevant).
bool any_requirement_violated(const Model& model, const Configuration& config,
                              const ContextSnapshot& ctx);

struct SearchOutcome {
    std::string candidate;  // configuration name after adaptation
    Stage stage = Stage::None;
    std::vector<ReconfigurationAction> actions;
};

/// Quality-manager staged search. Stages widen from same-mark members whose
/// difference is confined to the event origin, over the current member's
/// subfamilies, to members reachable through subfamily (re)assembly
/// transitions, to relocating the bottleneck connector. Returns nothing when
/// the current configuration stays feasible and no candidate scores higher.
std::optional<SearchOutcome> qm_search(const Model& model, const SimState& state,
                                       const Event& event);

/// Adaptation-manager executor: applies the actions atomically, renames the
/// working configuration to `adopt_name` and commits only if the result is
/// well-formed. On any failure the state is left untouched and false is
/// returned.
bool am_execute(const Model& model, SimState& state,
                const std::vector<ReconfigurationAction>& actions, const std::string& adopt_name);

struct RunOptions {
    std::uint64_t seed = 0;
    long long horizon_ms = -1;  // -1: last scripted event + 60 s
    long long dt_ms = 100;
};

/// Deterministic simulation: merges the scripted trace with probe events
/// (scripted first at equal timestamps), lets resource events update the
/// context and runs the search/execute loop on every adaptation-relevant
/// event. Every processed event gets a log entry.
ReconfigurationLog run(const Model& model, const std::string& config_name,
                       const std::string& family_name, const Trace& trace,
                       const RunOptions& options);

}  // namespace arcq::runtime
