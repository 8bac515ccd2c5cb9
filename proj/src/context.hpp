#pragma once

#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace arcq {

enum class EventKind {
    Bandwidth,
    Cpu,
    Memory,
    Battery,
    BufferFill,
    Overflow,
    Underflow,
    Move,
    Fault,
};

const char* to_string(EventKind k);
bool is_resource_event(EventKind k);

/// One monitored change. `value` carries kbps / MIPS / MB / percent for
/// resource kinds; `detail` carries the destination device for move events.
struct Event {
    long long time_ms = 0;
    EventKind kind = EventKind::Bandwidth;
    std::string target;
    double value = 0.0;
    std::string detail;
};

using Trace = std::vector<Event>;

struct DeviceContext {
    double cpu_mips = 0.0;
    double memory_mb = 0.0;
    double battery_pct = 100.0;
};

/// Currently available resources per device, link and buffer.
struct ContextSnapshot {
    std::map<std::string, DeviceContext> devices;
    std::map<std::string, double> link_bandwidth_kbps;
    std::map<std::string, double> buffer_fill_pct;

    /// Snapshot with every resource at its declared capacity.
    static ContextSnapshot nominal(const Model& model);

    /// Adds the configuration's buffers at their initial fill.
    void seed_buffers(const Configuration& config);

    /// Applies a resource event; unknown targets raise std::runtime_error,
    /// non-resource kinds are ignored.
    void apply(const Event& event);

    double cpu_available(const std::string& device) const;
    double memory_available(const std::string& device) const;
    double battery(const std::string& device) const;
    double bandwidth_available(const std::string& link) const;
};

/// Nominal snapshot with the trace's resource events applied in order; a
/// context file is just a trace prefix.
ContextSnapshot snapshot_from_trace(const Model& model, const Trace& trace);

}  // namespace arcq
