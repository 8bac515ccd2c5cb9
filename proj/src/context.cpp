#include "context.hpp"

#include <stdexcept>

namespace arcq {

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::Bandwidth: return "bandwidth";
        case EventKind::Cpu: return "cpu";
        case EventKind::Memory: return "memory";
        case EventKind::Battery: return "battery";
        case EventKind::BufferFill: return "buffer_fill";
        case EventKind::Overflow: return "overflow";
        case EventKind::Underflow: return "underflow";
        case EventKind::Move: return "move";
        case EventKind::Fault: return "fault";
    }
    return "?";
}

bool is_resource_event(EventKind k) {
    switch (k) {
        case EventKind::Bandwidth:
        case EventKind::Cpu:
        case EventKind::Memory:
        case EventKind::Battery:
        case EventKind::BufferFill: return true;
        default: return false;
    }
}

ContextSnapshot ContextSnapshot::nominal(const Model& model) {
    ContextSnapshot ctx;
    for (const auto& dev : model.devices)
        ctx.devices[dev.name] = {dev.cpu_mips, dev.memory_mb, dev.battery_pct};
    for (const auto& link : model.links)
        ctx.link_bandwidth_kbps[link.name] = link.bandwidth_kbps;
    return ctx;
}

void ContextSnapshot::seed_buffers(const Configuration& config) {
    for (const auto& buf : config.buffers) buffer_fill_pct[buf.name] = buf.initial_fill_pct;
}

void ContextSnapshot::apply(const Event& event) {
    auto device_field = [&](double DeviceContext::* field) {
        auto it = devices.find(event.target);
        if (it == devices.end())
            throw std::runtime_error("unknown device '" + event.target + "' in context event");
        it->second.*field = event.value;
    };
    switch (event.kind) {
        case EventKind::Bandwidth: {
            auto it = link_bandwidth_kbps.find(event.target);
            if (it == link_bandwidth_kbps.end())
                throw std::runtime_error("unknown link '" + event.target + "' in context event");
            it->second = event.value;
            break;
        }
        case EventKind::Cpu: device_field(&DeviceContext::cpu_mips); break;
        case EventKind::Memory: device_field(&DeviceContext::memory_mb); break;
        case EventKind::Battery: device_field(&DeviceContext::battery_pct); break;
        case EventKind::BufferFill: buffer_fill_pct[event.target] = event.value; break;
        default: break;  // signal events carry no resource value
    }
}

double ContextSnapshot::cpu_available(const std::string& device) const {
    auto it = devices.find(device);
    return it == devices.end() ? 0.0 : it->second.cpu_mips;
}

double ContextSnapshot::memory_available(const std::string& device) const {
    auto it = devices.find(device);
    return it == devices.end() ? 0.0 : it->second.memory_mb;
}

double ContextSnapshot::battery(const std::string& device) const {
    auto it = devices.find(device);
    return it == devices.end() ? 0.0 : it->second.battery_pct;
}

double ContextSnapshot::bandwidth_available(const std::string& link) const {
    auto it = link_bandwidth_kbps.find(link);
    return it == link_bandwidth_kbps.end() ? 0.0 : it->second;
}

ContextSnapshot snapshot_from_trace(const Model& model, const Trace& trace) {
    ContextSnapshot ctx = ContextSnapshot::nominal(model);
    for (const Event& event : trace)
        if (is_resource_event(event.kind)) ctx.apply(event);
    return ctx;
}

}  // namespace arcq
