#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "adl.hpp"

namespace arcq::adl {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (in >> field) fields.push_back(field);
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

std::optional<EventKind> kind_from(const std::string& word) {
    if (word == "bandwidth") return EventKind::Bandwidth;
    if (word == "cpu") return EventKind::Cpu;
    if (word == "memory") return EventKind::Memory;
    if (word == "battery") return EventKind::Battery;
    if (word == "buffer_fill") return EventKind::BufferFill;
    if (word == "move") return EventKind::Move;
    if (word == "fault") return EventKind::Fault;
    return std::nullopt;
}

}  // namespace

TraceParseResult parse_trace(std::string_view text) {
    TraceParseResult result;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::vector<std::string> fields = split_fields(raw);
        if (fields.empty()) continue;

        auto reject = [&](const std::string& expected, const std::string& found) {
            result.errors.push_back({{line_no, 1, static_cast<int>(raw.size())}, expected, found});
        };

        if (fields.size() != 4) {
            reject("4 fields: <time_ms> <kind> <target> <value>", raw);
            continue;
        }
        double time = 0;
        if (!parse_double(fields[0], time) || time < 0) {
            reject("a non-negative time in ms", fields[0]);
            continue;
        }
        std::optional<EventKind> kind = kind_from(fields[1]);
        if (!kind) {
            reject("an event kind (bandwidth, cpu, memory, battery, buffer_fill, move, fault)",
                   fields[1]);
            continue;
        }

        Event event;
        event.time_ms = static_cast<long long>(time);
        event.kind = *kind;
        event.target = fields[2];
        switch (*kind) {
            case EventKind::Move: event.detail = fields[3]; break;
            case EventKind::Fault: break;  // value ignored
            default: {
                double value = 0;
                if (!parse_double(fields[3], value)) {
                    reject("a numeric value", fields[3]);
                    continue;
                }
                const bool pct =
                    *kind == EventKind::Battery || *kind == EventKind::BufferFill;
                if (value < 0 || (pct && value > 100)) {
                    reject(pct ? "a percentage in [0,100]" : "a non-negative value", fields[3]);
                    continue;
                }
                event.value = value;
            }
        }
        result.trace.push_back(std::move(event));
    }
    std::stable_sort(result.trace.begin(), result.trace.end(),
                     [](const Event& a, const Event& b) { return a.time_ms < b.time_ms; });
    if (!result.errors.empty()) result.trace.clear();
    return result;
}

std::string serialize_trace(const Trace& trace) {
    std::ostringstream out;
    for (const Event& e : trace) {
        out << e.time_ms << " " << to_string(e.kind) << " " << e.target << " ";
        if (e.kind == EventKind::Move)
            out << e.detail;
        else if (e.kind == EventKind::Fault)
            out << "0";
        else
            out << format_number(e.value);
        out << "\n";
    }
    return out.str();
}

}  // namespace arcq::adl
