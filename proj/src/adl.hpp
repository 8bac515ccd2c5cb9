#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "context.hpp"
#include "model.hpp"

namespace arcq::adl {

struct SourceSpan {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    int length = 0;  // characters
};

struct ParseError {
    SourceSpan span;
    std::string expected;
    std::string found;
};

std::string render_parse_error(const ParseError& e);

struct ParseResult {
    std::optional<Model> model;
    std::vector<ParseError> errors;

    bool ok() const { return model.has_value(); }
};

/// Parses an ADL document. Purely syntactic: cross-reference and constraint
/// violations are left to validate_wellformed. Never returns both a model
/// and errors.
ParseResult parse_model(std::string_view text);

/// Canonical text form; parse_model(serialize_model(m)) is structurally
/// identical to m, and serializing twice is byte-identical.
std::string serialize_model(const Model& model);

struct TraceParseResult {
    Trace trace;  // sorted by time, ties in input order
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

/// One event per line: `<time_ms> <kind> <target> <value>`. The value is
/// kbps / MIPS / MB / percent / percent for resource kinds, a device name
/// for move, and ignored for fault. `#` starts a comment.
TraceParseResult parse_trace(std::string_view text);

std::string serialize_trace(const Trace& trace);

/// Family descriptors as XML: <families> with <family>, <subfamily>,
/// <configuration ref>, <state>, <transition>, <action> children.
std::string export_families_xml(const Model& model);

/// Shortest fixed-notation decimal that reparses to the same double.
std::string format_number(double value);

}  // namespace arcq::adl
