#pragma once

#include "qev/geometry.hpp"

namespace qev {

/// Parses the `qespec 1` geometry text format (see docs/specfile.md).
/// Deterministic: identical text yields an identical entry. Throws
/// ParseError with line/column on malformed input, undeclared parameters,
/// or non-finite component values at chart-interior probe points.
GeometryEntry parse_spec(const std::string& text);

GeometryEntry parse_spec_file(const std::string& path);

/// Canonical text form; parse_spec(emit_spec(e)) reproduces every component
/// expression exactly.
std::string emit_spec(const GeometryEntry& e);

}  // namespace qev
