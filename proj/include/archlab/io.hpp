#pragma once

#include "archlab/archgraph.hpp"
#include "archlab/measures.hpp"
#include "archlab/unfold.hpp"

#include <string>
#include <string_view>

namespace archlab {

/// Architecture files.
///
/// Line format (UTF-8, LF newlines, `#` starts a comment):
///
///     version 1
///     period <m>
///     node <input|hidden|output> <time_index> <id>
///     edge <id>@<i> -> <id>@<j> : <sigma>
///
/// A document whose first non-blank character is `{` is read as the JSON
/// mirror of the same schema:
///
///     {"version": 1, "period": m,
///      "nodes": [{"id": "x", "kind": "input", "time_index": 0}, ...],
///      "edges": [{"from": "x@0", "to": "h@0", "sigma": 0}, ...]}
///
/// Parsing checks structure only (syntax, references, duplicates). Errors
/// are archlab::ParseError with a 1-based line and column.
inline constexpr int kFormatVersion = 1;

CyclicGraph parse(std::string_view text);

/// Canonical text form: header, nodes by (time_index, id), edges by
/// (from, to, sigma). Byte-stable.
std::string serialize(const CyclicGraph& graph);

/// JSON mirror of serialize(), keys in fixed order.
std::string serialize_json(const CyclicGraph& graph);

/// Graphviz DOT. Inputs are squares, hidden nodes circles and outputs
/// diamonds. With a report, edges on the maximum-ratio cycle are red, on the
/// input-output witness path yellow and on the minimum-ratio cycle blue
/// (colour lists when an edge plays several roles). With a window, the
/// unfolded slice is drawn with one rank per time step instead of the
/// cyclic graph.
std::string export_dot(const CyclicGraph& graph, const UnfoldedWindow* window = nullptr,
                       const MeasureReport* report = nullptr);

} // namespace archlab
