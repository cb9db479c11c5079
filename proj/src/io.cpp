#include "archlab/io.hpp"

#include "archlab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace archlab {

namespace {

struct Token {
    std::string_view text;
    int column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        // '->' and ':' are tokens of their own, so spacing around them is optional.
        auto punct = [&](std::size_t at) { return line[at] == ':' || line.substr(at, 2) == "->"; };
        if (punct(i)) {
            i += line[i] == ':' ? 1 : 2;
        } else {
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#' && !punct(i)) ++i;
        }
        tokens.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

class TextParser {
public:
    explicit TextParser(std::string_view text) : text_(text) {}

    CyclicGraph run() {
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            std::size_t end = text_.find('\n', pos);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view line = text_.substr(pos, end - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            ++line_no_;
            statement(tokenize(line));
            pos = end + 1;
        }
        if (!version_) fail(ErrorCode::ParseError, "missing 'version' header", 1, 1);
        if (!period_) fail(ErrorCode::ParseError, "missing 'period' header", 1, 1);
        // Edges may mention nodes declared further down, so references resolve last.
        for (const auto& [id, line, column] : references_) {
            if (!declared_.contains(id)) fail(ErrorCode::UnknownNodeReference, "unknown node " + id.to_string(), line, column);
        }
        return CyclicGraph(*period_, std::move(nodes_), std::move(edges_));
    }

private:
    [[noreturn]] void fail(ErrorCode code, const std::string& message, int line, int column) const {
        throw ParseError(code, message, line, column);
    }
    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        fail(ErrorCode::ParseError, message, line_no_, at.column);
    }

    std::int64_t integer(const Token& token, const std::string& what) const {
        std::int64_t value = 0;
        const char* first = token.text.data();
        const char* last = first + token.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) fail(what + " must be an integer, got '" + std::string(token.text) + "'", token);
        return value;
    }

    void expect_count(const std::vector<Token>& tokens, std::size_t count, const char* usage) const {
        if (tokens.size() != count) {
            const Token& at = tokens.size() > count ? tokens[count] : tokens.back();
            fail(std::string("expected '") + usage + "'", at);
        }
    }

    void statement(const std::vector<Token>& tokens) {
        if (tokens.empty()) return;
        const Token& head = tokens.front();
        if (head.text == "version") {
            expect_count(tokens, 2, "version <n>");
            if (version_) fail("duplicate 'version' header", head);
            if (!nodes_.empty() || period_) fail("'version' must be the first statement", head);
            version_ = integer(tokens[1], "version");
            if (*version_ != kFormatVersion) fail("unsupported format version " + std::to_string(*version_), tokens[1]);
        } else if (head.text == "period") {
            expect_count(tokens, 2, "period <m>");
            if (!version_) fail("'version' must precede 'period'", head);
            if (period_) fail("duplicate 'period' header", head);
            period_ = integer(tokens[1], "period");
            if (*period_ < 1) fail("period must be positive", tokens[1]);
        } else if (head.text == "node") {
            node(tokens);
        } else if (head.text == "edge") {
            edge(tokens);
        } else {
            fail("unknown statement '" + std::string(head.text) + "'", head);
        }
    }

    void require_headers(const Token& at) const {
        if (!version_ || !period_) fail("'version' and 'period' must precede nodes and edges", at);
    }

    void node(const std::vector<Token>& tokens) {
        require_headers(tokens.front());
        expect_count(tokens, 4, "node <kind> <time_index> <id>");
        const auto kind = parse_node_kind(tokens[1].text);
        if (!kind) fail("unknown node kind '" + std::string(tokens[1].text) + "'", tokens[1]);
        const std::int64_t time = integer(tokens[2], "time index");
        if (time < 0 || time >= *period_) fail("time index outside [0, period)", tokens[2]);
        if (!is_identifier(tokens[3].text)) fail("invalid identifier '" + std::string(tokens[3].text) + "'", tokens[3]);
        NodeId id{std::string(tokens[3].text), time};
        if (!declared_.insert(id).second) {
            fail(ErrorCode::DuplicateNode, "duplicate node " + id.to_string(), line_no_, tokens[3].column);
        }
        nodes_.push_back(Node{std::move(id), *kind});
    }

    NodeId reference(const Token& token) {
        const auto at = token.text.find('@');
        if (at == std::string_view::npos) fail("expected <id>@<time_index>", token);
        const std::string_view label = token.text.substr(0, at);
        if (!is_identifier(label)) fail("invalid identifier '" + std::string(label) + "'", token);
        Token time_token{token.text.substr(at + 1), token.column + static_cast<int>(at) + 1};
        NodeId id{std::string(label), integer(time_token, "time index")};
        references_.emplace_back(id, line_no_, token.column);
        return id;
    }

    void edge(const std::vector<Token>& tokens) {
        require_headers(tokens.front());
        expect_count(tokens, 6, "edge <id>@<i> -> <id>@<j> : <sigma>");
        if (tokens[2].text != "->") fail("expected '->'", tokens[2]);
        if (tokens[4].text != ":") fail("expected ':'", tokens[4]);
        EdgeSpec spec{reference(tokens[1]), reference(tokens[3]), integer(tokens[5], "sigma")};
        if (!seen_edges_.insert({spec.from, spec.to, spec.sigma}).second) {
            fail(ErrorCode::DuplicateEdge, "duplicate edge", line_no_, tokens[1].column);
        }
        edges_.push_back(std::move(spec));
    }

    std::string_view text_;
    int line_no_ = 0;
    std::optional<std::int64_t> version_;
    std::optional<std::int64_t> period_;
    std::vector<Node> nodes_;
    std::vector<EdgeSpec> edges_;
    std::set<NodeId> declared_;
    std::vector<std::tuple<NodeId, int, int>> references_;
    std::set<std::tuple<NodeId, NodeId, std::int64_t>> seen_edges_;
};

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

CyclicGraph parse_json(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(ErrorCode::ParseError, "malformed JSON", line, column);
    }
    auto schema_error = [](const std::string& message) -> ParseError {
        return ParseError(ErrorCode::ParseError, message, 1, 1);
    };
    auto integer = [&](const json& value, const std::string& what) -> std::int64_t {
        if (!value.is_number_integer()) throw schema_error(what + " must be an integer");
        return value.get<std::int64_t>();
    };
    auto reference = [&](const json& value) -> NodeId {
        if (!value.is_string()) throw schema_error("edge endpoints must be strings of the form id@time");
        const std::string s = value.get<std::string>();
        const auto at = s.find('@');
        if (at == std::string::npos) throw schema_error("edge endpoint '" + s + "' lacks '@'");
        std::int64_t time = 0;
        auto [ptr, ec] = std::from_chars(s.data() + at + 1, s.data() + s.size(), time);
        if (ec != std::errc{} || ptr != s.data() + s.size()) throw schema_error("bad time index in '" + s + "'");
        return NodeId{s.substr(0, at), time};
    };

    if (!doc.is_object()) throw schema_error("top level must be an object");
    for (const char* key : {"version", "period", "nodes", "edges"}) {
        if (!doc.contains(key)) throw schema_error(std::string("missing key '") + key + "'");
    }
    if (integer(doc["version"], "version") != kFormatVersion) throw schema_error("unsupported format version");
    const std::int64_t period = integer(doc["period"], "period");
    if (period < 1) throw schema_error("period must be positive");

    std::vector<Node> nodes;
    std::set<NodeId> declared;
    for (const json& n : doc["nodes"]) {
        if (!n.is_object() || !n.contains("id") || !n.contains("kind") || !n.contains("time_index") ||
            !n["id"].is_string() || !n["kind"].is_string()) {
            throw schema_error("node entries need string 'id', string 'kind' and integer 'time_index'");
        }
        const auto kind = parse_node_kind(n["kind"].get<std::string>());
        if (!kind) throw schema_error("unknown node kind '" + n["kind"].get<std::string>() + "'");
        NodeId id{n["id"].get<std::string>(), integer(n["time_index"], "time_index")};
        if (!is_identifier(id.label)) throw schema_error("invalid identifier '" + id.label + "'");
        if (id.time_index < 0 || id.time_index >= period) throw schema_error("time index outside [0, period)");
        if (!declared.insert(id).second) {
            throw ParseError(ErrorCode::DuplicateNode, "duplicate node " + id.to_string(), 1, 1);
        }
        nodes.push_back(Node{std::move(id), *kind});
    }
    std::vector<EdgeSpec> edges;
    std::set<std::tuple<NodeId, NodeId, std::int64_t>> seen;
    for (const json& e : doc["edges"]) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("sigma")) {
            throw schema_error("edge entries need 'from', 'to' and 'sigma'");
        }
        EdgeSpec spec{reference(e["from"]), reference(e["to"]), integer(e["sigma"], "sigma")};
        for (const NodeId* id : {&spec.from, &spec.to}) {
            if (!declared.contains(*id)) {
                throw ParseError(ErrorCode::UnknownNodeReference, "unknown node " + id->to_string(), 1, 1);
            }
        }
        if (!seen.insert({spec.from, spec.to, spec.sigma}).second) {
            throw ParseError(ErrorCode::DuplicateEdge, "duplicate edge", 1, 1);
        }
        edges.push_back(std::move(spec));
    }
    return CyclicGraph(period, std::move(nodes), std::move(edges));
}

std::string quoted(const std::string& name) { return "\"" + name + "\""; }

std::string_view shape(NodeKind kind) {
    switch (kind) {
    case NodeKind::Input: return "square";
    case NodeKind::Hidden: return "circle";
    case NodeKind::Output: return "diamond";
    }
    return "circle";
}

// Colours per cyclic edge, in a fixed red, yellow, blue order.
std::vector<std::string> edge_colours(const CyclicGraph& graph, const MeasureReport* report) {
    std::vector<std::string> colours(graph.edge_count());
    if (report == nullptr) return colours;
    std::vector<std::set<std::size_t>> roles(3);
    auto collect = [&](const SimpleCycle& max, const EdgePath& io, const SimpleCycle& min) {
        roles[0].insert(max.edges.begin(), max.edges.end());
        roles[1].insert(io.begin(), io.end());
        roles[2].insert(min.edges.begin(), min.edges.end());
    };
    collect(report->witness_max_cycle, report->witness_io_path, report->witness_min_cycle);
    for (const ComponentReport& c : report->components) collect(c.witness_max_cycle, c.witness_io_path, c.witness_min_cycle);
    const char* names[] = {"red", "yellow", "blue"};
    for (std::size_t e = 0; e < colours.size(); ++e) {
        for (std::size_t r = 0; r < 3; ++r) {
            if (!roles[r].contains(e)) continue;
            if (!colours[e].empty()) colours[e] += ":";
            colours[e] += names[r];
        }
    }
    return colours;
}

std::string edge_attributes(const std::string& label, const std::string& colour) {
    std::string out = "[label=" + quoted(label);
    if (!colour.empty()) out += ", color=" + quoted(colour) + ", penwidth=2";
    return out + "]";
}

} // namespace

CyclicGraph parse(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
    return TextParser(text).run();
}

std::string serialize(const CyclicGraph& graph) {
    std::ostringstream out;
    out << "version " << kFormatVersion << "\n";
    out << "period " << graph.period() << "\n";
    for (const Node& n : graph.nodes()) {
        out << "node " << to_string(n.kind) << " " << n.id.time_index << " " << n.id.label << "\n";
    }
    for (const EdgeSpec& e : graph.edge_specs()) {
        out << "edge " << e.from.to_string() << " -> " << e.to.to_string() << " : " << e.sigma << "\n";
    }
    return out.str();
}

std::string serialize_json(const CyclicGraph& graph) {
    nlohmann::ordered_json doc;
    doc["version"] = kFormatVersion;
    doc["period"] = graph.period();
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const Node& n : graph.nodes()) {
        nlohmann::ordered_json node;
        node["id"] = n.id.label;
        node["kind"] = std::string(to_string(n.kind));
        node["time_index"] = n.id.time_index;
        doc["nodes"].push_back(std::move(node));
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const EdgeSpec& e : graph.edge_specs()) {
        nlohmann::ordered_json edge;
        edge["from"] = e.from.to_string();
        edge["to"] = e.to.to_string();
        edge["sigma"] = e.sigma;
        doc["edges"].push_back(std::move(edge));
    }
    return doc.dump(2) + "\n";
}

std::string export_dot(const CyclicGraph& graph, const UnfoldedWindow* window, const MeasureReport* report) {
    const auto colours = edge_colours(graph, report);
    std::ostringstream out;
    if (window == nullptr) {
        out << "digraph cyclic {\n";
        out << "  rankdir=LR;\n";
        for (const Node& n : graph.nodes()) {
            const std::string name = n.id.to_string();
            out << "  " << quoted(name) << " [label=" << quoted(name) << ", shape=" << shape(n.kind) << "];\n";
        }
        for (std::size_t e = 0; e < graph.edge_count(); ++e) {
            const EdgeSpec spec = graph.edge_spec(e);
            out << "  " << quoted(spec.from.to_string()) << " -> " << quoted(spec.to.to_string()) << " "
                << edge_attributes(std::to_string(spec.sigma), colours[e]) << ";\n";
        }
        out << "}\n";
        return out.str();
    }

    auto name = [&](std::size_t v) {
        return window->label(v) + "@" + std::to_string(window->nodes()[v].time);
    };
    out << "digraph unfolded {\n";
    out << "  rankdir=LR;\n";
    for (std::int64_t t = window->t_lo(); t < window->t_hi(); ++t) {
        const auto at = window->nodes_at(t);
        if (at.empty()) continue;
        out << "  subgraph " << quoted("t" + std::to_string(t)) << " {\n";
        out << "    rank=same;\n";
        for (std::size_t v : at) {
            out << "    " << quoted(name(v)) << " [label=" << quoted(name(v)) << ", shape=" << shape(window->kind(v))
                << "];\n";
        }
        out << "  }\n";
    }
    for (const UnfoldedEdge& e : window->edges()) {
        out << "  " << quoted(name(e.from)) << " -> " << quoted(name(e.to));
        if (!colours[e.cyclic].empty()) out << " [color=" << quoted(colours[e.cyclic]) << ", penwidth=2]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace archlab
