#include "archlab/cli.hpp"

#include "archlab/archgraph.hpp"
#include "archlab/error.hpp"
#include "archlab/exec.hpp"
#include "archlab/fixtures.hpp"
#include "archlab/io.hpp"
#include "archlab/measures.hpp"
#include "archlab/oracle.hpp"
#include "archlab/unfold.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace archlab::cli {

namespace {

using Json = nlohmann::ordered_json;
using Rows = std::vector<std::pair<std::string, std::string>>;

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    std::string file;
    std::string output;
    std::int64_t from = 0;
    std::int64_t to = 1;
    std::string dot_path;
    std::optional<std::int64_t> max_n;
    std::string family;
    std::int64_t k = 0;
    int variant = 0;
    std::int64_t depth_r = 0;
    std::int64_t depth_f = 0;
    std::int64_t steps = 1;
    std::string cell = "tanh";
    int hidden = 4;
    std::int64_t horizon = 24;
    bool with_report = false;
};

// Usage-level failure (exit 2) that is not a CLI11 parse error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << contents;
}

void print_rows(std::ostream& out, const Rows& rows) {
    std::size_t width = 0;
    for (const auto& [key, value] : rows) width = std::max(width, key.size());
    for (const auto& [key, value] : rows) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << key << value << "\n";
    }
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string node_name(const CyclicGraph& g, std::size_t v) { return g.node(v).id.to_string(); }

std::string path_text(const CyclicGraph& g, const std::vector<std::size_t>& edges, bool closed) {
    if (edges.empty()) return "-";
    std::string text = node_name(g, g.edge(edges.front()).from);
    for (std::size_t e : edges) {
        text += " -(" + std::to_string(g.edge(e).sigma) + ")-> " + node_name(g, g.edge(e).to);
    }
    (void)closed;
    return text;
}

Json edge_json(const CyclicGraph& g, std::size_t e) {
    const EdgeSpec spec = g.edge_spec(e);
    Json j;
    j["from"] = spec.from.to_string();
    j["to"] = spec.to.to_string();
    j["sigma"] = spec.sigma;
    return j;
}

Json edges_json(const CyclicGraph& g, const std::vector<std::size_t>& edges) {
    Json arr = Json::array();
    for (std::size_t e : edges) arr.push_back(edge_json(g, e));
    return arr;
}

Json cycle_json(const CyclicGraph& g, const SimpleCycle& c) {
    Json j;
    j["length"] = c.length;
    j["sigma_sum"] = c.sigma_sum;
    j["edges"] = edges_json(g, c.edges);
    return j;
}

Json component_json(const CyclicGraph& g, const ComponentReport& c) {
    Json j;
    Json nodes = Json::array();
    for (std::size_t v : c.nodes) nodes.push_back(node_name(g, v));
    j["nodes"] = nodes;
    j["orientation"] = std::string(to_string(c.orientation));
    j["recurrent_depth"] = c.recurrent_depth.to_string();
    j["feedforward_depth"] = c.feedforward_depth ? Json(c.feedforward_depth->to_string()) : Json(nullptr);
    j["skip_coefficient"] = c.skip_coefficient.to_string();
    j["skip_reciprocal"] = c.skip_reciprocal.to_string();
    j["mild_assumption_dr"] = c.mild_assumption_dr;
    j["mild_assumption_s"] = c.mild_assumption_s;
    j["witness_max_cycle"] = cycle_json(g, c.witness_max_cycle);
    j["witness_min_cycle"] = cycle_json(g, c.witness_min_cycle);
    j["witness_io_path"] = edges_json(g, c.witness_io_path);
    return j;
}

Json report_json(const CyclicGraph& g, const MeasureReport& r) {
    Json j;
    j["orientation"] = std::string(to_string(r.orientation));
    j["minimal_period"] = r.minimal_period;
    if (r.unidirectional()) {
        j["recurrent_depth"] = r.recurrent_depth.to_string();
        j["feedforward_depth"] = r.feedforward_depth.to_string();
        j["skip_coefficient"] = r.skip_coefficient.to_string();
        j["skip_reciprocal"] = r.skip_reciprocal.to_string();
        j["mild_assumption_dr"] = r.mild_assumption_dr;
        j["mild_assumption_s"] = r.mild_assumption_s;
        j["witness_max_cycle"] = cycle_json(g, r.witness_max_cycle);
        j["witness_min_cycle"] = cycle_json(g, r.witness_min_cycle);
        j["witness_io_path"] = edges_json(g, r.witness_io_path);
    }
    Json components = Json::array();
    for (const ComponentReport& c : r.components) components.push_back(component_json(g, c));
    j["components"] = components;
    return j;
}

Rows report_rows(const CyclicGraph& g, const MeasureReport& r) {
    Rows rows{{"orientation", std::string(to_string(r.orientation))},
              {"minimal_period", std::to_string(r.minimal_period)}};
    if (r.unidirectional()) {
        rows.insert(rows.end(), {{"d_r", r.recurrent_depth.to_string()},
                                 {"d_f", r.feedforward_depth.to_string()},
                                 {"s", r.skip_coefficient.to_string()},
                                 {"j", r.skip_reciprocal.to_string()},
                                 {"mild_dr", bool_text(r.mild_assumption_dr)},
                                 {"mild_s", bool_text(r.mild_assumption_s)},
                                 {"max_cycle", path_text(g, r.witness_max_cycle.edges, true)},
                                 {"min_cycle", path_text(g, r.witness_min_cycle.edges, true)},
                                 {"io_path", path_text(g, r.witness_io_path, false)}});
    }
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        const ComponentReport& c = r.components[i];
        const std::string p = "component" + std::to_string(i) + ".";
        std::string members;
        for (std::size_t v : c.nodes) members += (members.empty() ? "" : " ") + node_name(g, v);
        rows.insert(rows.end(), {{p + "nodes", members},
                                 {p + "orientation", std::string(to_string(c.orientation))},
                                 {p + "d_r", c.recurrent_depth.to_string()},
                                 {p + "d_f", c.feedforward_depth ? c.feedforward_depth->to_string() : "-"},
                                 {p + "s", c.skip_coefficient.to_string()},
                                 {p + "j", c.skip_reciprocal.to_string()}});
    }
    return rows;
}

CyclicGraph load(const Options& o) { return parse(read_file(o.file)); }

int cmd_validate(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    const ValidationReport report = validate(g, EnumerationLimits::from_environment());
    if (o.json) {
        Json j;
        j["valid"] = report.valid();
        Json list = Json::array();
        for (const Violation& v : report.violations) {
            Json item;
            item["code"] = std::string(violation_code(v.kind));
            item["message"] = v.message;
            Json nodes = Json::array();
            for (std::size_t n : v.nodes) nodes.push_back(node_name(g, n));
            item["nodes"] = nodes;
            item["edges"] = edges_json(g, v.edges);
            Json cycles = Json::array();
            for (const SimpleCycle& c : v.cycles) cycles.push_back(cycle_json(g, c));
            item["cycles"] = cycles;
            list.push_back(item);
        }
        j["violations"] = list;
        out << j.dump(2) << "\n";
    } else if (report.valid()) {
        out << "valid\n";
    } else {
        for (const Violation& v : report.violations) out << violation_code(v.kind) << ": " << v.message << "\n";
    }
    return report.valid() ? kExitOk : kExitDomainError;
}

int cmd_measures(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    const MeasureReport r = measure(g, EnumerationLimits::from_environment());
    if (o.json) {
        out << report_json(g, r).dump(2) << "\n";
    } else {
        print_rows(out, report_rows(g, r));
    }
    return kExitOk;
}

int cmd_unfold(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    if (o.to <= o.from) throw UsageError("--to must be greater than --from");
    const UnfoldedWindow w = unfold(g, o.from, o.to);
    auto name = [&](std::size_t v) { return w.label(v) + "@" + std::to_string(w.nodes()[v].time); };
    if (!o.dot_path.empty()) write_file(o.dot_path, export_dot(g, &w, nullptr));
    const bool acyclic = check_dag(w);
    if (o.json) {
        Json j;
        j["t_lo"] = w.t_lo();
        j["t_hi"] = w.t_hi();
        j["acyclic"] = acyclic;
        Json nodes = Json::array();
        for (std::size_t v = 0; v < w.nodes().size(); ++v) {
            Json n;
            n["id"] = name(v);
            n["kind"] = std::string(to_string(w.kind(v)));
            nodes.push_back(n);
        }
        j["nodes"] = nodes;
        Json edges = Json::array();
        for (const UnfoldedEdge& e : w.edges()) edges.push_back(Json::array({name(e.from), name(e.to)}));
        j["edges"] = edges;
        Json order = Json::array();
        for (std::size_t v : w.topo_order()) order.push_back(name(v));
        j["topo_order"] = order;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    std::string order;
    for (std::size_t v : w.topo_order()) order += (order.empty() ? "" : " ") + name(v);
    print_rows(out, {{"window", "[" + std::to_string(w.t_lo()) + ", " + std::to_string(w.t_hi()) + ")"},
                     {"nodes", std::to_string(w.nodes().size())},
                     {"edges", std::to_string(w.edges().size())},
                     {"acyclic", bool_text(acyclic)},
                     {"topo_order", order}});
    return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    const MeasureReport r = measure(g, EnumerationLimits::from_environment());
    const std::int64_t n_max = o.max_n.value_or(default_horizon(g));
    if (n_max < 1) throw UsageError("--max-n must be positive");
    const ConvergenceReport c = convergence(g, r, n_max);
    const bool periodic = periodicity_check(g, std::min<std::int64_t>(n_max, 40));
    const bool agrees = c.longest_verified && c.shortest_verified && c.slope_longest == r.recurrent_depth &&
                        c.slope_shortest == r.skip_reciprocal && c.df_max == r.feedforward_depth &&
                        c.bound_violations == 0;
    if (o.json) {
        Json j;
        j["max_n"] = n_max;
        j["slope_longest"] = c.slope_longest.to_string();
        j["slope_shortest"] = c.slope_shortest.to_string();
        j["longest_verified"] = c.longest_verified;
        j["shortest_verified"] = c.shortest_verified;
        j["subsequence_only"] = c.subsequence_only;
        j["affine_onset"] = c.affine_onset;
        j["period_q"] = c.period_q;
        j["period_q_shortest"] = c.period_q_shortest;
        j["df_max"] = c.df_max.to_string();
        j["bound_violations"] = c.bound_violations;
        j["bound_attained"] = c.bound_attained;
        j["periodic"] = periodic;
        j["agrees_with_closed_form"] = agrees;
        out << j.dump(2) << "\n";
    } else {
        print_rows(out, {{"max_n", std::to_string(n_max)},
                         {"slope_longest", c.slope_longest.to_string()},
                         {"slope_shortest", c.slope_shortest.to_string()},
                         {"longest_verified", bool_text(c.longest_verified)},
                         {"shortest_verified", bool_text(c.shortest_verified)},
                         {"subsequence_only", bool_text(c.subsequence_only)},
                         {"affine_onset", std::to_string(c.affine_onset)},
                         {"period_q", std::to_string(c.period_q)},
                         {"period_q_shortest", std::to_string(c.period_q_shortest)},
                         {"df_max", c.df_max.to_string()},
                         {"bound_violations", std::to_string(c.bound_violations)},
                         {"bound_attained", bool_text(c.bound_attained)},
                         {"periodic", bool_text(periodic)},
                         {"agrees_with_closed_form", bool_text(agrees)}});
    }
    return agrees && periodic ? kExitOk : kExitDomainError;
}

int cmd_fixture(const Options& o, std::ostream& out) {
    CyclicGraph g = [&] {
        if (o.family == "random") {
            std::mt19937_64 rng(o.seed);
            RandomGraphOptions options;
            options.unidirectional = true;
            options.connected_core = true;
            options.require_io_path = true;
            return random_valid_graph(rng, options);
        }
        const auto family = parse_family(o.family);
        if (!family) throw UsageError("unknown fixture family '" + o.family + "'");
        FixtureSpec spec{*family, o.k, o.variant, o.depth_r, o.depth_f};
        return generate(spec);
    }();
    const std::string text = serialize(g);
    if (o.output.empty() || o.output == "-") {
        out << text;
    } else {
        write_file(o.output, text);
        if (o.json) {
            Json j;
            j["written"] = o.output;
            j["family"] = o.family;
            out << j.dump(2) << "\n";
        }
    }
    return kExitOk;
}

int cmd_exec(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    const auto cell = parse_cell_kind(o.cell);
    if (!cell) throw UsageError("--cell must be tanh or mdlstm");
    if (o.steps < 1) throw UsageError("--steps must be positive");
    const NetworkConfig config = NetworkConfig::random(g, *cell, o.hidden, o.seed, -0.5, 0.5);
    const UnfoldedWindow w = unfold(g, 0, o.steps);
    std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    InputSequence inputs;
    for (std::int64_t t = 0; t < o.steps; ++t) {
        Eigen::VectorXd x(o.hidden);
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
        inputs[t] = x;
    }
    const ExecutionTrace trace = forward(w, config, inputs, *cell);
    auto vec = [](const Eigen::VectorXd& v) {
        std::vector<double> out(v.data(), v.data() + v.size());
        return out;
    };
    if (o.json) {
        Json j;
        j["cell"] = std::string(to_string(*cell));
        j["steps"] = o.steps;
        Json states = Json::array();
        for (std::size_t v = 0; v < w.nodes().size(); ++v) {
            Json s;
            s["node"] = w.label(v) + "@" + std::to_string(w.nodes()[v].time);
            s["kind"] = std::string(to_string(w.kind(v)));
            s["hidden"] = vec(trace.states[v].hidden);
            if (*cell == CellKind::MdLstm) s["cell"] = vec(trace.states[v].cell);
            states.push_back(s);
        }
        j["states"] = states;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    Rows rows;
    for (std::size_t v = 0; v < w.nodes().size(); ++v) {
        if (w.kind(v) != NodeKind::Output) continue;
        std::ostringstream values;
        values << std::setprecision(6);
        for (Eigen::Index i = 0; i < trace.states[v].hidden.size(); ++i) {
            values << (i ? " " : "") << trace.states[v].hidden[i];
        }
        rows.emplace_back(w.label(v) + "@" + std::to_string(w.nodes()[v].time), values.str());
    }
    print_rows(out, rows);
    return kExitOk;
}

int cmd_sensitivity(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    if (o.horizon < 0) throw UsageError("--horizon must be non-negative");
    const NetworkConfig config = NetworkConfig::random(g, CellKind::Tanh, o.hidden, o.seed);
    const auto sens = sensitivity(g, config, o.horizon);
    const auto reach = io_reachability(unfold(g, 0, o.horizon + 1));
    const bool matches = sens == reach;
    if (o.json) {
        Json j;
        j["horizon"] = o.horizon;
        j["sensitivity"] = sens;
        j["reachability"] = reach;
        j["matches_reachability"] = matches;
        out << j.dump() << "\n";
    } else {
        out << "input time -> output times (1 = output responds to the input)\n";
        for (std::size_t t = 0; t < sens.size(); ++t) {
            out << std::setw(4) << t << "  ";
            for (bool b : sens[t]) out << (b ? '1' : '.');
            out << "\n";
        }
        out << "matches_reachability  " << bool_text(matches) << "\n";
    }
    return matches ? kExitOk : kExitDomainError;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
    const CyclicGraph g = load(o);
    std::optional<MeasureReport> report;
    if (o.with_report) report = measure(g, EnumerationLimits::from_environment());
    const std::string dot = export_dot(g, nullptr, report ? &*report : nullptr);
    if (o.output.empty() || o.output == "-") {
        out << dot;
    } else {
        write_file(o.output, dot);
    }
    return kExitOk;
}

bool is_usage_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DuplicateNode:
    case ErrorCode::DuplicateEdge:
    case ErrorCode::UnknownNodeReference:
    case ErrorCode::InvalidFixtureParams:
        return true;
    default:
        return false;
    }
}

void report_error(const Options& o, std::ostream& out, std::ostream& err, std::string_view code,
                  const std::string& message) {
    err << "error[" << code << "]: " << message << "\n";
    if (o.json) {
        Json j;
        j["error"]["code"] = std::string(code);
        j["error"]["message"] = message;
        out << j.dump(2) << "\n";
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Graph-theoretic analysis of recurrent architectures", "archlab"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_flag("--json", o.json, "Emit machine-readable JSON");
    app.add_option("--seed", o.seed, "Seed for random generation");

    auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "Architecture file")->required(); };

    auto* validate_cmd = app.add_subcommand("validate", "Check the RNN cyclic graph conditions");
    file_arg(validate_cmd);

    auto* measures_cmd = app.add_subcommand("measures", "Recurrent depth, feedforward depth and skip coefficient");
    file_arg(measures_cmd);

    auto* unfold_cmd = app.add_subcommand("unfold", "Materialize a window of the unfolded graph");
    file_arg(unfold_cmd);
    unfold_cmd->add_option("--from", o.from, "First time step (inclusive)")->required();
    unfold_cmd->add_option("--to", o.to, "Last time step (exclusive)")->required();
    unfold_cmd->add_option("--dot", o.dot_path, "Also write the window as DOT");

    auto* converge_cmd = app.add_subcommand("converge", "Cross-check measures against brute-force path lengths");
    file_arg(converge_cmd);
    converge_cmd->add_option("--max-n", o.max_n, "Horizon (default 64*m*max|sigma|)");

    auto* fixture_cmd = app.add_subcommand("fixture", "Write a reference architecture");
    fixture_cmd->add_option("--family", o.family, "sh|st|bu|td|depth-grid|skip|stack-skip|negative-sh|doubled-sh|"
                                                  "bidirectional|skip-only|clockwork|ring3|random")
        ->required();
    fixture_cmd->add_option("--k", o.k, "Skip length");
    fixture_cmd->add_option("--variant", o.variant, "stack-skip variant (1-4)");
    fixture_cmd->add_option("--dr", o.depth_r, "depth-grid recurrent depth");
    fixture_cmd->add_option("--df", o.depth_f, "depth-grid feedforward depth");
    fixture_cmd->add_option("-o,--output", o.output, "Output path (stdout when omitted)");

    auto* exec_cmd = app.add_subcommand("exec", "Run the reference forward pass with seeded weights");
    file_arg(exec_cmd);
    exec_cmd->add_option("--steps", o.steps, "Number of time steps")->required();
    exec_cmd->add_option("--cell", o.cell, "tanh or mdlstm");
    exec_cmd->add_option("--hidden", o.hidden, "Vector width of every node");

    auto* sensitivity_cmd = app.add_subcommand("sensitivity", "Finite-difference input/output sensitivity matrix");
    file_arg(sensitivity_cmd);
    sensitivity_cmd->add_option("--horizon", o.horizon, "Last time step")->required();
    sensitivity_cmd->add_option("--hidden", o.hidden, "Vector width of every node");

    auto* dot_cmd = app.add_subcommand("export-dot", "Render the cyclic graph as DOT");
    file_arg(dot_cmd);
    dot_cmd->add_flag("--report", o.with_report, "Colour the measure witnesses");
    dot_cmd->add_option("-o,--output", o.output, "Output path (stdout when omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o, out);
        if (measures_cmd->parsed()) return cmd_measures(o, out);
        if (unfold_cmd->parsed()) return cmd_unfold(o, out);
        if (converge_cmd->parsed()) return cmd_converge(o, out);
        if (fixture_cmd->parsed()) return cmd_fixture(o, out);
        if (exec_cmd->parsed()) return cmd_exec(o, out);
        if (sensitivity_cmd->parsed()) return cmd_sensitivity(o, out);
        if (dot_cmd->parsed()) return cmd_export_dot(o, out);
    } catch (const UsageError& e) {
        report_error(o, out, err, "USAGE", e.what());
        return kExitUsageError;
    } catch (const Error& e) {
        report_error(o, out, err, e.code_name(), e.what());
        return is_usage_code(e.code()) ? kExitUsageError : kExitDomainError;
    }
    return kExitUsageError;
}

} // namespace archlab::cli
