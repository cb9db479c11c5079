#include "archlab/exec.hpp"

#include "archlab/error.hpp"

#include <cmath>
#include <random>

namespace archlab {

std::string_view to_string(CellKind cell) { return cell == CellKind::Tanh ? "tanh" : "mdlstm"; }

std::optional<CellKind> parse_cell_kind(std::string_view text) {
    if (text == "tanh") return CellKind::Tanh;
    if (text == "mdlstm") return CellKind::MdLstm;
    return std::nullopt;
}

int NetworkConfig::width(const std::string& label) const {
    auto it = size.find(label);
    if (it == size.end()) throw Error(ErrorCode::DimensionMismatch, "no width configured for label '" + label + "'");
    return it->second;
}

namespace {

template <typename Fill>
NetworkConfig build_config(const CyclicGraph& graph, CellKind cell, int hidden, Fill&& fill) {
    if (hidden < 1) throw Error(ErrorCode::InvalidConfig, "hidden width must be positive");
    NetworkConfig config;
    for (const Node& n : graph.nodes()) config.size[n.id.label] = hidden;
    auto matrix = [&](std::size_t e) {
        const Edge& edge = graph.edge(e);
        Eigen::MatrixXd w(config.width(graph.node(edge.to).id.label), config.width(graph.node(edge.from).id.label));
        for (Eigen::Index c = 0; c < w.cols(); ++c) {
            for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = fill();
        }
        return w;
    };
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        if (cell == CellKind::Tanh) {
            config.weights[WeightKey{Role::Transform, e, e}] = matrix(e);
            continue;
        }
        for (Role role : {Role::BlockInput, Role::InputGate, Role::OutputGate}) {
            config.weights[WeightKey{role, e, e}] = matrix(e);
        }
        for (std::size_t gate : graph.in_edges(graph.edge(e).to)) {
            config.weights[WeightKey{Role::ForgetGate, e, gate}] = matrix(e);
        }
    }
    return config;
}

const Eigen::MatrixXd& weight(const NetworkConfig& config, const WeightKey& key, Eigen::Index rows, Eigen::Index cols) {
    auto it = config.weights.find(key);
    if (it == config.weights.end()) {
        throw Error(ErrorCode::DimensionMismatch, "missing weight for edge " + std::to_string(key.edge));
    }
    if (it->second.rows() != rows || it->second.cols() != cols) {
        throw Error(ErrorCode::DimensionMismatch, "weight for edge " + std::to_string(key.edge) + " is " +
                                                      std::to_string(it->second.rows()) + "x" +
                                                      std::to_string(it->second.cols()) + ", expected " +
                                                      std::to_string(rows) + "x" + std::to_string(cols));
    }
    return it->second;
}

Eigen::VectorXd bias_or_zero(const std::optional<Eigen::VectorXd>& bias, Eigen::Index width) {
    if (!bias) return Eigen::VectorXd::Zero(width);
    if (bias->size() != width) throw Error(ErrorCode::DimensionMismatch, "bias has wrong width");
    return *bias;
}

std::optional<Eigen::VectorXd> lookup_bias(const NetworkConfig& config, Role role, const std::string& label) {
    auto it = config.biases.find(BiasKey{role, label});
    if (it == config.biases.end()) return std::nullopt;
    return it->second;
}

Eigen::VectorXd logistic(const Eigen::VectorXd& x) { return (1.0 + (-x.array()).exp()).inverse().matrix(); }

Eigen::VectorXd tanh(const Eigen::VectorXd& x) { return x.array().tanh().matrix(); }

struct Incoming {
    std::size_t edge;
    const NodeState* source; // null when the source lies before the window
};

} // namespace

NetworkConfig NetworkConfig::random(const CyclicGraph& graph, CellKind cell, int hidden, std::uint64_t seed, double lo,
                                    double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    NetworkConfig config = build_config(graph, cell, hidden, [&] { return dist(rng); });
    config.seed = seed;
    return config;
}

NetworkConfig NetworkConfig::zeros(const CyclicGraph& graph, CellKind cell, int hidden) {
    return build_config(graph, cell, hidden, [] { return 0.0; });
}

ExecutionTrace forward(const UnfoldedWindow& window, const NetworkConfig& config, const InputSequence& inputs,
                       CellKind cell) {
    const CyclicGraph& graph = window.graph();
    if (window.topo_order().size() != window.nodes().size()) {
        throw Error(ErrorCode::InvalidGraph, "cannot execute a window that contains a directed cycle");
    }
    ExecutionTrace trace;
    trace.cell = cell;
    trace.states.resize(window.nodes().size());

    for (std::size_t v : window.topo_order()) {
        const UnfoldedNode& node = window.nodes()[v];
        const Node& cyclic = graph.node(node.cyclic);
        const int width = config.width(cyclic.id.label);
        NodeState& state = trace.states[v];

        if (cyclic.kind == NodeKind::Input) {
            auto it = inputs.find(node.time);
            if (it == inputs.end()) {
                throw Error(ErrorCode::MissingInput, "no input supplied for time " + std::to_string(node.time));
            }
            if (it->second.size() != width) {
                throw Error(ErrorCode::DimensionMismatch, "input at time " + std::to_string(node.time) + " has width " +
                                                              std::to_string(it->second.size()) + ", expected " +
                                                              std::to_string(width));
            }
            state.hidden = it->second;
            if (cell == CellKind::MdLstm) state.cell = Eigen::VectorXd::Zero(width);
            continue;
        }

        std::vector<Incoming> incoming;
        for (std::size_t e : graph.in_edges(node.cyclic)) {
            const Edge& edge = graph.edge(e);
            const auto source = window.find(node.time - edge.sigma, edge.from);
            incoming.push_back(Incoming{e, source ? &trace.states[*source] : nullptr});
        }
        auto source_hidden = [&](const Incoming& in) -> Eigen::VectorXd {
            if (in.source != nullptr) return in.source->hidden;
            return Eigen::VectorXd::Zero(config.width(graph.node(graph.edge(in.edge).from).id.label));
        };
        auto affine = [&](Role role, std::size_t gate_edge, const Eigen::VectorXd& bias) {
            Eigen::VectorXd sum = bias;
            for (const Incoming& in : incoming) {
                const Eigen::VectorXd h = source_hidden(in);
                const WeightKey key{role, in.edge, role == Role::ForgetGate ? gate_edge : in.edge};
                sum.noalias() += weight(config, key, width, h.size()) * h;
            }
            return sum;
        };

        const std::string& label = cyclic.id.label;
        if (cell == CellKind::Tanh) {
            state.hidden = tanh(affine(Role::Transform, 0, bias_or_zero(lookup_bias(config, Role::Transform, label), width)));
        } else {
            const Eigen::VectorXd z =
                tanh(affine(Role::BlockInput, 0, bias_or_zero(lookup_bias(config, Role::BlockInput, label), width)));
            const Eigen::VectorXd i =
                logistic(affine(Role::InputGate, 0, bias_or_zero(lookup_bias(config, Role::InputGate, label), width)));
            const Eigen::VectorXd o =
                logistic(affine(Role::OutputGate, 0, bias_or_zero(lookup_bias(config, Role::OutputGate, label), width)));
            Eigen::VectorXd c = i.cwiseProduct(z);
            for (const Incoming& in : incoming) {
                std::optional<Eigen::VectorXd> fb;
                if (auto it = config.forget_biases.find(in.edge); it != config.forget_biases.end()) fb = it->second;
                const Eigen::VectorXd f = logistic(affine(Role::ForgetGate, in.edge, bias_or_zero(fb, width)));
                if (in.source != nullptr) {
                    if (in.source->cell.size() != width) {
                        throw Error(ErrorCode::DimensionMismatch, "cell state width differs along edge " +
                                                                      std::to_string(in.edge));
                    }
                    c += f.cwiseProduct(in.source->cell);
                }
            }
            state.cell = c;
            state.hidden = o.cwiseProduct(c);
        }
        if (!state.hidden.allFinite()) {
            throw Error(ErrorCode::InvalidConfig, "non-finite activation at " + label + "@" + std::to_string(node.time));
        }
    }
    return trace;
}

std::vector<std::vector<bool>> sensitivity(const CyclicGraph& graph, const NetworkConfig& config, std::int64_t horizon) {
    for (const auto& [key, w] : config.weights) {
        if (key.role != Role::Transform) {
            throw Error(ErrorCode::InvalidConfig, "sensitivity analysis needs a tanh network");
        }
        if ((w.array() <= 0.0).any()) {
            throw Error(ErrorCode::InvalidConfig, "sensitivity analysis needs strictly positive weights");
        }
    }
    constexpr double kStep = 1e-4;
    constexpr double kThreshold = 1e-9;

    const UnfoldedWindow window = unfold(graph, 0, horizon + 1);
    int input_width = 0;
    for (const Node& n : graph.nodes()) {
        if (n.kind != NodeKind::Input) continue;
        const int w = config.width(n.id.label);
        if (input_width != 0 && w != input_width) {
            throw Error(ErrorCode::DimensionMismatch, "input labels must share one width");
        }
        input_width = w;
    }
    InputSequence base;
    for (std::int64_t t = 0; t <= horizon; ++t) base[t] = Eigen::VectorXd::Zero(input_width);

    const auto span = static_cast<std::size_t>(horizon + 1);
    std::vector<std::vector<bool>> entry(span, std::vector<bool>(span, false));
    for (std::int64_t t = 0; t <= horizon; ++t) {
        InputSequence plus = base;
        InputSequence minus = base;
        plus[t].array() += kStep;
        minus[t].array() -= kStep;
        const ExecutionTrace up = forward(window, config, plus, CellKind::Tanh);
        const ExecutionTrace down = forward(window, config, minus, CellKind::Tanh);
        for (std::size_t v = 0; v < window.nodes().size(); ++v) {
            if (window.kind(v) != NodeKind::Output) continue;
            const double derivative =
                (up.states[v].hidden - down.states[v].hidden).cwiseAbs().maxCoeff() / (2.0 * kStep);
            if (derivative > kThreshold) {
                entry[static_cast<std::size_t>(t)][static_cast<std::size_t>(window.nodes()[v].time)] = true;
            }
        }
    }
    return entry;
}

} // namespace archlab
