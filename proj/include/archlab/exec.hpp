#pragma once

#include "archlab/archgraph.hpp"
#include "archlab/unfold.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace archlab {

enum class CellKind { Tanh, MdLstm };

std::string_view to_string(CellKind cell);
std::optional<CellKind> parse_cell_kind(std::string_view text);

/// Which affine map a weight matrix feeds.
enum class Role { Transform, BlockInput, InputGate, OutputGate, ForgetGate };

/// Weight on the contribution of cyclic edge `edge`'s source. For forget
/// gates, `gate_edge` names the incoming edge whose gate is being computed;
/// otherwise it equals `edge`.
struct WeightKey {
    Role role = Role::Transform;
    std::size_t edge = 0;
    std::size_t gate_edge = 0;

    friend auto operator<=>(const WeightKey&, const WeightKey&) = default;
};

struct BiasKey {
    Role role = Role::Transform;
    std::string label;

    friend auto operator<=>(const BiasKey&, const BiasKey&) = default;
};

/// Parameters shared across time by every unfolded copy of a cyclic node or
/// edge. Missing biases are zero; forget-gate biases are per incoming edge.
struct NetworkConfig {
    std::map<std::string, int> size;               // vector width per label
    std::map<WeightKey, Eigen::MatrixXd> weights;  // rows = target width, cols = source width
    std::map<BiasKey, Eigen::VectorXd> biases;
    std::map<std::size_t, Eigen::VectorXd> forget_biases; // keyed by incoming cyclic edge
    std::uint64_t seed = 0;

    int width(const std::string& label) const;

    /// All weights drawn uniformly from [lo, hi] with a seeded generator,
    /// biases zero. Every label gets width `hidden`.
    static NetworkConfig random(const CyclicGraph& graph, CellKind cell, int hidden, std::uint64_t seed,
                                double lo = 0.1, double hi = 0.5);
    /// All weights and biases zero.
    static NetworkConfig zeros(const CyclicGraph& graph, CellKind cell, int hidden);
};

struct NodeState {
    Eigen::VectorXd hidden; // h_v
    Eigen::VectorXd cell;   // c_v, empty for tanh cells
};

struct ExecutionTrace {
    CellKind cell = CellKind::Tanh;
    std::vector<NodeState> states; // indexed like UnfoldedWindow::nodes()
};

/// Inputs by absolute time; every input node at that time receives the vector.
using InputSequence = std::map<std::int64_t, Eigen::VectorXd>;

/// Evaluates every hidden and output node of the window in topological
/// order. Sources before the window contribute zero state.
/// Throws Error(MissingInput) and Error(DimensionMismatch).
ExecutionTrace forward(const UnfoldedWindow& window, const NetworkConfig& config, const InputSequence& inputs,
                       CellKind cell);

/// entry[t][t2] is true iff a central finite difference of the input at time
/// t moves some output at time t2 by a derivative above 1e-9. Requires
/// strictly positive weights; times run over [0, horizon].
std::vector<std::vector<bool>> sensitivity(const CyclicGraph& graph, const NetworkConfig& config,
                                           std::int64_t horizon);

} // namespace archlab
