#pragma once

#include "archlab/archgraph.hpp"
#include "archlab/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace archlab {

/// l(cycle) / |sigma-sum(cycle)|. The absolute value folds negatively
/// oriented graphs onto their time reversal.
Rational cycle_ratio(const SimpleCycle& cycle);

struct CycleRatio {
    Rational value;
    SimpleCycle witness;
};

struct FeedforwardDepth {
    Rational value;
    EdgePath witness;
};

struct SkipCoefficient {
    Rational reciprocal;  // j, the minimum cycle ratio
    Rational coefficient; // s = 1 / j
    SimpleCycle witness;
};

/// Maximum cycle ratio over all simple cycles. Requires a unidirectional
/// graph; throws Error(BidirectionalGraph) otherwise.
CycleRatio recurrent_depth(const CyclicGraph& graph, const EnumerationLimits& limits = {});

/// max over simple input->output paths of l - sigma * d_r (sigma taken with
/// the graph's orientation sign). Simple paths suffice: splicing a cycle
/// into a path changes the objective by l(cycle) - |sigma(cycle)| * d_r <= 0.
FeedforwardDepth feedforward_depth(const CyclicGraph& graph, const Rational& recurrent_depth,
                                   const EnumerationLimits& limits = {});

SkipCoefficient skip_coefficient(const CyclicGraph& graph, const EnumerationLimits& limits = {});

/// True iff the unfolded copy of `witness` touches every time step, i.e. its
/// running sigma prefix sums cover every residue modulo |sigma-sum|.
bool check_mild_assumption(const CyclicGraph& graph, const SimpleCycle& witness);

/// Measures of one strongly connected component of a bidirectional graph.
struct ComponentReport {
    std::vector<std::size_t> nodes;
    Orientation orientation = Orientation::Positive;
    Rational recurrent_depth;
    Rational skip_reciprocal;
    Rational skip_coefficient;
    SimpleCycle witness_max_cycle;
    SimpleCycle witness_min_cycle;
    std::optional<Rational> feedforward_depth; // absent when no port path crosses the component
    EdgePath witness_io_path;
    bool mild_assumption_dr = false;
    bool mild_assumption_s = false;
};

/// For unidirectional graphs the scalar fields are populated and
/// `components` is empty. For bidirectional graphs the scalar fields keep
/// their defaults and one ComponentReport per cyclic component is returned.
struct MeasureReport {
    Orientation orientation = Orientation::Positive;
    std::int64_t minimal_period = 1;
    Rational recurrent_depth;
    Rational feedforward_depth;
    Rational skip_coefficient;
    Rational skip_reciprocal;
    SimpleCycle witness_max_cycle;
    SimpleCycle witness_min_cycle;
    EdgePath witness_io_path;
    bool mild_assumption_dr = false;
    bool mild_assumption_s = false;
    std::vector<ComponentReport> components;

    bool unidirectional() const noexcept { return orientation != Orientation::Bidirectional; }
};

/// Validates the graph (Error(InvalidGraph) on failure) and computes every
/// measure with witnesses.
MeasureReport measure(const CyclicGraph& graph, const EnumerationLimits& limits = {});

/// Every simple cycle attaining the maximum (max == true) or minimum ratio.
std::vector<SimpleCycle> extremal_cycles(const CyclicGraph& graph, bool max, const EnumerationLimits& limits = {});

} // namespace archlab
