#pragma once

#include "archlab/archgraph.hpp"
#include "archlab/measures.hpp"
#include "archlab/rational.hpp"
#include "archlab/unfold.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace archlab {

/// Path lengths (edge counts) from time i to time i + n in the unfolding.
/// An entry is absent when no qualifying path exists.
struct PathLengths {
    std::optional<std::int64_t> longest_any;  // any node at i  -> any node at i + n
    std::optional<std::int64_t> longest_io;   // input at i     -> output at i + n
    std::optional<std::int64_t> shortest_any; // any node at i  -> any node at i + n

    friend bool operator==(const PathLengths&, const PathLengths&) = default;
};

struct OracleOptions {
    /// Initial window padding; defaults to |V| * m * max(1, max|sigma|).
    std::optional<std::int64_t> margin;
    /// Lower end of the n range; defaults to -(|V| - 1) * max|sigma| when
    /// some sigma is negative, else 0.
    std::optional<std::int64_t> n_min;
    int max_doublings = 4;
    UnfoldOptions unfold;
};

class PathLengthTable {
public:
    PathLengthTable(std::int64_t base_time, std::int64_t n_min, std::vector<PathLengths> values, std::int64_t margin,
                    bool stabilized)
        : base_time_(base_time), n_min_(n_min), values_(std::move(values)), margin_(margin), stabilized_(stabilized) {}

    std::int64_t base_time() const noexcept { return base_time_; }
    std::int64_t n_min() const noexcept { return n_min_; }
    std::int64_t n_max() const noexcept { return n_min_ + static_cast<std::int64_t>(values_.size()) - 1; }
    std::int64_t margin() const noexcept { return margin_; }
    bool stabilized() const noexcept { return stabilized_; }
    const PathLengths& at(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n - n_min_)); }
    const std::vector<PathLengths>& values() const noexcept { return values_; }

private:
    std::int64_t base_time_;
    std::int64_t n_min_;
    std::vector<PathLengths> values_;
    std::int64_t margin_;
    bool stabilized_;
};

std::int64_t default_margin(const CyclicGraph& graph);
std::int64_t default_n_min(const CyclicGraph& graph);
/// 64 * m * max(1, max|sigma|).
std::int64_t default_horizon(const CyclicGraph& graph);

/// Longest and shortest path lengths by dynamic programming over a
/// topologically ordered window [i + n_min - W, i + n_max + W]. The margin W
/// is doubled until the table stops changing (or max_doublings is reached,
/// in which case stabilized() is false).
PathLengthTable path_table(const CyclicGraph& graph, std::int64_t base_time, std::int64_t n_max,
                           const OracleOptions& options = {});

/// Same n range and identical entries (base times may differ).
bool tables_match(const PathLengthTable& lhs, const PathLengthTable& rhs);

struct ConvergenceReport {
    Rational slope_longest;
    Rational slope_shortest;
    bool longest_verified = false;
    bool shortest_verified = false;
    /// True when a recurrence could only be verified along n in Q*Z.
    bool subsequence_only = false;
    std::int64_t affine_onset = 0;
    std::int64_t period_q = 0;          // stride for longest paths
    std::int64_t period_q_shortest = 0; // stride for shortest paths
    Rational df_max;
    std::int64_t bound_violations = 0;
    bool bound_attained = false;
};

/// Verifies the eventual-affine recurrences D_i(n + Q) = D_i(n) + slope_i * Q
/// for longest and shortest paths on every base residue i. Q is m times the
/// lcm of |sigma| over the extremal cycles of each cyclic component. A base
/// time that cannot reach the extremal component has a smaller slope_i, so
/// slope_longest is the max over residues and slope_shortest the min. Also
/// measures the input-output excess over n * d_r. Negatively oriented graphs are analysed through their time
/// reversal. Throws Error(NotStabilized) if any table fails to stabilize.
ConvergenceReport convergence(const CyclicGraph& graph, const MeasureReport& report, std::int64_t n_max,
                              const OracleOptions& options = {});

/// D_i(n) == D_{i+m}(n) and d_i(n) == d_{i+m}(n), presence included, for all
/// residues i and all tested n.
bool periodicity_check(const CyclicGraph& graph, std::int64_t n_max, const OracleOptions& options = {});

struct BoundCheck {
    std::int64_t violations = 0;
    bool attained = false;
};

/// Counts (i, n) with D*_i(n) > n * d_r + d_f and reports whether equality
/// is reached somewhere.
BoundCheck prop1_bound_check(const CyclicGraph& graph, const MeasureReport& report, std::int64_t n_max,
                             const OracleOptions& options = {});

} // namespace archlab
