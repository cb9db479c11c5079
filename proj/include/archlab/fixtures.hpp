#pragma once

#include "archlab/archgraph.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace archlab {

/// Architecture families used throughout the test suites.
///
/// Canonical wirings (sigma = 0 unless noted):
///   Sh            x->h, h->h (1), h->y
///   St            x->h1, h1->h1 (1), h1->h2, h2->h2 (1), h2->y
///   Bu            St + h1->h2 (1)
///   Td            St + h2->h1 (1)
///   DepthGrid     chain x->h1->...->h_{f-1}->y plus a cycle h1->c1->...->c_{r-1}->h1
///                 whose closing edge carries sigma 1 (a self-loop when r == 1)
///   Skip          Sh + h->h (k)
///   StackSkip     St + {nothing, h1->h2 (k), h2->h1 (k), h2->h2 (k)} for variants 1..4
///   NegativeSh    Sh with the self-loop at sigma -1
///   DoubledSh     period 2; Sh's hidden chain split across both time indices
///   Bidirectional h1->h1 (1), h2->h2 (-1), h1->h2, x->h1, h2->y
///   SkipOnly      x->h, h->h (k), h->y
///   Clockwork     period 2; input only at even steps, output only at odd
///                 steps, hidden pair h@0 <-> h@1 (1 each), h@0->h@0 (2)
///   Ring3         period 3; ring h@0 -> h@1 -> h@2 -> h@0 (1 each), h@1->h@1 (3),
///                 input at time index 0, output at time index 2
enum class Family {
    Sh,
    St,
    Bu,
    Td,
    DepthGrid,
    Skip,
    StackSkip,
    NegativeSh,
    DoubledSh,
    Bidirectional,
    SkipOnly,
    Clockwork,
    Ring3,
};

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

struct FixtureSpec {
    Family family = Family::Sh;
    std::int64_t k = 0;       // Skip, StackSkip, SkipOnly
    int variant = 0;          // StackSkip, 1..4
    std::int64_t depth_r = 0; // DepthGrid
    std::int64_t depth_f = 0; // DepthGrid

    static FixtureSpec of(Family family) { return FixtureSpec{family}; }
    static FixtureSpec depth_grid(std::int64_t r, std::int64_t f) { return FixtureSpec{Family::DepthGrid, 0, 0, r, f}; }
    static FixtureSpec skip(std::int64_t k) { return FixtureSpec{Family::Skip, k}; }
    static FixtureSpec skip_only(std::int64_t k) { return FixtureSpec{Family::SkipOnly, k}; }
    static FixtureSpec stack_skip(int variant, std::int64_t k) { return FixtureSpec{Family::StackSkip, k, variant}; }
};

/// Throws Error(InvalidFixtureParams) for out-of-range parameters.
CyclicGraph generate(const FixtureSpec& spec);

struct RandomGraphOptions {
    std::size_t max_nodes = 8;
    std::int64_t max_abs_sigma = 4;
    std::int64_t max_period = 3;
    bool allow_negative_sigma = true;
    /// Reject bidirectional draws.
    bool unidirectional = false;
    /// Hidden nodes form one strongly connected component.
    bool connected_core = false;
    /// Reject draws where no output is reachable from an input.
    bool require_io_path = false;
    /// Probability of time-reversing a unidirectional draw.
    double negative_orientation_rate = 0.0;
};

/// Rejection-samples a graph that passes validate().
CyclicGraph random_valid_graph(std::mt19937_64& rng, const RandomGraphOptions& options = {});

} // namespace archlab
