#pragma once

#include "archlab/archgraph.hpp"
#include "archlab/error.hpp"
#include "archlab/fixtures.hpp"
#include "archlab/rational.hpp"

#include <doctest.h>

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace archlab::test {

inline CyclicGraph fixture(Family family) { return generate(FixtureSpec::of(family)); }

inline Node in(std::string label, std::int64_t t = 0) { return {{std::move(label), t}, NodeKind::Input}; }
inline Node hid(std::string label, std::int64_t t = 0) { return {{std::move(label), t}, NodeKind::Hidden}; }
inline Node out(std::string label, std::int64_t t = 0) { return {{std::move(label), t}, NodeKind::Output}; }

inline EdgeSpec edge(std::string from, std::string to, std::int64_t sigma, std::int64_t ti = 0, std::int64_t tj = 0) {
    return {{std::move(from), ti}, {std::move(to), tj}, sigma};
}

inline ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected archlab::Error");
    return ErrorCode::InvalidGraph;
}

/// Every named fixture plus the parameter grids used by the golden tables.
inline std::vector<std::pair<std::string, CyclicGraph>> all_fixtures() {
    std::vector<std::pair<std::string, CyclicGraph>> out;
    for (Family f : {Family::Sh, Family::St, Family::Bu, Family::Td, Family::NegativeSh, Family::DoubledSh,
                     Family::Clockwork, Family::Ring3}) {
        out.emplace_back(std::string(family_name(f)), fixture(f));
    }
    for (int r = 1; r <= 3; ++r) {
        for (int f = 2; f <= 4; ++f) {
            out.emplace_back("depth-grid-" + std::to_string(r) + "-" + std::to_string(f),
                             generate(FixtureSpec::depth_grid(r, f)));
        }
    }
    for (int k : {3, 5, 7, 9, 13, 21}) out.emplace_back("skip-" + std::to_string(k), generate(FixtureSpec::skip(k)));
    for (int k : {5, 9}) {
        for (int v = 1; v <= 4; ++v) {
            out.emplace_back("stack-skip-" + std::to_string(v) + "-" + std::to_string(k),
                             generate(FixtureSpec::stack_skip(v, k)));
        }
    }
    out.emplace_back("skip-only-3", generate(FixtureSpec::skip_only(3)));
    return out;
}

/// Independent check of extremal cycle ratios: lambda is the maximum ratio
/// iff no cycle has positive weight under w(e) = 1 - lambda * |sigma(e)|
/// (sign-adjusted), detected by Bellman-Ford relaxation in exact arithmetic.
inline bool has_cycle_beating(const CyclicGraph& g, const Rational& lambda, int sign, bool maximize) {
    const std::size_t n = g.node_count();
    std::vector<Rational> dist(n, Rational(0));
    auto weight = [&](const Edge& e) {
        const Rational w = Rational(1) - lambda * Rational(sign * e.sigma);
        return maximize ? w : -w;
    };
    for (std::size_t round = 0; round <= n; ++round) {
        bool changed = false;
        for (const Edge& e : g.edges()) {
            const Rational candidate = dist[e.from] + weight(e);
            if (candidate > dist[e.to]) {
                dist[e.to] = candidate;
                changed = true;
            }
        }
        if (!changed) return false;
    }
    return true;
}

/// Longest input->output walk under w(e) = 1 - d_r * sign * sigma(e);
/// finite because no cycle has positive weight at d_r.
inline std::optional<Rational> longest_io_walk(const CyclicGraph& g, const Rational& d_r, int sign) {
    const std::size_t n = g.node_count();
    std::vector<std::optional<Rational>> dist(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (g.node(v).kind == NodeKind::Input) dist[v] = Rational(0);
    }
    for (std::size_t round = 0; round < n; ++round) {
        for (const Edge& e : g.edges()) {
            if (!dist[e.from]) continue;
            const Rational candidate = *dist[e.from] + Rational(1) - d_r * Rational(sign * e.sigma);
            if (!dist[e.to] || candidate > *dist[e.to]) dist[e.to] = candidate;
        }
    }
    std::optional<Rational> best;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.node(v).kind == NodeKind::Output && dist[v] && (!best || *dist[v] > *best)) best = dist[v];
    }
    return best;
}

inline RandomGraphOptions unidirectional_options() {
    RandomGraphOptions o;
    o.unidirectional = true;
    o.connected_core = true;
    o.require_io_path = true;
    return o;
}

} // namespace archlab::test
