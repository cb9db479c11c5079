#include "archlab/oracle.hpp"

#include "support.hpp"

using namespace archlab;
using namespace archlab::test;

TEST_CASE("path table for sh") {
    const PathLengthTable t = path_table(fixture(Family::Sh), 0, 12);
    CHECK(t.stabilized());
    CHECK(t.n_min() == 0);
    for (std::int64_t n = 0; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(t.at(n).longest_any == n + 2);
        CHECK(t.at(n).longest_io == n + 2);
    }
    CHECK(t.at(3).longest_any == 5);
    for (std::int64_t n = 1; n <= 12; ++n) CHECK(t.at(n).shortest_any == n);
    CHECK(t.at(0).shortest_any == 0);
}

TEST_CASE("path table for a skip fixture") {
    const PathLengthTable t = path_table(generate(FixtureSpec::skip(5)), 0, 20);
    CHECK(t.at(5).shortest_any == 1);
    CHECK(t.at(10).shortest_any == 2);
    CHECK(t.at(7).shortest_any == 3);
    CHECK(t.at(5).longest_any == 7);
}

TEST_CASE("absent entries where no path exists") {
    const PathLengthTable t = path_table(generate(FixtureSpec::skip_only(3)), 0, 9);
    CHECK_FALSE(t.at(1).longest_io.has_value());
    CHECK_FALSE(t.at(2).shortest_any.has_value());
    CHECK(t.at(3).longest_io == 3);
    CHECK(t.at(6).shortest_any == 2);
}

TEST_CASE("margin doubling leaves a stabilized table unchanged") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const CyclicGraph g = random_valid_graph(rng, unidirectional_options());
        const PathLengthTable base = path_table(g, 0, 16);
        REQUIRE(base.stabilized());
        OracleOptions wide;
        wide.margin = 2 * base.margin();
        const PathLengthTable doubled = path_table(g, 0, 16, wide);
        CHECK(tables_match(base, doubled));
    }
}

TEST_CASE("negative sigma extends the n range below zero") {
    const CyclicGraph g = fixture(Family::NegativeSh);
    CHECK(default_n_min(g) < 0);
    const PathLengthTable t = path_table(g, 0, 6);
    REQUIRE(t.n_min() == -2);
    CHECK(t.at(-2).longest_any == 4);
    CHECK(t.at(-2).shortest_any == 2);
    CHECK_FALSE(t.at(3).shortest_any.has_value());
}

TEST_CASE("convergence on the reference fixtures") {
    const CyclicGraph sh = fixture(Family::Sh);
    const ConvergenceReport c = convergence(sh, measure(sh), default_horizon(sh));
    CHECK(c.slope_longest == Rational(1));
    CHECK(c.slope_shortest == Rational(1));
    CHECK(c.df_max == Rational(2));
    CHECK(c.longest_verified);
    CHECK(c.shortest_verified);
    CHECK(c.bound_violations == 0);

    const CyclicGraph td = fixture(Family::Td);
    CHECK(convergence(td, measure(td), 64).slope_longest == Rational(2));

    const CyclicGraph four = generate(FixtureSpec::stack_skip(4, 9));
    const ConvergenceReport c4 = convergence(four, measure(four), default_horizon(four));
    CHECK(c4.slope_shortest == Rational(1, 9));
    CHECK(c4.slope_shortest.reciprocal() == Rational(9));
}

TEST_CASE("subsequence fallback when the mild assumption fails") {
    const CyclicGraph g(1, {in("x"), hid("h"), out("y")}, {edge("x", "h", 0), edge("h", "h", 2), edge("h", "y", 0)});
    const MeasureReport r = measure(g);
    CHECK_FALSE(r.mild_assumption_dr);
    const ConvergenceReport c = convergence(g, r, default_horizon(g));
    CHECK(c.slope_longest == Rational(1, 2));
    CHECK(c.longest_verified);
}

TEST_CASE("base times that miss the extremal component grow more slowly") {
    // Residue 0 only reaches the a loop (ratio 1/2), residue 1 only the b-c cycle (ratio 1).
    const CyclicGraph g(2, {in("x"), hid("a"), out("y"), in("u", 1), hid("b", 1), hid("c", 1), out("v", 1)},
                        {edge("x", "a", 0), edge("a", "a", 2), edge("a", "y", 0), edge("u", "b", 0, 1, 1),
                         edge("b", "c", 0, 1, 1), edge("c", "b", 2, 1, 1), edge("c", "v", 0, 1, 1)});
    const MeasureReport r = measure(g);
    REQUIRE(r.recurrent_depth == Rational(1));
    REQUIRE(r.skip_reciprocal == Rational(1, 2));
    const std::int64_t horizon = default_horizon(g);
    CHECK(*path_table(g, 0, horizon).at(40).longest_any == 22);
    CHECK(*path_table(g, 1, horizon).at(40).longest_any == 43);
    const ConvergenceReport c = convergence(g, r, horizon);
    CHECK(c.longest_verified);
    CHECK(c.shortest_verified);
    CHECK(c.slope_longest == Rational(1));
    CHECK(c.slope_shortest == Rational(1, 2));
    CHECK(c.bound_violations == 0);
}

TEST_CASE("oracle agrees with the closed forms on every fixture") {
    for (const auto& [name, g] : all_fixtures()) {
        CAPTURE(name);
        const MeasureReport r = measure(g);
        const ConvergenceReport c = convergence(g, r, default_horizon(g));
        CHECK(c.longest_verified);
        CHECK(c.shortest_verified);
        CHECK(c.slope_longest == r.recurrent_depth);
        CHECK(c.slope_shortest == r.skip_reciprocal);
        CHECK(c.df_max == r.feedforward_depth);
        CHECK(c.bound_violations == 0);
        CHECK(c.bound_attained);
    }
}

TEST_CASE("oracle agrees with the closed forms on random graphs") {
    std::mt19937_64 rng(555);
    RandomGraphOptions options = unidirectional_options();
    options.connected_core = false;
    options.negative_orientation_rate = 0.25;
    for (int trial = 0; trial < 60; ++trial) {
        const CyclicGraph g = random_valid_graph(rng, options);
        const MeasureReport r = measure(g);
        const ConvergenceReport c = convergence(g, r, default_horizon(g));
        CHECK(c.slope_longest == r.recurrent_depth);
        CHECK(c.slope_shortest == r.skip_reciprocal);
        CHECK(c.df_max == r.feedforward_depth);
        CHECK(c.bound_violations == 0);
    }
}

TEST_CASE("shortest paths never exceed longest paths") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const CyclicGraph g = random_valid_graph(rng, unidirectional_options());
        const PathLengthTable t = path_table(g, static_cast<std::int64_t>(rng() % 3), 24);
        for (std::int64_t n = t.n_min(); n <= t.n_max(); ++n) {
            const PathLengths& p = t.at(n);
            CHECK(p.shortest_any.has_value() == p.longest_any.has_value());
            if (p.shortest_any && p.longest_any) CHECK(*p.shortest_any <= *p.longest_any);
            if (p.longest_io && p.longest_any) CHECK(*p.longest_io <= *p.longest_any);
        }
    }
}

TEST_CASE("longest paths stay within a bounded distance of n * d_r") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const CyclicGraph g = random_valid_graph(rng, unidirectional_options());
        if (g.has_negative_sigma()) continue;
        const MeasureReport r = measure(g);
        const PathLengthTable t = path_table(g, 0, 60);
        const Rational bound = Rational(static_cast<std::int64_t>(g.node_count())) + Rational(2) * r.recurrent_depth *
                               Rational(g.period() * std::max<std::int64_t>(1, g.max_abs_sigma()));
        for (std::int64_t n = 0; n <= 60; ++n) {
            if (!t.at(n).longest_any) continue;
            CHECK(Rational(*t.at(n).longest_any) - Rational(n) * r.recurrent_depth <= bound);
        }
    }
}

TEST_CASE("periodicity") {
    for (Family f : {Family::Sh, Family::Td, Family::DoubledSh, Family::Clockwork}) {
        CHECK(periodicity_check(fixture(f), 40));
    }
    const PathLengthTable a = path_table(fixture(Family::Sh), 0, 10);
    const PathLengthTable b = path_table(fixture(Family::St), 0, 10);
    CHECK_FALSE(tables_match(a, b));
}

TEST_CASE("input-output paths stay under n*d_r + d_f") {
    for (Family f : {Family::Sh, Family::Td}) {
        const CyclicGraph g = fixture(f);
        const MeasureReport r = measure(g);
        const BoundCheck check = prop1_bound_check(g, r, 20);
        CHECK(check.violations == 0);
        CHECK(check.attained);

        MeasureReport loose = r;
        loose.feedforward_depth = r.feedforward_depth + Rational(1);
        const BoundCheck relaxed = prop1_bound_check(g, loose, 20);
        CHECK(relaxed.violations == 0);
        CHECK_FALSE(relaxed.attained);

        MeasureReport tight = r;
        tight.feedforward_depth = r.feedforward_depth - Rational(1);
        CHECK(prop1_bound_check(g, tight, 20).violations > 0);
    }
    const PathLengthTable td = path_table(fixture(Family::Td), 0, 20);
    for (std::int64_t n = 0; n <= 20; ++n) CHECK(td.at(n).longest_io <= 2 * n + 3);
}
