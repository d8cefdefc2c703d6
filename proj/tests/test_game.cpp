#include "oracles.hpp"
#include "test_support.hpp"

#include <urigid/game.hpp>
#include <urigid/topology.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace urigid;

namespace {

std::size_t pos_of(const FinCategory& c, const std::string& m, Turn t) {
    return GameArena::position(c.into_index(c.morphism(m)), t);
}

} // namespace

TEST_CASE("build_arena", "[game]") {
    auto one = fixture_one();
    auto a1 = build_arena(one, one.object("a"));
    CHECK(a1.position_count() == 2);
    CHECK(a1.reducer_moves[0].empty());

    auto m2 = fixture_m2();
    auto a2 = build_arena(m2, m2.object("*"));
    CHECK(a2.position_count() == 4);
    auto id = m2.into_index(m2.morphism("id_*"));
    auto e = m2.into_index(m2.morphism("e"));
    CHECK(a2.reducer_moves[id] == std::vector<std::size_t>{e});
    CHECK(a2.cleaner_moves[e] == std::vector<std::size_t>{e});

    auto delta = fixture_delta1();
    auto a3 = build_arena(delta, delta.object("[1]"));
    CHECK(a3.position_count() == 10);
    auto c0 = delta.into_index(delta.morphism(test::c0));
    auto d0 = delta.into_index(delta.morphism(test::d0));
    CHECK(a3.cleaner_moves[c0] == std::vector<std::size_t>{std::min(c0, d0), std::max(c0, d0)});
}

TEST_CASE("arena invariants", "[game][property]") {
    for (const auto* c : test::everything())
        for (ObjectId x : c->objects()) {
            auto a = build_arena(*c, x);
            for (std::size_t k = 0; k < a.morphisms.size(); ++k) {
                MorphismId f = a.morphisms[k];
                // the trivial factorization is always available
                REQUIRE(std::find(a.cleaner_moves[k].begin(), a.cleaner_moves[k].end(), k) != a.cleaner_moves[k].end());
                for (std::size_t t : a.reducer_moves[k]) REQUIRE(image_leq(*c, a.morphisms[t], f));
                for (std::size_t t : a.cleaner_moves[k]) REQUIRE(image_eq(*c, a.morphisms[t], f));
            }
        }
}

TEST_CASE("solve_game", "[game]") {
    auto one = fixture_one();
    auto s1 = solve_game(build_arena(one, one.object("a")));
    CHECK(s1.cleaner_region == std::vector<bool>{true, true});
    CHECK(s1.rank[0] == 0u);

    auto m2 = fixture_m2();
    auto a2 = build_arena(m2, m2.object("*"));
    auto s2 = solve_game(a2);
    CHECK(std::none_of(s2.cleaner_region.begin(), s2.cleaner_region.end(), [](bool b) { return b; }));

    auto delta = fixture_delta1();
    auto a3 = build_arena(delta, delta.object("[1]"));
    auto s3 = solve_game(a3);
    CHECK(std::all_of(s3.cleaner_region.begin(), s3.cleaner_region.end(), [](bool b) { return b; }));
    auto d0 = delta.into_index(delta.morphism(test::d0));
    auto d1 = delta.into_index(delta.morphism(test::d1));
    CHECK(s3.strategy[pos_of(delta, test::c0, Turn::Cleaner)] == d0);
    CHECK(s3.strategy[pos_of(delta, test::c1, Turn::Cleaner)] == d1);
    CHECK(s3.rank[pos_of(delta, test::d0, Turn::Reducer)] == 0u);
    CHECK(a3.reducer_moves[d0].empty());
}

TEST_CASE("cleaner_wins_everywhere", "[game]") {
    CHECK(cleaner_wins_everywhere(fixture_delta1()).cleaner_wins);
    CHECK(cleaner_wins_everywhere(fixture_karoubi_m2()).cleaner_wins);
    CHECK(cleaner_wins_everywhere(fixture_p2()).cleaner_wins);

    auto m2 = fixture_m2();
    auto v = cleaner_wins_everywhere(m2);
    CHECK_FALSE(v.cleaner_wins);
    REQUIRE(v.losing_object);
    CHECK(m2.object_name(*v.losing_object) == "*");
    std::vector<std::size_t> expected{pos_of(m2, "id_*", Turn::Reducer), pos_of(m2, "e", Turn::Cleaner),
                                      pos_of(m2, "e", Turn::Reducer), pos_of(m2, "e", Turn::Cleaner)};
    CHECK(v.play == expected);
    CHECK(v.cycle_start == 1);
    CHECK(v.identity_start_wins == std::vector<bool>{false});
}

TEST_CASE("losing plays stay outside the Cleaner region", "[game][property]") {
    for (const auto* c : test::everything()) {
        auto v = cleaner_wins_everywhere(*c);
        if (v.cleaner_wins) continue;
        const auto& [a, s] = v.arenas[idx(*v.losing_object)];
        REQUIRE(v.play.size() >= 2);
        REQUIRE(v.play.back() == v.play[v.cycle_start]);
        for (std::size_t i = 0; i + 1 < v.play.size(); ++i) {
            REQUIRE_FALSE(s.cleaner_region[v.play[i]]);
            auto next = a.successors(v.play[i]);
            REQUIRE(std::find(next.begin(), next.end(), v.play[i + 1]) != next.end());
        }
    }
}

TEST_CASE("strategies win within their rank", "[game][property]") {
    std::mt19937_64 rng(test::corpus_seed);
    for (const auto& c : test::fixtures())
        for (ObjectId x : c.objects()) {
            auto a = build_arena(c, x);
            auto s = solve_game(a);
            for (std::size_t p = 0; p < a.position_count(); ++p) {
                if (!s.cleaner_region[p]) continue;
                for (int trial = 0; trial < 1000; ++trial) {
                    auto moves = play_against_strategy(a, s, p, [&](const auto&) { return rng(); }, *s.rank[p]);
                    REQUIRE(moves);
                    REQUIRE(*moves <= *s.rank[p]);
                }
            }
        }
    for (const auto* c : test::everything())
        for (ObjectId x : c->objects()) {
            auto a = build_arena(*c, x);
            auto s = solve_game(a);
            for (std::size_t p = 0; p < a.position_count(); ++p) {
                if (!s.cleaner_region[p]) continue;
                for (int trial = 0; trial < 20; ++trial) {
                    auto moves = play_against_strategy(a, s, p, [&](const auto&) { return rng(); }, *s.rank[p]);
                    REQUIRE(moves);
                }
            }
        }
}

TEST_CASE("Reducer is stuck exactly at double-negation irreducible domains", "[game][property]") {
    for (const auto* c : test::everything()) {
        auto irr = irreducible_objects(*c, double_negation_topology(*c));
        std::vector<bool> irreducible(c->object_count(), false);
        for (ObjectId y : irr) irreducible[idx(y)] = true;
        for (ObjectId x : c->objects()) {
            auto a = build_arena(*c, x);
            for (std::size_t k = 0; k < a.morphisms.size(); ++k)
                REQUIRE(a.reducer_moves[k].empty() == irreducible[idx(c->dom(a.morphisms[k]))]);
        }
    }
}

TEST_CASE("one Cleaner move always suffices", "[game][property]") {
    // composites of split epis split, so no Cleaner position needs two passes
    for (const auto* c : test::everything())
        for (ObjectId x : c->objects()) {
            auto a = build_arena(*c, x);
            for (std::size_t k = 0; k < a.morphisms.size(); ++k)
                for (std::size_t t : a.cleaner_moves[k])
                    for (std::size_t u : a.cleaner_moves[t])
                        REQUIRE(std::find(a.cleaner_moves[k].begin(), a.cleaner_moves[k].end(), u) !=
                                a.cleaner_moves[k].end());
        }
}
