#pragma once

// The game of split epimorphisms over a fixed codomain X, played on the
// finite arena hom_into(X) x {Reducer, Cleaner}.
//
// Turn order is strict alternation. Reducer at f picks a non-split-epi r into
// dom(f) and moves to r·f. Cleaner at f picks f' with f = r·f' for a split epi
// r and hands the turn back; r = id is always available, so Cleaner can pass.
// Cleaner wins when Reducer is stuck; an infinite play is a Reducer win.

#include <urigid/fincat.hpp>

#include <algorithm>
#include <cstddef>
#include <atomic>
#include <thread>
#include <optional>
#include <set>
#include <vector>

namespace urigid {

enum class Turn : std::uint8_t { Reducer = 0, Cleaner = 1 };

/// Position ids are 2 * k + turn, k an index into hom_into(codomain).
struct GameArena {
    ObjectId codomain{};
    std::vector<MorphismId> morphisms;
    std::vector<std::vector<std::size_t>> reducer_moves; // k -> sorted targets
    std::vector<std::vector<std::size_t>> cleaner_moves; // k -> sorted targets

    std::size_t position_count() const { return 2 * morphisms.size(); }
    static std::size_t position(std::size_t k, Turn t) { return 2 * k + static_cast<std::size_t>(t); }
    static std::size_t morphism_index(std::size_t pos) { return pos / 2; }
    static Turn turn(std::size_t pos) { return static_cast<Turn>(pos % 2); }

    /// Successor positions, each lands on the other player's turn.
    std::vector<std::size_t> successors(std::size_t pos) const {
        std::size_t k = morphism_index(pos);
        std::vector<std::size_t> out;
        if (turn(pos) == Turn::Reducer)
            for (std::size_t t : reducer_moves[k]) out.push_back(position(t, Turn::Cleaner));
        else
            for (std::size_t t : cleaner_moves[k]) out.push_back(position(t, Turn::Reducer));
        return out;
    }
};

inline GameArena build_arena(const FinCategory& c, ObjectId x) {
    GameArena a;
    a.codomain = x;
    auto into = c.hom_into(x);
    a.morphisms.assign(into.begin(), into.end());
    a.reducer_moves.resize(into.size());
    a.cleaner_moves.resize(into.size());

    std::vector<bool> split(c.morphism_count());
    for (std::size_t i = 0; i < c.morphism_count(); ++i) split[i] = is_split_epi(c, morphism_id(i));

    for (std::size_t k = 0; k < into.size(); ++k) {
        MorphismId f = into[k];
        std::set<std::size_t> reducer, cleaner;
        for (MorphismId r : c.hom_into(c.dom(f)))
            if (!split[idx(r)]) reducer.insert(c.into_index(c.compose(r, f)));
        for (MorphismId r : c.hom_out(c.dom(f))) {
            if (!split[idx(r)]) continue;
            for (MorphismId f2 : c.hom(c.cod(r), x))
                if (c.compose(r, f2) == f) cleaner.insert(c.into_index(f2));
        }
        a.reducer_moves[k].assign(reducer.begin(), reducer.end());
        a.cleaner_moves[k].assign(cleaner.begin(), cleaner.end());
    }
    return a;
}

struct GameSolution {
    std::vector<bool> cleaner_region;                // by position id
    std::vector<std::optional<std::size_t>> rank;    // rounds within which Cleaner forces a win
    std::vector<std::optional<std::size_t>> strategy; // Cleaner positions in region: target morphism index

    bool cleaner_wins(std::size_t pos) const { return cleaner_region[pos]; }
};

/// Attractor of the Reducer-stuck positions, computed level by level: a
/// position admitted in round i gets rank i and every move out of it that the
/// solution allows leads to a strictly smaller rank.
inline GameSolution solve_game(const GameArena& a) {
    const std::size_t n = a.position_count();
    GameSolution s;
    s.cleaner_region.assign(n, false);
    s.rank.assign(n, std::nullopt);
    s.strategy.assign(n, std::nullopt);

    for (std::size_t k = 0; k < a.morphisms.size(); ++k)
        if (a.reducer_moves[k].empty()) {
            std::size_t p = GameArena::position(k, Turn::Reducer);
            s.cleaner_region[p] = true;
            s.rank[p] = 0;
        }

    for (std::size_t round = 1;; ++round) {
        std::vector<std::size_t> admitted;
        for (std::size_t p = 0; p < n; ++p) {
            if (s.cleaner_region[p]) continue;
            std::size_t k = GameArena::morphism_index(p);
            if (GameArena::turn(p) == Turn::Cleaner) {
                std::optional<std::size_t> best;
                for (std::size_t t : a.cleaner_moves[k]) {
                    std::size_t q = GameArena::position(t, Turn::Reducer);
                    if (s.cleaner_region[q] && (!best || *s.rank[q] < *s.rank[GameArena::position(*best, Turn::Reducer)]))
                        best = t;
                }
                if (best) {
                    s.strategy[p] = best;
                    admitted.push_back(p);
                }
            } else {
                const auto& moves = a.reducer_moves[k];
                bool all = std::all_of(moves.begin(), moves.end(), [&](std::size_t t) {
                    return s.cleaner_region[GameArena::position(t, Turn::Cleaner)];
                });
                if (all) admitted.push_back(p);
            }
        }
        if (admitted.empty()) break;
        for (std::size_t p : admitted) {
            s.cleaner_region[p] = true;
            s.rank[p] = round;
        }
    }
    return s;
}

/// Plays from `start` with Cleaner following the solution and Reducer choosing
/// via `reducer_choice(moves)`, returning the number of moves until Reducer is
/// stuck, or nullopt if `max_moves` is exceeded.
template <class Choice>
std::optional<std::size_t> play_against_strategy(const GameArena& a, const GameSolution& s, std::size_t start,
                                                 Choice&& reducer_choice, std::size_t max_moves) {
    std::size_t pos = start;
    for (std::size_t moves = 0; moves <= max_moves; ++moves) {
        std::size_t k = GameArena::morphism_index(pos);
        if (GameArena::turn(pos) == Turn::Reducer) {
            const auto& options = a.reducer_moves[k];
            if (options.empty()) return moves;
            pos = GameArena::position(options[reducer_choice(options) % options.size()], Turn::Cleaner);
        } else {
            if (!s.strategy[pos]) return std::nullopt;
            pos = GameArena::position(*s.strategy[pos], Turn::Reducer);
        }
    }
    return std::nullopt;
}

struct ArenaResult {
    GameArena arena;
    GameSolution solution;
};

struct GameVerdict {
    bool cleaner_wins = true;
    std::vector<ArenaResult> arenas;        // one per object
    std::vector<bool> identity_start_wins;  // Cleaner wins from (id_X, Reducer)
    std::optional<ObjectId> losing_object;
    std::optional<std::size_t> losing_start; // position id in that arena
    std::vector<std::size_t> play;           // losing play; play[cycle_start..] repeats
    std::size_t cycle_start = 0;
    std::vector<std::optional<std::size_t>> reducer_strategy; // Reducer positions outside the region
};

/// For each Reducer position outside the Cleaner region, the lowest-index
/// move that stays outside it.
inline std::vector<std::optional<std::size_t>> reducer_strategy(const GameArena& a, const GameSolution& s) {
    std::vector<std::optional<std::size_t>> out(a.position_count());
    for (std::size_t p = 0; p < a.position_count(); ++p) {
        if (s.cleaner_region[p] || GameArena::turn(p) != Turn::Reducer) continue;
        for (std::size_t t : a.reducer_moves[GameArena::morphism_index(p)])
            if (!s.cleaner_region[GameArena::position(t, Turn::Cleaner)]) {
                out[p] = t;
                break;
            }
    }
    return out;
}

/// Reducer's play from `start` when it stays outside the Cleaner region;
/// Cleaner takes its lowest-index move. Stops at the first repeated position.
inline void reducer_witness(const GameArena& a, const GameSolution& s, std::size_t start, GameVerdict& v) {
    v.reducer_strategy = reducer_strategy(a, s);
    std::vector<std::size_t> seen_at(a.position_count(), static_cast<std::size_t>(-1));
    std::size_t pos = start;
    while (seen_at[pos] == static_cast<std::size_t>(-1)) {
        seen_at[pos] = v.play.size();
        v.play.push_back(pos);
        std::size_t k = GameArena::morphism_index(pos);
        if (GameArena::turn(pos) == Turn::Reducer)
            pos = GameArena::position(*v.reducer_strategy[pos], Turn::Cleaner);
        else
            pos = GameArena::position(a.cleaner_moves[k].front(), Turn::Reducer);
    }
    v.cycle_start = seen_at[pos];
    v.play.push_back(pos);
}

/// Solves one arena per object (concurrently) and quantifies over every
/// Reducer-to-move start position.
inline GameVerdict cleaner_wins_everywhere(const FinCategory& c) {
    GameVerdict v;
    v.arenas.resize(c.object_count());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < c.object_count(); i = next++) {
            GameArena a = build_arena(c, object_id(i));
            GameSolution s = solve_game(a);
            v.arenas[i] = {std::move(a), std::move(s)};
        }
    };
    std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), c.object_count());
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (ObjectId x : c.objects()) {
        const auto& [a, s] = v.arenas[idx(x)];
        v.identity_start_wins.push_back(
            s.cleaner_region[GameArena::position(c.into_index(c.identity(x)), Turn::Reducer)]);
        if (!v.cleaner_wins) continue;
        for (std::size_t k = 0; k < a.morphisms.size(); ++k) {
            std::size_t p = GameArena::position(k, Turn::Reducer);
            if (s.cleaner_region[p]) continue;
            v.cleaner_wins = false;
            v.losing_object = x;
            v.losing_start = p;
            reducer_witness(a, s, p, v);
            break;
        }
    }
    return v;
}

} // namespace urigid
