// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "test_support.hpp"
#include "urigid_cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace urigid;

namespace {

using Clock = std::chrono::steady_clock;

constexpr double census_limit_s = 10;
constexpr double counterexample_limit_s = 1;
constexpr double corpus_limit_s = 300;
constexpr double delta2_limit_s = 60;
constexpr double slice_limit_s = 120;
constexpr int plays_per_arena = 1000;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Check {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

bool report(int number, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    auto start = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %2d  %-44s %8.3fs  %s\n", c.ok ? "PASS" : "FAIL", number, title.c_str(), seconds_since(start),
                c.note.str().c_str());
    std::fflush(stdout);
    return c.ok;
}

std::vector<const FinCategory*> universally_rigid_fixtures() {
    std::vector<const FinCategory*> out;
    for (const auto& c : test::fixtures())
        if (universally_rigid_local(c).universally_rigid) out.push_back(&c);
    return out;
}

} // namespace

int main() {
    bool all = true;

    all &= report(1, "census exactness", [](Check& k) {
        std::vector<std::pair<FinCategory, std::size_t>> expected{{fixture_one(), 2},
                                                                 {fixture_p2(), 4},
                                                                 {fixture_chain3(), 8},
                                                                 {fixture_delta1(), 3},
                                                                 {fixture_karoubi_m2(), 3}};
        for (const auto& [c, n] : expected) {
            auto start = Clock::now();
            auto count = enumerate_topologies(c).size();
            double t = seconds_since(start);
            k.require(count == n, c.name() + " has " + std::to_string(count) + " topologies");
            k.require(t < census_limit_s, c.name() + " census too slow");
            k.require(oracle::topologies(c).size() == n, c.name() + " brute force disagrees");
        }
    });

    all &= report(2, "bijection on universally rigid fixtures", [](Check& k) {
        for (const auto* c : universally_rigid_fixtures()) {
            auto r = rigidity_census(*c);
            k.require(r.all_rigid, c->name() + " has a non-rigid topology");
            k.require(r.injective && r.image_matches && r.bijection_holds, c->name() + " bijection fails");
        }
    });

    all &= report(3, "M2 counterexample", [](Check& k) {
        auto start = Clock::now();
        auto m2 = fixture_m2();
        auto e = m2.morphism("e");
        auto cauchy = is_cauchy_complete(m2);
        k.require(!cauchy.complete && cauchy.witness == e, "Cauchy witness");
        SieveCatalog catalog(m2);
        auto j = double_negation_topology(m2, catalog);
        auto star = m2.object("*");
        Sieve just_e = empty_sieve(m2, star);
        just_e.members.set(m2.into_index(e));
        k.require(j.on(star).size() == 2 && j.covers_sieve(just_e) && j.covers_sieve(maximal_sieve(m2, star)),
                  "J¬¬ covers");
        k.require(is_topology(m2, j, catalog).ok, "J¬¬ is a topology");
        k.require(irreducible_objects(m2, j).empty(), "J¬¬ irreducibles");
        k.require(!is_rigid(m2, j).rigid, "J¬¬ rigidity");
        auto a = build_arena(m2, star);
        auto s = solve_game(a);
        std::size_t start_pos = GameArena::position(m2.into_index(m2.identity(star)), Turn::Reducer);
        k.require(!s.cleaner_region[start_pos], "Reducer wins from (id, R)");
        auto v = cleaner_wins_everywhere(m2);
        std::size_t eC = GameArena::position(m2.into_index(e), Turn::Cleaner);
        std::size_t eR = GameArena::position(m2.into_index(e), Turn::Reducer);
        k.require(!v.cleaner_wins && v.play.size() == 4 && v.play[v.cycle_start] == eC && v.play.back() == eC &&
                      v.play[2] == eR,
                  "cycle (e,C)→(e,R)→(e,C)");
        k.require(seconds_since(start) < counterexample_limit_s, "too slow");
    });

    all &= report(4, "decider equivalence, fixtures + corpus", [](Check& k) {
        auto start = Clock::now();
        std::size_t n = 0;
        for (const auto* c : test::everything()) {
            bool local = universally_rigid_local(*c).universally_rigid;
            bool game = cleaner_wins_everywhere(*c).cleaner_wins;
            k.require(local == game, c->name());
            ++n;
        }
        k.require(n == test::fixtures().size() + test::corpus_size, "corpus size");
        k.require(seconds_since(start) < corpus_limit_s, "too slow");
        k.note << n << " categories, seed " << test::corpus_seed;
    });

    all &= report(5, "double-negation irreducibles", [](Check& k) {
        for (const auto* c : test::everything()) {
            auto irr = irreducible_objects(*c, double_negation_topology(*c));
            for (ObjectId x : c->objects()) {
                bool split = true;
                for (MorphismId f : oracle::into(*c, x)) split = split && oracle::split_epi(*c, f);
                bool in = std::find(irr.begin(), irr.end(), x) != irr.end();
                k.require(split == in, c->name() + " at " + c->object_name(x));
            }
        }
    });

    all &= report(6, "degree criterion on truncated simplices", [](Check& k) {
        for (bool semi : {false, true}) {
            auto start = Clock::now();
            auto c = semi ? fixture_semidelta2() : fixture_delta2();
            std::vector<std::uint64_t> dim(c.object_count());
            for (ObjectId x : c.objects()) dim[idx(x)] = idx(x);
            k.require(check_degree_criterion(c, dim).ok, c.name() + " degree");
            k.require(cleaner_wins_everywhere(c).cleaner_wins, c.name() + " game");
            k.require(universally_rigid_local(c).universally_rigid, c.name() + " local");
            k.require(rigidity_census(c).bijection_holds, c.name() + " census");
            if (!semi) k.require(seconds_since(start) < delta2_limit_s, "Delta<=2 too slow");
        }
    });

    all &= report(7, "constructive irreducible covers", [](Check& k) {
        std::size_t n = 0;
        for (const auto* c : universally_rigid_fixtures())
            for (const auto& j : enumerate_topologies(*c))
                for (ObjectId x : c->objects()) {
                    k.require(j.covers_sieve(irreducible_cover(*c, j, x)), c->name() + " at " + c->object_name(x));
                    ++n;
                }
        k.note << n << " covers";
    });

    all &= report(8, "slice stability", [](Check& k) {
        auto start = Clock::now();
        for (const auto* c : universally_rigid_fixtures())
            for (ObjectId x : c->objects())
                k.require(cleaner_wins_everywhere(slice_category(*c, x)).cleaner_wins,
                          c->name() + "/" + c->object_name(x));
        k.require(seconds_since(start) < slice_limit_s, "too slow");
    });

    all &= report(9, "exported strategies win within rank", [](Check& k) {
        std::mt19937_64 rng(test::corpus_seed);
        std::size_t arenas = 0, plays = 0;
        for (const auto* c : test::everything())
            for (ObjectId x : c->objects()) {
                auto a = build_arena(*c, x);
                auto s = solve_game(a);
                // replay from the JSON export, not from the in-memory solution
                Json exported = Json::parse(cli::strategy_json(*c, a, s).dump());
                std::map<std::string, std::size_t> index;
                for (std::size_t i = 0; i < a.morphisms.size(); ++i) index[c->morphism_name(a.morphisms[i])] = i;
                const auto& positions = exported["positions"];
                auto entry = [&](std::size_t pos) -> const Json& { return positions[pos]; };
                bool any = false;
                for (std::size_t p = 0; p < a.position_count(); ++p) {
                    if (entry(p)["winner"] != "Cleaner") continue;
                    any = true;
                    std::size_t rank = entry(p)["rank"].get<std::size_t>();
                    for (int trial = 0; trial < plays_per_arena; ++trial, ++plays) {
                        std::size_t pos = p, moves = 0;
                        while (true) {
                            std::size_t m = GameArena::morphism_index(pos);
                            if (GameArena::turn(pos) == Turn::Reducer) {
                                const auto& options = a.reducer_moves[m];
                                if (options.empty()) break;
                                pos = GameArena::position(options[rng() % options.size()], Turn::Cleaner);
                            } else {
                                const Json& move = entry(pos)["move"];
                                if (move.is_null()) {
                                    moves = rank + 1;
                                    break;
                                }
                                pos = GameArena::position(index.at(move.get<std::string>()), Turn::Reducer);
                            }
                            if (++moves > rank) break;
                        }
                        k.require(moves <= rank, c->name() + " arena " + c->object_name(x));
                    }
                }
                arenas += any;
            }
        k.note << arenas << " arenas, " << plays << " plays";
    });

    all &= report(10, "structural property suite", [](Check& k) {
        for (const auto* c : test::everything()) {
            SieveCatalog catalog(*c);
            auto upward = [&](const Topology& j) {
                for (ObjectId x : c->objects())
                    for (const Sieve& s : j.on(x))
                        for (const Sieve& t : catalog.on(x))
                            if (s.subset_of(t) && !j.covers_sieve(t)) return false;
                return true;
            };
            for (const auto& j : enumerate_topologies(*c, catalog)) {
                k.require(is_topology(*c, j, catalog).ok, c->name() + " enumerated topology");
                k.require(upward(j), c->name() + " upward closure");
            }
            k.require(is_topology(*c, double_negation_topology(*c, catalog), catalog).ok, c->name() + " J¬¬");
            for (ObjectId x : c->objects())
                for (const Sieve& s : catalog.on(x)) {
                    std::vector<std::vector<Sieve>> coverage(c->object_count());
                    coverage[idx(x)].push_back(s);
                    auto j = generated_topology(*c, coverage, catalog);
                    k.require(is_topology(*c, j, catalog).ok && j.covers_sieve(s) && upward(j),
                              c->name() + " generated topology");
                }
            if (is_cauchy_complete(*c).complete)
                for (std::size_t i = 0; i < c->morphism_count(); ++i) {
                    MorphismId f = morphism_id(i);
                    MorphismId g = clean_morphism(*c, f);
                    k.require(image_eq(*c, f, g) && clean_morphism(*c, g) == g, c->name() + " cleaning");
                }
            k.require(is_cauchy_complete(karoubi_envelope(*c).envelope).complete, c->name() + " envelope");
        }
    });

    return all ? 0 : 1;
}
