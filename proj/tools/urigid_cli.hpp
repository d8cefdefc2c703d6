#pragma once

#include <urigid/builders.hpp>
#include <urigid/fincat_json.hpp>
#include <urigid/game.hpp>
#include <urigid/local.hpp>
#include <urigid/topology.hpp>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace urigid::cli {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int report_schema = 1;

enum Exit : int { Positive = 0, Negative = 1, InputError = 2, Disagreement = 3 };

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

inline std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream text;
    if (path == "-") {
        text << in.rdbuf();
        return text.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
    text << file.rdbuf();
    return text.str();
}

// ---- JSON views of verdicts ------------------------------------------------

inline Json name_or_null(const FinCategory& c, const std::optional<MorphismId>& f) {
    return f ? Json(c.morphism_name(*f)) : Json(nullptr);
}

inline Json object_or_null(const FinCategory& c, const std::optional<ObjectId>& x) {
    return x ? Json(c.object_name(*x)) : Json(nullptr);
}

inline Json object_list(const FinCategory& c, const std::vector<ObjectId>& xs) {
    Json out = Json::array();
    for (ObjectId x : xs) out.push_back(c.object_name(x));
    return out;
}

inline Json sieve_json(const FinCategory& c, const Sieve& s) { return member_names(c, s); }

inline Json topology_json(const FinCategory& c, const Topology& j) {
    Json out = Json::object();
    for (ObjectId x : c.objects()) {
        Json covers = Json::array();
        for (const Sieve& s : j.on(x)) covers.push_back(sieve_json(c, s));
        out[c.object_name(x)] = covers;
    }
    return out;
}

inline Json cauchy_json(const FinCategory& c, const CauchyVerdict& v) {
    return {{"complete", v.complete}, {"non_split_idempotent", name_or_null(c, v.witness)}};
}

inline std::string_view to_string(LocalCondition k) {
    switch (k) {
    case LocalCondition::CauchyComplete: return "cauchy_complete";
    case LocalCondition::ArtinianSlices: return "artinian_slices";
    case LocalCondition::EnoughIdempotents: return "enough_idempotents_left";
    }
    return "?";
}

inline Json local_json(const FinCategory& c, const LocalVerdict& v) {
    Json heights = Json::object();
    for (ObjectId x : c.objects()) heights[c.object_name(x)] = v.slice_heights[idx(x)];
    return {{"universally_rigid", v.universally_rigid},
            {"failed_condition", v.failed ? Json(std::string(to_string(*v.failed))) : Json(nullptr)},
            {"non_split_idempotent", name_or_null(c, v.non_split_idempotent)},
            {"failing_object", object_or_null(c, v.failing_object)},
            {"failing_endomorphism", name_or_null(c, v.failing_endomorphism)},
            {"slice_heights", heights}};
}

inline Json position_json(const FinCategory& c, const GameArena& a, std::size_t pos) {
    return {{"morphism", c.morphism_name(a.morphisms[GameArena::morphism_index(pos)])},
            {"turn", GameArena::turn(pos) == Turn::Reducer ? "R" : "C"}};
}

inline Json game_json(const FinCategory& c, const GameVerdict& v, const std::vector<ObjectId>& scope) {
    Json arenas = Json::array();
    for (ObjectId x : scope) {
        const auto& [a, s] = v.arenas[idx(x)];
        std::size_t region = std::count(s.cleaner_region.begin(), s.cleaner_region.end(), true);
        arenas.push_back({{"codomain", c.object_name(x)},
                          {"positions", a.position_count()},
                          {"cleaner_region", region},
                          {"identity_start_wins", bool(v.identity_start_wins[idx(x)])}});
    }
    Json out = {{"cleaner_wins", v.cleaner_wins}, {"arenas", arenas}};
    if (!v.cleaner_wins) {
        const auto& a = v.arenas[idx(*v.losing_object)].arena;
        Json play = Json::array();
        for (std::size_t p : v.play) play.push_back(position_json(c, a, p));
        out["losing"] = {{"codomain", c.object_name(*v.losing_object)},
                         {"start", position_json(c, a, *v.losing_start)},
                         {"play", play},
                         {"cycle_start", v.cycle_start}};
    } else {
        out["losing"] = nullptr;
    }
    return out;
}

inline Json strategy_json(const FinCategory& c, const GameArena& a, const GameSolution& s) {
    auto reducer = reducer_strategy(a, s);
    Json positions = Json::array();
    for (std::size_t p = 0; p < a.position_count(); ++p) {
        Json entry = position_json(c, a, p);
        entry["winner"] = s.cleaner_region[p] ? "Cleaner" : "Reducer";
        entry["rank"] = s.rank[p] ? Json(*s.rank[p]) : Json(nullptr);
        std::optional<std::size_t> move = GameArena::turn(p) == Turn::Cleaner ? s.strategy[p] : reducer[p];
        entry["move"] = move ? Json(c.morphism_name(a.morphisms[*move])) : Json(nullptr);
        positions.push_back(entry);
    }
    return {{"codomain", c.object_name(a.codomain)}, {"positions", positions}};
}

inline Json census_json(const FinCategory& c, const CensusReport& r) {
    Json topologies = Json::array();
    for (const auto& e : r.entries)
        topologies.push_back(
            {{"covers", topology_json(c, e.topology)}, {"rigid", e.rigid}, {"irreducibles", object_list(c, e.irreducibles)}});
    Json subs = Json::array();
    for (const auto& s : r.subcategories) subs.push_back(object_list(c, s));
    return {{"count", r.entries.size()},
            {"topologies", topologies},
            {"all_rigid", r.all_rigid},
            {"injective", r.injective},
            {"cauchy_complete", r.cauchy_complete},
            {"non_split_idempotent", name_or_null(c, r.non_split_idempotent)},
            {"cauchy_complete_subcategories", r.cauchy_complete ? subs : Json(nullptr)},
            {"image_matches", r.image_matches},
            {"bijection_holds", r.bijection_holds}};
}

inline Json double_negation_json(const FinCategory& c) {
    auto j = double_negation_topology(c);
    auto v = is_rigid(c, j);
    return {{"covers", topology_json(c, j)},
            {"irreducibles", object_list(c, v.irreducibles)},
            {"rigid", v.rigid},
            {"failing_object", object_or_null(c, v.failing_object)}};
}

inline Json degree_json(const FinCategory& c, const DegreeVerdict& v) {
    Json f = Json::array();
    for (std::size_t i = 0; i < c.morphism_count(); ++i) {
        const auto& split = v.factorizations[i];
        f.push_back({{"morphism", c.morphism_name(morphism_id(i))},
                     {"split_epi", split ? Json(c.morphism_name(split->first)) : Json(nullptr)},
                     {"then", split ? Json(c.morphism_name(split->second)) : Json(nullptr)}});
    }
    return {{"ok", v.ok}, {"failing_morphism", name_or_null(c, v.failing_morphism)}, {"factorizations", f}};
}

// ---- running commands ------------------------------------------------------

class Stopwatch {
public:
    template <class F>
    auto time(const std::string& section, F&& f) {
        auto start = std::chrono::steady_clock::now();
        auto result = f();
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        timings_[section + "_ms"] = ms;
        return result;
    }
    const Json& timings() const { return timings_; }

private:
    Json timings_ = Json::object();
};

struct Options {
    std::string file = "-";
    std::uint64_t budget = default_census_budget;
    std::size_t max_objects = max_subcategory_objects;
    std::string object;
    std::string strategy_out;
    std::string degrees;
    std::string fixture_name;
    std::uint64_t seed = 20240611;
    std::size_t count = 200;
    bool check = false;
    bool no_timings = false;
};

class Runner {
public:
    Runner(const Options& o, std::istream& in, std::ostream& out, std::ostream& err)
        : opt_(o), in_(in), out_(out), err_(err) {}

    int validate() {
        auto c = load();
        report_["validation"] = {{"ok", true},
                                 {"objects", c.object_count()},
                                 {"morphisms", c.morphism_count()},
                                 {"composites", c.presentation().composition.size()}};
        err_ << "valid: " << c.name() << " (" << c.object_count() << " objects, " << c.morphism_count()
             << " morphisms)\n";
        return emit(Positive);
    }

    int complete() {
        auto c = load();
        auto k = clock_.time("karoubi", [&] { return karoubi_envelope(c); });
        Json j = to_json(k.envelope);
        Json embedding = Json::object();
        for (ObjectId x : c.objects()) embedding[c.object_name(x)] = k.envelope.object_name(k.embedding[idx(x)]);
        j["embedding"] = embedding;
        out_ << j.dump(2) << "\n";
        err_ << "envelope: " << k.envelope.object_count() << " objects, " << k.envelope.morphism_count()
             << " morphisms, " << unembedded_objects(k).size() << " not in the image\n";
        return Positive;
    }

    int census() {
        auto c = load();
        guard_size(c);
        auto r = clock_.time("census", [&] { return rigidity_census(c, opt_.budget); });
        report_["census"] = census_json(c, r);
        err_ << "census: " << r.entries.size() << " topologies, "
             << (r.all_rigid ? "all rigid" : "some not rigid") << ", bijection "
             << (r.bijection_holds ? "holds" : "fails") << "\n";
        return emit(r.bijection_holds ? Positive : Negative);
    }

    int game() {
        auto c = load();
        std::vector<ObjectId> scope = c.objects();
        if (!opt_.object.empty()) scope = {c.object(opt_.object)};
        auto v = clock_.time("game", [&] { return scoped_game(c, scope); });
        report_["game"] = game_json(c, v, scope);
        if (!opt_.strategy_out.empty()) {
            Json strategies = Json::array();
            for (ObjectId x : scope) {
                const auto& [a, s] = v.arenas[idx(x)];
                strategies.push_back(strategy_json(c, a, s));
            }
            std::ofstream file(opt_.strategy_out);
            if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + opt_.strategy_out + "'");
            file << (opt_.object.empty() ? strategies : strategies[0]).dump(2) << "\n";
        }
        err_ << "game: " << (v.cleaner_wins ? "Cleaner wins everywhere" : "Reducer wins somewhere") << "\n";
        return emit(v.cleaner_wins ? Positive : Negative);
    }

    int rigidity() {
        auto c = load();
        guard_size(c);
        auto cauchy = clock_.time("cauchy", [&] { return is_cauchy_complete(c); });
        auto local = clock_.time("local", [&] { return universally_rigid_local(c); });
        auto game = clock_.time("game", [&] { return cleaner_wins_everywhere(c); });
        auto census = clock_.time("census", [&] { return rigidity_census(c, opt_.budget); });
        report_["cauchy"] = cauchy_json(c, cauchy);
        report_["local"] = local_json(c, local);
        report_["game"] = game_json(c, game, c.objects());
        report_["census"] = census_json(c, census);
        report_["double_negation"] = double_negation_json(c);
        bool agree = local.universally_rigid == game.cleaner_wins && game.cleaner_wins == census.bijection_holds;
        report_["agree"] = agree;
        report_["universally_rigid"] = agree ? Json(local.universally_rigid) : Json(nullptr);
        if (!agree) {
            err_ << "internal error: deciders disagree (local " << local.universally_rigid << ", game "
                 << game.cleaner_wins << ", census " << census.bijection_holds << ")\n";
            emit(Disagreement);
            return Disagreement;
        }
        err_ << c.name() << ": " << (local.universally_rigid ? "universally rigid" : "not universally rigid");
        if (local.failed) err_ << " (" << to_string(*local.failed) << ")";
        err_ << "\n";
        return emit(local.universally_rigid ? Positive : Negative);
    }

    int degree() {
        auto c = load();
        Json map = read_degrees();
        std::vector<std::uint64_t> d(c.object_count());
        std::vector<bool> seen(c.object_count(), false);
        for (auto it = map.begin(); it != map.end(); ++it) {
            ObjectId x = c.object(it.key());
            if (!it.value().is_number_unsigned())
                throw Error(ErrorKind::ParseError, "degree of '" + it.key() + "' must be a natural number");
            d[idx(x)] = it.value().get<std::uint64_t>();
            seen[idx(x)] = true;
        }
        for (ObjectId x : c.objects())
            if (!seen[idx(x)]) throw Error(ErrorKind::ParseError, "no degree for '" + c.object_name(x) + "'");
        auto v = clock_.time("degree", [&] { return check_degree_criterion(c, d); });
        report_["degree"] = degree_json(c, v);
        if (v.ok) {
            auto g = clock_.time("game", [&] { return cleaner_wins_everywhere(c); });
            report_["game"] = {{"cleaner_wins", g.cleaner_wins}};
            if (!g.cleaner_wins) {
                err_ << "internal error: degree criterion passed but Reducer wins\n";
                emit(Disagreement);
                return Disagreement;
            }
        }
        err_ << "degree criterion " << (v.ok ? "holds" : "fails");
        if (v.failing_morphism) err_ << " at " << c.morphism_name(*v.failing_morphism);
        err_ << "\n";
        return emit(v.ok ? Positive : Negative);
    }

    int fixture_cmd() {
        out_ << serialize(fixture(opt_.fixture_name));
        return Positive;
    }

    int corpus() {
        auto cats = clock_.time("generate", [&] { return random_corpus(opt_.seed, opt_.count); });
        report_["seed"] = opt_.seed;
        report_["count"] = opt_.count;
        if (!opt_.check) {
            Json list = Json::array();
            for (const auto& c : cats) list.push_back(to_json(c));
            report_["categories"] = list;
            return emit(Positive);
        }
        Json elements = Json::array();
        std::size_t rigid = 0, disagreements = 0;
        clock_.time("check", [&] {
            for (const auto& c : cats) {
                bool local = universally_rigid_local(c).universally_rigid;
                bool game = cleaner_wins_everywhere(c).cleaner_wins;
                bool census = rigidity_census(c, opt_.budget).bijection_holds;
                bool bridge = double_negation_matches_split_epis(c);
                bool agree = local == game && game == census && bridge;
                rigid += local;
                disagreements += !agree;
                elements.push_back({{"name", c.name()},
                                    {"objects", c.object_count()},
                                    {"morphisms", c.morphism_count()},
                                    {"universally_rigid", local},
                                    {"cleaner_wins", game},
                                    {"bijection_holds", census},
                                    {"irreducibles_match_split_epis", bridge},
                                    {"agree", agree}});
            }
            return 0;
        });
        report_["elements"] = elements;
        report_["universally_rigid"] = rigid;
        report_["disagreements"] = disagreements;
        err_ << "corpus: " << cats.size() << " categories, " << rigid << " universally rigid, " << disagreements
             << " disagreements\n";
        if (disagreements) {
            emit(Disagreement);
            return Disagreement;
        }
        return emit(Positive);
    }

    static bool double_negation_matches_split_epis(const FinCategory& c) {
        auto irr = irreducible_objects(c, double_negation_topology(c));
        for (ObjectId x : c.objects()) {
            auto into = c.hom_into(x);
            bool split = std::all_of(into.begin(), into.end(), [&](MorphismId f) { return is_split_epi(c, f); });
            if (split != (std::find(irr.begin(), irr.end(), x) != irr.end())) return false;
        }
        return true;
    }

private:
    FinCategory load() {
        std::string text = read_source(opt_.file, in_);
        digest_ = sha256_hex(text);
        auto c = clock_.time("validate", [&] { return read_category(text); });
        name_ = c.name();
        objects_ = c.object_count();
        morphisms_ = c.morphism_count();
        loaded_ = true;
        return c;
    }

    void guard_size(const FinCategory& c) const {
        if (c.object_count() > opt_.max_objects)
            throw Error(ErrorKind::BoundExceeded, std::to_string(c.object_count()) + " objects exceeds --max-objects " +
                                                      std::to_string(opt_.max_objects));
    }

    Json read_degrees() const {
        std::string text = opt_.degrees;
        auto first = text.find_first_not_of(" \t\r\n");
        if (first == std::string::npos || text[first] != '{') text = read_source(opt_.degrees, in_);
        Json j = Json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::ParseError, "--degrees must be a JSON object");
        return j;
    }

    static GameVerdict scoped_game(const FinCategory& c, const std::vector<ObjectId>& scope) {
        if (scope.size() == c.object_count()) return cleaner_wins_everywhere(c);
        GameVerdict v;
        v.arenas.resize(c.object_count());
        v.identity_start_wins.assign(c.object_count(), false);
        for (ObjectId x : scope) {
            GameArena a = build_arena(c, x);
            GameSolution s = solve_game(a);
            v.identity_start_wins[idx(x)] =
                s.cleaner_region[GameArena::position(c.into_index(c.identity(x)), Turn::Reducer)];
            for (std::size_t k = 0; k < a.morphisms.size() && v.cleaner_wins; ++k) {
                std::size_t p = GameArena::position(k, Turn::Reducer);
                if (s.cleaner_region[p]) continue;
                v.cleaner_wins = false;
                v.losing_object = x;
                v.losing_start = p;
                reducer_witness(a, s, p, v);
            }
            v.arenas[idx(x)] = {std::move(a), std::move(s)};
        }
        return v;
    }

    int emit(int code) {
        Json head = {{"schema", report_schema}, {"tool", {{"name", "urigid"}, {"version", tool_version}}}};
        if (loaded_) {
            head["input"] = {{"sha256", digest_}};
            head["category"] = {{"name", name_}, {"objects", objects_}, {"morphisms", morphisms_}};
        }
        for (auto it = report_.begin(); it != report_.end(); ++it) head[it.key()] = it.value();
        head["exit"] = code;
        if (!opt_.no_timings) head["timings"] = clock_.timings();
        out_ << head.dump(2) << "\n";
        return code;
    }

    const Options& opt_;
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
    Stopwatch clock_;
    Json report_ = Json::object();
    std::string digest_, name_;
    std::size_t objects_ = 0, morphisms_ = 0;
    bool loaded_ = false;
};

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite categories, Grothendieck topologies and the game of split epimorphisms", "urigid"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_flag("--no-timings", o.no_timings, "Leave wall-clock timings out of the report");

    auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "Category file, or - for stdin")->required(); };
    auto* validate = app.add_subcommand("validate", "Check a category presentation");
    file_arg(validate);
    auto* complete = app.add_subcommand("complete", "Emit the Karoubi envelope");
    file_arg(complete);
    auto* census = app.add_subcommand("census", "Enumerate every topology and compare with the subcategories");
    file_arg(census);
    census->add_option("--budget", o.budget, "Search nodes before giving up")->capture_default_str();
    census->add_option("--max-objects", o.max_objects, "Refuse larger categories")->capture_default_str();
    auto* game = app.add_subcommand("game", "Solve the game of split epimorphisms");
    file_arg(game);
    game->add_option("--object", o.object, "Only the arena over this object");
    game->add_option("--strategy", o.strategy_out, "Write the positional strategies to this file");
    auto* rigidity = app.add_subcommand("rigidity", "Run all three deciders and check that they agree");
    file_arg(rigidity);
    rigidity->add_option("--budget", o.budget, "Search nodes for the census")->capture_default_str();
    rigidity->add_option("--max-objects", o.max_objects, "Refuse larger categories")->capture_default_str();
    auto* degree = app.add_subcommand("degree", "Check a degree function");
    file_arg(degree);
    degree->add_option("--degrees", o.degrees, "JSON object {object: n}, inline or as a file")->required();
    auto* fixture_sub = app.add_subcommand("fixture", "Emit a built-in category");
    fixture_sub->add_option("name", o.fixture_name, "One of: " + [] {
        std::string s;
        for (const auto& n : fixture_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }())->required();
    auto* corpus = app.add_subcommand("corpus", "Generate the random corpus, optionally cross-checking it");
    corpus->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
    corpus->add_option("--count", o.count, "Number of categories")->capture_default_str();
    corpus->add_option("--budget", o.budget, "Search nodes per census")->capture_default_str();
    corpus->add_flag("--check", o.check, "Run every decider on every category");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Positive : InputError;
    }

    Runner r(o, in, out, err);
    try {
        if (*validate) return r.validate();
        if (*complete) return r.complete();
        if (*census) return r.census();
        if (*game) return r.game();
        if (*rigidity) return r.rigidity();
        if (*degree) return r.degree();
        if (*fixture_sub) return r.fixture_cmd();
        if (*corpus) return r.corpus();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return Disagreement;
    }
    return InputError;
}

} // namespace urigid::cli
