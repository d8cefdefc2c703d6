#include "urigid_cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using urigid::Json;

namespace {

const std::string fixtures = URIGID_FIXTURE_DIR;

struct Result {
    int code;
    std::string out, err;
    Json report() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = urigid::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("rigidity on M2 fails with witnesses", "[cli]") {
    auto r = run({"rigidity", fixtures + "/M2.json"});
    CHECK(r.code == 1);
    auto j = r.report();
    CHECK(j["schema"] == 1);
    CHECK(j["cauchy"]["non_split_idempotent"] == "e");
    CHECK(j["local"]["failed_condition"] == "cauchy_complete");
    CHECK(j["game"]["cleaner_wins"] == false);
    CHECK(j["game"]["losing"]["cycle_start"] == 1);
    CHECK(j["game"]["losing"]["play"].size() == 4);
    CHECK(j["double_negation"]["rigid"] == false);
    CHECK(j["double_negation"]["irreducibles"].empty());
    CHECK(j["agree"] == true);
    CHECK(j.contains("timings"));
}

TEST_CASE("census on Delta<=1", "[cli]") {
    auto r = run({"census", fixtures + "/delta1.json"});
    CHECK(r.code == 0);
    auto j = r.report();
    CHECK(j["census"]["count"] == 3);
    CHECK(j["census"]["bijection_holds"] == true);
    CHECK(r.err.find("bijection holds") != std::string::npos);

    auto tight = run({"census", fixtures + "/delta1.json", "--budget", "2"});
    CHECK(tight.code == 2);
    CHECK(tight.out.empty());
    CHECK(tight.err.find("BudgetExceeded") != std::string::npos);

    CHECK(run({"census", fixtures + "/delta1.json", "--max-objects", "1"}).code == 2);
}

TEST_CASE("fixtures pipe into validate", "[cli]") {
    auto f = run({"fixture", "one"});
    REQUIRE(f.code == 0);
    auto v = run({"validate", "-"}, f.out);
    CHECK(v.code == 0);
    CHECK(v.report()["validation"]["ok"] == true);
    CHECK(run({"fixture", "nope"}).code == 2);
}

TEST_CASE("bad input exits 2 with a diagnostic", "[cli]") {
    auto r = run({"validate", "-"}, R"({"name": "bad", "objects": ["*"], "morphisms": [{"name": "e", "dom": "*", "cod": "*"}], "composition": []})");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("MissingComposite") != std::string::npos);
    CHECK(run({"validate", "/nonexistent.json"}).code == 2);
    CHECK(run({"validate", "-"}, "{oops").code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("reports are reproducible without timings", "[cli][golden]") {
    auto a = run({"rigidity", fixtures + "/delta2.json", "--no-timings"});
    auto b = run({"rigidity", fixtures + "/delta2.json", "--no-timings"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.report().contains("timings"));

    // pinned reports; the working directory matters only for the sha256 of the file contents
    std::filesystem::current_path(fixtures);
    CHECK(run({"rigidity", "M2.json", "--no-timings"}).out == slurp(fixtures + "/reports/rigidity_M2.json"));
    CHECK(run({"rigidity", "KaroubiM2.json", "--no-timings"}).out ==
          slurp(fixtures + "/reports/rigidity_KaroubiM2.json"));
    CHECK(run({"census", "delta1.json", "--no-timings"}).out == slurp(fixtures + "/reports/census_delta1.json"));
}

TEST_CASE("input digest is the sha256 of the file bytes", "[cli]") {
    auto j = run({"validate", "-"}, "{\"name\":\"e\",\"objects\":[],\"morphisms\":[],\"composition\":[]}").report();
    CHECK(j["input"]["sha256"] == urigid::cli::sha256_hex("{\"name\":\"e\",\"objects\":[],\"morphisms\":[],\"composition\":[]}"));
    CHECK(urigid::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("game strategy export", "[cli]") {
    auto path = (std::filesystem::temp_directory_path() / "urigid_strategy_test.json").string();
    auto r = run({"game", fixtures + "/delta1.json", "--object", "[1]", "--strategy", path});
    CHECK(r.code == 0);
    auto s = Json::parse(slurp(path));
    CHECK(s["codomain"] == "[1]");
    REQUIRE(s["positions"].size() == 10);
    for (const auto& p : s["positions"]) {
        CHECK(p["winner"] == "Cleaner");
        if (p["morphism"] == "[1]->[1]:00" && p["turn"] == "C") CHECK(p["move"] == "[0]->[1]:0");
    }

    auto m = run({"game", fixtures + "/M2.json", "--strategy", path});
    CHECK(m.code == 1);
    auto all = Json::parse(slurp(path));
    REQUIRE(all.is_array());
    for (const auto& p : all[0]["positions"]) {
        CHECK(p["winner"] == "Reducer");
        CHECK(p["rank"].is_null());
        if (p["turn"] == "R") CHECK(p["move"] == "e");
    }
    std::filesystem::remove(path);
    CHECK(run({"game", fixtures + "/M2.json", "--object", "nope"}).code == 2);
}

TEST_CASE("degree command", "[cli]") {
    auto ok = run({"degree", fixtures + "/delta2.json", "--degrees", R"({"[0]": 0, "[1]": 1, "[2]": 2})"});
    CHECK(ok.code == 0);
    CHECK(ok.report()["game"]["cleaner_wins"] == true);
    auto bad = run({"degree", fixtures + "/P2.json", "--degrees", R"({"a": 0, "b": 0})"});
    CHECK(bad.code == 1);
    CHECK(bad.report()["degree"]["failing_morphism"] == "a<=b");
    CHECK(run({"degree", fixtures + "/P2.json", "--degrees", R"({"a": 0})"}).code == 2);
    CHECK(run({"degree", fixtures + "/P2.json", "--degrees", R"({"a": 0, "b": -1})"}).code == 2);
}

TEST_CASE("complete emits a loadable envelope", "[cli]") {
    auto r = run({"complete", fixtures + "/M2.json"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["embedding"]["*"] == "*");
    auto v = run({"validate", "-"}, r.out);
    CHECK(v.code == 0);
    CHECK(v.report()["validation"]["morphisms"] == 5);
    auto again = run({"rigidity", "-", "--no-timings"}, r.out);
    CHECK(again.code == 0);
}

TEST_CASE("corpus command", "[cli]") {
    auto gen = run({"corpus", "--seed", "3", "--count", "5"});
    CHECK(gen.code == 0);
    CHECK(gen.report()["categories"].size() == 5);
    auto check = run({"corpus", "--seed", "3", "--count", "25", "--check"});
    CHECK(check.code == 0);
    CHECK(check.report()["disagreements"] == 0);
    CHECK(check.report()["elements"].size() == 25);
}
