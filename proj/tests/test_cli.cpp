#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fmr/cli.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fmr;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expect = kExitPass) {
    Run r = run(std::move(args));
    REQUIRE_MESSAGE(r.code == expect, r.err);
    return Json::parse(r.out);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("fmr_test_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string p = temp_path(name);
    std::ofstream(p) << body;
    return p;
}

// A generic quartic through the origin in four affine variables over F_101.
std::string quartic_input() {
    Json terms = Json::array();
    int c = 1;
    for (int d = 1; d <= 4; ++d)
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b)
                for (int e = 0; a + b + e <= d; ++e) {
                    const int f = d - a - b - e;
                    c = (c * 37 + 11) % 101;
                    terms.push_back({{"e", {a, b, e, f}}, {"c", c == 0 ? 1 : c}});
                }
    Json j{{"field", {{"kind", "prime"}, {"p", 101}}}, {"nvars", 4}, {"terms", terms}, {"points", {{0, 0, 0, 0}}}};
    return j.dump();
}

int system_exit(const std::string& cmd) {
    const int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

}  // namespace

TEST_CASE("documented invocations") {
    CHECK(run_json({"bounds", "--M", "10", "--family", "hypersurface"})["result"]["bound"] == 1);
    Json c = run_json({"chain", "--M", "10", "--variant", "i"});
    CHECK(c["result"]["bound"] == "2/5");
    CHECK(c["result"]["chains"][0]["steps"].size() > 0);
    Json f = run_json({"fibre", "--family", "double", "--M", "5", "--m", "2"});
    CHECK(f["result"]["threshold"] == 3);
    CHECK(f["result"]["mode"] == "threshold");
}

TEST_CASE("report envelope records version, field, seed and budgets") {
    Json r = run_json({"bounds", "--M", "12", "--family", "double", "--seed", "9"});
    CHECK(r["tool"] == "fmr");
    CHECK(r["version"] == kToolVersion);
    CHECK(r["command"] == "bounds");
    CHECK(r["field"] == "rational");
    CHECK(r["seed"] == 9);
    CHECK(r["budgets"]["groebner_reductions"] == kDefaultBudget);
    CHECK(r["result"]["family"] == "double");
}

TEST_CASE("exit codes") {
    CHECK(run({"chain", "--M", "8", "--variant", "ii"}).code == kExitFail);
    CHECK(run({"chain", "--M", "9", "--variant", "ii"}).code == kExitPass);
    CHECK(run({"fibre", "--family", "double", "--M", "8", "--m", "3", "--l", "3"}).code == kExitFail);
    CHECK(run({"fibre", "--family", "double", "--M", "8", "--m", "3", "--l", "4"}).code == kExitPass);
    CHECK(run({"exclude", "--case", "divisorial", "--M", "12"}).code == kExitPass);
    CHECK(run({"exclude", "--case", "case1-general", "--M", "12"}).code == kExitFail);
    CHECK(run({"exclude", "--case", "case1-general", "--M", "12", "--auxiliary"}).code == kExitPass);
    Run u = run({"bounds"});
    CHECK(u.code == kExitError);
    CHECK(u.out.empty());
    CHECK(run({"bounds", "--M", "10", "--bogus"}).code == kExitError);
    CHECK(run({"frobnicate"}).code == kExitError);
    CHECK(run({"bounds", "--M", "3", "--family", "hypersurface"}).code == kExitError);
    CHECK(run({"chain", "--M", "10", "--variant", "iv"}).code == kExitError);
}

TEST_CASE("chain without a realizable step list reports the closed form") {
    Json r = run_json({"chain", "--M", "5"}, kExitFail);
    const Json& iii = r["result"]["chains"][2];
    CHECK(iii["realizable"] == false);
    CHECK(iii["closed_form"] == "8/9");
    CHECK(iii["meets_target"] == false);
    CHECK(r["result"]["multiplicity"]["bound"] == "8/3");
}

TEST_CASE("exclude trace") {
    Json r = run_json({"exclude", "--case", "divisorial", "--M", "10"});
    const Json& cert = r["result"]["certificates"][0];
    CHECK(cert["verdict"] == "infeasible");
    CHECK(cert["replays"] == true);
    CHECK(cert["branches"].size() == 2);
    CHECK(cert["branches"][0]["system"]["trace"].size() > 0);
    CHECK(cert["branches"][0]["system"]["multipliers"].size() > 0);
    Json all = run_json({"exclude", "--auxiliary"});
    CHECK(all["result"]["summary"]["infeasible"] == 21 * 4);
}

TEST_CASE("input parsing") {
    const GfContext* F = GfContext::get(101);
    Json j = Json::parse(R"({"field":{"kind":"prime","p":101},"nvars":2,
        "terms":[{"e":[1,0],"c":"1/3"},{"e":[0,2],"c":-2}],"points":[[3,"1/2"]]})");
    CHECK(input_field(j["field"]) == FieldSpec::prime(101));
    auto in = parse_poly_input<Gf>(j, F);
    CHECK(in.f.coeff(Monomial(std::vector<unsigned>{1, 0})) == Gf(F, 34));
    CHECK(in.f.coeff(Monomial(std::vector<unsigned>{0, 2})) == Gf(F, 99));
    CHECK(in.points.at(0).at(1) == Gf(F, 51));
    CHECK_FALSE(in.chart.has_value());

    auto q = parse_poly_input<Rational>(j, RationalField{});
    CHECK(q.f.coeff(Monomial(std::vector<unsigned>{1, 0})) == Rational(1) / Rational(3));
    CHECK(input_field(Json::parse(R"({"kind":"rational"})")) == FieldSpec::rational());

    auto error_of = [&](const std::string& s) -> std::string {
        try {
            parse_poly_input<Rational>(Json::parse(s), RationalField{});
        } catch (const InputError& ex) {
            return ex.what();
        }
        return "";
    };
    CHECK(error_of(R"({"nvars":2,"terms":[{"e":[1,0],"c":1},{"e":[1,0,0],"c":1}]})") ==
          "terms[1]: exponent vector has 3 entries, expected 2");
    CHECK(error_of(R"({"nvars":2,"terms":[{"e":[1,-1],"c":1}]})").rfind("terms[0].e[1]", 0) == 0);
    CHECK(error_of(R"({"nvars":2,"terms":[{"e":[1,0],"c":"x"}]})").rfind("terms[0].c", 0) == 0);
    CHECK(error_of(R"({"nvars":2,"terms":[{"e":[1,0],"c":1}],"points":[[1]]})").rfind("points[0]", 0) == 0);
    CHECK(error_of(R"({"nvars":2,"terms":[{"e":[1,0],"c":1},{"e":[0,2],"c":1}],"chart":0})") ==
          "terms: a chart index needs a homogeneous form");
    CHECK(error_of(R"({"terms":[]})") == "nvars: missing or not an integer");
    CHECK_THROWS_AS(input_field(Json::parse(R"({"kind":"prime","p":10})")), InputError);
    // 1/101 has no image in F_101.
    CHECK_THROWS_AS(parse_poly_input<Gf>(Json::parse(R"({"nvars":1,"terms":[{"e":[1],"c":"1/101"}]})"), F), InputError);
}

TEST_CASE("check subcommand") {
    const std::string gen = write_temp("quartic.json", quartic_input());
    // Default R1.2 threshold 6 exceeds what four variables allow.
    Json r = run_json({"check", "--input", gen}, kExitFail);
    CHECK(r["field"] == "p:101");
    const Json& conds = r["result"]["points"][0]["conditions"];
    REQUIRE(conds.size() == 3);
    CHECK(conds[1]["condition"] == "R1.2");
    CHECK(conds[1]["verdict"] == "fail");
    CHECK(conds[1]["witness"]["rechecked"] == true);
    CHECK(conds[0]["witness"].is_null());

    Json ok = run_json({"check", "--input", gen, "--thresholds", "2,4,3,8"});
    // Rank clears the threshold; the component search needs more variables.
    const Json& r12 = ok["result"]["points"][0]["conditions"][1];
    CHECK(r12["verdict"] == "inconclusive");
    CHECK(r12["thresholds"]["rank"] == 3);
    CHECK(ok["config"]["thresholds"] == "2,4,3,8");

    // Budget exhaustion is a verdict, not an error.
    Json tiny = run_json({"check", "--input", gen, "--thresholds", "2,4,3,8", "--budget", "1"});
    CHECK(tiny["budgets"]["groebner_reductions"] == 1);
    CHECK(tiny["result"]["points"][0]["conditions"][0]["verdict"] == "inconclusive");

    // Projective input through a chart: x0^2 x1 - x1^3 + x0 x2 x3 at (1:1:0:0).
    const std::string proj = write_temp("proj.json", R"({"field":{"kind":"rational"},"nvars":4,"chart":0,
        "terms":[{"e":[2,1,0,0],"c":1},{"e":[0,3,0,0],"c":-1},{"e":[1,0,1,1],"c":1}],"points":[[2,2,0,0]]})");
    Run pr = run({"check", "--input", proj, "--thresholds", "2,4,2,8"});
    REQUIRE_MESSAGE((pr.code == kExitPass || pr.code == kExitFail), pr.err);
    Json p = Json::parse(pr.out);
    CHECK(p["config"]["chart"] == 0);
    CHECK(p["result"]["points"][0]["kind"] == "nonsingular");
    CHECK(p["result"]["points"][0]["source"].get<std::string>().find("(1, 0, 0)") != std::string::npos);

    const std::string off = write_temp("off.json", R"({"nvars":2,"terms":[{"e":[1,0],"c":1},{"e":[0,0],"c":1}],"points":[[0,0]]})");
    Run e = run({"check", "--input", off});
    CHECK(e.code == kExitError);
    CHECK(e.err.find("points[0]") != std::string::npos);
    CHECK(run({"check", "--input", temp_path("missing.json")}).code == kExitError);
    CHECK(run({"check", "--input", write_temp("broken.json", "{\"nvars\": 2,")}).code == kExitError);
    CHECK(run({"check", "--input", gen, "--field", "p:103"}).code == kExitError);
}

TEST_CASE("identical configuration gives identical bytes") {
    const std::vector<std::string> args{"survey", "--M", "4", "--family", "double", "--samples", "300", "--seed", "17"};
    Run a = run(args), b = run(args);
    CHECK(a.code == kExitPass);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["seed"] == 17);
    CHECK(j["field"] == "p:101");
    CHECK(j["result"]["samples"] == 300);
    Run c = run({"survey", "--M", "4", "--family", "double", "--samples", "300", "--seed", "18"});
    CHECK(c.out != a.out);
    CHECK(run({"survey", "--M", "4", "--field", "rational"}).code == kExitError);
}

TEST_CASE("text rendering and report files") {
    Run t = run({"fibre", "--family", "hypersurface", "--M", "10", "--m", "2", "--l", "4", "--text"});
    CHECK(t.code == kExitPass);
    std::istringstream lines(t.out);
    std::string line;
    size_t col = std::string::npos;
    while (std::getline(lines, line)) {
        const size_t sp = line.find("  ");
        REQUIRE(sp != std::string::npos);
        const size_t v = line.find_first_not_of(' ', sp);
        if (col == std::string::npos) col = v;
        CHECK(v == col);
    }
    CHECK(t.out.find("result.holds") != std::string::npos);

    const std::string out = temp_path("report.json");
    std::filesystem::remove(out);
    Run w = run({"chain", "--M", "10", "--variant", "i", "--out", out});
    CHECK(w.code == kExitPass);
    CHECK(w.out.empty());
    CHECK(read_json_file(out)["result"]["bound"] == "2/5");
}

TEST_CASE("installed binary honours the exit-code contract") {
    const std::string bin = FMR_CLI_PATH;
    CHECK(system_exit(bin + " bounds --M 10 > /dev/null") == 0);
    CHECK(system_exit(bin + " chain --M 8 --variant ii > /dev/null") == 2);
    CHECK(system_exit(bin + " bounds --frob > /dev/null 2>&1") == 1);
    const std::string out = temp_path("binary.json");
    std::filesystem::remove(out);
    CHECK(system_exit(bin + " chain --M 8 --variant ii --out " + out) == 2);
    CHECK(std::filesystem::exists(out));
}
