#include "cli.hpp"
#include "divlab/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace divlab;
using io::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected = 0) {
    const Run r = run(std::move(args));
    REQUIRE(r.code == expected);
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("real formatting") {
    CHECK(io::format_real(1.0 / 3.0) == "0.333333333333333");
    CHECK(io::round15(0.1 + 0.2) == 0.3);
    CHECK(io::format_real(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::real(std::nan("")).is_null());
}

TEST_CASE("verify-claim at depth 1") {
    const Json j = run_json({"verify-claim", "--k", "1"});
    CHECK(j["lambda"] == "1/96");
    CHECK(Rational::parse(j["measure"].get<std::string>()) >= Rational(11, 96));
    CHECK(j["required_measure"] == "11/96");
    CHECK(j["d_contained"] == true);
    CHECK(j["verified"] == true);
    const Run csv = run({"verify-claim", "--k", "1", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("x,F,x_real,F_real\n", 0) == 0);
}

TEST_CASE("verify-claim fails at an unreachable level") {
    const Run r = run({"verify-claim", "--k", "1", "--lambda", "1/2"});
    CHECK(r.code == 2);
    CHECK(Json::parse(r.out)["verified"] == false);
}

TEST_CASE("thresholds") {
    const Json j = run_json({"thresholds"});
    CHECK(j["furstenberg"].get<double>() == doctest::Approx(1.27894294565113).epsilon(1e-14));
    CHECK(j["cubes(3)"] == "5/4");
    CHECK(j["degenerate(3)"] == "3/2");
    const Json j4 = run_json({"thresholds", "--m", "4", "--r", "4"});
    CHECK(j4["cubes(4)"] == "9/5");
    CHECK(j4["degenerate(4)"] == "4/3");
}

TEST_CASE("blowup above the critical exponent is not an error") {
    const Json j = run_json({"blowup", "--kind", "thm1", "--p", "2", "--kmax", "5"});
    CHECK(j["verdict"] == "decays");
    CHECK(j["certificate"] == "none");
    CHECK(j["entries"].size() == 5);
    const Json d = run_json({"blowup", "--kind", "cubes", "--p", "6/5", "--m", "3", "--kmax", "3"});
    CHECK(d["verdict"] == "diverges");
    const Run csv = run({"blowup", "--kind", "h3", "--p", "1.2", "--format", "csv"});
    CHECK(csv.out.rfind("k,lower_norm_bound,product_of_norms,ratio", 0) == 0);
    const Run series = run({"blowup", "--kind", "thm1", "--p", "1.2", "--format", "csv"});
    CHECK(series.out.rfind("index,value,step_ratio,verdict\n", 0) == 0);
}

TEST_CASE("verify-cubes exit codes") {
    const Json ok = run_json({"verify-cubes", "--m", "3", "--k", "1"});
    CHECK(ok["verified"] == true);
    CHECK(ok["certificate"]["checks"] == 112);
    CHECK(ok["measure_C"] == "1/4");
    const Json first = ok["certificate"]["entries"][0];
    CHECK(first.contains("x"));
    CHECK(first.contains("epsilon"));
    CHECK(first.contains("pass"));
    CHECK(first.contains("margin"));

    const Run tampered = run({"verify-cubes", "--m", "3", "--k", "1", "--tamper-t-tail", "2"});
    CHECK(tampered.code == 2);
    CHECK(Json::parse(tampered.out)["verified"] == false);
}

TEST_CASE("find-nk, h3-eval, degenerate, classify") {
    const Json n = run_json({"find-nk", "--k", "1"});
    CHECK(n["n"] == 96);
    CHECK(n["lambda"] == "1/192");

    const Json h = run_json({"h3-eval", "--k", "1"});
    CHECK(h["evaluations"].size() == 11);
    CHECK(h["all_meet_level"] == true);
    const Json h0 = run_json({"h3-eval", "--k", "1", "--x", "0"});
    CHECK(h0["evaluations"][0]["infinite"] == true);
    CHECK(h0["evaluations"][0]["value"].is_null());

    const Json d = run_json({"degenerate", "--M", "100", "--p4prime", "0.4", "--L", "100", "10000"});
    const double growth = d["rows"][1]["ratio"].get<double>() / d["rows"][0]["ratio"].get<double>();
    CHECK(growth > 5.0);
    const Json g = run_json({"degenerate", "--r", "3", "--b", "2,-1", "--p", "1.4", "--L", "1e4"});
    CHECK(g["rows"][0]["grows"] == true);

    const Json c = run_json({"classify", "--matrix", "2,0;0,2;1,1"});
    CHECK(c["scenario"] == "degenerate");
    CHECK(c["r"] == 3);
    CHECK(c["predicted_p_bound"] == "3/2");
    CHECK(c["extended_matrix"].size() == 4);
    CHECK(run_json({"classify", "--matrix", "1;2"})["scenario"] == "independent");
}

TEST_CASE("usage errors exit 1 with one diagnostic line") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"verify-claim", "--k", "zero"},
             {"blowup", "--kind", "thm1"},
             {"blowup", "--kind", "thm1", "--p", "abc"},
             {"blowup", "--kind", "other", "--p", "1.2"},
             {"blowup", "--kind", "thm1", "--p", "0.5"},
             {"classify", "--matrix", "1,2;3"},
             {"h3-eval", "--x", "1/2"},
             {"h3-eval", "--x", "1/0"},
             {"construct-cubes", "--m", "2"},
             {"degenerate", "--L", "0.001"},
             {"verify-claim", "--format", "xml"},
         }) {
        const Run r = run(args);
        CHECK(r.code == 1);
        CHECK(r.out.empty());
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    const Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify-cubes") != std::string::npos);
}

TEST_CASE("determinism: identical output across runs") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"construct-thm1", "--k", "2"},
             {"construct-cubes", "--m", "4", "--k", "1"},
             {"verify-claim", "--k", "2"},
             {"find-nk", "--k", "1", "--topology", "circle"},
             {"verify-cubes", "--m", "3", "--k", "1", "--format", "csv"},
             {"blowup", "--kind", "cubes", "--p", "1.2", "--mode", "bound"},
             {"h3-eval", "--k", "2"},
             {"degenerate"},
             {"classify", "--matrix", "1,0,0;0,1,1;1,1,1;1,0,1"},
             {"thresholds", "--format", "csv"},
         }) {
        const Run a = run(args);
        const Run b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("scenario round-trip") {
    for (int k : {1, 2, 3}) {
        const Json j = run_json({"construct-thm1", "--k", std::to_string(k)});
        CHECK(io::thm1_from_json(j) == furstenberg_family(k));
        CHECK(io::to_json(io::thm1_from_json(j)) == j);
        CHECK(j["measures"]["D"] == "1/8");
    }
    for (auto [m, k] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
        const Json j = run_json({"construct-cubes", "--m", std::to_string(m), "--k", std::to_string(k)});
        CHECK(io::cubes_from_json(j) == cube_family(m, k));
        CHECK(io::to_json(io::cubes_from_json(j)) == j);
    }
    const IntervalUnion u = furstenberg_family(1).set_a;
    CHECK(io::interval_union_from_json(io::to_json(u)) == u);
    CHECK(io::rational_from_json(io::to_json(Rational(-1, 96))) == Rational(-1, 96));
    CHECK_THROWS_AS((void)io::thm1_from_json(run_json({"construct-cubes"})), std::invalid_argument);
}

TEST_CASE("artifacts written with --output") {
    const auto path = std::filesystem::temp_directory_path() / "divlab_cli_test_output.json";
    std::filesystem::remove(path);
    const Run r = run({"thresholds", "--output", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(Json::parse(text.str())["cubes(3)"] == "5/4");
    std::filesystem::remove(path);
}
