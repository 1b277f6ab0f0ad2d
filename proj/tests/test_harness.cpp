#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "linrec/harness.hpp"

using namespace linrec;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
    const auto p = std::filesystem::temp_directory_path() / ("linrec_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
    const Config c = Config::parse(
        "experiment = thm1-floor\n"
        "# a comment\n"
        "[space]\n"
        "p = 2\n"
        "K = 1\n"
        "[run]\n"
        "horizon = 100\n");
    CHECK(c.get("experiment") == "thm1-floor");
    CHECK(c.get_double("space.p", 0.0) == doctest::Approx(2.0));
    CHECK(c.get_int("run.horizon", 0) == 100);
    CHECK(c.get_int("run.length", 5) == 5);  // default passes through

    CHECK_THROWS_AS(Config::parse("bogus_key = 1\n"), config_error);
    CHECK_THROWS_AS(Config::parse("[space]\nbogus = 1\n"), config_error);
    CHECK_THROWS_AS(Config::parse("experiment thm1-floor\n"), config_error);
    CHECK_THROWS_AS(Config::parse("[run]\nhorizon = soon\n").get_int("run.horizon", 0),
                    config_error);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent/path.cfg"), config_error);
}

TEST_CASE("trace and report emission") {
    const auto dir = temp_dir("emit");
    emit_trace(dir / "empty.csv", "a,b", {});
    CHECK(slurp(dir / "empty.csv") == "a,b\n");
    emit_trace(dir / "rows.csv", "n,v", {"1,0.5", "2,0.25"});
    CHECK(slurp(dir / "rows.csv") == "n,v\n1,0.5\n2,0.25\n");

    RunReport rep;
    rep.experiment = "demo";
    rep.seed = 7;
    rep.check("first", true, "detail");
    rep.summary["alpha"] = "1";
    emit_report(dir / "report.txt", rep);
    const std::string text = slurp(dir / "report.txt");
    CHECK(text.find("status = PASS") != std::string::npos);
    CHECK(text.find("first = PASS (detail)") != std::string::npos);

    RunReport empty;
    CHECK_FALSE(empty.all_pass());  // zero assertions is a failure by contract
}

TEST_CASE("unknown experiment and missing experiment") {
    const auto dir = temp_dir("bad");
    Config c;
    CHECK_THROWS_AS(run(c, dir, 1), config_error);
    c.set("experiment", "thm9-nothing");
    CHECK_THROWS_AS(run(c, dir, 1), config_error);
}

TEST_CASE("recurrence recipe") {
    const auto dir = temp_dir("rec");
    Config c = Config::parse("experiment = thm1-recurrence\n[run]\neps = 1e-2\nhorizon = 32\n");
    const RunReport rep = run(c, dir, 1);
    CHECK(rep.all_pass());
    CHECK(std::filesystem::exists(dir / "orbit_trace.csv"));
    CHECK(std::filesystem::exists(dir / "report.txt"));
    CHECK(std::filesystem::exists(dir / "resolved_config.txt"));
}

TEST_CASE("floor recipe with a short horizon") {
    const auto dir = temp_dir("floor");
    Config c = Config::parse("experiment = thm1-floor\n[run]\nhorizon = 5000\n");
    const RunReport rep = run(c, dir, 1);
    CHECK(rep.all_pass());
    CHECK(rep.summary.count("floor") == 1);
    CHECK(std::stod(rep.summary.at("floor")) >= 1.0 / std::numbers::pi - 0.02);
}

TEST_CASE("progression recipe") {
    const auto dir = temp_dir("ap");
    Config c = Config::parse("experiment = thm1-ap\n[run]\neps = 1e-3\nlength = 5\n");
    const RunReport rep = run(c, dir, 1);
    CHECK(rep.all_pass());
    CHECK(rep.summary.at("ap.longest") >= "5");
}

TEST_CASE("exclusion recipe on a small schedule") {
    const auto dir = temp_dir("excl");
    Config c = Config::parse(
        "experiment = thm2-exclusion\n"
        "[blockshift]\n"
        "j_max = 3\n"
        "v_rate = 0.5\n"
        "m_schedule = 3 2000 20000\n"
        "[run]\n"
        "j_min = 1\n"
        "j_max = 1\n");
    const RunReport rep = run(c, dir, 1);
    CHECK(rep.all_pass());
    CHECK(std::filesystem::exists(dir / "exclusion.csv"));

    // the parallel path computes the same report
    const auto dir2 = temp_dir("excl_par");
    const RunReport rep2 = run(c, dir2, 1, true);
    CHECK(rep2.all_pass());
    CHECK(slurp(dir / "exclusion.csv") == slurp(dir2 / "exclusion.csv"));
}

TEST_CASE("periodic recipe") {
    const auto dir = temp_dir("per");
    Config c = Config::parse("experiment = thm2-periodic\n[run]\nj_max = 2\n");
    const RunReport rep = run(c, dir, 1);
    CHECK(rep.all_pass());
}

TEST_CASE("cyclicity recipe") {
    const auto dir = temp_dir("cyc");
    Config c = Config::parse("experiment = thm2-cyclic\n[run]\ntrials = 5\n");
    const RunReport rep = run(c, dir, 9);
    CHECK(rep.all_pass());
}

TEST_CASE("real-field recipe") {
    const auto dir = temp_dir("real");
    Config c = Config::parse("experiment = thm2-real\n[run]\nj_max = 2\n");
    const RunReport rep = run(c, dir, 9);
    CHECK(rep.all_pass());
}

TEST_CASE("facts suite recipe") {
    const auto dir = temp_dir("facts");
    Config c = Config::parse("experiment = facts-suite\n[run]\nhorizon = 500\n");
    const RunReport rep = run(c, dir, 1);
    CHECK(rep.all_pass());
}

TEST_CASE("determinism: same config and seed give identical bytes") {
    Config c = Config::parse("experiment = thm2-cyclic\n[run]\ntrials = 4\n");
    const auto dir = temp_dir("det");
    run(c, dir, 123);
    const std::string first_report = slurp(dir / "report.txt");
    const std::string first_csv = slurp(dir / "cyclic.csv");
    run(c, dir, 123);
    CHECK(slurp(dir / "report.txt") == first_report);
    CHECK(slurp(dir / "cyclic.csv") == first_csv);

    // a different seed flows into the report header
    run(c, dir, 124);
    CHECK(slurp(dir / "report.txt") != first_report);
}

TEST_CASE("invalid block configs are config errors") {
    const auto dir = temp_dir("cfgerr");
    Config c = Config::parse(
        "experiment = thm2-exclusion\n[blockshift]\nfield = quaternion\n");
    CHECK_THROWS_AS(run(c, dir, 1), config_error);
    Config c2 = Config::parse(
        "experiment = thm2-exclusion\n[blockshift]\nj_max = 3\nm_schedule = 1 2 3\n");
    CHECK_THROWS_AS(run(c2, dir, 1), config_error);
}
