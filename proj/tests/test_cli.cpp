#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

#include "dsa/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dsa;
using namespace dsa::testutil;

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code;
    std::string out;
};

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("dsa_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const fs::path out = workdir() / "stdout.txt";
    const std::string cmd = std::string(DSA_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                            (workdir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string fixture_path(const std::string& name, const Json& j) {
    const fs::path p = workdir() / name;
    save_json_file(p.string(), j);
    return p.string();
}

}  // namespace

TEST_CASE("construct ln + interval pipeline prints the exact interval") {
    const std::string l2 = (workdir() / "l2.json").string();
    CHECK(run_cli("construct ln --n 2 --out " + l2).exit_code == 0);
    const CliResult iv = run_cli("interval " + l2 + " --regex \"a*b*\" --max-len 6");
    CHECK(iv.exit_code == 0);
    CHECK(iv.out == "(3/4, 1)\n");
}

TEST_CASE("accept prints a bare rational") {
    const std::string l2 = fixture_path("l2b.json", prac_to_json(fix_l2_by_hand()));
    const CliResult r = run_cli("accept " + l2 + " ba");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3/4\n");

    SUBCASE("DH automata report the full triple") {
        const std::string adh = fixture_path("adh.json", pradh_to_json(fix_adh()));
        const CliResult t = run_cli("accept " + adh + " ab");
        CHECK(t.exit_code == 0);
        CHECK(t.out == "accept=1 reject=0 nonhalt=0\n");
    }
}

TEST_CASE("classify emits the verdict and witness") {
    const CliResult r = run_cli("classify --regex \"(a,b)*a\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "type (*) via (*\"); witness x=a y=b\n");

    CHECK(run_cli("classify --regex \"a*b*\"").out == "not type (*)\n");
    const CliResult prime = run_cli("classify --regex \"a(a,b)*\"");
    CHECK(prime.out.find("via (*')") != std::string::npos);
}

TEST_CASE("validate exit codes and diagnostics") {
    Json bad = prac_to_json(fix_l2_by_hand());
    bad["transitions"]["a"]["entries"][1][1] = "1";  // column 1 sums to 3/2
    const std::string path = fixture_path("bad.json", bad);
    const CliResult r = run_cli("validate " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("symbol 'a'") != std::string::npos);
    CHECK(r.out.find("index 1") != std::string::npos);

    const std::string good = fixture_path("good.json", prac_to_json(fix_l2_by_hand()));
    CHECK(run_cli("validate " + good).exit_code == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("interval").exit_code == 2);
    CHECK(run_cli("construct ln").exit_code == 2);  // missing --n
}

TEST_CASE("every construct output passes validate") {
    const std::string l2 = fixture_path("l2c.json", prac_to_json(fix_l2_by_hand()));
    const std::string norm = (workdir() / "norm.json").string();
    CHECK(run_cli("construct normalize " + l2 + " --p1 3/4 --p2 1 --out " + norm).exit_code == 0);
    CHECK(run_cli("validate " + norm).exit_code == 0);

    const std::string boosted = (workdir() / "boost.json").string();
    CHECK(run_cli("construct boost " + l2 + " --copies 2 --p1 3/4 --p2 1 --out " + boosted)
              .exit_code == 0);
    CHECK(run_cli("validate " + boosted).exit_code == 0);

    const std::string quot = (workdir() / "quot.json").string();
    CHECK(run_cli("construct quotient " + l2 + " --word b --out " + quot).exit_code == 0);
    CHECK(run_cli("validate " + quot).exit_code == 0);
    CHECK(run_cli("accept " + quot + " a").out == "3/4\n");
}

TEST_CASE("markov reports chain structure as JSON") {
    StochMatrix swap(mat({{"0", "1"}, {"1", "0"}}));
    const std::string path = fixture_path("swap.json", matrix_to_json(swap));
    const CliResult r = run_cli("markov " + path);
    CHECK(r.exit_code == 0);
    const Json report = Json::parse(r.out);
    CHECK(report.at("irreducible") == true);
    CHECK(report.at("aperiodic") == false);
    CHECK(report.at("period")[0] == 2);
}

TEST_CASE("probe emits RFC-4180-style CSV with rational gaps") {
    const std::string l2 = fixture_path("l2d.json", prac_to_json(fix_l2_by_hand()));
    const CliResult r = run_cli("probe " + l2 + " --x a --y b --m-max 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "m,gap\n1,1/4\n2,1/16\n3,1/64\n");

    SUBCASE("--float adds a decimal column") {
        const CliResult f = run_cli("probe " + l2 + " --x a --y b --m-max 1 --float");
        CHECK(f.out.substr(0, 17) == "m,gap,gap_float\n1");
    }
}

TEST_CASE("prototype decides 3x3 matrices and searches otherwise") {
    StochMatrix counter(mat({{"1/2", "1/2", "0"}, {"1/2", "0", "1/2"}, {"0", "1/2", "1/2"}}));
    const std::string bad = fixture_path("counter.json", matrix_to_json(counter));
    CHECK(run_cli("prototype " + bad + " --seed 1").out == "unistochastic: no\n");

    StochMatrix half(mat({{"1/2", "1/2"}, {"1/2", "1/2"}}));
    const std::string good = fixture_path("half.json", matrix_to_json(half));
    const std::string proto = (workdir() / "proto.json").string();
    const CliResult r = run_cli("prototype " + good + " --seed 1 --budget 10 --out " + proto);
    CHECK(r.out == "prototype: found\n");
    const ComplexMatrix u = complex_from_json(load_json_file(proto));
    CHECK(is_prototype(u, half, 1e-8));
}

TEST_CASE("simulate15 is bit-reproducible for a fixed seed") {
    const std::string f15 = fixture_path("f15.json", pra15_to_json(fix_15()));
    const std::string args = "simulate15 " + f15 + " aba --trials 2000 --max-steps 100 --seed 9";
    const CliResult r1 = run_cli(args);
    const CliResult r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("rejected=0") != std::string::npos);
}
