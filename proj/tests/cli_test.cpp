#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "partmech/instance_io.hpp"
#include "test_util.hpp"

using namespace partmech;
using namespace partmech::testutil;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(PARTMECH_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "partmech_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("gen writes canonical instances and is seed-deterministic") {
    fs::path dir = temp_dir();
    fs::path a = dir / "a.json", b = dir / "b.json";

    CHECK(run("gen two-bundles --out " + a.string()).exit_code == 0);
    ProductInstance inst = read_instance_json(read_text_file(a));
    CHECK(inst.size() == 4);
    CHECK(inst.items[2] == dist({{q(1), q(9, 10)}, {q(10), q(1, 10)}}));

    CHECK(run("gen random --n 6 --seed 7 --out " + a.string()).exit_code == 0);
    CHECK(run("gen random --n 6 --seed 7 --out " + b.string()).exit_code == 0);
    CHECK(read_text_file(a) == read_text_file(b));  // byte-identical

    CHECK(run("gen 3dm --edges '0,0,0;1,1,1' --out " + a.string()).exit_code == 0);
    CHECK(read_instance_json(read_text_file(a)).size() == 6);
    GadgetMeta meta = read_gadget_meta_json(read_text_file(a.string() + ".meta.json"));
    CHECK(meta.pi == std::vector<Integer>{72, 80});
}

TEST_CASE("solve exact reports the known optimum") {
    fs::path dir = temp_dir();
    fs::path inst = dir / "tb.json", mech = dir / "tb_mech.json";
    REQUIRE(run("gen two-bundles --out " + inst.string()).exit_code == 0);

    RunResult r = run("solve " + inst.string() + " --method exact --out " + mech.string());
    CHECK(r.exit_code == 0);
    json report = json::parse(r.out);
    CHECK(report["revenue"]["rational"] == "217/50");
    CHECK(report["revenue"]["decimal"] == "4.340000");
    CHECK(report["srev"]["rational"] == "4");
    CHECK(report["partitions_examined"] == 15);
    CHECK(report["truncated"] == false);

    PricedPartition pp = read_mechanism_json(read_text_file(mech));
    REQUIRE(pp.bundles.size() == 2);
    CHECK(pp.bundles[0].price == 3);
    CHECK(pp.bundles[1].price == 11);
}

TEST_CASE("eval against mechanism and menu files") {
    fs::path dir = temp_dir();
    fs::path inst = dir / "hn.json", mech = dir / "hn_mech.json", menu = dir / "hn_menu.json";
    REQUIRE(run("gen hart-nisan --out " + inst.string()).exit_code == 0);

    PricedPartition grand;
    grand.bundles = {{{0, 1}, q(2)}};
    write_text_file(mech, write_mechanism_json(grand));
    RunResult r = run("eval " + inst.string() + " " + mech.string());
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["revenue"]["rational"] == "4/3");

    ChooseOneMenu m;
    m.options = {{{0}, q(2)}, {{1}, q(2)}, {{0, 1}, q(3)}};
    write_text_file(menu, write_menu_json(m));
    r = run("eval " + inst.string() + " " + menu.string() + " --menu");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["revenue"]["rational"] == "13/9");
}

TEST_CASE("solve is thread-count invariant end to end") {
    fs::path dir = temp_dir();
    fs::path inst = dir / "rnd.json";
    REQUIRE(run("gen random --n 6 --seed 11 --max-support 3 --out " + inst.string()).exit_code == 0);
    for (const std::string method : {"exact", "ptas"}) {
        RunResult one = run("solve " + inst.string() + " --method " + method + " --threads 1");
        RunResult four = run("solve " + inst.string() + " --method " + method + " --threads 4");
        // exit 3 means the candidate budget truncated the search, which is
        // routine for ptas; the result must still be identical across threads
        CHECK((one.exit_code == 0 || one.exit_code == 3));
        CHECK(one.exit_code == four.exit_code);
        json ra = json::parse(one.out), rb = json::parse(four.out);
        CHECK(ra["revenue"] == rb["revenue"]);
        CHECK(ra["mechanism"] == rb["mechanism"]);
        CHECK(ra["partitions_examined"] == rb["partitions_examined"]);
    }
}

TEST_CASE("exit codes: usage, size, file") {
    fs::path dir = temp_dir();
    fs::path inst = dir / "big.json";

    CHECK(run("nonsense-subcommand").exit_code == 2);
    CHECK(run("gen two-gap --n 5").exit_code == 2);  // not a perfect square

    REQUIRE(run("gen random --n 13 --seed 3 --out " + inst.string()).exit_code == 0);
    CHECK(run("solve " + inst.string() + " --method exact").exit_code == 3);  // oracle bound

    fs::path bad = dir / "bad.json";
    write_text_file(bad, "{ not json");
    CHECK(run("solve " + bad.string()).exit_code == 4);
    CHECK(run("solve " + (dir / "missing.json").string()).exit_code == 4);
}

TEST_CASE("compare emits the pinned CSV schema") {
    RunResult r = run("compare --family random --n-list 4 --count 2 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("instance_id,n,srev,brev,prev_exact,prev_ptas,ratio_prev_over_maxsb,"
                      "elapsed_exact,elapsed_ptas\n", 0) == 0);
    // two data rows
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 3);
}
