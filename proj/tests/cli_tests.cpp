// End-to-end tests for the command-line tool: each case runs the installed
// binary as a subprocess and compares bytes. Inputs are written directly so
// the expectations do not depend on any other subcommand.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "anoncontract-cli-tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string write_file(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    return p.string();
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const std::string err_path = path_of("stderr.txt");
    const std::string cmd = std::string(CLI_BIN_PATH) + " " + args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE_MESSAGE(pipe != nullptr, "failed to start: " << cmd);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

// Margin-0.1 two-agent instance whose fixed contract (1/2, 0) has equilibria
// of very different principal value.
const char* kGapInstance =
    R"({"agents":[{"q":0.2,"c":0.1},{"q":0.9,"c":0.45}]})";
const char* kGapContract = R"({"w":[0.5,0]})";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen-instance emits canonical JSON and the companion contract") {
    const std::string cpath = path_of("gap_w.json");
    const RunResult r = run_cli("gen-instance --family unbounded_gap --params eps=0.1 "
                                "--contract " + cpath);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.err, "");
    CHECK_EQ(r.out, "{\"agents\":[\n"
                    "{\"q\":0.2,\"c\":0.1},\n"
                    "{\"q\":0.9,\"c\":0.45}\n"
                    "]}\n");
    CHECK_EQ(slurp(cpath), "{\"w\":[0.5,0]}\n");

    const RunResult again = run_cli("gen-instance --family unbounded_gap --params eps=0.1");
    CHECK_EQ(again.out, r.out); // byte-for-byte reproducible
}

TEST_CASE("gen-instance writes --out instead of stdout") {
    const std::string opath = path_of("spread.json");
    const RunResult r =
        run_cli("gen-instance --family spread --params Q=4 n=2 --out " + opath);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "");
    CHECK_EQ(slurp(opath), "{\"agents\":[\n"
                           "{\"q\":0.0625,\"c\":0.03125},\n"
                           "{\"q\":0.125,\"c\":0.09375}\n"
                           "]}\n");
}

TEST_CASE("gen-instance failure modes use exit code 1 and name the problem") {
    const RunResult unknown = run_cli("gen-instance --family mystery");
    CHECK_EQ(unknown.code, 1);
    CHECK_EQ(unknown.err, "error: unknown instance family: mystery\n");
    CHECK_EQ(unknown.out, "");

    const RunResult nocontract =
        run_cli("gen-instance --family spread --params Q=4 n=2 --contract " +
                path_of("nope.json"));
    CHECK_EQ(nocontract.code, 1);
    CHECK_EQ(nocontract.err, "error: family spread does not produce a contract\n");

    const RunResult badkv = run_cli("gen-instance --family spread --params Q4");
    CHECK_EQ(badkv.code, 1);
    CHECK_EQ(badkv.err, "error: parameters take the form key=value, got: Q4\n");
}

TEST_CASE("solve-uniform reports the scan in density order") {
    const std::string in = write_file("gap.json", kGapInstance);
    const RunResult r = run_cli("solve-uniform --in " + in);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"k\":2,\"w\":0.5,\"utility\":0.55,\"prefix\":[1,2],"
                    "\"candidates\":[0.1,0.55]}\n");
}

TEST_CASE("solve-uniform float mode is exact on dyadic data") {
    const std::string in = write_file(
        "dyadic.json", R"({"agents":[{"q":0.5,"c":0.125},{"q":0.5,"c":0.25}]})");
    const RunResult r = run_cli("solve-uniform --mode float --in " + in);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"k\":2,\"w\":0.5,\"utility\":0.5,\"prefix\":[1,2],"
                    "\"candidates\":[0.375,0.5]}\n");
}

TEST_CASE("solve-ll finds the global optimum and answers per-set queries") {
    const std::string in = write_file("gap.json", kGapInstance);

    const RunResult global = run_cli("solve-ll --in " + in);
    CHECK_EQ(global.code, 0);
    CHECK_EQ(global.out, "{\"set\":[1,2],\"w\":[0.5,0.5],\"utility\":0.55}\n");

    const RunResult solo = run_cli("solve-ll --in " + in + " --set 2");
    CHECK_EQ(solo.out, "{\"set\":[2],\"feasible\":true,\"w\":[0.5,0],"
                       "\"payment\":0.45,\"utility\":0.45}\n");

    const RunResult empty = run_cli("solve-ll --in " + in + " --set none");
    CHECK_EQ(empty.out, "{\"set\":[],\"feasible\":true,\"w\":[0,0],"
                        "\"payment\":0,\"utility\":0}\n");
}

TEST_CASE("solve-ll table marks infeasible sets and keeps the valid optimum") {
    const std::string in = write_file(
        "infeasible.json", R"({"agents":[{"q":0.5,"c":0.125},{"q":0.5,"c":"1/3"}]})");
    const std::string table = path_of("table.csv");

    const RunResult probe = run_cli("solve-ll --in " + in + " --set 2");
    CHECK_EQ(probe.out, "{\"set\":[2],\"feasible\":false}\n");

    const RunResult r = run_cli("solve-ll --in " + in + " --table " + table);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"set\":[1],\"w\":[0.25,0],\"utility\":0.375}\n");
    CHECK_EQ(slurp(table), "set,status,utility\n"
                           "none,optimal,0\n"
                           "1,optimal,0.375\n"
                           "2,infeasible,na\n"
                           "1+2,optimal,1/3\n");
}

TEST_CASE("solve-ll skips sets containing agents that never succeed") {
    const std::string in = write_file(
        "zeroq.json", R"({"agents":[{"q":0.5,"c":0.1},{"q":0,"c":0}]})");
    const std::string table = path_of("zeroq_table.csv");
    const RunResult r = run_cli("solve-ll --in " + in + " --table " + table);
    CHECK_EQ(r.out, "{\"set\":[1],\"w\":[0.2,0],\"utility\":0.4}\n");
    CHECK_EQ(slurp(table), "set,status,utility\n"
                           "none,optimal,0\n"
                           "1,optimal,0.4\n"
                           "2,skipped,na\n"
                           "1+2,skipped,na\n");
}

TEST_CASE("solve-ll guards the exponential search with exit code 2") {
    const std::string in = path_of("thirteen.json");
    const RunResult gen = run_cli(
        "gen-instance --family random --params seed=1 n=13 qmin=0.1 qmax=0.9 --out " + in);
    REQUIRE_EQ(gen.code, 0);
    const RunResult r = run_cli("solve-ll --in " + in);
    CHECK_EQ(r.code, 2);
    CHECK_EQ(r.err, "guard: limited-liability search limited to 12 agents (got 13)\n");
}

TEST_CASE("solve-noll prints the threshold contract with its blocked tail") {
    const std::string in = write_file(
        "noll3.json",
        R"({"agents":[{"q":0.9,"c":0.4},{"q":0.8,"c":0.5},{"q":0.6,"c":0.5}]})");
    const RunResult r = run_cli("solve-noll --in " + in);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"k_star\":2,\"order\":[1,2,3],\"w\":[1,\"7/12\",\"blocked\"],"
                    "\"equilibrium\":[1,2],\"utility\":0.6,\"welfare_cap\":1.1}\n");
}

TEST_CASE("full-extract prints the welfare-extracting contract or the obstruction") {
    const std::string in = write_file(
        "extract.json", R"({"agents":[{"q":0.2,"c":0.05},{"q":0.5,"c":0.2}]})");
    const RunResult r = run_cli("full-extract --in " + in);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"set\":[1,2],\"w\":[0.5,0],\"utility\":0.45,"
                    "\"conditioning_warning\":false}\n");

    const std::string dup = write_file(
        "dupq.json", R"({"agents":[{"q":0.5,"c":0.1},{"q":0.5,"c":0.2}]})");
    const RunResult bad = run_cli("full-extract --in " + dup);
    CHECK_EQ(bad.code, 1);
    CHECK_EQ(bad.err, "error: success-count system is singular: profitable agents 1 "
                      "and 2 share success probability 0.5\n");
}

TEST_CASE("enumerate-pne lists equilibria best-first") {
    const std::string in = write_file("gap.json", kGapInstance);
    const std::string cw = write_file("gap_w_in.json", kGapContract);
    const RunResult r = run_cli("enumerate-pne --in " + in + " --contract " + cw);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"equilibria\":[\n"
                    "{\"set\":[2],\"utility\":0.45},\n"
                    "{\"set\":[1],\"utility\":0.1},\n"
                    "{\"set\":[],\"utility\":0}\n"
                    "]}\n");
}

TEST_CASE("enumerate-pne handles blocked entries in the contract file") {
    const std::string in = write_file(
        "blocked_inst.json", R"({"agents":[{"q":0.5,"c":0.1},{"q":0.25,"c":0.05}]})");
    const std::string cw = write_file("blocked_w.json", R"({"w":[0.6,"blocked"]})");
    const RunResult r = run_cli("enumerate-pne --in " + in + " --contract " + cw);
    CHECK_EQ(r.out, "{\"equilibria\":[\n"
                    "{\"set\":[1],\"utility\":0.2},\n"
                    "{\"set\":[2],\"utility\":0.1}\n"
                    "]}\n");
}

TEST_CASE("dynamics replays the better-response path") {
    const std::string in = write_file("gap.json", kGapInstance);
    const std::string cw = write_file("gap_w_in.json", kGapContract);
    const RunResult r =
        run_cli("dynamics --in " + in + " --contract " + cw + " --set 1+2");
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out, "{\"final\":[2],\"steps\":1,\"path\":[[1,2],[2]]}\n");

    const RunResult seeded = run_cli("dynamics --in " + in + " --contract " + cw +
                                     " --set 1+2 --policy random --seed 42");
    CHECK_EQ(seeded.code, 0);
    const RunResult replay = run_cli("dynamics --in " + in + " --contract " + cw +
                                     " --set 1+2 --policy random --seed 42");
    CHECK_EQ(replay.out, seeded.out);

    const RunResult noseed = run_cli("dynamics --in " + in + " --contract " + cw +
                                     " --policy random");
    CHECK_EQ(noseed.code, 1);
    CHECK_EQ(noseed.err, "error: --seed is required with the random update policy\n");
}

TEST_CASE("gap-report prints every class value, ratio, and bound flag") {
    const std::string in = write_file(
        "equal3.json",
        R"({"agents":[{"q":0.5,"c":0.1},{"q":0.5,"c":0.3},{"q":0.5,"c":"11/30"}]})");
    const RunResult r = run_cli("gap-report --in " + in);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out,
             "{\"n\":3,\"delta\":0.5,\"alpha\":0.5,\"sw\":\"11/15\",\"ua\":0.4,"
             "\"q_ratio\":1,\"opt_ll\":0.4,\"noll_log\":0.4,\"noll_full\":\"na\","
             "\"noll_full_reason\":\"success-count system is singular: profitable "
             "agents 1 and 2 share success probability 0.5\","
             "\"sw_over_ua\":\"11/6\",\"sw_over_opt_ll\":\"11/6\","
             "\"sw_over_noll_log\":\"11/6\","
             "\"flags\":{\"order\":\"ok\",\"qspread\":\"ok\",\"cspread\":\"ok\","
             "\"lowdens\":\"ok\",\"denscap\":\"na\",\"harmonic\":\"ok\","
             "\"extract\":\"na\"}}\n");

    const RunResult again = run_cli("gap-report --in " + in);
    CHECK_EQ(again.out, r.out);
}

TEST_CASE("gap-report accepts a custom density cap") {
    const std::string in = write_file(
        "alpha.json", R"({"agents":[{"q":0.5,"c":0.1},{"q":0.5,"c":0.3}]})");
    const RunResult r = run_cli("gap-report --in " + in + " --alpha 3/5");
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out,
             "{\"n\":2,\"delta\":0.5,\"alpha\":0.6,\"sw\":0.6,\"ua\":0.4,"
             "\"q_ratio\":1,\"opt_ll\":0.4,\"noll_log\":0.4,\"noll_full\":\"na\","
             "\"noll_full_reason\":\"success-count system is singular: profitable "
             "agents 1 and 2 share success probability 0.5\","
             "\"sw_over_ua\":1.5,\"sw_over_opt_ll\":1.5,\"sw_over_noll_log\":1.5,"
             "\"flags\":{\"order\":\"ok\",\"qspread\":\"ok\",\"cspread\":\"ok\","
             "\"lowdens\":\"na\",\"denscap\":\"ok\",\"harmonic\":\"ok\","
             "\"extract\":\"na\"}}\n");
}

TEST_CASE("gap-report in float mode stays exact on dyadic instances") {
    const std::string in = write_file(
        "dyadic.json", R"({"agents":[{"q":0.5,"c":0.125},{"q":0.5,"c":0.25}]})");
    const RunResult r = run_cli("gap-report --mode float --in " + in);
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out,
             "{\"n\":2,\"delta\":0.5,\"alpha\":0.5,\"sw\":0.625,\"ua\":0.5,"
             "\"q_ratio\":1,\"opt_ll\":0.5,\"noll_log\":0.5,\"noll_full\":\"na\","
             "\"noll_full_reason\":\"success-count system is singular: profitable "
             "agents 1 and 2 share success probability 0.5\","
             "\"sw_over_ua\":1.25,\"sw_over_opt_ll\":1.25,\"sw_over_noll_log\":1.25,"
             "\"flags\":{\"order\":\"ok\",\"qspread\":\"ok\",\"cspread\":\"ok\","
             "\"lowdens\":\"na\",\"denscap\":\"ok\",\"harmonic\":\"ok\","
             "\"extract\":\"na\"}}\n");
}

TEST_CASE("sweep prints the hand-computed harmonic grid as CSV") {
    const RunResult r = run_cli(
        "sweep --family equal_q_harmonic --params q=0.5 'n=1;2;3' c=0.1");
    CHECK_EQ(r.code, 0);
    CHECK_EQ(
        r.out,
        "family,params,n,Q,sw,ua,opt_ll,noll_log,noll_full,"
        "sw_over_ua,sw_over_opt_ll,sw_over_noll_log,flags,status\n"
        "equal_q_harmonic,c=0.1 n=1 q=0.5,1,1,0.4,0.4,0.4,0.4,0.4,1,1,1,"
        "order=ok qspread=ok cspread=ok lowdens=na denscap=ok harmonic=ok extract=ok,ok\n"
        "equal_q_harmonic,c=0.1 n=2 q=0.5,2,1,0.6,0.4,0.4,0.4,na,1.5,1.5,1.5,"
        "order=ok qspread=ok cspread=ok lowdens=na denscap=na harmonic=ok extract=na,ok\n"
        "equal_q_harmonic,c=0.1 n=3 q=0.5,3,1,11/15,0.4,0.4,0.4,na,11/6,11/6,11/6,"
        "order=ok qspread=ok cspread=ok lowdens=ok denscap=na harmonic=ok extract=na,ok\n");

    const RunResult again = run_cli(
        "sweep --family equal_q_harmonic --params q=0.5 'n=1;2;3' c=0.1");
    CHECK_EQ(again.out, r.out);
}

TEST_CASE("sweep keeps invalid grid points as rows") {
    const RunResult r = run_cli("sweep --family unbounded_gap --params 'eps=0.25;0.5'");
    CHECK_EQ(r.code, 0);
    const std::string::size_type second = r.out.find("unbounded_gap,eps=0.5,");
    REQUIRE(second != std::string::npos);
    CHECK(r.out.find("invalid: gap example requires 0 < eps < 1/2", second) !=
          std::string::npos);
}

TEST_CASE("bad inputs and bad set tokens exit with code 1") {
    const std::string bad = write_file("bad.json", "{\"agents\":[");
    const RunResult r = run_cli("solve-uniform --in " + bad);
    CHECK_EQ(r.code, 1);
    CHECK_EQ(r.err.rfind("error: malformed JSON near byte", 0), 0);

    const std::string in = write_file("gap.json", kGapInstance);
    const RunResult range = run_cli("solve-ll --in " + in + " --set 3");
    CHECK_EQ(range.code, 1);
    CHECK_EQ(range.err, "error: agent id 3 out of range 1..2\n");

    const RunResult mangled = run_cli("solve-ll --in " + in + " --set 1+x");
    CHECK_EQ(mangled.code, 1);
    CHECK_EQ(mangled.err, "error: malformed agent id in set: x\n");

    const RunResult missing = run_cli("solve-uniform --in " + path_of("no-such.json"));
    CHECK_EQ(missing.code, 1);
    CHECK_EQ(missing.err, "error: cannot open file: " + path_of("no-such.json") + "\n");
}

TEST_CASE("help lists the subcommands and exits cleanly") {
    const RunResult r = run_cli("--help");
    CHECK_EQ(r.code, 0);
    for (const char* name : {"gen-instance", "solve-uniform", "solve-ll", "solve-noll",
                             "full-extract", "enumerate-pne", "dynamics", "gap-report",
                             "sweep"})
        CHECK(r.out.find(name) != std::string::npos);
}

} // TEST_SUITE
