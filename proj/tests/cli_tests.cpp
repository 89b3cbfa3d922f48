#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string cli() {
    const char* path = std::getenv("RULECP_CLI");
    REQUIRE_MESSAGE(path != nullptr, "RULECP_CLI must point at the built binary");
    return path;
}

std::string data() {
    const char* path = std::getenv("RULECP_DATA");
    REQUIRE_MESSAGE(path != nullptr, "RULECP_DATA must point at the data directory");
    return path;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run(const std::string& args) {
    CommandResult result;
    FILE* pipe = popen((cli() + " " + args + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe))
        result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        out.push_back(line);
    return out;
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("solve --all prints the nine conjunction solutions") {
    CommandResult r = run("solve " + data() + "/and3.json --all --propagator membership");
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines = lines_of(r.output);
    REQUIRE(!lines.empty());
    // last line is the stats record, the rest are solutions
    CHECK(lines.back().find("nodes=") == 0);
    CHECK(lines.size() == 10);
    CHECK(lines.front().find("x=") != std::string::npos);
}

TEST_CASE("solve on an unsatisfiable problem prints stats only and exits 0") {
    CommandResult r = run("solve " + data() + "/unsat.json --all");
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines = lines_of(r.output);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].find("solutions=0") != std::string::npos);
}

TEST_CASE("solve --trace shows the worked disjunctive reduction") {
    CommandResult r =
        run("solve " + data() + "/absdiff.json --propagator cd --trace --all");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("x:{4,5,6,7,8,9,10}->{4,5,6,7,8}") != std::string::npos);
    CHECK(r.output.find("y:{2,3,4,5,6,7}->{3,4,5,6,7}") != std::string::npos);
    CHECK(r.output.find("status: stabilizing") != std::string::npos);
    CHECK(r.output.find("scheduler=compound") != std::string::npos);
    CHECK(r.output.find("fixpoint_hash=") != std::string::npos);
}

TEST_CASE("solve --oracle cross-checks the whole bundled corpus") {
    for (const char* name :
         {"and3", "and2", "absdiff", "chain_lt", "coloring", "unsat"}) {
        for (const char* propagator : {"ac", "membership", "cd", "none", "auto"}) {
            CommandResult r = run("solve " + data() + "/" + name +
                                  ".json --all --oracle --propagator " + propagator);
            CAPTURE(name);
            CAPTURE(propagator);
            CHECK(r.exit_code == 0);
            CHECK(r.output.find("oracle=ok") != std::string::npos);
        }
    }
}

TEST_CASE("solve accepts every scheduler, split and selection") {
    for (const char* scheduler : {"generic", "compound", "improved", "finetuned"})
        for (const char* split : {"bisect", "enum"})
            for (const char* select : {"first", "smallest", "random"}) {
                CommandResult r = run("solve " + data() +
                                      "/chain_lt.json --all --oracle --scheduler " +
                                      scheduler + " --split " + split + " --select " +
                                      select + " --seed 7");
                CAPTURE(scheduler);
                CHECK(r.exit_code == 0);
            }
}

TEST_CASE("every worklist policy yields the same solutions") {
    // evaluation counts differ between policies; the solution lines may not
    std::vector<std::string> baseline;
    for (const char* choose : {"fifo", "lifo", "random"}) {
        CommandResult r = run("solve " + data() + "/and3.json --all --oracle "
                              "--propagator membership --choose " +
                              std::string(choose) + " --seed 3");
        CAPTURE(choose);
        CHECK(r.exit_code == 0);
        std::vector<std::string> solutions;
        for (const std::string& line : lines_of(r.output))
            if (line.find('=') != std::string::npos && line.find("nodes=") != 0 &&
                line.find("oracle=") != 0)
                solutions.push_back(line);
        CHECK(solutions.size() == 9);
        if (baseline.empty())
            baseline = solutions;
        else
            CHECK(solutions == baseline);
    }
}

TEST_CASE("parse errors exit with code 2 and a position") {
    std::string bad = temp_file("bad_problem.json");
    std::ofstream(bad) << "{ \"variables\": [ oops";
    CommandResult r = run("solve " + bad);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("byte") != std::string::npos);
}

TEST_CASE("rules gen / check / minimize pipeline") {
    std::string rules_file = temp_file("cli_and3.rules");
    CommandResult gen = run("rules gen " + data() + "/and3.table -o " + rules_file);
    CHECK(gen.exit_code == 0);
    CHECK(gen.output.find("rules=18") != std::string::npos);

    CommandResult check_ok = run("rules check " + rules_file + " --table " + data() +
                                 "/and3.table");
    CHECK(check_ok.exit_code == 0);
    for (const std::string& line : lines_of(check_ok.output))
        CHECK(line.find("valid minimal") != std::string::npos);

    // inject a subsumed rule; minimize should drop exactly one
    std::string padded = temp_file("cli_and3_padded.rules");
    {
        std::ifstream in(rules_file);
        std::ofstream out(padded);
        out << in.rdbuf();
        out << "y in {f} -> z != t\n";
    }
    CommandResult minimize = run("rules minimize " + padded + " --table " + data() +
                                 "/and3.table -o " + temp_file("cli_and3_min.rules"));
    CHECK(minimize.exit_code == 0);
    CHECK(minimize.output.find("before=19") != std::string::npos);

    CommandResult syntax = run("rules check " + data() + "/and3.json --table " + data() +
                               "/and3.table");
    CHECK(syntax.exit_code == 2); // json is not a rule file; line number reported
    CHECK(syntax.output.find("line") != std::string::npos);
}

TEST_CASE("rules gen --chr prints a display rendering") {
    CommandResult r = run("rules gen " + data() + "/and2.table --chr -o " +
                          temp_file("cli_and2.rules"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("==>") != std::string::npos);
}

TEST_CASE("bench emits the fixed CSV schema and honours --assert") {
    CommandResult r = run("bench " + data() + "/and3.json " + data() +
                          "/chain_lt.json --schedulers finetuned,compound,generic "
                          "--seeds 1 --rules all,minimized --assert");
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines = lines_of(r.output);
    REQUIRE(!lines.empty());
    CHECK(lines[0] ==
          "problem,scheduler,rules,seed,evaluations,reenqueues,nodes,solutions,ms");
    // 2 problems x 3 schedulers x 2 rule modes x 1 seed, plus ratio comments
    std::size_t rows = 0;
    for (const std::string& line : lines)
        if (!line.empty() && line[0] != '#' && line.find("problem,") != 0)
            ++rows;
    CHECK(rows == 12);

    SUBCASE("single scheduler and seed yield one row per problem and mode") {
        CommandResult one = run("bench " + data() +
                                "/and2.json --schedulers compound --seeds 5 --rules all");
        CHECK(one.exit_code == 0);
        std::size_t data_rows = 0;
        for (const std::string& line : lines_of(one.output))
            if (!line.empty() && line[0] != '#' && line.find("problem,") != 0)
                ++data_rows;
        CHECK(data_rows == 1);
    }
}

TEST_CASE("bench --csv writes the report to a file") {
    std::string csv = temp_file("cli_bench.csv");
    CommandResult r = run("bench " + data() +
                          "/and2.json --schedulers compound --seeds 3 --rules all --csv " +
                          csv);
    CHECK(r.exit_code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "problem,scheduler,rules,seed,evaluations,reenqueues,nodes,solutions,ms");
}

TEST_CASE("RULECP_SEED provides the default seed") {
    std::string base = "solve " + data() + "/coloring.json --all --select random";
    CommandResult env_run = [&] {
        CommandResult result;
        FILE* pipe = popen(("RULECP_SEED=9 " + cli() + " " + base + " 2>&1").c_str(), "r");
        REQUIRE(pipe != nullptr);
        char buffer[4096];
        while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe))
            result.output.append(buffer, n);
        int status = pclose(pipe);
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return result;
    }();
    CommandResult flag_run = run(base + " --seed 9");
    CHECK(env_run.exit_code == 0);
    CHECK(env_run.output == flag_run.output);
}

TEST_CASE("missing subcommand is a usage error") {
    CommandResult r = run("");
    CHECK(r.exit_code == 2);
}
