#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef SPINKRON_CLI_PATH
#error "SPINKRON_CLI_PATH must point at the spinkron binary"
#endif

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SPINKRON_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string capture_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = std::string(SPINKRON_CLI_PATH) + " " + args + " >" +
                            stdout_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WEXITSTATUS(status) == 0);
    std::ifstream in(stdout_file);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string sweep_spec_json(const fs::path& output) {
    return "{\"model\":\"breit_rabi\",\"two_j_i\":1,\"a_hf\":1.0,\"a_e\":1.0,\"b_n\":0.2,"
           "\"field\":{\"start\":0,\"stop\":6,\"step\":0.01},\"output\":\"" +
           output.string() + "\"}";
}

}  // namespace

TEST_CASE("cli: sweep writes level and event tables and exits 0") {
    const fs::path out = fs::temp_directory_path() / "spinkron_cli_sweep.csv";
    const fs::path events = fs::temp_directory_path() / "spinkron_cli_sweep.events.csv";
    const fs::path spec = write_temp("spinkron_cli_spec.json", sweep_spec_json(out));

    REQUIRE(run_cli("sweep --spec " + spec.string()) == 0);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(events));

    const std::string first = slurp(out);
    const std::string first_events = slurp(events);
    REQUIRE(first.substr(0, first.find('\n')) == "B,E1,E2,E3,E4");
    // the b=0.2 model crosses at B = 3; the event table must carry it
    REQUIRE_THAT(first_events, Catch::Contains("crossing,1,2,3"));

    // a second process run reproduces both files byte for byte
    REQUIRE(run_cli("sweep --spec " + spec.string()) == 0);
    REQUIRE(slurp(out) == first);
    REQUIRE(slurp(events) == first_events);

    fs::remove(out);
    fs::remove(events);
    fs::remove(spec);
}

TEST_CASE("cli: build prints the matrix rows") {
    const fs::path out = fs::temp_directory_path() / "spinkron_cli_unused.csv";
    const fs::path spec = write_temp("spinkron_cli_spec_build.json", sweep_spec_json(out));
    const fs::path cap = fs::temp_directory_path() / "spinkron_cli_build_stdout.txt";

    const std::string text = capture_cli("build --spec " + spec.string() + " --at-field 0",
                                         cap);
    // at B = 0 the diagonal is A/4 * (1, -1, -1, 1) with off-diagonal A/2
    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line))
        rows.push_back(line);
    REQUIRE(rows.size() == 4);
    REQUIRE(rows[0] == "(0.25,0) (0,0) (0,0) (0,0)");
    REQUIRE(rows[1] == "(0,0) (-0.25,0) (0.5,0) (0,0)");
    REQUIRE(rows[2] == "(0,0) (0.5,0) (-0.25,0) (0,0)");
    REQUIRE(rows[3] == "(0,0) (0,0) (0,0) (0.25,0)");

    fs::remove(spec);
    fs::remove(cap);
}

TEST_CASE("cli: spec problems exit with code 2") {
    const fs::path bad1 = write_temp("spinkron_cli_bad1.json",
                                     "{\"model\":\"breit_rabi\",\"two_j_i\":1,\"a_e\":1.0,"
                                     "\"b_n\":0.2,\"field\":{\"start\":0,\"stop\":1,"
                                     "\"step\":0.1},\"output\":\"x.csv\"}");  // a_hf missing
    REQUIRE(run_cli("sweep --spec " + bad1.string()) == 2);

    const fs::path bad2 = write_temp("spinkron_cli_bad2.json", "{not json at all");
    REQUIRE(run_cli("sweep --spec " + bad2.string()) == 2);

    REQUIRE(run_cli("sweep --spec /nonexistent/spec.json") == 2);
    REQUIRE(run_cli("sweeep") == 2);  // unknown subcommand
    REQUIRE(run_cli("sweep") == 2);   // missing required --spec

    fs::remove(bad1);
    fs::remove(bad2);
}

TEST_CASE("cli: unwritable output is a runtime failure, exit 3") {
    const fs::path spec = write_temp(
        "spinkron_cli_bad_out.json",
        "{\"model\":\"breit_rabi\",\"two_j_i\":1,\"a_hf\":1.0,\"a_e\":1.0,\"b_n\":0.2,"
        "\"field\":{\"start\":0,\"stop\":1,\"step\":0.1},"
        "\"output\":\"/nonexistent_dir_zz/x.csv\"}");
    REQUIRE(run_cli("sweep --spec " + spec.string()) == 3);
    fs::remove(spec);
}

TEST_CASE("cli: self-test subcommand passes") {
    REQUIRE(run_cli("check") == 0);
}

TEST_CASE("cli: help exits 0") {
    REQUIRE(run_cli("--help") == 0);
}
