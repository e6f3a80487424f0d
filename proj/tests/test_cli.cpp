#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "micbench/io.hpp"
#include "micbench/process.hpp"
#include "micbench/sic.hpp"

using namespace micbench;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

// run the CLI, capture stdout; stderr goes to a scratch file
RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(MICBENCH_CLI_PATH) + " " + args + " 2>/tmp/micbench_cli_stderr.txt";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), std::move(out)};
}

std::string cli_stderr() {
    std::ifstream in("/tmp/micbench_cli_stderr.txt");
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "micbench_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_scratch(const std::string& name, const std::string& content) {
    const fs::path p = scratch_dir() / name;
    write_text_file(p, content);
    return p;
}

fs::path sic_process_file() {
    static fs::path path;
    if (path.empty()) {
        const auto proc = proportional_process(sic_from_fiducial(known_fiducial(2)).mic);
        path = write_scratch("sic_process.json", process_to_json(proc).dump());
    }
    return path;
}

}  // namespace

TEST_CASE("volume subcommand prints the d=2 ratio") {
    const RunResult r = run_cli("volume --d 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.302299894039") != std::string::npos);
    CHECK(r.out.find("d,vol_P_sic,vol_simplex,ratio,vol_HS") != std::string::npos);
    CHECK(cli_stderr().find("config:") != std::string::npos);  // effective-config echo
}

TEST_CASE("majorize subcommand exit codes") {
    const fs::path a = write_scratch("a.csv", "3,1,0\n");
    const fs::path b = write_scratch("b.csv", "2,1,1\n");
    CHECK(run_cli("majorize --x " + a.string() + " --y " + a.string()).exit_code == 0);
    CHECK(run_cli("majorize --x " + a.string() + " --y " + b.string()).exit_code == 0);
    CHECK(run_cli("majorize --x " + b.string() + " --y " + a.string()).exit_code == 1);
    CHECK(run_cli("majorize --weak --x " + a.string() + " --y " + b.string()).exit_code == 0);
    CHECK(run_cli("majorize --log --x " + a.string() + " --y " + b.string()).exit_code == 3);
}

TEST_CASE("phi subcommand emits the closed-form SIC matrix") {
    const RunResult r = run_cli("phi --process " + sic_process_file().string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("2.5,-0.5,-0.5,-0.5") != std::string::npos);
    const RunResult rp =
        run_cli("phi --proportional --process " + sic_process_file().string());
    CHECK(rp.exit_code == 0);
    CHECK(rp.out == r.out);
}

TEST_CASE("phi subcommand surfaces degenerate processes as numerical errors") {
    // post states all equal: dependent, exit 3
    const auto sys = sic_from_fiducial(known_fiducial(2));
    Json j;
    j["mic"] = povm_to_json(sys.mic.povm());
    Json posts = Json::array();
    for (int i = 0; i < 4; ++i) posts.push_back(operator_to_json(sys.projectors.projector(0)));
    j["post_states"] = posts;
    const fs::path p = write_scratch("degenerate.json", j.dump());
    const RunResult r = run_cli("phi --process " + p.string());
    CHECK(r.exit_code == 3);
    CHECK(cli_stderr().find("error:") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors") {
    CHECK(run_cli("volume --d 2 --frobnicate").exit_code == 2);
    CHECK(run_cli("volume --table nonsense").exit_code == 2);
    CHECK(run_cli("nonexistent-subcommand").exit_code == 2);
    CHECK(run_cli("sic --d 9").exit_code == 2);  // not in the registry; needs --search
}

TEST_CASE("help lists every flag per subcommand") {
    const RunResult top = run_cli("--help");
    CHECK(top.exit_code == 0);
    for (const char* sub : {"sic", "phi", "born", "majorize", "distance", "volume", "ensemble"})
        CHECK(top.out.find(sub) != std::string::npos);

    const auto expect_flags = [](const std::string& sub,
                                 std::initializer_list<const char*> flags) {
        const RunResult help = run_cli(sub + " --help");
        CHECK(help.exit_code == 0);
        for (const char* flag : flags) CHECK(help.out.find(flag) != std::string::npos);
    };
    expect_flags("sic", {"--d", "--search", "--seed"});
    expect_flags("phi", {"--process", "--proportional"});
    expect_flags("born", {"--state", "--povm", "--via-phi", "--process"});
    expect_flags("majorize", {"--x", "--y", "--log", "--weak"});
    expect_flags("distance", {"--process", "--norm"});
    expect_flags("volume", {"--d", "--table"});
    expect_flags("ensemble", {"--config", "--out", "--threads", "--seed"});
}

TEST_CASE("sic --search output is seed-deterministic") {
    const RunResult a = run_cli("sic --d 3 --search --seed 5");
    const RunResult b = run_cli("sic --d 3 --search --seed 5");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("born subcommand prints all three columns") {
    const fs::path state = write_scratch(
        "mixed.json", R"({"d":2,"re":[[0.5,0],[0,0.5]],"im":[[0,0],[0,0]]})");
    const auto sys = sic_from_fiducial(known_fiducial(2));
    const fs::path povm = write_scratch("sic_povm.json", povm_to_json(sys.mic.povm()).dump());
    const RunResult r = run_cli("born --state " + state.string() + " --povm " + povm.string() +
                                " --via-phi --process " + sic_process_file().string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("outcome,q_operator,q_phi,ltp") != std::string::npos);
    CHECK(r.out.find("0,0.25,0.25,0.25") != std::string::npos);
    CHECK(cli_stderr().find("max_gap_phi=") != std::string::npos);
    CHECK(cli_stderr().find("total_variation_ltp=") != std::string::npos);
}

TEST_CASE("distance subcommand") {
    const RunResult r =
        run_cli("distance --process " + sic_process_file().string() + " --norm schatten:1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("norm,distance,distance_sic,margin") != std::string::npos);
    CHECK(r.out.find("schatten:1,6,6,") != std::string::npos);
    CHECK(run_cli("distance --process " + sic_process_file().string() +
                  " --norm nuclear:1").exit_code == 2);
}

TEST_CASE("ensemble subcommand writes reproducible reports") {
    const fs::path cfg = write_scratch(
        "cfg.json",
        R"({"d":2,"n_samples":20,"master_seed":11,"mic_kind":"random_rank1","post_kind":"proportional"})");
    const fs::path out1 = scratch_dir() / "ens1";
    const fs::path out2 = scratch_dir() / "ens2";
    const RunResult r1 = run_cli("ensemble --config " + cfg.string() + " --out " +
                                 out1.string() + " --threads 1");
    const RunResult r2 = run_cli("ensemble --config " + cfg.string() + " --out " +
                                 out2.string() + " --threads 3");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(load_text_file(out1 / "report.json") == load_text_file(out2 / "report.json"));
    CHECK(load_text_file(out1 / "samples.csv") == load_text_file(out2 / "samples.csv"));
    CHECK(r1.out.find("total_violations=0") != std::string::npos);

    // MICBENCH_THREADS is the --threads fallback and must not change bytes
    const fs::path out3 = scratch_dir() / "ens3";
    const std::string env_cmd = "MICBENCH_THREADS=2 " + std::string(MICBENCH_CLI_PATH) +
                                " ensemble --config " + cfg.string() + " --out " +
                                out3.string() + " 2>/dev/null";
    REQUIRE(std::system(env_cmd.c_str()) == 0);
    CHECK(load_text_file(out1 / "samples.csv") == load_text_file(out3 / "samples.csv"));
}
