#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "spectra/subshift.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SPECTRA_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("cf evaluation and parse errors") {
    RunResult golden = run("cf \"0;:(1)*\"");
    CHECK(golden.code == 0);
    CHECK(golden.out.find("0.6180339887") != std::string::npos);

    RunResult comp = run("cf \"0;2:(2,1)*\"");
    CHECK(comp.code == 0);
    CHECK(comp.out.find("0.4226497") != std::string::npos);

    CHECK(run("cf \"not-a-literal\"").code == 2);
    CHECK(run("cf").code == 2);
}

TEST_CASE("markov command") {
    RunResult r = run("markov \"(2,2,1,1)*\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("sqrt(221)") != std::string::npos);
    CHECK(r.out.find("2.9732137494") != std::string::npos);
}

TEST_CASE("prune exit codes") {
    CHECK(run("prune --N 2 --t 2.9 --eps 0.1 --ell 4").code == 0);
    CHECK(run("prune --N 2 --t 2.2 --eps 0.01 --ell 3").code == 3);  // everything pruned
    CHECK(run("prune --N 2 --t 3.5 --eps 0.1 --ell 3").code == 2);   // above max f
}

TEST_CASE("dim JSON contains the C_2 dimension") {
    RunResult r = run("dim --N 2 --depth 12");
    REQUIRE(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out["schema"] == 1);
    CHECK(out["lo"].get<double>() <= 0.5313);
    CHECK(0.5313 <= out["hi"].get<double>());
    CHECK(out["method"] == "cover-bisection");
}

TEST_CASE("scan CSV has monotone lower bounds") {
    RunResult r = run("scan --N 2 --grid 2.9,3.1,3.3,3.46 --eps 0.1 --ell 5 --depth 10");
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,D_lo,D_hi,d_lo,d_hi");
    double prev = -1;
    int rows = 0;
    while (std::getline(is, line)) {
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        double dlo = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(dlo >= prev);
        prev = dlo;
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("scc on the golden mean graph file") {
    auto golden = spectra::sft::from_word_set(
        {spectra::Word({1, 1}), spectra::Word({1, 2}), spectra::Word({2, 1})}, false);
    std::ofstream f("/tmp/spectra_golden.txt");
    f << golden.graph.export_text();
    f.close();
    RunResult r = run("scc --graph /tmp/spectra_golden.txt");
    CHECK(r.code == 0);
    CHECK(r.out.find("1 component(s), 0 transient state(s)") != std::string::npos);
    CHECK(run("scc --graph /does/not/exist").code == 2);
}

TEST_CASE("splice emits the scheduled stream") {
    RunResult r = run("splice --base \"(1)*\" --chain-N 2 --r 2 --len 200 "
                      "--schedule-out /tmp/spectra_sched.json");
    REQUIRE(r.code == 0);
    std::ifstream sf("/tmp/spectra_sched.json");
    json sched = json::parse(sf);
    CHECK(sched["s"][0] == 5);
    CHECK(sched["insertion_positions"][0] == "120");
    CHECK(sched["insertions_emitted"] == 1);
    // digit at position 121 starts the block
    std::vector<int> digits;
    std::istringstream is(r.out);
    std::string tok;
    while (std::getline(is, tok, ',')) digits.push_back(std::stoi(tok));
    CHECK(digits.size() == 200);
    std::vector<int> block = sched["blocks"][0].get<std::vector<int>>();
    for (std::size_t k = 0; k < block.size(); ++k) CHECK(digits[121 + k] == block[k]);
}

TEST_CASE("verify-paper single checks and full pass") {
    RunResult fr = run("verify-paper --only freiman");
    CHECK(fr.code == 0);
    CHECK(fr.out.find("PASS  freiman_cF_digits") != std::string::npos);
    CHECK(fr.out.find("4.52782956616") != std::string::npos);

    RunResult eq = run("verify-paper --only eq32 --m 1");
    CHECK(eq.code == 0);
    CHECK(eq.out.find("eq32_first_sum_m1") != std::string::npos);
    CHECK(eq.out.find("0.4116") != std::string::npos);
    CHECK(eq.out.find("0.5782") == std::string::npos);  // certified sup is sharper than the display bound
}

TEST_CASE("determinism across runs and widths") {
    std::string args = "scan --N 2 --grid 2.9,3.1 --eps 0.1 --ell 4 --depth 8";
    RunResult a = run("--width 1 " + args);
    RunResult b = run("--width 4 " + args);
    RunResult c = run("--width 1 " + args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    RunResult d1 = run("dim --N 3 --depth 7");
    RunResult d2 = run("dim --N 3 --depth 7");
    CHECK(d1.out == d2.out);
}

TEST_CASE("config file and precision plumbing") {
    {
        std::ofstream f("/tmp/spectra_cfg.txt");
        f << "precision = 192\nformat = json\n";
    }
    RunResult r = run("--config /tmp/spectra_cfg.txt cf \"0;:(1)*\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"decimal\"") != std::string::npos);  // json format from config
    CHECK(run("--config /tmp/missing.cfg cf \"0;:(1)*\"").code == 2);
    {
        std::ofstream f("/tmp/spectra_badcfg.txt");
        f << "no_such_key = 1\n";
    }
    CHECK(run("--config /tmp/spectra_badcfg.txt cf \"0;:(1)*\"").code == 2);
}
