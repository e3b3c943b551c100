#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fiwi/cli.hpp"
#include "fiwi/config.hpp"

using namespace fiwi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_data_rows(const std::string& csv) {
    int rows = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') ++rows;
    return rows - 1;  // minus the header
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "fiwi_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// Small scenario so CLI coverage stays quick.
std::vector<std::string> quick_overrides() {
    return {"--set", "ue_density=5e-5",  "--set", "num_files=60",
            "--set", "cache_size=2.4e10", "--set", "dp_bandwidth_unit=1e8"};
}

std::vector<std::string> with_quick(std::vector<std::string> args) {
    auto extra = quick_overrides();
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

TEST_CASE("missing config file exits 2 and names the path") {
    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    const int code = cli_main({"analyze", "--config", "/definitely/not/here.json"});
    std::cerr.rdbuf(old);
    CHECK(code == 2);
    CHECK(captured.str().find("/definitely/not/here.json") != std::string::npos);
}

TEST_CASE("unknown algorithm exits 2 and lists the valid names") {
    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    const int code = cli_main({"simulate", "--algorithm", "bogus", "--trials", "1"});
    std::cerr.rdbuf(old);
    CHECK(code == 2);
    CHECK(captured.str().find("vabwf-dp") != std::string::npos);
    CHECK(captured.str().find("wf-rc") != std::string::npos);
}

TEST_CASE("analyze writes the requested grid") {
    TempDir dir;
    const std::string csv = dir.file("analysis.csv");
    const std::string summary = dir.file("analysis.json");
    const int code = cli_main(with_quick(
        {"analyze", "--grid", "2", "--out", csv, "--summary", summary}));
    REQUIRE(code == 0);

    const std::string text = slurp(csv);
    CHECK(text.rfind("# config_hash=", 0) == 0);
    CHECK(count_data_rows(text) == 2);

    const std::string json = slurp(summary);
    CHECK(json.find("cache_utilization") != std::string::npos);
    CHECK(json.find("r_plus_bps") != std::string::npos);
}

TEST_CASE("simulate is byte-stable for a fixed seed") {
    TempDir dir;
    const std::string first = dir.file("a.csv");
    const std::string second = dir.file("b.csv");
    auto args = [&](const std::string& out) {
        return with_quick({"simulate", "--algorithm", "wf-fc", "--trials", "2", "--seed", "5",
                           "--out", out, "--summary", out + ".json"});
    };
    REQUIRE(cli_main(args(first)) == 0);
    REQUIRE(cli_main(args(second)) == 0);
    CHECK(slurp(first) == slurp(second));
    CHECK(count_data_rows(slurp(first)) == 2);
}

TEST_CASE("simulate can dump the dp internals") {
    TempDir dir;
    const std::string csv = dir.file("t.csv");
    const std::string cand = dir.file("cand.csv");
    const std::string frontier = dir.file("frontier.csv");
    const int code = cli_main(with_quick(
        {"simulate", "--algorithm", "vabwf-dp", "--trials", "1", "--seed", "4", "--out", csv,
         "--summary", csv + ".json", "--dump-candidates", cand, "--dump-frontier", frontier}));
    REQUIRE(code == 0);
    const std::string cand_text = slurp(cand);
    CHECK(cand_text.rfind("n,j,weight_units,profit_bps", 0) == 0);
    CHECK(slurp(frontier).rfind("c_units,value_bps", 0) == 0);
    CHECK(count_data_rows(cand_text) >= 16);  // at least one item per AP
}

TEST_CASE("sweep emits one row per algorithm and point") {
    TempDir dir;
    const std::string spec_path = dir.file("sweep.json");
    const std::string out = dir.file("sweep.csv");
    {
        std::ofstream spec(spec_path);
        spec << R"({"parameter": "C", "values": [1.5e10], )"
             << R"("algorithms": ["wf-fc", "ep-pf"], "trials": 2, "seed": 3, )"
             << R"("output": ")" << out << R"("})";
    }
    REQUIRE(cli_main(with_quick({"sweep", "--spec", spec_path})) == 0);
    const std::string text = slurp(out);
    CHECK(count_data_rows(text) == 2);
    CHECK(text.find("wf-fc") != std::string::npos);
    CHECK(text.find("ep-pf") != std::string::npos);
    CHECK(text.find("r_plus_bps") != std::string::npos);
}

TEST_CASE("sweep rejects bad specs field by field") {
    TempDir dir;
    const std::string spec_path = dir.file("bad.json");
    {
        std::ofstream spec(spec_path);
        spec << R"({"parameter": "nope", "values": [], "trials": 0, "mystery": 1})";
    }
    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    const int code = cli_main({"sweep", "--spec", spec_path});
    std::cerr.rdbuf(old);
    CHECK(code == 2);
    const std::string msg = captured.str();
    CHECK(msg.find("parameter") != std::string::npos);
    CHECK(msg.find("values") != std::string::npos);
    CHECK(msg.find("trials") != std::string::npos);
    CHECK(msg.find("mystery") != std::string::npos);
}

TEST_CASE("config file plus overrides feed the commands") {
    TempDir dir;
    NetworkConfig cfg;
    cfg.ue_density = 5e-5;
    cfg.num_files = 60;
    cfg.cache_size = 2.4e10;
    cfg.dp_bandwidth_unit = 1e8;
    const std::string cfg_path = dir.file("cfg.json");
    save_config_file(cfg, cfg_path);

    const std::string csv = dir.file("t.csv");
    const int code =
        cli_main({"simulate", "--config", cfg_path, "--algorithm", "wf-rc", "--trials", "1",
                  "--seed", "2", "--out", csv, "--summary", csv + ".json"});
    REQUIRE(code == 0);
    CHECK(count_data_rows(slurp(csv)) == 1);

    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    const int bad = cli_main({"simulate", "--config", cfg_path, "--set", "max_power=0",
                              "--trials", "1", "--out", csv, "--summary", csv + ".json"});
    std::cerr.rdbuf(old);
    CHECK(bad == 2);
    CHECK(captured.str().find("max_power") != std::string::npos);
}
