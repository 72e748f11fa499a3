#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace tspga::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tspga");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / ("tspga_cli_" + name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

const std::string kBerlin = TSPGA_DATA_DIR "/berlin52.tsp";

const std::string kSquare = "NAME: square\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\n"
                            "NODE_COORD_SECTION\n1 0 0\n2 0 1\n3 1 1\n4 1 0\nEOF\n";

TEST(Cli, ExactOnUnitSquare) {
    const auto path = write_temp("square.tsp", kSquare);
    const Outcome r = run_cli({"exact", "--instance", path.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("cost: 4\n"), std::string::npos) << r.out;
    const Outcome hk = run_cli({"exact", "--instance", path.string(), "--method", "held-karp"});
    EXPECT_NE(hk.out.find("cost: 4\n"), std::string::npos) << hk.out;
}

TEST(Cli, ExactRefusesLargeInstance) {
    EXPECT_EQ(run_cli({"exact", "--instance", kBerlin}).code, kExitConfig);
}

TEST(Cli, SolveIsReproducible) {
    const std::vector<std::string> args{"solve",     "--instance", kBerlin, "--generations", "30",
                                        "--pop-size", "20",        "--seed",  "7"};
    const Outcome a = run_cli(args);
    const Outcome b = run_cli(args);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("best_cost: "), std::string::npos);
    EXPECT_NE(a.out.find("seed=7\n"), std::string::npos);
}

TEST(Cli, SolveReadsConfigFileAndFlagsOverride) {
    const auto cfg = write_temp("cfg.txt", "pop_size=12\ngenerations=5\nmutation=cim\nseed=3\n");
    const Outcome r = run_cli({"solve", "--instance", kBerlin, "--config", cfg.string(), "--seed", "9",
                               "--metric", "real"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("pop_size=12\n"), std::string::npos);
    EXPECT_NE(r.out.find("mutation=cim\n"), std::string::npos);
    EXPECT_NE(r.out.find("seed=9\n"), std::string::npos);
    EXPECT_NE(r.out.find("metric=real"), std::string::npos);
}

TEST(Cli, InfoOnBerlin52) {
    const Outcome r = run_cli({"info", "--instance", kBerlin});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("n=52\n"), std::string::npos);
    EXPECT_EQ(r.out.find("tour_space_size"), std::string::npos);
}

TEST(Cli, InfoPrintsSearchSpaceForSmallInstances) {
    const auto path = write_temp("square_info.tsp", kSquare);
    const Outcome r = run_cli({"info", "--instance", path.string()});
    EXPECT_NE(r.out.find("tour_space_size: 3\n"), std::string::npos) << r.out;
}

TEST(Cli, SweepWritesCsv) {
    const fs::path out = fs::temp_directory_path() / "tspga_cli_sweep.csv";
    const Outcome r = run_cli({"sweep", "--instance", kBerlin, "--mutations", "rsm,psm", "--px-list", "0.9",
                               "--pm-list", "0.1,0.2", "--runs", "2", "--seed", "1", "--out", out.string(),
                               "--pop-size", "10", "--generations", "5"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(out);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
    }
    EXPECT_EQ(lines, 5u);
    fs::remove(out);
    fs::remove(history_path(out));
}

TEST(Cli, SweepFromSpecFile) {
    const fs::path out = fs::temp_directory_path() / "tspga_cli_sweep2.csv";
    const auto spec = write_temp("spec.txt", "instance=" + kBerlin +
                                                 "\nmutations=twors\nruns=2\npop_size=8\ngenerations=3\n");
    const Outcome r = run_cli({"sweep", "--spec", spec.string(), "--out", out.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("twors,0.9,0.1,2,"), std::string::npos) << r.out;
    fs::remove(out);
    fs::remove(history_path(out));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"solve", "--instance", kBerlin, "--bogus"}).code, kExitConfig);
    EXPECT_EQ(run_cli({}).code, kExitConfig);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kExitConfig);
    EXPECT_EQ(run_cli({"solve", "--instance", kBerlin, "--mutation", "pmx"}).code, kExitConfig);
    EXPECT_EQ(run_cli({"solve", "--instance", kBerlin, "--px", "2"}).code, kExitConfig);
    EXPECT_EQ(run_cli({"solve", "--instance", kBerlin, "--metric", "manhattan", "--generations", "1"}).code,
              kExitConfig);
    EXPECT_EQ(run_cli({"sweep", "--instance", kBerlin, "--mutations", "", "--out", "/tmp/x.csv"}).code, kExitConfig);
    EXPECT_EQ(run_cli({"info", "--instance", "/nonexistent.tsp"}).code, kExitIo);
    const auto bad = write_temp("bad.tsp", "NAME: x\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n");
    EXPECT_EQ(run_cli({"info", "--instance", bad.string()}).code, kExitIo);
    EXPECT_EQ(run_cli({"sweep", "--instance", kBerlin, "--mutations", "rsm", "--runs", "1", "--generations", "1",
                       "--pop-size", "4", "--out", "/nonexistent-dir/x.csv"})
                  .code,
              kExitIo);
    const Outcome help = run_cli({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("solve"), std::string::npos);
}

} // namespace
} // namespace tspga::cli
