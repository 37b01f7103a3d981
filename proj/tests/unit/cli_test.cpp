#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latc/cli.hpp"
#include "latc/io.hpp"
#include "synthetic.hpp"

using latc::Index;
using latc::TimeSeriesMatrix;

namespace {

// keep CLI summaries off the test output
const bool quiet_env = [] {
    ::setenv("LATC_LOG", "0", 1);
    return true;
}();

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("latc_cli_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli(std::vector<std::string> args) { return latc::run_cli(args); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, std::string> read_report(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(static_cast<bool>(in));
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t colon = line.find(": ");
        REQUIRE(colon != std::string::npos);
        entries[line.substr(0, colon)] = line.substr(colon + 2);
    }
    return entries;
}

std::string write_dataset(const TempDir& dir, const std::string& name,
                          const TimeSeriesMatrix& y) {
    std::string path = dir.file(name);
    latc::write_csv(y, path);
    return path;
}

}  // namespace

TEST_CASE("mask, impute and eval chain into accurate recovery") {
    TempDir dir("pipeline");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(6, 6, 8, 21);
    auto truth = write_dataset(dir, "truth.csv", y);

    CHECK(cli({"mask", "--in", truth, "--I", "6", "--kind", "rm", "--rate", "0.3", "--seed", "7",
               "--out", dir.file("masked.csv"), "--truth-mask", dir.file("hidden.csv")}) == 0);

    // the mask step must hide something but keep most entries
    latc::Mask hidden = latc::load_mask_csv(dir.file("hidden.csv"));
    CHECK(hidden.count() > 0);
    CHECK(hidden.count() < y.observed_count());

    CHECK(cli({"impute", "--in", dir.file("masked.csv"), "--I", "6", "--theta", "1", "--c0", "0",
               "--rho0", "0.01", "--epsilon", "1e-8", "--out", dir.file("recovered.csv"),
               "--report", dir.file("report.txt")}) == 0);

    CHECK(cli({"eval", "--truth", truth, "--est", dir.file("recovered.csv"), "--mask",
               dir.file("hidden.csv"), "--metrics", dir.file("metrics.txt")}) == 0);

    auto metrics = read_report(dir.file("metrics.txt"));
    REQUIRE(metrics.count("mape") == 1);
    REQUIRE(metrics.count("rmse") == 1);
    CHECK(std::stod(metrics["mape"]) < 5.0);
    CHECK(std::stod(metrics["scored_entries"]) == static_cast<double>(hidden.count()));
    CHECK(metrics["excluded_missing_truth"] == "0");
}

TEST_CASE("impute reports echo the fully resolved configuration") {
    TempDir dir("report");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(4, 6, 6, 22);
    // hide a few entries: fill-in takes iterations, so five cannot reach 1e-12
    y.mask(0, 5) = false;
    y.mask(2, 14) = false;
    y.mask(3, 27) = false;
    auto input = write_dataset(dir, "in.csv", y);

    CHECK(cli({"impute", "--in", input, "--I", "6", "--rho0", "0.01", "--epsilon", "1e-12",
               "--max-iters", "5", "--out", dir.file("out.csv"), "--report",
               dir.file("report.txt")}) == 0);

    auto report = read_report(dir.file("report.txt"));
    for (const char* key :
         {"command", "input", "sensors", "time_points", "trimmed_columns", "season_length",
          "seasons", "alpha1", "alpha2", "alpha3", "rho0", "rho_max", "c0", "theta", "epsilon",
          "max_iters", "seed", "lags", "lambda_tracks_rho", "iterations", "final_residual",
          "final_rho", "wall_seconds", "converged"})
        CHECK_MESSAGE(report.count(key) == 1, "missing report key: " << key);
    CHECK(report["command"] == "impute");
    CHECK(report["sensors"] == "4");
    CHECK(report["time_points"] == "36");
    CHECK(report["trimmed_columns"] == "0");
    CHECK(report["seasons"] == "6");
    CHECK(report["max_iters"] == "5");
    CHECK(report["converged"] == "false");  // five iterations cannot reach 1e-12
    CHECK(report["iterations"] == "5");
}

TEST_CASE("leading columns are dropped to fit whole seasons") {
    TempDir dir("trim");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(3, 6, 5, 23);  // 30 columns
    // prepend two extra columns so 32 % 6 == 2
    TimeSeriesMatrix padded;
    padded.values = latc::Matrix::Zero(3, 32);
    padded.mask = latc::Mask::Constant(3, 32, true);
    padded.values.rightCols(30) = y.values;
    padded.values.col(0).setConstant(99.0);
    padded.values.col(1).setConstant(98.0);
    auto input = write_dataset(dir, "in.csv", padded);

    CHECK(cli({"impute", "--in", input, "--I", "6", "--max-iters", "3", "--out",
               dir.file("out.csv"), "--report", dir.file("report.txt")}) == 0);

    auto report = read_report(dir.file("report.txt"));
    CHECK(report["trimmed_columns"] == "2");
    CHECK(report["time_points"] == "30");
    CHECK(report["seasons"] == "5");

    // the output matches the surviving columns, not the padded width
    latc::DatasetDescriptor desc;
    desc.path = dir.file("out.csv");
    TimeSeriesMatrix out = latc::load_csv(desc);
    CHECK(out.time_points() == 30);
}

TEST_CASE("command line flags override config file values") {
    TempDir dir("precedence");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(3, 4, 6, 24);
    auto input = write_dataset(dir, "in.csv", y);
    {
        std::ofstream conf(dir.file("solver.conf"));
        conf << "rho0 = 0.5\n" << "theta = 2\n";
    }

    CHECK(cli({"impute", "--in", input, "--I", "4", "--config", dir.file("solver.conf"), "--rho0",
               "0.002", "--max-iters", "3", "--out", dir.file("out.csv"), "--report",
               dir.file("report.txt")}) == 0);

    auto report = read_report(dir.file("report.txt"));
    CHECK(report["rho0"] == "0.002");  // flag beats file
    CHECK(report["theta"] == "2");     // file beats default
}

TEST_CASE("identical invocations produce byte-identical data files") {
    TempDir dir("determinism");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(4, 6, 6, 25);
    y.mask(1, 3) = false;
    y.mask(2, 17) = false;
    y.mask(3, 30) = false;
    auto input = write_dataset(dir, "in.csv", y);

    for (const char* out : {"a.csv", "b.csv"})
        CHECK(cli({"impute", "--in", input, "--I", "6", "--rho0", "0.01", "--seed", "11",
                   "--max-iters", "40", "--out", dir.file(out)}) == 0);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
}

TEST_CASE("rolling prediction emits forecasts, a plot table and eval inputs") {
    TempDir dir("predict");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(4, 6, 8, 26);
    auto input = write_dataset(dir, "series.csv", y);

    CHECK(cli({"predict", "--in", input, "--I", "6", "--t", "36", "--S", "2", "--tau", "3",
               "--theta", "1", "--c0", "0", "--rho0", "1e-3", "--epsilon", "1e-6", "--out",
               dir.file("pred.csv"), "--report", dir.file("report.txt"), "--truth-out",
               dir.file("ptruth.csv"), "--eval-mask-out", dir.file("pmask.csv")}) == 0);

    latc::DatasetDescriptor desc;
    desc.path = dir.file("pred.csv");
    TimeSeriesMatrix pred = latc::load_csv(desc);
    CHECK(pred.sensors() == 4);
    CHECK(pred.time_points() == 6);  // S * tau

    // plot table: header plus one row per (sensor, predicted column)
    std::string plot = slurp(dir.file("pred.plot.csv"));
    CHECK(plot.rfind("sensor,t,truth,estimate\n", 0) == 0);
    Index newlines = 0;
    for (char c : plot)
        if (c == '\n') ++newlines;
    CHECK(newlines == 1 + 4 * 6);

    auto report = read_report(dir.file("report.txt"));
    CHECK(report["command"] == "predict");
    CHECK(report["windows"] == "2");
    CHECK(report["horizon"] == "3");
    CHECK(report["seasons_per_window"] == "6");  // (36 + 3) / 6

    CHECK(cli({"eval", "--truth", dir.file("ptruth.csv"), "--est", dir.file("pred.csv"), "--mask",
               dir.file("pmask.csv"), "--metrics", dir.file("metrics.txt")}) == 0);
    auto metrics = read_report(dir.file("metrics.txt"));
    CHECK(std::stod(metrics["mape"]) < 5.0);
    CHECK(std::stod(metrics["scored_entries"]) == 24.0);
}

TEST_CASE("exit codes distinguish parse, dimension and config failures") {
    TempDir dir("codes");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(2, 4, 3, 27);
    auto input = write_dataset(dir, "in.csv", y);

    // unreadable input -> parse error
    CHECK(cli({"impute", "--in", dir.file("absent.csv"), "--I", "4", "--out",
               dir.file("out.csv")}) == 2);

    // malformed numeric cell -> parse error
    {
        std::ofstream bad(dir.file("bad.csv"));
        bad << "1,2\n3,oops\n";
    }
    CHECK(cli({"impute", "--in", dir.file("bad.csv"), "--I", "1", "--out", dir.file("out.csv")}) ==
          2);

    // mismatched eval shapes -> dimension error
    {
        std::ofstream small(dir.file("small.csv"));
        small << "1,2\n3,4\n";
        std::ofstream mask(dir.file("mask.csv"));
        mask << "1,1\n1,1\n";
    }
    CHECK(cli({"eval", "--truth", input, "--est", dir.file("small.csv"), "--mask",
               dir.file("mask.csv")}) == 3);

    // invalid solver setting -> config error
    CHECK(cli({"impute", "--in", input, "--I", "4", "--rho0", "0", "--out", dir.file("out.csv")}) ==
          4);

    // multi-character delimiter -> config error
    CHECK(cli({"mask", "--in", input, "--I", "4", "--kind", "rm", "--rate", "0.3", "--out",
               dir.file("m.csv"), "--truth-mask", dir.file("h.csv"), "--delimiter", ";;"}) == 4);

    // usage errors from the option parser
    CHECK(cli({"impute", "--in", input}) == 2);            // missing required options
    CHECK(cli({"mask", "--in", input, "--I", "4", "--kind", "weird", "--rate", "0.3", "--out",
               dir.file("m.csv"), "--truth-mask", dir.file("h.csv")}) == 2);
    CHECK(cli({"frobnicate"}) == 2);                       // unknown subcommand
    CHECK(cli({}) == 2);                                   // a subcommand is required
    CHECK(cli({"--help"}) == 0);                           // help is a clean exit
}

TEST_CASE("non-random masking over a custom delimiter round-trips") {
    TempDir dir("delim");
    TimeSeriesMatrix y = latc_test::rank1_seasonal(3, 4, 6, 28);
    auto input = dir.file("in.csv");
    latc::write_csv(y, input, ';');

    CHECK(cli({"mask", "--in", input, "--I", "4", "--kind", "nm", "--rate", "0.4", "--seed", "9",
               "--nm-axis", "day", "--out", dir.file("masked.csv"), "--truth-mask",
               dir.file("hidden.csv"), "--delimiter", ";"}) == 0);

    latc::Mask hidden = latc::load_mask_csv(dir.file("hidden.csv"), ';');
    REQUIRE(hidden.rows() == 3);
    REQUIRE(hidden.cols() == 24);
    // whole days per sensor
    for (Index m = 0; m < 3; ++m)
        for (Index j = 0; j < 6; ++j) {
            Index n = 0;
            for (Index i = 0; i < 4; ++i)
                if (hidden(m, j * 4 + i)) ++n;
            CHECK((n == 0 || n == 4));
        }
}
