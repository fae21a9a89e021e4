#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "ntv/report.hpp"

namespace ntv::cli {

enum Exit : int {
    ok = 0,
    suite_failed = 1,
    runtime_cap = 2,
    unknown_flag = 3,
    type_mismatch = 4,
    missing_parameter = 5,
    runtime_error = 6,
};

struct RunConfig {
    std::string subcommand, target;
    std::string profile = "quick", format = "json", out, csv, config;
    int threads = 0;
    double max_seconds = 0;
    unsigned long long seed = 20251019;
    // arithmetic parameters
    long long q = 1, a = 1, b = 1, m1 = 0, m2 = 0, n = 1, n3 = 1, n3p = 1, m = 0, N = 100000, qmax = 0, nmax = 1000;
    int k = 3, sign = 1;
    // analytic parameters
    double X = 1000, Q = 50, u = 0, nm2 = 0, theta = 0;
    std::vector<double> Xs, ys;
    std::string mode = "sharp", source = "d3", weight = "unit", table, series;

    // resolved parameters that define the computation (no output paths, no thread count)
    ojson echo() const;
    std::string run_id() const;
};

struct ParseResult {
    RunConfig cfg;
    int code = ok;
    std::string message;
    bool help = false;
};

ParseResult parse(const std::vector<std::string>& args);
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace ntv::cli
