#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ntv/cli.hpp"
#include "ntv/suites.hpp"

using namespace ntv;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("ntv_cli_test_" + name); }

struct Captured {
    int code;
    std::string out, err;
};
Captured run_args(const std::vector<std::string>& args) {
    auto p = cli::parse(args);
    if (p.code != cli::ok) return {p.code, "", p.message};
    std::ostringstream o, e;
    int c = cli::run(p.cfg, o, e);
    return {c, o.str(), e.str()};
}

int run_binary(const std::string& args) {
    const char* bin = std::getenv("NTV_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "NTV_CLI must point at the ntv binary");
    std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}
}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("flag parsing") {
        auto p = cli::parse({"verify", "gauss", "--qmax", "999"});
        CHECK(p.code == cli::ok);
        CHECK(p.cfg.subcommand == "verify");
        CHECK(p.cfg.target == "gauss");
        CHECK(p.cfg.qmax == 999);
        CHECK(cli::parse({"verify", "gauss", "--qmax", "banana"}).code == cli::type_mismatch);
        CHECK(cli::parse({"verify", "gauss", "--frobnicate", "1"}).code == cli::unknown_flag);
        CHECK(cli::parse({"verify"}).code == cli::missing_parameter);
        CHECK(cli::parse({"verify", "nonsense"}).code == cli::unknown_flag);
        CHECK(cli::parse({"dance"}).code == cli::unknown_flag);
        CHECK(cli::parse({"fit"}).code == cli::missing_parameter);
        CHECK(cli::parse({"sum", "--source", "user"}).code == cli::missing_parameter);
        auto x = cli::parse({"sum", "--Xs", "16,64,256", "--k", "4"});
        CHECK(x.code == cli::ok);
        CHECK(x.cfg.Xs == std::vector<double>{16, 64, 256});
        CHECK(x.cfg.k == 4);
    }

    TEST_CASE("config file merges under flags") {
        auto path = scratch("config.json");
        {
            std::ofstream f(path);
            f << R"({"qmax": 500, "nmax": 77})";
        }
        auto p = cli::parse({"verify", "gauss", "--config", path.string(), "--qmax", "999"});
        CHECK(p.code == cli::ok);
        CHECK(p.cfg.qmax == 999);
        CHECK(p.cfg.nmax == 77);
        auto p2 = cli::parse({"verify", "gauss", "--config", path.string()});
        CHECK(p2.cfg.qmax == 500);
        {
            std::ofstream f(path);
            f << R"({"qmaxx": 500})";
        }
        CHECK(cli::parse({"verify", "gauss", "--config", path.string()}).code == cli::unknown_flag);
        {
            std::ofstream f(path);
            f << R"({"qmax": "lots"})";
        }
        CHECK(cli::parse({"verify", "gauss", "--config", path.string()}).code == cli::type_mismatch);
        fs::remove(path);
    }

    TEST_CASE("run id depends on the computation only") {
        auto a = cli::parse({"sum", "--X", "64", "--threads", "1"}).cfg;
        auto b = cli::parse({"sum", "--X", "64", "--threads", "3", "--out", "x.json"}).cfg;
        auto c = cli::parse({"sum", "--X", "65"}).cfg;
        CHECK(a.run_id() == b.run_id());
        CHECK(a.run_id() != c.run_id());
    }

    TEST_CASE("voronoi report carries the main-term breakdown") {
        auto r = run_args({"voronoi", "--q", "1", "--X", "1000"});
        REQUIRE(r.code == cli::ok);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["passed"] == true);
        CHECK(j["data"].contains("lhs"));
        CHECK(j["data"].contains("rhs_corrected"));
        CHECK(j["data"]["main_terms_stated"].contains("c0"));
        CHECK(j["data"]["main_terms_stated"].contains("c1"));
        CHECK(j["data"]["main_terms_stated"].contains("c2"));
    }

    TEST_CASE("fit echoes slope and error") {
        auto path = scratch("series.csv");
        {
            std::ofstream f(path);
            f << "X,value\n10,100\n100,10000\n1000,1000000\n";
        }
        auto r = run_args({"fit", "--series", path.string()});
        REQUIRE(r.code == cli::ok);
        CHECK(r.err.find("slope 2") != std::string::npos);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["data"]["slope"].get<double>() == doctest::Approx(2).epsilon(1e-12));
        CHECK(j["data"].contains("slope_stderr"));
        fs::remove(path);
    }

    TEST_CASE("CSV output is byte-identical across thread counts") {
        std::string first;
        for (const char* t : {"1", "2", "4"}) {
            auto r = run_args({"sum", "--Xs", "64,256,1024", "--k", "3", "--mode", "smooth", "--weight", "vonMangoldt",
                               "--format", "csv", "--threads", t});
            REQUIRE(r.code == cli::ok);
            if (first.empty())
                first = r.out;
            else
                CHECK(r.out == first);
        }
        CHECK(first.rfind("X,k,source,weight,value,trivial_ratio", 0) == 0);
    }

    TEST_CASE("kernel table export") {
        auto r = run_args({"kernel", "--ys", "1,10", "--format", "csv"});
        REQUIRE(r.code == cli::ok);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "y,re,im,err");
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 2);
    }

    TEST_CASE("every assertion row has an anchor") {
        SuiteOptions o;
        for (int id : {1, 3, 7, 11}) {
            auto rep = run_criterion(id, o);
            REQUIRE(!rep.assertions.empty());
            for (const auto& a : rep.assertions) REQUIRE(!a.anchor.empty());
        }
        auto r = run_args({"charsum", "--q", "15", "--m1", "1", "--m2", "2", "--format", "csv"});
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "suite,name,anchor,observed,relation,bound,pass");
        int rows = 0;
        while (std::getline(in, line)) {
            std::vector<std::string> cols;
            std::stringstream ss(line);
            std::string c;
            while (std::getline(ss, c, ',')) cols.push_back(c);
            REQUIRE(cols.size() >= 7);
            REQUIRE(!cols[2].empty());
            ++rows;
        }
        CHECK(rows > 0);
    }

    TEST_CASE("binary exit codes") {
        CHECK(run_binary("verify gauss --qmax banana") == cli::type_mismatch);
        CHECK(run_binary("verify gauss --bogus") == cli::unknown_flag);
        CHECK(run_binary("verify") == cli::missing_parameter);
        CHECK(run_binary("verify gauss --qmax 99") == cli::ok);
        CHECK(run_binary("verify frakc --qmax 25") == cli::suite_failed);
        CHECK(run_binary("sum --source user --table /nonexistent/table.csv") == cli::runtime_error);
        CHECK(run_binary("voronoi --q 1 --X 1000") == cli::ok);
    }
}
