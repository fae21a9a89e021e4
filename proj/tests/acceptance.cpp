// Acceptance gate: one PASS/FAIL line per criterion, assertion details indented below it.
#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "ntv/suites.hpp"

using namespace ntv;

namespace {
const char* rel_str(Relation r) { return r == Relation::le ? "<=" : r == Relation::ge ? ">=" : "=="; }
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string which, profile = "quick", json;
    app.add_option("--criterion", which, "criterion number or name (default: all)");
    app.add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));
    app.add_option("--json", json, "write the combined report here");
    CLI11_PARSE(app, argc, argv);

    SuiteOptions opt;
    opt.profile = profile == "full" ? Profile::full : Profile::quick;
    std::vector<int> ids;
    if (which.empty()) {
        for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
    } else {
        int id = criterion_index(which);
        if (id == 0) {
            std::fprintf(stderr, "unknown criterion '%s'\n", which.c_str());
            return 3;
        }
        ids.push_back(id);
    }

    bool all = true;
    Report combined{"acceptance"};
    for (int id : ids) {
        Report r = run_criterion(id, opt);
        all = all && r.passed();
        std::printf("criterion %2d %-12s %s  (%zu assertions, %.2f s)  %s\n", id, criterion_names()[id - 1].c_str(),
                    r.passed() ? "PASS" : "FAIL", r.assertions.size(), r.seconds, criterion_title(id).c_str());
        for (const auto& a : r.assertions)
            std::printf("    %-4s %-34s observed %-24s %s %s\n", a.pass ? "ok" : "FAIL", a.name.c_str(),
                        fmt17(a.observed).c_str(), rel_str(a.rel), fmt17(a.bound).c_str());
        std::fflush(stdout);
        combined.append(r);
    }
    if (!json.empty()) std::ofstream(json) << dump_json(report_json(combined)) << "\n";
    return all ? 0 : 1;
}
