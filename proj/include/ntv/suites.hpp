#pragma once
#include <string>
#include <vector>

#include "ntv/report.hpp"

namespace ntv {

enum class Profile { quick, full };

struct SuiteOptions {
    Profile profile = Profile::quick;
    unsigned long long seed = 20251019;
    long long qmax = 0;  // 0 keeps the profile default
};

constexpr int kCriteria = 12;
// short names in criterion order: gauss, weil, form, frakc, zerofreq, correlation, delta, voronoi, kernel, osc, l2, sums
const std::vector<std::string>& criterion_names();
// accepts a name or a number 1..12; returns 0 when unknown
int criterion_index(const std::string& s);
std::string criterion_title(int id);

Report run_criterion(int id, const SuiteOptions& opt);
Report verify_all(const SuiteOptions& opt);

}  // namespace ntv
