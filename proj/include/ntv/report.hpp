#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ntv {

using ojson = nlohmann::ordered_json;

enum class Relation { le, ge, eq };

struct Assertion {
    std::string name;
    std::string anchor;  // label of the statement being checked
    double observed;
    Relation rel;
    double bound;
    bool pass;
};

struct Report {
    Report(std::string s = {}) : suite(std::move(s)) {}
    std::string suite;
    std::vector<Assertion> assertions;
    ojson data = ojson::object();
    double seconds = 0;

    const Assertion& check(const std::string& name, const std::string& anchor, double observed, Relation rel,
                           double bound);
    bool passed() const;
    void append(const Report& other);
};

// numbers as %.17g, keys in insertion order
std::string dump_json(const ojson& j, int indent = 2);
std::string fmt17(double x);
std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

ojson report_json(const Report& r);
// suite,name,anchor,observed,relation,bound,pass
std::string report_csv(const Report& r);

}  // namespace ntv
