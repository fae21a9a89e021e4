#include <cmath>
#include <cstdio>
#include <sstream>

#include "ntv/report.hpp"

namespace ntv {

namespace {
const char* rel_name(Relation r) {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::ge: return ">=";
        default: return "==";
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) {
        if (c == '"') o += '"';
        o += c;
    }
    return o + "\"";
}

void dump(const ojson& j, int indent, int level, std::string& out) {
    const std::string pad = indent > 0 ? std::string(std::size_t(indent * (level + 1)), ' ') : "";
    const std::string pad0 = indent > 0 ? std::string(std::size_t(indent * level), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += std::string(",") + nl;
                first = false;
                out += pad + ojson(it.key()).dump() + (indent > 0 ? ": " : ":");
                dump(it.value(), indent, level + 1, out);
            }
            out += nl + pad0 + "}";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            out += nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += std::string(",") + nl;
                out += pad;
                dump(j[i], indent, level + 1, out);
            }
            out += nl + pad0 + "]";
            return;
        }
        case ojson::value_t::number_float: out += fmt17(j.get<double>()); return;
        default: out += j.dump();
    }
}
}  // namespace

std::string fmt17(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const Assertion& Report::check(const std::string& name, const std::string& anchor, double observed, Relation rel,
                               double bound) {
    bool ok = false;
    if (std::isfinite(observed)) {
        switch (rel) {
            case Relation::le: ok = observed <= bound; break;
            case Relation::ge: ok = observed >= bound; break;
            case Relation::eq: ok = observed == bound; break;
        }
    }
    assertions.push_back({name, anchor, observed, rel, bound, ok});
    return assertions.back();
}

bool Report::passed() const {
    for (const auto& a : assertions)
        if (!a.pass) return false;
    return true;
}

void Report::append(const Report& o) {
    for (auto a : o.assertions) {
        a.name = o.suite + "." + a.name;
        assertions.push_back(a);
    }
    data[o.suite] = o.data;
    seconds += o.seconds;
}

std::string dump_json(const ojson& j, int indent) {
    std::string out;
    dump(j, indent, 0, out);
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

ojson report_json(const Report& r) {
    ojson j;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    std::size_t fails = 0;
    for (const auto& a : r.assertions) fails += !a.pass;
    j["n_assertions"] = r.assertions.size();
    j["n_failed"] = fails;
    j["seconds"] = r.seconds;
    ojson rows = ojson::array();
    for (const auto& a : r.assertions) {
        ojson x;
        x["name"] = a.name;
        x["anchor"] = a.anchor;
        x["observed"] = a.observed;
        x["relation"] = rel_name(a.rel);
        x["bound"] = a.bound;
        x["pass"] = a.pass;
        rows.push_back(x);
    }
    j["assertions"] = rows;
    j["data"] = r.data;
    return j;
}

std::string report_csv(const Report& r) {
    std::ostringstream o;
    o << "suite,name,anchor,observed,relation,bound,pass\n";
    for (const auto& a : r.assertions)
        o << csv_field(r.suite) << ',' << csv_field(a.name) << ',' << csv_field(a.anchor) << ',' << fmt17(a.observed)
          << ',' << rel_name(a.rel) << ',' << fmt17(a.bound) << ',' << (a.pass ? "true" : "false") << '\n';
    return o.str();
}

}  // namespace ntv
