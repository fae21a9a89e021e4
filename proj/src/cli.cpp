#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "ntv/analytic.hpp"
#include "ntv/charsum.hpp"
#include "ntv/cli.hpp"
#include "ntv/suites.hpp"
#include "ntv/sums.hpp"

namespace ntv::cli {

namespace {

const std::vector<std::string> kSubcommands = {"verify", "verify-all", "sieve", "expsum", "charsum", "voronoi",
                                               "delta",  "kernel",     "osc",   "sum",    "fit"};

struct App {
    CLI::App app{"numerical checks for exponential sums, Voronoi kernels and the delta method", "ntv"};
    explicit App(RunConfig& c) {
        app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        app.add_option("subcommand", c.subcommand, "one of: verify verify-all sieve expsum charsum voronoi delta kernel osc sum fit")
            ->required();
        app.add_option("target", c.target, "criterion name or number for verify");
        app.add_option("--config", c.config, "JSON file with option values; flags override it");
        app.add_option("--profile", c.profile)->check(CLI::IsMember({"quick", "full"}));
        app.add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
        app.add_option("--out", c.out, "JSON report path (default stdout)");
        app.add_option("--csv", c.csv, "CSV output path");
        app.add_option("--threads", c.threads)->check(CLI::NonNegativeNumber);
        app.add_option("--max-seconds", c.max_seconds, "runtime cap, 0 = none")->check(CLI::NonNegativeNumber);
        app.add_option("--seed", c.seed);
        app.add_option("--q", c.q)->check(CLI::PositiveNumber);
        app.add_option("--a", c.a);
        app.add_option("--b", c.b);
        app.add_option("--m1", c.m1);
        app.add_option("--m2", c.m2);
        app.add_option("--n", c.n)->check(CLI::PositiveNumber);
        app.add_option("--n3", c.n3)->check(CLI::PositiveNumber);
        app.add_option("--n3p", c.n3p)->check(CLI::PositiveNumber);
        app.add_option("--m", c.m);
        app.add_option("--N", c.N)->check(CLI::PositiveNumber);
        app.add_option("--qmax", c.qmax)->check(CLI::NonNegativeNumber);
        app.add_option("--nmax", c.nmax)->check(CLI::PositiveNumber);
        app.add_option("--k", c.k)->check(CLI::Range(3, 12));
        app.add_option("--sign", c.sign)->check(CLI::IsMember({-1, 1}));
        app.add_option("--X", c.X)->check(CLI::PositiveNumber);
        app.add_option("--Xs", c.Xs, "list of X values for sum sweeps")->delimiter(',')->multi_option_policy(
            CLI::MultiOptionPolicy::TakeAll);
        app.add_option("--ys", c.ys, "kernel evaluation points")->delimiter(',')->multi_option_policy(
            CLI::MultiOptionPolicy::TakeAll);
        app.add_option("--Q", c.Q)->check(CLI::PositiveNumber);
        app.add_option("--u", c.u);
        app.add_option("--nm2", c.nm2)->check(CLI::NonNegativeNumber);
        app.add_option("--theta", c.theta)->check(CLI::Range(0.0, 1.0));
        app.add_option("--mode", c.mode)->check(CLI::IsMember({"sharp", "smooth"}));
        app.add_option("--source", c.source)->check(CLI::IsMember({"d3", "sym2", "user"}));
        app.add_option("--weight", c.weight)->check(CLI::IsMember({"unit", "mobius", "vonMangoldt"}));
        app.add_option("--table", c.table, "CSV coefficient table for --source user");
        app.add_option("--series", c.series, "CSV with X,value columns for fit");
    }
};

std::string scalar_text(const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw CLI::ConversionError("config value must be a scalar or a list of scalars");
}

}  // namespace

ojson RunConfig::echo() const {
    ojson j;
    j["subcommand"] = subcommand;
    j["target"] = target;
    j["profile"] = profile;
    j["seed"] = seed;
    j["q"] = q;
    j["a"] = a;
    j["b"] = b;
    j["m1"] = m1;
    j["m2"] = m2;
    j["n"] = n;
    j["n3"] = n3;
    j["n3p"] = n3p;
    j["m"] = m;
    j["N"] = N;
    j["qmax"] = qmax;
    j["nmax"] = nmax;
    j["k"] = k;
    j["sign"] = sign;
    j["X"] = X;
    j["Xs"] = Xs;
    j["ys"] = ys;
    j["Q"] = Q;
    j["u"] = u;
    j["nm2"] = nm2;
    j["theta"] = theta;
    j["mode"] = mode;
    j["source"] = source;
    j["weight"] = weight;
    j["table"] = table;
    j["series"] = series;
    return j;
}

std::string RunConfig::run_id() const { return hex64(fnv1a(dump_json(echo(), 0))); }

ParseResult parse(const std::vector<std::string>& args) {
    ParseResult r;
    // config file values go first so explicit flags, parsed later, win
    std::vector<std::string> merged;
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    App probe(r.cfg);
    if (!config.empty()) {
        std::ifstream in(config);
        if (!in) return {r.cfg, runtime_error, "cannot open config file " + config, false};
        ojson j;
        try {
            j = ojson::parse(in);
        } catch (const std::exception& e) {
            return {r.cfg, type_mismatch, std::string("config file is not valid JSON: ") + e.what(), false};
        }
        if (!j.is_object()) return {r.cfg, type_mismatch, "config file must hold a JSON object", false};
        std::set<std::string> given;
        for (const auto& s : args)
            if (s.rfind("--", 0) == 0) given.insert(s.substr(2, s.find('=') == std::string::npos ? std::string::npos : s.find('=') - 2));
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = it.key();
            if (key == "subcommand" || key == "target") {
                if (!it.value().is_string()) return {r.cfg, type_mismatch, key + " must be a string", false};
                continue;
            }
            if (key == "config" || !probe.app.get_option_no_throw("--" + key))
                return {r.cfg, unknown_flag, "unknown config key: " + key, false};
            if (given.count(key)) continue;
            try {
                if (it.value().is_array()) {
                    std::string joined;
                    for (const auto& v : it.value()) joined += (joined.empty() ? "" : ",") + scalar_text(v);
                    merged.push_back("--" + key);
                    merged.push_back(joined);
                } else {
                    merged.push_back("--" + key);
                    merged.push_back(scalar_text(it.value()));
                }
            } catch (const CLI::Error& e) {
                return {r.cfg, type_mismatch, key + ": " + e.what(), false};
            }
        }
        // positional values from the file only when the command line has none
        bool has_pos = false;
        for (const auto& s : args)
            if (s.rfind("--", 0) != 0) {
                has_pos = true;
                break;
            }
        if (!has_pos && j.contains("subcommand")) {
            std::vector<std::string> pos = {j["subcommand"].get<std::string>()};
            if (j.contains("target")) pos.push_back(j["target"].get<std::string>());
            merged.insert(merged.begin(), pos.begin(), pos.end());
        }
    }
    for (const auto& s : args) merged.push_back(s);

    RunConfig cfg;
    App a(cfg);
    std::vector<std::string> rev(merged.rbegin(), merged.rend());
    try {
        a.app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        return {cfg, ok, a.app.help(), true};
    } catch (const CLI::ExtrasError& e) {
        return {cfg, unknown_flag, e.what(), false};
    } catch (const CLI::RequiredError& e) {
        return {cfg, missing_parameter, e.what(), false};
    } catch (const CLI::ConversionError& e) {
        return {cfg, type_mismatch, e.what(), false};
    } catch (const CLI::ValidationError& e) {
        return {cfg, type_mismatch, e.what(), false};
    } catch (const CLI::ParseError& e) {
        return {cfg, unknown_flag, e.what(), false};
    }
    if (std::find(kSubcommands.begin(), kSubcommands.end(), cfg.subcommand) == kSubcommands.end())
        return {cfg, unknown_flag, "unknown subcommand: " + cfg.subcommand, false};
    if (cfg.subcommand == "verify") {
        if (cfg.target.empty()) return {cfg, missing_parameter, "verify needs a criterion name or number", false};
        if (criterion_index(cfg.target) == 0) return {cfg, unknown_flag, "unknown criterion: " + cfg.target, false};
    } else if (!cfg.target.empty()) {
        return {cfg, unknown_flag, "unexpected argument: " + cfg.target, false};
    }
    if (cfg.subcommand == "fit" && cfg.series.empty()) return {cfg, missing_parameter, "fit needs --series", false};
    if (cfg.subcommand == "sum" && cfg.source == "user" && cfg.table.empty())
        return {cfg, missing_parameter, "--source user needs --table", false};
    r.cfg = cfg;
    return r;
}

namespace {

std::vector<std::pair<double, double>> read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file " + path);
    std::string line;
    int cx = 0, cv = 1;
    bool header_seen = false;
    std::vector<std::pair<double, double>> s;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> tok;
        std::stringstream ss(line);
        for (std::string t; std::getline(ss, t, ',');) tok.push_back(t);
        char* end = nullptr;
        std::strtod(tok[0].c_str(), &end);
        if (end == tok[0].c_str()) {
            if (header_seen) throw std::runtime_error("series: unexpected text row");
            header_seen = true;
            for (std::size_t i = 0; i < tok.size(); ++i) {
                if (tok[i] == "X") cx = static_cast<int>(i);
                if (tok[i] == "value") cv = static_cast<int>(i);
            }
            continue;
        }
        if (tok.size() <= std::size_t(std::max(cx, cv))) throw std::runtime_error("series: short row");
        s.push_back({std::stod(tok[std::size_t(cx)]), std::stod(tok[std::size_t(cv)])});
    }
    return s;
}

SuiteOptions suite_options(const RunConfig& c) {
    SuiteOptions o;
    o.profile = c.profile == "full" ? Profile::full : Profile::quick;
    o.seed = c.seed;
    o.qmax = c.qmax;
    return o;
}

Report sieve_report(const RunConfig& c, std::string& csv) {
    Report r("sieve");
    const u64 N = u64(c.N);
    auto s = d3_table(N), p = d3_table_parallel(N);
    u64 mismatch = 0;
    double total = 0;
    for (u64 i = 1; i <= N; ++i) {
        mismatch += s[i] != p[i];
        total += s[i];
    }
    // factorization spot checks on a fixed stride
    u64 bad = 0, checked = 0;
    for (u64 i = 1; i <= N; i += std::max<u64>(1, N / 997)) {
        ++checked;
        bad += n_divisors3(factorize(i)) != s[i];
    }
    r.data["N"] = N;
    r.data["sum_d3"] = total;
    r.data["squarefull_count"] = count_squarefull(N);
    r.check("parallel_mismatch", "segmented d3 sieve against the serial sieve", double(mismatch), Relation::eq, 0);
    r.check("factorization_mismatch", "d3 sieve against factorization", double(bad), Relation::eq, 0);
    r.data["spot_checks"] = checked;
    csv = "N,sum_d3,squarefull_count\n" + std::to_string(N) + "," + fmt17(total) + "," +
          std::to_string(count_squarefull(N)) + "\n";
    return r;
}

Report expsum_report(const RunConfig& c) {
    Report r("expsum");
    const i64 q = c.q, a = c.a, b = c.b;
    cplx d = kloosterman(a, b, q), t = kloosterman_crt(a, b, q);
    r.data["kloosterman"] = {d.real(), d.imag()};
    r.data["ramanujan"] = ramanujan_sum(a, q);
    r.check("kloosterman_crt", "Kloosterman twisted multiplicativity", std::abs(d - t), Relation::le, 1e-8);
    r.check("weil_ratio", "Kloosterman sum Weil bound", std::abs(d) / weil_bound(a, b, q), Relation::le, 1.0);
    r.check("ramanujan_closed", "Ramanujan sum Moebius formula",
            std::fabs(ramanujan_sum(a, q) - ramanujan_sum_direct(a, q)), Relation::le, 1e-8);
    if (q % 2 == 1 && std::gcd(mod(a, q), q) == 1) {
        cplx g = quad_gauss(a, q, Mode::direct);
        r.data["gauss"] = {g.real(), g.imag()};
        r.check("gauss_closed", "quadratic Gauss sum closed form", std::abs(g - quad_gauss(a, q, Mode::closed)),
                Relation::le, 1e-6);
    }
    return r;
}

Report charsum_report(const RunConfig& c) {
    Report r("charsum");
    const i64 q = c.q, a = c.a;
    cplx d = frakC(c.m1, c.m2, a, q, Mode::direct);
    r.data["frakC_direct"] = {d.real(), d.imag()};
    if (q % 2 == 1 && std::gcd(mod(a, q), q) == 1) {
        cplx pr = frakC(c.m1, c.m2, a, q, Mode::closed), co = frakC_completed(c.m1, c.m2, a, q);
        r.data["frakC_stated"] = {pr.real(), pr.imag()};
        r.data["frakC_opposite_sign"] = {co.real(), co.imag()};
        r.check("stated_sign_error", "completed-square evaluation, sign as stated", std::abs(d - pr), Relation::le,
                1e-6);
        r.check("opposite_sign_error", "completed-square evaluation, sign reversed", std::abs(d - co), Relation::le,
                1e-6);
    }
    FreqSumInput in;
    in.q = q;
    in.n = c.n;
    in.m1 = c.m1;
    in.m2 = c.m2;
    in.n3 = c.n3;
    in.n3p = c.n3p;
    in.k = c.k;
    in.m = c.m;
    in.sign = c.sign;
    if (q % c.n == 0) {
        cplx s = frak_S(in);
        r.data["frak_S"] = {s.real(), s.imag()};
        if (c.m == 0) r.data["zero_frequency_oracle"] = zero_freq_oracle(in);
        else {
            auto nz = nonzero_bound_ratio(in);
            r.data["nonzero_ratio_gcd"] = nz.ratio_gcd;
            r.data["nonzero_ratio_div"] = nz.ratio_div;
        }
    }
    return r;
}

Report voronoi_report(const RunConfig& c) {
    Report r("voronoi");
    VoronoiReport v = voronoi_d3_check(c.a, c.q, BumpFunction::classic(c.X, 2 * c.X));
    r.data["q"] = v.q;
    r.data["a"] = v.a;
    r.data["X"] = v.X;
    r.data["lhs"] = {v.lhs.real(), v.lhs.imag()};
    r.data["rhs_stated"] = {v.rhs_stated.real(), v.rhs_stated.imag()};
    r.data["rhs_corrected"] = {v.rhs_corrected.real(), v.rhs_corrected.imag()};
    r.data["dual"] = {v.dual.real(), v.dual.imag()};
    r.data["main_terms_stated"] = {{"c0", v.stated.c0}, {"c1", v.stated.c1}, {"c2", v.stated.c2},
                                    {"value", v.stated.value}};
    r.data["main_terms_corrected"] = {{"c0", v.corrected.c0}, {"c1", v.corrected.c1}, {"c2", v.corrected.c2},
                                      {"value", v.corrected.value}};
    r.data["mellin"] = {v.mellin0, v.mellin1, v.mellin2};
    r.data["coefficient_ratios"] = {v.ratio_c0, v.ratio_c1, v.ratio_c2};
    r.data["discrepancy_stated"] = v.discrepancy_stated;
    r.data["T"] = v.T;
    r.data["dual_terms"] = v.n2_terms;
    double ram = 0;
    for (double x : v.ram_check) ram = std::max(ram, x);
    r.check("discrepancy", "d3 Voronoi identity, main terms rescaled", v.discrepancy_corrected, Relation::le, 1e-3);
    r.check("ramanujan_factor", "Kloosterman factor at zero frequency equals a Ramanujan sum", ram, Relation::le, 1e-9);
    return r;
}

Report delta_report(const RunConfig& c) {
    Report r("delta");
    DeltaExpansion d(c.Q);
    double e0 = std::fabs(delta_eval(d, 0) - 1), mx = 0;
    for (i64 n = 1; n <= c.nmax; ++n) mx = std::max({mx, std::fabs(delta_eval(d, n)), std::fabs(delta_eval(d, -n))});
    r.data["Q"] = c.Q;
    r.data["nmax"] = c.nmax;
    r.data["average_profile"] = delta_average_profile(d);
    r.check("delta0_error", "delta symbol at zero", e0, Relation::le, 1e-9);
    r.check("max_off_zero", "delta symbol away from zero", mx, Relation::le, 1e-9);
    return r;
}

Report kernel_report(const RunConfig& c, std::string& csv) {
    Report r("kernel");
    const std::vector<double> ys = c.ys.empty() ? std::vector<double>{1, 10, 100, 1000} : c.ys;
    const auto g = BumpFunction::classic(1, 2);
    KernelOptions shifted;
    shifted.sigma = 0.0;
    auto rows = kernel_table(ys, c.sign, g);
    std::ostringstream o;
    o << "y,re,im,err\n";
    ojson jr = ojson::array();
    for (const auto& row : rows) {
        o << fmt17(row.y) << ',' << fmt17(row.re) << ',' << fmt17(row.im) << ',' << fmt17(row.err) << '\n';
        jr.push_back(ojson{{"y", row.y}, {"re", row.re}, {"im", row.im}, {"err", row.err}});
        auto k2 = g_kernel(row.y, c.sign, g, shifted);
        const double diff = std::abs(cplx(row.re, row.im) - k2.value);
        r.check("sigma_shift_y" + fmt17(row.y), "kernel unchanged when the contour moves by 1/2", diff, Relation::le,
                row.err + k2.error + 1e-9 * std::abs(k2.value));
    }
    r.data["sign"] = c.sign;
    r.data["rows"] = jr;
    csv = o.str();
    return r;
}

Report osc_report(const RunConfig& c) {
    Report r("osc");
    OscSpec s;
    s.X = c.X;
    s.Q = c.Q;
    s.q = double(c.q);
    s.u = c.u;
    s.nm2 = c.nm2;
    s.sign = c.sign;
    s.m1 = double(c.m1);
    s.m2 = double(c.m2);
    s.n3 = c.n3;
    s.k = c.k;
    OscOptions ad, fi;
    ad.scheme = OscScheme::adaptive;
    fi.scheme = OscScheme::filon;
    auto i1 = osc_voronoi_kernel(s, ad), i2 = osc_voronoi_kernel(s, fi);
    auto J = osc_poisson_kernel(s);
    auto P = stationary_p(s);
    r.data["K"] = s.K();
    r.data["Kprime"] = s.Kprime();
    r.data["M"] = s.M();
    r.data["I"] = {i1.value.real(), i1.value.imag()};
    r.data["I_error"] = i1.error;
    r.data["I_asymptotic_regime"] = i1.asymptotic;
    r.data["J"] = {J.value.real(), J.value.imag()};
    r.data["P"] = {P.value.real(), P.value.imag()};
    if (s.nm2 > 0) r.data["P_ratio"] = std::abs(P.value) / (std::sqrt(s.q) / std::pow(s.X * s.nm2, 1.0 / 6));
    r.check("schemes_agree", "adaptive and Filon quadrature of the Voronoi-side integral", std::abs(i1.value - i2.value),
            Relation::le, 10 * (i1.error + i2.error) + 1e-14 * i1.trivial);
    r.check("trivial_bound", "Voronoi-side integral below its absolute integral", std::abs(i1.value), Relation::le,
            i1.trivial);
    return r;
}

Report sum_report(const RunConfig& c, std::string& csv) {
    Report r("sum");
    std::vector<double> Xs = c.Xs.empty() ? std::vector<double>{c.X} : c.Xs;
    WindowConfig w;
    w.k = c.k;
    w.theta = c.theta;
    w.mode = c.mode == "smooth" ? WindowMode::smooth : WindowMode::sharp;
    Weight wt = c.weight == "mobius" ? Weight::mobius : c.weight == "vonMangoldt" ? Weight::von_mangoldt : Weight::unit;
    const QuadraticForm Q(1, 1, 0);
    u64 need = 0;
    for (double X : Xs) {
        w.X = X;
        need = std::max(need, c.theta == 0 ? sk_max_argument(w) : quad_max_argument(w, Q));
    }
    std::shared_ptr<CoefficientSource> src;
    if (c.source == "d3")
        src = CoefficientSource::triple_divisor(std::max<u64>(need, 1));
    else if (c.source == "sym2")
        src = CoefficientSource::sym2_discriminant(std::max<u64>(need, 2));
    else
        src = CoefficientSource::user_table(c.table);
    std::ostringstream o;
    o << "X," << (c.theta == 0 ? "k" : "theta") << ",source,weight,value,trivial_ratio\n";
    std::vector<std::pair<double, double>> series;
    double maxdiff = 0;
    ojson rows = ojson::array();
    for (double X : Xs) {
        w.X = X;
        double v, s, triv;
        if (c.theta == 0) {
            v = eval_Sk(w, *src, wt);
            s = eval_Sk_serial(w, *src, wt);
            triv = std::pow(X, 1 + 1.0 / c.k);
        } else {
            v = eval_S_quad(w, Q, *src);
            s = eval_S_quad_serial(w, Q, *src);
            triv = std::pow(X, 1 + c.theta);
        }
        maxdiff = std::max(maxdiff, std::fabs(v - s) / std::max(1.0, std::fabs(s)));
        o << fmt17(X) << ',' << (c.theta == 0 ? std::to_string(c.k) : fmt17(c.theta)) << ',' << c.source << ','
          << c.weight << ',' << fmt17(v) << ',' << fmt17(std::fabs(v) / triv) << '\n';
        rows.push_back(ojson{{"X", X}, {"value", v}, {"trivial_ratio", std::fabs(v) / triv}});
        if (v != 0) series.push_back({X, v});
    }
    csv = o.str();
    r.data["rows"] = rows;
    if (series.size() >= 3) {
        auto f = exponent_fit(series);
        r.data["slope"] = f.slope;
        r.data["slope_stderr"] = f.stderr_slope;
    }
    // the nested loop sums in a different order, so only rounding-level agreement is expected
    r.check("serial_agreement", "parallel sum against the single loop nest", maxdiff, Relation::le, 1e-12);
    return r;
}

Report fit_report(const RunConfig& c, std::ostream& err) {
    Report r("fit");
    auto f = exponent_fit(read_series(c.series));
    r.data["points"] = f.X.size();
    r.data["slope"] = f.slope;
    r.data["slope_stderr"] = f.stderr_slope;
    r.data["intercept"] = f.intercept;
    err << "slope " << fmt17(f.slope) << " stderr " << fmt17(f.stderr_slope) << '\n';
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    int threads = c.threads;
    if (threads == 0)
        if (const char* e = std::getenv("NTV_THREADS")) threads = std::atoi(e);
    if (threads > 0) omp_set_num_threads(threads);
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    std::string table_csv;
    try {
        const auto& s = c.subcommand;
        if (s == "verify")
            r = run_criterion(criterion_index(c.target), suite_options(c));
        else if (s == "verify-all")
            r = verify_all(suite_options(c));
        else if (s == "sieve")
            r = sieve_report(c, table_csv);
        else if (s == "expsum")
            r = expsum_report(c);
        else if (s == "charsum")
            r = charsum_report(c);
        else if (s == "voronoi")
            r = voronoi_report(c);
        else if (s == "delta")
            r = delta_report(c);
        else if (s == "kernel")
            r = kernel_report(c, table_csv);
        else if (s == "osc")
            r = osc_report(c);
        else if (s == "sum")
            r = sum_report(c, table_csv);
        else
            r = fit_report(c, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return runtime_error;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds == 0) r.seconds = secs;
    ojson j;
    j["run_id"] = c.run_id();
    j["config"] = c.echo();
    ojson body = report_json(r);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    const std::string csv = table_csv.empty() ? report_csv(r) : table_csv;
    try {
        if (!c.out.empty()) write_file(c.out, dump_json(j) + "\n");
        if (!c.csv.empty()) write_file(c.csv, csv);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return runtime_error;
    }
    if (c.format == "csv")
        out << csv;
    else if (c.out.empty())
        out << dump_json(j) << '\n';
    for (const auto& a : r.assertions)
        if (!a.pass) err << "FAIL " << r.suite << ' ' << a.name << ": observed " << fmt17(a.observed) << '\n';
    if (c.max_seconds > 0 && secs > c.max_seconds) {
        err << "runtime cap exceeded: " << secs << " s\n";
        return runtime_cap;
    }
    return r.passed() ? ok : suite_failed;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto p = parse(args);
    if (p.help) {
        std::cout << p.message;
        return ok;
    }
    if (p.code != ok) {
        std::cerr << "error: " << p.message << '\n';
        return p.code;
    }
    return run(p.cfg, std::cout, std::cerr);
}

}  // namespace ntv::cli
