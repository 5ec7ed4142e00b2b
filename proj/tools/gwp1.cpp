// gwp1: compute, cache, dump and verify.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gwp1/functionals.hpp"
#include "gwp1/serialize.hpp"
#include "gwp1/suites.hpp"

using namespace gwp1;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int g = 0;
    int n = 0;
    std::string ins;
    int chi_max = 6;
    std::optional<int> b_max;
    std::optional<int> depth;
    std::optional<int> chi_given;
    std::string x0 = "3";
    double tol = 1e-6;
    std::string out;
    std::string format = "json";
    std::string cache_dir;
    int threads = 1;
    bool printed = false;
    std::string suite;
};

std::vector<Insertion> parse_insertions(const std::string& spec) {
    std::vector<Insertion> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw UsageError("insertion '" + tok + "' is not of the form b:alpha");
        int b = 0, a = 0;
        try {
            std::size_t used = 0;
            b = std::stoi(tok.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("b");
            std::string as = tok.substr(colon + 1);
            a = std::stoi(as, &used);
            if (used != as.size()) throw std::invalid_argument("alpha");
        } catch (const std::exception&) {
            throw UsageError("insertion '" + tok + "' is not of the form b:alpha");
        }
        if (b < 0 || (a != 0 && a != 1)) throw UsageError("insertion '" + tok + "' needs b >= 0 and alpha in {0,1}");
        out.push_back({b, a});
    }
    if (out.empty()) throw UsageError("no insertions given");
    return out;
}

std::string cache_dir(const Options& o) {
    if (const char* env = std::getenv("GWP1_CACHE"); env && *env) return env;
    return o.cache_dir;
}

// Load every cached correlator up to chi, run `body`, then store what was computed.
template <class F>
auto with_cache(Engine& e, const Options& o, int chi, F body) {
    const std::string dir = cache_dir(o);
    std::optional<CorrelatorCache> cache;
    if (!dir.empty()) cache.emplace(dir);
    auto pairs = [&] {
        std::vector<std::pair<int, int>> v;
        for (int g = 0; 2 * g - 1 <= chi; ++g)
            for (int n = 1; 2 * g - 2 + n <= chi; ++n)
                if (is_stable(g, n)) v.emplace_back(g, n);
        return v;
    }();
    if (cache)
        for (auto [g, n] : pairs) cache->load(e, g, n);
    auto result = body();
    if (cache)
        for (auto [g, n] : pairs)
            if (e.cached(g, n)) cache->save(e, g, n);
    return result;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + o.out);
}

int cmd_correlator(const Options& o) {
    if (!is_stable(o.g, o.n)) {
        if (o.g == 0 && o.n == 2) throw UsageError("unstable; see gw02");
        if (o.g == 0 && o.n == 1) throw UsageError("unstable; see gw01");
        throw UsageError("unstable (g,n)");
    }
    Engine e(RecursionBudget{o.chi_max, o.threads});
    const int chi = std::min(o.chi_max, 2 * o.g - 2 + o.n);
    auto t = with_cache(e, o, chi, [&] { return e.correlator(o.g, o.n); });
    emit(o, o.format == "csv" ? tensor_to_csv(o.g, *t) : tensor_to_json(o.g, *t));
    return kOk;
}

int cmd_invariant(const Options& o) {
    auto ins = parse_insertions(o.ins);
    Rational d = degree_of(o.g, ins);
    const int n = static_cast<int>(ins.size());
    if (sgn(d) < 0 || !is_integer(d)) {
        std::cout << "0\nd = " << to_string(d) << " (" << (sgn(d) < 0 ? "negative" : "non-integer")
                  << " degree: vanishes)\n";
        return kOk;
    }
    if (!(o.g == 0 && n <= 2) && !is_stable(o.g, n)) throw UsageError("unsupported (g,n)");
    Engine e(RecursionBudget{o.chi_max, o.threads});
    const int chi = std::min(o.chi_max, 2 * o.g - 2 + n);
    Rational v = with_cache(e, o, chi, [&] { return descendants(e, o.g, ins); });
    std::cout << to_string(v) << "\nd = " << to_string(d) << "\n";
    return kOk;
}

int cmd_smatrix(const Options& o) {
    const int k = o.b_max.value_or(16);
    emit(o, o.format == "csv" ? smatrix_to_csv(k) : smatrix_to_json(k));
    return kOk;
}

int cmd_verify(const Options& o) {
    SuiteReport r;
    if (o.suite == "loop") {
        const int chi = o.chi_given.value_or(4);
        Engine e(RecursionBudget{std::max(chi, 1), o.threads});
        r = with_cache(e, o, chi, [&] { return suite_loop(e, chi); });
    } else if (o.suite == "stationary") {
        const int chi = o.chi_given.value_or(3);
        Engine e(RecursionBudget{std::max(chi, 1), o.threads});
        r = with_cache(e, o, chi, [&] { return suite_stationary(e, chi, o.depth.value_or(8)); });
    } else if (o.suite == "tables") {
        TablesConfig cfg;
        if (o.b_max) cfg.gw01_max = *o.b_max;
        if (o.depth) cfg.lan_depth = *o.depth;
        r = suite_tables(cfg);
    } else if (o.suite == "appendix") {
        AppendixConfig cfg;
        cfg.x0 = parse_rational(o.x0);
        if (is_zero(cfg.x0)) throw UsageError("--x0 must be nonzero");
        cfg.b_max = o.b_max.value_or(3);
        cfg.tol = o.tol;
        r = suite_appendix(cfg);
    } else if (o.suite == "virasoro") {
        SweepConfig cfg;
        cfg.k_max = o.depth.value_or(4);
        cfg.g_max = o.g;
        cfg.partners_max = o.n;
        cfg.b_max = o.b_max.value_or(6);
        cfg.threads = o.threads;
        cfg.printed_form = o.printed;
        // lhs correlators reach 2g - 2 + (partners + 1).
        const int chi = std::max(1, 2 * cfg.g_max - 1 + cfg.partners_max);
        Engine e(RecursionBudget{std::max(o.chi_max, chi), o.threads});
        InvariantStore s(e);
        r = with_cache(e, o, chi, [&] { return suite_virasoro(s, cfg); });
    } else {
        throw UsageError("unknown suite " + o.suite);
    }
    for (const auto& i : r.items) std::cout << to_string(i.status) << "  " << i.check << "\n";
    std::string body = o.format == "csv" ? r.items_csv() : (r.report.empty() ? r.items_json() : r.report);
    if (!o.out.empty()) emit(o, body);
    std::cout << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
    return r.pass() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gromov-Witten invariants of P^1 from topological recursion on x = z + 1/z"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--chi-max", o.chi_max, "largest 2g-2+n the engine may compute")->check(CLI::PositiveNumber);
        c->add_option("--out", o.out, "output file (default stdout)");
        c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--cache-dir", o.cache_dir, "correlator cache directory (GWP1_CACHE overrides)");
        c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* corr = app.add_subcommand("correlator", "write omega_{g,n} in the xi basis");
    corr->add_option("--g", o.g, "genus")->required()->check(CLI::NonNegativeNumber);
    corr->add_option("--n", o.n, "number of points")->required()->check(CLI::PositiveNumber);
    add_common(corr);

    auto* inv = app.add_subcommand("invariant", "descendant invariant <prod tau^alpha_b>_g");
    inv->add_option("--g", o.g, "genus")->required()->check(CLI::NonNegativeNumber);
    inv->add_option("--ins", o.ins, "insertions b:alpha,...")->required();
    add_common(inv);

    auto* sm = app.add_subcommand("smatrix", "dump S_k for k <= --b-max");
    sm->add_option("--b-max,--bmax", o.b_max, "largest k")->check(CLI::NonNegativeNumber);
    add_common(sm);

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", o.suite, "loop | virasoro | stationary | tables | appendix")
        ->required()
        ->check(CLI::IsMember({"loop", "virasoro", "stationary", "tables", "appendix"}));
    add_common(ver);
    ver->remove_option(ver->get_option("--chi-max"));
    ver->add_option("--chi-max", o.chi_given, "largest 2g-2+n checked (loop, stationary)")->check(CLI::PositiveNumber);
    o.g = 2;
    o.n = 3;
    ver->add_option("--g", o.g, "virasoro: largest genus")->check(CLI::NonNegativeNumber);
    ver->add_option("--n", o.n, "virasoro: largest number of partner insertions")->check(CLI::NonNegativeNumber);
    ver->add_option("--b-max,--bmax", o.b_max, "largest descendant index")->check(CLI::NonNegativeNumber);
    ver->add_option("--depth", o.depth, "stationary: b_i bound; tables: log pairing depth; virasoro: largest k")
        ->check(CLI::NonNegativeNumber);
    ver->add_option("--x0", o.x0, "appendix: rational x0 off the imaginary axis");
    ver->add_option("--tol", o.tol, "appendix: oracle tolerance")->check(CLI::PositiveNumber);
    ver->add_flag("--printed", o.printed, "virasoro: use L_k exactly as printed (no j = 0 term)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*corr) return cmd_correlator(o);
        if (*inv) return cmd_invariant(o);
        if (*sm) return cmd_smatrix(o);
        if (*ver) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExhausted& e) {
        std::cerr << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
