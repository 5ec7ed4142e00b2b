#include "gwp1/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gwp1/functionals.hpp"
#include "gwp1/numeric_oracle.hpp"
#include "gwp1/serialize.hpp"
#include "json.hpp"

namespace gwp1 {

namespace {

SuiteItem item(std::string check, bool ok, std::string detail = {}) {
    return {std::move(check), ok ? ItemStatus::pass : ItemStatus::fail, std::move(detail)};
}

// A known discrepancy: reproduced -> expected_mismatch, not reproduced -> fail.
SuiteItem mismatch_item(std::string check, bool mismatch_seen, std::string detail) {
    return {std::move(check), mismatch_seen ? ItemStatus::expected_mismatch : ItemStatus::fail, std::move(detail)};
}

std::vector<std::pair<int, int>> stable_pairs(int chi_max) {
    std::vector<std::pair<int, int>> out;
    for (int g = 0; 2 * g - 1 <= chi_max; ++g)
        for (int n = 1; 2 * g - 2 + n <= chi_max; ++n)
            if (is_stable(g, n)) out.emplace_back(g, n);
    return out;
}

std::string gn(int g, int n) { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }

}  // namespace

std::string to_string(ItemStatus s) {
    switch (s) {
        case ItemStatus::pass: return "pass";
        case ItemStatus::fail: return "fail";
        case ItemStatus::expected_mismatch: return "expected-mismatch";
    }
    return "fail";
}

bool SuiteReport::pass() const {
    for (const auto& i : items)
        if (i.status == ItemStatus::fail) return false;
    return true;
}

std::string SuiteReport::items_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& i : items) j.push_back({{"check", i.check}, {"status", to_string(i.status)}, {"detail", i.detail}});
    std::string out = "[";
    for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ",\n " : "\n ") + j[k].dump();
    return out + (j.empty() ? "]\n" : "\n]\n");
}

std::string SuiteReport::items_csv() const {
    std::ostringstream os;
    os << "check,status,detail\n";
    for (const auto& i : items) {
        std::string d = i.detail;
        for (auto& c : d)
            if (c == '"') c = '\'';
        os << '"' << i.check << "\"," << to_string(i.status) << ",\"" << d << "\"\n";
    }
    return os.str();
}

SuiteReport suite_loop(Engine& e, int chi_max) {
    SuiteReport r{"loop", {}, {}};
    auto b = check_linear_loop_bergman();
    r.items.push_back(item("linear (0,2)", b.pass, b.detail));
    for (auto [g, n] : stable_pairs(chi_max)) {
        auto lin = check_linear_loop(e, g, n);
        r.items.push_back(item("linear " + gn(g, n), lin.pass, lin.detail));
        auto quad = check_quadratic_loop(e, g, n);
        r.items.push_back(item("quadratic " + gn(g, n), quad.pass, quad.detail));
    }
    return r;
}

SuiteReport suite_stationary(Engine& e, int chi_max, int depth) {
    SuiteReport r{"stationary", {}, {}};
    for (auto [g, n] : stable_pairs(chi_max)) {
        auto s = stationary_expansion_check(e, g, n, depth);
        r.items.push_back(item("stationary " + gn(g, n), s.pass, s.detail));
    }
    return r;
}

SuiteReport suite_tables(const TablesConfig& cfg) {
    SuiteReport r{"tables", {}, {}};

    {
        int bad = 0;
        for (int k = 0; k <= cfg.s_max; ++k)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (smatrix(k)[a][b] != I_basis(a, k, XiIndex{0, b})) ++bad;
        r.items.push_back(item("S_k equals I^alpha_k[xi^beta_0], k <= " + std::to_string(cfg.s_max), bad == 0,
                               std::to_string(bad) + " differing entries"));
        const SBlock& s0 = smatrix(0);
        bool ok = s0[0][0] == 1 && s0[0][1] == 0 && s0[1][0] == 0 && s0[1][1] == 1 && smatrix(1)[0][1] == 0 &&
                  smatrix(1)[1][0] == 1 && smatrix(2)[0][0] == -1;
        r.items.push_back(item("S spot values", ok, "S_0 = 1, (S_1)_0^1 = 0, (S_1)_1^0 = 1, (S_2)_0^0 = -1"));
    }
    {
        int bad = 0;
        for (int b = 0; b <= cfg.gw01_max; ++b)
            for (int a = 0; a < 2; ++a)
                if (gw01(b, a) != gw01_pipeline(b, a)) ++bad;
        bool spots = gw01(0, 1) == 1 && gw01(1, 0) == -2 && gw01(0, 0) == 0;
        r.items.push_back(item("(0,1) table against I^alpha_{b+1}[dz/z], b <= " + std::to_string(cfg.gw01_max),
                               bad == 0 && spots, std::to_string(bad) + " differing"));
    }
    {
        int bad = 0, total = 0;
        for (int b1 = 0; b1 <= cfg.gw02_sum; ++b1)
            for (int b2 = 0; b1 + b2 <= cfg.gw02_sum; ++b2)
                for (int a1 = 0; a1 < 2; ++a1)
                    for (int a2 = 0; a2 < 2; ++a2, ++total)
                        if (gw02(b1, a1, b2, a2) != gw02_eta(b1, a1, b2, a2)) ++bad;
        bool base = gw02(0, 1, 0, 1) == 1;
        r.items.push_back(item("(0,2) recursion against eta forms, b1 + b2 <= " + std::to_string(cfg.gw02_sum),
                               bad == 0 && base, std::to_string(bad) + " of " + std::to_string(total) + " differ"));
    }
    {
        int bad = 0;
        for (int m = 0; m <= cfg.l_max; ++m)
            if (L_series(m) != L_direct(m)) ++bad;
        bool spots = L_series(0) == 0 && L_series(1) == 1 && L_series(2) == frac(15, 2);
        r.items.push_back(item("L_m series against direct sum, m <= " + std::to_string(cfg.l_max), bad == 0 && spots,
                               "L_0 = 0, L_1 = 1, L_2 = 15/2"));
        int kbad = 0;
        for (int m = 0; m <= cfg.l_max; ++m)
            if (K_sum(m) != K_closed(m)) ++kbad;
        r.items.push_back(item("K_m sum equals (2m+1)!/m!^2", kbad == 0));
        Rational printed = L_printed_closed_form(1);
        r.items.push_back(mismatch_item("printed L_m closed form", printed != L_series(1),
                                        "m = 1: closed form " + to_string(printed) + ", series " +
                                            to_string(L_series(1))));
    }
    for (int beta = 0; beta < 2; ++beta) {
        auto c = lan_expansion_check(beta, cfg.lan_depth);
        r.items.push_back(item("log pairing expansion beta = " + std::to_string(beta), c.pass, c.detail));
    }
    {
        int bad = 0;
        for (int k = 0; k <= cfg.log_k; ++k)
            for (int a = 0; a < 2; ++a)
                if (!residue_log_pairing(xi(a, k)).branch.is_zero()) ++bad;
        r.items.push_back(item("branch constant vanishes on xi^alpha_k, k <= " + std::to_string(cfg.log_k), bad == 0));
        const RatFun x1 = RatFun(Poly::monomial(1, 1));
        const RatFun q = RatFun(Poly{Rational(-4), Rational(0), Rational(1)});
        bool ok = residue_log_pairing(xi(0, 0)).rational == x1 / q && residue_log_pairing(xi(1, 0)).rational == RatFun(2) / q;
        r.items.push_back(item("A[xi^0_0] = x/(x^2-4), A[xi^1_0] = 2/(x^2-4)", ok));
    }
    {
        // x^k xi expansions that reach x^2 dz/z have no table value and are skipped.
        int bad = 0, checked = 0, skipped = 0;
        for (int beta = 0; beta < 2; ++beta)
            for (int j = 0; j <= cfg.xmul_max; ++j)
                for (int k = 0; k <= cfg.xmul_max; ++k)
                    for (int m = 0; m <= cfg.xmul_max; ++m)
                        for (int a = 0; a < 2; ++a) {
                            Rational expanded;
                            try {
                                expanded = I_xmul_expanded(beta, j, k, XiIndex{m, a});
                            } catch (const DomainError&) {
                                ++skipped;
                                continue;
                            }
                            ++checked;
                            if (I_xmul(beta, j, k, XiIndex{m, a}) != expanded) ++bad;
                        }
        r.items.push_back(item("x-multiplication formula against x-action expansion", bad == 0 && checked > 0,
                               std::to_string(checked) + " checked, " + std::to_string(bad) + " differing, " +
                                   std::to_string(skipped) + " outside the span"));
    }
    {
        bool shape = true, printed_bound = true;
        std::string det;
        for (int m = 0; m <= cfg.ltransform_m; ++m)
            for (int a = 0; a < 2; ++a) {
                LTransform lt = l_transform_decompose(XiIndex{m, a}, m + 3);
                if (lt.max_num_deg != 2 * lt.N - 1) shape = false;
                if (lt.max_num_deg > 2 * lt.N - 2) printed_bound = false;
                det += "(" + std::to_string(a) + "," + std::to_string(m) + "): N=" + std::to_string(lt.N) +
                       " deg=" + std::to_string(lt.max_num_deg) + "; ";
            }
        r.items.push_back(item("L-transform: removable poles, residue-free, P/(x^2-4)^N with deg P = 2N-1", shape, det));
        r.items.push_back(mismatch_item("L-transform printed bound deg P <= 2N-2", !printed_bound, det));
    }
    return r;
}

SuiteReport suite_appendix(const AppendixConfig& cfg) {
    SuiteReport r{"appendix", {}, {}};
    const double x0 = cfg.x0.get_d();
    for (int b = 0; b <= cfg.b_max; ++b) {
        auto [rr, ss] = appendix_pairing(b, cfg.x0);
        const double closed = rr.get_d() + ss.get_d() * std::log(x0 * x0);
        OracleResult o = I0_numeric_oracle(b, appendix_form(cfg.x0));
        const double diff = std::abs(o.value - closed);
        std::ostringstream d;
        d.precision(12);
        d << "closed " << closed << " (" << to_string(rr) << " + " << to_string(ss) << " ln x0^2), " << o.detail
          << ", |diff| " << diff;
        r.items.push_back(item("appendix b = " + std::to_string(b) + ", x0 = " + to_string(cfg.x0),
                               o.converged && diff <= cfg.tol, d.str()));
    }
    for (int k = 0; k <= cfg.basis_k; ++k)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b <= cfg.basis_b; ++b) {
                const double exact = I_basis(0, b, XiIndex{k, a}).get_d();
                OracleResult o = I0_numeric_oracle(b, xi(a, k));
                const double diff = std::abs(o.value - exact);
                std::ostringstream d;
                d.precision(12);
                d << "exact " << exact << ", " << o.detail << ", |diff| " << diff;
                r.items.push_back(item("oracle I^0_" + std::to_string(b) + "[xi^" + std::to_string(a) + "_" +
                                           std::to_string(k) + "]",
                                       o.converged && diff <= cfg.tol, d.str()));
            }
    return r;
}

SuiteReport suite_virasoro(InvariantStore& s, const SweepConfig& cfg) {
    SuiteReport r{"virasoro", {}, {}};
    auto checks = virasoro_sweep(cfg, s);
    int fails = 0, string_bad = 0, strings = 0;
    for (const auto& c : checks) {
        if (!c.pass) ++fails;
        if (c.k == -1) {
            ++strings;
            if (decay_rhs(-1, c.g, c.insertions, s) != string_lowering(c.g, c.insertions, s)) ++string_bad;
        }
    }
    r.items.push_back(item("decay rules and L_k coefficients", fails == 0,
                           std::to_string(checks.size() - fails) + " of " + std::to_string(checks.size()) + " pass"));
    r.items.push_back(item("string equation closure", string_bad == 0,
                           std::to_string(strings - string_bad) + " of " + std::to_string(strings) + " agree"));
    SweepConfig printed = cfg;
    printed.printed_form = true;
    int pfails = 0, explained = 0;
    for (const auto& c : virasoro_sweep(printed, s)) {
        if (c.pass) continue;
        ++pfails;
        bool has00 = std::find(c.insertions.begin(), c.insertions.end(), Insertion{0, 0}) != c.insertions.end();
        if (has00 && c.k >= 1) ++explained;
    }
    r.items.push_back(mismatch_item("printed L_k without the j = 0 term", pfails > 0 && explained == pfails,
                                    std::to_string(pfails) + " checks fail, " + std::to_string(explained) +
                                        " of them have a tau^0_0 partner and k >= 1"));
    r.report = virasoro_report_json(checks);
    return r;
}

}  // namespace gwp1
