#include "gwp1/virasoro.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace gwp1 {

namespace {

std::vector<Insertion> with(std::vector<Insertion> ins, std::initializer_list<Insertion> extra) {
    for (const auto& e : extra) ins.push_back(e);
    return ins;
}

std::vector<Insertion> without(const std::vector<Insertion>& ins, std::size_t i) {
    std::vector<Insertion> out;
    for (std::size_t j = 0; j < ins.size(); ++j)
        if (j != i) out.push_back(ins[j]);
    return out;
}

bool same_multiset(std::vector<Insertion> a, std::vector<Insertion> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Rational delta_term(int k, int g, const std::vector<Insertion>& ins) {
    if (g != 0) return 0;
    if (k == 0 && same_multiset(ins, {{0, 0}, {0, 0}})) return 2;
    if (k == -1 && same_multiset(ins, {{0, 0}, {0, 1}})) return 1;
    return 0;
}

// sum over h and ordered splits J + J' of ins of <tau^1_j J>_h <tau^1_l J'>_{g-h},
// plus the connected <tau^1_j tau^1_l ins>_{g-1}.
Rational quadratic(int j, int l, int g, const std::vector<Insertion>& ins, InvariantStore& s) {
    Rational acc = 0;
    if (g >= 1) acc += s.get(g - 1, with(ins, {{j, 1}, {l, 1}}));
    const std::size_t n = ins.size();
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        std::vector<Insertion> J, Jp;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? J : Jp).push_back(ins[i]);
        for (int h = 0; h <= g; ++h) {
            Rational a = s.get(h, with(J, {{j, 1}}));
            if (is_zero(a)) continue;
            acc += a * s.get(g - h, with(Jp, {{l, 1}}));
        }
    }
    return acc;
}

}  // namespace

Rational InvariantStore::get(int g, std::vector<Insertion> ins) {
    for (const auto& i : ins)
        if (i.b < 0) return 0;
    Rational d = degree_of(g, ins);
    if (sgn(d) < 0 || !is_integer(d)) return 0;
    std::sort(ins.begin(), ins.end());
    auto key = std::make_pair(g, ins);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Rational v = descendants(engine_, g, ins);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::move(key), v);
    return v;
}

void InvariantStore::corrupt(int g, std::vector<Insertion> ins, const Rational& value) {
    std::sort(ins.begin(), ins.end());
    std::lock_guard<std::mutex> lock(mu_);
    memo_[{g, ins}] = value;
}

Rational decay_rhs(int k, int g, const std::vector<Insertion>& ins, InvariantStore& s, bool printed) {
    Rational rhs = 0;
    for (std::size_t i = 0; i < ins.size(); ++i) {
        const auto rest = without(ins, i);
        const int l = ins[i].b;
        if (ins[i].alpha == 0) {
            if (l < 1) {
                // l -> 0 limit of the D2 coefficient: 2/(k+1).
                if (!printed && k >= 1) rhs += frac(2, k + 1) * s.get(g, with(rest, {{k - 1, 1}}));
                continue;
            }
            Rational c = binomial(k + l, l - 1);
            if (is_zero(c)) continue;
            rhs += c * (s.get(g, with(rest, {{k + l, 0}})) +
                        2 * (harmonic(k + l) - harmonic(l - 1)) * s.get(g, with(rest, {{k + l - 1, 1}})));
        } else {
            Rational c = binomial(k + l + 1, l);
            if (is_zero(c)) continue;
            rhs += c * s.get(g, with(rest, {{k + l, 1}}));
        }
    }
    if (k >= 0) rhs -= 2 * harmonic(k + 1) * s.get(g, with(ins, {{k, 1}}));
    for (int m = 0; m <= k - 2; ++m) rhs += quadratic(m, k - m - 2, g, ins, s) / ((k + 1) * binomial(k, m + 1));
    rhs += delta_term(k, g, ins) / factorial(k + 1);
    return rhs;
}

Rational virasoro_operator_coefficient(int k, int g, const std::vector<Insertion>& ins, InvariantStore& s,
                                      bool printed) {
    Rational v = -factorial(k + 1) * s.get(g, with(ins, {{k + 1, 0}}));
    for (std::size_t i = 0; i < ins.size(); ++i) {
        const auto rest = without(ins, i);
        const int b = ins[i].b;
        if (ins[i].alpha == 0) {
            if (b == 0 && !printed && k >= 1) v += 2 * factorial(k) * s.get(g, with(rest, {{k - 1, 1}}));
            if (b < 1 || k + b < 0) continue;
            Rational c = factorial(k + b) / factorial(b - 1);
            v += c * s.get(g, with(rest, {{k + b, 0}}));
            v += 2 * c * (harmonic(k + b) - harmonic(b - 1)) * s.get(g, with(rest, {{k + b - 1, 1}}));
        } else {
            if (k + b + 1 < 0) continue;
            v += factorial(k + b + 1) / factorial(b) * s.get(g, with(rest, {{k + b, 1}}));
        }
    }
    if (k >= 0) v -= 2 * factorial(k + 1) * harmonic(k + 1) * s.get(g, with(ins, {{k, 1}}));
    for (int j = 0; j <= k - 2; ++j) v += factorial(j + 1) * factorial(k - j - 1) * quadratic(j, k - j - 2, g, ins, s);
    v += delta_term(k, g, ins);
    return v;
}

Rational string_lowering(int g, const std::vector<Insertion>& ins, InvariantStore& s) {
    Rational acc = 0;
    for (std::size_t i = 0; i < ins.size(); ++i) {
        auto rest = without(ins, i);
        if (ins[i].b < 1) continue;
        rest.push_back({ins[i].b - 1, ins[i].alpha});
        acc += s.get(g, rest);
    }
    if (g == 0 && same_multiset(ins, {{0, 0}, {0, 1}})) acc += 1;
    return acc;
}

VirasoroCheck virasoro_check(int k, int g, const std::vector<Insertion>& ins, InvariantStore& s, bool printed) {
    VirasoroCheck c;
    c.k = k;
    c.g = g;
    c.insertions = ins;
    c.lhs = s.get(g, with(ins, {{k + 1, 0}}));
    c.rhs = decay_rhs(k, g, ins, s, printed);
    c.op = virasoro_operator_coefficient(k, g, ins, s, printed);
    c.pass = c.lhs == c.rhs && is_zero(c.op);
    return c;
}

std::vector<std::vector<Insertion>> insertion_multisets(int n_min, int n_max, int b_max) {
    std::vector<Insertion> alphabet;
    for (int b = 0; b <= b_max; ++b)
        for (int a = 0; a < 2; ++a) alphabet.push_back({b, a});
    std::vector<std::vector<Insertion>> out;
    std::vector<Insertion> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(cur.size()) >= n_min) out.push_back(cur);
        if (static_cast<int>(cur.size()) == n_max) return;
        for (std::size_t i = from; i < alphabet.size(); ++i) {
            cur.push_back(alphabet[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VirasoroCheck> virasoro_sweep(const SweepConfig& cfg, InvariantStore& s) {
    struct Job {
        int k, g;
        std::vector<Insertion> ins;
    };
    std::vector<Job> jobs;
    const auto sets = insertion_multisets(0, cfg.partners_max, cfg.b_max);
    for (int k = cfg.k_min; k <= cfg.k_max; ++k)
        for (int g = 0; g <= cfg.g_max; ++g)
            for (const auto& ins : sets) {
                // the lhs must be a stable or (0,1)/(0,2) invariant of integral degree
                auto full = with(ins, {{k + 1, 0}});
                Rational d = degree_of(g, full);
                if (sgn(d) < 0 || !is_integer(d)) continue;
                jobs.push_back({k, g, ins});
            }
    std::vector<VirasoroCheck> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&] {
        try {
            for (std::size_t i; (i = next++) < jobs.size();)
                out[i] = virasoro_check(jobs[i].k, jobs[i].g, jobs[i].ins, s, cfg.printed_form);
        } catch (...) {
            std::lock_guard<std::mutex> lock(fail_mu);
            if (!failure) failure = std::current_exception();
            next = jobs.size();
        }
    };
    const int nt = std::max(1, cfg.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace gwp1
