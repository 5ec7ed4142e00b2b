#include "gwp1/recursion.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <tuple>

namespace gwp1 {

namespace {

Point formal_center() { return Point::at(0); }

LocalSeries constant(const Rational& c, int hi) {
    LocalSeries s(formal_center(), 0, hi);
    s.set(0, c);
    return s;
}

LocalSeries power(const LocalSeries& s, int j, int hi_floor) {
    LocalSeries r = constant(1, hi_floor);
    for (int i = 0; i < j; ++i) r = r * s;
    return r;
}

SparseVec to_sparse(const XiDecomposition& d) {
    SparseVec v;
    for (const auto& [idx, c] : d) {
        if (idx.k < 0) throw std::logic_error("kernel produced an odd seed");
        v.emplace_back(slot_code(idx), c);
    }
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return v;
}

// Principal part supported at a only, decomposed in the xi basis.
XiDecomposition decompose_at(int a, const LocalSeries& pp) {
    LocalSeries other(Point::at(-a), -1, -1);
    return a == 1 ? decompose_principal(pp, other) : decompose_principal(other, pp);
}

// z1-principal part of the kernel against t^{-p} dt^2 at a.
SparseVec compute_kernel_column(int a, int p) {
    const int H = p + 6;
    LocalSeries t = LocalSeries::variable(formal_center(), H);
    LocalSeries inv1 = pow1p(t * Rational(a), -1);
    LocalSeries s = -(t * inv1);
    LocalSeries D = log1p(t * Rational(a)) * Rational(2) * (constant(1, H) - inv1 * inv1);
    LocalSeries Dinv = D.inverse();
    // K = 1/2 [1/(z1 - sigma z) - 1/(z1 - z)] dz1 / (D dt), expanded for |u| > |t|.
    LocalSeries pp(Point::at(a), -(p + 2), -1);
    for (int j = 1; j <= p + 1; ++j) {
        LocalSeries W = (power(s, j, H) - power(t, j, H)) * Dinv;
        Rational c = W.coeff(p - 1);
        if (!is_zero(c)) pp.set(-j - 1, c / 2);
    }
    return to_sparse(decompose_at(a, pp));
}

// [t^l] of omega^odd_{0,2}(a + t, a + v) / (dt dv) as a principal part in v.
SparseVec compute_odd_bergman_column(int a, int l) {
    const int H = l + 2;
    LocalSeries t = LocalSeries::variable(formal_center(), H);
    LocalSeries inv1 = pow1p(t * Rational(a), -1);
    LocalSeries s = -(t * inv1);
    LocalSeries zinv2 = inv1 * inv1;
    LocalSeries pp(Point::at(a), -(l + 2), -1);
    pp.add_to(-(l + 2), frac(l + 1, 2));
    LocalSeries sm = constant(1, H);
    for (int m = 0; m <= l; ++m) {
        Rational c = (zinv2 * sm).coeff(l);
        if (!is_zero(c)) pp.add_to(-(m + 2), c * (m + 1) / 2);
        sm = sm * s;
    }
    return to_sparse(decompose_at(a, pp));
}

// Output accumulator: slot-0 code -> dense block over the remaining slots.
struct OutAcc {
    std::size_t block = 1;
    std::map<int, std::vector<Rational>> rows;

    void add(int o, std::size_t rest, const Rational& v) {
        auto it = rows.find(o);
        if (it == rows.end()) it = rows.emplace(o, std::vector<Rational>(block)).first;
        it->second[rest] += v;
    }
    void merge(OutAcc& other) {
        for (auto& [o, row] : other.rows) {
            auto it = rows.find(o);
            if (it == rows.end()) {
                rows.emplace(o, std::move(row));
                continue;
            }
            for (std::size_t i = 0; i < block; ++i)
                if (!is_zero(row[i])) it->second[i] += row[i];
        }
        other.rows.clear();
    }
};

void run_tasks(std::vector<std::function<void(OutAcc&)>>& tasks, int threads, OutAcc& out) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    if (threads == 1) {
        for (auto& t : tasks) t(out);
        return;
    }
    std::vector<OutAcc> local(threads);
    for (auto& l : local) l.block = out.block;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i](local[w]);
        });
    }
    for (auto& th : pool) th.join();
    // Exact addition: merge order does not affect the result.
    for (auto& l : local) out.merge(l);
}

std::vector<std::size_t> nonzero_positions(const XiTensor& t) {
    std::vector<std::size_t> v;
    for (std::size_t f = 0; f < t.size(); ++f)
        if (!is_zero(t[f])) v.push_back(f);
    return v;
}

}  // namespace

bool degree_allowed(int g, const std::vector<XiIndex>& idx) {
    int s = 0;
    for (const auto& i : idx) s += i.k + i.alpha;
    int d2 = s - static_cast<int>(idx.size()) - (2 * g - 2);
    return d2 >= 0 && d2 % 2 == 0;
}

Engine::Engine(RecursionBudget budget) : budget_(budget) {
    if (budget_.chi_max < 1) throw DomainError("chi cap must be positive");
    if (budget_.threads < 1) budget_.threads = 1;
}

bool Engine::cached(int g, int n) const {
    std::lock_guard lock(memo_mu_);
    return memo_.count({g, n}) > 0;
}

void Engine::inject(int g, int n, XiTensor t) {
    if (!is_stable(g, n)) throw DomainError("inject: unstable (g,n)");
    if (t.n() != n || t.kmax() != max_k(g, n)) throw DomainError("inject: tensor shape mismatch");
    if (!t.is_symmetric()) throw DomainError("inject: tensor not symmetric");
    std::lock_guard lock(memo_mu_);
    memo_[{g, n}] = std::make_shared<const XiTensor>(std::move(t));
}

std::shared_ptr<const XiTensor> Engine::correlator(int g, int n) {
    if (!is_stable(g, n)) throw DomainError("correlator: (g,n) = (" + std::to_string(g) + "," + std::to_string(n) +
                                            ") is unstable");
    if (2 * g - 2 + n > budget_.chi_max) throw BudgetExhausted(g, n, budget_.chi_max);
    {
        std::lock_guard lock(memo_mu_);
        auto it = memo_.find({g, n});
        if (it != memo_.end()) return it->second;
    }
    auto t = compute(g, n);
    std::lock_guard lock(memo_mu_);
    auto [it, inserted] = memo_.emplace(std::make_pair(g, n), t);
    return it->second;
}

const SparseVec& Engine::kernel_column(int a, int p) {
    if (a != 1 && a != -1) throw DomainError("kernel_column: not a ramification point");
    {
        std::lock_guard lock(table_mu_);
        auto it = ki_.find({a, p});
        if (it != ki_.end()) return *it->second;
    }
    auto v = std::make_unique<SparseVec>(compute_kernel_column(a, p));
    std::lock_guard lock(table_mu_);
    auto [it, ins] = ki_.emplace(std::make_pair(a, p), std::move(v));
    return *it->second;
}

const SparseVec& Engine::odd_bergman_column(int a, int l) {
    if (a != 1 && a != -1) throw DomainError("odd_bergman_column: not a ramification point");
    {
        std::lock_guard lock(table_mu_);
        auto it = ob_.find({a, l});
        if (it != ob_.end()) return *it->second;
    }
    auto v = std::make_unique<SparseVec>(compute_odd_bergman_column(a, l));
    std::lock_guard lock(table_mu_);
    auto [it, ins] = ob_.emplace(std::make_pair(a, l), std::move(v));
    return *it->second;
}

XiDecomposition Engine::kernel_residue(int a, const LocalSeries& q) {
    if (q.hi() < 0) throw PrecisionError("kernel_residue: payload must be known through t^0");
    XiDecomposition out;
    for (int p = 0; p <= -q.lo(); ++p) {
        Rational c = q.coeff(-p);
        if (is_zero(c)) continue;
        for (const auto& [code, v] : kernel_column(a, p)) {
            XiDecomposition one{{slot_index(code), v}};
            add_into(out, one, c);
        }
    }
    return out;
}

const SparseVec& Engine::pair_kernel(int ci, int cj) {
    if (ci > cj) std::swap(ci, cj);
    {
        std::lock_guard lock(table_mu_);
        auto it = pk_.find({ci, cj});
        if (it != pk_.end()) return *it->second;
    }
    XiIndex i = slot_index(ci), j = slot_index(cj);
    std::map<int, Rational> acc;
    for (int a : {1, -1}) {
        LocalSeries prod = xi_series(i, a, 2 * j.k + 2) * xi_series(j, a, 2 * i.k + 2);
        for (int p = 0; p <= -prod.lo(); ++p) {
            Rational c = prod.coeff(-p);
            if (is_zero(c)) continue;
            for (const auto& [o, v] : kernel_column(a, p)) acc[o] += c * v;
        }
    }
    auto v = std::make_unique<SparseVec>();
    for (auto& [o, c] : acc)
        if (!is_zero(c)) v->emplace_back(o, c);
    std::lock_guard lock(table_mu_);
    auto [it, ins] = pk_.emplace(std::make_pair(ci, cj), std::move(v));
    return *it->second;
}

const std::vector<std::tuple<int, int, Rational>>& Engine::odd_pair_kernel(int ci) {
    {
        std::lock_guard lock(table_mu_);
        auto it = po_.find(ci);
        if (it != po_.end()) return *it->second;
    }
    XiIndex i = slot_index(ci);
    std::map<std::pair<int, int>, Rational> acc;
    for (int a : {1, -1}) {
        LocalSeries e = xi_series(i, a, 0);
        int P = -e.lo();
        for (int p = 0; p <= P; ++p) {
            const SparseVec& kc = kernel_column(a, p);
            if (kc.empty()) continue;
            for (int l = 0; l + p <= P; ++l) {
                Rational c = e.coeff(-p - l);
                if (is_zero(c)) continue;
                for (const auto& [w, vw] : odd_bergman_column(a, l))
                    for (const auto& [o, vo] : kc) acc[{o, w}] += c * vo * vw;
            }
        }
    }
    auto v = std::make_unique<std::vector<std::tuple<int, int, Rational>>>();
    for (auto& [ow, c] : acc)
        if (!is_zero(c)) v->emplace_back(ow.first, ow.second, c);
    std::lock_guard lock(table_mu_);
    auto [it, ins] = po_.emplace(ci, std::move(v));
    return *it->second;
}

void Engine::warm_tables(int kmax_inner) {
    int dim = 2 * (kmax_inner + 1);
    for (int ci = 0; ci < dim; ++ci) {
        odd_pair_kernel(ci);
        for (int cj = ci; cj < dim; ++cj) pair_kernel(ci, cj);
    }
}

std::shared_ptr<const XiTensor> Engine::compute(int g, int n) {
    const int K = max_k(g, n);
    const int dim = 2 * (K + 1);
    const int nr = n - 1;
    OutAcc out;
    for (int i = 0; i < nr; ++i) out.block *= static_cast<std::size_t>(dim);

    auto encode = [&](const std::vector<int>& rest) {
        std::size_t f = 0;
        for (int c : rest) f = f * dim + c;
        return f;
    };

    if (g == 0 && n == 3) {
        // B(z,z2) B(sigma z,z3) + (2 <-> 3) reduces to -2 O(z,z2) O(z,z3) under the kernel.
        for (int a : {1, -1})
            for (const auto& [o, vo] : kernel_column(a, 0))
                for (const auto& [w2, v2] : odd_bergman_column(a, 0))
                    for (const auto& [w3, v3] : odd_bergman_column(a, 0))
                        out.add(o, encode({w2, w3}), Rational(-2) * vo * v2 * v3);
    } else if (g == 1 && n == 1) {
        // B(z, 1/z) / dz^2 = -1/(z^2 - 1)^2.
        RatFun z = RatFun::z();
        RatForm q = RatForm::function(RatFun(-1) / ((z * z - RatFun(1)) * (z * z - RatFun(1))));
        for (int a : {1, -1}) {
            XiDecomposition d = kernel_residue(a, series_at(q, Point::at(a), -2, 0));
            for (const auto& [idx, v] : d) out.add(slot_code(idx), 0, v);
        }
    } else {
        warm_tables(K - 1);
        std::vector<std::function<void(OutAcc&)>> tasks;
        std::vector<std::shared_ptr<const XiTensor>> keep;

        // omega_{g-1,n+1}(z, sigma z, z_I) = -sum T[i,j,I] xi_i(z) xi_j(z).
        if (g >= 1) {
            auto T = correlator(g - 1, n + 1);
            keep.push_back(T);
            for (std::size_t f : nonzero_positions(*T)) {
                tasks.push_back([this, T = T.get(), f, &encode](OutAcc& acc) {
                    auto c = T->codes_of(f);
                    std::vector<int> rest(c.begin() + 2, c.end());
                    std::size_t r = encode(rest);
                    Rational coef = -(*T)[f];
                    for (const auto& [o, v] : pair_kernel(c[0], c[1])) acc.add(o, r, coef * v);
                });
            }
        }

        // Stable x stable splits over ordered (h, J), (h', J').
        for (unsigned mask = 0; mask < (1u << nr); ++mask) {
            std::vector<int> J, Jc;
            for (int p = 0; p < nr; ++p) (mask >> p & 1u ? J : Jc).push_back(p);
            for (int h = 0; h <= g; ++h) {
                int n1 = 1 + static_cast<int>(J.size()), n2 = 1 + static_cast<int>(Jc.size());
                if (!is_stable(h, n1) || !is_stable(g - h, n2)) continue;
                auto T1 = correlator(h, n1);
                auto T2 = correlator(g - h, n2);
                keep.push_back(T1);
                keep.push_back(T2);
                auto nz2 = std::make_shared<std::vector<std::size_t>>(nonzero_positions(*T2));
                for (std::size_t f1 : nonzero_positions(*T1)) {
                    tasks.push_back([this, T1 = T1.get(), T2 = T2.get(), nz2, f1, J, Jc, nr, &encode](OutAcc& acc) {
                        auto c1 = T1->codes_of(f1);
                        std::vector<int> rest(nr);
                        for (std::size_t q = 0; q < J.size(); ++q) rest[J[q]] = c1[q + 1];
                        for (std::size_t f2 : *nz2) {
                            auto c2 = T2->codes_of(f2);
                            for (std::size_t q = 0; q < Jc.size(); ++q) rest[Jc[q]] = c2[q + 1];
                            std::size_t r = encode(rest);
                            Rational coef = -((*T1)[f1] * (*T2)[f2]);
                            for (const auto& [o, v] : pair_kernel(c1[0], c2[0])) acc.add(o, r, coef * v);
                        }
                    });
                }
            }
        }

        // omega_{0,2} factors: -2 O(z, z_j) omega_{g,n-1}(z, z_{I \ j}).
        if (is_stable(g, n - 1)) {
            auto T = correlator(g, n - 1);
            keep.push_back(T);
            for (int jpos = 0; jpos < nr; ++jpos) {
                for (std::size_t f : nonzero_positions(*T)) {
                    tasks.push_back([this, T = T.get(), f, jpos, nr, &encode](OutAcc& acc) {
                        auto c = T->codes_of(f);
                        std::vector<int> rest(nr);
                        for (int p = 0, q = 1; p < nr; ++p)
                            if (p != jpos) rest[p] = c[q++];
                        Rational coef = Rational(-2) * (*T)[f];
                        for (const auto& [o, w, v] : odd_pair_kernel(c[0])) {
                            rest[jpos] = w;
                            acc.add(o, encode(rest), coef * v);
                        }
                    });
                }
            }
        }
        run_tasks(tasks, budget_.threads, out);
    }

    auto T = std::make_shared<XiTensor>(n, K);
    for (auto& [o, row] : out.rows) {
        if (o >= dim) {
            for (const auto& v : row)
                if (!is_zero(v))
                    throw PrecisionError("correlator (" + std::to_string(g) + "," + std::to_string(n) +
                                         ") has a term beyond k = " + std::to_string(K));
            continue;
        }
        for (std::size_t r = 0; r < out.block; ++r) (*T)[static_cast<std::size_t>(o) * out.block + r] = row[r];
    }
    if (!T->is_symmetric())
        throw std::logic_error("correlator (" + std::to_string(g) + "," + std::to_string(n) + ") is not symmetric");
    for (const auto& [idx, v] : T->entries())
        if (!degree_allowed(g, idx))
            throw std::logic_error("correlator (" + std::to_string(g) + "," + std::to_string(n) +
                                   ") violates degree selection");
    return T;
}

RatForm realize(const XiTensor& t, int slot, const std::vector<Rational>& points) {
    if (slot < 0 || slot >= t.n()) throw DomainError("realize: slot out of range");
    if (static_cast<int>(points.size()) != t.n() - 1) throw DomainError("realize: need one point per fixed slot");
    for (const auto& p : points)
        if (p == 0 || p == 1 || p == -1) throw DomainError("realize: point " + to_string(p) + " is special");
    // Values of xi at each fixed point.
    std::vector<std::vector<Rational>> val(points.size(), std::vector<Rational>(t.dim()));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (int c = 0; c < t.dim(); ++c) val[i][c] = xi(slot_index(c)).coeff()(points[i]);
    std::vector<Rational> coef(t.dim());
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (is_zero(t[f])) continue;
        auto c = t.codes_of(f);
        Rational w = t[f];
        for (int s = 0, q = 0; s < t.n(); ++s)
            if (s != slot) w *= val[q++][c[s]];
        coef[c[slot]] += w;
    }
    RatForm acc = RatForm::one_form(RatFun());
    for (int c = 0; c < t.dim(); ++c)
        if (!is_zero(coef[c])) acc += coef[c] * xi(slot_index(c));
    return acc;
}

std::vector<Rational> default_points(int count) {
    static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::vector<Rational> v;
    for (int i = 0; i < count; ++i) {
        if (i >= static_cast<int>(std::size(primes))) throw DomainError("too many evaluation points");
        v.emplace_back(primes[i]);
    }
    return v;
}

}  // namespace gwp1
