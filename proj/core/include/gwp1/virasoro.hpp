#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gwp1/functionals.hpp"
#include "gwp1/recursion.hpp"

namespace gwp1 {

// Memoized descendant invariants <prod tau^alpha_b>_g over one Engine.
// Insertions are a multiset; negative b gives 0.
class InvariantStore {
public:
    explicit InvariantStore(Engine& e) : engine_(e) {}

    Rational get(int g, std::vector<Insertion> ins);
    // Replace one stored value (used by the non-vacuity control).
    void corrupt(int g, std::vector<Insertion> ins, const Rational& value);

    Engine& engine() { return engine_; }

private:
    Engine& engine_;
    std::mutex mu_;
    std::map<std::pair<int, std::vector<Insertion>>, Rational> memo_;
};

// Right-hand side of <tau^0_{k+1} prod ins>_g under the decay rules, including
// the delta terms for (k, g, ins) = (0, 0, {tau^0_0, tau^0_0}) and
// (-1, 0, {tau^0_0, tau^1_0}).
//
// The t^0_j sums of L_k start at j = 1. Read through Gamma functions, the j = 0
// term of the harmonic sum survives as 2 k! t^0_0 d/dt^1_{k-1}, i.e. the extra
// rule tau^0_{k+1} tau^0_0 -> 2/(k+1) tau^1_{k-1}. It is included unless
// `printed` is set; without it the constraints fail from k = 1 on.
Rational decay_rhs(int k, int g, const std::vector<Insertion>& ins, InvariantStore& s, bool printed = false);

// Coefficient of hbar^{g-1} prod t^{alpha_i}_{b_i} in (L_k Z)/Z, read off the
// operator directly; zero when the constraint holds.
Rational virasoro_operator_coefficient(int k, int g, const std::vector<Insertion>& ins, InvariantStore& s,
                                      bool printed = false);

// String equation right-hand side: sum over slots of lowering b by one, plus
// the unstable <tau^0_0 tau^0_0 tau^1_0>_0 = 1.
Rational string_lowering(int g, const std::vector<Insertion>& ins, InvariantStore& s);

struct VirasoroCheck {
    int k = 0;
    int g = 0;
    std::vector<Insertion> insertions;
    Rational lhs;
    Rational rhs;
    Rational op;  // operator-form coefficient, must be 0
    bool pass = false;
};

VirasoroCheck virasoro_check(int k, int g, const std::vector<Insertion>& ins, InvariantStore& s,
                             bool printed = false);

struct SweepConfig {
    int k_min = -1;
    int k_max = 4;
    int g_max = 2;
    int partners_max = 3;
    int b_max = 6;
    int threads = 1;
    bool printed_form = false;  // drop the j = 0 term (see decay_rhs)
};

// Every (k, g, partner multiset) in range, sorted by (k, g, insertions).
std::vector<VirasoroCheck> virasoro_sweep(const SweepConfig& cfg, InvariantStore& s);

// Multisets of insertions with size in [n_min, n_max] and b <= b_max, sorted.
std::vector<std::vector<Insertion>> insertion_multisets(int n_min, int n_max, int b_max);

}  // namespace gwp1
