#pragma once

#include <string>
#include <vector>

#include "gwp1/recursion.hpp"
#include "gwp1/virasoro.hpp"

namespace gwp1 {

enum class ItemStatus { pass, fail, expected_mismatch };

std::string to_string(ItemStatus s);

struct SuiteItem {
    std::string check;
    ItemStatus status = ItemStatus::fail;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteItem> items;
    // Module-specific JSON report; empty means use items_json().
    std::string report;

    // expected_mismatch counts as passing: the recorded discrepancy was reproduced.
    bool pass() const;
    std::string items_json() const;
    std::string items_csv() const;
};

// Linear and quadratic loop equations for every stable (g, n) with 2g - 2 + n <= chi_max.
SuiteReport suite_loop(Engine& e, int chi_max);
// Stationary extraction versus expansion at infinity, b_i <= depth.
SuiteReport suite_stationary(Engine& e, int chi_max, int depth);

struct TablesConfig {
    int s_max = 16;       // S-matrix against the I-table
    int gw01_max = 20;    // (0,1) closed table against the dz/z pipeline
    int gw02_sum = 10;    // b1 + b2 bound for the two (0,2) pipelines
    int l_max = 10;       // L_m and K_m
    int lan_depth = 12;
    int log_k = 8;        // Lambda-vanishing range
    int xmul_max = 6;     // x-multiplication formula range
    int ltransform_m = 2; // L-transform range
};
SuiteReport suite_tables(const TablesConfig& cfg = {});

struct AppendixConfig {
    Rational x0 = 3;
    int b_max = 3;
    double tol = 1e-6;
    int basis_k = 2;  // oracle against the exact table on xi^alpha_k
    int basis_b = 4;
};
SuiteReport suite_appendix(const AppendixConfig& cfg = {});

// Sweep plus string-equation closure; the report is the Virasoro JSON list. The
// printed operator (without the j = 0 term) is recorded as expected_mismatch.
SuiteReport suite_virasoro(InvariantStore& s, const SweepConfig& cfg);

}  // namespace gwp1
