#pragma once

#include "multiadic/measure.hpp"
#include "multiadic/scan_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace multiadic {

struct DoublingWitness {
    AdicInterval J;
    std::uint64_t hi_child = 0;  // 1-based
    std::uint64_t lo_child = 0;
    Rational mu_hi;
    Rational mu_lo;
    std::string case_label;
};

struct DoublingReport {
    std::uint64_t base = 2;
    std::uint64_t depth = 0;
    Rational sup_ratio = 1;
    std::optional<DoublingWitness> witness;
    std::optional<Rational> theoretical_bound;
    std::string bound_label;
    std::vector<Rational> ratio_set;  // distinct child-mass ratios, sorted
    bool ratio_set_truncated = false;
    bool pass = true;
    std::uint64_t evaluated = 0;
};

struct DoublingScanOptions : ScanOptions {
    std::size_t ratio_set_cap = 64;
};

// Exact child-mass ratios over every base-adic interval to `depth`. No verdict:
// callers attach a bound with attach_bound.
DoublingReport adic_doubling_scan(const DoublingMeasure& mu, std::uint64_t base, std::uint64_t depth,
                                  const DoublingScanOptions& opts = {});

// q-mode verdict: ratio set inside {1, a/b, b/a} and sup <= b/a.
void judge_q_adic(DoublingReport& rep, const DoublingMeasure& mu);
// p-mode verdict: sup <= bound.
void judge_against(DoublingReport& rep, const Rational& bound, const std::string& label);

struct CaseConstant {
    std::string label;
    Rational value;
};

struct ExhaustionBound {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    unsigned N = 0;
    std::vector<CaseConstant> per_case_A;
    Rational A;
    std::string A_label;
    Rational step;  // b / a^2
    Rational C_final;
    bool q2_specialization = false;
};

ExhaustionBound exhaustion_bound(std::uint64_t p, std::uint64_t q, const Rational& a, const Rational& b);

// Where the p-adic interval J sits relative to the blocks.
std::string classify_interval(const DoublingMeasure& mu, const AdicInterval& J);

struct DoublingViolation {
    Rational C;
    unsigned alpha = 0;
    AdicInterval inner;   // I' = H^(alpha)
    Rational doubled_left;
    Rational doubled_right;
    Rational mu_inner;
    Rational mu_doubled;
    Rational ratio;       // mu(2I') / mu(I') > C
};

struct NonDoublingWitness {
    std::size_t block = 0;  // 0-based
    unsigned alpha = 0;
    AdicInterval H;
    AdicInterval G;
    Rational mu_H;
    Rational mu_G;
    Rational ratio;  // mu(H)/mu(G) = (a/b)^alpha
    std::vector<DoublingViolation> violations;
    bool pass = true;
};

// H^(alpha), G^(alpha) of the given block; violations for every C that this
// block already defeats.
NonDoublingWitness nondoubling_witness(const DoublingMeasure& mu, std::size_t block,
                                       const std::vector<Rational>& candidates = {});

// Standalone blocks on [0,1) with alpha = 1..alpha_max until mu(2I')/mu(I') > C.
std::optional<DoublingViolation> find_doubling_violation(std::uint64_t q, const Rational& a, const Rational& b,
                                                         const Rational& C, unsigned alpha_max = 32);

struct AlphaRow {
    unsigned alpha = 0;
    std::uint64_t q_depth = 0;
    DoublingReport p_scan;
};

struct AlphaTable {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    Rational a, b;
    ExhaustionBound bound;
    std::vector<AlphaRow> rows;
    Rational spread = 1;  // max sup / min sup
    bool pass = true;
};

AlphaTable alpha_independence_table(std::uint64_t p, std::uint64_t q, const Rational& a, const Rational& b,
                                    const std::vector<unsigned>& alphas, unsigned extra_depth = 3,
                                    const FamilyOptions& fam = {}, const DoublingScanOptions& scan = {});

}  // namespace multiadic
