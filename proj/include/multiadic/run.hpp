#pragma once

#include "multiadic/config.hpp"
#include "multiadic/far.hpp"
#include "multiadic/moments.hpp"
#include "multiadic/serialize.hpp"
#include "multiadic/verifier.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace multiadic {

struct StageError {
    std::string stage;
    std::string kind;  // domain, resource, invariant, precision, usage
    std::string message;
};

struct PrimeScan {
    std::uint64_t p = 0;
    StabilizationProfile profile;
    ExhaustionBound bound;
    DoublingReport scan;
};

struct RunReport {
    Json config;
    std::optional<MultiPrimeProfile> profile;
    std::optional<SelectionFamily> family;
    std::optional<DoublingReport> q_adic;
    std::vector<PrimeScan> p_adic;
    std::vector<NonDoublingWitness> nondoubling;
    std::vector<DoublingViolation> violations;  // one per candidate C, standalone blocks
    std::vector<RHReport> rh;                   // base q, then each prime
    std::vector<ARReport> ar;
    std::vector<AlphaTable> alpha_tables;
    std::vector<KrantzReport> krantz;
    std::vector<FarConstantResult> far;
    std::vector<StageError> errors;
    std::vector<std::string> failures;
    Verdict verdict = Verdict::pass;

    // Not serialized.
    std::shared_ptr<const DoublingMeasure> measure;
};

struct StageTiming {
    std::string stage;
    double seconds = 0;
};

struct RunOptions {
    unsigned workers = 1;
    std::optional<unsigned> bits;        // overrides precision_bits
    std::optional<std::uint64_t> depth;  // overrides the q-adic depth; p-adic depths follow
};

// Stage errors are recorded and later stages that do not depend on the failed one
// still run. Timings are returned separately so report bytes stay deterministic.
RunReport run(const ExperimentConfig& config, const RunOptions& opts = {}, std::vector<StageTiming>* timings = nullptr);

// 0 pass, 1 violation or invariant failure, 2 usage/domain/resource error, 3 undecided.
int exit_code(const RunReport& r);

// Least d with base^-d <= q^-dq.
std::uint64_t matching_depth(std::uint64_t q, std::uint64_t dq, std::uint64_t base);

Json encode(const RunReport& r);
template <> RunReport decode<RunReport>(const Json& j);

}  // namespace multiadic
