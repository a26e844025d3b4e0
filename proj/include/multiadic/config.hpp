#pragma once

#include "multiadic/errors.hpp"
#include "multiadic/rational.hpp"
#include "multiadic/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace multiadic {

// Every schema violation found while loading, each prefixed by its field path.
class ConfigError : public UsageError {
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

struct FarSpec {
    Rational delta;
    std::uint64_t n = 2;
    std::uint64_t M = 40;
};

struct ExperimentConfig {
    std::uint64_t q = 2;
    std::vector<std::uint64_t> primes{3};
    unsigned L = 3;
    std::string alpha_rule = "linear";  // "list", "linear", "constant:K", "geometric"
    std::vector<unsigned> alpha;        // resolved, length L
    Rational a, b;
    unsigned gap_exponent = 4;
    unsigned guard = 2;
    bool strict_paper = false;

    unsigned extra_depth = 3;
    std::optional<std::uint64_t> q_depth, p_depth;  // absent: derived from the blocks
    std::optional<Rational> rh_exponent, ar_exponent;
    unsigned precision_bits = 256;

    std::vector<unsigned> alpha_table;  // alphas for the independence table; empty skips it
    std::vector<Rational> candidates{10, 100, 1000};
    unsigned alpha_max = 32;
    std::vector<unsigned> krantz_m{5, 6, 7, 8};
    std::vector<FarSpec> far{{Rational(1, 3), 2, 40}};

    std::string report_path, regions_csv_path, far_csv_path;
};

ExperimentConfig default_config();
// JSON text. Unknown keys and every bad field are reported together.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_json(const Json& j);
std::vector<unsigned> resolve_alpha_rule(const std::string& rule, unsigned L);

// Normalized echo; parse_config accepts it back.
Json encode(const ExperimentConfig& c);

}  // namespace multiadic
