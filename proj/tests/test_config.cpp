#include "multiadic/config.hpp"
#include "multiadic/run.hpp"

#include <doctest.h>

using namespace multiadic;

namespace {

std::vector<std::string> issues_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.issues();
    }
    return {};
}

bool has(const std::vector<std::string>& xs, const std::string& prefix) {
    for (const auto& x : xs)
        if (x.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
    ExperimentConfig c = parse_config(R"({"q": 2, "primes": [3], "L": 1, "alpha": [2]})");
    CHECK(c.q == 2);
    CHECK(c.alpha == std::vector<unsigned>{2});
    CHECK(c.a == Rational(3, 4));
    CHECK(c.b == Rational(5, 4));
    CHECK(c.gap_exponent == 4);
    CHECK(c.guard == 2);
    CHECK(c.precision_bits == 256);
}

TEST_CASE("empty document is the default config") {
    ExperimentConfig c = parse_config("{}");
    ExperimentConfig d = default_config();
    CHECK(dump(encode(c)) == dump(encode(d)));
    CHECK(c.alpha == std::vector<unsigned>{1, 2, 3});
}

TEST_CASE("primes containing q are rejected at primes") {
    auto xs = issues_of(R"({"q": 3, "primes": [3, 5]})");
    CHECK(has(xs, "primes:"));
}

TEST_CASE("a,b off the line print the residual") {
    auto xs = issues_of(R"({"q": 3, "a": "3/4", "b": "2"})");
    REQUIRE(has(xs, "a,b:"));
    bool found = false;
    for (const auto& x : xs) found = found || x.find("(q-1)a + b - q = 1/2") != std::string::npos;
    CHECK(found);
}

TEST_CASE("every violation is reported") {
    auto xs = issues_of(R"({"q": 4, "primes": [6, 7, 7], "L": 0, "bogus": 1, "scan": {"deep": 3}, "rh_exponent": "1/2"})");
    CHECK(has(xs, "q:"));
    CHECK(has(xs, "primes[0]:"));
    CHECK(has(xs, "primes[2]:"));
    CHECK(has(xs, "L:"));
    CHECK(has(xs, "bogus:"));
    CHECK(has(xs, "scan.deep:"));
    CHECK(has(xs, "rh_exponent:"));
    CHECK(xs.size() >= 7);
}

TEST_CASE("alpha rules") {
    CHECK(parse_config(R"({"L": 4, "alpha": "constant:3"})").alpha == std::vector<unsigned>{3, 3, 3, 3});
    CHECK(parse_config(R"({"L": 4, "alpha": "geometric"})").alpha == std::vector<unsigned>{1, 2, 4, 8});
    CHECK(has(issues_of(R"({"alpha": "spiral"})"), "alpha:"));
    CHECK(has(issues_of(R"({"L": 2, "alpha": [1, 2, 3]})"), "alpha:"));
}

TEST_CASE("one of a, b determines the other") {
    ExperimentConfig c = parse_config(R"({"q": 3, "primes": [5], "a": "3/4"})");
    CHECK(c.b == Rational(3, 2));
}

TEST_CASE("strict paper forces s = 100") {
    ExperimentConfig c = parse_config(R"({"strict_paper": true})");
    CHECK(c.gap_exponent == 100);
    CHECK(has(issues_of(R"({"strict_paper": true, "gap_exponent": 4})"), "gap_exponent:"));
}

TEST_CASE("gap exponent guard") {
    CHECK(has(issues_of(R"({"gap_exponent": 2, "guard": 2})"), "gap_exponent:"));
}

TEST_CASE("malformed JSON") {
    CHECK(has(issues_of("{q: 2"), "(document):"));
}

TEST_CASE("echo parses back to itself") {
    ExperimentConfig c = parse_config(
        R"({"q": 3, "primes": [5, 7], "L": 2, "alpha": [1, 2], "a": "3/4", "rh_exponent": "2", "alpha_table": [2, 4],
            "scan": {"q_depth": 20}, "far": [{"delta": "2/7", "n": 3, "M": 9}], "krantz_m": [5]})");
    std::string once = dump(encode(c));
    std::string twice = dump(encode(parse_config(once)));
    CHECK(once == twice);
}

TEST_CASE("run report round trip") {
    ExperimentConfig c = parse_config(R"({"q": 3, "primes": [5], "L": 1, "alpha": [1], "a": "3/4", "krantz_m": [5],
                                          "far": [{"delta": "1/3", "n": 2, "M": 8}], "nondoubling": {"candidates": ["10"]}})");
    RunReport r = run(c);
    CHECK(r.errors.empty());
    CHECK(r.verdict == Verdict::pass);
    CHECK(exit_code(r) == 0);
    std::string text = dump(encode(r));
    RunReport back = decode<RunReport>(Json::parse(text));
    CHECK(dump(encode(back)) == text);

    RunOptions four;
    four.workers = 4;
    CHECK(dump(encode(run(c, four))) == text);
}

TEST_CASE("run keeps partial reports when a stage fails") {
    ExperimentConfig c = parse_config(R"({"q": 3, "primes": [5], "L": 1, "alpha": [1], "a": "3/4", "rh_exponent": "3",
                                          "krantz_m": [5], "far": []})");
    RunReport r = run(c);
    REQUIRE_FALSE(r.errors.empty());
    CHECK(r.errors[0].kind == "domain");
    CHECK(r.errors[0].message.find("ln q/ln b") != std::string::npos);
    CHECK(r.q_adic.has_value());
    CHECK(r.krantz.size() == 1);
    CHECK(r.verdict == Verdict::fail);
    CHECK(exit_code(r) == 2);
}
