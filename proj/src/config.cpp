#include "multiadic/config.hpp"

#include "multiadic/measure.hpp"
#include "multiadic/ntheory.hpp"

#include <set>

namespace multiadic {

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string s = "invalid config:";
    for (const auto& x : xs) s += "\n  " + x;
    return s;
}

// Collects issues instead of stopping at the first one.
struct Reader {
    std::vector<std::string> issues;

    void bad(const std::string& path, const std::string& what) { issues.push_back(path + ": " + what); }

    void keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!allowed.count(it.key())) bad(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }

    std::optional<std::uint64_t> uint(const Json& v, const std::string& path, std::uint64_t lo, std::uint64_t hi) {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
            bad(path, "expected a non-negative integer, got " + v.dump());
            return std::nullopt;
        }
        std::uint64_t x = v.get<std::uint64_t>();
        if (x < lo || x > hi) {
            bad(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(x));
            return std::nullopt;
        }
        return x;
    }

    std::optional<Rational> rational(const Json& v, const std::string& path) {
        try {
            if (v.is_string()) return parse_rational(v.get<std::string>());
            if (v.is_number_integer()) return Rational(v.get<long>());
        } catch (const Error& e) {
            bad(path, e.what());
            return std::nullopt;
        }
        bad(path, "expected a rational string \"num/den\" or an integer, got " + v.dump());
        return std::nullopt;
    }

    std::optional<bool> boolean(const Json& v, const std::string& path) {
        if (!v.is_boolean()) {
            bad(path, "expected a boolean, got " + v.dump());
            return std::nullopt;
        }
        return v.get<bool>();
    }

    std::optional<std::string> string(const Json& v, const std::string& path) {
        if (!v.is_string()) {
            bad(path, "expected a string, got " + v.dump());
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    template <class T, class F>
    std::optional<std::vector<T>> list(const Json& v, const std::string& path, F&& item) {
        if (!v.is_array()) {
            bad(path, "expected a list, got " + v.dump());
            return std::nullopt;
        }
        std::vector<T> out;
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto x = item(v[i], path + "[" + std::to_string(i) + "]");
            if (x) out.push_back(static_cast<T>(*x));
            else ok = false;
        }
        if (!ok) return std::nullopt;
        return out;
    }
};

const std::set<std::string> kTopKeys{"q",        "primes",        "L",          "alpha",      "a",
                                     "b",        "gap_exponent",  "guard",      "strict_paper", "scan",
                                     "rh_exponent", "ar_exponent", "precision_bits", "alpha_table", "nondoubling",
                                     "krantz_m", "far",           "outputs"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues) : UsageError(join(issues)), issues_(std::move(issues)) {}

std::vector<unsigned> resolve_alpha_rule(const std::string& rule, unsigned L) {
    std::vector<unsigned> out;
    if (rule == "linear") {
        for (unsigned l = 1; l <= L; ++l) out.push_back(l);
    } else if (rule == "geometric") {
        if (L > 16) throw UsageError("alpha: geometric rule supports L <= 16");
        for (unsigned l = 1; l <= L; ++l) out.push_back(1u << (l - 1));
    } else if (rule.rfind("constant:", 0) == 0) {
        unsigned k = 0;
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(rule.substr(9), &used);
            if (used != rule.size() - 9 || v == 0 || v > 4096) throw std::invalid_argument("range");
            k = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw UsageError("alpha: bad rule '" + rule + "' (constant:K needs 1 <= K <= 4096)");
        }
        out.assign(L, k);
    } else {
        throw UsageError("alpha: unknown rule '" + rule + "' (expected linear, geometric or constant:K)");
    }
    return out;
}

ExperimentConfig default_config() {
    ExperimentConfig c;
    c.alpha = resolve_alpha_rule(c.alpha_rule, c.L);
    std::tie(c.a, c.b) = default_ab(c.q);
    return c;
}

ExperimentConfig parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError({std::string("(document): not valid JSON: ") + e.what()});
    }
    return parse_config_json(j);
}

ExperimentConfig parse_config_json(const Json& j) {
    Reader rd;
    if (!j.is_object()) throw ConfigError({"(document): expected an object"});
    rd.keys(j, "", kTopKeys);

    ExperimentConfig c;
    bool q_ok = true;
    if (j.contains("q")) {
        auto v = rd.uint(j["q"], "q", 2, 1u << 20);
        if (v && !is_prime(*v)) {
            rd.bad("q", std::to_string(*v) + " is not prime");
            v.reset();
        }
        if (v) c.q = *v;
        else q_ok = false;
    }
    if (j.contains("primes")) {
        auto v = rd.list<std::uint64_t>(j["primes"], "primes",
                                        [&](const Json& x, const std::string& p) { return rd.uint(x, p, 2, 1u << 20); });
        if (v) {
            if (v->empty()) rd.bad("primes", "must be non-empty");
            std::set<std::uint64_t> seen;
            for (std::size_t i = 0; i < v->size(); ++i) {
                std::uint64_t p = (*v)[i];
                std::string path = "primes[" + std::to_string(i) + "]";
                if (!is_prime(p)) rd.bad(path, std::to_string(p) + " is not prime");
                if (!seen.insert(p).second) rd.bad(path, std::to_string(p) + " repeated");
            }
            c.primes = *v;
        }
    }
    if (q_ok)
        for (std::size_t i = 0; i < c.primes.size(); ++i) {
            if (c.primes[i] == c.q) rd.bad("primes", "contains q = " + std::to_string(c.q));
            else if (c.primes[i] < c.q)
                rd.bad("primes[" + std::to_string(i) + "]", std::to_string(c.primes[i]) + " must exceed q = " + std::to_string(c.q));
        }

    if (j.contains("L")) {
        if (auto v = rd.uint(j["L"], "L", 1, 64)) c.L = static_cast<unsigned>(*v);
    }
    bool alpha_ok = true;
    if (j.contains("alpha")) {
        const Json& a = j["alpha"];
        if (a.is_string()) {
            c.alpha_rule = a.get<std::string>();
        } else {
            auto v = rd.list<unsigned>(a, "alpha", [&](const Json& x, const std::string& p) { return rd.uint(x, p, 1, 4096); });
            if (v) {
                c.alpha_rule = "list";
                c.alpha = *v;
                if (j.contains("L") && c.alpha.size() != c.L)
                    rd.bad("alpha", "has " + std::to_string(c.alpha.size()) + " entries but L = " + std::to_string(c.L));
                if (!j.contains("L")) c.L = static_cast<unsigned>(c.alpha.size());
                if (c.alpha.empty()) rd.bad("alpha", "must be non-empty");
            } else {
                alpha_ok = false;
            }
        }
    }
    if (alpha_ok && c.alpha_rule != "list") {
        try {
            c.alpha = resolve_alpha_rule(c.alpha_rule, c.L);
        } catch (const UsageError& e) {
            rd.issues.push_back(e.what());
        }
    }

    std::optional<Rational> a, b;
    if (j.contains("a")) a = rd.rational(j["a"], "a");
    if (j.contains("b")) b = rd.rational(j["b"], "b");
    if (q_ok) {
        auto [da, db] = default_ab(c.q);
        // A lone a or b determines the other through (q-1)a + b = q.
        const Rational qq(static_cast<unsigned long>(c.q)), q1(static_cast<unsigned long>(c.q - 1));
        if (j.contains("a") && !j.contains("b") && a) b = qq - q1 * *a;
        if (j.contains("b") && !j.contains("a") && b) a = (qq - *b) / q1;
        if (!j.contains("a") && !j.contains("b")) a = da, b = db;
        if (a && b) {
            c.a = *a;
            c.b = *b;
            try {
                validate_ab(c.q, c.a, c.b);
            } catch (const DomainError& e) {
                rd.bad("a,b", e.what());
            }
        }
    }

    if (j.contains("strict_paper"))
        if (auto v = rd.boolean(j["strict_paper"], "strict_paper")) c.strict_paper = *v;
    if (j.contains("gap_exponent"))
        if (auto v = rd.uint(j["gap_exponent"], "gap_exponent", 1, 100)) c.gap_exponent = static_cast<unsigned>(*v);
    if (j.contains("guard"))
        if (auto v = rd.uint(j["guard"], "guard", 0, 64)) c.guard = static_cast<unsigned>(*v);
    if (c.strict_paper) {
        if (j.contains("gap_exponent") && c.gap_exponent != 100) rd.bad("gap_exponent", "strict_paper forces 100");
        c.gap_exponent = 100;
    }
    for (unsigned al : c.alpha)
        if (c.gap_exponent * al < 2 * al + c.guard) {
            rd.bad("gap_exponent", "s*alpha >= 2*alpha + guard fails at alpha = " + std::to_string(al));
            break;
        }

    if (j.contains("scan")) {
        const Json& s = j["scan"];
        if (!s.is_object()) {
            rd.bad("scan", "expected an object");
        } else {
            rd.keys(s, "scan", {"extra_depth", "q_depth", "p_depth"});
            if (s.contains("extra_depth"))
                if (auto v = rd.uint(s["extra_depth"], "scan.extra_depth", 0, 64)) c.extra_depth = static_cast<unsigned>(*v);
            if (s.contains("q_depth")) c.q_depth = rd.uint(s["q_depth"], "scan.q_depth", 0, 1u << 20);
            if (s.contains("p_depth")) c.p_depth = rd.uint(s["p_depth"], "scan.p_depth", 0, 1u << 20);
        }
    }
    if (j.contains("rh_exponent")) c.rh_exponent = rd.rational(j["rh_exponent"], "rh_exponent");
    if (j.contains("ar_exponent")) c.ar_exponent = rd.rational(j["ar_exponent"], "ar_exponent");
    if (c.rh_exponent && *c.rh_exponent <= 1) rd.bad("rh_exponent", "must exceed 1");
    if (c.ar_exponent && *c.ar_exponent <= 1) rd.bad("ar_exponent", "must exceed 1");
    if (j.contains("precision_bits"))
        if (auto v = rd.uint(j["precision_bits"], "precision_bits", 32, 1u << 16)) c.precision_bits = static_cast<unsigned>(*v);

    if (j.contains("alpha_table")) {
        auto v = rd.list<unsigned>(j["alpha_table"], "alpha_table",
                                   [&](const Json& x, const std::string& p) { return rd.uint(x, p, 1, 64); });
        if (v) c.alpha_table = *v;
    }
    if (j.contains("nondoubling")) {
        const Json& n = j["nondoubling"];
        if (!n.is_object()) {
            rd.bad("nondoubling", "expected an object");
        } else {
            rd.keys(n, "nondoubling", {"candidates", "alpha_max"});
            if (n.contains("candidates")) {
                auto v = rd.list<Rational>(n["candidates"], "nondoubling.candidates",
                                           [&](const Json& x, const std::string& p) { return rd.rational(x, p); });
                if (v) {
                    for (std::size_t i = 0; i < v->size(); ++i)
                        if ((*v)[i] < 1) rd.bad("nondoubling.candidates[" + std::to_string(i) + "]", "must be >= 1");
                    c.candidates = *v;
                }
            }
            if (n.contains("alpha_max"))
                if (auto v = rd.uint(n["alpha_max"], "nondoubling.alpha_max", 1, 256)) c.alpha_max = static_cast<unsigned>(*v);
        }
    }
    if (j.contains("krantz_m")) {
        auto v = rd.list<unsigned>(j["krantz_m"], "krantz_m", [&](const Json& x, const std::string& p) { return rd.uint(x, p, 1, 30); });
        if (v) c.krantz_m = *v;
    }
    if (j.contains("far")) {
        const Json& f = j["far"];
        if (!f.is_array()) {
            rd.bad("far", "expected a list");
        } else {
            c.far.clear();
            for (std::size_t i = 0; i < f.size(); ++i) {
                std::string path = "far[" + std::to_string(i) + "]";
                if (!f[i].is_object()) {
                    rd.bad(path, "expected an object");
                    continue;
                }
                rd.keys(f[i], path, {"delta", "n", "M"});
                FarSpec fs;
                if (!f[i].contains("delta")) rd.bad(path + ".delta", "required");
                else if (auto d = rd.rational(f[i]["delta"], path + ".delta")) fs.delta = *d;
                if (f[i].contains("n"))
                    if (auto v = rd.uint(f[i]["n"], path + ".n", 2, 1u << 20)) fs.n = *v;
                if (f[i].contains("M"))
                    if (auto v = rd.uint(f[i]["M"], path + ".M", 0, 4096)) fs.M = *v;
                c.far.push_back(fs);
            }
        }
    }
    if (j.contains("outputs")) {
        const Json& o = j["outputs"];
        if (!o.is_object()) {
            rd.bad("outputs", "expected an object");
        } else {
            rd.keys(o, "outputs", {"report", "regions_csv", "far_csv"});
            if (o.contains("report"))
                if (auto v = rd.string(o["report"], "outputs.report")) c.report_path = *v;
            if (o.contains("regions_csv"))
                if (auto v = rd.string(o["regions_csv"], "outputs.regions_csv")) c.regions_csv_path = *v;
            if (o.contains("far_csv"))
                if (auto v = rd.string(o["far_csv"], "outputs.far_csv")) c.far_csv_path = *v;
        }
    }

    if (!rd.issues.empty()) throw ConfigError(rd.issues);
    return c;
}

Json encode(const ExperimentConfig& c) {
    Json far = Json::array();
    for (const auto& f : c.far) far.push_back({{"delta", encode(f.delta)}, {"n", f.n}, {"M", f.M}});
    Json scan = {{"extra_depth", c.extra_depth}};
    if (c.q_depth) scan["q_depth"] = *c.q_depth;
    if (c.p_depth) scan["p_depth"] = *c.p_depth;
    Json out = {{"q", c.q},
                {"primes", c.primes},
                {"L", c.L},
                {"alpha", c.alpha},
                {"a", encode(c.a)},
                {"b", encode(c.b)},
                {"gap_exponent", c.gap_exponent},
                {"guard", c.guard},
                {"strict_paper", c.strict_paper},
                {"scan", scan},
                {"precision_bits", c.precision_bits},
                {"alpha_table", c.alpha_table},
                {"nondoubling", {{"candidates", encode_list(c.candidates)}, {"alpha_max", c.alpha_max}}},
                {"krantz_m", c.krantz_m},
                {"far", far}};
    if (c.rh_exponent) out["rh_exponent"] = encode(*c.rh_exponent);
    if (c.ar_exponent) out["ar_exponent"] = encode(*c.ar_exponent);
    if (c.strict_paper) out.erase("gap_exponent");
    return out;
}

}  // namespace multiadic
