#include "multiadic/run.hpp"

#include "multiadic/errors.hpp"
#include "multiadic/scan_engine.hpp"

#include <chrono>
#include <functional>

namespace multiadic {

namespace {

std::string kind_of(const std::exception& e) {
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const ResourceError*>(&e)) return "resource";
    if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant";
    if (dynamic_cast<const PrecisionInsufficient*>(&e)) return "precision";
    if (dynamic_cast<const UsageError*>(&e)) return "usage";
    return "internal";
}

class Stages {
public:
    Stages(RunReport& r, std::vector<StageTiming>* t) : r_(r), t_(t) {}

    bool operator()(const std::string& name, const std::function<void()>& body) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        try {
            body();
        } catch (const std::exception& e) {
            r_.errors.push_back({name, kind_of(e), e.what()});
            ok = false;
        }
        if (t_) t_->push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
        return ok;
    }

private:
    RunReport& r_;
    std::vector<StageTiming>* t_;
};

void fail(RunReport& r, const std::string& what) { r.failures.push_back(what); }

void fold(RunReport& r, Verdict v, const std::string& what) {
    if (v == Verdict::fail) fail(r, what);
    if (v == Verdict::undecided) r.failures.push_back(what + " (undecided)");
}

}  // namespace

std::uint64_t matching_depth(std::uint64_t q, std::uint64_t dq, std::uint64_t base) {
    if (base == q) return dq;
    Integer target = ipow(q, dq);
    std::uint64_t d = 0;
    Integer pw = 1;
    while (pw < target) {
        pw *= static_cast<unsigned long>(base);
        ++d;
    }
    return d;
}

RunReport run(const ExperimentConfig& cfg, const RunOptions& opts, std::vector<StageTiming>* timings) {
    RunReport r;
    r.config = encode(cfg);
    Stages stage(r, timings);
    const unsigned bits = opts.bits.value_or(cfg.precision_bits);
    const unsigned workers = std::max(1u, opts.workers);

    FamilyOptions fo;
    fo.gap_exponent = cfg.gap_exponent;
    fo.guard = cfg.guard;
    fo.workers = workers;

    stage("profile", [&] {
        // (p_i, q) for every p_i; q need not be the smallest prime here
        MultiPrimeProfile mp;
        mp.base_prime = cfg.q;
        mp.others = cfg.primes;
        for (std::uint64_t p : cfg.primes) {
            mp.profiles.push_back(stabilization_profile(PrimePair(p, cfg.q)));
            mp.c_max = std::max(mp.c_max, mp.profiles.back().c_pq);
            mp.m_max = std::max(mp.m_max, mp.profiles.back().m_pq);
        }
        r.profile = mp;
    });

    std::shared_ptr<DoublingMeasure> mu;
    bool have_measure = stage("family", [&] {
        r.family = select_family(cfg.q, cfg.primes, cfg.alpha, fo);
        mu = std::make_shared<DoublingMeasure>(assemble_global(*r.family, cfg.a, cfg.b, workers));
        r.measure = mu;
    });

    std::uint64_t dq = 0;
    if (have_measure) {
        dq = opts.depth.value_or(cfg.q_depth.value_or(default_scan_depth(*mu, cfg.q, cfg.extra_depth)));
        DoublingScanOptions so;
        so.workers = workers;
        stage("q_adic", [&] {
            DoublingReport rep = adic_doubling_scan(*mu, cfg.q, dq, so);
            judge_q_adic(rep, *mu);
            if (!rep.pass) fail(r, "q_adic");
            r.q_adic = std::move(rep);
        });
        for (std::size_t i = 0; i < cfg.primes.size(); ++i) {
            std::uint64_t p = cfg.primes[i];
            stage("p_adic[" + std::to_string(p) + "]", [&] {
                PrimeScan ps;
                ps.p = p;
                ps.profile = r.profile ? r.profile->profiles[i] : stabilization_profile(PrimePair(p, cfg.q));
                ps.bound = exhaustion_bound(p, cfg.q, cfg.a, cfg.b);
                std::uint64_t dp = opts.depth ? matching_depth(cfg.q, dq, p) : cfg.p_depth.value_or(matching_depth(cfg.q, dq, p));
                ps.scan = adic_doubling_scan(*mu, p, dp, so);
                judge_against(ps.scan, ps.bound.C_final, "C_final");
                if (!ps.scan.pass) fail(r, "p_adic[" + std::to_string(p) + "]");
                r.p_adic.push_back(std::move(ps));
            });
        }
        stage("nondoubling", [&] {
            for (std::size_t l = 0; l < mu->blocks().size(); ++l) {
                NonDoublingWitness w = nondoubling_witness(*mu, l, cfg.candidates);
                if (!w.pass) fail(r, "nondoubling[" + std::to_string(l + 1) + "]");
                r.nondoubling.push_back(std::move(w));
            }
        });
    }
    stage("violations", [&] {
        for (const Rational& C : cfg.candidates) {
            auto v = find_doubling_violation(cfg.q, cfg.a, cfg.b, C, cfg.alpha_max);
            if (!v) fail(r, "no doubling violation for C = " + to_string(C) + " up to alpha " + std::to_string(cfg.alpha_max));
            else r.violations.push_back(*v);
        }
    });
    if (have_measure) {
        MomentOptions mo;
        mo.workers = workers;
        mo.bits = bits;
        std::vector<std::uint64_t> bases{cfg.q};
        bases.insert(bases.end(), cfg.primes.begin(), cfg.primes.end());
        const Rational rh_r = cfg.rh_exponent.value_or(default_rh_exponent(cfg.q, cfg.b));
        const Rational ar_r = cfg.ar_exponent.value_or(default_ar_exponent(cfg.q, cfg.a));
        for (std::uint64_t base : bases) {
            std::uint64_t d = base == cfg.q ? dq : matching_depth(cfg.q, dq, base);
            stage("rh[" + std::to_string(base) + "]", [&] {
                RHReport rep = rh_scan(*mu, rh_r, base, d, mo);
                fold(r, rep.verdict, "rh[" + std::to_string(base) + "]");
                r.rh.push_back(std::move(rep));
            });
            stage("ar[" + std::to_string(base) + "]", [&] {
                ARReport rep = ar_scan(*mu, ar_r, base, d, mo);
                fold(r, rep.verdict, "ar[" + std::to_string(base) + "]");
                r.ar.push_back(std::move(rep));
            });
        }
    }
    if (!cfg.alpha_table.empty()) {
        DoublingScanOptions so;
        so.workers = workers;
        for (std::uint64_t p : cfg.primes)
            stage("alpha_table[" + std::to_string(p) + "]", [&] {
                AlphaTable t = alpha_independence_table(p, cfg.q, cfg.a, cfg.b, cfg.alpha_table, cfg.extra_depth, fo, so);
                if (!t.pass) fail(r, "alpha_table[" + std::to_string(p) + "]");
                r.alpha_tables.push_back(std::move(t));
            });
    }
    stage("krantz", [&] {
        for (unsigned m : cfg.krantz_m) {
            KrantzReport k = krantz_scan(m);
            if (!(k.C_m > 0)) fail(r, "krantz[" + std::to_string(m) + "]");
            r.krantz.push_back(std::move(k));
        }
    });
    stage("far", [&] {
        for (const FarSpec& f : cfg.far) r.far.push_back(far_constant(f.delta, f.n, f.M));
    });

    for (const StageError& e : r.errors) fail(r, e.stage + ": " + e.kind + " error");
    bool any_fail = false, any_undecided = false;
    for (const auto& f : r.failures) {
        if (f.size() > 12 && f.compare(f.size() - 12, 12, " (undecided)") == 0) any_undecided = true;
        else any_fail = true;
    }
    r.verdict = any_fail ? Verdict::fail : any_undecided ? Verdict::undecided : Verdict::pass;
    return r;
}

int exit_code(const RunReport& r) {
    for (const StageError& e : r.errors)
        if (e.kind != "invariant") return 2;
    switch (r.verdict) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::undecided: return 3;
    }
    return 1;
}

Json encode(const RunReport& r) {
    Json p_adic = Json::array();
    for (const PrimeScan& ps : r.p_adic)
        p_adic.push_back({{"p", ps.p}, {"profile", encode(ps.profile)}, {"bound", encode(ps.bound)}, {"scan", encode(ps.scan)}});
    Json errors = Json::array();
    for (const StageError& e : r.errors) errors.push_back({{"stage", e.stage}, {"kind", e.kind}, {"message", e.message}});
    return {{"config", r.config},
            {"profile", r.profile ? encode(*r.profile) : Json(nullptr)},
            {"family", r.family ? encode(*r.family) : Json(nullptr)},
            {"q_adic", r.q_adic ? encode(*r.q_adic) : Json(nullptr)},
            {"p_adic", p_adic},
            {"nondoubling", encode_list(r.nondoubling)},
            {"violations", encode_list(r.violations)},
            {"rh", encode_list(r.rh)},
            {"ar", encode_list(r.ar)},
            {"alpha_tables", encode_list(r.alpha_tables)},
            {"krantz", encode_list(r.krantz)},
            {"far", encode_list(r.far)},
            {"errors", errors},
            {"failures", r.failures},
            {"verdict", verdict_name(r.verdict)}};
}

template <>
RunReport decode<RunReport>(const Json& j) {
    auto need = [&](const char* k) -> const Json& {
        if (!j.contains(k)) throw UsageError(std::string("report: missing field '") + k + "'");
        return j.at(k);
    };
    RunReport r;
    r.config = need("config");
    if (!need("profile").is_null()) r.profile = decode<MultiPrimeProfile>(j["profile"]);
    if (!need("family").is_null()) r.family = decode<SelectionFamily>(j["family"]);
    if (!need("q_adic").is_null()) r.q_adic = decode<DoublingReport>(j["q_adic"]);
    for (const Json& x : need("p_adic"))
        r.p_adic.push_back({x.at("p").get<std::uint64_t>(), decode<StabilizationProfile>(x.at("profile")),
                            decode<ExhaustionBound>(x.at("bound")), decode<DoublingReport>(x.at("scan"))});
    r.nondoubling = decode_list<NonDoublingWitness>(need("nondoubling"));
    r.violations = decode_list<DoublingViolation>(need("violations"));
    r.rh = decode_list<RHReport>(need("rh"));
    r.ar = decode_list<ARReport>(need("ar"));
    r.alpha_tables = decode_list<AlphaTable>(need("alpha_tables"));
    r.krantz = decode_list<KrantzReport>(need("krantz"));
    r.far = decode_list<FarConstantResult>(need("far"));
    for (const Json& e : need("errors"))
        r.errors.push_back({e.at("stage").get<std::string>(), e.at("kind").get<std::string>(), e.at("message").get<std::string>()});
    r.failures = need("failures").get<std::vector<std::string>>();
    std::string v = need("verdict").get<std::string>();
    r.verdict = v == "pass" ? Verdict::pass : v == "fail" ? Verdict::fail : Verdict::undecided;
    return r;
}

}  // namespace multiadic
