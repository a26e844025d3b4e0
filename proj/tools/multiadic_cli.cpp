#include "multiadic/config.hpp"
#include "multiadic/run.hpp"
#include "multiadic/scan_engine.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace multiadic;

namespace {

struct Common {
    std::string config_path;
    std::string out_path;
    unsigned workers = 1;
    unsigned bits = 0;    // 0: config value
    std::uint64_t depth = 0;  // 0: derived
    bool strict_paper = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

ExperimentConfig load(const Common& c) {
    Json j = Json::object();
    if (!c.config_path.empty()) {
        try {
            j = Json::parse(slurp(c.config_path));
        } catch (const Json::parse_error& e) {
            throw ConfigError({std::string("(document): not valid JSON: ") + e.what()});
        }
    }
    if (c.strict_paper && j.is_object()) {
        j["strict_paper"] = true;
        j.erase("gap_exponent");
    }
    return parse_config_json(j);
}

void emit(const Common& c, const Json& j) {
    if (c.out_path.empty()) std::cout << dump(j);
    else spit(c.out_path, dump(j));
}

struct Timer {
    std::string name;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~Timer() {
        std::cerr << "time " << name << " " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                  << " s\n";
    }
};

std::shared_ptr<DoublingMeasure> build(const ExperimentConfig& cfg, const Common& c) {
    FamilyOptions fo;
    fo.gap_exponent = cfg.gap_exponent;
    fo.guard = cfg.guard;
    fo.workers = c.workers;
    SelectionFamily f = select_family(cfg.q, cfg.primes, cfg.alpha, fo);
    return std::make_shared<DoublingMeasure>(assemble_global(f, cfg.a, cfg.b, c.workers));
}

std::uint64_t depth_for(const ExperimentConfig& cfg, const Common& c, const DoublingMeasure& mu, std::uint64_t base) {
    std::uint64_t dq = c.depth ? c.depth : cfg.q_depth.value_or(default_scan_depth(mu, cfg.q, cfg.extra_depth));
    if (base == cfg.q) return dq;
    if (!c.depth && cfg.p_depth) return *cfg.p_depth;
    return matching_depth(cfg.q, dq, base);
}

int verdict_code(Verdict v) { return v == Verdict::pass ? 0 : v == Verdict::fail ? 1 : 3; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiadic: exact constructions and verifiers for measures doubling in several adic bases"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--config", c.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--out", c.out_path, "write the JSON report here instead of stdout");
    app.add_option("--workers", c.workers, "worker threads")->envname("MULTIADIC_WORKERS")->check(CLI::Range(1u, 256u));
    app.add_option("--bits", c.bits, "enclosure precision in bits")->envname("MULTIADIC_BITS")->check(CLI::Range(32u, 65536u));
    app.add_option("--depth", c.depth, "q-adic scan depth (other bases follow)")->envname("MULTIADIC_DEPTH");
    app.add_flag("--strict-paper", c.strict_paper, "gap exponent s = 100");
    app.set_help_all_flag("--help-all");

    std::uint64_t p = 3, q = 2, n = 2, M = 40, base = 0, min_m2 = 0;
    unsigned m1 = 1;
    std::string k = "1", left = "0", right = "1/2", eps = "1/16", delta = "1/3", r_str, csv_path;
    bool no_guards = false;
    std::vector<unsigned> ms{5, 6, 7, 8};

    auto* profile = app.add_subcommand("profile", "order stabilization profile of (p,q)");
    profile->add_option("-p", p)->required();
    profile->add_option("-q", q)->required();

    auto* solve = app.add_subcommand("solve-pair", "least m2 >= min with k/p^(m1(q-1)) - j/q^(m2(p-1)) = 1/(PQ)");
    solve->add_option("-p", p)->required();
    solve->add_option("-q", q)->required();
    solve->add_option("--m1", m1)->required();
    solve->add_option("-k", k, "admissible numerator")->required();
    solve->add_option("--min-m2", min_m2);

    auto* select = app.add_subcommand("select", "select (I, J) inside [left, right)");
    select->add_option("-p", p)->required();
    select->add_option("-q", q)->required();
    select->add_option("--left", left);
    select->add_option("--right", right);
    select->add_option("--eps", eps);
    select->add_flag("--no-guards", no_guards);

    auto* buildc = app.add_subcommand("build", "selection family and measure summary");
    buildc->add_option("--csv", csv_path, "region dump");

    auto* eval = app.add_subcommand("eval", "mu([left, right)) for the configured measure");
    eval->add_option("--left", left)->required();
    eval->add_option("--right", right)->required();

    auto* verify = app.add_subcommand("verify", "one verification against the configured measure");
    verify->require_subcommand(1);
    auto* vq = verify->add_subcommand("q-adic", "q-adic doubling scan");
    auto* vp = verify->add_subcommand("p-adic", "p-adic doubling scan against C_final");
    vp->add_option("--base", base, "prime (default: first configured)");
    auto* vn = verify->add_subcommand("nondoubling", "H/G ratios and violating intervals");
    auto* vrh = verify->add_subcommand("rh", "reverse Hoelder scan");
    vrh->add_option("--base", base);
    vrh->add_option("-r", r_str);
    auto* var = verify->add_subcommand("ar", "Muckenhoupt scan");
    var->add_option("--base", base);
    var->add_option("-r", r_str);
    auto* vat = verify->add_subcommand("alpha-table", "p-adic sup across alpha values");
    vat->add_option("--base", base);

    auto* far = app.add_subcommand("far", "far-number constant");
    far->add_option("--delta", delta);
    far->add_option("-n", n);
    far->add_option("-M", M);
    far->add_option("--csv", csv_path, "(m, value) rows");

    auto* krantz = app.add_subcommand("krantz", "C(m) for the window 1/10 <= p^n/2^m <= 10");
    krantz->add_option("-m", ms)->expected(1, -1);

    auto* runc = app.add_subcommand("run", "full experiment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*profile) {
            Timer t{"profile"};
            emit(c, encode(stabilization_profile(PrimePair(p, q))));
            return 0;
        }
        if (*solve) {
            PrimePair pair(p, q);
            PairSolution s = solve_pair(pair, m1, parse_integer(k), min_m2);
            if (!check_solution(pair, s, stabilization_profile(pair).c_pq)) throw InvariantViolation("solution failed its recheck");
            emit(c, encode(s));
            return 0;
        }
        if (*select) {
            SelectionOptions so;
            so.enforce_guards = !no_guards;
            SelectionResult s = select_pair(p, q, parse_rational(left), parse_rational(right), parse_rational(eps), so);
            check_selection(s);
            emit(c, encode(s));
            return 0;
        }
        if (*far) {
            FarConstantResult f = far_constant(parse_rational(delta), n, M);
            if (!csv_path.empty()) spit(csv_path, far_csv(f));
            emit(c, encode(f));
            return 0;
        }
        if (*krantz) {
            Timer t{"krantz"};
            Json out = Json::array();
            bool ok = true;
            for (unsigned m : ms) {
                KrantzReport kr = krantz_scan(m);
                ok = ok && kr.C_m > 0;
                out.push_back(encode(kr));
            }
            emit(c, out);
            return ok ? 0 : 1;
        }

        ExperimentConfig cfg = load(c);
        if (c.bits) cfg.precision_bits = c.bits;

        if (*runc) {
            RunOptions ro;
            ro.workers = c.workers;
            if (c.depth) ro.depth = c.depth;
            std::vector<StageTiming> timings;
            RunReport rep = run(cfg, ro, &timings);
            for (const auto& st : timings) std::cerr << "time " << st.stage << " " << st.seconds << " s\n";
            std::string out = c.out_path.empty() ? cfg.report_path : c.out_path;
            if (out.empty()) std::cout << dump(encode(rep));
            else spit(out, dump(encode(rep)));
            if (rep.measure && !cfg.regions_csv_path.empty()) spit(cfg.regions_csv_path, regions_csv(*rep.measure));
            if (!cfg.far_csv_path.empty() && !rep.far.empty()) spit(cfg.far_csv_path, far_csv(rep.far.front()));
            for (const auto& e : rep.errors) std::cerr << "error in " << e.stage << " (" << e.kind << "): " << e.message << "\n";
            return exit_code(rep);
        }

        if (*verify && *vn) {
            auto mu = build(cfg, c);
            Json out = Json::object();
            Json ws = Json::array();
            bool ok = true;
            for (std::size_t l = 0; l < mu->blocks().size(); ++l) {
                NonDoublingWitness w = nondoubling_witness(*mu, l, cfg.candidates);
                ok = ok && w.pass;
                ws.push_back(encode(w));
            }
            Json vs = Json::array();
            for (const Rational& C : cfg.candidates) {
                auto v = find_doubling_violation(cfg.q, cfg.a, cfg.b, C, cfg.alpha_max);
                ok = ok && v.has_value();
                vs.push_back(v ? encode(*v) : Json(nullptr));
            }
            out["witnesses"] = ws;
            out["violations"] = vs;
            out["pass"] = ok;
            emit(c, out);
            return ok ? 0 : 1;
        }
        if (*verify && *vat) {
            std::uint64_t pb = base ? base : cfg.primes.front();
            FamilyOptions fo;
            fo.gap_exponent = cfg.gap_exponent;
            fo.guard = cfg.guard;
            fo.workers = c.workers;
            DoublingScanOptions so;
            so.workers = c.workers;
            std::vector<unsigned> alphas = cfg.alpha_table.empty() ? std::vector<unsigned>{2, 4, 8} : cfg.alpha_table;
            AlphaTable t = alpha_independence_table(pb, cfg.q, cfg.a, cfg.b, alphas, cfg.extra_depth, fo, so);
            emit(c, encode(t));
            return t.pass ? 0 : 1;
        }

        Timer t{"build"};
        auto mu = build(cfg, c);
        if (*buildc) {
            if (!csv_path.empty()) spit(csv_path, regions_csv(*mu));
            emit(c, encode(*mu));
            return 0;
        }
        if (*eval) {
            Rational l = parse_rational(left), rr = parse_rational(right);
            emit(c, Json{{"left", encode(l)}, {"right", encode(rr)}, {"measure", encode(mu->measure_of(l, rr))}});
            return 0;
        }
        if (*vq) {
            DoublingScanOptions so;
            so.workers = c.workers;
            DoublingReport rep = adic_doubling_scan(*mu, cfg.q, depth_for(cfg, c, *mu, cfg.q), so);
            judge_q_adic(rep, *mu);
            emit(c, encode(rep));
            return rep.pass ? 0 : 1;
        }
        if (*vp) {
            std::uint64_t pb = base ? base : cfg.primes.front();
            DoublingScanOptions so;
            so.workers = c.workers;
            ExhaustionBound eb = exhaustion_bound(pb, cfg.q, cfg.a, cfg.b);
            DoublingReport rep = adic_doubling_scan(*mu, pb, depth_for(cfg, c, *mu, pb), so);
            judge_against(rep, eb.C_final, "C_final");
            emit(c, Json{{"bound", encode(eb)}, {"scan", encode(rep)}});
            return rep.pass ? 0 : 1;
        }
        if (*vrh || *var) {
            std::uint64_t b0 = base ? base : cfg.q;
            MomentOptions mo;
            mo.workers = c.workers;
            mo.bits = cfg.precision_bits;
            std::uint64_t d = depth_for(cfg, c, *mu, b0);
            if (*vrh) {
                Rational r = !r_str.empty() ? parse_rational(r_str) : cfg.rh_exponent.value_or(default_rh_exponent(cfg.q, cfg.b));
                RHReport rep = rh_scan(*mu, r, b0, d, mo);
                emit(c, encode(rep));
                return verdict_code(rep.verdict);
            }
            Rational r = !r_str.empty() ? parse_rational(r_str) : cfg.ar_exponent.value_or(default_ar_exponent(cfg.q, cfg.a));
            ARReport rep = ar_scan(*mu, r, b0, d, mo);
            emit(c, encode(rep));
            return verdict_code(rep.verdict);
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const PrecisionInsufficient& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
