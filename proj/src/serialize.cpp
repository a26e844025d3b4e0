#include "multiadic/serialize.hpp"

#include "multiadic/errors.hpp"

namespace multiadic {

namespace {

const Json& at(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
Json opt(const std::optional<T>& x) {
    return x ? encode(*x) : Json(nullptr);
}

template <class T>
std::optional<T> opt_decode(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return decode<T>(j);
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json encode(const Rational& r) { return to_string(r); }
Json encode_int(const Integer& z) { return z.get_str(); }

template <>
Rational decode<Rational>(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw UsageError("expected a rational \"num/den\", got " + j.dump());
}

template <>
Integer decode<Integer>(const Json& j) {
    if (j.is_string()) return parse_integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.get<long>());
    throw UsageError("expected an integer, got " + j.dump());
}

Json encode(const Number& n) {
    if (n.exact) return {{"kind", "exact"}, {"value", to_string(*n.exact)}};
    return {{"kind", "enclosure"}, {"lo", n.enc.lo_string()}, {"hi", n.enc.hi_string()}, {"bits", n.enc.bits()}};
}

template <>
Number decode<Number>(const Json& j) {
    std::string kind = at(j, "kind").get<std::string>();
    if (kind == "exact") return Number::of(decode<Rational>(at(j, "value")), kDefaultPrecisionBits);
    if (kind == "enclosure")
        return Number::of(Enclosure::from_strings(at(j, "lo").get<std::string>(), at(j, "hi").get<std::string>(),
                                                  at(j, "bits").get<unsigned>()));
    throw UsageError("unknown number kind '" + kind + "'");
}

Json encode(const AdicInterval& I) {
    return {{"base", I.base()}, {"depth", I.depth()}, {"index", I.index().get_str()}};
}

template <>
AdicInterval decode<AdicInterval>(const Json& j) {
    return AdicInterval(at(j, "base").get<std::uint64_t>(), at(j, "depth").get<std::uint64_t>(), decode<Integer>(at(j, "index")));
}

Json encode(const StabilizationProfile& s) {
    return {{"m_pq", s.m_pq}, {"n0", s.n0}, {"c_pq", s.c_pq}, {"verified_through", s.verified_through},
            {"observed_threshold", s.observed_threshold}};
}

template <>
StabilizationProfile decode<StabilizationProfile>(const Json& j) {
    StabilizationProfile s;
    s.m_pq = at(j, "m_pq").get<unsigned>();
    s.n0 = at(j, "n0").get<unsigned>();
    s.c_pq = at(j, "c_pq").get<unsigned>();
    s.verified_through = at(j, "verified_through").get<unsigned>();
    s.observed_threshold = at(j, "observed_threshold").get<unsigned>();
    return s;
}

Json encode(const PairSolution& s) {
    return {{"m1", s.m1}, {"k", encode_int(s.k)}, {"m2", s.m2}, {"j", encode_int(s.j)}, {"stride", encode_int(s.stride)}};
}

template <>
PairSolution decode<PairSolution>(const Json& j) {
    PairSolution s;
    s.m1 = at(j, "m1").get<unsigned>();
    s.k = decode<Integer>(at(j, "k"));
    s.m2 = at(j, "m2").get<std::uint64_t>();
    s.j = decode<Integer>(at(j, "j"));
    s.stride = decode<Integer>(at(j, "stride"));
    return s;
}

Json encode(const MultiPrimeProfile& m) {
    return {{"base_prime", m.base_prime}, {"others", m.others}, {"profiles", encode_list(m.profiles)},
            {"c_max", m.c_max}, {"m_max", m.m_max}};
}

template <>
MultiPrimeProfile decode<MultiPrimeProfile>(const Json& j) {
    MultiPrimeProfile m;
    m.base_prime = at(j, "base_prime").get<std::uint64_t>();
    m.others = at(j, "others").get<std::vector<std::uint64_t>>();
    m.profiles = decode_list<StabilizationProfile>(at(j, "profiles"));
    m.c_max = at(j, "c_max").get<unsigned>();
    m.m_max = at(j, "m_max").get<unsigned>();
    return m;
}

Json encode(const SelectionResult& s) {
    return {{"p", s.p},
            {"q", s.q},
            {"target_cell", encode(s.target_cell)},
            {"I", encode(s.I)},
            {"J", encode(s.J)},
            {"upsilon", encode(s.upsilon)},
            {"zeta", encode(s.zeta)},
            {"gap", encode(s.gap)},
            {"epsilon", encode(s.epsilon)},
            {"solution", encode(s.solution)}};
}

Json encode(const SelectionFamily& f) {
    Json blocks = Json::array();
    for (const FamilyBlock& b : f.blocks)
        blocks.push_back({{"host", encode(b.host)},
                          {"I", encode(b.I)},
                          {"J", encode_list(b.J)},
                          {"gaps", encode_list(b.gaps)},
                          {"alpha", b.alpha},
                          {"epsilon", encode(b.epsilon)},
                          {"solution", b.solution ? encode(*b.solution) : Json(nullptr)}});
    return {{"q", f.q}, {"primes", f.primes}, {"gap_exponent", f.gap_exponent}, {"guard", f.guard}, {"blocks", blocks}};
}

template <>
SelectionFamily decode<SelectionFamily>(const Json& j) {
    SelectionFamily f;
    f.q = at(j, "q").get<std::uint64_t>();
    f.primes = at(j, "primes").get<std::vector<std::uint64_t>>();
    f.gap_exponent = at(j, "gap_exponent").get<unsigned>();
    f.guard = at(j, "guard").get<unsigned>();
    for (const Json& b : at(j, "blocks")) {
        FamilyBlock fb;
        fb.host = decode<AdicInterval>(at(b, "host"));
        fb.I = decode<AdicInterval>(at(b, "I"));
        fb.J = decode_list<AdicInterval>(at(b, "J"));
        fb.gaps = decode_list<Rational>(at(b, "gaps"));
        fb.alpha = at(b, "alpha").get<unsigned>();
        fb.epsilon = decode<Rational>(at(b, "epsilon"));
        if (!at(b, "solution").is_null()) fb.solution = decode<PairSolution>(b["solution"]);
        f.blocks.push_back(std::move(fb));
    }
    return f;
}

Json encode(const DoublingReport& r) {
    Json w = nullptr;
    if (r.witness)
        w = {{"J", encode(r.witness->J)},
             {"hi_child", r.witness->hi_child},
             {"lo_child", r.witness->lo_child},
             {"mu_hi", encode(r.witness->mu_hi)},
             {"mu_lo", encode(r.witness->mu_lo)},
             {"case", r.witness->case_label}};
    return {{"base", r.base},
            {"depth", r.depth},
            {"sup_ratio", encode(r.sup_ratio)},
            {"witness", w},
            {"theoretical_bound", opt(r.theoretical_bound)},
            {"bound_label", r.bound_label},
            {"ratio_set", encode_list(r.ratio_set)},
            {"ratio_set_truncated", r.ratio_set_truncated},
            {"pass", r.pass},
            {"evaluated", r.evaluated}};
}

template <>
DoublingReport decode<DoublingReport>(const Json& j) {
    DoublingReport r;
    r.base = at(j, "base").get<std::uint64_t>();
    r.depth = at(j, "depth").get<std::uint64_t>();
    r.sup_ratio = decode<Rational>(at(j, "sup_ratio"));
    const Json& w = at(j, "witness");
    if (!w.is_null())
        r.witness = DoublingWitness{decode<AdicInterval>(at(w, "J")), at(w, "hi_child").get<std::uint64_t>(),
                                    at(w, "lo_child").get<std::uint64_t>(), decode<Rational>(at(w, "mu_hi")),
                                    decode<Rational>(at(w, "mu_lo")), at(w, "case").get<std::string>()};
    r.theoretical_bound = opt_decode<Rational>(at(j, "theoretical_bound"));
    r.bound_label = at(j, "bound_label").get<std::string>();
    r.ratio_set = decode_list<Rational>(at(j, "ratio_set"));
    r.ratio_set_truncated = at(j, "ratio_set_truncated").get<bool>();
    r.pass = at(j, "pass").get<bool>();
    r.evaluated = at(j, "evaluated").get<std::uint64_t>();
    return r;
}

Json encode(const ExhaustionBound& e) {
    Json table = Json::array();
    for (const auto& c : e.per_case_A) table.push_back({{"label", c.label}, {"value", encode(c.value)}});
    return {{"p", e.p},
            {"q", e.q},
            {"N", e.N},
            {"per_case_A", table},
            {"A", encode(e.A)},
            {"A_label", e.A_label},
            {"step", encode(e.step)},
            {"C_final", encode(e.C_final)},
            {"q2_specialization", e.q2_specialization}};
}

template <>
ExhaustionBound decode<ExhaustionBound>(const Json& j) {
    ExhaustionBound e;
    e.p = at(j, "p").get<std::uint64_t>();
    e.q = at(j, "q").get<std::uint64_t>();
    e.N = at(j, "N").get<unsigned>();
    for (const Json& c : at(j, "per_case_A"))
        e.per_case_A.push_back({at(c, "label").get<std::string>(), decode<Rational>(at(c, "value"))});
    e.A = decode<Rational>(at(j, "A"));
    e.A_label = at(j, "A_label").get<std::string>();
    e.step = decode<Rational>(at(j, "step"));
    e.C_final = decode<Rational>(at(j, "C_final"));
    e.q2_specialization = at(j, "q2_specialization").get<bool>();
    return e;
}

Json encode(const DoublingViolation& v) {
    return {{"C", encode(v.C)},
            {"alpha", v.alpha},
            {"inner", encode(v.inner)},
            {"doubled_left", encode(v.doubled_left)},
            {"doubled_right", encode(v.doubled_right)},
            {"mu_inner", encode(v.mu_inner)},
            {"mu_doubled", encode(v.mu_doubled)},
            {"ratio", encode(v.ratio)}};
}

template <>
DoublingViolation decode<DoublingViolation>(const Json& j) {
    DoublingViolation v;
    v.C = decode<Rational>(at(j, "C"));
    v.alpha = at(j, "alpha").get<unsigned>();
    v.inner = decode<AdicInterval>(at(j, "inner"));
    v.doubled_left = decode<Rational>(at(j, "doubled_left"));
    v.doubled_right = decode<Rational>(at(j, "doubled_right"));
    v.mu_inner = decode<Rational>(at(j, "mu_inner"));
    v.mu_doubled = decode<Rational>(at(j, "mu_doubled"));
    v.ratio = decode<Rational>(at(j, "ratio"));
    return v;
}

Json encode(const NonDoublingWitness& w) {
    return {{"block", w.block},
            {"alpha", w.alpha},
            {"H", encode(w.H)},
            {"G", encode(w.G)},
            {"mu_H", encode(w.mu_H)},
            {"mu_G", encode(w.mu_G)},
            {"ratio", encode(w.ratio)},
            {"violations", encode_list(w.violations)},
            {"pass", w.pass}};
}

template <>
NonDoublingWitness decode<NonDoublingWitness>(const Json& j) {
    NonDoublingWitness w;
    w.block = at(j, "block").get<std::size_t>();
    w.alpha = at(j, "alpha").get<unsigned>();
    w.H = decode<AdicInterval>(at(j, "H"));
    w.G = decode<AdicInterval>(at(j, "G"));
    w.mu_H = decode<Rational>(at(j, "mu_H"));
    w.mu_G = decode<Rational>(at(j, "mu_G"));
    w.ratio = decode<Rational>(at(j, "ratio"));
    w.violations = decode_list<DoublingViolation>(at(j, "violations"));
    w.pass = at(j, "pass").get<bool>();
    return w;
}

Json encode(const AlphaTable& t) {
    Json rows = Json::array();
    for (const AlphaRow& r : t.rows) rows.push_back({{"alpha", r.alpha}, {"q_depth", r.q_depth}, {"p_scan", encode(r.p_scan)}});
    return {{"p", t.p},       {"q", t.q},           {"a", encode(t.a)},           {"b", encode(t.b)},
            {"bound", encode(t.bound)}, {"rows", rows}, {"spread", encode(t.spread)}, {"pass", t.pass}};
}

template <>
AlphaTable decode<AlphaTable>(const Json& j) {
    AlphaTable t;
    t.p = at(j, "p").get<std::uint64_t>();
    t.q = at(j, "q").get<std::uint64_t>();
    t.a = decode<Rational>(at(j, "a"));
    t.b = decode<Rational>(at(j, "b"));
    t.bound = decode<ExhaustionBound>(at(j, "bound"));
    for (const Json& r : at(j, "rows"))
        t.rows.push_back({at(r, "alpha").get<unsigned>(), at(r, "q_depth").get<std::uint64_t>(), decode<DoublingReport>(at(r, "p_scan"))});
    t.spread = decode<Rational>(at(j, "spread"));
    t.pass = at(j, "pass").get<bool>();
    return t;
}

namespace {

Verdict verdict_from(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "undecided") return Verdict::undecided;
    throw UsageError("unknown verdict '" + s + "'");
}

Json encode_constants(const std::array<Number, 5>& c) {
    Json a = Json::array();
    for (const auto& x : c) a.push_back(encode(x));
    return a;
}

std::array<Number, 5> decode_constants(const Json& j) {
    if (!j.is_array() || j.size() != 5) throw UsageError("expected five constants");
    std::array<Number, 5> c;
    for (int i = 0; i < 5; ++i) c[i] = decode<Number>(j[i]);
    return c;
}

}  // namespace

Json encode(const RHReport& r) {
    return {{"r", encode(r.r)},
            {"base", r.base},
            {"depth", r.depth},
            {"bits", r.bits},
            {"exact_mode", r.exact_mode},
            {"B1", encode(r.B1)},
            {"B2", encode(r.B2)},
            {"C", encode_constants(r.C)},
            {"bound_pow", encode(r.bound_pow)},
            {"bound", encode(r.bound)},
            {"sup_pow", encode(r.sup_pow)},
            {"sup_measured", encode(r.sup_measured)},
            {"witness", opt(r.witness)},
            {"verdict", verdict_name(r.verdict)},
            {"evaluated", r.evaluated}};
}

template <>
RHReport decode<RHReport>(const Json& j) {
    RHReport r;
    r.r = decode<Rational>(at(j, "r"));
    r.base = at(j, "base").get<std::uint64_t>();
    r.depth = at(j, "depth").get<std::uint64_t>();
    r.bits = at(j, "bits").get<unsigned>();
    r.exact_mode = at(j, "exact_mode").get<bool>();
    r.B1 = decode<Number>(at(j, "B1"));
    r.B2 = decode<Number>(at(j, "B2"));
    r.C = decode_constants(at(j, "C"));
    r.bound_pow = decode<Number>(at(j, "bound_pow"));
    r.bound = decode<Number>(at(j, "bound"));
    r.sup_pow = decode<Number>(at(j, "sup_pow"));
    r.sup_measured = decode<Number>(at(j, "sup_measured"));
    r.witness = opt_decode<AdicInterval>(at(j, "witness"));
    r.verdict = verdict_from(at(j, "verdict").get<std::string>());
    r.evaluated = at(j, "evaluated").get<std::uint64_t>();
    return r;
}

Json encode(const ARReport& r) {
    return {{"r", encode(r.r)},
            {"s", encode(r.s)},
            {"base", r.base},
            {"depth", r.depth},
            {"bits", r.bits},
            {"exact_mode", r.exact_mode},
            {"B3", encode(r.B3)},
            {"B4", encode(r.B4)},
            {"C", encode_constants(r.C)},
            {"bound_pow", encode(r.bound_pow)},
            {"bound", encode(r.bound)},
            {"sup_pow", encode(r.sup_pow)},
            {"sup_measured", encode(r.sup_measured)},
            {"witness", opt(r.witness)},
            {"verdict", verdict_name(r.verdict)},
            {"evaluated", r.evaluated}};
}

template <>
ARReport decode<ARReport>(const Json& j) {
    ARReport r;
    r.r = decode<Rational>(at(j, "r"));
    r.s = decode<Rational>(at(j, "s"));
    r.base = at(j, "base").get<std::uint64_t>();
    r.depth = at(j, "depth").get<std::uint64_t>();
    r.bits = at(j, "bits").get<unsigned>();
    r.exact_mode = at(j, "exact_mode").get<bool>();
    r.B3 = decode<Number>(at(j, "B3"));
    r.B4 = decode<Number>(at(j, "B4"));
    r.C = decode_constants(at(j, "C"));
    r.bound_pow = decode<Number>(at(j, "bound_pow"));
    r.bound = decode<Number>(at(j, "bound"));
    r.sup_pow = decode<Number>(at(j, "sup_pow"));
    r.sup_measured = decode<Number>(at(j, "sup_measured"));
    r.witness = opt_decode<AdicInterval>(at(j, "witness"));
    r.verdict = verdict_from(at(j, "verdict").get<std::string>());
    r.evaluated = at(j, "evaluated").get<std::uint64_t>();
    return r;
}

namespace {

Json encode_hit(const FarHit& h) { return {{"m", h.m}, {"k", encode_int(h.k)}}; }
FarHit decode_hit(const Json& j) { return {at(j, "m").get<std::uint64_t>(), decode<Integer>(at(j, "k"))}; }

}  // namespace

Json encode(const FarConstantResult& f) {
    Json hits = Json::array();
    for (const auto& h : f.sharp_hits) hits.push_back(encode_hit(h));
    return {{"delta", encode(f.delta)},
            {"n", f.n},
            {"M", f.M},
            {"inf_value", encode(f.inf_value)},
            {"argmin", encode_hit(f.argmin)},
            {"sharp_hits", hits},
            {"per_m", encode_list(f.per_m)}};
}

template <>
FarConstantResult decode<FarConstantResult>(const Json& j) {
    FarConstantResult f;
    f.delta = decode<Rational>(at(j, "delta"));
    f.n = at(j, "n").get<std::uint64_t>();
    f.M = at(j, "M").get<std::uint64_t>();
    f.inf_value = decode<Rational>(at(j, "inf_value"));
    f.argmin = decode_hit(at(j, "argmin"));
    for (const Json& h : at(j, "sharp_hits")) f.sharp_hits.push_back(decode_hit(h));
    f.per_m = decode_list<Rational>(at(j, "per_m"));
    return f;
}

Json encode(const KrantzReport& k) {
    return {{"m", k.m},
            {"C_m", encode(k.C_m)},
            {"pairs_examined", k.pairs_examined},
            {"lattice_points", encode_int(k.lattice_points)},
            {"argmin", {{"p", k.argmin_p}, {"n", k.argmin_n}, {"beta", encode_int(k.argmin_beta)}}},
            {"epsilon", encode(k.epsilon)},
            {"k", encode_int(k.k)}};
}

template <>
KrantzReport decode<KrantzReport>(const Json& j) {
    KrantzReport k;
    k.m = at(j, "m").get<unsigned>();
    k.C_m = decode<Rational>(at(j, "C_m"));
    k.pairs_examined = at(j, "pairs_examined").get<std::uint64_t>();
    k.lattice_points = decode<Integer>(at(j, "lattice_points"));
    const Json& a = at(j, "argmin");
    k.argmin_p = at(a, "p").get<std::uint64_t>();
    k.argmin_n = at(a, "n").get<std::uint64_t>();
    k.argmin_beta = decode<Integer>(at(a, "beta"));
    k.epsilon = decode<Rational>(at(j, "epsilon"));
    k.k = decode<Integer>(at(j, "k"));
    return k;
}

Json encode(const DoublingMeasure& mu) {
    Json blocks = Json::array();
    for (const RegionMap& m : mu.blocks()) {
        Json pieces = Json::array();
        for (const Piece& p : m.pieces())
            pieces.push_back({{"left", encode(p.left)}, {"right", encode(p.right)}, {"x", p.w.x}, {"y", p.w.y}});
        blocks.push_back({{"I", encode(m.spec().I)}, {"alpha", m.spec().alpha}, {"pieces", pieces}});
    }
    return {{"q", mu.q()},
            {"a", encode(mu.a())},
            {"b", encode(mu.b())},
            {"family", mu.family() ? encode(*mu.family()) : Json(nullptr)},
            {"blocks", blocks}};
}

}  // namespace multiadic
