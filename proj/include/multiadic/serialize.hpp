#pragma once

#include "multiadic/far.hpp"
#include "multiadic/moments.hpp"
#include "multiadic/verifier.hpp"

#include <json.hpp>

namespace multiadic {

using Json = nlohmann::json;

// Rationals as "num/den"; big integers as decimal strings; numbers that may be
// irrational carry {"kind": "exact"|"enclosure", ...}.
Json encode(const Rational& r);
Json encode_int(const Integer& z);
Json encode(const Number& n);
Json encode(const AdicInterval& I);
Json encode(const StabilizationProfile& s);
Json encode(const PairSolution& s);
Json encode(const MultiPrimeProfile& m);
Json encode(const SelectionResult& s);
Json encode(const SelectionFamily& f);
Json encode(const DoublingReport& r);
Json encode(const ExhaustionBound& e);
Json encode(const DoublingViolation& v);
Json encode(const NonDoublingWitness& w);
Json encode(const AlphaTable& t);
Json encode(const RHReport& r);
Json encode(const ARReport& r);
Json encode(const FarConstantResult& f);
Json encode(const KrantzReport& k);
Json encode(const DoublingMeasure& mu);

template <class T>
T decode(const Json& j);

template <> Rational decode<Rational>(const Json& j);
template <> Integer decode<Integer>(const Json& j);
template <> Number decode<Number>(const Json& j);
template <> AdicInterval decode<AdicInterval>(const Json& j);
template <> StabilizationProfile decode<StabilizationProfile>(const Json& j);
template <> PairSolution decode<PairSolution>(const Json& j);
template <> MultiPrimeProfile decode<MultiPrimeProfile>(const Json& j);
template <> SelectionFamily decode<SelectionFamily>(const Json& j);
template <> DoublingReport decode<DoublingReport>(const Json& j);
template <> ExhaustionBound decode<ExhaustionBound>(const Json& j);
template <> DoublingViolation decode<DoublingViolation>(const Json& j);
template <> NonDoublingWitness decode<NonDoublingWitness>(const Json& j);
template <> AlphaTable decode<AlphaTable>(const Json& j);
template <> RHReport decode<RHReport>(const Json& j);
template <> ARReport decode<ARReport>(const Json& j);
template <> FarConstantResult decode<FarConstantResult>(const Json& j);
template <> KrantzReport decode<KrantzReport>(const Json& j);

template <class T>
Json encode_list(const std::vector<T>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(encode(x));
    return a;
}

template <class T>
std::vector<T> decode_list(const Json& j) {
    std::vector<T> out;
    for (const auto& x : j) out.push_back(decode<T>(x));
    return out;
}

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace multiadic
