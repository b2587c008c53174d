#pragma once

#include "dnamatch/freqmodel.hpp"
#include "dnamatch/locusmatch.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dnamatch {

/// Exact fraction with a positive denominator, always in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(Rational a, Rational b);
    friend bool operator==(Rational, Rational) = default;

    /// Accepts "3/8", "1", or "0".
    static Rational parse(std::string_view text);
    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Probabilities that two non-inbred relatives share 2, 1, 0 pairs of alleles
/// identical by descent. The three fractions sum to exactly one.
class KinshipCoefficients {
public:
    KinshipCoefficients(Rational k2, Rational k1, Rational k0);

    Rational k2() const { return k_[0]; }
    Rational k1() const { return k_[1]; }
    Rational k0() const { return k_[2]; }

private:
    std::array<Rational, 3> k_;
};

/// Nine identity-state probabilities for a pair of possibly inbred relatives
/// carrying alleles (a, b) and (c, d):
///   d1 a,b,c,d ibd            d6 c,d only
///   d2 a,b and c,d            d7 (a,c and b,d) or (a,d and b,c)
///   d3 a,b,c or a,b,d         d8 a,c or a,d or b,c or b,d
///   d4 a,b only               d9 none
///   d5 a,c,d or b,c,d
/// Two-pattern states (d3, d5) carry the summed probability of both patterns.
class DeltaCoefficients {
public:
    explicit DeltaCoefficients(std::array<Rational, 9> d);

    /// The non-inbred special case: d7 = k2, d8 = k1, d9 = k0.
    static DeltaCoefficients from_kinship(const KinshipCoefficients& k);

    /// 1-based, matching the conventional Delta_1 .. Delta_9 numbering.
    Rational operator[](std::size_t i) const { return d_.at(i - 1); }
    double value(std::size_t i) const { return d_.at(i - 1).value(); }

private:
    std::array<Rational, 9> d_;
};

enum class Relationship {
    identical_twins,
    full_sibs,
    parent_child,
    double_first_cousins,
    half_sibs,
    grandparent_grandchild,
    uncle_nephew,
    first_cousins,
    unrelated,
};

/// Hyphenated CLI spelling, e.g. "full-sibs".
std::string_view to_string(Relationship r);
Relationship parse_relationship(std::string_view label);
const std::vector<Relationship>& all_relationships();

KinshipCoefficients named_relationship(Relationship r);
KinshipCoefficients named_relationship(std::string_view label);

/// Siblings whose parents are first cousins.
DeltaCoefficients sibs_of_first_cousins();

MatchClassProbs kin_match_probs(const LocusModel& locus, Theta theta,
                                const KinshipCoefficients& k);
MatchClassProbs delta_match_probs(const LocusModel& locus, Theta theta,
                                  const DeltaCoefficients& d);

struct MultiLocusMatch {
    std::vector<double> per_locus;
    double product = 1.0;
};

MultiLocusMatch multi_locus_kin_match(const FrequencySet& freqs, Theta theta,
                                      const KinshipCoefficients& k);
MultiLocusMatch multi_locus_delta_match(const FrequencySet& freqs, Theta theta,
                                        const DeltaCoefficients& d);

} // namespace dnamatch
