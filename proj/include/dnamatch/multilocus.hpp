#pragma once

// Multi-locus aggregation: joint distribution of (matching, partially
// matching) locus counts, expected pair counts for a database, and the
// birthday-problem collision probability.

#include "dnamatch/locusmatch.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dnamatch {

using LocusClassVector = std::vector<MatchClassProbs>;

/// Per-locus match-class probabilities for every locus of `freqs`.
LocusClassVector locus_class_vector(const FrequencySet& freqs, Theta theta);

/// Dense (L+1) x (L+1) table indexed by (m matching, p partial). Cells with
/// m + p > L exist in storage but are always zero.
template <typename T>
class MatchTable {
public:
    MatchTable() = default;
    explicit MatchTable(std::size_t loci) : loci_(loci), cells_((loci + 1) * (loci + 1), T{}) {}

    std::size_t loci() const { return loci_; }
    T& at(std::size_t m, std::size_t p) { return cells_[index(m, p)]; }
    const T& at(std::size_t m, std::size_t p) const { return cells_[index(m, p)]; }
    static constexpr bool valid(std::size_t loci, std::size_t m, std::size_t p)
    {
        return m + p <= loci;
    }

    T total() const
    {
        T sum{};
        for (const auto& c : cells_)
            sum += c;
        return sum;
    }

    std::span<T> cells() { return cells_; }
    std::span<const T> cells() const { return cells_; }

    friend bool operator==(const MatchTable&, const MatchTable&) = default;

private:
    std::size_t index(std::size_t m, std::size_t p) const { return m * (loci_ + 1) + p; }

    std::size_t loci_ = 0;
    std::vector<T> cells_;
};

/// q(m, p): probability that a random pair matches at m loci and partially
/// matches at p loci.
using MatchCountDistribution = MatchTable<double>;

/// Expected numbers of pairs per (m, p) cell.
using PairCountTable = MatchTable<double>;

/// Coefficients of prod_l (P2_l x + P1_l y + P0_l), by dynamic programming
/// over loci. Requires 1 <= L <= kMaxLoci.
MatchCountDistribution joint_match_distribution(std::span<const MatchClassProbs> loci);

inline constexpr std::size_t kMaxLoci = 32;

/// n choose 2, exact.
std::uint64_t pair_count(std::uint64_t n);

/// C(n, 2) * q(m, p) for every cell.
PairCountTable expected_pair_counts(const MatchCountDistribution& dist, std::uint64_t n);

/// Same numbers as expected_pair_counts; the Table-3 orientation (rows m,
/// columns p, all m) is a presentation choice made by the writers.
PairCountTable expected_profile_pair_table(std::uint64_t n, const MatchCountDistribution& dist);

struct BirthdayResult {
    /// 1 - exp(-n^2 P / 2).
    double approx = 0.0;
    /// 1 - prod_{i<n} (1 - iP); absent when (n - 1) P >= 1.
    std::optional<double> exact;
};

/// Probability that at least two of n profiles coincide when every profile
/// has the same probability P.
BirthdayResult birthday_at_least_one(double P, std::uint64_t n);

/// Smallest n with 1 - exp(-n^2 P / 2) >= 1/2.
std::uint64_t sample_size_for_half(double P);

/// Shown alongside birthday results: the formula treats every profile as
/// equally likely and independent.
inline constexpr std::string_view kBirthdayCaveat =
    "equal-probability independent-profile model; real profiles differ in probability "
    "and are dependent, so treat this as a rough guide";

} // namespace dnamatch
