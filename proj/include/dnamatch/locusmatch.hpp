#pragma once

// Single-locus probabilities under the Dirichlet coancestry model.
//
// Alleles are drawn sequentially: after n draws of which n_i were A_i, the
// next draw is A_i with probability [n_i theta + (1 - theta) p_i] / [1 + (n - 1) theta].
// Genotype and genotype-pair probabilities are products of such draws; the
// match/partial/mismatch probabilities have closed forms in the power sums.

#include "dnamatch/freqmodel.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace dnamatch {

/// Unordered allele pair stored as allele indices with first() <= second().
class Genotype {
public:
    constexpr Genotype() = default;
    constexpr Genotype(std::uint16_t a, std::uint16_t b)
        : lo_(a < b ? a : b), hi_(a < b ? b : a) {}

    constexpr std::uint16_t first() const { return lo_; }
    constexpr std::uint16_t second() const { return hi_; }
    constexpr bool homozygous() const { return lo_ == hi_; }

    friend constexpr bool operator==(Genotype, Genotype) = default;
    friend constexpr auto operator<=>(Genotype, Genotype) = default;

private:
    std::uint16_t lo_ = 0;
    std::uint16_t hi_ = 0;
};

/// Counts of previously drawn alleles, by allele index.
class AlleleCounts {
public:
    explicit AlleleCounts(std::size_t alleles) : counts_(alleles, 0) {}

    void add(std::size_t allele, unsigned times = 1);
    void remove(std::size_t allele);
    unsigned count(std::size_t allele) const { return counts_.at(allele); }
    unsigned total() const { return total_; }
    std::size_t alleles() const { return counts_.size(); }

private:
    std::vector<unsigned> counts_;
    unsigned total_ = 0;
};

struct MatchClassProbs {
    double p2 = 0.0; ///< both alleles shared
    double p1 = 0.0; ///< exactly one allele type shared
    double p0 = 0.0; ///< no allele in common

    double sum() const { return p2 + p1 + p0; }
};

/// Probability that the next allele drawn is `allele`, given `prior`.
double dirichlet_draw_prob(const LocusModel& locus, Theta theta, const AlleleCounts& prior,
                           std::size_t allele);

/// Single-genotype probability from two sequential draws:
/// p_i[theta + (1-theta)p_i] for homozygotes, 2(1-theta)p_i p_j otherwise.
double genotype_prob(const LocusModel& locus, Theta theta, Genotype g);

/// Joint probability that individual 1 has g1 and individual 2 has g2.
/// Heterozygote orderings are summed here, never by the caller.
double genotype_pair_prob(const LocusModel& locus, Theta theta, Genotype g1, Genotype g2);

/// P2, P1, P0 from the closed forms in S2, S3, S4.
MatchClassProbs match_class_probs(const LocusModel& locus, Theta theta);

/// Pr(second person has g | first person has g).
double conditional_match_prob(const LocusModel& locus, Theta theta, Genotype g);

/// Single-contributor likelihood ratio: 1 / conditional match probability.
double likelihood_ratio(double conditional_match_probability);

/// Hardy-Weinberg genotype frequency (p_i^2 or 2 p_i p_j).
double hwe_genotype_freq(const LocusModel& locus, Genotype g);

void check_genotype(const LocusModel& locus, Genotype g);

} // namespace dnamatch
