#include "dnamatch/locusmatch.hpp"

#include "dnamatch/error.hpp"

#include <array>
#include <string>

namespace dnamatch {

void AlleleCounts::add(std::size_t allele, unsigned times)
{
    counts_.at(allele) += times;
    total_ += times;
}

void AlleleCounts::remove(std::size_t allele)
{
    if (counts_.at(allele) == 0)
        throw InvariantError("AlleleCounts::remove on empty count");
    --counts_[allele];
    --total_;
}

double dirichlet_draw_prob(const LocusModel& locus, Theta theta, const AlleleCounts& prior,
                           std::size_t allele)
{
    const double t = theta.value();
    const double p = locus.freq(allele);
    const double n = prior.total();
    if (prior.total() == 0)
        return p;
    return (prior.count(allele) * t + (1.0 - t) * p) / (1.0 + (n - 1.0) * t);
}

void check_genotype(const LocusModel& locus, Genotype g)
{
    if (g.second() >= locus.size())
        throw InputError("locus " + locus.name() + ": unknown allele index " +
                         std::to_string(g.second()));
}

namespace {

// Probability of drawing the alleles of `seq` in order, starting from `counts`.
// `counts` is restored before returning.
double sequence_prob(const LocusModel& locus, Theta theta, AlleleCounts& counts,
                     const std::array<std::uint16_t, 4>& seq, std::size_t len)
{
    double prob = 1.0;
    for (std::size_t k = 0; k < len; ++k) {
        prob *= dirichlet_draw_prob(locus, theta, counts, seq[k]);
        counts.add(seq[k]);
    }
    for (std::size_t k = 0; k < len; ++k)
        counts.remove(seq[k]);
    return prob;
}

} // namespace

double genotype_prob(const LocusModel& locus, Theta theta, Genotype g)
{
    check_genotype(locus, g);
    AlleleCounts counts(locus.size());
    double prob = sequence_prob(locus, theta, counts, {g.first(), g.second(), 0, 0}, 2);
    return g.homozygous() ? prob : 2.0 * prob;
}

double genotype_pair_prob(const LocusModel& locus, Theta theta, Genotype g1, Genotype g2)
{
    check_genotype(locus, g1);
    check_genotype(locus, g2);

    // Sum over the distinct orderings of each genotype's alleles; a
    // heterozygote has two, so it contributes a factor of 2.
    const std::array<std::array<std::uint16_t, 2>, 2> order1{
        {{g1.first(), g1.second()}, {g1.second(), g1.first()}}};
    const std::array<std::array<std::uint16_t, 2>, 2> order2{
        {{g2.first(), g2.second()}, {g2.second(), g2.first()}}};
    const std::size_t n1 = g1.homozygous() ? 1 : 2;
    const std::size_t n2 = g2.homozygous() ? 1 : 2;

    AlleleCounts counts(locus.size());
    double prob = 0.0;
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
            prob += sequence_prob(locus, theta, counts,
                                  {order1[a][0], order1[a][1], order2[b][0], order2[b][1]}, 4);
    return prob;
}

MatchClassProbs match_class_probs(const LocusModel& locus, Theta theta)
{
    const PowerSums s = power_sums(locus);
    const long double t = theta.value();
    const long double u = 1.0L - t;
    const long double s2 = s.s2, s3 = s.s3, s4 = s.s4;

    const long double t2u = t * t * u;
    const long double tu2 = t * u * u;
    const long double u3 = u * u * u;
    const long double denom = (1.0L + t) * (1.0L + 2.0L * t);

    // Highest powers of theta first: they are the smallest terms for the
    // theta values of interest.
    long double p2 = 6.0L * t * t * t;
    p2 += t2u * (2.0L + 9.0L * s2);
    p2 += 2.0L * tu2 * (2.0L * s2 + s3);
    p2 += u3 * (2.0L * s2 * s2 - s4);

    long double p1 = 8.0L * t2u * (1.0L - s2);
    p1 += 4.0L * tu2 * (1.0L - s3);
    p1 += 4.0L * u3 * (s2 - s3 - s2 * s2 + s4);

    long double p0 = t2u * (1.0L - s2);
    p0 += 2.0L * tu2 * (1.0L - 2.0L * s2 + s3);
    p0 += u3 * (1.0L - 4.0L * s2 + 4.0L * s3 + 2.0L * s2 * s2 - 3.0L * s4);

    return {static_cast<double>(p2 / denom), static_cast<double>(p1 / denom),
            static_cast<double>(p0 / denom)};
}

double conditional_match_prob(const LocusModel& locus, Theta theta, Genotype g)
{
    const double single = genotype_prob(locus, theta, g);
    if (!(single > 0.0))
        throw InputError("conditional match probability: genotype has zero probability");
    return genotype_pair_prob(locus, theta, g, g) / single;
}

double likelihood_ratio(double conditional_match_probability)
{
    if (!(conditional_match_probability > 0.0))
        throw InputError("likelihood ratio: match probability must be positive");
    return 1.0 / conditional_match_probability;
}

double hwe_genotype_freq(const LocusModel& locus, Genotype g)
{
    check_genotype(locus, g);
    const double pa = locus.freq(g.first());
    const double pb = locus.freq(g.second());
    return g.homozygous() ? pa * pa : 2.0 * pa * pb;
}

} // namespace dnamatch
