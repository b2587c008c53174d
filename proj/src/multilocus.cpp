#include "dnamatch/multilocus.hpp"

#include "dnamatch/error.hpp"

#include <cmath>
#include <numbers>

namespace dnamatch {

LocusClassVector locus_class_vector(const FrequencySet& freqs, Theta theta)
{
    LocusClassVector v;
    v.reserve(freqs.size());
    for (const auto& locus : freqs)
        v.push_back(match_class_probs(locus, theta));
    return v;
}

MatchCountDistribution joint_match_distribution(std::span<const MatchClassProbs> loci)
{
    const std::size_t L = loci.size();
    if (L == 0 || L > kMaxLoci)
        throw InputError("joint match distribution needs between 1 and " +
                         std::to_string(kMaxLoci) + " loci");

    // After processing k loci, cur.at(m, p) holds the probability of m
    // matches and p partials among those k.
    MatchCountDistribution cur(L);
    MatchCountDistribution next(L);
    cur.at(0, 0) = 1.0;
    for (std::size_t k = 0; k < L; ++k) {
        const auto& c = loci[k];
        for (auto& x : next.cells())
            x = 0.0;
        for (std::size_t m = 0; m <= k; ++m) {
            for (std::size_t p = 0; m + p <= k; ++p) {
                const double q = cur.at(m, p);
                if (q == 0.0)
                    continue;
                next.at(m + 1, p) += q * c.p2;
                next.at(m, p + 1) += q * c.p1;
                next.at(m, p) += q * c.p0;
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

std::uint64_t pair_count(std::uint64_t n)
{
    return n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
}

PairCountTable expected_pair_counts(const MatchCountDistribution& dist, std::uint64_t n)
{
    if (n < 2)
        throw InputError("expected pair counts need at least 2 profiles");
    const double pairs = static_cast<double>(pair_count(n));
    PairCountTable out(dist.loci());
    for (std::size_t m = 0; m <= dist.loci(); ++m)
        for (std::size_t p = 0; m + p <= dist.loci(); ++p)
            out.at(m, p) = pairs * dist.at(m, p);
    return out;
}

PairCountTable expected_profile_pair_table(std::uint64_t n, const MatchCountDistribution& dist)
{
    return expected_pair_counts(dist, n);
}

BirthdayResult birthday_at_least_one(double P, std::uint64_t n)
{
    if (!(P > 0.0 && P < 1.0))
        throw InputError("birthday: profile probability must lie in (0, 1)");
    if (n < 2)
        throw InputError("birthday: need at least 2 profiles");

    BirthdayResult r;
    const double nn = static_cast<double>(n);
    r.approx = -std::expm1(-nn * nn * P / 2.0);

    if (static_cast<double>(n - 1) * P < 1.0) {
        // log prod (1 - iP), with Neumaier compensation over the long sum.
        double sum = 0.0;
        double comp = 0.0;
        for (std::uint64_t i = 1; i < n; ++i) {
            const double term = std::log1p(-static_cast<double>(i) * P);
            const double t = sum + term;
            comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        r.exact = -std::expm1(sum + comp);
    }
    return r;
}

std::uint64_t sample_size_for_half(double P)
{
    if (!(P > 0.0 && P < 1.0))
        throw InputError("sample size: profile probability must lie in (0, 1)");
    const double target = 2.0 * std::numbers::ln2 / P;
    auto n = static_cast<std::uint64_t>(std::ceil(std::sqrt(target)));
    // Guard the ceiling against rounding in sqrt.
    auto reaches = [&](std::uint64_t k) {
        const double kk = static_cast<double>(k);
        return kk * kk >= target;
    };
    while (n > 0 && reaches(n - 1))
        --n;
    while (!reaches(n))
        ++n;
    return n < 2 ? 2 : n;
}

} // namespace dnamatch
