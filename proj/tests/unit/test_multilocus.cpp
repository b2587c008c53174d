#include "dnamatch/error.hpp"
#include "dnamatch/multilocus.hpp"
#include "golden.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dnamatch;

namespace {

LocusClassVector random_classes(std::mt19937_64& gen, std::size_t loci, double theta)
{
    std::vector<LocusModel> models;
    for (std::size_t l = 0; l < loci; ++l)
        models.push_back(LocusModel::anonymous(oracle::random_freqs(gen, 2 + l % 6), "L" + std::to_string(l)));
    return locus_class_vector(FrequencySet(std::move(models)), Theta(theta));
}

} // namespace

TEST_CASE("joint distribution equals 3^L enumeration")
{
    std::mt19937_64 gen(3);
    for (std::size_t L = 1; L <= 7; ++L) {
        for (double t : {0.0, 0.03, 0.3}) {
            const auto classes = random_classes(gen, L, t);
            const auto dp = joint_match_distribution(classes);
            const auto brute = oracle::brute_force_joint(classes);
            for (std::size_t m = 0; m <= L; ++m)
                for (std::size_t p = 0; m + p <= L; ++p)
                    CHECK(std::abs(dp.at(m, p) - brute.at(m, p)) <= 1e-14);
            CHECK(dp.total() == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("joint distribution structure")
{
    const std::vector<MatchClassProbs> one{{0.2, 0.5, 0.3}};
    const auto d = joint_match_distribution(one);
    CHECK(d.at(1, 0) == 0.2);
    CHECK(d.at(0, 1) == 0.5);
    CHECK(d.at(0, 0) == 0.3);

    std::vector<MatchClassProbs> certain(13, MatchClassProbs{1.0, 0.0, 0.0});
    const auto all = joint_match_distribution(certain);
    CHECK(all.at(13, 0) == 1.0);

    std::vector<MatchClassProbs> many(kMaxLoci, MatchClassProbs{0.1, 0.5, 0.4});
    const auto big = joint_match_distribution(many);
    CHECK(big.total() == doctest::Approx(1.0).epsilon(1e-12));
    // Binomial check on the marginal of matches.
    double m_mean = 0.0;
    for (std::size_t m = 0; m <= kMaxLoci; ++m)
        for (std::size_t p = 0; m + p <= kMaxLoci; ++p)
            m_mean += double(m) * big.at(m, p);
    CHECK(m_mean == doctest::Approx(0.1 * kMaxLoci).epsilon(1e-12));

    CHECK_THROWS_AS(joint_match_distribution({}), InputError);
    std::vector<MatchClassProbs> too_many(kMaxLoci + 1, MatchClassProbs{0.1, 0.5, 0.4});
    CHECK_THROWS_AS(joint_match_distribution(too_many), InputError);
}

TEST_CASE("pair counts")
{
    CHECK(pair_count(0) == 0);
    CHECK(pair_count(1) == 0);
    CHECK(pair_count(2) == 1);
    CHECK(pair_count(65493) == 2144633778ULL);
    CHECK(pair_count(4294967296ULL) == 9223372034707292160ULL);

    std::mt19937_64 gen(4);
    const auto dist = joint_match_distribution(random_classes(gen, 13, 0.03));
    for (std::uint64_t n : {2ULL, 3ULL, 1000ULL, 65493ULL}) {
        const auto table = expected_pair_counts(dist, n);
        CHECK(std::abs(table.total() / double(pair_count(n)) - 1.0) <= 1e-12);
        CHECK(expected_profile_pair_table(n, dist) == table);
    }
    CHECK(expected_pair_counts(dist, 2) == dist);
    CHECK_THROWS_AS(expected_pair_counts(dist, 1), InputError);
}

TEST_CASE("birthday problem")
{
    const auto r = birthday_at_least_one(1.0 / 7.54e8, 65493);
    CHECK(r.approx == doctest::Approx(golden::kBirthdayApprox_754e6_65493).epsilon(1e-12));
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == doctest::Approx(golden::kBirthdayExact_754e6_65493).epsilon(1e-11));

    const auto tiny = birthday_at_least_one(2e-15, 65493);
    CHECK(tiny.approx == doctest::Approx(65493.0 * 65493.0 * 1e-15).epsilon(1e-5));

    CHECK_FALSE(birthday_at_least_one(0.5, 10).exact.has_value());
    CHECK(birthday_at_least_one(0.5, 2).exact.value() == doctest::Approx(0.5));

    SUBCASE("exact and approximation stay close when nP is small")
    {
        for (std::uint64_t n : {2ULL, 10ULL, 1000ULL, 100000ULL})
            for (double P : {1e-12, 1e-9, 1e-7}) {
                const double nP = double(n) * P;
                if (nP > 1e-2)
                    continue;
                const auto b = birthday_at_least_one(P, n);
                const double bound = nP / 2 + double(n) * double(n) * nP * P / (6 * (1 - nP));
                CHECK(std::abs(*b.exact - b.approx) <= bound);
            }
    }
    SUBCASE("monotone in n")
    {
        double prev = 0.0;
        for (std::uint64_t n = 2; n < 5000; n += 97) {
            const double a = birthday_at_least_one(1e-7, n).approx;
            CHECK(a > prev);
            prev = a;
        }
    }
    CHECK_THROWS_AS(birthday_at_least_one(0.0, 10), InputError);
    CHECK_THROWS_AS(birthday_at_least_one(1e-6, 1), InputError);
}

TEST_CASE("sample size for one half")
{
    CHECK(sample_size_for_half(1e-10) == 117742);
    CHECK(sample_size_for_half(0.9) == 2);
    for (double P : {1e-4, 3e-9, 1e-15}) {
        const auto n = sample_size_for_half(P);
        CHECK(birthday_at_least_one(P, n).approx >= 0.5);
        CHECK(birthday_at_least_one(P, n - 1).approx < 0.5);
    }
}
