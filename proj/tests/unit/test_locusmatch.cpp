#include "dnamatch/error.hpp"
#include "dnamatch/locusmatch.hpp"
#include "golden.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dnamatch;

namespace {

void check_close(double a, double b, double tol)
{
    CHECK(std::abs(a - b) <= tol);
}

} // namespace

TEST_CASE("genotype is unordered")
{
    CHECK(Genotype(3, 1) == Genotype(1, 3));
    CHECK(Genotype(3, 1).first() == 1);
    CHECK(Genotype(2, 2).homozygous());
    CHECK_FALSE(Genotype(1, 2).homozygous());
}

TEST_CASE("draw rule")
{
    const auto l = LocusModel::anonymous({0.25, 0.75});
    AlleleCounts c(2);
    CHECK(dirichlet_draw_prob(l, Theta(0.3), c, 0) == 0.25);
    c.add(0);
    // (1 * 0.3 + 0.7 * 0.25) / 1
    CHECK(dirichlet_draw_prob(l, Theta(0.3), c, 0) == doctest::Approx(0.475));
    CHECK(dirichlet_draw_prob(l, Theta(0.3), c, 1) == doctest::Approx(0.525));
    c.add(1, 2);
    CHECK(c.total() == 3);
    c.remove(1);
    CHECK(c.count(1) == 1);
    AlleleCounts empty(1);
    CHECK_THROWS_AS(empty.remove(0), InvariantError);
}

TEST_CASE("genotype probabilities")
{
    const auto l = LocusModel::anonymous({0.1, 0.2, 0.7});
    CHECK(genotype_prob(l, Theta(0.0), Genotype(0, 0)) == doctest::Approx(0.01));
    CHECK(genotype_prob(l, Theta(0.0), Genotype(0, 2)) == doctest::Approx(0.14));
    CHECK(hwe_genotype_freq(l, Genotype(1, 2)) == doctest::Approx(0.28));
    CHECK(genotype_prob(l, Theta(0.1), Genotype(0, 0)) == doctest::Approx(0.1 * (0.1 + 0.9 * 0.1)));

    for (double t : {0.0, 0.03, 0.4}) {
        double total = 0.0;
        for (std::uint16_t a = 0; a < 3; ++a)
            for (std::uint16_t b = a; b < 3; ++b)
                total += genotype_prob(l, Theta(t), Genotype(a, b));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(genotype_prob(l, Theta(0.0), Genotype(0, 3)), InputError);
}

TEST_CASE("conditional match probability")
{
    const auto l = LocusModel::anonymous({0.1, 0.2, 0.7});
    const double t = 0.03;
    const double d = (1 + t) * (1 + 2 * t);
    const double homo = (2 * t + (1 - t) * 0.1) * (3 * t + (1 - t) * 0.1) / d;
    const double het = 2 * (t + (1 - t) * 0.1) * (t + (1 - t) * 0.2) / d;
    CHECK(conditional_match_prob(l, Theta(t), Genotype(0, 0)) == doctest::Approx(homo).epsilon(1e-13));
    CHECK(conditional_match_prob(l, Theta(t), Genotype(0, 1)) == doctest::Approx(het).epsilon(1e-13));
    CHECK(conditional_match_prob(l, Theta(0), Genotype(1, 2)) == doctest::Approx(0.28).epsilon(1e-13));
    CHECK(likelihood_ratio(0.25) == 4.0);
    CHECK_THROWS_AS(likelihood_ratio(0.0), InputError);
}

TEST_CASE("genotype pair probabilities sum to one")
{
    const auto l = LocusModel::anonymous({0.1, 0.2, 0.3, 0.4});
    for (double t : {0.0, 0.05, 0.5}) {
        double total = 0.0, match = 0.0;
        for (std::uint16_t a = 0; a < 4; ++a)
            for (std::uint16_t b = a; b < 4; ++b)
                for (std::uint16_t c = 0; c < 4; ++c)
                    for (std::uint16_t e = c; e < 4; ++e) {
                        const double pr = genotype_pair_prob(l, Theta(t), Genotype(a, b), Genotype(c, e));
                        total += pr;
                        if (Genotype(a, b) == Genotype(c, e))
                            match += pr;
                    }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(match == doctest::Approx(match_class_probs(l, Theta(t)).p2).epsilon(1e-12));
    }
}

TEST_CASE("match classes against exact rationals")
{
    const auto l = LocusModel::anonymous({0.1, 0.2, 0.3, 0.4});
    const auto a = match_class_probs(l, Theta(0.05));
    check_close(a.p2, golden::kFourAllele_theta_1_20_p2, 1e-14);
    check_close(a.p1, golden::kFourAllele_theta_1_20_p1, 1e-14);
    check_close(a.p0, golden::kFourAllele_theta_1_20_p0, 1e-14);
    const auto b = match_class_probs(l, Theta(0.3));
    check_close(b.p2, golden::kFourAllele_theta_3_10_p2, 1e-14);
    check_close(b.p1, golden::kFourAllele_theta_3_10_p1, 1e-14);
    check_close(b.p0, golden::kFourAllele_theta_3_10_p0, 1e-14);

    const auto half = match_class_probs(LocusModel::anonymous({0.5, 0.5}), Theta(0.5));
    check_close(half.p2, 0.640625, 1e-15);
    check_close(half.p1, golden::kTwoEqual_theta_1_2_p1, 1e-15);
    check_close(half.p0, golden::kTwoEqual_theta_1_2_p0, 1e-15);
    check_close(match_class_probs(LocusModel::anonymous({0.5, 0.5}), Theta(0.0)).p2, 0.375, 1e-15);
}

TEST_CASE("match classes against the four-draw enumeration")
{
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 40; ++rep) {
        const auto p = oracle::random_freqs(gen, 2 + rep % 5);
        const auto l = LocusModel::anonymous(p);
        for (double t : {0.0, 0.001, 0.03, 0.3, 0.9}) {
            const auto got = match_class_probs(l, Theta(t));
            const auto want = oracle::four_tuple_classes(l.freqs(), t);
            check_close(got.p2, want.p2, 1e-13);
            check_close(got.p1, want.p1, 1e-13);
            check_close(got.p0, want.p0, 1e-13);
            check_close(got.sum(), 1.0, 1e-13);
        }
    }
}

TEST_CASE("match class edge cases")
{
    const auto mono = match_class_probs(LocusModel::anonymous({1.0}), Theta(0.2));
    CHECK(mono.p2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(mono.p1) < 1e-15);
    CHECK(std::abs(mono.p0) < 1e-15);

    // Probabilities grow with theta for a fixed locus.
    const auto l = LocusModel::anonymous({0.05, 0.15, 0.3, 0.5});
    double prev = 0.0;
    for (double t = 0.0; t < 0.95; t += 0.05) {
        const double p2 = match_class_probs(l, Theta(t)).p2;
        CHECK(p2 > prev);
        prev = p2;
    }
}
