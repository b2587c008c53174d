#include "dnamatch/error.hpp"
#include "dnamatch/simdb.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace dnamatch;

namespace {

FrequencySet small_panel()
{
    return FrequencySet({LocusModel("A", {"8", "9", "10"}, {0.2, 0.3, 0.5}),
                         LocusModel("B", {"11", "12"}, {0.6, 0.4}),
                         LocusModel("C", {"x", "y", "z", "w"}, {0.1, 0.2, 0.3, 0.4})});
}

} // namespace

TEST_CASE("rng streams are reproducible and distinct")
{
    Rng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool differ_stream = false, differ_seed = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differ_stream |= x != c.uniform();
        differ_seed |= x != d.uniform();
    }
    CHECK(differ_stream);
    CHECK(differ_seed);
}

TEST_CASE("rng distributions")
{
    Rng rng(1, 2);
    const int n = 200'000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 4 / std::sqrt(double(n)));
    CHECK(std::abs(s2 / n - 1.0) < 4 * std::sqrt(2.0 / n));

    for (double shape : {0.01, 0.3, 1.0, 4.5}) {
        double m = 0;
        const int k = 100'000;
        for (int i = 0; i < k; ++i)
            m += rng.gamma(shape);
        // Gamma(shape) has mean and variance both equal to shape.
        CHECK(std::abs(m / k - shape) < 4 * std::sqrt(shape / k));
    }
    CHECK(std::isfinite(rng.log_gamma_variate(1e-6)));
    CHECK_THROWS_AS(rng.log_gamma_variate(0.0), InvariantError);

    int counts[7] = {};
    for (int i = 0; i < 70'000; ++i)
        ++counts[rng.below(7)];
    for (int c : counts)
        CHECK(std::abs(c - 10'000) < 500);
}

TEST_CASE("subpopulation frequencies")
{
    const auto base = LocusModel::anonymous({0.1, 0.2, 0.3, 0.4});
    Rng rng(5, 0);
    const auto same = sample_subpopulation_freqs(base, Theta(0.0), rng);
    CHECK(same.unchanged);
    CHECK(same.locus.freqs() == base.freqs());

    const double theta = 0.05;
    const int reps = 20'000;
    std::vector<double> mean(4), var(4);
    double match = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto s = sample_subpopulation_freqs(base, Theta(theta), rng);
        CHECK_FALSE(s.unchanged);
        double sum = 0.0, s2 = 0.0, s4 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double p = s.locus.freq(i);
            CHECK(p > 0.0);
            sum += p;
            mean[i] += p;
            var[i] += (p - base.freq(i)) * (p - base.freq(i));
            s2 += p * p;
            s4 += p * p * p * p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // Random-mating match probability within this subpopulation.
        match += 2 * s2 * s2 - s4;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        const double p = base.freq(i);
        const double v = p * (1 - p) * theta;
        CHECK(std::abs(mean[i] / reps - p) < 4 * std::sqrt(v / reps));
        CHECK(var[i] / reps == doctest::Approx(v).epsilon(0.05));
    }
    // Averaged over subpopulations this is the coancestry match probability.
    CHECK(match / reps == doctest::Approx(match_class_probs(base, Theta(theta)).p2).epsilon(0.01));

    Rng tiny(6, 0);
    const auto skew = sample_subpopulation_freqs(LocusModel::anonymous({0.001, 0.999}), Theta(0.9), tiny);
    CHECK(skew.locus.freq(0) > 0.0);
}

TEST_CASE("profile sampling follows allele frequencies")
{
    const auto panel = small_panel();
    const AlleleSampler sampler(panel);
    Rng rng(8, 0);
    const int reps = 50'000;
    int homo_b = 0;
    for (int r = 0; r < reps; ++r) {
        const auto p = sample_profile(sampler, rng);
        REQUIRE(p.genotypes.size() == 3);
        homo_b += p.genotypes[1] == Genotype(0, 0);
    }
    const double want = 0.36;
    CHECK(std::abs(double(homo_b) / reps - want) < 4 * std::sqrt(want * (1 - want) / reps));
}

TEST_CASE("database generation")
{
    const auto panel = small_panel();
    SimConfig cfg;
    cfg.seed = 99;
    cfg.n = 101;
    cfg.theta = Theta(0.02);
    cfg.subpopulations = 3;
    cfg.planted = {{Relationship::full_sibs, 4}, {Relationship::parent_child, 2}};

    const auto db = generate_database(cfg, panel, 1);
    CHECK(db.profiles.size() == 101);
    CHECK(db.subpopulation_freqs.size() == 3);
    CHECK(db.planted.size() == 6);
    CHECK(db.profiles.front().id == "P001");
    CHECK(db.profiles.back().id == "P101");
    std::set<std::string> ids;
    for (const auto& p : db.profiles)
        ids.insert(p.id);
    CHECK(ids.size() == 101);
    CHECK(db.planted[0].id1 == "P090");
    CHECK(db.planted[0].id2 == "P091");
    CHECK(db.planted[5].relationship == Relationship::parent_child);
    for (const auto& pair : db.planted)
        CHECK(pair.subpopulation < 3);

    // Parent-child pairs share an allele at every locus.
    for (std::size_t r = 4; r < 6; ++r) {
        const auto& a = db.profiles[89 + 2 * r];
        const auto& b = db.profiles[90 + 2 * r];
        for (std::size_t l = 0; l < 3; ++l) {
            const auto g = a.genotypes[l], h = b.genotypes[l];
            CHECK((g.first() == h.first() || g.first() == h.second() || g.second() == h.first() ||
                   g.second() == h.second()));
        }
    }

    SUBCASE("independent of thread count")
    {
        const auto db4 = generate_database(cfg, panel, 4);
        CHECK(db4.profiles == db.profiles);
        CHECK(db4.subpopulation == db.subpopulation);
    }
    SUBCASE("seed changes output")
    {
        auto other = cfg;
        other.seed = 100;
        CHECK_FALSE(generate_database(other, panel).profiles == db.profiles);
    }
    SUBCASE("csv output is byte-identical across runs")
    {
        std::ostringstream a, b, m1, m2;
        write_profile_csv(a, panel, db.profiles);
        write_profile_csv(b, panel, generate_database(cfg, panel, 2).profiles);
        CHECK(a.str() == b.str());
        CHECK(a.str().rfind("id,A,B,C\nP001,", 0) == 0);
        write_manifest_csv(m1, cfg, db.planted);
        write_manifest_csv(m2, cfg, db.planted);
        CHECK(m1.str() == m2.str());
        CHECK(m1.str().find("P090,P091,full-sibs\n") != std::string::npos);
    }
}

TEST_CASE("simulation config validation")
{
    const auto panel = small_panel();
    SimConfig cfg;
    cfg.n = 1;
    CHECK_THROWS_AS(generate_database(cfg, panel), InputError);
    cfg.n = 10;
    cfg.subpopulations = 0;
    CHECK_THROWS_AS(generate_database(cfg, panel), InputError);
    cfg.subpopulations = 1;
    cfg.planted = {{Relationship::full_sibs, 6}};
    CHECK_THROWS_AS(generate_database(cfg, panel), InputError);
    cfg.planted = {{Relationship::half_sibs, 1}};
    CHECK_THROWS_AS(generate_database(cfg, panel), InputError);
    cfg.planted = {{Relationship::full_sibs, 5}};
    CHECK(generate_database(cfg, panel).planted.size() == 5);

    const FrequencySet bad({LocusModel("A", {"1,2", "3"}, {0.5, 0.5})});
    std::ostringstream out;
    Rng rng(1, 1);
    const std::vector<Profile> one{sample_profile(bad, rng, "X")};
    CHECK_THROWS_AS(write_profile_csv(out, bad, one), InputError);
}
