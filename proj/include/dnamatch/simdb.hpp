#pragma once

// Seeded simulation of synthetic offender databases: subpopulation allele
// frequencies drawn around a base panel, random-mating genotypes, and planted
// pairs of relatives.

#include "dnamatch/freqmodel.hpp"
#include "dnamatch/kinship.hpp"
#include "dnamatch/locusmatch.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnamatch {

/// Seeded generator. The engine is std::mt19937_64 seeded through
/// std::seed_seq, both fully specified by the standard; the uniform, normal
/// and gamma transforms are our own so streams do not depend on the standard
/// library vendor. Each (seed, stream) pair is an independent sequence.
class Rng {
public:
    static constexpr std::string_view kAlgorithm =
        "mt19937_64+seed_seq(seed_lo,seed_hi,stream);u53;polar-normal;marsaglia-tsang-gamma;v1";

    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    /// Uniform integer on [0, n), unbiased.
    std::uint64_t below(std::uint64_t n);
    bool coin() { return (engine_() >> 63) != 0; }
    double normal();
    /// log of a Gamma(shape, 1) variate; finite even for tiny shapes.
    double log_gamma_variate(double shape);
    double gamma(double shape) { return std::exp(log_gamma_variate(shape)); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Per-locus cumulative tables for drawing alleles from a FrequencySet.
class AlleleSampler {
public:
    explicit AlleleSampler(const FrequencySet& freqs);

    std::uint16_t draw(std::size_t locus, Rng& rng) const;
    std::size_t loci() const { return cdf_.size(); }

private:
    std::vector<std::vector<double>> cdf_;
};

struct Profile {
    std::string id;
    std::vector<Genotype> genotypes; ///< one per locus, canonical order

    friend bool operator==(const Profile&, const Profile&) = default;
};

struct SubpopulationFreqs {
    LocusModel locus;
    bool unchanged = false; ///< theta == 0: the base was returned as is
};

/// Draws one subpopulation's frequencies from Dirichlet(p_i (1-theta)/theta),
/// which has mean p_i and variance p_i (1-p_i) theta.
SubpopulationFreqs sample_subpopulation_freqs(const LocusModel& base, Theta theta, Rng& rng);
FrequencySet sample_subpopulation_freqs(const FrequencySet& base, Theta theta, Rng& rng);

/// Two independent allele draws per locus.
Profile sample_profile(const AlleleSampler& sampler, Rng& rng, std::string id = {});
Profile sample_profile(const FrequencySet& freqs, Rng& rng, std::string id = {});

/// A relative of `source` by Mendelian transmission.
///
/// parent-child: the new profile is a child of `source`; it receives one of
/// the source's alleles at random and one population allele.
/// full-sibs: the parents of `source` are simulated (each transmitted one of
/// the source's alleles, and carries one further population allele), and the
/// new profile is another child of theirs.
///
/// If `ibd` is given it receives, per locus, the number of allele pairs the
/// two profiles share identical by descent. Other relationships throw.
Profile sample_relative(const Profile& source, Relationship relationship,
                        const AlleleSampler& sampler, Rng& rng, std::string id = {},
                        std::vector<int>* ibd = nullptr);

struct PlantedSpec {
    Relationship relationship;
    std::size_t pairs = 0;
};

struct SimConfig {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    Theta theta;
    std::size_t subpopulations = 1;
    std::vector<PlantedSpec> planted;

    /// Throws InputError on invariant violations.
    void validate() const;
    std::size_t planted_pairs() const;
};

struct PlantedPair {
    std::string id1;
    std::string id2;
    Relationship relationship;
    std::size_t subpopulation = 0;
};

struct SimulatedDatabase {
    FrequencySet base;
    std::vector<FrequencySet> subpopulation_freqs;
    std::vector<Profile> profiles;        ///< ordered by id
    std::vector<std::size_t> subpopulation; ///< per profile
    std::vector<PlantedPair> planted;
};

/// Generates config.n profiles. Ordinary profiles come first and are assigned
/// to subpopulations round-robin; planted pairs follow, pair r living in
/// subpopulation r mod S. Each subpopulation and each planted pair has its
/// own random stream, so the result does not depend on `threads`.
SimulatedDatabase generate_database(const SimConfig& config, const FrequencySet& base,
                                    unsigned threads = 1);

/// `id,<locus1>,...` with cells `a/b` (allele labels, canonical order).
void write_profile_csv(std::ostream& out, const FrequencySet& labels,
                       std::span<const Profile> profiles);

/// `id1,id2,relationship`, preceded by `#` lines naming the RNG and seed.
void write_manifest_csv(std::ostream& out, const SimConfig& config,
                        std::span<const PlantedPair> planted);

} // namespace dnamatch
