#include "dnamatch/simdb.hpp"

#include "dnamatch/error.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <thread>

namespace dnamatch {

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open()
{
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw InvariantError("Rng::below(0)");
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

double Rng::log_gamma_variate(double shape)
{
    if (!(shape > 0.0))
        throw InvariantError("gamma shape must be positive");
    if (shape < 1.0) {
        // G(a) = G(a + 1) U^(1/a), kept in log space.
        const double boosted = log_gamma_variate(shape + 1.0);
        return boosted + std::log(uniform_open()) / shape;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        const double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0)
            continue;
        v = v * v * v;
        const double u = uniform_open();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return std::log(d) + std::log(v);
    }
}

AlleleSampler::AlleleSampler(const FrequencySet& freqs)
{
    cdf_.reserve(freqs.size());
    for (const auto& locus : freqs) {
        if (locus.size() > std::numeric_limits<std::uint16_t>::max())
            throw InputError("locus " + locus.name() + " has too many alleles");
        std::vector<double> c(locus.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < locus.size(); ++i) {
            acc += locus.freq(i);
            c[i] = acc;
        }
        c.back() = 1.0;
        cdf_.push_back(std::move(c));
    }
}

std::uint16_t AlleleSampler::draw(std::size_t locus, Rng& rng) const
{
    const auto& c = cdf_[locus];
    const double u = rng.uniform();
    auto it = std::upper_bound(c.begin(), c.end(), u);
    return static_cast<std::uint16_t>(std::min<std::size_t>(it - c.begin(), c.size() - 1));
}

SubpopulationFreqs sample_subpopulation_freqs(const LocusModel& base, Theta theta, Rng& rng)
{
    const double t = theta.value();
    if (t == 0.0)
        return {base, true};

    const double concentration = (1.0 - t) / t;
    std::vector<double> logs(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        logs[i] = rng.log_gamma_variate(base.freq(i) * concentration);

    const double top = *std::max_element(logs.begin(), logs.end());
    std::vector<double> p(base.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        // Floor keeps every frequency strictly positive.
        p[i] = std::max(std::exp(logs[i] - top), std::numeric_limits<double>::min());
        sum += p[i];
    }
    for (auto& x : p)
        x /= sum;
    return {LocusModel(base.name(), base.alleles(), std::move(p)), false};
}

FrequencySet sample_subpopulation_freqs(const FrequencySet& base, Theta theta, Rng& rng)
{
    std::vector<LocusModel> loci;
    loci.reserve(base.size());
    for (const auto& locus : base)
        loci.push_back(sample_subpopulation_freqs(locus, theta, rng).locus);
    return FrequencySet(std::move(loci));
}

Profile sample_profile(const AlleleSampler& sampler, Rng& rng, std::string id)
{
    Profile p{std::move(id), {}};
    p.genotypes.reserve(sampler.loci());
    for (std::size_t l = 0; l < sampler.loci(); ++l) {
        const auto a = sampler.draw(l, rng);
        const auto b = sampler.draw(l, rng);
        p.genotypes.emplace_back(a, b);
    }
    return p;
}

Profile sample_profile(const FrequencySet& freqs, Rng& rng, std::string id)
{
    return sample_profile(AlleleSampler(freqs), rng, std::move(id));
}

Profile sample_relative(const Profile& source, Relationship relationship,
                        const AlleleSampler& sampler, Rng& rng, std::string id,
                        std::vector<int>* ibd)
{
    if (relationship != Relationship::parent_child && relationship != Relationship::full_sibs)
        throw InputError("cannot generate relatives of type " + std::string(to_string(relationship)));
    if (source.genotypes.size() != sampler.loci())
        throw InputError("source profile does not match the locus panel");

    Profile out{std::move(id), {}};
    out.genotypes.reserve(sampler.loci());
    if (ibd)
        ibd->assign(sampler.loci(), 0);

    for (std::size_t l = 0; l < sampler.loci(); ++l) {
        const Genotype g = source.genotypes[l];
        if (relationship == Relationship::parent_child) {
            const auto passed = rng.coin() ? g.second() : g.first();
            const auto other = sampler.draw(l, rng);
            out.genotypes.emplace_back(passed, other);
            if (ibd)
                (*ibd)[l] = 1;
            continue;
        }
        // Full sibs: split the source's alleles between its two parents, give
        // each parent one further population allele, then transmit.
        const bool swap = rng.coin();
        const auto from_mother = swap ? g.second() : g.first();
        const auto from_father = swap ? g.first() : g.second();
        const auto mother_other = sampler.draw(l, rng);
        const auto father_other = sampler.draw(l, rng);
        const bool same_maternal = rng.coin();
        const bool same_paternal = rng.coin();
        out.genotypes.emplace_back(same_maternal ? from_mother : mother_other,
                                   same_paternal ? from_father : father_other);
        if (ibd)
            (*ibd)[l] = int(same_maternal) + int(same_paternal);
    }
    return out;
}

void SimConfig::validate() const
{
    if (n < 2)
        throw InputError("simulation needs n >= 2");
    if (subpopulations < 1)
        throw InputError("simulation needs at least one subpopulation");
    for (const auto& spec : planted)
        if (spec.relationship != Relationship::parent_child &&
            spec.relationship != Relationship::full_sibs)
            throw InputError("cannot plant relatives of type " +
                             std::string(to_string(spec.relationship)));
    if (2 * planted_pairs() > n)
        throw InputError("planted pairs exceed n/2");
}

std::size_t SimConfig::planted_pairs() const
{
    std::size_t total = 0;
    for (const auto& spec : planted)
        total += spec.pairs;
    return total;
}

namespace {

std::string profile_id(std::size_t index, std::size_t n)
{
    const std::string digits = std::to_string(index + 1);
    const std::size_t width = std::to_string(n).size();
    return "P" + std::string(width - digits.size(), '0') + digits;
}

} // namespace

SimulatedDatabase generate_database(const SimConfig& config, const FrequencySet& base,
                                    unsigned threads)
{
    config.validate();
    if (base.empty())
        throw InputError("simulation needs at least one locus");

    const std::size_t S = config.subpopulations;
    const std::size_t planted = config.planted_pairs();
    const std::size_t ordinary = config.n - 2 * planted;

    SimulatedDatabase db;
    db.base = base;
    db.subpopulation_freqs.resize(S);
    db.profiles.resize(config.n);
    db.subpopulation.resize(config.n);

    // Stream s belongs to subpopulation s: one frequency draw, then its
    // ordinary profiles in id order.
    auto fill_subpopulation = [&](std::size_t s) {
        Rng rng(config.seed, s);
        db.subpopulation_freqs[s] = sample_subpopulation_freqs(base, config.theta, rng);
        const AlleleSampler sampler(db.subpopulation_freqs[s]);
        for (std::size_t i = s; i < ordinary; i += S) {
            db.profiles[i] = sample_profile(sampler, rng, profile_id(i, config.n));
            db.subpopulation[i] = s;
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(S)));
    if (workers == 1) {
        for (std::size_t s = 0; s < S; ++s)
            fill_subpopulation(s);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t s = w; s < S; s += workers)
                    fill_subpopulation(s);
            });
        for (auto& t : pool)
            t.join();
    }

    // Planted pair r uses stream S + r.
    std::size_t r = 0;
    for (const auto& spec : config.planted) {
        for (std::size_t k = 0; k < spec.pairs; ++k, ++r) {
            const std::size_t s = r % S;
            Rng rng(config.seed, S + r);
            const AlleleSampler sampler(db.subpopulation_freqs[s]);
            const std::size_t i1 = ordinary + 2 * r;
            const std::size_t i2 = i1 + 1;
            db.profiles[i1] = sample_profile(sampler, rng, profile_id(i1, config.n));
            db.profiles[i2] = sample_relative(db.profiles[i1], spec.relationship, sampler, rng,
                                              profile_id(i2, config.n));
            db.subpopulation[i1] = db.subpopulation[i2] = s;
            db.planted.push_back({db.profiles[i1].id, db.profiles[i2].id, spec.relationship, s});
        }
    }
    return db;
}

namespace {

void check_label(const std::string& label)
{
    if (label.find_first_of(",/\n\r") != std::string::npos)
        throw InputError("allele label '" + label + "' cannot be written to a profile CSV");
}

} // namespace

void write_profile_csv(std::ostream& out, const FrequencySet& labels,
                       std::span<const Profile> profiles)
{
    out << "id";
    for (const auto& locus : labels) {
        out << ',' << locus.name();
        for (const auto& a : locus.alleles())
            check_label(a);
    }
    out << '\n';
    for (const auto& p : profiles) {
        if (p.genotypes.size() != labels.size())
            throw InputError("profile " + p.id + " does not match the locus panel");
        out << p.id;
        for (std::size_t l = 0; l < labels.size(); ++l) {
            const auto& alleles = labels[l].alleles();
            const Genotype g = p.genotypes[l];
            out << ',' << alleles.at(g.first()) << '/' << alleles.at(g.second());
        }
        out << '\n';
    }
}

void write_manifest_csv(std::ostream& out, const SimConfig& config,
                        std::span<const PlantedPair> planted)
{
    out << "# rng=" << Rng::kAlgorithm << '\n';
    out << "# seed=" << config.seed << '\n';
    out << "id1,id2,relationship\n";
    for (const auto& pair : planted)
        out << pair.id1 << ',' << pair.id2 << ',' << to_string(pair.relationship) << '\n';
}

} // namespace dnamatch
