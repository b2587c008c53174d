#include "dnamatch/kinship.hpp"

#include "dnamatch/error.hpp"
#include "dnamatch/text_util.hpp"

#include <numeric>

namespace dnamatch {

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational operator+(Rational a, Rational b)
{
    const std::int64_t l = std::lcm(a.den_, b.den_);
    return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Rational Rational::parse(std::string_view text)
{
    text = trim(text);
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    auto slash = text.find('/');
    bool ok = slash == std::string_view::npos
                  ? parse_uint(text, num)
                  : parse_uint(text.substr(0, slash), num) && parse_uint(text.substr(slash + 1), den);
    if (!ok || den == 0 || num > (1u << 30) || den > (1u << 30))
        throw InputError("malformed fraction '" + std::string(text) + "'");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::string Rational::str() const
{
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

void check_unit_interval(Rational r, const char* what)
{
    if (r.num() < 0 || r.num() > r.den())
        throw InputError(std::string(what) + " coefficient outside [0,1]: " + r.str());
}

} // namespace

KinshipCoefficients::KinshipCoefficients(Rational k2, Rational k1, Rational k0) : k_{k2, k1, k0}
{
    for (auto r : k_)
        check_unit_interval(r, "kinship");
    if (!(k2 + k1 + k0 == Rational(1)))
        throw InputError("kinship coefficients must sum to 1");
}

DeltaCoefficients::DeltaCoefficients(std::array<Rational, 9> d) : d_(d)
{
    Rational sum;
    for (auto r : d_) {
        check_unit_interval(r, "delta");
        sum = sum + r;
    }
    if (!(sum == Rational(1)))
        throw InputError("delta coefficients must sum to 1, got " + sum.str());
}

DeltaCoefficients DeltaCoefficients::from_kinship(const KinshipCoefficients& k)
{
    return DeltaCoefficients({0, 0, 0, 0, 0, 0, k.k2(), k.k1(), k.k0()});
}

namespace {

struct NamedKinship {
    Relationship rel;
    std::string_view label;
    Rational k2, k1, k0;
};

const std::array<NamedKinship, 9>& kinship_table()
{
    static const std::array<NamedKinship, 9> table{{
        {Relationship::identical_twins, "identical-twins", {1}, {0}, {0}},
        {Relationship::full_sibs, "full-sibs", {1, 4}, {1, 2}, {1, 4}},
        {Relationship::parent_child, "parent-child", {0}, {1}, {0}},
        {Relationship::double_first_cousins, "double-first-cousins", {1, 16}, {3, 8}, {9, 16}},
        {Relationship::half_sibs, "half-sibs", {0}, {1, 2}, {1, 2}},
        {Relationship::grandparent_grandchild, "grandparent-grandchild", {0}, {1, 2}, {1, 2}},
        {Relationship::uncle_nephew, "uncle-nephew", {0}, {1, 2}, {1, 2}},
        {Relationship::first_cousins, "first-cousins", {0}, {1, 4}, {3, 4}},
        {Relationship::unrelated, "unrelated", {0}, {0}, {1}},
    }};
    return table;
}

const NamedKinship& lookup(Relationship r)
{
    for (const auto& e : kinship_table())
        if (e.rel == r)
            return e;
    throw InvariantError("relationship missing from table");
}

} // namespace

std::string_view to_string(Relationship r)
{
    return lookup(r).label;
}

Relationship parse_relationship(std::string_view label)
{
    for (const auto& e : kinship_table())
        if (e.label == label)
            return e.rel;
    throw InputError("unknown relationship '" + std::string(label) + "'");
}

const std::vector<Relationship>& all_relationships()
{
    static const std::vector<Relationship> all = [] {
        std::vector<Relationship> v;
        for (const auto& e : kinship_table())
            v.push_back(e.rel);
        return v;
    }();
    return all;
}

KinshipCoefficients named_relationship(Relationship r)
{
    const auto& e = lookup(r);
    return KinshipCoefficients(e.k2, e.k1, e.k0);
}

KinshipCoefficients named_relationship(std::string_view label)
{
    return named_relationship(parse_relationship(label));
}

DeltaCoefficients sibs_of_first_cousins()
{
    return DeltaCoefficients(
        {Rational(1, 64), Rational(0), Rational(2, 64), Rational(1, 64), Rational(2, 64),
         Rational(1, 64), Rational(15, 64), Rational(30, 64), Rational(12, 64)});
}

MatchClassProbs kin_match_probs(const LocusModel& locus, Theta theta,
                                const KinshipCoefficients& k)
{
    const PowerSums s = power_sums(locus);
    const MatchClassProbs unrelated = match_class_probs(locus, theta);
    const double t = theta.value();
    const double k2 = k.k2().value(), k1 = k.k1().value(), k0 = k.k0().value();

    MatchClassProbs out;
    out.p2 = k2 + k1 * (t + (1.0 - t) * s.s2) + k0 * unrelated.p2;
    out.p1 = k1 * (1.0 - t) * (1.0 - s.s2) + k0 * unrelated.p1;
    out.p0 = k0 * unrelated.p0;
    return out;
}

MatchClassProbs delta_match_probs(const LocusModel& locus, Theta theta,
                                  const DeltaCoefficients& d)
{
    const PowerSums s = power_sums(locus);
    const MatchClassProbs unrelated = match_class_probs(locus, theta);
    const double t = theta.value();
    const double u = 1.0 - t;

    // One individual autozygous (d4, d6): its allele is one draw, the other
    // individual's two alleles are the second and third draws.
    const double autozygous = d.value(4) + d.value(6);
    const double auto_match = (2.0 * t * t + 3.0 * t * u * s.s2 + u * u * s.s3) / (1.0 + t);
    const double auto_partial = 2.0 * u / (1.0 + t) * (t + (1.0 - 2.0 * t) * s.s2 - u * s.s3);
    const double auto_mismatch = u / (1.0 + t) * (1.0 - (2.0 - t) * s.s2 + u * s.s3);

    const double one_pair = d.value(3) + d.value(5) + d.value(8);

    MatchClassProbs out;
    out.p2 = (d.value(1) + d.value(7)) + (d.value(2) + one_pair) * (t + u * s.s2) +
             autozygous * auto_match + d.value(9) * unrelated.p2;
    out.p1 = one_pair * u * (1.0 - s.s2) + autozygous * auto_partial + d.value(9) * unrelated.p1;
    out.p0 = d.value(2) * u * (1.0 - s.s2) + autozygous * auto_mismatch + d.value(9) * unrelated.p0;
    return out;
}

MultiLocusMatch multi_locus_kin_match(const FrequencySet& freqs, Theta theta,
                                      const KinshipCoefficients& k)
{
    MultiLocusMatch out;
    for (const auto& locus : freqs) {
        out.per_locus.push_back(kin_match_probs(locus, theta, k).p2);
        out.product *= out.per_locus.back();
    }
    return out;
}

MultiLocusMatch multi_locus_delta_match(const FrequencySet& freqs, Theta theta,
                                        const DeltaCoefficients& d)
{
    MultiLocusMatch out;
    for (const auto& locus : freqs) {
        out.per_locus.push_back(delta_match_probs(locus, theta, d).p2);
        out.product *= out.per_locus.back();
    }
    return out;
}

} // namespace dnamatch
