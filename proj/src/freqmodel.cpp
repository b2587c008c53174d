#include "dnamatch/freqmodel.hpp"

#include "dnamatch/error.hpp"
#include "dnamatch/text_util.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dnamatch {

namespace {

// Published tables are rounded to 3-4 decimals; sums this close to one are
// rescaled, anything further off is treated as a data error.
constexpr double kSumTolerance = 0.01;

} // namespace

Theta::Theta(double value) : value_(value)
{
    if (!(value >= 0.0 && value < 1.0))
        throw InputError("theta must satisfy 0 <= theta < 1, got " + format_double(value));
}

LocusModel::LocusModel(std::string name, std::vector<std::string> alleles, std::vector<double> freqs)
    : name_(std::move(name)), alleles_(std::move(alleles)), freqs_(std::move(freqs))
{
    if (freqs_.empty())
        throw InputError("locus " + name_ + ": no alleles");
    if (alleles_.size() != freqs_.size())
        throw InputError("locus " + name_ + ": allele/frequency count mismatch");

    std::set<std::string_view> seen;
    for (const auto& a : alleles_)
        if (!seen.insert(a).second)
            throw InputError("locus " + name_ + ": duplicate allele " + a);

    for (std::size_t i = 0; i < freqs_.size(); ++i) {
        double p = freqs_[i];
        if (!(p > 0.0 && p <= 1.0))
            throw InputError("locus " + name_ + ", allele " + alleles_[i] +
                             ": frequency outside (0,1]: " + format_double(p));
    }

    double sum = std::accumulate(freqs_.begin(), freqs_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw InputError("locus " + name_ + ": frequency sum out of tolerance (" +
                         format_double(sum) + ")");
    if (sum != 1.0)
        for (auto& p : freqs_)
            p /= sum;
}

LocusModel LocusModel::anonymous(std::vector<double> freqs, std::string name)
{
    std::vector<std::string> labels;
    labels.reserve(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i)
        labels.push_back(std::to_string(i + 1));
    return LocusModel(std::move(name), std::move(labels), std::move(freqs));
}

std::optional<std::size_t> LocusModel::index_of(std::string_view label) const
{
    for (std::size_t i = 0; i < alleles_.size(); ++i)
        if (alleles_[i] == label)
            return i;
    return std::nullopt;
}

PowerSums power_sums(const LocusModel& locus)
{
    PowerSums s;
    for (double p : locus.freqs()) {
        double p2 = p * p;
        s.s2 += p2;
        s.s3 += p2 * p;
        s.s4 += p2 * p2;
    }
    return s;
}

FrequencySet::FrequencySet(std::vector<LocusModel> loci) : loci_(std::move(loci))
{
    std::set<std::string_view> names;
    for (const auto& l : loci_)
        if (!names.insert(l.name()).second)
            throw InputError("duplicate locus name " + l.name());
}

const LocusModel* FrequencySet::find(std::string_view name) const
{
    for (const auto& l : loci_)
        if (l.name() == name)
            return &l;
    return nullptr;
}

FrequencySet load_frequency_set(std::istream& in)
{
    struct Pending {
        std::vector<std::string> alleles;
        std::vector<double> freqs;
    };
    std::vector<std::string> order;
    std::map<std::string, Pending, std::less<>> pending;

    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view row = trim(line);
        if (row.empty() || row.front() == '#')
            continue;
        auto fields = split(row, ',');
        auto where = [&] { return "frequency CSV line " + std::to_string(lineno) + ": "; };
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "locus" || fields[1] != "allele" ||
                fields[2] != "frequency")
                throw InputError(where() + "expected header 'locus,allele,frequency'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
            throw InputError(where() + "malformed row");

        double p = 0.0;
        if (!parse_double(fields[2], p))
            throw InputError(where() + "malformed frequency '" + std::string(fields[2]) + "'");
        if (!(p > 0.0 && p <= 1.0))
            throw InputError(where() + "frequency outside (0,1]");

        std::string locus(fields[0]);
        auto it = pending.find(locus);
        if (it == pending.end()) {
            order.push_back(locus);
            it = pending.emplace(locus, Pending{}).first;
        }
        for (const auto& a : it->second.alleles)
            if (a == fields[1])
                throw InputError(where() + "duplicate (locus, allele) " + locus + "," +
                                 std::string(fields[1]));
        it->second.alleles.emplace_back(fields[1]);
        it->second.freqs.push_back(p);
    }
    if (!header_seen)
        throw InputError("frequency CSV: missing header");
    if (order.empty())
        throw InputError("frequency CSV: no loci");

    std::vector<LocusModel> loci;
    loci.reserve(order.size());
    for (const auto& name : order) {
        auto& p = pending.at(name);
        loci.emplace_back(name, std::move(p.alleles), std::move(p.freqs));
    }
    return FrequencySet(std::move(loci));
}

FrequencySet load_frequency_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open frequency file " + path);
    return load_frequency_set(in);
}

void write_frequency_set(std::ostream& out, const FrequencySet& set)
{
    out << "locus,allele,frequency\n";
    for (const auto& locus : set)
        for (std::size_t i = 0; i < locus.size(); ++i)
            out << locus.name() << ',' << locus.alleles()[i] << ','
                << format_double(locus.freq(i), 17) << '\n';
}

double expected_sample_genotype_freq(const LocusModel& locus, Theta theta, std::size_t n,
                                     std::size_t i, std::size_t j)
{
    if (n == 0)
        throw InputError("sample size must be positive");
    const double t = theta.value();
    const double pi = locus.freq(i);
    const double pj = locus.freq(j);
    // Variance of a sample allele frequency from 2n alleles whose pairwise
    // coancestry is theta: p(1-p)[1 + (2n-1)theta]/(2n).
    const double two_n = 2.0 * static_cast<double>(n);
    const double spread = (1.0 + (two_n - 1.0) * t) / two_n;
    if (i == j)
        return pi * pi + pi * (1.0 - pi) * spread;
    return 2.0 * pi * pj - 2.0 * pi * pj * spread;
}

} // namespace dnamatch
