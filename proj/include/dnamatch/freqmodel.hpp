#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dnamatch {

/// Coancestry coefficient, 0 <= theta < 1.
class Theta {
public:
    constexpr Theta() = default;
    explicit Theta(double value);

    constexpr double value() const { return value_; }

private:
    double value_ = 0.0;
};

/// Allele labels and frequencies at one locus.
///
/// Frequencies are strictly positive and sum to one. The constructor accepts
/// inputs whose sum lies within [0.99, 1.01] and rescales them; anything
/// further off is rejected. Labels are opaque strings ("9.3" is not a number).
class LocusModel {
public:
    LocusModel(std::string name, std::vector<std::string> alleles, std::vector<double> freqs);

    /// Labels "1", "2", ... for tests and synthetic loci.
    static LocusModel anonymous(std::vector<double> freqs, std::string name = "L");

    const std::string& name() const { return name_; }
    const std::vector<std::string>& alleles() const { return alleles_; }
    const std::vector<double>& freqs() const { return freqs_; }
    std::size_t size() const { return freqs_.size(); }
    double freq(std::size_t i) const { return freqs_.at(i); }

    std::optional<std::size_t> index_of(std::string_view label) const;

private:
    std::string name_;
    std::vector<std::string> alleles_;
    std::vector<double> freqs_;
};

struct PowerSums {
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
};

/// S_k = sum_i p_i^k for k = 2, 3, 4, accumulated in allele order.
PowerSums power_sums(const LocusModel& locus);

/// Ordered collection of loci with unique names.
class FrequencySet {
public:
    FrequencySet() = default;
    explicit FrequencySet(std::vector<LocusModel> loci);

    const std::vector<LocusModel>& loci() const { return loci_; }
    std::size_t size() const { return loci_.size(); }
    bool empty() const { return loci_.empty(); }
    const LocusModel& operator[](std::size_t i) const { return loci_[i]; }
    const LocusModel* find(std::string_view name) const;

    auto begin() const { return loci_.begin(); }
    auto end() const { return loci_.end(); }

private:
    std::vector<LocusModel> loci_;
};

/// Reads the `locus,allele,frequency` CSV format. Lines starting with '#'
/// and blank lines are ignored; rows of a locus need not be contiguous and
/// loci keep the order of their first appearance.
FrequencySet load_frequency_set(std::istream& in);
FrequencySet load_frequency_file(const std::string& path);

/// Writes a FrequencySet back in the CSV format accepted by the loader.
void write_frequency_set(std::ostream& out, const FrequencySet& set);

/// Expected value, over samples of n genotypes and over replicate
/// populations, of the estimated genotype frequency: p~_i^2 when i == j,
/// 2 p~_i p~_j otherwise.
double expected_sample_genotype_freq(const LocusModel& locus, Theta theta, std::size_t n,
                                     std::size_t i, std::size_t j);

} // namespace dnamatch
