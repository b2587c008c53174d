#pragma once

// All-pairs comparison of a profile database. Every unordered pair of
// profiles is classified locus by locus (match / partial / mismatch) and
// counted in a histogram indexed by (matching loci, partially matching loci).

#include "dnamatch/locusmatch.hpp"
#include "dnamatch/multilocus.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnamatch {

struct Profile;

enum class MatchClass : std::uint8_t { mismatch = 0, partial = 1, match = 2 };

MatchClass classify_pair_locus(Genotype g1, Genotype g2);

/// 16-bit genotype token, (first << 8) | second. Equal tokens mean matching
/// genotypes. Allele ids must be below 256.
std::uint16_t encode_token(Genotype g);
Genotype decode_token(std::uint16_t token);

struct PackedProfile {
    std::vector<std::uint16_t> tokens; ///< one per locus

    static PackedProfile from(const Profile& profile);
    friend bool operator==(const PackedProfile&, const PackedProfile&) = default;
};

using MatchHistogram = MatchTable<std::uint64_t>;

/// Column-major copy of a database: for each locus, one byte column holding
/// the smaller allele id of every profile and one holding the larger. Columns
/// are padded so vector kernels may read past the last profile.
class PackedDatabase {
public:
    PackedDatabase() = default;
    explicit PackedDatabase(std::span<const PackedProfile> profiles);

    std::size_t size() const { return n_; }
    std::size_t loci() const { return loci_; }
    std::size_t stride() const { return stride_; }

    const std::uint8_t* first_column(std::size_t locus) const { return &first_[locus * stride_]; }
    const std::uint8_t* second_column(std::size_t locus) const { return &second_[locus * stride_]; }
    Genotype genotype(std::size_t profile, std::size_t locus) const;

    static constexpr std::size_t kPadding = 64;

private:
    std::size_t n_ = 0;
    std::size_t loci_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint8_t> first_;
    std::vector<std::uint8_t> second_;
};

enum class KernelKind { automatic, scalar, avx2, neon };

std::string_view to_string(KernelKind k);
KernelKind parse_kernel(std::string_view name);

/// Kernels compiled in and supported by this CPU, scalar first.
std::vector<KernelKind> available_kernels();

/// The fastest available kernel when `requested` is automatic; otherwise
/// `requested` itself, or InputError if it is not available.
KernelKind resolve_kernel(KernelKind requested);

struct ScanOptions {
    unsigned threads = 1;
    KernelKind kernel = KernelKind::automatic;
    std::size_t row_tile = 64;     ///< profiles per work block
    std::size_t column_tile = 1024; ///< comparison partners per cache tile
};

/// Histogram over all C(n, 2) unordered pairs. The result does not depend on
/// profile order, thread count or kernel.
MatchHistogram scan_all_pairs(const PackedDatabase& db, const ScanOptions& options = {});
MatchHistogram scan_all_pairs(std::span<const PackedProfile> profiles,
                              const ScanOptions& options = {});

/// Profiles as read from a profile CSV. Allele ids are dense per locus, in
/// order of first appearance.
struct ProfileTable {
    std::vector<std::string> locus_names;
    std::vector<std::vector<std::string>> allele_labels; ///< per locus
    std::vector<std::string> ids;
    std::vector<PackedProfile> profiles;
};

/// Reads `id,<locus1>,...` with `a/b` cells. '#' lines are skipped. Every
/// profile must be typed at every locus.
ProfileTable load_profile_csv(std::istream& in);
ProfileTable load_profile_file(const std::string& path);

struct DeviationCell {
    std::size_t matching = 0;
    std::size_t partial = 0;
    double observed = 0.0;
    double expected = 0.0;
    double deviation = 0.0;  ///< observed - expected
    double poisson_sd = 0.0; ///< sqrt(expected)
    bool flagged = false;    ///< |deviation| > threshold * poisson_sd
};

struct DeviationReport {
    std::vector<DeviationCell> cells;
    std::size_t flagged = 0;
    std::size_t nonzero_expected = 0;
    std::size_t flagged_nonzero_expected = 0;
    double threshold_sd = 3.0;
};

DeviationReport compare_observed_expected(const MatchTable<double>& observed,
                                          const PairCountTable& expected,
                                          double threshold_sd = 3.0);
DeviationReport compare_observed_expected(const MatchHistogram& observed,
                                          const PairCountTable& expected,
                                          double threshold_sd = 3.0);

} // namespace dnamatch
