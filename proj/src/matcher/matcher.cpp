#include "dnamatch/matcher.hpp"

#include "dnamatch/error.hpp"
#include "dnamatch/simdb.hpp"
#include "dnamatch/text_util.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <thread>

namespace dnamatch {

MatchClass classify_pair_locus(Genotype g1, Genotype g2)
{
    if (g1 == g2)
        return MatchClass::match;
    const bool shared = g1.first() == g2.first() || g1.first() == g2.second() ||
                        g1.second() == g2.first() || g1.second() == g2.second();
    return shared ? MatchClass::partial : MatchClass::mismatch;
}

std::uint16_t encode_token(Genotype g)
{
    if (g.second() > 0xFF)
        throw InputError("allele id " + std::to_string(g.second()) +
                         " too large for a packed genotype (max 255)");
    return static_cast<std::uint16_t>((g.first() << 8) | g.second());
}

Genotype decode_token(std::uint16_t token)
{
    return Genotype(static_cast<std::uint16_t>(token >> 8), static_cast<std::uint16_t>(token & 0xFF));
}

PackedProfile PackedProfile::from(const Profile& profile)
{
    PackedProfile out;
    out.tokens.reserve(profile.genotypes.size());
    for (auto g : profile.genotypes)
        out.tokens.push_back(encode_token(g));
    return out;
}

PackedDatabase::PackedDatabase(std::span<const PackedProfile> profiles) : n_(profiles.size())
{
    if (profiles.empty())
        return;
    loci_ = profiles.front().tokens.size();
    if (loci_ == 0 || loci_ > kMaxLoci)
        throw InputError("profiles must have between 1 and " + std::to_string(kMaxLoci) + " loci");
    stride_ = n_ + kPadding;
    first_.assign(loci_ * stride_, 0);
    second_.assign(loci_ * stride_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto& tokens = profiles[i].tokens;
        if (tokens.size() != loci_)
            throw InputError("inconsistent locus panels: profile " + std::to_string(i) + " has " +
                             std::to_string(tokens.size()) + " loci, expected " +
                             std::to_string(loci_));
        for (std::size_t l = 0; l < loci_; ++l) {
            const Genotype g = decode_token(tokens[l]);
            first_[l * stride_ + i] = static_cast<std::uint8_t>(g.first());
            second_[l * stride_ + i] = static_cast<std::uint8_t>(g.second());
        }
    }
}

Genotype PackedDatabase::genotype(std::size_t profile, std::size_t locus) const
{
    return Genotype(first_column(locus)[profile], second_column(locus)[profile]);
}

std::string_view to_string(KernelKind k)
{
    switch (k) {
    case KernelKind::automatic: return "auto";
    case KernelKind::scalar: return "scalar";
    case KernelKind::avx2: return "avx2";
    case KernelKind::neon: return "neon";
    }
    return "?";
}

KernelKind parse_kernel(std::string_view name)
{
    for (auto k : {KernelKind::automatic, KernelKind::scalar, KernelKind::avx2, KernelKind::neon})
        if (to_string(k) == name)
            return k;
    throw InputError("unknown kernel '" + std::string(name) + "'");
}

std::vector<KernelKind> available_kernels()
{
    std::vector<KernelKind> out{KernelKind::scalar};
#if defined(DNAMATCH_HAVE_AVX2_KERNEL)
    if (__builtin_cpu_supports("avx2"))
        out.push_back(KernelKind::avx2);
#endif
#if defined(DNAMATCH_HAVE_NEON_KERNEL)
    out.push_back(KernelKind::neon);
#endif
    return out;
}

KernelKind resolve_kernel(KernelKind requested)
{
    const auto avail = available_kernels();
    if (requested == KernelKind::automatic)
        return avail.back();
    if (std::find(avail.begin(), avail.end(), requested) == avail.end())
        throw InputError("kernel '" + std::string(to_string(requested)) +
                         "' is not available on this build/CPU");
    return requested;
}

namespace {

kernels::RowKernel kernel_function(KernelKind k)
{
    switch (k) {
#if defined(DNAMATCH_HAVE_AVX2_KERNEL)
    case KernelKind::avx2: return kernels::scan_row_avx2;
#endif
#if defined(DNAMATCH_HAVE_NEON_KERNEL)
    case KernelKind::neon: return kernels::scan_row_neon;
#endif
    case KernelKind::scalar: return kernels::scan_row_scalar;
    default: break;
    }
    throw InvariantError("kernel not compiled in");
}

} // namespace

MatchHistogram scan_all_pairs(const PackedDatabase& db, const ScanOptions& options)
{
    const std::size_t n = db.size();
    if (n < 2)
        throw InputError("scan needs at least 2 profiles");
    const kernels::RowKernel kernel = kernel_function(resolve_kernel(options.kernel));

    const std::size_t L = db.loci();
    const std::size_t cells = (L + 1) * (L + 1);
    const std::size_t row_tile = std::max<std::size_t>(1, options.row_tile);
    const std::size_t column_tile = std::max<std::size_t>(32, options.column_tile);
    const std::size_t blocks = (n + row_tile - 1) / row_tile;

    const kernels::Columns cols{L, db.stride(), db.first_column(0), db.second_column(0)};

    // Each block gets a private histogram; blocks are merged in index order
    // once every worker is done. Workers count into banked scratch space and
    // fold it into the block's histogram when the block is finished.
    std::vector<std::uint64_t> block_hist(blocks * cells, 0);
    std::atomic<std::size_t> next_block{0};

    auto worker = [&] {
        std::vector<std::uint64_t> scratch(kernels::kBanks * cells);
        for (std::size_t b = next_block++; b < blocks; b = next_block++) {
            std::fill(scratch.begin(), scratch.end(), 0);
            const std::size_t i0 = b * row_tile;
            const std::size_t i1 = std::min(n, i0 + row_tile);
            for (std::size_t jc = i0 + 1; jc < n; jc += column_tile) {
                const std::size_t je = std::min(n, jc + column_tile);
                for (std::size_t i = i0; i < i1; ++i) {
                    const std::size_t jb = std::max(jc, i + 1);
                    if (jb < je)
                        kernel(cols, i, jb, je, scratch.data());
                }
            }
            std::uint64_t* dst = &block_hist[b * cells];
            for (std::size_t bank = 0; bank < kernels::kBanks; ++bank)
                for (std::size_t c = 0; c < cells; ++c)
                    dst[c] += scratch[bank * cells + c];
        }
    };

    const unsigned threads = std::max(1u, options.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    MatchHistogram out(L);
    auto dst = out.cells();
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t c = 0; c < cells; ++c)
            dst[c] += block_hist[b * cells + c];

    if (out.total() != pair_count(n))
        throw InvariantError("scan histogram total does not equal C(n,2)");
    return out;
}

MatchHistogram scan_all_pairs(std::span<const PackedProfile> profiles, const ScanOptions& options)
{
    return scan_all_pairs(PackedDatabase(profiles), options);
}

ProfileTable load_profile_csv(std::istream& in)
{
    ProfileTable table;
    std::vector<std::map<std::string, std::uint16_t, std::less<>>> dictionaries;

    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view row = trim(line);
        if (row.empty() || row.front() == '#')
            continue;
        auto fields = split(row, ',');
        auto where = [&] { return "profile CSV line " + std::to_string(lineno) + ": "; };
        if (!header_seen) {
            if (fields.size() < 2 || fields[0] != "id")
                throw InputError(where() + "expected header 'id,<locus1>,...'");
            for (std::size_t k = 1; k < fields.size(); ++k)
                table.locus_names.emplace_back(fields[k]);
            if (table.locus_names.size() > kMaxLoci)
                throw InputError(where() + "more than " + std::to_string(kMaxLoci) + " loci");
            table.allele_labels.resize(table.locus_names.size());
            dictionaries.resize(table.locus_names.size());
            header_seen = true;
            continue;
        }
        if (fields.size() != table.locus_names.size() + 1)
            throw InputError(where() + "expected " + std::to_string(table.locus_names.size() + 1) +
                             " fields, found " + std::to_string(fields.size()));
        if (fields[0].empty())
            throw InputError(where() + "empty profile id");

        PackedProfile profile;
        profile.tokens.reserve(table.locus_names.size());
        for (std::size_t l = 0; l < table.locus_names.size(); ++l) {
            const std::string_view cell = fields[l + 1];
            const auto slash = cell.find('/');
            if (slash == std::string_view::npos)
                throw InputError(where() + "locus " + table.locus_names[l] +
                                 ": missing or malformed genotype '" + std::string(cell) + "'");
            std::uint16_t ids[2];
            const std::string_view alleles[2] = {trim(cell.substr(0, slash)),
                                                 trim(cell.substr(slash + 1))};
            for (int k = 0; k < 2; ++k) {
                if (alleles[k].empty())
                    throw InputError(where() + "locus " + table.locus_names[l] +
                                     ": missing allele");
                auto& dict = dictionaries[l];
                auto it = dict.find(alleles[k]);
                if (it == dict.end()) {
                    if (dict.size() >= 256)
                        throw InputError("locus " + table.locus_names[l] +
                                         ": more than 256 distinct alleles");
                    it = dict.emplace(std::string(alleles[k]),
                                      static_cast<std::uint16_t>(dict.size()))
                             .first;
                    table.allele_labels[l].emplace_back(alleles[k]);
                }
                ids[k] = it->second;
            }
            profile.tokens.push_back(encode_token(Genotype(ids[0], ids[1])));
        }
        table.ids.emplace_back(fields[0]);
        table.profiles.push_back(std::move(profile));
    }
    if (!header_seen)
        throw InputError("profile CSV: missing header");
    return table;
}

ProfileTable load_profile_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open profile file " + path);
    return load_profile_csv(in);
}

DeviationReport compare_observed_expected(const MatchTable<double>& observed,
                                          const PairCountTable& expected, double threshold_sd)
{
    if (observed.loci() != expected.loci())
        throw InputError("observed and expected tables have different dimensions (" +
                         std::to_string(observed.loci()) + " vs " +
                         std::to_string(expected.loci()) + " loci)");
    DeviationReport report;
    report.threshold_sd = threshold_sd;
    const std::size_t L = observed.loci();
    for (std::size_t m = 0; m <= L; ++m) {
        for (std::size_t p = 0; m + p <= L; ++p) {
            DeviationCell c;
            c.matching = m;
            c.partial = p;
            c.observed = observed.at(m, p);
            c.expected = expected.at(m, p);
            c.deviation = c.observed - c.expected;
            c.poisson_sd = std::sqrt(std::max(0.0, c.expected));
            c.flagged = std::abs(c.deviation) > threshold_sd * c.poisson_sd;
            if (c.flagged)
                ++report.flagged;
            if (c.expected > 0.0) {
                ++report.nonzero_expected;
                if (c.flagged)
                    ++report.flagged_nonzero_expected;
            }
            report.cells.push_back(c);
        }
    }
    return report;
}

DeviationReport compare_observed_expected(const MatchHistogram& observed,
                                          const PairCountTable& expected, double threshold_sd)
{
    MatchTable<double> obs(observed.loci());
    for (std::size_t k = 0; k < obs.cells().size(); ++k)
        obs.cells()[k] = static_cast<double>(observed.cells()[k]);
    return compare_observed_expected(obs, expected, threshold_sd);
}

} // namespace dnamatch
