#pragma once

// Row kernels for the all-pairs scan. A kernel compares profile i against
// profiles [j_begin, j_end) and adds one count per pair to
// hist[bank * cells + m * (L + 1) + p], where bank cycles over kBanks copies
// so that back-to-back increments of the same cell do not serialize.

#include <cstddef>
#include <cstdint>

namespace dnamatch::kernels {

inline constexpr std::size_t kBanks = 4;

struct Columns {
    std::size_t loci = 0;
    std::size_t stride = 0;        ///< bytes between locus columns
    const std::uint8_t* first = nullptr;
    const std::uint8_t* second = nullptr;
};

using RowKernel = void (*)(const Columns& cols, std::size_t i, std::size_t j_begin,
                           std::size_t j_end, std::uint64_t* hist);

void scan_row_scalar(const Columns& cols, std::size_t i, std::size_t j_begin, std::size_t j_end,
                     std::uint64_t* hist);

#if defined(DNAMATCH_HAVE_AVX2_KERNEL)
void scan_row_avx2(const Columns& cols, std::size_t i, std::size_t j_begin, std::size_t j_end,
                   std::uint64_t* hist);
#endif

#if defined(DNAMATCH_HAVE_NEON_KERNEL)
void scan_row_neon(const Columns& cols, std::size_t i, std::size_t j_begin, std::size_t j_end,
                   std::uint64_t* hist);
#endif

} // namespace dnamatch::kernels
