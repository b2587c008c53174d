#include "kernels.hpp"

#include <immintrin.h>

namespace dnamatch::kernels {

// 32 partners per step. Per locus: four byte compares give "same first",
// "same second" and the two cross terms; match = same first & same second,
// partial = any & ~match. Counts accumulate as negated 0xFF masks.
void scan_row_avx2(const Columns& cols, std::size_t i, std::size_t j_begin, std::size_t j_end,
                   std::uint64_t* hist)
{
    const std::size_t L = cols.loci;
    const std::size_t width = L + 1;
    const std::size_t cells = width * width;

    __m256i own_first[64];
    __m256i own_second[64];
    for (std::size_t l = 0; l < L; ++l) {
        own_first[l] = _mm256_set1_epi8(static_cast<char>(cols.first[l * cols.stride + i]));
        own_second[l] = _mm256_set1_epi8(static_cast<char>(cols.second[l * cols.stride + i]));
    }
    const __m256i width16 = _mm256_set1_epi16(static_cast<short>(width));

    alignas(32) std::uint16_t index[32];
    std::size_t j = j_begin;
    for (; j + 32 <= j_end; j += 32) {
        __m256i m = _mm256_setzero_si256();
        __m256i p = _mm256_setzero_si256();
        for (std::size_t l = 0; l < L; ++l) {
            const auto* fa = reinterpret_cast<const __m256i*>(cols.first + l * cols.stride + j);
            const auto* fb = reinterpret_cast<const __m256i*>(cols.second + l * cols.stride + j);
            const __m256i a = _mm256_loadu_si256(fa);
            const __m256i b = _mm256_loadu_si256(fb);
            const __m256i same_first = _mm256_cmpeq_epi8(a, own_first[l]);
            const __m256i same_second = _mm256_cmpeq_epi8(b, own_second[l]);
            const __m256i cross = _mm256_or_si256(_mm256_cmpeq_epi8(a, own_second[l]),
                                                  _mm256_cmpeq_epi8(b, own_first[l]));
            const __m256i match = _mm256_and_si256(same_first, same_second);
            const __m256i any = _mm256_or_si256(_mm256_or_si256(same_first, same_second), cross);
            m = _mm256_sub_epi8(m, match);
            p = _mm256_sub_epi8(p, _mm256_andnot_si256(match, any));
        }
        // index = m * width + p, widened to 16 bits.
        const __m256i m_lo = _mm256_cvtepu8_epi16(_mm256_castsi256_si128(m));
        const __m256i m_hi = _mm256_cvtepu8_epi16(_mm256_extracti128_si256(m, 1));
        const __m256i p_lo = _mm256_cvtepu8_epi16(_mm256_castsi256_si128(p));
        const __m256i p_hi = _mm256_cvtepu8_epi16(_mm256_extracti128_si256(p, 1));
        _mm256_store_si256(reinterpret_cast<__m256i*>(index),
                           _mm256_add_epi16(_mm256_mullo_epi16(m_lo, width16), p_lo));
        _mm256_store_si256(reinterpret_cast<__m256i*>(index + 16),
                           _mm256_add_epi16(_mm256_mullo_epi16(m_hi, width16), p_hi));
        for (std::size_t k = 0; k < 32; k += kBanks)
            for (std::size_t b = 0; b < kBanks; ++b)
                hist[b * cells + index[k + b]] += 1;
    }
    if (j < j_end)
        scan_row_scalar(cols, i, j, j_end, hist);
}

} // namespace dnamatch::kernels
