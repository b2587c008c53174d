#include "kernels.hpp"

#include <arm_neon.h>

namespace dnamatch::kernels {

// 16 partners per step; same scheme as the AVX2 kernel.
void scan_row_neon(const Columns& cols, std::size_t i, std::size_t j_begin, std::size_t j_end,
                   std::uint64_t* hist)
{
    const std::size_t L = cols.loci;
    const std::size_t width = L + 1;
    const std::size_t cells = width * width;

    uint8x16_t own_first[64];
    uint8x16_t own_second[64];
    for (std::size_t l = 0; l < L; ++l) {
        own_first[l] = vdupq_n_u8(cols.first[l * cols.stride + i]);
        own_second[l] = vdupq_n_u8(cols.second[l * cols.stride + i]);
    }

    alignas(16) std::uint8_t mm[16];
    alignas(16) std::uint8_t pp[16];
    std::size_t j = j_begin;
    for (; j + 16 <= j_end; j += 16) {
        uint8x16_t m = vdupq_n_u8(0);
        uint8x16_t p = vdupq_n_u8(0);
        for (std::size_t l = 0; l < L; ++l) {
            const uint8x16_t a = vld1q_u8(cols.first + l * cols.stride + j);
            const uint8x16_t b = vld1q_u8(cols.second + l * cols.stride + j);
            const uint8x16_t same_first = vceqq_u8(a, own_first[l]);
            const uint8x16_t same_second = vceqq_u8(b, own_second[l]);
            const uint8x16_t cross =
                vorrq_u8(vceqq_u8(a, own_second[l]), vceqq_u8(b, own_first[l]));
            const uint8x16_t match = vandq_u8(same_first, same_second);
            const uint8x16_t any = vorrq_u8(vorrq_u8(same_first, same_second), cross);
            m = vsubq_u8(m, match);
            p = vsubq_u8(p, vbicq_u8(any, match));
        }
        vst1q_u8(mm, m);
        vst1q_u8(pp, p);
        for (std::size_t k = 0; k < 16; ++k)
            hist[(k % kBanks) * cells + mm[k] * width + pp[k]] += 1;
    }
    if (j < j_end)
        scan_row_scalar(cols, i, j, j_end, hist);
}

} // namespace dnamatch::kernels
