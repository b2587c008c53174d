#include "kernels.hpp"

namespace dnamatch::kernels {

void scan_row_scalar(const Columns& cols, std::size_t i, std::size_t j_begin, std::size_t j_end,
                     std::uint64_t* hist)
{
    const std::size_t width = cols.loci + 1;
    const std::size_t cells = width * width;
    for (std::size_t j = j_begin; j < j_end; ++j) {
        unsigned m = 0;
        unsigned p = 0;
        for (std::size_t l = 0; l < cols.loci; ++l) {
            const std::uint8_t* first = cols.first + l * cols.stride;
            const std::uint8_t* second = cols.second + l * cols.stride;
            const std::uint8_t ai = first[i], bi = second[i];
            const std::uint8_t aj = first[j], bj = second[j];
            const bool same_first = ai == aj;
            const bool same_second = bi == bj;
            const bool match = same_first && same_second;
            const bool shared = same_first || same_second || ai == bj || bi == aj;
            m += match;
            p += shared && !match;
        }
        hist[(j & (kBanks - 1)) * cells + m * width + p] += 1;
    }
}

} // namespace dnamatch::kernels
