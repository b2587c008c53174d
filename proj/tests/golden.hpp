#pragma once

// Reference values produced by tests/oracles/golden.py (exact rationals and
// 60-digit arithmetic). Frozen here so the C++ tests need no Python.

namespace golden {

// Four alleles with frequencies 0.1, 0.2, 0.3, 0.4.
// kFourAllele_theta_1_20: P2 = 7962557/46200000, P1 = 6743993/11550000, P0 = 11261471/46200000
inline constexpr double kFourAllele_theta_1_20_p2 = 0.17234971861471861472;
inline constexpr double kFourAllele_theta_1_20_p1 = 0.5838954978354978355;
inline constexpr double kFourAllele_theta_1_20_p0 = 0.24375478354978354978;
// kFourAllele_theta_3_10: P2 = 3567489/10400000, P1 = 1351861/2600000, P0 = 1425067/10400000
inline constexpr double kFourAllele_theta_3_10_p2 = 0.34302778846153846154;
inline constexpr double kFourAllele_theta_3_10_p1 = 0.51994653846153846154;
inline constexpr double kFourAllele_theta_3_10_p0 = 0.13702567307692307692;
// kTwoEqual_theta_1_2: P2 = 41/64, P1 = 5/16, P0 = 3/64
inline constexpr double kTwoEqual_theta_1_2_p2 = 0.640625;
inline constexpr double kTwoEqual_theta_1_2_p1 = 0.3125;
inline constexpr double kTwoEqual_theta_1_2_p0 = 0.046875;
inline constexpr double kKingston_1 = 0.76698835407943425294;
inline constexpr double kKingston_0_03 = 0.99251259350428668941;
inline constexpr double kKingston_5 = 0.25776953706030016386;
inline constexpr double kKingston_50 = 0.020417045555943987333;
inline constexpr double kBalding_3e8_1e_10 = 0.94218012965733253265;
inline constexpr double kBirthdayExact_754e6_65493 = 0.94183225208985434438;
inline constexpr double kBirthdayApprox_754e6_65493 = 0.94182998778130241702;

} // namespace golden
