#pragma once

// Generated by tests/oracles/freeze.py (mpmath, 25 digits).

namespace oracle {

inline constexpr double kBumpNormalization = 2.2671167396083264584;
inline constexpr double kBohmK_u2 = 0.25000209431630376505;
inline constexpr double kBohmK_u1 = 1.0000335101549040512;
inline constexpr double kBohmK_u08 = 1.5625818139050071413;
inline constexpr double kRhoAbsorbing_phi05 = 0.89436721488733733274;
inline constexpr double kVAbsorbing_phi05 = 0.078648585047227973718;
inline constexpr double kVAbsorbing_phi2 = 0.79205979532290378481;
inline constexpr double kRhoRepulsive_phim03 = 1.0847467691608615408;
inline constexpr double kRhoPlusTrapped_phi03 = 1.2162987091804310126;
inline constexpr double kSupBPolynomial = 1.2079982741997850961;

}  // namespace oracle
