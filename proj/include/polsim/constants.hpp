#ifndef POLSIM_CONSTANTS_HPP_
#define POLSIM_CONSTANTS_HPP_

namespace polsim {

// SI values (CODATA). All rates in the library are angular (rad/s);
// Hz values are converted at the CLI boundary only.
inline constexpr double kSpeedOfLight = 2.99792458e8;   // m/s
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kEpsilon0 = 8.8541878128e-12;   // F/m
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace polsim

#endif  // POLSIM_CONSTANTS_HPP_
