#pragma once

namespace leofault::constants {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

// Mean spherical Earth radius used throughout unless overridden.
inline constexpr double kEarthRadiusKm = 6371.0;
// 3.986004418e14 m^3/s^2 expressed in km^3/s^2.
inline constexpr double kEarthMuKm3PerS2 = 398600.4418;
inline constexpr double kSiderealDayS = 86164.0905;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerYear = 365.25 * kSecondsPerDay;

}  // namespace leofault::constants
