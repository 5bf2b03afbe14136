#pragma once

namespace cavent::units {

// Exact SI speed of light. Internally everything is in natural units
// (c = 1): times in seconds, lengths in light-seconds, accelerations
// in 1/s. Conversions live only at the CLI/reporting boundary.
inline constexpr double c_m_per_s = 299792458.0;

inline constexpr double length_si_to_natural(double meters) { return meters / c_m_per_s; }
inline constexpr double length_natural_to_si(double light_seconds) { return light_seconds * c_m_per_s; }

inline constexpr double accel_si_to_natural(double m_per_s2) { return m_per_s2 / c_m_per_s; }
inline constexpr double accel_natural_to_si(double per_s) { return per_s * c_m_per_s; }

}  // namespace cavent::units
