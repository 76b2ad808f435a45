#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fgcount {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(std::uint64_t exponent) {
  BigInt r = 1;
  r <<= static_cast<unsigned>(exponent);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Lossy conversion for error metrics; exact values stay in BigInt.
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

}  // namespace fgcount
