#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace entcap {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

// JSON number when the value fits in 64 bits, decimal string otherwise.
inline nlohmann::ordered_json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(UINT64_MAX)) {
    return nlohmann::ordered_json(static_cast<std::uint64_t>(v));
  }
  return nlohmann::ordered_json(v.str());
}

inline BigInt pow_big(std::uint64_t base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace entcap
