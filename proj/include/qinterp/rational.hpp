#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qinterp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "num/den" in lowest terms; integers keep the "/1" so the format is uniform.
inline std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace qinterp
