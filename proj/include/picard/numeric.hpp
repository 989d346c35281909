#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace picard {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

// nearest integer to a rational, ties toward +infinity
inline Int round_nearest(const Rat& r) {
    Int num = numerator(r), den = denominator(r);  // den > 0
    return floor_div(2 * num + den, 2 * den);
}

inline Int floor_rat(const Rat& r) { return floor_div(numerator(r), denominator(r)); }
inline Int ceil_rat(const Rat& r) { return -floor_div(-numerator(r), denominator(r)); }

inline void hash_mix(std::size_t& h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

inline std::size_t hash_int(const Int& n) {
    std::size_t h = n < 0 ? 0x5bd1e995 : 0;
    Int a = abs(n);
    while (a != 0) {
        hash_mix(h, static_cast<std::size_t>(static_cast<std::uint64_t>(a & 0xffffffffffffffffULL)));
        a >>= 64;
    }
    return h;
}

// parse "p" or "p/q" with optional sign
Rat parse_rational(const std::string& s);

std::string rat_to_string(const Rat& r);

}  // namespace picard
