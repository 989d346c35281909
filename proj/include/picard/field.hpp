#pragma once

// Exact arithmetic in the imaginary quadratic fields k = Q(sqrt(D)) with
// class number one and Euclidean ring of integers, for D = -4 (d = 1,
// Gaussian) and D = -3 (d = 3, Eisenstein).  The ring O is Z[w] with
// w = (D + sqrt(D))/2, so w^2 = D*w + c0 where c0 = -(D^2 - D)/4.

#include <array>
#include <complex>
#include <compare>
#include <iosfwd>
#include <optional>
#include <vector>

#include "picard/numeric.hpp"

namespace picard {

struct Rng;

struct Field {
    int d;        // 1 or 3
    int D;        // discriminant: -4 or -3
    Int c0;       // w^2 = D*w + c0
    double sqrt_abs_d;  // sqrt(|D|)
    std::vector<Rng> units;

    static const Field& get(int d);
};

// element s + t*w of O
struct Rng {
    Int s, t;
    int d = 0;

    Rng() = default;
    Rng(Int s_, Int t_, int d_) : s(std::move(s_)), t(std::move(t_)), d(d_) {}

    bool is_zero() const { return s == 0 && t == 0; }
    friend bool operator==(const Rng& a, const Rng& b) { return a.s == b.s && a.t == b.t; }
    friend bool operator!=(const Rng& a, const Rng& b) { return !(a == b); }
    // total order on coordinates, used for canonical representatives
    friend bool operator<(const Rng& a, const Rng& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    }
};

Rng operator+(const Rng& a, const Rng& b);
Rng operator-(const Rng& a, const Rng& b);
Rng operator-(const Rng& a);
Rng operator*(const Rng& a, const Rng& b);

inline Rng ring_zero(int d) { return Rng(0, 0, d); }
inline Rng ring_one(int d) { return Rng(1, 0, d); }
inline Rng ring_int(Int n, int d) { return Rng(std::move(n), 0, d); }
Rng ring_omega(int d);
// the distinguished unit of maximal order: i for d=1, zeta = w+2 for d=3
Rng ring_root(int d);
Rng ring_sqrtD(int d);  // sqrt(D) = 2w - D

Rng conj(const Rng& a);
Int norm(const Rng& a);
bool is_unit(const Rng& a);

// exact division test / quotient
bool divides(const Rng& a, const Rng& b);            // a | b
std::optional<Rng> div_exact(const Rng& a, const Rng& b);  // a/b if exact

// Euclidean division by rounding coordinates of a/b to nearest integers;
// for d in {1,3} this always strictly reduces the norm.
Rng euclid_quot(const Rng& a, const Rng& b);

// generator of (a,b), normalized to the canonical associate
Rng ring_gcd(Rng a, Rng b);
// g = gcd, x*a + y*b = g (g canonical associate)
Rng ring_xgcd(const Rng& a, const Rng& b, Rng& x, Rng& y);

// least associate under the (norm, s, t) order; optionally reports the unit
// u with canonical = u * a
Rng canonical_associate(const Rng& a, Rng* unit_out = nullptr);

std::complex<double> embed(const Rng& a);

std::string to_string(const Rng& a);          // "s+t*w"
std::string to_string_pretty(const Rng& a);   // human form over i / sqrt(-3)
std::ostream& operator<<(std::ostream& os, const Rng& a);

std::size_t hash_value(const Rng& a);

// element x + y*sqrt(D) of k
struct Fld {
    Rat x, y;
    int d = 0;

    Fld() = default;
    Fld(Rat x_, Rat y_, int d_) : x(std::move(x_)), y(std::move(y_)), d(d_) {}

    bool is_zero() const { return x == 0 && y == 0; }
    friend bool operator==(const Fld& a, const Fld& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Fld& a, const Fld& b) { return !(a == b); }
};

Fld operator+(const Fld& a, const Fld& b);
Fld operator-(const Fld& a, const Fld& b);
Fld operator-(const Fld& a);
Fld operator*(const Fld& a, const Fld& b);
Fld operator/(const Fld& a, const Fld& b);

inline Fld fld_zero(int d) { return Fld(0, 0, d); }
inline Fld fld_one(int d) { return Fld(1, 0, d); }
Fld fld_sqrtD(int d);
Fld inv_sqrtD(int d);  // 1/sqrt(D) = sqrt(D)/D

Fld conj(const Fld& a);
Rat norm(const Fld& a);  // x^2 + |D| y^2

Fld to_fld(const Rng& a);
// exact conversion back to O; nullopt if not integral
std::optional<Rng> to_ring(const Fld& a);

std::complex<double> embed(const Fld& a);

std::string to_string(const Fld& a);  // "x+y*sqrt(D)"
std::ostream& operator<<(std::ostream& os, const Fld& a);

// Parse ring/field element text.  Accepts sums of terms over the symbols
// w, i (d=1), sqrt(-3)/sqrt(-4)/sqrt(D), with exact rational coefficients,
// e.g. "2", "1+1*i", "2+1*sqrt(-3)", "3+-1*w", "7/2+1/2*sqrt(-3)".
Fld parse_field_element(const std::string& text, int d);
// same, demanding integrality
Rng parse_ring_element(const std::string& text, int d);

}  // namespace picard
