#include "picard/field.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace picard {

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::runtime_error("bad rational: '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

static Field make_field(int d) {
    Field f;
    f.d = d;
    if (d == 1) {
        f.D = -4;
        f.c0 = -5;
    } else if (d == 3) {
        f.D = -3;
        f.c0 = -3;
    } else {
        throw std::runtime_error("unsupported field d=" + std::to_string(d));
    }
    f.sqrt_abs_d = std::sqrt(static_cast<double>(-f.D));
    // powers of the root of unity (2,1), multiplied without Field::get to
    // avoid re-entering the singleton initializer
    auto mul = [&](const Rng& a, const Rng& b) {
        return Rng(a.s * b.s + a.t * b.t * f.c0, a.s * b.t + a.t * b.s + a.t * b.t * f.D, d);
    };
    Rng r(2, 1, d);
    Rng u(1, 0, d);
    int order = d == 1 ? 4 : 6;
    for (int k = 0; k < order; ++k) {
        f.units.push_back(u);
        u = mul(u, r);
    }
    assert(u == Rng(1, 0, d));
    return f;
}

const Field& Field::get(int d) {
    static const Field f1 = make_field(1);
    static const Field f3 = make_field(3);
    if (d == 1) return f1;
    if (d == 3) return f3;
    throw std::runtime_error("unsupported field d=" + std::to_string(d));
}

Rng operator+(const Rng& a, const Rng& b) {
    assert(a.d == b.d);
    return Rng(a.s + b.s, a.t + b.t, a.d);
}
Rng operator-(const Rng& a, const Rng& b) {
    assert(a.d == b.d);
    return Rng(a.s - b.s, a.t - b.t, a.d);
}
Rng operator-(const Rng& a) { return Rng(-a.s, -a.t, a.d); }

Rng operator*(const Rng& a, const Rng& b) {
    assert(a.d == b.d);
    const Field& f = Field::get(a.d);
    // (s1+t1 w)(s2+t2 w), w^2 = D w + c0
    Int s = a.s * b.s + a.t * b.t * f.c0;
    Int t = a.s * b.t + a.t * b.s + a.t * b.t * f.D;
    return Rng(s, t, a.d);
}

Rng ring_omega(int d) { return Rng(0, 1, d); }

Rng ring_root(int d) {
    // i = w + 2 for d=1 (w = -2+i); zeta = w + 2 for d=3 (w = (-3+sqrt(-3))/2)
    return Rng(2, 1, d);
}

Rng ring_sqrtD(int d) {
    const Field& f = Field::get(d);
    return Rng(-f.D, 2, d);
}

Rng conj(const Rng& a) {
    const Field& f = Field::get(a.d);
    return Rng(a.s + a.t * f.D, -a.t, a.d);
}

Int norm(const Rng& a) {
    const Field& f = Field::get(a.d);
    return a.s * a.s + a.s * a.t * f.D - a.t * a.t * f.c0;
}

bool is_unit(const Rng& a) { return norm(a) == 1; }

bool divides(const Rng& a, const Rng& b) { return div_exact(a, b).has_value(); }

std::optional<Rng> div_exact(const Rng& a, const Rng& b) {
    if (a.is_zero()) {
        if (b.is_zero()) return ring_zero(a.d);
        return std::nullopt;
    }
    Rng num = b * conj(a);
    Int n = norm(a);
    if (num.s % n != 0 || num.t % n != 0) return std::nullopt;
    return Rng(num.s / n, num.t / n, a.d);
}

Rng euclid_quot(const Rng& a, const Rng& b) {
    assert(!b.is_zero());
    Rng num = a * conj(b);
    Int n = norm(b);
    Int qs = round_nearest(Rat(num.s, n));
    Int qt = round_nearest(Rat(num.t, n));
    return Rng(qs, qt, a.d);
}

Rng ring_gcd(Rng a, Rng b) {
    if (a.is_zero() && b.is_zero()) throw std::runtime_error("gcd(0,0) undefined");
    while (!b.is_zero()) {
        Rng q = euclid_quot(a, b);
        Rng r = a - q * b;
        assert(r.is_zero() || norm(r) < norm(b));
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

Rng ring_xgcd(const Rng& a, const Rng& b, Rng& x, Rng& y) {
    if (a.is_zero() && b.is_zero()) throw std::runtime_error("gcd(0,0) undefined");
    int d = a.d;
    Rng r0 = a, r1 = b;
    Rng x0 = ring_one(d), y0 = ring_zero(d);
    Rng x1 = ring_zero(d), y1 = ring_one(d);
    while (!r1.is_zero()) {
        Rng q = euclid_quot(r0, r1);
        Rng r2 = r0 - q * r1;
        Rng x2 = x0 - q * x1;
        Rng y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    Rng u;
    Rng g = canonical_associate(r0, &u);
    x = u * x0;
    y = u * y0;
    return g;
}

Rng canonical_associate(const Rng& a, Rng* unit_out) {
    const Field& f = Field::get(a.d);
    Rng best = a;
    Rng bestu = ring_one(a.d);
    for (const Rng& u : f.units) {
        Rng c = u * a;
        if (c < best) {
            best = c;
            bestu = u;
        }
    }
    if (unit_out) *unit_out = bestu;
    return best;
}

std::complex<double> embed(const Rng& a) { return embed(to_fld(a)); }

std::string to_string(const Rng& a) {
    std::ostringstream os;
    os << a.s << "+" << a.t << "*w";
    return os.str();
}

std::string to_string_pretty(const Rng& a) {
    Fld v = to_fld(a);
    std::ostringstream os;
    const char* sym = a.d == 1 ? "i" : "sqrt(-3)";
    Rat y = v.y;
    if (a.d == 1) y *= 2;  // i = sqrt(-4)/2
    if (y == 0) return rat_to_string(v.x);
    if (v.x == 0) {
        if (y == 1) return sym;
        return rat_to_string(y) + "*" + sym;
    }
    os << rat_to_string(v.x) << (y > 0 ? "+" : "") << rat_to_string(y) << "*" << sym;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rng& a) { return os << to_string(a); }

std::size_t hash_value(const Rng& a) {
    std::size_t h = hash_int(a.s);
    hash_mix(h, hash_int(a.t));
    return h;
}

Fld operator+(const Fld& a, const Fld& b) {
    assert(a.d == b.d);
    return Fld(a.x + b.x, a.y + b.y, a.d);
}
Fld operator-(const Fld& a, const Fld& b) {
    assert(a.d == b.d);
    return Fld(a.x - b.x, a.y - b.y, a.d);
}
Fld operator-(const Fld& a) { return Fld(-a.x, -a.y, a.d); }

Fld operator*(const Fld& a, const Fld& b) {
    assert(a.d == b.d);
    int D = Field::get(a.d).D;
    return Fld(a.x * b.x + Rat(D) * a.y * b.y, a.x * b.y + a.y * b.x, a.d);
}

Fld operator/(const Fld& a, const Fld& b) {
    if (b.is_zero()) throw std::runtime_error("field division by zero");
    Fld c = conj(b);
    Rat n = norm(b);
    Fld num = a * c;
    return Fld(num.x / n, num.y / n, a.d);
}

Fld fld_sqrtD(int d) { return Fld(0, 1, d); }

Fld inv_sqrtD(int d) {
    int D = Field::get(d).D;
    return Fld(0, Rat(1) / Rat(D), d);
}

Fld conj(const Fld& a) { return Fld(a.x, -a.y, a.d); }

Rat norm(const Fld& a) {
    int D = Field::get(a.d).D;
    return a.x * a.x - Rat(D) * a.y * a.y;
}

Fld to_fld(const Rng& a) {
    // s + t*w = (s + t*D/2) + (t/2) sqrt(D)
    int D = Field::get(a.d).D;
    return Fld(Rat(a.s) + Rat(a.t * D, 2), Rat(a.t, 2), a.d);
}

std::optional<Rng> to_ring(const Fld& a) {
    // t = 2y, s = x - y*D
    int D = Field::get(a.d).D;
    Rat t = 2 * a.y;
    Rat s = a.x - a.y * Rat(D);
    if (denominator(t) != 1 || denominator(s) != 1) return std::nullopt;
    return Rng(numerator(s), numerator(t), a.d);
}

std::complex<double> embed(const Fld& a) {
    const Field& f = Field::get(a.d);
    return {to_double(a.x), to_double(a.y) * f.sqrt_abs_d};
}

std::string to_string(const Fld& a) {
    std::ostringstream os;
    os << rat_to_string(a.x) << "+" << rat_to_string(a.y) << "*sqrt(" << Field::get(a.d).D << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Fld& a) { return os << to_string(a); }

namespace {

// one term of the element grammar: [rat] [* symbol]
struct Term {
    Rat coeff;
    std::string sym;  // "", "w", "i", "sqrt"
    int sqrt_arg = 0;
};

std::vector<Term> tokenize_terms(const std::string& text) {
    std::vector<Term> out;
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::runtime_error("empty element text");
    std::size_t i = 0;
    while (i < s.size()) {
        Term t;
        t.coeff = 1;
        bool neg = false;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') neg = !neg;
            ++i;
        }
        // optional rational
        std::size_t j = i;
        while (j < s.size() && (isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        bool have_num = j > i;
        if (have_num) {
            t.coeff = parse_rational(s.substr(i, j - i));
            i = j;
        }
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] != '+' && s[i] != '-') {
            if (s[i] == 'w') {
                t.sym = "w";
                ++i;
            } else if (s[i] == 'i') {
                t.sym = "i";
                ++i;
            } else if (s.compare(i, 5, "sqrt(") == 0) {
                std::size_t close = s.find(')', i);
                if (close == std::string::npos) throw std::runtime_error("unbalanced sqrt(");
                t.sym = "sqrt";
                t.sqrt_arg = std::stoi(s.substr(i + 5, close - i - 5));
                i = close + 1;
            } else {
                throw std::runtime_error("bad symbol in element text: '" + s + "'");
            }
        } else if (!have_num) {
            throw std::runtime_error("bad element text: '" + s + "'");
        }
        if (neg) t.coeff = -t.coeff;
        out.push_back(t);
    }
    return out;
}

}  // namespace

Fld parse_field_element(const std::string& text, int d) {
    const Field& f = Field::get(d);
    Fld acc = fld_zero(d);
    for (const Term& t : tokenize_terms(text)) {
        Fld base;
        if (t.sym.empty()) {
            base = fld_one(d);
        } else if (t.sym == "w") {
            base = to_fld(ring_omega(d));
        } else if (t.sym == "i") {
            if (d != 1) throw std::runtime_error("symbol i requires field d=1");
            base = Fld(0, Rat(1, 2), d);  // i = sqrt(-4)/2
        } else {
            if (t.sqrt_arg == f.D) {
                base = fld_sqrtD(d);
            } else if (t.sqrt_arg == -3 && d == 3) {
                base = fld_sqrtD(d);
            } else if (t.sqrt_arg == -1 && d == 1) {
                base = Fld(0, Rat(1, 2), d);
            } else {
                throw std::runtime_error("sqrt(" + std::to_string(t.sqrt_arg) +
                                         ") not valid for field d=" + std::to_string(d));
            }
        }
        acc = acc + Fld(t.coeff, 0, d) * base;
    }
    return acc;
}

Rng parse_ring_element(const std::string& text, int d) {
    auto r = to_ring(parse_field_element(text, d));
    if (!r) throw std::runtime_error("element '" + text + "' is not integral in O_k");
    return *r;
}

}  // namespace picard
