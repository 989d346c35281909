#include "picard/residue.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace picard {

ResidueRing::ResidueRing(Rng modulus) : d_(modulus.d), mod_(canonical_associate(modulus)) {
    if (mod_.is_zero()) throw std::runtime_error("residue ring needs nonzero modulus");
    // lattice N*O has Z-basis N*1 and N*w; columns in (s,t) coordinates
    Rng g1 = mod_;
    Rng g2 = mod_ * ring_omega(d_);
    // column HNF of [[g1.s, g2.s],[g1.t, g2.t]]: find c = gcd of t-row,
    // a = generator of s-values with t = 0, b = s-value above c.
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    Int t0 = g1.t, t1 = g2.t;
    while (t1 != 0) {  // extended gcd on the t-row
        Int q = floor_div(t0, t1);
        Int t2 = t0 - q * t1, x2 = x0 - q * x1, y2 = y0 - q * y1;
        t0 = t1; t1 = t2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    // the t-row (g1.t, g2.t) is never identically zero for a nonzero modulus
    c_ = t0;
    b_ = x0 * g1.s + y0 * g2.s;
    // kernel direction of the t-row gives the pure-s column
    Int ks = g2.t / c_, kt = -g1.t / c_;
    a_ = abs(ks * g1.s + kt * g2.s);
    if (c_ < 0) { c_ = -c_; b_ = -b_; }
    assert(a_ > 0 && c_ > 0);
    b_ = mod_floor(b_, a_);
    assert(a_ * c_ == norm(mod_));
}

Rng ResidueRing::reduce(const Rng& x) const {
    assert(x.d == d_);
    Int k = floor_div(x.t, c_);
    Int t = x.t - k * c_;
    Int s = x.s - k * b_;
    s = mod_floor(s, a_);
    return Rng(s, t, d_);
}

bool ResidueRing::invertible(const Rng& x) const {
    Rng r = reduce(x);
    if (r.is_zero()) return norm(mod_) == 1;
    return is_unit(ring_gcd(r, mod_));
}

std::optional<Rng> ResidueRing::invert(const Rng& x) const {
    if (norm(mod_) == 1) return ring_zero(d_);
    Rng r = reduce(x);
    if (r.is_zero()) return std::nullopt;
    Rng u, v;
    Rng g = ring_xgcd(r, mod_, u, v);
    if (!is_unit(g)) return std::nullopt;
    // u*r = g mod N, so r^{-1} = u * g^{-1}; unit inverse is its conjugate
    // times 1/norm = conjugate (norm 1)
    Rng ginv = conj(g);
    return reduce(u * ginv);
}

std::vector<Rng> ResidueRing::elements() const {
    std::vector<Rng> out;
    out.reserve(static_cast<std::size_t>(a_ * c_));
    for (Int t = 0; t < c_; ++t)
        for (Int s = 0; s < a_; ++s) out.push_back(Rng(s, t, d_));
    return out;
}

const std::vector<Rng>& ResidueRing::unit_reps() const {
    if (units_.empty()) {
        for (const Rng& e : elements())
            if (invertible(e)) units_.push_back(e);
    }
    return units_;
}

std::size_t ResidueRing::index(const Rng& reduced) const {
    return static_cast<std::size_t>(reduced.s + reduced.t * a_);
}

bool is_primitive_triple(const ResidueRing& R, const std::array<Rng, 3>& x) {
    Rng g = R.modulus();
    for (const Rng& xi : x)
        if (!xi.is_zero()) g = ring_gcd(g, xi);
    return is_unit(g);
}

ProjPoint canonical_proj(const ResidueRing& R, const std::array<Rng, 3>& x) {
    ProjPoint best;
    bool first = true;
    for (const Rng& u : R.unit_reps()) {
        ProjPoint cand{{R.mul(u, x[0]), R.mul(u, x[1]), R.mul(u, x[2])}};
        if (first || cand < best) {
            best = cand;
            first = false;
        }
    }
    if (first) {  // ring of cardinality 1
        best = ProjPoint{{R.reduce(x[0]), R.reduce(x[1]), R.reduce(x[2])}};
    }
    return best;
}

std::vector<ProjPoint> projective_points(const ResidueRing& R) {
    std::set<ProjPoint> pts;
    auto elems = R.elements();
    for (const Rng& a : elems)
        for (const Rng& b : elems)
            for (const Rng& c : elems) {
                std::array<Rng, 3> x{a, b, c};
                if (!is_primitive_triple(R, x)) continue;
                pts.insert(canonical_proj(R, x));
            }
    return std::vector<ProjPoint>(pts.begin(), pts.end());
}

std::size_t hash_value(const ProjPoint& p) {
    std::size_t h = 0;
    for (const Rng& c : p.x) hash_mix(h, hash_value(c));
    return h;
}

}  // namespace picard
