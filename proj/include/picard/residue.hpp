#pragma once

// Residue rings O/N with canonical representatives, unit enumeration, and
// projective points over O/N (primitive triples modulo invertible scalars).

#include <optional>
#include <vector>

#include "picard/field.hpp"

namespace picard {

class ResidueRing {
public:
    ResidueRing(Rng modulus);

    int d() const { return d_; }
    const Rng& modulus() const { return mod_; }
    Int cardinality() const { return a_ * c_; }

    // canonical representative of the class of x: coordinates reduced
    // against the column normal form of the lattice N*O
    Rng reduce(const Rng& x) const;

    Rng add(const Rng& x, const Rng& y) const { return reduce(x + y); }
    Rng sub(const Rng& x, const Rng& y) const { return reduce(x - y); }
    Rng mul(const Rng& x, const Rng& y) const { return reduce(x * y); }
    Rng neg(const Rng& x) const { return reduce(-x); }

    bool is_zero(const Rng& x) const { return reduce(x).is_zero(); }
    // x invertible mod N iff gcd(x, N) is a unit
    bool invertible(const Rng& x) const;
    std::optional<Rng> invert(const Rng& x) const;

    std::vector<Rng> elements() const;       // all canonical representatives
    const std::vector<Rng>& unit_reps() const;  // invertible residues (cached)

    // dense index of a canonical representative, in [0, cardinality)
    std::size_t index(const Rng& reduced) const;
    std::size_t index_count() const { return static_cast<std::size_t>(a_ * c_); }

private:
    int d_;
    Rng mod_;
    // column normal form of N*O in the (1, w) basis: columns (a,0), (b,c)
    Int a_, b_, c_;
    mutable std::vector<Rng> units_;
};

// primitive projective triple [x1:x2:x3] over O/N in canonical form
struct ProjPoint {
    std::array<Rng, 3> x;
    friend bool operator==(const ProjPoint& p, const ProjPoint& q) { return p.x == q.x; }
    friend bool operator<(const ProjPoint& p, const ProjPoint& q) {
        for (int i = 0; i < 3; ++i) {
            if (p.x[i] < q.x[i]) return true;
            if (q.x[i] < p.x[i]) return false;
        }
        return false;
    }
};

// triple primitive iff the ideal (x1,x2,x3,N) is all of O
bool is_primitive_triple(const ResidueRing& R, const std::array<Rng, 3>& x);

// lexicographically least among scalar multiples by invertible residues
ProjPoint canonical_proj(const ResidueRing& R, const std::array<Rng, 3>& x);

// all points of P^2(O/N)
std::vector<ProjPoint> projective_points(const ResidueRing& R);

std::size_t hash_value(const ProjPoint& p);

}  // namespace picard
