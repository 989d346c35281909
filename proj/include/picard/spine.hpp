#pragma once

// The analytic layer: Siegel-domain points, exhaustion functions, first
// contacts, enumeration of primitive isotropic vectors in bounded regions,
// and the bounded search for admissible sets of cusps.
//
// Conventions.  A cusp is indexed by a primitive isotropic column vector
// (n, p, q) up to units.  In horospherical coordinates x = (y, b1, b2, r)
// with beta = b1 + i b2 and B = y^2 + |beta|^2 / (2 sqrt|D|), the height of
// x seen from the cusp is  y / den  with
//     den = | q (r - i B) + p beta - n |.
// The base cusp (1,0,0) has den = 1, so the spine condition "all cusps of
// the set tie and dominate" becomes den_v = 1 on the set and den_w >= 1
// for every competitor w.

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "picard/linalg.hpp"

namespace picard {

struct SiegelPoint {
    double y = 1, b1 = 0, b2 = 0, r = 0;

    std::complex<double> z(int d) const;
    std::complex<double> u(int d) const;
    std::complex<double> beta() const { return {b1, b2}; }
    double big_b(int d) const;  // B = Im z

    static SiegelPoint from_zu(std::complex<double> z, std::complex<double> u, int d);
};

// canonical unit-scaled representative of (n, p, q)
Vec3 canonical_vector(const Vec3& v);
Vec3 base_cusp(int d);   // (1,0,0)
Vec3 cusp_at_zero(int d);  // (0,0,1)

// exact test of the isotropy condition Q(v,v) = 0
bool is_isotropic(const Vec3& v);
bool is_primitive(const Vec3& v);

// denominator q (r - iB) + p beta - n of the exhaustion quotient
std::complex<double> cusp_den(const Vec3& v, const SiegelPoint& x);

// exhaustion value f_v(x); throws if x lies on the boundary hyperplane
double exhaustion(const Vec3& v, const SiegelPoint& x);

// action of a group element on the Siegel domain (numeric)
SiegelPoint siegel_act(const Mat3& g, const SiegelPoint& x, int d);

struct FirstContact {
    std::optional<SiegelPoint> point;  // exact-construction point when v = (1,0,0)
    Rat height4;                       // height^4 = 1 / (|D| |Q(v,w)|^2), exact
};

// first contact data of the pair {v, w}; throws if Q(v, w) = 0
FirstContact first_contact(const Vec3& v, const Vec3& w);

// STANDARD when |Q|^2 = 1/|D| (the pair is equivalent to the standard one)
struct PairClass {
    bool standard;
    Rat qnorm2;
};
PairClass classify_pair(const Vec3& v, const Vec3& w);

// A finite set of cusp vectors containing the base cusp, kept sorted in
// canonical form, with the pairwise |Q|^2 table cached.
struct AdmSet {
    std::vector<Vec3> vecs;                 // canonical, sorted, vecs[0] may be any
    std::vector<std::vector<Rat>> qnorm2;   // pairwise table

    static AdmSet make(std::vector<Vec3> vs);
    AdmSet with(const Vec3& w) const;
    std::size_t size() const { return vecs.size(); }
    bool contains(const Vec3& canonical) const;
    std::string key() const;
    int span_dim() const;
    // sorted multiset of pairwise |Q|^2 values
    std::vector<Rat> profile() const;
};

// enumeration of primitive isotropic vectors (n,p,q), q != 0, with
// norm(q) <= qnorm_max, coordinates of p/q in the (1,w)-basis inside
// [alo, ahi] x [blo, bhi], and Re(n/q) in [relo, rehi]
std::vector<Vec3> isotropic_window(int d, const Rat& qnorm_max, const Rat& alo, const Rat& ahi,
                                   const Rat& blo, const Rat& bhi, const Rat& relo,
                                   const Rat& rehi);

// candidate partners v of the base cusp with pair height >= floor:
// norm(q) <= 1/floor^4, p/q in the closed fundamental parallelogram,
// Re(n/q) in [0,1]
std::vector<Vec3> candidate_pairs(int d, const Rat& floor_mu);

// all cusps w (beyond the set) with den_w(x)^2 <= 1 + slack
std::vector<Vec3> local_competitors(const AdmSet& I, const SiegelPoint& x, double slack);

// witness search verdict
struct Witness {
    bool tie_ok = false;    // tie residual below tolerance
    double tie_residual = 1e9;
    double margin = -1e9;   // min over competitors of den^2 - 1 at the point
    SiegelPoint x;
};

struct WitnessParams {
    double tie_tol = 1e-9;
    double strong_margin = 1e-6;
    double grow_margin = -1e-4;
    int climb_steps = 400;
};

// Searches the tie locus of I for a point maximizing the competitor margin.
// I must contain the base cusp (1,0,0); an optional start hint (typically a
// witness of a subset) seeds the solver.
Witness find_witness(const AdmSet& I, const Rat& floor_mu, const WitnessParams& wp = {},
                     const SiegelPoint* hint = nullptr);

bool is_strongly_admissible(const AdmSet& I, const Rat& floor_mu, Witness* out = nullptr,
                            const WitnessParams& wp = {});

// every strongly admissible strict superset of I obtainable from the
// candidate pool (complete relative to the floor)
std::vector<AdmSet> admissible_supersets(const AdmSet& I, const Rat& floor_mu);

// full census: all admissible sets containing the base cusp, grown one
// vector at a time through admissible intermediates, with strength verdicts
struct CensusEntry {
    AdmSet set;
    Witness witness;
    bool strong;
};

struct Census {
    int d;
    Rat floor_mu;
    std::vector<CensusEntry> entries;            // every admissible set found
    std::vector<std::size_t> strong;             // indices of strongly admissible ones
};

Census run_census(int d, const Rat& floor_mu, int threads = 1);

Rat default_floor(int d);

}  // namespace picard
