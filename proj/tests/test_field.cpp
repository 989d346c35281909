#include "doctest.h"

#include <random>
#include <set>

#include "picard/field.hpp"
#include "picard/residue.hpp"

using namespace picard;

static Rng rand_rng(std::mt19937& rng, int d, int lim = 9) {
    std::uniform_int_distribution<int> u(-lim, lim);
    return Rng(u(rng), u(rng), d);
}

TEST_CASE("field constants") {
    for (int d : {1, 3}) {
        const Field& f = Field::get(d);
        CHECK(f.units.size() == (d == 1 ? 4u : 6u));
        // w satisfies w^2 - D*w - c0 = 0
        Rng w = ring_omega(d);
        CHECK(w * w == ring_int(f.D, d) * w + ring_int(f.c0, d));
        for (const Rng& u : f.units) CHECK(norm(u) == 1);
    }
}

TEST_CASE("norm examples") {
    CHECK(norm(Fld(1, 0, 1)) == 1);
    // 1+i as field element: x=1, y=1/2 over sqrt(-4)
    Fld onepi(1, Rat(1, 2), 1);
    CHECK(norm(onepi) == 2);
    // zeta = (1+sqrt(-3))/2 is a unit
    Fld zeta(Rat(1, 2), Rat(1, 2), 3);
    CHECK(norm(zeta) == 1);
}

TEST_CASE("norm multiplicative") {
    std::mt19937 g(7);
    for (int d : {1, 3})
        for (int k = 0; k < 50; ++k) {
            Rng a = rand_rng(g, d), b = rand_rng(g, d);
            CHECK(norm(a * b) == norm(a) * norm(b));
            CHECK(norm(to_fld(a) * to_fld(b)) == Rat(norm(a)) * Rat(norm(b)));
        }
}

TEST_CASE("distinguished units") {
    // d=3: zeta = w+2 has zeta^6 = 1, zeta^3 = -1
    Rng z = ring_root(3);
    Rng p = ring_one(3);
    for (int i = 0; i < 3; ++i) p = p * z;
    CHECK(p == -ring_one(3));
    for (int i = 0; i < 3; ++i) p = p * z;
    CHECK(p == ring_one(3));
    // d=1: i^2 = -1
    Rng i1 = ring_root(1);
    CHECK(i1 * i1 == -ring_one(1));
    // sqrt(D)^2 = D
    for (int d : {1, 3})
        CHECK(ring_sqrtD(d) * ring_sqrtD(d) == ring_int(Field::get(d).D, d));
}

TEST_CASE("gcd basics") {
    // gcd(a, 0) is the canonical associate of a
    Rng a(3, 2, 1);
    CHECK(ring_gcd(a, ring_zero(1)) == canonical_associate(a));
    // d=1: gcd(1+i, 2) is an associate of 1+i  (2 = -i (1+i)^2)
    Rng onepi = ring_int(1, 1) + ring_root(1);
    Rng g = ring_gcd(onepi, ring_int(2, 1));
    CHECK(g == canonical_associate(onepi));
    CHECK(norm(g) == 2);
    // d=3: gcd(2,3) = 1
    Rng g2 = ring_gcd(ring_int(2, 3), ring_int(3, 3));
    CHECK(is_unit(g2));
}

TEST_CASE("gcd divides and xgcd") {
    std::mt19937 rg(11);
    for (int d : {1, 3})
        for (int k = 0; k < 40; ++k) {
            Rng a = rand_rng(rg, d), b = rand_rng(rg, d);
            if (a.is_zero() && b.is_zero()) continue;
            Rng g = ring_gcd(a, b);
            auto qa = div_exact(g, a), qb = div_exact(g, b);
            REQUIRE(qa.has_value());
            REQUIRE(qb.has_value());
            CHECK(*qa * g == a);
            CHECK(*qb * g == b);
            Rng x, y;
            Rng g2 = ring_xgcd(a, b, x, y);
            CHECK(g2 == g);
            CHECK(x * a + y * b == g);
        }
}

TEST_CASE("canonical associate idempotent and minimal") {
    std::mt19937 rg(13);
    for (int d : {1, 3})
        for (int k = 0; k < 30; ++k) {
            Rng a = rand_rng(rg, d);
            Rng c = canonical_associate(a);
            CHECK(canonical_associate(c) == c);
            CHECK(norm(c) == norm(a));
        }
}

TEST_CASE("residue ring cardinalities") {
    // d=1, N=1+i: two classes
    Rng onepi = ring_int(1, 1) + ring_root(1);
    CHECK(ResidueRing(onepi).cardinality() == 2);
    // d=3, N=2: four classes
    CHECK(ResidueRing(ring_int(2, 3)).cardinality() == 4);
    // unit modulus: trivial ring
    CHECK(ResidueRing(ring_root(1)).cardinality() == 1);
}

TEST_CASE("residue ring random moduli |O/N| = norm(N)") {
    std::mt19937 rg(17);
    for (int d : {1, 3}) {
        int done = 0;
        while (done < 20) {
            Rng n = rand_rng(rg, d, 6);
            if (n.is_zero()) continue;
            ResidueRing R(n);
            CHECK(R.cardinality() == norm(n));
            // reduce is idempotent and respects the ring operations
            Rng x = rand_rng(rg, d), y = rand_rng(rg, d);
            CHECK(R.reduce(R.reduce(x)) == R.reduce(x));
            CHECK(R.reduce(x + y) == R.add(R.reduce(x), R.reduce(y)));
            CHECK(R.reduce(x * y) == R.mul(R.reduce(x), R.reduce(y)));
            ++done;
        }
    }
}

TEST_CASE("residue inversion") {
    std::mt19937 rg(19);
    for (int d : {1, 3}) {
        Rng n = d == 1 ? Rng(3, 0, 1) : Rng(2, 0, 3);
        ResidueRing R(n);
        for (const Rng& x : R.elements()) {
            auto inv = R.invert(x);
            if (inv) CHECK(R.mul(x, *inv) == R.reduce(ring_one(d)));
            CHECK(inv.has_value() == R.invertible(x));
        }
    }
}

TEST_CASE("projective point counts") {
    // d=1, N=1+i: P^2(F_2) has 7 points
    ResidueRing R1(ring_int(1, 1) + ring_root(1));
    CHECK(projective_points(R1).size() == 7);
    // unit modulus: single point
    ResidueRing Ru(ring_root(1));
    CHECK(projective_points(Ru).size() == 1);
    // d=3, N=2: O/2 = F_4, P^2 has 21 points
    ResidueRing R3(ring_int(2, 3));
    CHECK(projective_points(R3).size() == 21);
}

TEST_CASE("projective canonicalization idempotent") {
    std::mt19937 rg(23);
    ResidueRing R(Rng(3, 1, 1));
    auto elems = R.elements();
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    int done = 0;
    while (done < 40) {
        std::array<Rng, 3> x{elems[pick(rg)], elems[pick(rg)], elems[pick(rg)]};
        if (!is_primitive_triple(R, x)) continue;
        ProjPoint p = canonical_proj(R, x);
        CHECK(canonical_proj(R, p.x) == p);
        ++done;
    }
}

TEST_CASE("element text round trip") {
    CHECK(parse_ring_element("2+1*sqrt(-3)", 3) == Rng(5, 2, 3));
    CHECK(parse_ring_element("1+1*i", 1) == Rng(3, 1, 1));
    CHECK(parse_ring_element("7/2+1/2*sqrt(-3)", 3) == Rng(5, 1, 3));
    CHECK(parse_ring_element("-1+0*w", 3) == -ring_one(3));
    for (int d : {1, 3}) {
        std::mt19937 rg(29 + d);
        for (int k = 0; k < 20; ++k) {
            Rng a = rand_rng(rg, d);
            CHECK(parse_ring_element(to_string(a), d) == a);
        }
    }
    CHECK_THROWS(parse_ring_element("1/2", 3));
    CHECK_THROWS(parse_ring_element("1+1*i", 3));
}
