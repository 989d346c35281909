#include "doctest.h"

#include <random>

#include "picard/generators.hpp"
#include "picard/linalg.hpp"

using namespace picard;

TEST_CASE("form values on basis vectors") {
    for (int d : {1, 3}) {
        Vec3 e1{{ring_one(d), ring_zero(d), ring_zero(d)}};
        Vec3 e2{{ring_zero(d), ring_one(d), ring_zero(d)}};
        Vec3 e3{{ring_zero(d), ring_zero(d), ring_one(d)}};
        CHECK(form_value(e1, e1).is_zero());
        CHECK(form_value(e2, e2) == fld_one(d));
        // Q(e1,e3) = 1/sqrt(D), so |D| * |Q|^2 = 1
        Rat q2 = form_norm2(e1, e3);
        CHECK(Rat(-Field::get(d).D) * q2 == 1);
        // hermitian symmetry on random integral vectors
        std::mt19937 rg(5);
        std::uniform_int_distribution<int> u(-4, 4);
        for (int k = 0; k < 25; ++k) {
            Vec3 a{{Rng(u(rg), u(rg), d), Rng(u(rg), u(rg), d), Rng(u(rg), u(rg), d)}};
            Vec3 b{{Rng(u(rg), u(rg), d), Rng(u(rg), u(rg), d), Rng(u(rg), u(rg), d)}};
            CHECK(form_value(a, b) == conj(form_value(b, a)));
        }
    }
}

TEST_CASE("membership of named generators") {
    for (int d : {1, 3}) {
        CHECK(is_member(mat_identity(d)));
        GeneratorData gd = load_generators(d);  // throws if any fails
        CHECK(gd.elems.size() >= 3);
        for (const auto& e : gd.elems) CHECK(is_member(e.g));
    }
    // d=3: diag(zeta,1,1) has det zeta != 1
    Mat3 bad = mat_identity(3);
    bad.at(0, 0) = ring_root(3);
    CHECK(!is_member(bad));
}

TEST_CASE("closure orders") {
    CHECK(closure({mat_identity(3)}).order() == 1);
    GeneratorData gd = load_generators(3);
    // eps*w generates a cyclic group of order 12
    Mat3 ew = gd.by_name("eps") * gd.by_name("w");
    CHECK(closure({ew}).order() == 12);
    // gamma1, gamma2 generate a group of order 24
    FiniteGroup s8 = closure({gd.by_name("gamma1"), gd.by_name("gamma2")});
    CHECK(s8.order() == 24);
    // nonabelian, and contains the central eps^2
    Mat3 eps2 = gd.by_name("eps") * gd.by_name("eps");
    CHECK(s8.contains(eps2));
    bool abelian = true;
    for (const Mat3& a : s8.elems) {
        for (const Mat3& b : s8.elems)
            if (!(a * b == b * a)) {
                abelian = false;
                break;
            }
        if (!abelian) break;
    }
    CHECK(!abelian);
}

TEST_CASE("closure independent of generator order") {
    GeneratorData gd = load_generators(3);
    Mat3 eps2 = gd.by_name("eps") * gd.by_name("eps");
    std::vector<Mat3> gens{gd.by_name("gamma1"), gd.by_name("gamma2"), eps2};
    FiniteGroup base = closure(gens);
    std::mt19937 rg(3);
    for (int k = 0; k < 10; ++k) {
        std::shuffle(gens.begin(), gens.end(), rg);
        FiniteGroup other = closure(gens);
        REQUIRE(other.order() == base.order());
        for (const Mat3& g : other.elems) CHECK(base.contains(g));
    }
}

TEST_CASE("eps^2 is central scalar of order 3 (d=3)") {
    Mat3 eps = elem_eps(3);
    Mat3 eps2 = eps * eps;
    Rng z2 = ring_root(3) * ring_root(3);
    CHECK(eps2 == scalar_mat(z2, 3));
    CHECK(closure({eps2}).order() == 3);
}

TEST_CASE("reduction is a homomorphism") {
    std::mt19937 rg(9);
    for (int d : {1, 3}) {
        GeneratorData gd = load_generators(d);
        auto gens = gd.matrices();
        ResidueRing R(d == 1 ? Rng(2, 1, 1) + ring_one(1) : ring_int(2, 3));
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int k = 0; k < 100; ++k) {
            // random words of length <= 4
            Mat3 a = mat_identity(d), b = mat_identity(d);
            for (int j = 0; j < 3; ++j) a = a * gens[pick(rg)];
            for (int j = 0; j < 2; ++j) b = b * gens[pick(rg)];
            CHECK(reduce_mod(a * b, R) == res_mul(reduce_mod(a, R), reduce_mod(b, R), R));
        }
    }
}

TEST_CASE("reduce of eps^2 mod 2 is scalar (d=3)") {
    Mat3 eps2 = elem_eps(3) * elem_eps(3);
    ResidueRing R(ring_int(2, 3));
    ResMat m = reduce_mod(eps2, R);
    Rng z2 = R.reduce(ring_root(3) * ring_root(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m.e[3 * i + j] == (i == j ? z2 : ring_zero(3)));
}

TEST_CASE("row action") {
    for (int d : {1, 3}) {
        ResidueRing R(d == 1 ? Rng(3, 0, 1) : Rng(2, 0, 3));
        std::array<Rng, 3> base{ring_zero(d), ring_zero(d), ring_one(d)};
        // identity and tau fix (0,0,1)
        CHECK(res_row_mul(base, reduce_mod(mat_identity(d), R), R) == base);
        CHECK(res_row_mul(base, reduce_mod(elem_tau(d), R), R) == base);
        // (1,0,0) * w = (0,0,-1)
        std::array<Rng, 3> e1{ring_one(d), ring_zero(d), ring_zero(d)};
        std::array<Rng, 3> want{ring_zero(d), ring_zero(d), R.reduce(-ring_one(d))};
        CHECK(res_row_mul(e1, reduce_mod(elem_w(d), R), R) == want);
        // associativity with multiplication on random generator words
        GeneratorData gd = load_generators(d);
        auto gens = gd.matrices();
        std::mt19937 rg(31);
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int k = 0; k < 50; ++k) {
            const Mat3 &g = gens[pick(rg)], &h = gens[pick(rg)];
            auto lhs = res_row_mul(res_row_mul(base, reduce_mod(g, R), R), reduce_mod(h, R), R);
            auto rhs = res_row_mul(base, reduce_mod(g * h, R), R);
            CHECK(lhs == rhs);
        }
    }
}
