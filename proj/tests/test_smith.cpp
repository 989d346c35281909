#include "doctest.h"

#include <random>

#include "picard/smith.hpp"

using namespace picard;

namespace {

// Independent textbook Smith reduction used as oracle.  Euclidean steps
// between the pivot row/column and offenders, with the pivot chosen anew on
// every pass; shares no code with the implementation under test.
std::vector<Int> naive_smith(std::vector<std::vector<Int>> a) {
    std::size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<Int> out;
    auto closest_mult = [](const Int& x, const Int& p) {
        // multiplier q minimizing |x - q p|
        Int q = x / p, r = x - q * p;
        if (2 * abs(r) > abs(p)) q += (r < 0) == (p < 0) ? 1 : -1;
        return q;
    };
    std::size_t k = 0;
    while (k < m && k < n) {
        for (;;) {
            std::size_t pr = m, pc = n;
            for (std::size_t i = k; i < m; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (a[i][j] != 0 && (pr == m || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == m) return out;  // block is zero
            std::swap(a[k], a[pr]);
            for (std::size_t i = 0; i < m; ++i) std::swap(a[i][k], a[i][pc]);
            Int p = a[k][k];
            bool clean = true;
            for (std::size_t i = k + 1; i < m; ++i)
                if (a[i][k] != 0) {
                    Int q = closest_mult(a[i][k], p);
                    for (std::size_t j = k; j < n; ++j) a[i][j] -= q * a[k][j];
                    if (a[i][k] != 0) clean = false;
                }
            for (std::size_t j = k + 1; j < n; ++j)
                if (a[k][j] != 0) {
                    Int q = closest_mult(a[k][j], p);
                    for (std::size_t i = k; i < m; ++i) a[i][j] -= q * a[i][k];
                    if (a[k][j] != 0) clean = false;
                }
            if (!clean) continue;
            bool divisible = true;
            for (std::size_t i = k + 1; i < m && divisible; ++i)
                for (std::size_t j = k + 1; j < n && divisible; ++j)
                    if (a[i][j] % p != 0) {
                        for (std::size_t jj = k; jj < n; ++jj) a[k][jj] += a[i][jj];
                        divisible = false;
                    }
            if (!divisible) continue;
            out.push_back(abs(p));
            break;
        }
        ++k;
    }
    return out;
}

SparseIntMat from_dense(const std::vector<std::vector<Int>>& a) {
    SparseIntMat m(static_cast<long>(a.size()), a.empty() ? 0 : static_cast<long>(a[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m.add(i, j, a[i][j]);
    return m;
}

Int dense_det(std::vector<std::vector<Int>> a) {
    // Bareiss fraction-free determinant
    std::size_t n = a.size();
    Int prev = 1, sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return n ? Int(sign * a[n - 1][n - 1]) : Int(1);
}

}  // namespace

TEST_CASE("smith on simple matrices") {
    // diag(1, N)
    for (int N : {2, 5, 12}) {
        auto r = elementary_divisors(from_dense({{1, 0}, {0, N}}));
        CHECK(r.rank == 2);
        REQUIRE(r.divisors.size() == 2);
        CHECK(r.divisors[0] == 1);
        CHECK(r.divisors[1] == N);
    }
    // [[2,4],[6,8]] -> divisors (2, 4): d1 = gcd 2, d1*d2 = |det| = 8
    auto r = elementary_divisors(from_dense({{2, 4}, {6, 8}}));
    CHECK(r.rank == 2);
    REQUIRE(r.divisors.size() == 2);
    CHECK(r.divisors[0] == 2);
    CHECK(r.divisors[1] == 4);
    // zero matrix
    auto z = elementary_divisors(SparseIntMat(4, 3));
    CHECK(z.rank == 0);
    CHECK(z.divisors.empty());
    // empty matrix
    auto e = elementary_divisors(SparseIntMat(0, 0));
    CHECK(e.rank == 0);
}

TEST_CASE("smith agrees with naive oracle on random matrices") {
    std::mt19937 rg(1234);
    std::uniform_int_distribution<int> dim(1, 20), val(-9, 9);
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t m = dim(rg), n = dim(rg);
        std::vector<std::vector<Int>> a(m, std::vector<Int>(n));
        for (auto& row : a)
            for (auto& x : row) x = val(rg);
        auto want = naive_smith(a);
        auto got = elementary_divisors(from_dense(a));
        REQUIRE(got.rank == static_cast<long>(want.size()));
        REQUIRE(got.divisors.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(got.divisors[i] == want[i]);
        for (std::size_t i = 0; i + 1 < got.divisors.size(); ++i)
            CHECK(got.divisors[i + 1] % got.divisors[i] == 0);
    }
}

TEST_CASE("divisor product equals |det| on random nonsingular 6x6") {
    std::mt19937 rg(99);
    std::uniform_int_distribution<int> val(-9, 9);
    int done = 0;
    while (done < 25) {
        std::vector<std::vector<Int>> a(6, std::vector<Int>(6));
        for (auto& row : a)
            for (auto& x : row) x = val(rg);
        Int d = dense_det(a);
        if (d == 0) continue;
        auto r = elementary_divisors(from_dense(a));
        REQUIRE(r.rank == 6);
        Int prod = 1;
        for (const Int& x : r.divisors) prod *= x;
        CHECK(prod == abs(d));
        ++done;
    }
}

TEST_CASE("sparse matrix plumbing") {
    SparseIntMat m(3, 3);
    m.add(0, 0, 1);
    m.add(0, 0, -1);  // cancels
    m.add(1, 2, 5);
    CHECK(m.nnz() == 1);
    auto txt = m.to_text();
    auto back = SparseIntMat::from_text(txt);
    CHECK(back.rows() == 3);
    CHECK(back.nnz() == 1);
    SparseIntMat a(2, 2), b(2, 2);
    a.add(0, 0, 2);
    a.add(1, 1, 3);
    b.add(0, 1, 1);
    b.add(1, 0, 1);
    auto c = a * b;
    auto t = c.triplets();
    REQUIRE(t.size() == 2);
    CHECK(t[0].row == 0);
    CHECK(t[0].col == 1);
    CHECK(t[0].val == 2);
}
