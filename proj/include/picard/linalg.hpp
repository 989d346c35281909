#pragma once

// 3x3 matrices and vectors over O and k, the Hermitian form of signature
// (2,1), membership in the integral special unitary group, finite-subgroup
// closure, and reduction maps modulo N.

#include <array>
#include <optional>
#include <vector>

#include "picard/field.hpp"
#include "picard/residue.hpp"

namespace picard {

struct Vec3 {
    std::array<Rng, 3> v;
    Rng& operator[](int i) { return v[i]; }
    const Rng& operator[](int i) const { return v[i]; }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.v == b.v; }
    friend bool operator<(const Vec3& a, const Vec3& b) {
        for (int i = 0; i < 3; ++i) {
            if (a.v[i] < b.v[i]) return true;
            if (b.v[i] < a.v[i]) return false;
        }
        return false;
    }
};

struct Mat3 {
    std::array<Rng, 9> e;  // row major
    Rng& at(int r, int c) { return e[3 * r + c]; }
    const Rng& at(int r, int c) const { return e[3 * r + c]; }
    friend bool operator==(const Mat3& a, const Mat3& b) { return a.e == b.e; }
    friend bool operator<(const Mat3& a, const Mat3& b) {
        for (int i = 0; i < 9; ++i) {
            if (a.e[i] < b.e[i]) return true;
            if (b.e[i] < a.e[i]) return false;
        }
        return false;
    }
};

struct FVec3 {
    std::array<Fld, 3> v;
    Fld& operator[](int i) { return v[i]; }
    const Fld& operator[](int i) const { return v[i]; }
};

struct FMat3 {
    std::array<Fld, 9> e;
    Fld& at(int r, int c) { return e[3 * r + c]; }
    const Fld& at(int r, int c) const { return e[3 * r + c]; }
};

Mat3 mat_identity(int d);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);      // column action
Vec3 row_mul(const Vec3& x, const Mat3& a);        // row action x * a
Rng det(const Mat3& a);
Mat3 adjugate(const Mat3& a);
// inverse of a member of the integral group (det = 1)
Mat3 inverse_unimodular(const Mat3& a);
Mat3 scalar_mat(const Rng& u, int d);

FMat3 to_fmat(const Mat3& a);
FVec3 to_fvec(const Vec3& x);
Fld fdet(const FMat3& a);
FMat3 fadjugate(const FMat3& a);
FVec3 fmat_vec(const FMat3& a, const FVec3& x);
std::optional<Mat3> to_ring(const FMat3& a);

// value u* C v of the Hermitian form represented by
// C = [[0,0,1/sqrt(D)], [0,1,0], [-1/sqrt(D),0,0]]
Fld form_value(const FVec3& u, const FVec3& v, int d);
Fld form_value(const Vec3& u, const Vec3& v);
// |Q(u,v)|^2 as an exact rational
Rat form_norm2(const Vec3& u, const Vec3& v);

// entries in O, det = 1, g* C g = C, all exact
bool is_member(const Mat3& g);
bool is_member(const FMat3& g);

std::size_t hash_value(const Vec3& x);
std::size_t hash_value(const Mat3& a);

std::string to_string(const Mat3& a);  // nine ring elements, space separated
std::string to_string(const Vec3& x);
Mat3 parse_mat(const std::string& text, int d);
Vec3 parse_vec(const std::string& text, int d);

// finite subgroup given as a closed element list
struct FiniteGroup {
    std::vector<Mat3> elems;
    std::size_t order() const { return elems.size(); }
    bool contains(const Mat3& g) const;
};

// breadth-first closure of the generated subgroup; throws if the order
// would exceed cap (non-finite or unexpectedly large subgroup)
FiniteGroup closure(const std::vector<Mat3>& gens, std::size_t cap = 10000);

// entrywise reduction mod N; a ring homomorphism on members
struct ResMat {
    std::array<Rng, 9> e;
    friend bool operator==(const ResMat& a, const ResMat& b) { return a.e == b.e; }
};
ResMat reduce_mod(const Mat3& g, const ResidueRing& R);
ResMat res_mul(const ResMat& a, const ResMat& b, const ResidueRing& R);
std::array<Rng, 3> res_row_mul(const std::array<Rng, 3>& v, const ResMat& a,
                               const ResidueRing& R);
std::size_t hash_value(const ResMat& a);

}  // namespace picard
