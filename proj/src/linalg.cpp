#include "picard/linalg.hpp"

#include <cassert>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace picard {

Mat3 mat_identity(int d) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.e[i] = ring_zero(d);
    for (int i = 0; i < 3; ++i) m.at(i, i) = ring_one(d);
    return m;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    int d = a.e[0].d;
    Mat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rng acc = ring_zero(d);
            for (int k = 0; k < 3; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            c.at(i, j) = acc;
        }
    return c;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
    int d = x.v[0].d;
    Vec3 y;
    for (int i = 0; i < 3; ++i) {
        Rng acc = ring_zero(d);
        for (int k = 0; k < 3; ++k) acc = acc + a.at(i, k) * x[k];
        y[i] = acc;
    }
    return y;
}

Vec3 row_mul(const Vec3& x, const Mat3& a) {
    int d = x.v[0].d;
    Vec3 y;
    for (int j = 0; j < 3; ++j) {
        Rng acc = ring_zero(d);
        for (int k = 0; k < 3; ++k) acc = acc + x[k] * a.at(k, j);
        y[j] = acc;
    }
    return y;
}

Rng det(const Mat3& a) {
    return a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
           a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
           a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
}

Mat3 adjugate(const Mat3& a) {
    Mat3 c;
    auto cof = [&](int r0, int r1, int c0, int c1) {
        return a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0);
    };
    c.at(0, 0) = cof(1, 2, 1, 2);
    c.at(0, 1) = -cof(0, 2, 1, 2);
    c.at(0, 2) = cof(0, 1, 1, 2);
    c.at(1, 0) = -cof(1, 2, 0, 2);
    c.at(1, 1) = cof(0, 2, 0, 2);
    c.at(1, 2) = -cof(0, 1, 0, 2);
    c.at(2, 0) = cof(1, 2, 0, 1);
    c.at(2, 1) = -cof(0, 2, 0, 1);
    c.at(2, 2) = cof(0, 1, 0, 1);
    return c;
}

Mat3 inverse_unimodular(const Mat3& a) {
    assert(det(a) == ring_one(a.e[0].d));
    return adjugate(a);
}

Mat3 scalar_mat(const Rng& u, int d) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.e[i] = ring_zero(d);
    for (int i = 0; i < 3; ++i) m.at(i, i) = u;
    return m;
}

FMat3 to_fmat(const Mat3& a) {
    FMat3 f;
    for (int i = 0; i < 9; ++i) f.e[i] = to_fld(a.e[i]);
    return f;
}

FVec3 to_fvec(const Vec3& x) {
    FVec3 f;
    for (int i = 0; i < 3; ++i) f.v[i] = to_fld(x[i]);
    return f;
}

Fld fdet(const FMat3& a) {
    return a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
           a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
           a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
}

FMat3 fadjugate(const FMat3& a) {
    FMat3 c;
    auto cof = [&](int r0, int r1, int c0, int c1) {
        return a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0);
    };
    c.at(0, 0) = cof(1, 2, 1, 2);
    c.at(0, 1) = -cof(0, 2, 1, 2);
    c.at(0, 2) = cof(0, 1, 1, 2);
    c.at(1, 0) = -cof(1, 2, 0, 2);
    c.at(1, 1) = cof(0, 2, 0, 2);
    c.at(1, 2) = -cof(0, 1, 0, 2);
    c.at(2, 0) = cof(1, 2, 0, 1);
    c.at(2, 1) = -cof(0, 2, 0, 1);
    c.at(2, 2) = cof(0, 1, 0, 1);
    return c;
}

FVec3 fmat_vec(const FMat3& a, const FVec3& x) {
    int d = x.v[0].d;
    FVec3 y;
    for (int i = 0; i < 3; ++i) {
        Fld acc = fld_zero(d);
        for (int k = 0; k < 3; ++k) acc = acc + a.at(i, k) * x[k];
        y[i] = acc;
    }
    return y;
}

std::optional<Mat3> to_ring(const FMat3& a) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) {
        auto r = to_ring(a.e[i]);
        if (!r) return std::nullopt;
        m.e[i] = *r;
    }
    return m;
}

Fld form_value(const FVec3& u, const FVec3& v, int d) {
    // u* C v = (conj(u1) v3 - conj(u3) v1)/sqrt(D) + conj(u2) v2
    Fld num = conj(u[0]) * v[2] - conj(u[2]) * v[0];
    return num * inv_sqrtD(d) + conj(u[1]) * v[1];
}

Fld form_value(const Vec3& u, const Vec3& v) { return form_value(to_fvec(u), to_fvec(v), u.v[0].d); }

Rat form_norm2(const Vec3& u, const Vec3& v) { return norm(form_value(u, v)); }

bool is_member(const Mat3& g) {
    int d = g.e[0].d;
    if (det(g) != ring_one(d)) return false;
    FMat3 f = to_fmat(g);
    // g* C g = C checked as Q(col_i, col_j) = C_ij
    FVec3 cols[3];
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) cols[j].v[i] = f.at(i, j);
    Fld C[3][3] = {{fld_zero(d), fld_zero(d), inv_sqrtD(d)},
                   {fld_zero(d), fld_one(d), fld_zero(d)},
                   {-inv_sqrtD(d), fld_zero(d), fld_zero(d)}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (form_value(cols[i], cols[j], d) != C[i][j]) return false;
    return true;
}

bool is_member(const FMat3& g) {
    auto m = to_ring(g);
    return m && is_member(*m);
}

std::size_t hash_value(const Vec3& x) {
    std::size_t h = 0;
    for (const Rng& c : x.v) hash_mix(h, hash_value(c));
    return h;
}

std::size_t hash_value(const Mat3& a) {
    std::size_t h = 0;
    for (const Rng& c : a.e) hash_mix(h, hash_value(c));
    return h;
}

std::string to_string(const Mat3& a) {
    std::ostringstream os;
    for (int i = 0; i < 9; ++i) {
        if (i) os << ' ';
        os << to_string(a.e[i]);
    }
    return os.str();
}

std::string to_string(const Vec3& x) {
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        if (i) os << ' ';
        os << to_string(x[i]);
    }
    return os.str();
}

Mat3 parse_mat(const std::string& text, int d) {
    std::istringstream is(text);
    Mat3 m;
    std::string tok;
    for (int i = 0; i < 9; ++i) {
        if (!(is >> tok)) throw std::runtime_error("matrix text needs nine entries");
        m.e[i] = parse_ring_element(tok, d);
    }
    return m;
}

Vec3 parse_vec(const std::string& text, int d) {
    std::istringstream is(text);
    Vec3 x;
    std::string tok;
    for (int i = 0; i < 3; ++i) {
        if (!(is >> tok)) throw std::runtime_error("vector text needs three entries");
        x[i] = parse_ring_element(tok, d);
    }
    return x;
}

namespace {
struct MatHash {
    std::size_t operator()(const Mat3& m) const { return hash_value(m); }
};
}  // namespace

bool FiniteGroup::contains(const Mat3& g) const {
    for (const Mat3& e : elems)
        if (e == g) return true;
    return false;
}

FiniteGroup closure(const std::vector<Mat3>& gens, std::size_t cap) {
    if (gens.empty()) throw std::runtime_error("closure needs at least one generator");
    int d = gens[0].e[0].d;
    std::unordered_map<Mat3, std::size_t, MatHash> seen;
    std::deque<Mat3> queue;
    FiniteGroup g;
    Mat3 id = mat_identity(d);
    seen.emplace(id, 0);
    g.elems.push_back(id);
    queue.push_back(id);
    while (!queue.empty()) {
        Mat3 cur = queue.front();
        queue.pop_front();
        for (const Mat3& gen : gens) {
            Mat3 next = cur * gen;
            if (seen.emplace(next, g.elems.size()).second) {
                g.elems.push_back(next);
                queue.push_back(next);
                if (g.elems.size() > cap)
                    throw std::runtime_error("closure cap exceeded: subgroup not finite or larger than " +
                                             std::to_string(cap));
            }
        }
    }
    return g;
}

ResMat reduce_mod(const Mat3& g, const ResidueRing& R) {
    ResMat m;
    for (int i = 0; i < 9; ++i) m.e[i] = R.reduce(g.e[i]);
    return m;
}

ResMat res_mul(const ResMat& a, const ResMat& b, const ResidueRing& R) {
    ResMat c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rng acc = ring_zero(R.d());
            for (int k = 0; k < 3; ++k) acc = acc + a.e[3 * i + k] * b.e[3 * k + j];
            c.e[3 * i + j] = R.reduce(acc);
        }
    return c;
}

std::array<Rng, 3> res_row_mul(const std::array<Rng, 3>& v, const ResMat& a, const ResidueRing& R) {
    std::array<Rng, 3> y;
    for (int j = 0; j < 3; ++j) {
        Rng acc = ring_zero(R.d());
        for (int k = 0; k < 3; ++k) acc = acc + v[k] * a.e[3 * k + j];
        y[j] = R.reduce(acc);
    }
    return y;
}

std::size_t hash_value(const ResMat& a) {
    std::size_t h = 0;
    for (const Rng& c : a.e) hash_mix(h, hash_value(c));
    return h;
}

}  // namespace picard
