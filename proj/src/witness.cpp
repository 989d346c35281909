#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "picard/spine.hpp"

// Numeric search for tie/domination witnesses.  State x = (r, b1, b2, B)
// with B = Im z; the member constraints are h_v(x) = |w_v(x)|^2 - 1 = 0,
// w_v = q (r - iB) + p beta - n, which are smooth in x with affine w_v.
// y^2 = B - (b1^2+b2^2) / (2 sqrt|D|) must stay positive.  Ties are solved
// by damped Gauss-Newton; the domination margin is then hill-climbed along
// the tangent space of the tie manifold with a deterministic pattern
// search.  All decisions downstream compare exact rational invariants; this
// search only has to land inside an open cell, so tolerances are generous.

namespace picard {

namespace {

using C = std::complex<double>;
using X4 = std::array<double, 4>;

struct TieSystem {
    int d;
    double sqrtd;
    std::vector<C> q, p, n;  // members other than the base cusp

    explicit TieSystem(const AdmSet& I) {
        d = I.vecs[0].v[0].d;
        sqrtd = Field::get(d).sqrt_abs_d;
        Vec3 v0 = base_cusp(d);
        bool has_base = false;
        for (const Vec3& v : I.vecs) {
            if (v == v0) {
                has_base = true;
                continue;
            }
            q.push_back(embed(v[2]));
            p.push_back(embed(v[1]));
            n.push_back(embed(v[0]));
        }
        if (!has_base) throw std::runtime_error("witness search requires the base cusp in the set");
    }

    std::size_t m() const { return q.size(); }

    double y2(const X4& x) const { return x[3] - (x[1] * x[1] + x[2] * x[2]) / (2 * sqrtd); }

    C den(std::size_t j, const X4& x) const {
        C beta(x[1], x[2]);
        return q[j] * C(x[0], -x[3]) + p[j] * beta - n[j];
    }

    // residuals h_j and Jacobian rows
    void eval(const X4& x, std::vector<double>& h, std::vector<X4>& jac) const {
        h.resize(m());
        jac.resize(m());
        for (std::size_t j = 0; j < m(); ++j) {
            C w = den(j, x);
            h[j] = std::norm(w) - 1;
            C dr = q[j];
            C db1 = p[j];
            C db2 = C(0, 1) * p[j];
            C dB = C(0, -1) * q[j];
            jac[j] = {2 * (w.real() * dr.real() + w.imag() * dr.imag()),
                      2 * (w.real() * db1.real() + w.imag() * db1.imag()),
                      2 * (w.real() * db2.real() + w.imag() * db2.imag()),
                      2 * (w.real() * dB.real() + w.imag() * dB.imag())};
        }
    }

    double residual_inf(const X4& x) const {
        double r = 0;
        for (std::size_t j = 0; j < m(); ++j) r = std::max(r, std::abs(std::norm(den(j, x)) - 1));
        return r;
    }
};

// solve (A + lambda I) s = b for symmetric positive semidefinite 4x4 A
bool solve4(std::array<std::array<double, 4>, 4> a, X4 b, double lambda, X4& s) {
    for (int i = 0; i < 4; ++i) a[i][i] += lambda;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int i = col + 1; i < 4; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int i = 0; i < 4; ++i) {
            if (i == col) continue;
            double f = a[i][col] / a[col][col];
            for (int j = col; j < 4; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    for (int i = 0; i < 4; ++i) s[i] = b[i] / a[i][i];
    return true;
}

// eigen-decomposition of a symmetric 4x4 by cyclic Jacobi rotations
void jacobi4(std::array<std::array<double, 4>, 4> a, X4& eigval,
             std::array<X4, 4>& eigvec) {
    std::array<std::array<double, 4>, 4> v{};
    for (int i = 0; i < 4; ++i) v[i][i] = 1;
    for (int sweep = 0; sweep < 30; ++sweep) {
        double off = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                if (std::abs(a[i][j]) < 1e-30) continue;
                double theta = (a[j][j] - a[i][i]) / (2 * a[i][j]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < 4; ++k) {
                    double aik = a[i][k], ajk = a[j][k];
                    a[i][k] = c * aik - s * ajk;
                    a[j][k] = s * aik + c * ajk;
                }
                for (int k = 0; k < 4; ++k) {
                    double aki = a[k][i], akj = a[k][j];
                    a[k][i] = c * aki - s * akj;
                    a[k][j] = s * aki + c * akj;
                }
                for (int k = 0; k < 4; ++k) {
                    double vki = v[k][i], vkj = v[k][j];
                    v[k][i] = c * vki - s * vkj;
                    v[k][j] = s * vki + c * vkj;
                }
            }
    }
    for (int i = 0; i < 4; ++i) {
        eigval[i] = a[i][i];
        for (int k = 0; k < 4; ++k) eigvec[i][k] = v[k][i];
    }
}

std::array<std::array<double, 4>, 4> normal_matrix(const std::vector<X4>& jac) {
    std::array<std::array<double, 4>, 4> a{};
    for (const X4& row : jac)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a[i][j] += row[i] * row[j];
    return a;
}

// damped Gauss-Newton onto the tie manifold; returns success
bool retract(const TieSystem& sys, X4& x, int iters = 60) {
    std::vector<double> h;
    std::vector<X4> jac;
    double lambda = 1e-10;
    for (int it = 0; it < iters; ++it) {
        if (sys.y2(x) <= 1e-8) return false;
        sys.eval(x, h, jac);
        double hn = 0;
        for (double v : h) hn = std::max(hn, std::abs(v));
        if (hn < 1e-13) return true;
        auto a = normal_matrix(jac);
        X4 g{};  // -J^T h
        for (std::size_t j = 0; j < h.size(); ++j)
            for (int i = 0; i < 4; ++i) g[i] -= jac[j][i] * h[j];
        X4 s;
        if (!solve4(a, g, lambda, s)) return false;
        X4 xn = {x[0] + s[0], x[1] + s[1], x[2] + s[2], x[3] + s[3]};
        if (sys.y2(xn) <= 1e-8) {
            lambda = std::max(lambda * 10, 1e-8);
            continue;
        }
        double hn2 = sys.residual_inf(xn);
        if (hn2 <= hn) {
            x = xn;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda = lambda * 10;
            if (lambda > 1e8) return sys.residual_inf(x) < 1e-13;
        }
    }
    return sys.residual_inf(x) < 1e-12;
}

SiegelPoint to_point(const X4& x, const TieSystem& sys) {
    SiegelPoint pt;
    pt.r = x[0];
    pt.b1 = x[1];
    pt.b2 = x[2];
    pt.y = std::sqrt(std::max(sys.y2(x), 0.0));
    return pt;
}

X4 from_point(const SiegelPoint& p, int d) { return {p.r, p.b1, p.b2, p.big_b(d)}; }

double margin_at(const AdmSet& I, const std::vector<Vec3>& comp, const SiegelPoint& x) {
    double m = 1e9;
    for (const Vec3& v : comp) m = std::min(m, std::norm(cusp_den(v, x)) - 1);
    return m;
}

}  // namespace

Witness find_witness(const AdmSet& I, const Rat& floor_mu, const WitnessParams& wp,
                     const SiegelPoint* hint) {
    (void)floor_mu;
    TieSystem sys(I);
    int d = sys.d;
    Witness best;

    // starting points: pair contacts of each member, their centroid, the hint
    std::vector<X4> starts;
    X4 centroid{};
    Vec3 v0 = base_cusp(d);
    int cnt = 0;
    for (const Vec3& v : I.vecs) {
        if (v == v0) continue;
        FirstContact fc = first_contact(v0, v);
        X4 x = from_point(*fc.point, d);
        starts.push_back(x);
        for (int i = 0; i < 4; ++i) centroid[i] += x[i];
        ++cnt;
    }
    if (cnt > 1) {
        for (int i = 0; i < 4; ++i) centroid[i] /= cnt;
        starts.push_back(centroid);
        // centroid jitters help rank-deficient systems find the consistent branch
        for (int jit = 0; jit < 3; ++jit) {
            X4 x = centroid;
            x[0] += 0.019 * (jit + 1);
            x[1] -= 0.013 * (jit + 1);
            x[2] += 0.017 * (jit + 1);
            x[3] += 0.011 * (jit + 1);
            starts.push_back(x);
        }
    }
    if (hint) starts.insert(starts.begin(), from_point(*hint, d));

    X4 xbest{};
    bool feasible = false;
    for (X4 x : starts) {
        if (!retract(sys, x)) continue;
        if (!feasible) {
            xbest = x;
            feasible = true;
        } else {
            // prefer the higher point (larger y)
            if (sys.y2(x) > sys.y2(xbest)) xbest = x;
        }
    }
    if (!feasible) {
        best.tie_ok = false;
        return best;
    }

    SiegelPoint pt = to_point(xbest, sys);
    std::vector<Vec3> comp = local_competitors(I, pt, 0.35);
    double margin = margin_at(I, comp, pt);
    best.tie_ok = true;
    best.tie_residual = sys.residual_inf(xbest);
    best.margin = margin;
    best.x = pt;

    // pattern-search climb of the margin along the tie tangent space
    std::vector<double> h;
    std::vector<X4> jac;
    double step = 0.15;
    int since_refresh = 0;
    for (int it = 0; it < wp.climb_steps && step > 2e-5; ++it) {
        sys.eval(xbest, h, jac);
        auto a = normal_matrix(jac);
        X4 eigval;
        std::array<X4, 4> eigvec;
        jacobi4(a, eigval, eigvec);
        double emax = 1e-12;
        for (double e : eigval) emax = std::max(emax, std::abs(e));
        std::vector<X4> tangent;
        for (int i = 0; i < 4; ++i)
            if (std::abs(eigval[i]) < 1e-7 * emax) tangent.push_back(eigvec[i]);
        if (tangent.empty()) break;  // isolated tie point
        bool improved = false;
        for (const X4& t : tangent) {
            for (double sgn : {1.0, -1.0}) {
                X4 x = xbest;
                for (int i = 0; i < 4; ++i) x[i] += sgn * step * t[i];
                if (!retract(sys, x, 25)) continue;
                SiegelPoint cand = to_point(x, sys);
                double m2 = margin_at(I, comp, cand);
                if (m2 > best.margin + 1e-12) {
                    xbest = x;
                    best.margin = m2;
                    best.x = cand;
                    best.tie_residual = sys.residual_inf(x);
                    improved = true;
                    if (++since_refresh >= 12) {
                        comp = local_competitors(I, cand, 0.35);
                        best.margin = margin_at(I, comp, cand);
                        since_refresh = 0;
                    }
                    break;
                }
            }
            if (improved) break;
        }
        if (!improved) step *= 0.5;
    }

    // final verdict with freshly enumerated competitors
    comp = local_competitors(I, best.x, 0.35);
    best.margin = margin_at(I, comp, best.x);
    best.tie_ok = best.tie_residual <= wp.tie_tol;
    return best;
}

}  // namespace picard
