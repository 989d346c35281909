#include "picard/spine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

namespace picard {

std::complex<double> SiegelPoint::z(int d) const { return {r, big_b(d)}; }

std::complex<double> SiegelPoint::u(int d) const {
    // u = i conj(beta) / sqrt|D|
    double s = Field::get(d).sqrt_abs_d;
    return std::complex<double>(0, 1) * std::complex<double>(b1, -b2) / s;
}

double SiegelPoint::big_b(int d) const {
    double s = Field::get(d).sqrt_abs_d;
    return y * y + (b1 * b1 + b2 * b2) / (2 * s);
}

SiegelPoint SiegelPoint::from_zu(std::complex<double> z, std::complex<double> u, int d) {
    double s = Field::get(d).sqrt_abs_d;
    SiegelPoint x;
    x.r = z.real();
    double y2 = z.imag() - s * std::norm(u) / 2;
    if (y2 <= 0) throw std::runtime_error("point outside the Siegel domain");
    x.y = std::sqrt(y2);
    std::complex<double> beta = std::complex<double>(0, 1) * s * std::conj(u);
    x.b1 = beta.real();
    x.b2 = beta.imag();
    return x;
}

Vec3 canonical_vector(const Vec3& v) {
    const Field& f = Field::get(v.v[0].d);
    Vec3 best = v;
    bool first = true;
    for (const Rng& u : f.units) {
        Vec3 c{{u * v[0], u * v[1], u * v[2]}};
        if (first || c < best) {
            best = c;
            first = false;
        }
    }
    return best;
}

Vec3 base_cusp(int d) { return canonical_vector(Vec3{{ring_one(d), ring_zero(d), ring_zero(d)}}); }
Vec3 cusp_at_zero(int d) {
    return canonical_vector(Vec3{{ring_zero(d), ring_zero(d), ring_one(d)}});
}

bool is_isotropic(const Vec3& v) {
    if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero())
        throw std::runtime_error("zero vector is not a cusp vector");
    // Q(v,v) = 0 iff the w-coefficient of n*conj(q) equals norm(p)
    Rng nq = v[0] * conj(v[2]);
    return nq.t == norm(v[1]);
}

bool is_primitive(const Vec3& v) {
    Rng g = ring_zero(v.v[0].d);
    bool any = false;
    for (const Rng& c : v.v)
        if (!c.is_zero()) {
            g = any ? ring_gcd(g, c) : canonical_associate(c);
            any = true;
        }
    return any && is_unit(g);
}

std::complex<double> cusp_den(const Vec3& v, const SiegelPoint& x) {
    int d = v.v[0].d;
    std::complex<double> q = embed(v[2]), p = embed(v[1]), n = embed(v[0]);
    return q * std::complex<double>(x.r, -x.big_b(d)) + p * std::complex<double>(x.b1, x.b2) - n;
}

double exhaustion(const Vec3& v, const SiegelPoint& x) {
    double den = std::abs(cusp_den(v, x));
    if (den < 1e-12) throw std::runtime_error("point on the boundary hyperplane of the cusp");
    return x.y / den;
}

SiegelPoint siegel_act(const Mat3& g, const SiegelPoint& x, int d) {
    std::complex<double> m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = embed(g.at(i, j));
    std::complex<double> col[3] = {x.z(d), x.u(d), 1.0};
    std::complex<double> out[3];
    for (int i = 0; i < 3; ++i) out[i] = m[i][0] * col[0] + m[i][1] * col[1] + m[i][2] * col[2];
    if (std::abs(out[2]) < 1e-14) throw std::runtime_error("image line has no Siegel coordinates");
    return SiegelPoint::from_zu(out[0] / out[2], out[1] / out[2], d);
}

FirstContact first_contact(const Vec3& v, const Vec3& w) {
    int d = v.v[0].d;
    Rat q2 = form_norm2(v, w);
    if (q2 == 0) throw std::runtime_error("cusps not in general position: Q(v,w) = 0");
    FirstContact fc;
    fc.height4 = Rat(1) / (Rat(-Field::get(d).D) * q2);
    if (canonical_vector(v) == base_cusp(d)) {
        std::complex<double> q = embed(w[2]), p = embed(w[1]), n = embed(w[0]);
        // z = n/q + i/|q|, u = p/q
        std::complex<double> z = n / q + std::complex<double>(0, 1) / std::abs(q);
        fc.point = SiegelPoint::from_zu(z, p / q, d);
    }
    return fc;
}

PairClass classify_pair(const Vec3& v, const Vec3& w) {
    if (canonical_vector(v) == canonical_vector(w))
        throw std::runtime_error("classify_pair needs distinct cusps");
    int d = v.v[0].d;
    Rat q2 = form_norm2(v, w);
    return PairClass{q2 == Rat(1) / Rat(-Field::get(d).D), q2};
}

AdmSet AdmSet::make(std::vector<Vec3> vs) {
    AdmSet s;
    for (Vec3& v : vs) v = canonical_vector(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    s.vecs = std::move(vs);
    std::size_t n = s.vecs.size();
    s.qnorm2.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            s.qnorm2[i][j] = s.qnorm2[j][i] = form_norm2(s.vecs[i], s.vecs[j]);
    return s;
}

AdmSet AdmSet::with(const Vec3& w) const {
    std::vector<Vec3> vs = vecs;
    vs.push_back(w);
    return make(std::move(vs));
}

bool AdmSet::contains(const Vec3& canonical) const {
    return std::binary_search(vecs.begin(), vecs.end(), canonical);
}

std::string AdmSet::key() const {
    std::ostringstream os;
    for (const Vec3& v : vecs) os << to_string(v) << ";";
    return os.str();
}

int AdmSet::span_dim() const {
    std::vector<std::array<Fld, 3>> rows;
    for (const Vec3& v : vecs) {
        FVec3 c = to_fvec(v);
        rows.push_back({c.v[0], c.v[1], c.v[2]});
    }
    int rank = 0;
    std::size_t rr = 0;
    for (int col = 0; col < 3 && rr < rows.size(); ++col) {
        std::size_t piv = rr;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rr], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rr || rows[i][col].is_zero()) continue;
            Fld f = rows[i][col] / rows[rr][col];
            for (int c2 = 0; c2 < 3; ++c2) rows[i][c2] = rows[i][c2] - f * rows[rr][c2];
        }
        ++rr;
        ++rank;
    }
    return rank;
}

std::vector<Rat> AdmSet::profile() const {
    std::vector<Rat> out;
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i + 1; j < vecs.size(); ++j) out.push_back(qnorm2[i][j]);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

// Re of an element of k as a rational: Re(s + t w) = s + t D/2
Rat re_rat(const Rng& a) { return Rat(a.s) + Rat(a.t * Field::get(a.d).D, 2); }

Rat rat_of(double x, long denom = 64) {
    return Rat(static_cast<long long>(std::llround(x * denom)), denom);
}

std::complex<double> u_of(const Vec3& v) { return embed(v[1]) / embed(v[2]); }

}  // namespace

namespace {

struct I2 {
    long long s, t;
};

long long i64_floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// floor(x/y) for a rational given as num/den with den > 0
long long floor_frac(long long num, long long den) { return i64_floor_div(num, den); }
long long ceil_frac(long long num, long long den) { return -i64_floor_div(-num, den); }

}  // namespace

std::vector<Vec3> isotropic_window(int d, const Rat& qnorm_max, const Rat& alo, const Rat& ahi,
                                   const Rat& blo, const Rat& bhi, const Rat& relo,
                                   const Rat& rehi) {
    std::set<Vec3> out;
    if (qnorm_max < 1) return {};
    const long long D = Field::get(d).D;
    const long long c0 = Field::get(d).c0.convert_to<long long>();
    auto nrm = [&](I2 x) { return x.s * x.s + x.s * x.t * D - x.t * x.t * c0; };
    auto mul = [&](I2 x, I2 y) {
        return I2{x.s * y.s + x.t * y.t * c0, x.s * y.t + x.t * y.s + x.t * y.t * D};
    };
    auto cj = [&](I2 x) { return I2{x.s + x.t * D, -x.t}; };
    std::vector<I2> units;
    for (const Rng& u : Field::get(d).units)
        units.push_back({u.s.convert_to<long long>(), u.t.convert_to<long long>()});

    const long long qb = floor_rat(qnorm_max).convert_to<long long>();
    // rational window bounds as int64 fractions
    auto frac = [](const Rat& r) {
        return std::pair<long long, long long>(numerator(r).convert_to<long long>(),
                                               denominator(r).convert_to<long long>());
    };
    auto [alo_n, alo_d] = frac(alo);
    auto [ahi_n, ahi_d] = frac(ahi);
    auto [blo_n, blo_d] = frac(blo);
    auto [bhi_n, bhi_d] = frac(bhi);
    auto [relo_n, relo_d] = frac(relo);
    auto [rehi_n, rehi_d] = frac(rehi);
    double alo_f = to_double(alo), ahi_f = to_double(ahi);
    double blo_f = to_double(blo), bhi_f = to_double(bhi);

    // |s|, |t| <= 3.2 sqrt(norm) covers both quadratic forms
    long long lim = static_cast<long long>(std::ceil(3.2 * std::sqrt(double(qb)))) + 1;
    for (long long qs = -lim; qs <= lim; ++qs)
        for (long long qt = -lim; qt <= lim; ++qt) {
            I2 q{qs, qt};
            if (qs == 0 && qt == 0) continue;
            long long nq = nrm(q);
            if (nq > qb) continue;
            // one associate per class
            bool canonical = true;
            for (const I2& u : units) {
                I2 c = mul(u, q);
                if (c.s < q.s || (c.s == q.s && c.t < q.t)) {
                    canonical = false;
                    break;
                }
            }
            if (!canonical) continue;
            // p-box: p = q*(a + b w) over the (a,b)-window, bounded via corners
            double pslo = 1e18, pshi = -1e18, ptlo = 1e18, pthi = -1e18;
            for (double a : {alo_f, ahi_f})
                for (double b : {blo_f, bhi_f}) {
                    double ps = qs * a + qt * b * c0;
                    double pt = qs * b + qt * a + qt * b * D;
                    pslo = std::min(pslo, ps);
                    pshi = std::max(pshi, ps);
                    ptlo = std::min(ptlo, pt);
                    pthi = std::max(pthi, pt);
                }
            I2 qc = cj(q);
            for (long long ps = (long long)std::floor(pslo) - 1; ps <= (long long)std::ceil(pshi) + 1; ++ps)
                for (long long pt = (long long)std::floor(ptlo) - 1; pt <= (long long)std::ceil(pthi) + 1; ++pt) {
                    I2 p{ps, pt};
                    // exact window test on coordinates of p/q = (p conj q)/nq
                    I2 m = mul(p, qc);
                    if (m.s * alo_d < alo_n * nq || m.s * ahi_d > ahi_n * nq) continue;
                    if (m.t * blo_d < blo_n * nq || m.t * bhi_d > bhi_n * nq) continue;
                    // n on the isotropy line: -qt ns + qs nt = norm(p)
                    long long target = nrm(p);
                    long long a = -qt, b = qs;
                    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a, r1 = b;
                    while (r1 != 0) {
                        long long qq = i64_floor_div(r0, r1);
                        long long r2 = r0 - qq * r1, x2 = x0 - qq * x1, y2 = y0 - qq * y1;
                        r0 = r1; r1 = r2;
                        x0 = x1; x1 = x2;
                        y0 = y1; y1 = y2;
                    }
                    long long g = r0 < 0 ? -r0 : r0;
                    if (g == 0 || target % g != 0) continue;
                    long long scale = target / r0;
                    I2 n0{x0 * scale, y0 * scale};
                    I2 step{qs / g, qt / g};  // adds exactly 1/g to Re(n/q)
                    // 2 Re(n0/q) = (2 m0.s + m0.t D) / nq; step adds 1/g
                    I2 m0 = mul(n0, qc);
                    long long re2num = 2 * m0.s + m0.t * D;  // over 2 nq
                    // j >= g*(relo - re0) ; exact with fractions
                    // relo - re0 = (relo_n * 2nq - relo_d * re2num) / (relo_d * 2nq)
                    long long jlo = ceil_frac(g * (relo_n * 2 * nq - relo_d * re2num), relo_d * 2 * nq);
                    long long jhi = floor_frac(g * (rehi_n * 2 * nq - rehi_d * re2num), rehi_d * 2 * nq);
                    for (long long j = jlo; j <= jhi; ++j) {
                        I2 n{n0.s + j * step.s, n0.t + j * step.t};
                        Vec3 v{{Rng(n.s, n.t, d), Rng(ps, pt, d), Rng(qs, qt, d)}};
                        if (!is_primitive(v)) continue;
                        assert(is_isotropic(v));
                        out.insert(canonical_vector(v));
                    }
                }
        }
    return std::vector<Vec3>(out.begin(), out.end());
}

std::vector<Vec3> candidate_pairs(int d, const Rat& floor_mu) {
    if (floor_mu <= 0) throw std::runtime_error("floor must be positive");
    Rat qmax = Rat(1) / (floor_mu * floor_mu * floor_mu * floor_mu);
    return isotropic_window(d, qmax, 0, 1, 0, 1, 0, 1);
}

namespace {

// Candidates w such that I + {w} can still be admissible.  At any tie point
// x of an admissible superset, den_v(x) = 1 forces
//   |p/q - u(x)|^2 <= 2 (1/|q| - y^2)/sqrt|D|   and
//   |r - Re(n/q) + Re((p/q) beta)| <= 1/|q|
// for every member v = (n,p,q), which localizes both p/q and Re(n/q).
std::vector<Vec3> superset_candidates(const AdmSet& I, const Rat& floor_mu) {
    int d = I.vecs[0].v[0].d;
    double s = Field::get(d).sqrt_abs_d;
    double mu2 = to_double(floor_mu * floor_mu);
    Rat qmax = Rat(1) / (floor_mu * floor_mu * floor_mu * floor_mu);
    double rad = std::sqrt(std::max(0.0, 2 * (1 - mu2) / s));  // worst case over |q| >= 1

    double ulo_re = 1e9, uhi_re = -1e9, ulo_im = 1e9, uhi_im = -1e9;
    double re_n_lo = 1e9, re_n_hi = -1e9;
    bool any = false;
    for (const Vec3& v : I.vecs) {
        if (v[2].is_zero()) continue;
        std::complex<double> u = u_of(v);
        ulo_re = std::min(ulo_re, u.real());
        uhi_re = std::max(uhi_re, u.real());
        ulo_im = std::min(ulo_im, u.imag());
        uhi_im = std::max(uhi_im, u.imag());
        double ren = (embed(v[0]) / embed(v[2])).real();
        re_n_lo = std::min(re_n_lo, ren);
        re_n_hi = std::max(re_n_hi, ren);
        any = true;
    }
    if (!any) throw std::runtime_error("superset candidates need a member besides the base cusp");
    double pad = 2 * rad * 1.25 + 0.1;
    ulo_re -= pad;
    uhi_re += pad;
    ulo_im -= pad;
    uhi_im += pad;
    double im_w = s / 2, re_w = Field::get(d).D / 2.0;
    double blo = ulo_im / im_w, bhi = uhi_im / im_w;
    double alo = ulo_re - std::max(blo * re_w, bhi * re_w);
    double ahi = uhi_re - std::min(blo * re_w, bhi * re_w);
    double umax = std::hypot(std::max(std::abs(ulo_re), std::abs(uhi_re)),
                             std::max(std::abs(ulo_im), std::abs(uhi_im)));
    double vmax = umax + pad;
    // |Re(v beta)| <= |v| |beta| = |v| sqrt|D| |u|
    double slackr = 1.1 + s * vmax * umax;
    double re_lo = re_n_lo - 2 * slackr, re_hi = re_n_hi + 2 * slackr;

    auto cands = isotropic_window(d, qmax, rat_of(alo) - 1, rat_of(ahi) + 1, rat_of(blo) - 1,
                                  rat_of(bhi) + 1, rat_of(re_lo) - 1, rat_of(re_hi) + 1);
    Rat bound = Rat(1) / (Rat(-Field::get(d).D) * floor_mu * floor_mu * floor_mu * floor_mu);
    std::vector<Vec3> out;
    for (const Vec3& w : cands) {
        if (I.contains(w)) continue;
        bool ok = true;
        for (std::size_t i = 0; i < I.size() && ok; ++i) {
            Rat q2 = form_norm2(I.vecs[i], w);
            if (q2 == 0 || q2 > bound) ok = false;
        }
        if (ok) out.push_back(w);
    }
    return out;
}

}  // namespace

std::vector<Vec3> local_competitors(const AdmSet& I, const SiegelPoint& x, double slack) {
    int d = I.vecs[0].v[0].d;
    double s = Field::get(d).sqrt_abs_d;
    double y2 = x.y * x.y;
    double onep = 1 + slack;
    double qmax_abs = onep / y2;
    Rat qmax = rat_of(qmax_abs * qmax_abs * 1.05 + 0.05);
    std::complex<double> u = x.u(d);
    double rad = std::sqrt(2 * onep / s) * 1.05 + 0.05;
    double im_w = s / 2, re_w = Field::get(d).D / 2.0;
    double ub = u.imag() / im_w;  // w-coordinate of u
    double ua = u.real() - ub * re_w;
    double blo = ub - rad / im_w, bhi = ub + rad / im_w;
    double alo = ua - rad - (rad / im_w) * std::abs(re_w);
    double ahi = ua + rad + (rad / im_w) * std::abs(re_w);
    double beta_abs = std::hypot(x.b1, x.b2);
    double remax = std::abs(x.r) + (std::abs(u) + rad) * beta_abs * s + onep + 0.5;
    std::vector<Vec3> out;
    for (const Vec3& v : isotropic_window(d, qmax, rat_of(alo), rat_of(ahi), rat_of(blo),
                                          rat_of(bhi), rat_of(-remax), rat_of(remax))) {
        if (I.contains(v)) continue;
        double den2 = std::norm(cusp_den(v, x));
        if (den2 <= onep * onep) out.push_back(v);
    }
    return out;
}

Rat default_floor(int d) {
    // the deepest spine points sit at height 3^{-1/4} (d=3) and 2^{-1/4}
    // (d=1); the floor must lie below them and is validated by the census
    if (d == 3) return Rat(74, 100);
    return Rat(70, 100);
}

bool is_strongly_admissible(const AdmSet& I, const Rat& floor_mu, Witness* out,
                            const WitnessParams& wp) {
    if (I.size() < 2) throw std::runtime_error("admissibility needs at least two cusps");
    for (std::size_t i = 0; i < I.size(); ++i)
        for (std::size_t j = i + 1; j < I.size(); ++j)
            if (I.qnorm2[i][j] == 0)
                throw std::runtime_error("admissibility requires pairwise nonzero Q");
    Witness w = find_witness(I, floor_mu, wp);
    if (out) *out = w;
    return w.tie_ok && w.margin >= wp.strong_margin;
}

Census run_census(int d, const Rat& floor_mu, int threads) {
    WitnessParams wp;
    Census census;
    census.d = d;
    census.floor_mu = floor_mu;
    Vec3 v0 = base_cusp(d);

    struct Node {
        AdmSet set;
        SiegelPoint hint;
        bool has_hint = false;
    };
    std::set<std::string> seen;
    std::vector<Node> batch;
    for (const Vec3& v : candidate_pairs(d, floor_mu)) {
        if (v == v0) continue;
        AdmSet s = AdmSet::make({v0, v});
        if (s.size() != 2 || s.qnorm2[0][1] == 0) continue;
        if (seen.insert(s.key()).second) batch.push_back({s, {}, false});
    }

    auto test_batch = [&](const std::vector<Node>& nodes) {
        std::vector<Witness> results(nodes.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                results[i] = find_witness(nodes[i].set, floor_mu, wp,
                                          nodes[i].has_hint ? &nodes[i].hint : nullptr);
        };
        int nt = std::max(1, threads);
        if (nt == 1 || nodes.size() < 4) {
            work(0, nodes.size());
        } else {
            std::vector<std::future<void>> futs;
            std::size_t chunk = (nodes.size() + nt - 1) / nt;
            for (int t = 0; t < nt; ++t) {
                std::size_t lo = t * chunk, hi = std::min(nodes.size(), lo + chunk);
                if (lo < hi) futs.push_back(std::async(std::launch::async, work, lo, hi));
            }
            for (auto& f : futs) f.get();
        }
        return results;
    };

    while (!batch.empty()) {
        auto results = test_batch(batch);
        std::vector<Node> next;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const Witness& wit = results[i];
            if (!wit.tie_ok || wit.margin < wp.grow_margin) continue;
            bool strong = wit.margin >= wp.strong_margin;
            census.entries.push_back({batch[i].set, wit, strong});
            if (strong) census.strong.push_back(census.entries.size() - 1);
            for (const Vec3& w : superset_candidates(batch[i].set, floor_mu)) {
                AdmSet ns = batch[i].set.with(w);
                if (ns.size() != batch[i].set.size() + 1) continue;
                if (!seen.insert(ns.key()).second) continue;
                next.push_back({ns, wit.x, true});
            }
        }
        batch = std::move(next);
    }
    return census;
}

std::vector<AdmSet> admissible_supersets(const AdmSet& I, const Rat& floor_mu) {
    WitnessParams wp;
    std::vector<AdmSet> out;
    std::set<std::string> seen{I.key()};
    std::vector<AdmSet> frontier{I};
    while (!frontier.empty()) {
        std::vector<AdmSet> next;
        for (const AdmSet& s : frontier) {
            for (const Vec3& w : superset_candidates(s, floor_mu)) {
                AdmSet ns = s.with(w);
                if (ns.size() != s.size() + 1) continue;
                if (!seen.insert(ns.key()).second) continue;
                Witness wit = find_witness(ns, floor_mu, wp);
                if (!wit.tie_ok || wit.margin < wp.grow_margin) continue;
                if (wit.margin >= wp.strong_margin) out.push_back(ns);
                next.push_back(ns);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace picard
