#include "picard/smith.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace picard {

void SparseIntMat::add(long r, long c, const Int& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::runtime_error("triplet out of range");
    if (v == 0) return;
    entries_.push_back({{r, c}, v});
}

std::vector<Triplet> SparseIntMat::triplets() const {
    std::map<std::pair<long, long>, Int> acc;
    for (const auto& e : entries_) acc[e.first] += e.second;
    std::vector<Triplet> out;
    for (auto& [rc, v] : acc)
        if (v != 0) out.push_back({rc.first, rc.second, v});
    return out;
}

std::size_t SparseIntMat::nnz() const { return triplets().size(); }

bool SparseIntMat::is_zero() const { return triplets().empty(); }

SparseIntMat operator*(const SparseIntMat& a, const SparseIntMat& b) {
    if (a.cols() != b.rows()) throw std::runtime_error("matrix product shape mismatch");
    auto ta = a.triplets();
    auto tb = b.triplets();
    std::vector<std::vector<std::pair<long, Int>>> brows(b.rows());
    for (const auto& t : tb) brows[t.row].push_back({t.col, t.val});
    SparseIntMat c(a.rows(), b.cols());
    for (const auto& t : ta)
        for (const auto& [col, v] : brows[t.col]) c.add(t.row, col, t.val * v);
    return c;
}

std::string SparseIntMat::to_text() const {
    std::ostringstream os;
    os << rows_ << " " << cols_ << "\n";
    for (const auto& t : triplets()) os << t.row << " " << t.col << " " << t.val << "\n";
    return os.str();
}

SparseIntMat SparseIntMat::from_text(const std::string& text) {
    std::istringstream is(text);
    long r, c;
    if (!(is >> r >> c)) throw std::runtime_error("bad matrix header");
    SparseIntMat m(r, c);
    long i, j;
    std::string v;
    while (is >> i >> j >> v) m.add(i, j, Int(v));
    return m;
}

std::vector<std::vector<std::pair<long, Int>>> SparseIntMat::row_data() const {
    std::vector<std::vector<std::pair<long, Int>>> rows(rows_);
    for (const auto& t : triplets()) rows[t.row].push_back({t.col, t.val});
    return rows;
}

// ---------------------------------------------------------------------------
// dense Smith reduction (classical, exact)

namespace {
// quotient with minimal remainder, |a - q*b| <= |b|/2
Int round_div(const Int& a, const Int& b) { return round_nearest(Rat(a) / Rat(b)); }
}  // namespace

SmithResult dense_smith(std::vector<std::vector<Int>> a) {
    SmithResult res;
    long m = static_cast<long>(a.size());
    long n = m ? static_cast<long>(a[0].size()) : 0;
    long k = 0;
    std::vector<Int> diag;
    while (k < m && k < n) {
        // entry of least nonzero absolute value in the remaining block;
        // re-selected after every reduction sweep so the pivot magnitude
        // descends geometrically (rounded quotients leave |r| <= |p|/2)
        long pr = -1, pc = -1;
        Int best;
        for (long i = k; i < m; ++i)
            for (long j = k; j < n; ++j)
                if (a[i][j] != 0 && (pr < 0 || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        std::swap(a[k], a[pr]);
        if (pc != k)
            for (long i = 0; i < m; ++i) std::swap(a[i][k], a[i][pc]);
        const Int p = a[k][k];
        bool changed = false;
        for (long i = k + 1; i < m; ++i) {
            if (a[i][k] == 0) continue;
            Int q = round_div(a[i][k], p);
            if (q != 0)
                for (long j = k; j < n; ++j) a[i][j] -= q * a[k][j];
            if (a[i][k] != 0) changed = true;
        }
        for (long j = k + 1; j < n; ++j) {
            if (a[k][j] == 0) continue;
            Int q = round_div(a[k][j], p);
            if (q != 0)
                for (long i = k; i < m; ++i) a[i][j] -= q * a[i][k];
            if (a[k][j] != 0) changed = true;
        }
        if (changed) continue;  // a smaller remainder exists somewhere
        // row and column k are clear; enforce pivot | remaining block
        bool fixed = false;
        for (long i = k + 1; i < m && !fixed; ++i)
            for (long j = k + 1; j < n && !fixed; ++j)
                if (a[i][j] % p != 0) {
                    for (long jj = k; jj < n; ++jj) a[k][jj] += a[i][jj];
                    fixed = true;
                }
        if (fixed) continue;
        diag.push_back(abs(p));
        ++k;
    }
    res.rank = static_cast<long>(diag.size());
    res.divisors = diag;
    return res;
}

// ---------------------------------------------------------------------------
// sparse unit-pivot elimination with Markowitz fill scoring

namespace {

struct SparseElim {
    long nrows, ncols;
    std::vector<std::map<long, Int>> rows;  // live rows
    std::vector<std::set<long>> cols;       // column -> rows with a nonzero
    std::vector<bool> row_dead, col_dead;
    long eliminated = 0;

    explicit SparseElim(const SparseIntMat& m)
        : nrows(m.rows()), ncols(m.cols()), rows(nrows), cols(ncols),
          row_dead(nrows, false), col_dead(ncols, false) {
        for (const auto& t : m.triplets()) {
            rows[t.row][t.col] = t.val;
            cols[t.col].insert(t.row);
        }
    }

    long row_nnz(long r) const { return static_cast<long>(rows[r].size()); }
    long col_nnz(long c) const { return static_cast<long>(cols[c].size()); }

    // lazy-heap pivot search over entries of absolute value 1
    void run() {
        using Cand = std::tuple<long, long, long>;  // (score, row, col)
        std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
        auto push_row = [&](long r) {
            for (const auto& [c, v] : rows[r])
                if (abs(v) == 1) {
                    long score = (row_nnz(r) - 1) * (col_nnz(c) - 1);
                    heap.push({score, r, c});
                }
        };
        for (long r = 0; r < nrows; ++r) push_row(r);
        while (!heap.empty()) {
            auto [score, r, c] = heap.top();
            heap.pop();
            if (row_dead[r] || col_dead[c]) continue;
            auto it = rows[r].find(c);
            if (it == rows[r].end() || abs(it->second) != 1) continue;
            long cur = (row_nnz(r) - 1) * (col_nnz(c) - 1);
            if (cur > score) {  // stale score, re-enqueue
                heap.push({cur, r, c});
                continue;
            }
            eliminate(r, c, it->second, push_row);
        }
    }

    template <typename PushRow>
    void eliminate(long pr, long pc, Int pv, const PushRow& push_row) {
        // rows[k] -= a_kc * pv * rows[pr]  (pv = +-1, so this clears a_kc)
        std::vector<long> affected(cols[pc].begin(), cols[pc].end());
        for (long k : affected) {
            if (k == pr) continue;
            Int factor = rows[k][pc] * pv;
            for (const auto& [j, v] : rows[pr]) {
                Int& slot = rows[k][j];
                bool was_zero = slot == 0;
                slot -= factor * v;
                if (slot == 0) {
                    rows[k].erase(j);
                    cols[j].erase(k);
                } else if (was_zero) {
                    cols[j].insert(k);
                }
            }
            push_row(k);
        }
        for (const auto& [j, v] : rows[pr]) cols[j].erase(pr);
        rows[pr].clear();
        row_dead[pr] = true;
        col_dead[pc] = true;
        ++eliminated;
    }

    std::vector<std::vector<Int>> residual_dense() const {
        std::vector<long> live_rows, live_cols;
        for (long r = 0; r < nrows; ++r)
            if (!row_dead[r] && !rows[r].empty()) live_rows.push_back(r);
        std::vector<bool> col_used(ncols, false);
        for (long r : live_rows)
            for (const auto& [c, v] : rows[r]) col_used[c] = true;
        for (long c = 0; c < ncols; ++c)
            if (col_used[c]) live_cols.push_back(c);
        std::unordered_map<long, long> cidx;
        for (std::size_t i = 0; i < live_cols.size(); ++i) cidx[live_cols[i]] = static_cast<long>(i);
        std::vector<std::vector<Int>> dense(live_rows.size(), std::vector<Int>(live_cols.size(), 0));
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : rows[live_rows[i]]) dense[i][cidx[c]] = v;
        return dense;
    }
};

}  // namespace

SmithResult elementary_divisors(const SparseIntMat& m) {
    SparseElim elim(m);
    elim.run();
    SmithResult core = dense_smith(elim.residual_dense());
    SmithResult res;
    res.rank = elim.eliminated + core.rank;
    res.divisors.assign(static_cast<std::size_t>(elim.eliminated), Int(1));
    res.divisors.insert(res.divisors.end(), core.divisors.begin(), core.divisors.end());
    // unit pivots contribute divisor 1; the dense core is in divisibility
    // order, so the combined list is too
    for (std::size_t i = 0; i + 1 < res.divisors.size(); ++i)
        assert(res.divisors[i + 1] % res.divisors[i] == 0);
    return res;
}

}  // namespace picard
