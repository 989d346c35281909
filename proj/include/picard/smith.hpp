#pragma once

// Sparse exact integer linear algebra: elementary divisors via unit-pivot
// sparse elimination (Markowitz fill scoring) followed by a dense Smith
// reduction of the residual core.  All arithmetic is arbitrary precision.

#include <vector>

#include "picard/numeric.hpp"

namespace picard {

struct Triplet {
    long row, col;
    Int val;
};

class SparseIntMat {
public:
    SparseIntMat(long rows = 0, long cols = 0) : rows_(rows), cols_(cols) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    void add(long r, long c, const Int& v);  // accumulate, drop on zero
    std::vector<Triplet> triplets() const;
    std::size_t nnz() const;

    friend SparseIntMat operator*(const SparseIntMat& a, const SparseIntMat& b);
    bool is_zero() const;

    std::string to_text() const;  // "rows cols" header then triplet lines
    static SparseIntMat from_text(const std::string& text);

    // entries keyed by (row, col); exposed for the reduction
    std::vector<std::vector<std::pair<long, Int>>> row_data() const;

private:
    long rows_, cols_;
    std::vector<std::pair<std::pair<long, long>, Int>> entries_;  // unordered COO
    friend class SmithReducer;
};

struct SmithResult {
    long rank = 0;
    std::vector<Int> divisors;  // nonzero diagonal in divisibility order
};

SmithResult elementary_divisors(const SparseIntMat& m);

// dense reference used by callers wanting the classical algorithm directly
SmithResult dense_smith(std::vector<std::vector<Int>> a);

}  // namespace picard
