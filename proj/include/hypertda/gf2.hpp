#pragma once

#include <cstdint>
#include <vector>

namespace hypertda {

// Column-major matrix over GF(2); each column is the sorted set of its
// nonzero row indices.
struct Gf2Matrix {
    std::int64_t rows = 0;
    std::vector<std::vector<std::int32_t>> cols;

    std::int64_t col_count() const { return static_cast<std::int64_t>(cols.size()); }
};

// a ^= b for sorted index sets.
void symmetric_difference_inplace(std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b);

// Incremental column eliminator. The pivot of a column is its low entry
// (maximum row index); columns are absorbed in caller order, which the
// callers keep canonical, so results are deterministic.
class Gf2ColumnReducer {
public:
    explicit Gf2ColumnReducer(std::int64_t rows) : pivot_of_row_(static_cast<std::size_t>(rows), -1) {}

    // Reduces col against the stored pivots. Returns true if col survived and
    // was installed as a new pivot; false if it reduced to zero.
    bool absorb(std::vector<std::int32_t>& col);

    // As absorb, but XORs tracked companions alongside (kernel tracking).
    bool absorb_tracked(std::vector<std::int32_t>& col, std::vector<std::int32_t>& track);

    std::size_t rank() const { return pivot_cols_.size(); }
    const std::vector<std::vector<std::int32_t>>& pivot_columns() const { return pivot_cols_; }

private:
    std::vector<std::int32_t> pivot_of_row_;  // row -> index into pivot_cols_, or -1
    std::vector<std::vector<std::int32_t>> pivot_cols_;
    std::vector<std::vector<std::int32_t>> pivot_tracks_;
};

// Rank over GF(2) via column elimination; m is not modified.
std::int64_t rank_gf2(const Gf2Matrix& m);

}  // namespace hypertda
