#include "hypertda/gf2.hpp"

#include <algorithm>

namespace hypertda {

void symmetric_difference_inplace(std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a = std::move(out);
}

bool Gf2ColumnReducer::absorb(std::vector<std::int32_t>& col) {
    while (!col.empty()) {
        std::int32_t low = col.back();
        std::int32_t owner = pivot_of_row_[static_cast<std::size_t>(low)];
        if (owner < 0) {
            pivot_of_row_[static_cast<std::size_t>(low)] = static_cast<std::int32_t>(pivot_cols_.size());
            pivot_cols_.push_back(col);
            return true;
        }
        symmetric_difference_inplace(col, pivot_cols_[static_cast<std::size_t>(owner)]);
    }
    return false;
}

bool Gf2ColumnReducer::absorb_tracked(std::vector<std::int32_t>& col, std::vector<std::int32_t>& track) {
    while (!col.empty()) {
        std::int32_t low = col.back();
        std::int32_t owner = pivot_of_row_[static_cast<std::size_t>(low)];
        if (owner < 0) {
            pivot_of_row_[static_cast<std::size_t>(low)] = static_cast<std::int32_t>(pivot_cols_.size());
            pivot_cols_.push_back(col);
            pivot_tracks_.push_back(track);
            return true;
        }
        symmetric_difference_inplace(col, pivot_cols_[static_cast<std::size_t>(owner)]);
        if (static_cast<std::size_t>(owner) < pivot_tracks_.size())
            symmetric_difference_inplace(track, pivot_tracks_[static_cast<std::size_t>(owner)]);
    }
    return false;
}

std::int64_t rank_gf2(const Gf2Matrix& m) {
    Gf2ColumnReducer reducer(m.rows);
    std::vector<std::int32_t> col;
    for (const auto& c : m.cols) {
        col = c;
        reducer.absorb(col);
    }
    return static_cast<std::int64_t>(reducer.rank());
}

}  // namespace hypertda
