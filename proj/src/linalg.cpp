#include "qska/linalg.hpp"

#include "qska/errors.hpp"

#include <cstddef>
#include <utility>

namespace qska {

Vec linear_solve(Mat a, Vec b) {
    const size_t n = a.size();
    if (n == 0 || b.size() != n) throw SingularSystem("empty or ragged linear system");
    for (const auto& row : a)
        if (row.size() != n) throw SingularSystem("matrix is not square");
    const Mat a0 = a;
    const Vec b0 = b;

    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw SingularSystem("zero pivot column " + std::to_string(col));
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const RatF inv = a[col][col].inv();
        for (size_t j = col; j < n; ++j) a[col][j] = a[col][j] * inv;
        b[col] = b[col] * inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            const RatF f = a[row][col];
            for (size_t j = col; j < n; ++j) a[row][j] = a[row][j] - f * a[col][j];
            b[row] = b[row] - f * b[col];
        }
    }

    // exact back-substitution check against the untouched system
    for (size_t i = 0; i < n; ++i) {
        RatF acc;
        for (size_t j = 0; j < n; ++j) acc = acc + a0[i][j] * b[j];
        if (acc != b0[i]) throw SingularSystem("solution failed the residual check");
    }
    return b;
}

} // namespace qska
