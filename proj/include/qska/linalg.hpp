#pragma once

#include "qska/ratf.hpp"

#include <vector>

namespace qska {

using Vec = std::vector<RatF>;
using Mat = std::vector<Vec>;

// Exact Gaussian elimination over the rational-function field.  Throws
// SingularSystem when no unique solution exists; the returned solution is
// re-checked against the input by substitution before being handed back.
Vec linear_solve(Mat a, Vec b);

} // namespace qska
