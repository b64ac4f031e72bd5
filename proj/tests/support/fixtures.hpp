// Small codes used across the suites.
#pragma once

#include <vector>

#include "rankguard/polar.hpp"

namespace fixtures {

// N=2, uniform half-erasure channel, rate 1/2: info {2}, frozen {1}.
inline rankguard::PolarCode toy2() {
    return rankguard::build_code(1, {0.5, 0.5}, 0.5);
}

// N=4, rate 1/4: info {4}, frozen {1,2,3}.
inline rankguard::PolarCode quarter4() {
    return rankguard::build_code(2, std::vector<double>(4, 0.5), 0.25);
}

// N=4, rate 3/4: info {2,3,4}, frozen {1}.
inline rankguard::PolarCode three_quarter4() {
    return rankguard::build_code(2, std::vector<double>(4, 0.5), 0.75);
}

}  // namespace fixtures
