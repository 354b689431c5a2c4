#pragma once

#include <cstdint>
#include <vector>

#include "brp/io.hpp"

namespace brp {

// dY = Y dX driven by a +-1/sqrt(M) walk, float mode, Ito lift at level 2
struct DeskPath {
    std::uint32_t seed = 0;
    double X_T = 0, qv = 0;  // X_T and sum of squared increments
    double Y_T = 0, exact = 0, rel_error = 0;
    double sym_total = 0;  // simplified symmetric component summed over steps
    bool sym_exact = false;
};

struct DeskSummary {
    int paths = 0;
    int steps = 0;
    double mean_rel_error = 0, max_rel_error = 0;
    bool sym_exact_all = true;
    std::vector<DeskPath> runs;
};

DeskSummary desk_gbm(int paths, int steps, std::uint32_t first_seed);
json to_json(const DeskSummary& s);

}  // namespace brp
