#pragma once

#include <string>
#include <vector>

namespace hypgraph {

struct InvariantResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;   ///< worst observed value of the checked quantity
    double tolerance = 0.0;
    std::string detail;
};

/// Quick invariant suite over all modules; randomized parts draw from `seed`.
std::vector<InvariantResult> run_invariant_suite(unsigned seed);

}  // namespace hypgraph
