#pragma once

#include <vector>

#include "cpdc/jsa.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

enum class Bipartition { One_23, Two_13, Three_12 };

const char* to_string(Bipartition b);
Bipartition bipartition_from_string(const std::string& s);

struct SchmidtReport {
  double schmidt_number = 1.0;         // 1/purity
  double purity = 1.0;                 // sum sigma_k^4 after L2 normalization
  std::vector<double> singular_values; // normalized, sum of squares = 1
};

/// Unfolds the amplitude tensor over the bipartition, L2-normalizes it and
/// runs an SVD. Throws NumericalError on an all-zero grid.
SchmidtReport schmidt_analysis(const JointAmplitudeGrid& grid, Bipartition bipartition);

}  // namespace cpdc
