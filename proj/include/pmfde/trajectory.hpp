#pragma once

#include <vector>

#include "pmfde/grid.hpp"

namespace pmfde {

/// Time-indexed sequence of fields plus per-step solver metadata.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> fields;
  std::vector<int> newton_iters;       // per accepted step, 0 for the initial level
  std::vector<double> residual_norms;  // final Newton residual per accepted step
  int clip_count = 0;                  // entries clipped from (-tol, 0) to 0
  bool truncation_warning = false;     // Cauchy runs: boundary cell exceeded tolerance

  int levels() const { return static_cast<int>(times.size()); }
  int cells() const { return fields.empty() ? 0 : static_cast<int>(fields.front().size()); }
};

}  // namespace pmfde
