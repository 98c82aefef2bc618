#pragma once

#include <cstdint>
#include <string>

#include "gdfc/network.hpp"

namespace gdfc {

struct GradCheckReport {
  std::size_t architectures = 0;
  std::size_t parameters_checked = 0;
  double max_rel_err = 0.0;
  bool pass = false;
  std::string worst_case;
};

/// Compares every analytic parameter gradient produced by backward()
/// against a central finite difference of the loss, over randomized
/// architectures (2-4 weight layers, widths 2-8) and xi in {0, 0.5, 1},
/// lambda in {0, 1e-3}. The numeric side re-runs forward() and
/// centroid_loss() only.
GradCheckReport run_gradient_check(std::uint64_t seed,
                                   std::size_t n_architectures = 10,
                                   double rel_tol = 1e-5,
                                   double abs_floor = 1e-7,
                                   double step = 1e-5);

}  // namespace gdfc
