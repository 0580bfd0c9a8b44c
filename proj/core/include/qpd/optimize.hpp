// Copyright 2026 The qpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPD_OPTIMIZE_HPP_
#define QPD_OPTIMIZE_HPP_

// Deterministic bounded search: a uniform grid locates the basin, then
// golden-section line searches refine one coordinate at a time.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qpd {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchResult {
  std::vector<double> argmax;  // best parameters (the minimizer when minimizing)
  double value = 0.0;
  std::size_t evaluations = 0;
};

enum class Sense { kMaximize, kMinimize };

using Objective = std::function<double(std::span<const double>)>;

struct SearchOptions {
  std::size_t grid_n = 33;       // points per dimension, endpoints included
  double param_tol = 1e-6;       // final bracket width per coordinate
  double tie_tol = 1e-12;        // grid values closer than this count as ties
  std::size_t max_sweeps = 60;   // coordinate sweeps in the multi-D refinement
};

// Golden-section search for the optimum of a unimodal f on [lo, hi]. Returns
// the midpoint of the final bracket, whose width is at most tol.
double GoldenSection(const std::function<double(double)>& f, double lo,
                     double hi, double tol, Sense sense,
                     std::size_t* evaluations = nullptr);

// Grid scan in lexicographic order (first coordinate outermost, earliest
// point wins ties) followed by coordinate-wise golden refinement. The grid
// point is kept unless refinement strictly improves on it.
SearchResult GridRefineSearch(const Objective& f,
                              std::span<const Interval> bounds, Sense sense,
                              const SearchOptions& options = {});

}  // namespace qpd

#endif  // QPD_OPTIMIZE_HPP_
