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

#include "qpd/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "qpd/errors.hpp"

namespace qpd {
namespace {

// Maps both senses onto maximization.
double Oriented(double v, Sense sense) {
  return sense == Sense::kMaximize ? v : -v;
}

}  // namespace

double GoldenSection(const std::function<double(double)>& f, double lo,
                     double hi, double tol, Sense sense,
                     std::size_t* evaluations) {
  if (!(hi >= lo)) throw RangeError("golden section: empty bracket");
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  std::size_t evals = 0;
  auto g = [&](double x) {
    ++evals;
    return Oriented(f(x), sense);
  };
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > tol) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  if (evaluations != nullptr) *evaluations += evals;
  return 0.5 * (a + b);
}

SearchResult GridRefineSearch(const Objective& f,
                              std::span<const Interval> bounds, Sense sense,
                              const SearchOptions& options) {
  const std::size_t dims = bounds.size();
  if (dims == 0) throw RangeError("search: no dimensions");
  if (options.grid_n < 2) throw RangeError("search: grid_n must be >= 2");
  for (const auto& iv : bounds) {
    if (!(iv.hi >= iv.lo)) throw RangeError("search: invalid interval");
  }

  SearchResult result;
  auto eval = [&](std::span<const double> x) {
    ++result.evaluations;
    return Oriented(f(x), sense);
  };

  std::vector<double> step(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    step[d] = (bounds[d].hi - bounds[d].lo) /
              static_cast<double>(options.grid_n - 1);
  }

  std::vector<std::size_t> index(dims, 0);
  std::vector<double> point(dims);
  std::vector<double> best_point;
  double best = 0.0;
  bool have_best = false;
  for (bool done = false; !done;) {
    for (std::size_t d = 0; d < dims; ++d) {
      point[d] = index[d] + 1 == options.grid_n
                     ? bounds[d].hi
                     : bounds[d].lo + step[d] * static_cast<double>(index[d]);
    }
    const double v = eval(point);
    if (!have_best || v > best + options.tie_tol) {
      best = v;
      best_point = point;
      have_best = true;
    }
    // Odometer increment; the last coordinate varies fastest.
    done = true;
    for (std::size_t d = dims; d-- > 0;) {
      if (++index[d] < options.grid_n) {
        done = false;
        break;
      }
      index[d] = 0;
    }
  }

  std::vector<double> x = best_point;
  std::vector<double> radius = step;
  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t d = 0; d < dims; ++d) {
      const double lo = std::max(bounds[d].lo, x[d] - radius[d]);
      const double hi = std::min(bounds[d].hi, x[d] + radius[d]);
      if (hi - lo <= 0.0) continue;
      std::vector<double> probe = x;
      auto line = [&](double t) {
        probe[d] = t;
        return f(probe);
      };
      const double t = GoldenSection(line, lo, hi, options.param_tol, sense,
                                     &result.evaluations);
      probe[d] = t;
      const double v = eval(probe);
      if (v > best) {
        best = v;
        x[d] = t;
        improved = true;
      }
    }
    if (dims == 1 || !improved) break;
    bool all_fine = true;
    for (std::size_t d = 0; d < dims; ++d) {
      radius[d] = std::max(radius[d] * 0.5, options.param_tol);
      all_fine = all_fine && radius[d] <= options.param_tol;
    }
    if (all_fine) break;
  }

  result.argmax = x;
  result.value = Oriented(best, sense);
  return result;
}

}  // namespace qpd
