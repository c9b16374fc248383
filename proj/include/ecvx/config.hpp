#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ecvx/optim1d.hpp"

namespace ecvx {

enum class ZeroMultiplier {
  EmptySupport,  // 0 h is the zero function on R
  Domain,        // 0 h is the indicator of dom h
};

struct Config {
  GridOptions x_grid;               // x window and node count for global 1-D scans
  int inner_nodes = 513;            // scan nodes for each dual inner infimum
  int w_nodes = 64;                 // per-axis nodes of the W grid
  double w_window = 4.0;            // |x*|, |y*|, |alpha| extent of the W grid
  double hull_tol = 1e-6;
  double root_tol = 1e-9;
  std::vector<double> lambda_weights = default_weights();
  int max_active = 2;               // simultaneously active constraints in a multiplier
  ZeroMultiplier zero_multiplier = ZeroMultiplier::EmptySupport;

  static std::vector<double> default_weights() {
    std::vector<double> w{0.0};
    for (int k = 0; k <= 10; ++k) w.push_back(static_cast<double>(1 << k) / 16.0);
    return w;
  }

  /// Evenly spaced W-axis samples in [-w_window, w_window], always including 0.
  std::vector<double> axis() const {
    std::vector<double> v;
    int n = std::max(w_nodes, 2);
    for (int i = 0; i < n; ++i) v.push_back(-w_window + 2.0 * w_window * i / (n - 1));
    v.push_back(0.0);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
};

}  // namespace ecvx
