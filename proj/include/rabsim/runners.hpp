#ifndef RABSIM_RUNNERS_HPP
#define RABSIM_RUNNERS_HPP

#include <functional>
#include <optional>

#include "rabsim/result_table.hpp"
#include "rabsim/scenario.hpp"

// Experiment runners. Sweep points are dispatched to a worker pool;
// results are gathered in input order, so tables are identical for any
// thread count.

namespace rabsim {

ResultTable run_rabi_compare(const Scenario& s);
ResultTable run_fidelity_curve(const Scenario& s);
ResultTable run_phase_curve(const Scenario& s);
ResultTable run_distance_sweep(const Scenario& s, int threads = 0);
ResultTable run_lifetime_sweep(const Scenario& s, int threads = 0);

/// Dispatch on s.experiment.
ResultTable run_scenario(const Scenario& s, int threads = 0);

/// Contiguous region around `nominal` where f > threshold, with linearly
/// interpolated edges. `bounded` is false when the region reaches the
/// end of the grid (the true edge lies outside the sweep).
struct ThresholdWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_bounded = true;
  bool hi_bounded = true;

  double width() const { return hi - lo; }
  /// Largest symmetric deviation range about the nominal point,
  /// 2 * min(nominal - lo, hi - nominal).
  double symmetric_width(double nominal) const;
};

std::optional<ThresholdWindow> threshold_window(const std::vector<double>& x,
                                                const std::vector<double>& f,
                                                double nominal,
                                                double threshold);

/// Run fn(i) for i in [0, n) on `threads` workers (0 = all cores).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace rabsim

#endif  // RABSIM_RUNNERS_HPP
