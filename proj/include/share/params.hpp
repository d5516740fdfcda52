#pragma once

#include "share/error.hpp"

namespace share {

/// Constants of the weighted competition dynamics shared by every
/// sub-species in a run. `capacity` is the contested resource C = N - n.
struct CompetitionParams {
  double alpha = 0.9;
  double r = 1.95;
  double capacity = 0.0;
  double step = 1.0;
  double tolerance = 1e-6;
  int max_rounds = 10000;

  /// Throws Error naming the offending field. r is only required to be
  /// positive: runs with r >= 2 are allowed and report non-convergence
  /// instead of being rejected up front.
  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("params.alpha: must be in (0, 1)");
    if (!(r > 0.0)) throw Error("params.r: must be > 0");
    if (!(capacity >= 0.0)) throw Error("params.capacity: must be >= 0");
    if (!(step > 0.0)) throw Error("params.step: must be > 0");
    if (!(tolerance > 0.0)) throw Error("params.tolerance: must be > 0");
    if (max_rounds < 1) throw Error("params.max_rounds: must be >= 1");
  }
};

}  // namespace share
