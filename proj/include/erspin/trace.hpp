#pragma once

#include <vector>

namespace erspin {

struct TracePoint {
  double x;
  double y;
};

using Trace = std::vector<TracePoint>;

}  // namespace erspin
