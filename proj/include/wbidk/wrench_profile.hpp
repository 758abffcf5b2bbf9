// Copyright 2026 The wbidk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wbidk/types.hpp"

namespace wbidk {

// Scripted stand-in for the human operator: a sequence of timed wrench
// segments. The wrench is zero outside every segment.
struct WrenchSegment {
  enum class Kind { Constant, Ramp, Sinusoid };

  double start = 0.0;     // s
  double duration = 0.0;  // s
  Kind kind = Kind::Constant;
  Vector6d value = Vector6d::Zero();      // constant value / ramp start / offset
  Vector6d value_end = Vector6d::Zero();  // ramp end
  Vector6d amplitude = Vector6d::Zero();  // sinusoid
  double frequency = 0.0;                 // Hz
  double phase = 0.0;                     // rad

  Vector6d evaluate(double t) const {
    switch (kind) {
      case Kind::Constant:
        return value;
      case Kind::Ramp:
        return value + (t - start) / duration * (value_end - value);
      case Kind::Sinusoid:
        return value +
               amplitude * std::sin(2.0 * std::numbers::pi * frequency *
                                        (t - start) +
                                    phase);
    }
    return Vector6d::Zero();
  }
};

struct WrenchProfile {
  std::vector<WrenchSegment> segments;  // sorted by start, non-overlapping

  void validate() const {
    double prev_end = -std::numeric_limits<double>::infinity();
    for (const auto& s : segments) {
      if (!(s.duration > 0.0))
        throw std::invalid_argument("wrench segment duration must be > 0");
      if (s.start < prev_end)
        throw std::invalid_argument(
            "wrench segments must be sorted and non-overlapping");
      if (!all_finite(s.value) || !all_finite(s.value_end) ||
          !all_finite(s.amplitude) || !std::isfinite(s.frequency) ||
          !std::isfinite(s.phase) || !std::isfinite(s.start))
        throw std::invalid_argument("wrench segment has non-finite entries");
      prev_end = s.start + s.duration;
    }
  }

  Wrench evaluate(double t) const {
    for (const auto& s : segments) {
      if (t >= s.start && t < s.start + s.duration)
        return Wrench::from_vector(s.evaluate(t));
      if (t < s.start) break;
    }
    return Wrench{};
  }

  double end_time() const {
    double end = 0.0;
    for (const auto& s : segments) end = std::max(end, s.start + s.duration);
    return end;
  }
};

}  // namespace wbidk
