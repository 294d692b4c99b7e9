// Copyright 2026 The Azana Authors.
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

#ifndef AZANA_EXACT_SUM_H_
#define AZANA_EXACT_SUM_H_

#include <vector>

namespace azana {

// Accumulates doubles without intermediate rounding error (Shewchuk's
// non-overlapping partials). Value() returns the correctly rounded sum, so the
// result does not depend on the order in which terms were added. Scores rely
// on this to be bit-identical across edge orderings, sensor relabelings and
// parallel schedules.
class ExactSum {
 public:
  ExactSum() = default;

  void Add(double x);
  void Add(const ExactSum& other);
  double Value() const;

 private:
  std::vector<double> partials_;
};

}  // namespace azana

#endif  // AZANA_EXACT_SUM_H_
