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

#ifndef AZANA_RESIDUAL_FIELD_H_
#define AZANA_RESIDUAL_FIELD_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace azana {

// Residual vectors r_{t,v} in R^d on a (time x sensor) grid with an
// availability mask. Time steps are 1-based and contiguous (1..T). Sensor
// identity is the string id; the position of a sensor in sensors() is its
// stable index across all time steps.
class ResidualField {
 public:
  ResidualField(int num_steps, int component_dim,
                std::vector<std::string> sensors);

  int num_steps() const { return num_steps_; }
  int component_dim() const { return component_dim_; }
  int num_sensors() const { return static_cast<int>(sensors_.size()); }
  const std::vector<std::string>& sensors() const { return sensors_; }

  std::optional<int> FindSensor(std::string_view id) const;

  bool available(int t, int sensor) const { return mask_[Cell(t, sensor)]; }
  std::span<const double> at(int t, int sensor) const;

  // Marks (t, sensor) available. Rejects vectors of the wrong length and
  // non-finite entries.
  void Set(int t, int sensor, std::span<const double> value);
  void Set(int t, int sensor, double value) {
    Set(t, sensor, std::span<const double>(&value, 1));
  }
  void Clear(int t, int sensor);

  std::size_t num_available() const;

  // Scalar field holding only the given component; the mask is unchanged.
  ResidualField Component(int component) const;

  bool operator==(const ResidualField& other) const = default;

 private:
  std::size_t Cell(int t, int sensor) const;

  int num_steps_;
  int component_dim_;
  std::vector<std::string> sensors_;
  std::unordered_map<std::string, int> sensor_index_;
  std::vector<double> values_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace azana

#endif  // AZANA_RESIDUAL_FIELD_H_
