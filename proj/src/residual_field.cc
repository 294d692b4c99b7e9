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

#include "azana/residual_field.h"

#include <cmath>
#include <string>

#include "azana/error.h"

namespace azana {

ResidualField::ResidualField(int num_steps, int component_dim,
                             std::vector<std::string> sensors)
    : num_steps_(num_steps),
      component_dim_(component_dim),
      sensors_(std::move(sensors)) {
  if (num_steps_ < 1) throw InputError("residual field needs T >= 1");
  if (component_dim_ < 1) throw InputError("residual dimension must be >= 1");
  for (int i = 0; i < num_sensors(); ++i) {
    if (!sensor_index_.emplace(sensors_[i], i).second) {
      throw InputError("duplicate sensor id '" + sensors_[i] + "'");
    }
  }
  const std::size_t cells =
      static_cast<std::size_t>(num_steps_) * sensors_.size();
  values_.assign(cells * component_dim_, 0.0);
  mask_.assign(cells, 0);
}

std::optional<int> ResidualField::FindSensor(std::string_view id) const {
  auto it = sensor_index_.find(std::string(id));
  if (it == sensor_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ResidualField::Cell(int t, int sensor) const {
  if (t < 1 || t > num_steps_ || sensor < 0 || sensor >= num_sensors()) {
    throw InputError("residual cell (t=" + std::to_string(t) + ", sensor=" +
                     std::to_string(sensor) + ") out of range");
  }
  return static_cast<std::size_t>(t - 1) * sensors_.size() + sensor;
}

std::span<const double> ResidualField::at(int t, int sensor) const {
  return {values_.data() + Cell(t, sensor) * component_dim_,
          static_cast<std::size_t>(component_dim_)};
}

void ResidualField::Set(int t, int sensor, std::span<const double> value) {
  const std::size_t cell = Cell(t, sensor);
  if (value.size() != static_cast<std::size_t>(component_dim_)) {
    throw InputError("residual at (t=" + std::to_string(t) + ", sensor '" +
                     sensors_[sensor] + "') has dimension " +
                     std::to_string(value.size()) + ", expected " +
                     std::to_string(component_dim_));
  }
  for (double x : value) {
    if (!std::isfinite(x)) {
      throw InputError("non-finite residual at (t=" + std::to_string(t) +
                       ", sensor '" + sensors_[sensor] + "')");
    }
  }
  std::copy(value.begin(), value.end(),
            values_.begin() + cell * component_dim_);
  mask_[cell] = 1;
}

void ResidualField::Clear(int t, int sensor) {
  const std::size_t cell = Cell(t, sensor);
  std::fill_n(values_.begin() + cell * component_dim_, component_dim_, 0.0);
  mask_[cell] = 0;
}

std::size_t ResidualField::num_available() const {
  std::size_t n = 0;
  for (auto m : mask_) n += m;
  return n;
}

ResidualField ResidualField::Component(int component) const {
  if (component < 0 || component >= component_dim_) {
    throw InputError("component " + std::to_string(component) +
                     " out of range");
  }
  ResidualField out(num_steps_, 1, sensors_);
  for (std::size_t cell = 0; cell < mask_.size(); ++cell) {
    out.mask_[cell] = mask_[cell];
    out.values_[cell] = values_[cell * component_dim_ + component];
  }
  return out;
}

}  // namespace azana
