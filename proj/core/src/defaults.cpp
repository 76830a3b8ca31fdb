// Copyright 2026 The SAG Authors.
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

#include "sag/defaults.hpp"

#include <array>

namespace sag::defaults {

PayoffStructure reference_payoffs(double quit_prob, double quit_loss) {
  struct Row {
    const char* name;
    double u_dc, u_du, u_ac, u_au;
  };
  static constexpr std::array<Row, 7> kRows{{
      {"Same Last Name", 100, -400, -2000, 400},
      {"Department Co-worker", 150, -500, -2250, 400},
      {"Neighbor (<= 0.5 miles)", 150, -600, -2500, 450},
      {"Same Address", 300, -800, -2500, 600},
      {"Last Name; Neighbor", 400, -1000, -3000, 650},
      {"Last Name; Same Address", 600, -1500, -5000, 700},
      {"Last Name; Same Address; Neighbor", 700, -2000, -6000, 800},
  }};
  std::vector<TypePayoff> types;
  for (const auto& r : kRows) {
    types.push_back({r.name, r.u_dc, r.u_du, r.u_ac, r.u_au, 1.0, quit_prob, quit_loss});
  }
  return PayoffStructure(std::move(types));
}

ArrivalSpec reference_arrivals() {
  ArrivalSpec spec;
  spec.types = {{196.57, 17.30}, {29.02, 5.56}, {140.46, 23.23}, {10.84, 3.73},
                {25.43, 4.51},   {15.14, 4.10}, {43.27, 6.45}};
  spec.hourly_shape = default_hourly_shape();
  return spec;
}

}  // namespace sag::defaults
