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

// Reference fixture: seven alert types with their daily count statistics and
// payoff table, as observed on an EMR access log.

#ifndef SAG_DEFAULTS_HPP_
#define SAG_DEFAULTS_HPP_

#include "sag/datagen.hpp"
#include "sag/types.hpp"

namespace sag::defaults {

inline constexpr double kQuitProb = 0.186;
inline constexpr double kQuitLoss = -1.0;
inline constexpr double kBudget = 50.0;
inline constexpr double kAlpha = 0.01;
inline constexpr std::size_t kHistoryDays = 41;
inline constexpr std::size_t kTestDays = 15;

PayoffStructure reference_payoffs(double quit_prob = kQuitProb, double quit_loss = kQuitLoss);
ArrivalSpec reference_arrivals();

}  // namespace sag::defaults

#endif  // SAG_DEFAULTS_HPP_
