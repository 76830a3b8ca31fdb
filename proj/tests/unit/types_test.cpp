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

#include "doctest.h"
#include "sag/defaults.hpp"
#include "sag/error.hpp"
#include "sag/types.hpp"

using namespace sag;

namespace {

TypePayoff valid() { return {"t", 100, -400, -2000, 400, 1.0, 0.186, -1.0}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no sag::Error thrown");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_SUITE("types") {

TEST_CASE("conditional attacker utility") {
  const auto pay = defaults::reference_payoffs();
  CHECK(attacker_cond_utility(0.5, 0.5, pay, 0) == doctest::Approx(-800.0));
  CHECK(attacker_cond_utility(0.0, 0.3, pay, 0) == doctest::Approx(400.0));
  CHECK(attacker_cond_utility(0.2, 0.0, pay, 0) == doctest::Approx(-2000.0));
  CHECK(code_of([&] { attacker_cond_utility(0.0, 0.0, pay, 0); }) == ErrorCode::kZeroMass);
}

TEST_CASE("auditor expected utility") {
  const auto pay = defaults::reference_payoffs();
  const std::size_t k = pay.size();
  std::vector<double> split(k, 0.0);
  std::vector<double> zero(k, 0.0);

  std::vector<SchemeEntry> mixed(k);
  mixed[0] = {0.0, 0.0, 0.5, 0.5};
  CHECK(auditor_expected_utility(SignalingScheme(mixed, split, 1.0), pay, 0, zero) ==
        doctest::Approx(-150.0));

  std::vector<SchemeEntry> warn(k, SchemeEntry{0.0, 0.0, 0.0, 0.0});
  warn[0] = {1.0, 0.0, 0.0, 0.0};
  for (std::size_t t = 1; t < k; ++t) warn[t].q0 = 1.0;
  std::vector<double> w(k, 0.0);
  w[0] = -18.6;
  CHECK(auditor_expected_utility(SignalingScheme(warn, split, 1.0), pay, 0, w) ==
        doctest::Approx(-18.6));
}

TEST_CASE("warning cost weights") {
  const auto pay = defaults::reference_payoffs();
  const std::vector<double> lambdas(pay.size(), 100.0);
  for (double w : warn_cost_weights(pay, lambdas)) CHECK(w == doctest::Approx(-18.6));
}

TEST_CASE("payoff sign conventions are enforced") {
  CHECK_NOTHROW(PayoffStructure({valid()}));
  auto bad = [](auto mutate) {
    TypePayoff p = valid();
    mutate(p);
    return code_of([&] { PayoffStructure s({p}); });
  };
  CHECK(bad([](TypePayoff& p) { p.u_ac = 0.0; }) == ErrorCode::kInvalidPayoffs);
  CHECK(bad([](TypePayoff& p) { p.u_au = 0.0; }) == ErrorCode::kInvalidPayoffs);
  CHECK(bad([](TypePayoff& p) { p.u_dc = -1.0; }) == ErrorCode::kInvalidPayoffs);
  CHECK(bad([](TypePayoff& p) { p.u_du = 0.0; }) == ErrorCode::kInvalidPayoffs);
  CHECK(bad([](TypePayoff& p) { p.audit_cost = 0.0; }) == ErrorCode::kInvalidPayoffs);
  CHECK(bad([](TypePayoff& p) { p.quit_prob = 1.5; }) == ErrorCode::kInvalidPayoffs);
  CHECK(bad([](TypePayoff& p) { p.quit_loss = 0.5; }) == ErrorCode::kInvalidPayoffs);
  CHECK(code_of([] { PayoffStructure s(std::vector<TypePayoff>{}); }) == ErrorCode::kInvalidPayoffs);
}

TEST_CASE("quit parameter sweeps") {
  const auto pay = defaults::reference_payoffs();
  const auto half = pay.with_quit_prob_scale(0.5);
  const auto loss = pay.with_quit_loss(-10.0);
  for (std::size_t t = 0; t < pay.size(); ++t) {
    CHECK(half[t].quit_prob == doctest::Approx(0.093));
    CHECK(loss[t].quit_loss == -10.0);
    CHECK(loss[t].u_dc == pay[t].u_dc);
  }
  CHECK(pay.with_quit_prob_scale(100.0)[0].quit_prob == 1.0);
}

TEST_CASE("scheme closure and ranges") {
  CHECK_NOTHROW(SignalingScheme({{0.1, 0.2, 0.3, 0.4}}, {0.5}, 1.0));
  CHECK_NOTHROW(SignalingScheme({{0.1, 0.2, 0.3, 0.4 + 5e-10}}, {0.5}, 1.0));
  CHECK(code_of([] { SignalingScheme s({{0.1, 0.2, 0.3, 0.41}}, {0.5}, 1.0); }) ==
        ErrorCode::kInvalidScheme);
  CHECK(code_of([] { SignalingScheme s({{-0.1, 0.2, 0.5, 0.4}}, {0.5}, 1.0); }) ==
        ErrorCode::kInvalidScheme);
  CHECK(code_of([] { SignalingScheme s({{0.1, 0.2, 0.3, 0.4}}, {1.5}, 1.0); }) ==
        ErrorCode::kInvalidScheme);
  CHECK(code_of([] { SignalingScheme s({{0.1, 0.2, 0.3, 0.4}}, {-0.5}, 1.0); }) ==
        ErrorCode::kInvalidScheme);
  const SchemeEntry e{0.1, 0.2, 0.3, 0.4};
  CHECK(e.coverage() == doctest::Approx(0.4));
  CHECK(e.warn_mass() == doctest::Approx(0.3));
}

TEST_CASE("reference table") {
  const auto pay = defaults::reference_payoffs();
  REQUIRE(pay.size() == 7);
  CHECK(pay[0].u_dc == 100);
  CHECK(pay[0].u_du == -400);
  CHECK(pay[6].u_ac == -6000);
  CHECK(pay[6].u_au == 800);
  CHECK(pay[3].quit_prob == doctest::Approx(0.186));
  const auto arr = defaults::reference_arrivals();
  REQUIRE(arr.types.size() == 7);
  CHECK(arr.types[0].daily_mean == doctest::Approx(196.57));
  CHECK(arr.types[6].daily_stdev == doctest::Approx(6.45));
}

}  // TEST_SUITE
