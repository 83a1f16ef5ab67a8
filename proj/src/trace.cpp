// Copyright 2026 The Twistgrip Authors
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

#include "twistgrip/trace.hpp"

#include <cstdio>

namespace twistgrip {

const char* const kTraceCsvHeader =
    "t,theta_m,omega,tau_m_true,tau_m_meas,mode,theta_w,aperture,f_tip,"
    "controller_phase";

std::string to_csv_row(const TraceRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%.9g,%.9g,%.9g,%.9g,%.9g,%c,%.9g,%.9g,%.9g,%s", r.t,
                r.theta_m, r.omega, r.tau_m_true, r.tau_m_meas, r.mode,
                r.theta_w, r.aperture, r.f_tip, r.controller_phase.c_str());
  return buf;
}

}  // namespace twistgrip
