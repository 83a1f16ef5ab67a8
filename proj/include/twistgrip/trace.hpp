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

#ifndef TWISTGRIP_TRACE_HPP_
#define TWISTGRIP_TRACE_HPP_

#include <functional>
#include <string>

namespace twistgrip {

// One row per plant step, mirroring the quantities a bench log would carry.
struct TraceRecord {
  double t = 0.0;
  double theta_m = 0.0;
  double omega = 0.0;       // signed commanded speed [rad/s]
  double tau_m_true = 0.0;
  double tau_m_meas = 0.0;
  char mode = 'A';
  double theta_w = 0.0;
  double aperture = 0.0;    // closing angle left before contact [rad]
  double f_tip = 0.0;
  std::string controller_phase;
};

using TraceSink = std::function<void(const TraceRecord&)>;

// Fixed CSV column order; kept in sync with to_csv_row().
extern const char* const kTraceCsvHeader;

std::string to_csv_row(const TraceRecord& record);

}  // namespace twistgrip

#endif  // TWISTGRIP_TRACE_HPP_
