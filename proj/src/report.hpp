// Copyright 2026 The aqrm Authors
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

#ifndef AQRM_REPORT_HPP_
#define AQRM_REPORT_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace aqrm {

/// One named check inside a verification run.
struct CheckItem {
  std::string name;
  bool passed = false;
  nlohmann::json detail = nlohmann::json::object();
};

/// Aggregated verification outcome. Item order is insertion order, so the
/// serialized form is deterministic for a fixed seed.
class CheckReport {
 public:
  explicit CheckReport(std::string title) : title_(std::move(title)) {}

  void add(std::string name, bool passed, nlohmann::json detail = nlohmann::json::object());
  void merge(const CheckReport& other);

  const std::string& title() const { return title_; }
  const std::vector<CheckItem>& items() const { return items_; }
  bool passed() const;
  size_t failures() const;
  nlohmann::json to_json() const;

 private:
  std::string title_;
  std::vector<CheckItem> items_;
};

}  // namespace aqrm

#endif  // AQRM_REPORT_HPP_
