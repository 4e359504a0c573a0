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

#include "report.hpp"

#include <algorithm>

namespace aqrm {

void CheckReport::add(std::string name, bool passed, nlohmann::json detail) {
  items_.push_back({std::move(name), passed, std::move(detail)});
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& item : other.items_) items_.push_back({other.title_ + "/" + item.name, item.passed, item.detail});
}

bool CheckReport::passed() const {
  return std::all_of(items_.begin(), items_.end(), [](const CheckItem& i) { return i.passed; });
}

size_t CheckReport::failures() const {
  return static_cast<size_t>(std::count_if(items_.begin(), items_.end(), [](const CheckItem& i) { return !i.passed; }));
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& item : items_) {
    nlohmann::json entry = {{"name", item.name}, {"passed", item.passed}};
    if (!item.detail.empty()) entry["detail"] = item.detail;
    checks.push_back(std::move(entry));
  }
  return {{"report", title_}, {"passed", passed()}, {"failures", failures()}, {"checks", checks}};
}

}  // namespace aqrm
