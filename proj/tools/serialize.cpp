// Copyright 2026 The ddatom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "serialize.hpp"

#include <cstdio>
#include <cstdlib>

namespace ddatom::tools {

std::string fmt12(double value) {
  if (value == 0.0) value = 0.0;  // collapse -0 into 0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double reround(double value) {
  return std::strtod(fmt12(value).c_str(), nullptr);
}

}  // namespace ddatom::tools
