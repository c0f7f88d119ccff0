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

#ifndef DDATOM_TOOLS_SERIALIZE_HPP
#define DDATOM_TOOLS_SERIALIZE_HPP

#include <string>

namespace ddatom::tools {

// All numbers leave the tool with 12 significant digits, C locale, so that
// identical runs produce identical bytes on any machine. fmt12 is the CSV
// form; reround pushes a value through that textual form so JSON output
// carries the same 12-digit precision.
std::string fmt12(double value);
double reround(double value);

}  // namespace ddatom::tools

#endif  // DDATOM_TOOLS_SERIALIZE_HPP
