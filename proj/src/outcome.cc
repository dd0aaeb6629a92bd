// Copyright 2026 The eprb Authors
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

#include "eprb/outcome.h"

namespace eprb {

std::string_view symbol(Outcome o) { return o == Outcome::plus ? "+" : "−"; }

std::string compact(JointOutcome o) {
  std::string s(symbol(o.a));
  s += symbol(o.b);
  return s;
}

}  // namespace eprb
