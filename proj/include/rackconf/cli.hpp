// Copyright 2026 The rackconf Authors
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
#pragma once

#include <ostream>

namespace rackconf::cli {

// Exit codes: 0 success, 1 no solution or counterexample found, 2 usage or
// I/O error (verify also uses 2 when the algorithm fails on an input).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rackconf::cli
