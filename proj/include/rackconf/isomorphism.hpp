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

#include <span>
#include <string>

#include "rackconf/model.hpp"

namespace rackconf {

// Canonical encoding of a configuration up to renaming of object ids: two
// fact sets get the same encoding iff some bijection on ids maps one onto
// the other while preserving classes and links. Computed by colour
// refinement plus individualization of the remaining ambiguous objects.
std::string canonical_form(std::span<const Fact> facts);
std::string canonical_form(const ConfigurationState& state);

bool isomorphic(const ConfigurationState& a, const ConfigurationState& b);

}  // namespace rackconf
