// Copyright 2026 the imdeg authors. All rights reserved.
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

#ifndef IMDEG_EMBEDDED_DATA_HPP_
#define IMDEG_EMBEDDED_DATA_HPP_

#include <string>

namespace imdeg {

// Data files compiled into the library at build time (see data/ in the
// source tree).  Runtime overrides take explicit file paths instead.
const std::string& embedded_registry_csv();
const std::string& embedded_schedules_json();

}  // namespace imdeg

#endif  // IMDEG_EMBEDDED_DATA_HPP_
