/*
   Copyright 2026 The katz1 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef KATZ1_VERSION_HPP
#define KATZ1_VERSION_HPP

namespace katz1 {

/// Embedded in every report and cache entry; a change invalidates cached operators.
inline constexpr const char* kCodeVersion = "0.1.0";

}  // namespace katz1

#endif  // KATZ1_VERSION_HPP
