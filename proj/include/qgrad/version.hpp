// Copyright 2026 The qgrad Authors
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

#pragma once

namespace qgrad {

/** Library release version. */
inline constexpr const char* kVersion = "0.1.0";

/**
 * Version of the device-facing API. A device declares the api_version it
 * was written against; it loads when its major version matches and its
 * minor version does not exceed the current one.
 */
inline constexpr const char* kApiVersion = "0.1.0";

} // namespace qgrad
