// Copyright 2026 The ldpfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPFAIR_HASHING_H_
#define LDPFAIR_HASHING_H_

#include <string>
#include <string_view>

namespace ldpfair {

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// First 16 hex digits of the SHA-256; used as a short content/config tag.
std::string ShortHash(std::string_view data);

}  // namespace ldpfair

#endif  // LDPFAIR_HASHING_H_
