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

#ifndef IMDEG_HASH_HPP_
#define IMDEG_HASH_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace imdeg {

// Incremental SHA-256.  Used for content digests in calibration documents
// and manifests (change detection, not security).
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  void update(const std::string& s) { update(s.data(), s.size()); }
  // Finalizes and returns the lowercase hex digest.  The object must not be
  // updated afterwards.
  std::string hex_digest();

 private:
  void process_block(const std::uint8_t* block);

  std::uint32_t state_[8];
  std::uint64_t bit_count_;
  std::uint8_t buffer_[64];
  std::size_t buffer_len_;
};

std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

// 64-bit FNV-1a, for cheap non-cryptographic folding (stream ids, config
// fingerprints embedded in seeds).
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 14695981039346656037ULL);
std::uint64_t fnv1a64(const std::string& s);

}  // namespace imdeg

#endif  // IMDEG_HASH_HPP_
