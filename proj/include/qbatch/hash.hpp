// Copyright 2026 The qbatch Authors
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

#include <cstdint>
#include <string_view>

namespace qbatch {

/// 64-bit FNV-1a. Used for content keys and input fingerprints; not a
/// cryptographic hash.
class Fnv1a {
   public:
    void add_bytes(const void *data, std::size_t size) {
        auto *p = static_cast<const unsigned char *>(data);
        for (std::size_t i = 0; i < size; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
    }
    void add_word(std::uint64_t w) {
        for (int i = 0; i < 8; ++i) {
            unsigned char b = static_cast<unsigned char>(w >> (8 * i));
            add_bytes(&b, 1);
        }
    }
    void add_string(std::string_view s) {
        add_word(s.size());
        add_bytes(s.data(), s.size());
    }
    std::uint64_t digest() const {
        return state_;
    }

   private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv1a(std::string_view s) {
    Fnv1a h;
    h.add_bytes(s.data(), s.size());
    return h.digest();
}

/// splitmix64 finalizer, used to derive independent per-run seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace qbatch
