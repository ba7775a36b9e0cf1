// Copyright 2025 the apgap authors
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
#include <functional>
#include <vector>

namespace apgap {

// One residue class r (mod q): the progression r + q*j. Gap streams are only
// coherent for even q, so q odd is rejected everywhere.
struct APClass {
    uint64_t q = 0;
    uint64_t r = 0;

    void validate() const;  // q even >= 2, 1 <= r < q, gcd(r, q) == 1
};

struct SieveConfig {
    // Flags (odd numbers) per segment; the default keeps segments L2-resident.
    uint64_t segment_flags = uint64_t{1} << 22;

    void validate() const;
};

// Exact primality for n < 2^63 via a strong-probable-prime test with a fixed
// witness set that is deterministic below 2^64.
bool is_prime(uint64_t n);

// Sieves the single window [lo, hi] (inclusive) and appends its primes in
// ascending order. The caller bounds the window; survey code drives its own
// segmentation through this.
void sieve_window(uint64_t lo, uint64_t hi, std::vector<uint64_t>& out);

// Exactly the primes in [lo, hi], ascending; segmentation is invisible.
// Requires 2 <= lo <= hi < 2^63.
void primes_in_range(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& sink,
                     const SieveConfig& cfg = {});

// The primes p in [lo, hi] with p == r (mod q), ascending.
void primes_in_class(const APClass& cls, uint64_t lo, uint64_t hi,
                     const std::function<void(uint64_t)>& sink, const SieveConfig& cfg = {});

// Smallest prime p > after with p == r (mod q); scans by steps of q.
// Throws range_error if the scan would pass 2^63.
uint64_t next_prime_in_class(const APClass& cls, uint64_t after);

// pi(x), exact. Segments are sieved concurrently when threads > 1; the count
// reducer is order-insensitive.
uint64_t prime_count(uint64_t x, const SieveConfig& cfg = {}, int threads = 1);

}  // namespace apgap
