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

#include "apgap/sieve.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "apgap/errors.hpp"
#include "apgap/parallel.hpp"

namespace apgap {

namespace {

constexpr uint64_t kMaxValue = uint64_t{1} << 63;

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t result = 1;
    a %= m;
    while (e) {
        if (e & 1) result = mulmod(result, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return result;
}

// Strong probable prime test to base a; n odd, n - 1 = d * 2^s.
bool sprp(uint64_t n, uint64_t a, uint64_t d, int s) {
    a %= n;
    if (a == 0) return true;
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// -------------------------------------------------------------------------
// Odd-number bitmap segments. Bit i of a segment with (odd) base b stands for
// the number b + 2i; a set bit means composite. Global odd index of an odd n
// is g(n) = (n - 1) / 2; odd multiples of an odd prime p fall on g == (p-1)/2
// (mod p).

// Presieve pattern for p in {3,5,7,11,13}: period 15015 in g-space. The
// buffer spans lcm(15015, 8) = 120120 g-slots = 15015 bytes so that segments
// whose base index is a multiple of 8 can tile it byte-wise.
constexpr uint64_t kPatternG = 15015;
constexpr uint64_t kPatternBytes = 15015;
constexpr uint64_t kPatternSpanG = 120120;

const std::vector<uint8_t>& presieve_pattern() {
    static const std::vector<uint8_t> pattern = [] {
        std::vector<uint8_t> bytes(kPatternBytes, 0);
        for (uint64_t p : {3, 5, 7, 11, 13}) {
            for (uint64_t g = (p - 1) / 2; g < kPatternSpanG; g += p)
                bytes[g >> 3] |= uint8_t(1u << (g & 7));
        }
        return bytes;
    }();
    return pattern;
}

// The pattern also flags 3,5,7,11,13 themselves (as odd multiples m=1); those
// bits are cleared after tiling when the segment covers them.
constexpr uint64_t kPresievedPrimes[] = {3, 5, 7, 11, 13};

uint64_t isqrt64(uint64_t n) {
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (root > 0 && root * root > n) --root;
    while ((root + 1) * (root + 1) <= n) ++root;
    return root;
}

// Base primes >= 17 used for segment marking, grown on demand.
std::mutex g_base_mutex;
std::shared_ptr<const std::vector<uint32_t>> g_base_primes;
uint64_t g_base_limit = 0;

std::shared_ptr<const std::vector<uint32_t>> base_primes(uint64_t limit) {
    std::scoped_lock lock(g_base_mutex);
    if (limit <= g_base_limit && g_base_primes) return g_base_primes;
    uint64_t want = std::max<uint64_t>({limit, g_base_limit * 2, 1u << 16});
    want = std::min<uint64_t>(want, 0xFFFFFFFFull);  // base primes fit uint32

    // Plain odd bit sieve to `want`.
    const uint64_t bits = want / 2 + 1;  // bit i = number 2i+1
    std::vector<uint64_t> sieve((bits + 63) / 64, 0);
    const uint64_t root = isqrt64(want);
    for (uint64_t n = 3; n <= root; n += 2) {
        if (sieve[(n >> 1) >> 6] >> ((n >> 1) & 63) & 1) continue;
        for (uint64_t m = n * n; m <= want; m += 2 * n) sieve[(m >> 1) >> 6] |= uint64_t{1} << ((m >> 1) & 63);
    }
    auto primes = std::make_shared<std::vector<uint32_t>>();
    for (uint64_t n = 17; n <= want; n += 2)
        if (!(sieve[(n >> 1) >> 6] >> ((n >> 1) & 63) & 1)) primes->push_back(static_cast<uint32_t>(n));

    g_base_primes = std::move(primes);
    g_base_limit = want;
    return g_base_primes;
}

struct Segment {
    uint64_t base = 0;               // odd; bit i = base + 2i
    uint64_t flags = 0;              // valid bits
    std::vector<uint64_t> words;

    bool bit(uint64_t i) const { return words[i >> 6] >> (i & 63) & 1; }
};

// Sieves the odd numbers of [lo, hi] into seg. Requires 3 <= lo <= hi < 2^63.
void sieve_segment(uint64_t lo, uint64_t hi, Segment& seg) {
    uint64_t base = lo | 1;  // odd
    // Align the base index to a byte boundary for pattern tiling.
    const uint64_t shift = ((base - 1) / 2) % 8;
    base -= 2 * shift;
    const uint64_t g0 = (base - 1) / 2;
    const uint64_t flags = (hi - base) / 2 + 1;
    const uint64_t words = (flags + 63) / 64;

    seg.base = base;
    seg.flags = flags;
    seg.words.assign(words, 0);
    auto* bytes = reinterpret_cast<uint8_t*>(seg.words.data());
    const uint64_t nbytes = (flags + 7) / 8;

    // Tile the presieve pattern, wrapping at its byte period.
    const auto& pattern = presieve_pattern();
    uint64_t src = ((g0 % kPatternSpanG) / 8) % kPatternBytes;
    uint64_t dst = 0;
    while (dst < nbytes) {
        const uint64_t chunk = std::min(nbytes - dst, kPatternBytes - src);
        std::memcpy(bytes + dst, pattern.data() + src, chunk);
        dst += chunk;
        src = (src + chunk) % kPatternBytes;
    }
    for (uint64_t p : kPresievedPrimes) {
        if (p >= base && p <= hi) seg.words[((p - base) / 2) >> 6] &= ~(uint64_t{1} << (((p - base) / 2) & 63));
    }

    // Mark multiples of the remaining base primes.
    const uint64_t root = isqrt64(hi);
    auto primes = base_primes(root);
    for (uint32_t p32 : *primes) {
        const uint64_t p = p32;
        if (p > root) break;
        uint64_t start = p * p;
        if (start < base) {
            uint64_t m = (base + p - 1) / p;
            if ((m & 1) == 0) ++m;  // odd multiples only
            start = m * p;
        }
        for (uint64_t i = (start - base) / 2; i < flags; i += p) seg.words[i >> 6] |= uint64_t{1} << (i & 63);
    }

    // Mask out bits below lo (the alignment shift) and any tail past hi.
    for (uint64_t i = 0; i < shift; ++i) seg.words[i >> 6] |= uint64_t{1} << (i & 63);
    if (base == 1) seg.words[0] |= 1;  // n = 1
    for (uint64_t i = flags; i < words * 64; ++i) seg.words[i >> 6] |= uint64_t{1} << (i & 63);
}

template <typename Visit>
void scan_segment(const Segment& seg, Visit&& visit) {
    for (size_t wi = 0; wi < seg.words.size(); ++wi) {
        uint64_t w = ~seg.words[wi];
        while (w) {
            const int tz = std::countr_zero(w);
            visit(seg.base + 2 * (64 * wi + static_cast<uint64_t>(tz)));
            w &= w - 1;
        }
    }
}

void check_range(uint64_t lo, uint64_t hi) {
    if (lo < 2 || lo > hi || hi >= kMaxValue) throw domain_error("prime range requires 2 <= lo <= hi < 2^63");
}

}  // namespace

void APClass::validate() const {
    if (q < 2 || q % 2 != 0) throw domain_error("APClass: q must be even and >= 2");
    if (r < 1 || r >= q) throw domain_error("APClass: residue must satisfy 1 <= r < q");
    if (std::gcd(r, q) != 1) throw domain_error("APClass: residue must be coprime to q");
}

void SieveConfig::validate() const {
    if (segment_flags < (uint64_t{1} << 10)) throw domain_error("SieveConfig: segment window too small");
    if (segment_flags > (uint64_t{1} << 31)) throw resource_error("SieveConfig: segment window exceeds memory budget");
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;

    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Witness set deterministic for all n < 2^64.
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (!sprp(n, a, d, s)) return false;
    }
    return true;
}

void sieve_window(uint64_t lo, uint64_t hi, std::vector<uint64_t>& out) {
    check_range(lo, hi);
    if (lo <= 2) out.push_back(2);
    const uint64_t start = std::max<uint64_t>(lo, 3);
    if (start > hi) return;
    Segment seg;
    sieve_segment(start, hi, seg);
    scan_segment(seg, [&](uint64_t p) { out.push_back(p); });
}

void primes_in_range(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& sink,
                     const SieveConfig& cfg) {
    check_range(lo, hi);
    cfg.validate();
    if (lo <= 2) sink(2);
    uint64_t cur = std::max<uint64_t>(lo, 3);
    const uint64_t span = 2 * cfg.segment_flags;
    Segment seg;
    while (cur <= hi) {
        const uint64_t end = std::min(hi, cur + span - 1);
        sieve_segment(cur, end, seg);
        scan_segment(seg, [&](uint64_t p) { sink(p); });
        if (end >= hi) break;
        cur = end + 1;
    }
}

void primes_in_class(const APClass& cls, uint64_t lo, uint64_t hi,
                     const std::function<void(uint64_t)>& sink, const SieveConfig& cfg) {
    cls.validate();
    primes_in_range(
        lo, hi, [&](uint64_t p) { if (p % cls.q == cls.r) sink(p); }, cfg);
}

uint64_t next_prime_in_class(const APClass& cls, uint64_t after) {
    cls.validate();
    uint64_t candidate;
    if (after < cls.r) {
        candidate = cls.r;
    } else {
        const uint64_t steps = (after - cls.r) / cls.q + 1;
        if (steps > (kMaxValue - cls.r) / cls.q) throw range_error("next_prime_in_class: scan exhausted 64-bit range");
        candidate = cls.r + steps * cls.q;
    }
    while (true) {
        if (candidate >= kMaxValue) throw range_error("next_prime_in_class: scan exhausted 64-bit range");
        if (is_prime(candidate)) return candidate;
        if (candidate > kMaxValue - cls.q) throw range_error("next_prime_in_class: scan exhausted 64-bit range");
        candidate += cls.q;
    }
}

uint64_t prime_count(uint64_t x, const SieveConfig& cfg, int threads) {
    cfg.validate();
    if (x < 2) return 0;
    if (x == 2) return 1;
    const uint64_t lo = 3, hi = x;
    const uint64_t span = 2 * cfg.segment_flags;
    const uint64_t n_segments = (hi - lo) / span + 1;
    std::atomic<uint64_t> total{1};  // the prime 2

    parallel_for_dynamic(static_cast<size_t>(n_segments), threads, [&](size_t si) {
        const uint64_t seg_lo = lo + static_cast<uint64_t>(si) * span;
        const uint64_t seg_hi = std::min(hi, seg_lo + span - 1);
        Segment seg;
        sieve_segment(seg_lo, seg_hi, seg);
        // Cleared bits are primes; alignment and tail bits were pre-set.
        uint64_t count = 0;
        for (uint64_t w : seg.words) count += static_cast<uint64_t>(std::popcount(~w));
        total += count;
    });
    return total.load();
}

}  // namespace apgap
