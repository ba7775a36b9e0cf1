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
#include <memory>
#include <optional>
#include <vector>

#include "apgap/gram.hpp"
#include "apgap/sieve.hpp"

namespace apgap {

// Euler's totient, by trial-division factorization up to sqrt(q).
uint64_t totient(uint64_t q);

// A gap of length g = k*q between consecutive class primes p_minus and
// p_minus + k*q. `verified` is set only by survey::verify_gap.
struct GapRecord {
    APClass cls;
    uint64_t p_minus = 0;
    uint64_t k = 0;
    bool verified = false;

    uint64_t g() const { return k * cls.q; }
    uint64_t p_plus() const { return p_minus + g(); }
    void validate() const;  // class membership, k >= 1, 64-bit headroom
};

struct MeasureBundle {
    double merit = 0.0;
    double rho = 0.0;
    double rho_star = 0.0;                 // g / (phi(q) log^2 p_plus)
    std::optional<double> rho_lower;       // g / log^2 p_minus, only for q <= 2
};

// Expected number of primes inside the gap:
//   m = (q/phi(q)) * sum_{j=1..k} G'(p_minus + j*q)
double merit(const GapRecord& gap, const SeriesConfig& cfg = {});

// rho = m^2 * phi(q) / g, plus the conventional companions.
MeasureBundle rho(const GapRecord& gap, const SeriesConfig& cfg = {});

// g / log^2 p_minus; defined only for q <= 2, domain_error otherwise.
double rho_prime(const GapRecord& gap);

// The first prime p = r + k*q of a residue class, with the adapted measures:
// the merit sum is anchored at r (evaluation points r + j*q, j = 1..k) and
// rho divides by p instead of g.
struct LeastPrimeRecord {
    APClass cls;
    uint64_t p = 0;
    uint64_t k = 0;          // (p - r) / q
    double merit = 0.0;
    double rho = 0.0;        // m^2 * phi(q) / p
    double rho_star = 0.0;   // p / (phi(q) log^2 p)
    double lps_measure = 0.0;  // p / (phi(q) log phi(q) log q)
    bool empty_sum = false;  // k == 0: p == r, the merit sum is empty, rho := 0
};

LeastPrimeRecord least_prime_measures(const APClass& cls, uint64_t p, const SeriesConfig& cfg = {});

// { t^2 mod q : 1 <= t < q, gcd(t, q) = 1 }, ascending; cached per q.
std::shared_ptr<const std::vector<uint64_t>> square_set(uint64_t q);

// Membership of p mod q in square_set(q); p must be coprime to q.
bool is_square_mod(uint64_t q, uint64_t p);

// phi(q)/q bands, compared in exact integer arithmetic:
//   A: 1/2.1 < phi/q <= 1/2     B: 1/3 <= phi/q < 1/2.1     C: phi/q < 1/3
enum class PhiRatioGroup { A, B, C };
PhiRatioGroup phi_ratio_group(uint64_t q);
char phi_ratio_group_label(PhiRatioGroup g);

// One row of the exceptional-gap catalog (rho > 1), with
// ratio = log p_plus / log g.
struct CatalogRow {
    uint64_t q = 0, r = 0, p_minus = 0, k = 0;
    double rho = 0.0, rho_star = 0.0, ratio = 0.0;

    GapRecord gap() const { return GapRecord{APClass{q, r}, p_minus, k, false}; }
};

}  // namespace apgap
