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

#include "apgap/measures.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "apgap/errors.hpp"

namespace apgap {

namespace {

constexpr uint64_t kMaxValue = uint64_t{1} << 63;

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::mutex g_square_mutex;
std::map<uint64_t, std::shared_ptr<const std::vector<uint64_t>>> g_square_sets;

// Merit sum over evaluation points anchor + j*q, j = 1..k.
double merit_sum(uint64_t anchor, uint64_t q, uint64_t k, uint64_t phi, const SeriesConfig& cfg) {
    CompensatedSum sum;
    for (uint64_t j = 1; j <= k; ++j)
        sum.add(gram_density(static_cast<double>(anchor + j * q), cfg));
    return static_cast<double>(q) / static_cast<double>(phi) * sum.value();
}

}  // namespace

uint64_t totient(uint64_t q) {
    if (q == 0 || q >= kMaxValue) throw domain_error("totient: q must satisfy 1 <= q < 2^63");
    uint64_t n = q, phi = q;
    for (uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p == 0) {
            phi -= phi / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) phi -= phi / n;
    return phi;
}

void GapRecord::validate() const {
    cls.validate();
    if (k == 0) throw domain_error("GapRecord: k must be >= 1");
    if (p_minus % cls.q != cls.r) throw domain_error("GapRecord: p_minus is not in the residue class");
    if (cls.q > (kMaxValue - p_minus) / k) throw range_error("GapRecord: p_plus overflows 2^63");
}

double merit(const GapRecord& gap, const SeriesConfig& cfg) {
    gap.validate();
    return merit_sum(gap.p_minus, gap.cls.q, gap.k, totient(gap.cls.q), cfg);
}

MeasureBundle rho(const GapRecord& gap, const SeriesConfig& cfg) {
    gap.validate();
    const uint64_t phi = totient(gap.cls.q);
    const double g = static_cast<double>(gap.g());
    MeasureBundle out;
    out.merit = merit_sum(gap.p_minus, gap.cls.q, gap.k, phi, cfg);
    out.rho = out.merit * out.merit * static_cast<double>(phi) / g;
    const double log_plus = std::log(static_cast<double>(gap.p_plus()));
    out.rho_star = g / (static_cast<double>(phi) * log_plus * log_plus);
    if (gap.cls.q <= 2) {
        const double log_minus = std::log(static_cast<double>(gap.p_minus));
        out.rho_lower = g / (log_minus * log_minus);
    }
    return out;
}

double rho_prime(const GapRecord& gap) {
    gap.validate();
    if (gap.cls.q > 2) throw domain_error("rho_prime: defined only for q <= 2");
    const double log_minus = std::log(static_cast<double>(gap.p_minus));
    return static_cast<double>(gap.g()) / (log_minus * log_minus);
}

LeastPrimeRecord least_prime_measures(const APClass& cls, uint64_t p, const SeriesConfig& cfg) {
    cls.validate();
    if (p % cls.q != cls.r) throw domain_error("least_prime_measures: p is not in the residue class");
    LeastPrimeRecord rec;
    rec.cls = cls;
    rec.p = p;
    rec.k = (p - cls.r) / cls.q;

    const uint64_t phi = totient(cls.q);
    const double log_p = std::log(static_cast<double>(p));
    rec.rho_star = static_cast<double>(p) / (static_cast<double>(phi) * log_p * log_p);
    rec.lps_measure = static_cast<double>(p) /
                      (static_cast<double>(phi) * std::log(static_cast<double>(phi)) *
                       std::log(static_cast<double>(cls.q)));
    if (rec.k == 0) {
        rec.empty_sum = true;  // p == r: no interior points, rho pinned to 0
        return rec;
    }
    rec.merit = merit_sum(cls.r, cls.q, rec.k, phi, cfg);
    rec.rho = rec.merit * rec.merit * static_cast<double>(phi) / static_cast<double>(p);
    return rec;
}

std::shared_ptr<const std::vector<uint64_t>> square_set(uint64_t q) {
    if (q < 2 || q % 2 != 0) throw domain_error("square_set: q must be even and >= 2");
    {
        std::scoped_lock lock(g_square_mutex);
        auto it = g_square_sets.find(q);
        if (it != g_square_sets.end()) return it->second;
    }
    std::vector<uint8_t> seen(q, 0);
    for (uint64_t t = 1; t < q; ++t) {
        if (std::gcd(t, q) != 1) continue;
        seen[mulmod(t, t, q)] = 1;
    }
    auto set = std::make_shared<std::vector<uint64_t>>();
    for (uint64_t a = 0; a < q; ++a)
        if (seen[a]) set->push_back(a);

    std::scoped_lock lock(g_square_mutex);
    auto [it, inserted] = g_square_sets.emplace(q, std::move(set));
    (void)inserted;  // concurrent writers computed the identical set
    return it->second;
}

bool is_square_mod(uint64_t q, uint64_t p) {
    if (std::gcd(p % q, q) != 1) throw domain_error("is_square_mod: p must be coprime to q");
    auto set = square_set(q);
    const uint64_t a = p % q;
    return std::binary_search(set->begin(), set->end(), a);
}

PhiRatioGroup phi_ratio_group(uint64_t q) {
    if (q < 2 || q % 2 != 0) throw domain_error("phi_ratio_group: q must be even and >= 2");
    const uint64_t phi = totient(q);
    // 1/2.1 = 10/21; exact cross-multiplication, no floating comparison.
    const auto lhs = static_cast<unsigned __int128>(phi) * 21;
    const auto rhs = static_cast<unsigned __int128>(q) * 10;
    if (lhs > rhs) return PhiRatioGroup::A;  // phi/q > 1/2.1 (and <= 1/2 since q is even)
    if (static_cast<unsigned __int128>(phi) * 3 >= q) return PhiRatioGroup::B;
    return PhiRatioGroup::C;
}

char phi_ratio_group_label(PhiRatioGroup g) {
    switch (g) {
        case PhiRatioGroup::A: return 'A';
        case PhiRatioGroup::B: return 'B';
        default: return 'C';
    }
}

}  // namespace apgap
