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

#include "apgap/gram.hpp"

#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "apgap/errors.hpp"

namespace apgap {

namespace {

// B_{2j} for j = 1..12 as exact rationals.
constexpr struct {
    long double num, den;
} kBernoulli[] = {
    {1, 6},         {-1, 30},          {1, 42},       {-1, 30},
    {5, 66},        {-691, 2730},      {7, 6},        {-3617, 510},
    {43867, 798},   {-174611, 330},    {854513, 138}, {-236364091, 2730},
};

// Euler-Maclaurin tail after the first N-1 terms of sum k^-s. With N = 32
// the first omitted correction term is below 1e-30 for every s >= 2, far
// under extended-precision resolution.
long double zeta_euler_maclaurin(int64_t s) {
    // 2^-s no longer registers against 1 in a 64-bit significand.
    if (s >= 64) return 1.0L;

    constexpr long double N = 32.0L;
    long double sum = 0.0L;
    for (int k = 31; k >= 2; --k) sum += powl(static_cast<long double>(k), -static_cast<long double>(s));
    sum += 1.0L;

    const long double n_pow_ms = powl(N, -static_cast<long double>(s));  // N^-s
    sum += N * n_pow_ms / static_cast<long double>(s - 1);               // integral tail
    sum += 0.5L * n_pow_ms;                                              // midpoint term

    // Correction terms B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1).
    long double factorial = 1.0L;      // (2j)!
    long double pochhammer = static_cast<long double>(s);
    long double n_pow = n_pow_ms / N;  // N^(-s-1)
    for (int j = 1; j <= 12; ++j) {
        factorial *= static_cast<long double>(2 * j - 1) * static_cast<long double>(2 * j);
        const long double b = kBernoulli[j - 1].num / kBernoulli[j - 1].den / factorial;
        sum += b * pochhammer * n_pow;
        pochhammer *= static_cast<long double>(s + 2 * j - 1) * static_cast<long double>(s + 2 * j);
        n_pow /= N * N;
    }
    return sum;
}

struct ZetaTables {
    std::vector<long double> values;   // values[s] = zeta(s), s >= 2
    std::vector<double> inv;           // inv[s] = 1/zeta(s)
};

std::mutex g_zeta_mutex;
std::shared_ptr<const ZetaTables> g_zeta_tables;

// Grows the cache to cover s <= s_max and returns a snapshot. Concurrent
// growers recompute identical values; readers keep whatever snapshot they
// already hold.
std::shared_ptr<const ZetaTables> zeta_snapshot(size_t s_max) {
    std::scoped_lock lock(g_zeta_mutex);
    if (!g_zeta_tables || g_zeta_tables->values.size() <= s_max) {
        auto next = std::make_shared<ZetaTables>();
        if (g_zeta_tables) *next = *g_zeta_tables;
        if (next->values.empty()) {
            next->values.assign(2, 0.0L);  // s = 0, 1 unused
            next->inv.assign(2, 0.0);
        }
        const size_t want = std::max<size_t>(s_max + 1, 72);
        for (size_t s = next->values.size(); s < want; ++s) {
            const long double z = zeta_euler_maclaurin(static_cast<int64_t>(s));
            next->values.push_back(z);
            next->inv.push_back(static_cast<double>(1.0L / z));
        }
        g_zeta_tables = std::move(next);
    }
    return g_zeta_tables;
}

constexpr double kPi = std::numbers::pi;
constexpr double kMinX = 1.0 + 1e-9;

}  // namespace

void SeriesConfig::validate() const {
    if (!(rel_tolerance > 0.0)) throw domain_error("SeriesConfig: rel_tolerance must be > 0");
    if (max_terms < 64) throw domain_error("SeriesConfig: max_terms must be >= 64");
}

long double detail::zeta_extended(int64_t s) {
    if (s < 2) throw domain_error("zeta: s must be >= 2");
    return zeta_snapshot(static_cast<size_t>(s))->values[static_cast<size_t>(s)];
}

double zeta(int64_t s) { return static_cast<double>(detail::zeta_extended(s)); }

double gram_G(double x, const SeriesConfig& cfg) {
    cfg.validate();
    if (!(x > kMinX)) throw domain_error("gram_G: x must exceed 1 + 1e-9");

    const double lx = std::log(x);
    const int n_min = static_cast<int>(std::ceil(lx)) + 10;
    auto tables = zeta_snapshot(static_cast<size_t>(std::min(cfg.max_terms, n_min + 64)) + 1);

    CompensatedSum series;
    double u = 1.0;  // log^n x / n!
    for (int n = 1; n <= cfg.max_terms; ++n) {
        if (static_cast<size_t>(n) + 1 >= tables->inv.size())
            tables = zeta_snapshot(static_cast<size_t>(2 * n) + 2);
        u *= lx / n;
        const double term = u / n * tables->inv[static_cast<size_t>(n) + 1];
        series.add(term);
        if (n > n_min && term < cfg.rel_tolerance * series.value())
            return 1.0 + series.value() + std::atan(kPi / lx) / kPi - 1.0 / lx;
    }
    throw accuracy_error("gram_G: series did not converge within max_terms");
}

double gram_density(double x, const SeriesConfig& cfg) {
    cfg.validate();
    if (!(x > kMinX)) throw domain_error("gram_density: x must exceed 1 + 1e-9");

    const double lx = std::log(x);
    const int n_min = static_cast<int>(std::ceil(lx)) + 10;
    auto tables = zeta_snapshot(static_cast<size_t>(std::min(cfg.max_terms, n_min + 64)) + 1);

    CompensatedSum series;
    double u = 1.0;  // log^(n-1) x / n!
    for (int n = 1; n <= cfg.max_terms; ++n) {
        if (static_cast<size_t>(n) + 1 >= tables->inv.size())
            tables = zeta_snapshot(static_cast<size_t>(2 * n) + 2);
        if (n > 1) u *= lx;
        u /= n;
        const double term = u * tables->inv[static_cast<size_t>(n) + 1];
        series.add(term);
        if (n > n_min && term < cfg.rel_tolerance * series.value()) {
            const double l2 = lx * lx;
            return (series.value() + 1.0 / l2 - 1.0 / (l2 + kPi * kPi)) / x;
        }
    }
    throw accuracy_error("gram_density: series did not converge within max_terms");
}

}  // namespace apgap
