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

#include <cmath>
#include <cstdint>

namespace apgap {

// Truncation policy for the Gram series. The sum stops once the current term
// drops below rel_tolerance times the partial sum AND the term index has
// passed ceil(log x) + 10 (terms grow until n ~ log x).
struct SeriesConfig {
    double rel_tolerance = 1e-18;
    int max_terms = 2000;

    void validate() const;  // throws domain_error
};

// Compensated (Kahan-Babuska) accumulator for long sums of small terms.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Riemann zeta at integer s >= 2. Computed once in extended precision
// (Euler-Maclaurin), cached per process; safe under concurrent first use.
// Throws domain_error for s < 2.
double zeta(int64_t s);

// Gram's form of Riemann's prime counting function, non-trivial zeros omitted:
//
//   G(x) = 1 + sum_{n>=1} log^n x / (n * n! * zeta(n+1))
//            + arctan(pi / log x) / pi  -  1 / log x
//
// Smooth and strictly increasing for x > 1; tracks pi(x) closely.
// Relative error <= 1e-12 for x <= 1e16. Throws domain_error for
// x <= 1 + 1e-9 and accuracy_error if max_terms is hit first.
double gram_G(double x, const SeriesConfig& cfg = {});

// The term-wise derivative of G -- the local prime density at x:
//
//   G'(x) = (1/x) * [ sum_{n>=1} log^(n-1) x / (n! * zeta(n+1))
//                     + 1/log^2 x - 1/(log^2 x + pi^2) ]
//
// Strictly positive for x > 1. Same truncation policy and errors as gram_G.
double gram_density(double x, const SeriesConfig& cfg = {});

namespace detail {
// Cached extended-precision zeta(s), s >= 2; relative error <= 1e-17.
long double zeta_extended(int64_t s);
}  // namespace detail

}  // namespace apgap
