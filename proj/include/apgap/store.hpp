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
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "apgap/measures.hpp"

namespace apgap {

// Reals serialized with 12 significant digits, '.' separator. 12-digit
// decimals parse back to the identical double, so files round-trip.
std::string format_real(double v);

// UTF-8 CSV, header `q,r,p_minus,k,rho,rho_star,ratio`, LF endings, rows
// sorted by (q, p_minus).
void write_catalog(std::vector<CatalogRow> rows, std::ostream& os);
void write_catalog(std::vector<CatalogRow> rows, const std::string& path);

// Parses and validates a catalog. Malformed rows raise parse_error with the
// line number. Structural breaks (unsorted, duplicate (q, p_minus), rho <= 1)
// raise validation_error; so does a stored rho that disagrees with
// recomputation by more than 1e-9 relative (skippable via recompute_rho for
// callers that re-verify separately).
std::vector<CatalogRow> read_catalog(std::istream& is, bool recompute_rho = true);
std::vector<CatalogRow> read_catalog(const std::string& path, bool recompute_rho = true);

// The recomputation check alone.
void validate_catalog_measures(const std::vector<CatalogRow>& rows, const SeriesConfig& cfg = {});

// Checkpoint envelope: survey identity (operation + parameters + window) and
// an operation-specific progress payload. Loading against a different
// identity refuses with an explanation; resuming from any saved state yields
// output identical to an uninterrupted run.
struct CheckpointFile {
    nlohmann::json identity;
    nlohmann::json state;
};

uint64_t identity_hash(const nlohmann::json& identity);

// Atomic: writes a temporary file, then renames over `path`.
void checkpoint_save(const CheckpointFile& cp, const std::string& path);

CheckpointFile checkpoint_load(const std::string& path);

// Loads and refuses (validation_error) unless the stored identity matches.
CheckpointFile checkpoint_load(const std::string& path, const nlohmann::json& expected_identity);

}  // namespace apgap
