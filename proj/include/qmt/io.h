// Copyright 2026 The qmt Authors
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

#ifndef QMT_IO_H
#define QMT_IO_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmt/linalg.h"
#include "qmt/povm.h"
#include "qmt/tomography.h"

namespace qmt {

/// Raised for malformed input files and documents.
class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Matrix as an array of rows, each an array of [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);

/// Vector as an array of [re, im] pairs.
nlohmann::json vector_to_json(const ComplexVector &v);
ComplexVector vector_from_json(const nlohmann::json &j);

/// POVM document: {"dim": d, "outcomes": L, "elements": [L matrices]}.
/// Doubles are written in shortest round-trip form, so reading a written
/// file reproduces every entry bit for bit.
nlohmann::json effects_to_json(const std::vector<ComplexMatrix> &elements);
/// Parses the POVM document without checking positivity or completeness.
std::vector<ComplexMatrix> effects_from_json(const nlohmann::json &j);

void write_povm_file(const std::filesystem::path &path, const Povm &povm);
Povm read_povm_file(const std::filesystem::path &path, double tol = kDefaultPovmTol);
std::vector<ComplexMatrix> read_effects_file(const std::filesystem::path &path);

/// Sidecar document stored next to a counts CSV as "<csv>.meta.json".
struct CountsMetadata {
    std::uint64_t num_states = 0;
    std::uint32_t num_outcomes = 0;
    std::uint64_t shots = 0;
    /// Hash of the canonical ensemble spec (see spec_hash).
    std::string ensemble_hash;
};

/// FNV-1a 64-bit hash of the compact JSON dump (keys sorted), as 16 hex
/// digits.
std::string spec_hash(const nlohmann::json &spec);

std::filesystem::path metadata_path(const std::filesystem::path &csv_path);

/// CSV with header "state_index,outcome_index,count" and one row per nonzero
/// cell in (state, outcome) order; indices are 0-based. Writes the sidecar.
void write_counts(const std::filesystem::path &csv_path, const FrequencyTable &table,
                  const std::string &ensemble_hash);

struct CountsFile {
    FrequencyTable table;
    CountsMetadata metadata;
};

/// Reads the CSV and its sidecar and checks that they agree. Duplicate
/// cells are summed.
CountsFile read_counts(const std::filesystem::path &csv_path);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path &path, const std::string &text);
std::string read_text_file(const std::filesystem::path &path);

}  // namespace qmt

#endif
