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

#include "qmt/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmt {

using nlohmann::json;

namespace {

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError("expected a [re, im] pair, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

std::uint64_t parse_u64(const std::string &field, const std::string &line) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(field, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != field.size() || field.front() == '-') {
        throw FormatError("counts CSV: bad integer field '" + field + "' in line: " + line);
    }
    return v;
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); k++) {
            row.push_back(complex_to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw FormatError("expected a matrix as an array of rows");
    }
    auto rows = static_cast<Eigen::Index>(j.size());
    auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; i++) {
        const json &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw FormatError("matrix rows have different lengths");
        }
        for (Eigen::Index k = 0; k < cols; k++) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
        }
    }
    if (!m.allFinite()) {
        throw FormatError("matrix has non-finite entries");
    }
    return m;
}

json vector_to_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out.push_back(complex_to_json(v[i]));
    }
    return out;
}

ComplexVector vector_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw FormatError("expected a vector as an array of [re, im] pairs");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); i++) {
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    }
    return v;
}

json effects_to_json(const std::vector<ComplexMatrix> &elements) {
    json out;
    out["dim"] = elements.empty() ? 0 : elements.front().rows();
    out["outcomes"] = elements.size();
    json list = json::array();
    for (const auto &e : elements) {
        list.push_back(matrix_to_json(e));
    }
    out["elements"] = std::move(list);
    return out;
}

std::vector<ComplexMatrix> effects_from_json(const json &j) {
    if (!j.is_object()) {
        throw FormatError("POVM document must be an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key != "dim" && key != "outcomes" && key != "elements") {
            throw FormatError("POVM document: unknown key '" + key + "'");
        }
    }
    if (!j.contains("dim") || !j.contains("outcomes") || !j.contains("elements")) {
        throw FormatError("POVM document needs dim, outcomes and elements");
    }
    auto d = j.at("dim").get<std::int64_t>();
    auto l = j.at("outcomes").get<std::int64_t>();
    const json &list = j.at("elements");
    if (d < 1 || l < 1 || !list.is_array() || static_cast<std::int64_t>(list.size()) != l) {
        throw FormatError("POVM document: outcomes does not match the number of elements");
    }
    std::vector<ComplexMatrix> out;
    for (const auto &m : list) {
        ComplexMatrix e = matrix_from_json(m);
        if (e.rows() != d || e.cols() != d) {
            throw FormatError("POVM document: element is not dim x dim");
        }
        out.push_back(std::move(e));
    }
    return out;
}

void write_povm_file(const std::filesystem::path &path, const Povm &povm) {
    write_text_file(path, effects_to_json(povm.elements()).dump(2) + "\n");
}

std::vector<ComplexMatrix> read_effects_file(const std::filesystem::path &path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return effects_from_json(j);
}

Povm read_povm_file(const std::filesystem::path &path, double tol) {
    return Povm(read_effects_file(path), tol);
}

std::string spec_hash(const json &spec) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : spec.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::filesystem::path metadata_path(const std::filesystem::path &csv_path) {
    return std::filesystem::path(csv_path.string() + ".meta.json");
}

void write_counts(const std::filesystem::path &csv_path, const FrequencyTable &table,
                  const std::string &ensemble_hash) {
    std::ostringstream out;
    out << "state_index,outcome_index,count\n";
    for (const auto &[cell, count] : table.cells()) {
        out << cell.first << ',' << cell.second << ',' << count << '\n';
    }
    write_text_file(csv_path, out.str());

    json meta;
    meta["num_states"] = table.num_states();
    meta["num_outcomes"] = table.num_outcomes();
    meta["shots"] = table.shots();
    meta["ensemble_hash"] = ensemble_hash;
    write_text_file(metadata_path(csv_path), meta.dump(2) + "\n");
}

CountsFile read_counts(const std::filesystem::path &csv_path) {
    CountsMetadata meta;
    try {
        json j = json::parse(read_text_file(metadata_path(csv_path)));
        meta.num_states = j.at("num_states").get<std::uint64_t>();
        meta.num_outcomes = j.at("num_outcomes").get<std::uint32_t>();
        meta.shots = j.at("shots").get<std::uint64_t>();
        meta.ensemble_hash = j.at("ensemble_hash").get<std::string>();
    } catch (const json::exception &e) {
        throw FormatError(metadata_path(csv_path).string() + ": " + e.what());
    }

    FrequencyTable table(meta.num_states, meta.num_outcomes);
    std::istringstream in(read_text_file(csv_path));
    std::string line;
    if (!std::getline(in, line) || (line != "state_index,outcome_index,count" &&
                                    line != "state_index,outcome_index,count\r")) {
        throw FormatError(csv_path.string() + ": missing header state_index,outcome_index,count");
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 3) {
            throw FormatError(csv_path.string() + ": expected 3 fields in line: " + line);
        }
        std::uint64_t i = parse_u64(fields[0], line);
        std::uint64_t j = parse_u64(fields[1], line);
        std::uint64_t c = parse_u64(fields[2], line);
        if (i >= meta.num_states || j >= meta.num_outcomes) {
            throw FormatError(csv_path.string() + ": cell out of range in line: " + line);
        }
        table.add(i, static_cast<std::uint32_t>(j), c);
    }
    if (table.shots() != meta.shots) {
        throw FormatError(
            csv_path.string() + ": counts sum to " + std::to_string(table.shots()) + " but metadata says " +
            std::to_string(meta.shots));
    }
    return {std::move(table), std::move(meta)};
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qmt
