// Copyright 2026 the fanoutsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fanout/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace fanout {

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::field(const std::string& value) {
    if (row_started_) out_ << ',';
    out_ << value;
    row_started_ = true;
}

void CsvWriter::field(double value) { field(format_g17(value)); }

void CsvWriter::field(long long value) { field(std::to_string(value)); }

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

void CsvWriter::close() { out_.close(); }

void write_overlap_trace_csv(const OverlapTrace& trace, const std::string& path) {
    CsvWriter csv(path);
    csv.header({"t", "amplitude", "phase"});
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        csv.field(trace.times[i]);
        csv.field(trace.amplitude[i]);
        csv.field(trace.phase[i]);
        csv.end_row();
    }
}

void write_truth_table_csv(const TruthTable& table, const std::string& path) {
    CsvWriter csv(path);
    csv.header({"input", "output", "population", "phase", "leakage"});
    for (const auto& row : table.rows) {
        csv.field(row.input);
        csv.field(row.output);
        csv.field(row.population);
        csv.field(row.phase);
        csv.field(row.leakage);
        csv.end_row();
    }
}

}  // namespace fanout
