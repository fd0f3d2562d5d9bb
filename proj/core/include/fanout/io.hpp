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

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "fanout/gate_fidelity.hpp"
#include "fanout/propagate.hpp"

namespace fanout {

/// Formats a double with 17 significant digits, enough to round-trip any
/// 64-bit float exactly.
std::string format_g17(double value);

/// Minimal CSV writer; all numeric fields go through format_g17.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void header(const std::vector<std::string>& columns);
    void field(const std::string& value);
    void field(double value);
    void field(long long value);
    void end_row();
    void close();

private:
    std::ofstream out_;
    bool row_started_ = false;
};

/// The documented three-column overlap trace schema: t, amplitude, phase.
void write_overlap_trace_csv(const OverlapTrace& trace, const std::string& path);

/// Truth table schema: input, output, population, phase, leakage.
void write_truth_table_csv(const TruthTable& table, const std::string& path);

}  // namespace fanout
