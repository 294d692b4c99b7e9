// Copyright 2026 The Azana Authors.
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

#ifndef AZANA_CSV_IO_H_
#define AZANA_CSV_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "azana/multiplex.h"
#include "azana/residual_field.h"

namespace azana {

enum class ResidualFormat {
  kLongCsv,   // time,sensor,component,value
  kDenseCsv,  // one file per component; rows = time, columns = sensors
};

std::optional<ResidualFormat> ParseResidualFormat(std::string_view name);
std::string_view ToString(ResidualFormat format);

// Long format. T is the largest time index; missing rows or empty values mark
// cells unavailable. A cell must provide either all components or none.
ResidualField LoadResidualsLong(const std::string& path);

// Dense format, one file per component. The first row holds a label and the
// sensor ids, the first column the 1-based time index; empty cells are missing.
ResidualField LoadResidualsDense(const std::vector<std::string>& paths);

ResidualField LoadResiduals(const std::vector<std::string>& paths,
                            ResidualFormat format);

// Edge list `time,src,dst,weight,directed`; time '*' marks a static edge
// replicated into every step. Returns one snapshot per step 1..num_steps.
std::vector<GraphSnapshot> LoadEdges(const std::string& path, int num_steps);

void WriteResidualsLong(const ResidualField& residuals,
                        const std::string& path);
// Writes one file per component and returns the paths. A scalar field goes to
// `path` itself; otherwise to `<stem>_c<i><ext>`.
std::vector<std::string> WriteResidualsDense(const ResidualField& residuals,
                                             const std::string& path);
// Rows shared by every snapshot are written once with time '*'.
void WriteEdges(const std::vector<GraphSnapshot>& snapshots,
                const std::string& path);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double x);
std::optional<double> ParseDouble(std::string_view text);
std::vector<std::string> SplitCsvLine(std::string_view line);

}  // namespace azana

#endif  // AZANA_CSV_IO_H_
