// Copyright 2026 The jumplab Authors
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

// Text output helpers. Doubles are written in the shortest decimal form that
// reads back to the same bits, so output files are reproducible byte for
// byte.

#include <string>
#include <string_view>
#include <vector>

#include "jumplab/linalg.hpp"

namespace jumplab {

std::string format_double(double x);
void append_double(std::string& out, double x);

/// Appends `values` joined by commas and a trailing '\n'.
void append_csv_row(std::string& out, const std::vector<double>& values);

/// [[re, im], ...]
void append_json_vector(std::string& out, const ComplexVector& v);

/// Writes `data` to `path` in binary mode; throws Error on failure.
void write_file(const std::string& path, std::string_view data);

}  // namespace jumplab
