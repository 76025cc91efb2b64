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

#include "jumplab/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "jumplab/errors.hpp"

namespace jumplab {

void append_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    return;
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, res.ptr);
}

std::string format_double(double x) {
  std::string s;
  append_double(s, x);
  return s;
}

void append_csv_row(std::string& out, const std::vector<double>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    append_double(out, values[k]);
  }
  out += '\n';
}

void append_json_vector(std::string& out, const ComplexVector& v) {
  out += '[';
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += '[';
    append_double(out, v(k).real());
    out += ',';
    append_double(out, v(k).imag());
    out += ']';
  }
  out += ']';
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw Error("failed writing '" + path + "'");
}

}  // namespace jumplab
