// Copyright 2026 The GESN Authors.
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

#include "gesn/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "gesn/error.hpp"

namespace gesn {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary embedding I/O assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  std::memcpy(bytes, &v, 4);
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  char bytes[4];
  if (!in.read(bytes, 4)) throw LoadError("embeddings: truncated header");
  std::uint32_t v;
  std::memcpy(&v, bytes, 4);
  return v;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_embeddings_binary(const Matrix& states, std::ostream& out) {
  out.write(kEmbeddingMagic.data(), kEmbeddingMagic.size());
  put_u32(out, static_cast<std::uint32_t>(states.rows()));
  put_u32(out, static_cast<std::uint32_t>(states.cols()));
  out.write(reinterpret_cast<const char*>(states.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(states.size())));
  if (!out) throw Error("embeddings: write failed");
}

Matrix read_embeddings_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kEmbeddingMagic) {
    throw LoadError("embeddings: bad magic");
  }
  const std::uint32_t rows = get_u32(in);
  const std::uint32_t cols = get_u32(in);
  Matrix states(rows, cols);
  if (!in.read(reinterpret_cast<char*>(states.data()),
               static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(states.size())))) {
    throw LoadError("embeddings: truncated payload");
  }
  return states;
}

void write_embeddings_binary(const Matrix& states, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_embeddings_binary(states, out);
}

Matrix read_embeddings_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  return read_embeddings_binary(in);
}

void write_embeddings_csv(const Matrix& states, std::ostream& out) {
  for (Eigen::Index j = 0; j < states.cols(); ++j) out << (j ? "," : "") << "h_" << j;
  out << '\n';
  for (Eigen::Index r = 0; r < states.rows(); ++r) {
    for (Eigen::Index j = 0; j < states.cols(); ++j) {
      out << (j ? "," : "") << format_double(states(r, j));
    }
    out << '\n';
  }
}

}  // namespace gesn
