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

#ifndef GESN_IO_HPP_
#define GESN_IO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "gesn/types.hpp"

namespace gesn {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);

// Flat binary embeddings: 16-byte header (8-byte magic "GESNEMB1", |V| and H
// as little-endian uint32) followed by |V| * H little-endian doubles in
// row-major order.
inline constexpr std::array<char, 8> kEmbeddingMagic = {'G', 'E', 'S', 'N', 'E', 'M', 'B', '1'};

void write_embeddings_binary(const Matrix& states, std::ostream& out);
Matrix read_embeddings_binary(std::istream& in);
void write_embeddings_binary(const Matrix& states, const std::filesystem::path& path);
Matrix read_embeddings_binary(const std::filesystem::path& path);

// Header h_0..h_{H-1}, one row per node.
void write_embeddings_csv(const Matrix& states, std::ostream& out);

}  // namespace gesn

#endif  // GESN_IO_HPP_
