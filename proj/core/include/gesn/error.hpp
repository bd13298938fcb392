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

#ifndef GESN_ERROR_HPP_
#define GESN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gesn {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value violates a precondition (bad shape, bad flag).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or missing on-disk data. The message names file and line.
class LoadError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not produce a trustworthy answer
// (singular system, non-finite input, degenerate random draw).
class NumericError : public Error {
 public:
  using Error::Error;
};

// A statistic is mathematically undefined for the given input, e.g.
// homophily of a graph without edges.
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

}  // namespace gesn

#endif  // GESN_ERROR_HPP_
