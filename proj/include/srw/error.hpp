// Copyright 2026 The SRW Toolkit Authors.
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

#include <stdexcept>
#include <string>

namespace srw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SRW_DECLARE_ERROR(Name)                 \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(#Name ": " + what) {}           \
  }

SRW_DECLARE_ERROR(UnmappedPair);
SRW_DECLARE_ERROR(ParseError);
SRW_DECLARE_ERROR(TopologyError);
SRW_DECLARE_ERROR(InvalidRotation);
SRW_DECLARE_ERROR(DimensionMismatch);
SRW_DECLARE_ERROR(PointAtInfinity);
SRW_DECLARE_ERROR(DegenerateFit);
SRW_DECLARE_ERROR(EmptyInput);
SRW_DECLARE_ERROR(BehindCamera);
SRW_DECLARE_ERROR(DegeneratePolygon);

#undef SRW_DECLARE_ERROR

}  // namespace srw
