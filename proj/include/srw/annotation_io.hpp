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

#include <string>

#include <json.hpp>

#include "srw/visibility.hpp"

namespace srw {

nlohmann::json annotation_to_json(const AnnotatedView& view);
AnnotatedView parse_annotation(const nlohmann::json& doc);

AnnotatedView load_annotation(const std::string& path);
void save_annotation(const std::string& path, const AnnotatedView& view);

}  // namespace srw
