/*
 * Copyright 2026 The pdevs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <nlohmann/json.hpp>

#include "pdevs/model/event_value.hpp"

namespace pdevs {

// Integers map to JSON integers, reals to JSON floats (non-finite reals to
// {"real": "inf" | "-inf" | "nan"}), text to strings, lists to arrays.
nlohmann::json event_to_json(const EventValue& value);
EventValue event_from_json(const nlohmann::json& j);

// Shortest decimal text that parses back to the same double; "inf" for +inf.
std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace pdevs
