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

#include "pdevs/model/event_value.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pdevs/model/event_json.hpp"

namespace pdevs {

bool operator==(const EventValue& a, const EventValue& b) {
  if (a.is_real() && b.is_real() && std::isnan(a.as_real()) && std::isnan(b.as_real())) {
    return true;
  }
  return a.payload_ == b.payload_;
}

std::string EventValue::to_text() const { return event_to_json(*this).dump(); }

std::string bag_to_text(const MessageBag& bag) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : bag) arr.push_back(event_to_json(v));
  return arr.dump();
}

nlohmann::json event_to_json(const EventValue& value) {
  if (value.is_integer()) return value.as_integer();
  if (value.is_real()) {
    double r = value.as_real();
    if (std::isfinite(r)) return r;
    return nlohmann::json{{"real", std::isnan(r) ? "nan" : (r > 0 ? "inf" : "-inf")}};
  }
  if (value.is_text()) return value.as_text();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : value.as_list()) arr.push_back(event_to_json(v));
  return arr;
}

EventValue event_from_json(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::number_integer:
      return EventValue(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: {
      auto u = j.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX)) {
        throw std::invalid_argument("integer payload out of range: " + j.dump());
      }
      return EventValue(static_cast<std::int64_t>(u));
    }
    case nlohmann::json::value_t::number_float:
      return EventValue(j.get<double>());
    case nlohmann::json::value_t::string:
      return EventValue(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      EventValue::List list;
      list.reserve(j.size());
      for (const auto& e : j) list.push_back(event_from_json(e));
      return EventValue(std::move(list));
    }
    case nlohmann::json::value_t::object:
      if (j.size() == 1 && j.contains("real") && j["real"].is_string()) {
        return EventValue(parse_double(j["real"].get<std::string>()));
      }
      break;
    default:
      break;
  }
  throw std::invalid_argument("not an event value: " + j.dump());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace pdevs
