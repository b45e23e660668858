/*
 * Copyright (c) 2026, The Lightbox Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lightbox::text {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

double parse_double(std::string_view token, std::string_view context);
std::int64_t parse_int(std::string_view token, std::string_view context);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delimiter);
std::vector<std::string> split_lines(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

std::string sha256_hex(std::string_view bytes);
std::string file_sha256_hex(const std::string& path);

}  // namespace lightbox::text
