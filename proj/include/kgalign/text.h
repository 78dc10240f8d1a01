// Copyright 2026 The kgalign Authors
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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 and whitespace helpers shared by every module.
namespace kgalign::text {

bool IsSpace(char c);

std::string_view Trim(std::string_view s);

// Trims and collapses internal runs of ASCII whitespace into a single space.
// Case is preserved. This is the equality notion for entities and relations.
std::string NormalizeWhitespace(std::string_view s);

std::string AsciiLower(std::string_view s);

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at
// a time, so decoding never fails.
std::vector<char32_t> DecodeUtf8(std::string_view s);

void AppendUtf8(char32_t cp, std::string& out);

size_t CodePointCount(std::string_view s);

// Han, Hiragana, Katakana, Hangul and CJK punctuation blocks.
bool IsCjk(char32_t cp);

}  // namespace kgalign::text
