// Copyright 2026 The mmcurate Authors
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
#include <string_view>
#include <vector>

namespace mmcurate::text {

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

/// Unicode NFC. Invalid UTF-8 is passed through byte-for-byte.
std::string nfc(std::string_view s);

/// Maps curly single/double quotes (and primes) to their ASCII forms.
std::string unify_quotes(std::string_view s);

/// NFC, quote unification, whitespace runs collapsed, trimmed. Case is kept.
std::string normalize_verbatim(std::string_view s);

/// Lowercase + whitespace collapse, for dictionary matching.
std::string normalize_for_matching(std::string_view s);

/// True iff `needle` occurs in `haystack` as a whole phrase: the match is
/// not preceded or followed by an ASCII alphanumeric character.
bool contains_phrase(std::string_view haystack, std::string_view needle);

/// Lowercased tokens split on whitespace and ASCII punctuation.
std::vector<std::string> tokenize_words(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

}  // namespace mmcurate::text
