// Copyright 2026 The Problist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// UTF-8 helpers and the tokenizer shared by the lexicon, the matcher and
// the maskers. All offsets produced here are byte offsets into the UTF-8
// input; CodepointOffsets converts them for external formats.

#ifndef PROBLIST_TEXT_H_
#define PROBLIST_TEXT_H_

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace problist {

struct Normalization {
  bool lowercase = true;
  // Treat punctuation as a token separator. When false tokens are maximal
  // runs of non-whitespace.
  bool strip_punct = true;
  // Only consulted by character n-gram features.
  bool pad_boundaries = true;

  friend bool operator==(const Normalization&, const Normalization&) = default;
};

struct Utf8Char {
  char32_t codepoint;
  std::size_t length;  // bytes consumed, >= 1
};

// Decodes the scalar value starting at byte `pos`. Malformed sequences decode
// as U+FFFD consuming one byte.
Utf8Char DecodeUtf8(std::string_view text, std::size_t pos);

void AppendUtf8(char32_t codepoint, std::string& out);

std::size_t CodepointCount(std::string_view text);

// Letters and digits. ASCII is classified exactly; outside ASCII, the common
// punctuation, symbol and space blocks are separators and everything else is
// treated as a letter.
bool IsWordCodepoint(char32_t cp);

bool IsSpaceCodepoint(char32_t cp);

// A token with its byte range in the original text and its normalized form.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<Token> Tokenize(std::string_view text, const Normalization& norm);

// Tokens of `text` joined by single spaces.
std::string NormalizeText(std::string_view text, const Normalization& norm);

std::string AsciiLower(std::string_view text);

std::string_view Trim(std::string_view text);

// Whitespace-delimited words.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Maps byte offsets to Unicode scalar-value offsets and back for one text.
class CodepointOffsets {
 public:
  explicit CodepointOffsets(std::string_view text);

  // `byte_offset` must lie on a character boundary or at the end.
  std::size_t ToCodepoint(std::size_t byte_offset) const;
  std::size_t ToByte(std::size_t codepoint_offset) const;
  std::size_t size() const { return byte_of_.size() - 1; }

 private:
  std::vector<std::size_t> byte_of_;  // codepoint index -> byte offset
};

}  // namespace problist

#endif  // PROBLIST_TEXT_H_
