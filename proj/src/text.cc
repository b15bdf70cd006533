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

#include "problist/text.h"

#include <algorithm>

namespace problist {

Utf8Char DecodeUtf8(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};

  std::size_t length = 0;
  char32_t cp = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2, cp = lead & 0x1F, min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3, cp = lead & 0x0F, min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4, cp = lead & 0x07, min_value = 0x10000;
  } else {
    return {0xFFFD, 1};
  }
  if (pos + length > text.size()) return {0xFFFD, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char next = byte(pos + i);
    if ((next & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (next & 0x3F);
  }
  if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {0xFFFD, 1};
  }
  return {cp, length};
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::size_t CodepointCount(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t pos = 0; pos < text.size(); ++count) {
    pos += DecodeUtf8(text, pos).length;
  }
  return count;
}

bool IsSpaceCodepoint(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsWordCodepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7 || cp == 0xFFFD) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE10 && cp <= 0xFE1F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return false;
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  return true;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text, const Normalization& norm) {
  std::vector<Token> tokens;
  const auto in_token = [&](char32_t cp) {
    return norm.strip_punct ? IsWordCodepoint(cp) : !IsSpaceCodepoint(cp);
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    Utf8Char ch = DecodeUtf8(text, pos);
    if (!in_token(ch.codepoint)) {
      pos += ch.length;
      continue;
    }
    const std::size_t begin = pos;
    while (pos < text.size()) {
      ch = DecodeUtf8(text, pos);
      if (!in_token(ch.codepoint)) break;
      pos += ch.length;
    }
    std::string_view slice = text.substr(begin, pos - begin);
    tokens.push_back(Token{norm.lowercase ? AsciiLower(slice)
                                          : std::string(slice),
                           begin, pos});
  }
  return tokens;
}

std::string NormalizeText(std::string_view text, const Normalization& norm) {
  std::string out;
  for (const Token& token : Tokenize(text, norm)) {
    if (!out.empty()) out.push_back(' ');
    out += token.text;
  }
  return out;
}

std::string_view Trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    Utf8Char ch = DecodeUtf8(text, pos);
    if (IsSpaceCodepoint(ch.codepoint)) {
      pos += ch.length;
      continue;
    }
    const std::size_t begin = pos;
    while (pos < text.size()) {
      ch = DecodeUtf8(text, pos);
      if (IsSpaceCodepoint(ch.codepoint)) break;
      pos += ch.length;
    }
    words.push_back(text.substr(begin, pos - begin));
  }
  return words;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

CodepointOffsets::CodepointOffsets(std::string_view text) {
  byte_of_.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    byte_of_.push_back(pos);
    pos += DecodeUtf8(text, pos).length;
  }
  byte_of_.push_back(text.size());
}

std::size_t CodepointOffsets::ToCodepoint(std::size_t byte_offset) const {
  auto it = std::lower_bound(byte_of_.begin(), byte_of_.end(), byte_offset);
  return static_cast<std::size_t>(it - byte_of_.begin());
}

std::size_t CodepointOffsets::ToByte(std::size_t codepoint_offset) const {
  return byte_of_.at(codepoint_offset);
}

}  // namespace problist
