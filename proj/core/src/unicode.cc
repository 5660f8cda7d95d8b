// Copyright 2025 The Borrowkit Authors
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

#include "borrowkit/unicode.h"

namespace borrowkit {
namespace uni {

namespace {

const char32_t kReplacement = 0xFFFD;

}  // namespace

void decode_utf8(std::string_view text, std::u32string* cps,
                 std::vector<std::size_t>* byte_offsets) {
  cps->clear();
  if (byte_offsets != nullptr) byte_offsets->clear();
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (byte_offsets != nullptr) byte_offsets->push_back(i);
    const unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = kReplacement;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      len = 0;  // stray continuation or invalid lead byte
    }
    if (len == 0 || i + len > n) {
      cps->push_back(kReplacement);
      i++;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; k++) {
      const unsigned char bk = static_cast<unsigned char>(text[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    // Reject overlong forms and surrogate range.
    if (ok) {
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
          (cp >= 0xD800 && cp <= 0xDFFF)) {
        ok = false;
      }
    }
    if (!ok) {
      cps->push_back(kReplacement);
      i++;
      continue;
    }
    cps->push_back(cp);
    i += len;
  }
  if (byte_offsets != nullptr) byte_offsets->push_back(n);
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string cps;
  decode_utf8(text, &cps);
  return cps;
}

void append_utf8(std::string* out, char32_t cp) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(&out, cp);
  return out;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_quote(char32_t cp) {
  switch (cp) {
    case 0x22:    // "
    case 0x27:    // '
    case 0x201C:  // “
    case 0x201D:  // ”
    case 0x2018:  // ‘
    case 0x2019:  // ’
    case 0xAB:    // «
    case 0xBB:    // »
      return true;
    default:
      return false;
  }
}

bool is_splitter(char32_t cp) {
  switch (cp) {
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case 0xBF:    // ¿
    case 0xA1:    // ¡
    case '(':
    case ')':
    case '[':
    case ']':
    case 0x2014:  // —
      return true;
    default:
      return false;
  }
}

bool is_conditional(char32_t cp) {
  return cp == '.' || cp == 0x27 || cp == 0x2019;
}

bool is_word_char(char32_t cp) {
  return !is_space(cp) && !is_quote(cp) && !is_splitter(cp) &&
         !is_conditional(cp);
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 'a' && cp <= 'z') return true;
  if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
  if (cp >= 0x100 && cp <= 0x17F) return true;
  return false;
}

char32_t simple_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // İ (0x130) has no 1:1 lowercase here: its lowercase is i + U+0307,
  // and pairing it with ı would break fold consistency.
  if (cp >= 0x100 && cp <= 0x137 && (cp & 1) == 0 && cp != 0x130) {
    return cp + 1;
  }
  if (cp >= 0x139 && cp <= 0x147 && (cp & 1) == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x176 && (cp & 1) == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;  // Ÿ
  if (cp == 0x179 || cp == 0x17B || cp == 0x17D) return cp + 1;
  return cp;
}

char32_t simple_upper(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 0x20;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 0x20;
  if (cp == 0xFF) return 0x178;  // ÿ
  // ı (0x131) uppercases to dotted İ only in Turkic locales; mapping it
  // here would break fold consistency, so it keeps no 1:1 uppercase.
  if (cp >= 0x101 && cp <= 0x137 && (cp & 1) == 1 && cp != 0x131) {
    return cp - 1;
  }
  if (cp >= 0x13A && cp <= 0x148 && (cp & 1) == 0) return cp - 1;
  if (cp >= 0x14B && cp <= 0x177 && (cp & 1) == 1) return cp - 1;
  if (cp == 0x17A || cp == 0x17C || cp == 0x17E) return cp - 1;
  if (cp == 0x17F) return 'S';  // ſ
  return cp;
}

bool is_upper(char32_t cp) {
  return simple_lower(cp) != cp || cp == 0x130;  // İ has no 1:1 lower
}

bool is_lower(char32_t cp) {
  // ß, ı, ĸ, and ŉ carry no 1:1 uppercase in these tables.
  return simple_upper(cp) != cp || cp == 0xDF || cp == 0x131 ||
         cp == 0x138 || cp == 0x149;
}

bool is_cased(char32_t cp) { return is_upper(cp) || is_lower(cp); }

void fold_append(char32_t cp, std::u32string* out) {
  switch (cp) {
    case 0xDF:    // ß
    case 0x1E9E:  // ẞ
      out->push_back('s');
      out->push_back('s');
      return;
    case 0x130:  // İ
      out->push_back('i');
      out->push_back(0x307);
      return;
    case 0x17F:  // ſ
      out->push_back('s');
      return;
    default:
      out->push_back(simple_lower(cp));
      return;
  }
}

void upper_append(char32_t cp, std::u32string* out) {
  if (cp == 0xDF) {  // ß
    out->push_back('S');
    out->push_back('S');
    return;
  }
  out->push_back(simple_upper(cp));
}

std::string casefold(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  std::u32string folded;
  folded.reserve(cps.size());
  for (char32_t cp : cps) fold_append(cp, &folded);
  return encode_utf8(folded);
}

std::string to_lower(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  std::u32string lowered;
  lowered.reserve(cps.size());
  for (char32_t cp : cps) lowered.push_back(simple_lower(cp));
  return encode_utf8(lowered);
}

std::string to_upper(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  std::u32string uppered;
  uppered.reserve(cps.size());
  for (char32_t cp : cps) upper_append(cp, &uppered);
  return encode_utf8(uppered);
}

char32_t strip_accent(char32_t cp) {
  switch (cp) {
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
      return 'a';
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
      return 'e';
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
      return 'i';
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6:
      return 'o';
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
      return 'u';
    case 0xFD: case 0xFF:
      return 'y';
    case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5:
      return 'A';
    case 0xC8: case 0xC9: case 0xCA: case 0xCB:
      return 'E';
    case 0xCC: case 0xCD: case 0xCE: case 0xCF:
      return 'I';
    case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6:
      return 'O';
    case 0xD9: case 0xDA: case 0xDB: case 0xDC:
      return 'U';
    case 0xDD:
      return 'Y';
    default:
      return cp;
  }
}

}  // namespace uni
}  // namespace borrowkit
