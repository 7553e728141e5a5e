#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ortho::utf8 {

// Decodes one UTF-8 sequence starting at text[pos]. Advances pos past the
// sequence. Invalid bytes are returned verbatim as their byte value and
// consume exactly one byte, so decoding never fails and never loses data.
inline char32_t decode_next(std::string_view text, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(text[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < text.size() && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = (char32_t(b0 & 0x1F) << 6) |
                      (static_cast<unsigned char>(text[pos + 1]) & 0x3F);
        pos += 2;
        return cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = (char32_t(b0 & 0x0F) << 12) |
                      (char32_t(static_cast<unsigned char>(text[pos + 1]) & 0x3F) << 6) |
                      (static_cast<unsigned char>(text[pos + 2]) & 0x3F);
        pos += 3;
        return cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) |
                      (char32_t(static_cast<unsigned char>(text[pos + 1]) & 0x3F) << 12) |
                      (char32_t(static_cast<unsigned char>(text[pos + 2]) & 0x3F) << 6) |
                      (static_cast<unsigned char>(text[pos + 3]) & 0x3F);
        pos += 4;
        return cp;
    }
    ++pos;
    return b0; // lone/invalid byte, passed through
}

inline void encode(char32_t cp, std::string& out) {
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

inline std::vector<char32_t> decode(std::string_view text) {
    std::vector<char32_t> cps;
    cps.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) cps.push_back(decode_next(text, pos));
    return cps;
}

// Case folding for the scripts that actually occur in the target corpora:
// ASCII, Latin-1 Supplement, Latin Extended-A, Greek and Cyrillic base
// blocks. Everything else maps to itself.
inline char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp >= 0x100 && cp <= 0x137 && (cp & 1) == 0) return cp + 1;
    if (cp >= 0x139 && cp <= 0x148 && (cp & 1) == 1) return cp + 1;
    if (cp >= 0x14A && cp <= 0x177 && (cp & 1) == 0) return cp + 1;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E && (cp & 1) == 1) return cp + 1;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

inline std::string lowercase(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = decode_next(text, pos);
        const char32_t lo = to_lower(cp);
        if (lo == cp) {
            out.append(text.substr(start, pos - start));
        } else {
            encode(lo, out);
        }
    }
    return out;
}

inline bool is_latin_letter(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return true;  // Latin-1 + Ext-A/B
    if (cp >= 0x1E00 && cp <= 0x1EFF) return true;                          // Latin Ext Additional
    return false;
}

// Letter test over the script ranges the quality filters care about.
inline bool is_letter(char32_t cp) {
    if (is_latin_letter(cp)) return true;
    if (cp >= 0x370 && cp <= 0x3FF) return true;   // Greek
    if (cp >= 0x400 && cp <= 0x52F) return true;   // Cyrillic
    if (cp >= 0x530 && cp <= 0x58F) return true;   // Armenian
    if (cp >= 0x590 && cp <= 0x5FF) return true;   // Hebrew
    if (cp >= 0x600 && cp <= 0x6FF) return true;   // Arabic
    if (cp >= 0x3040 && cp <= 0x30FF) return true; // Kana
    if (cp >= 0x4E00 && cp <= 0x9FFF) return true; // CJK
    if (cp >= 0xAC00 && cp <= 0xD7AF) return true; // Hangul
    return false;
}

inline bool is_ascii_alnum(char32_t cp) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z');
}

} // namespace ortho::utf8
