#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthoclass/errors.hpp"
#include "orthoclass/utf8.hpp"

namespace ortho {

struct raw_page {
    std::string title;
    std::string wikitext;
};

namespace detail {

inline void unescape_xml_entities(std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        const std::size_t semi = s.find(';', i);
        if (semi == std::string::npos || semi - i > 12) {
            out.push_back(s[i++]);
            continue;
        }
        const std::string_view ent(s.data() + i + 1, semi - i - 1);
        if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "amp") out.push_back('&');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (!ent.empty() && ent[0] == '#') {
            char32_t cp = 0;
            bool ok = ent.size() > 1;
            if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
                for (std::size_t k = 2; k < ent.size() && ok; ++k) {
                    const char c = ent[k];
                    if (c >= '0' && c <= '9') cp = cp * 16 + (c - '0');
                    else if (c >= 'a' && c <= 'f') cp = cp * 16 + (c - 'a' + 10);
                    else if (c >= 'A' && c <= 'F') cp = cp * 16 + (c - 'A' + 10);
                    else ok = false;
                }
            } else {
                for (std::size_t k = 1; k < ent.size() && ok; ++k) {
                    const char c = ent[k];
                    if (c >= '0' && c <= '9') cp = cp * 10 + (c - '0');
                    else ok = false;
                }
            }
            if (ok && cp > 0 && cp <= 0x10FFFF) {
                utf8::encode(cp, out);
            } else {
                out.push_back(s[i]);
                i += 1;
                continue;
            }
        } else {
            out.push_back(s[i++]);
            continue;
        }
        i = semi + 1;
    }
    s.swap(out);
}

} // namespace detail

// Single-pass reader over a MediaWiki pages-articles XML export. Yields
// main-namespace article pages in document order; redirects and other
// namespaces are skipped. The stream must already be decompressed.
class page_reader {
public:
    explicit page_reader(std::istream& in) : in_(in) {}

    // nullopt at clean end of input. Throws parse_error on structurally
    // broken pages (with the absolute byte offset) and truncated_error when
    // the stream ends inside a page element.
    std::optional<raw_page> next() {
        for (;;) {
            const auto page_start = find("<page>");
            if (!page_start) return std::nullopt;
            const auto page_end = find("</page>", *page_start);
            if (!page_end) {
                throw truncated_error("dump truncated inside <page> at byte " +
                                      std::to_string(offset_of(*page_start)));
            }
            const std::string_view page(buf_.data() + *page_start,
                                        *page_end - *page_start);
            const std::size_t consumed = *page_end + 7; // past "</page>"
            auto parsed = parse_page(page, offset_of(*page_start));
            discard(consumed);
            if (parsed) return parsed;
        }
    }

private:
    std::istream& in_;
    std::string buf_;
    std::size_t base_offset_ = 0; // absolute stream offset of buf_[0]
    bool eof_ = false;

    std::size_t offset_of(std::size_t local) const { return base_offset_ + local; }

    bool fill() {
        if (eof_) return false;
        char chunk[1 << 16];
        in_.read(chunk, sizeof chunk);
        const auto got = static_cast<std::size_t>(in_.gcount());
        if (got == 0) {
            eof_ = true;
            return false;
        }
        buf_.append(chunk, got);
        return true;
    }

    // Finds needle in the buffered stream at/after `from`, reading more
    // input as needed. Returns a local buffer index.
    std::optional<std::size_t> find(std::string_view needle, std::size_t from = 0) {
        std::size_t search_from = from;
        for (;;) {
            const auto pos = buf_.find(needle, search_from);
            if (pos != std::string::npos) return pos;
            if (buf_.size() >= needle.size()) {
                search_from = std::max(from, buf_.size() - needle.size() + 1);
            }
            if (!fill()) return std::nullopt;
        }
    }

    void discard(std::size_t n) {
        buf_.erase(0, n);
        base_offset_ += n;
    }

    static std::optional<std::string_view> element_text(std::string_view page,
                                                        std::string_view open,
                                                        std::string_view close) {
        const auto b = page.find(open);
        if (b == std::string_view::npos) return std::nullopt;
        const auto e = page.find(close, b + open.size());
        if (e == std::string_view::npos) return std::nullopt;
        return page.substr(b + open.size(), e - b - open.size());
    }

    std::optional<raw_page> parse_page(std::string_view page, std::size_t abs_offset) const {
        const auto title = element_text(page, "<title>", "</title>");
        if (!title || title->empty()) {
            throw parse_error("page without <title> at byte " + std::to_string(abs_offset));
        }
        if (const auto ns = element_text(page, "<ns>", "</ns>"); ns && *ns != "0") {
            return std::nullopt; // non-article namespace
        }
        if (page.find("<redirect") != std::string_view::npos) return std::nullopt;

        const auto text_open = page.find("<text");
        if (text_open == std::string_view::npos) {
            throw parse_error("page without <text> at byte " + std::to_string(abs_offset));
        }
        const auto tag_close = page.find('>', text_open);
        if (tag_close == std::string_view::npos) {
            throw parse_error("unterminated <text> tag at byte " +
                              std::to_string(abs_offset + text_open));
        }
        std::string wikitext;
        if (page[tag_close - 1] != '/') { // not self-closing
            const auto text_end = page.find("</text>", tag_close + 1);
            if (text_end == std::string_view::npos) {
                throw parse_error("unterminated <text> element at byte " +
                                  std::to_string(abs_offset + text_open));
            }
            wikitext.assign(page.substr(tag_close + 1, text_end - tag_close - 1));
        }

        raw_page out;
        out.title.assign(*title);
        detail::unescape_xml_entities(out.title);
        detail::unescape_xml_entities(wikitext);

        // #REDIRECT pages sometimes lack the <redirect> element
        std::size_t i = 0;
        while (i < wikitext.size() &&
               (wikitext[i] == ' ' || wikitext[i] == '\t' || wikitext[i] == '\n' ||
                wikitext[i] == '\r')) {
            ++i;
        }
        if (wikitext.compare(i, 9, "#REDIRECT") == 0 || wikitext.compare(i, 9, "#redirect") == 0) {
            return std::nullopt;
        }
        out.wikitext = std::move(wikitext);
        return out;
    }
};

inline std::vector<raw_page> extract_pages(std::istream& in) {
    page_reader reader(in);
    std::vector<raw_page> pages;
    while (auto p = reader.next()) pages.push_back(std::move(*p));
    return pages;
}

} // namespace ortho
