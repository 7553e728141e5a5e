#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orthoclass/errors.hpp"
#include "orthoclass/orthography.hpp"
#include "orthoclass/utf8.hpp"

namespace ortho {

// Template name -> orthography class. Lookup is case-insensitive and ignores
// surrounding whitespace; the original spelling is kept for round-tripping
// config files.
class tag_map {
public:
    void add(const std::string& template_name, orthography cls) {
        if (cls == orthography::no_tag) {
            throw config_error("tag map cannot map '" + template_name + "' to NO_TAG");
        }
        const std::string key = normalize(template_name);
        if (key.empty()) throw config_error("empty template name in tag map");
        if (lookup_.contains(key)) {
            throw config_error("duplicate template name '" + template_name + "' in tag map");
        }
        entries_.emplace_back(template_name, cls);
        lookup_.emplace(key, cls);
    }

    std::optional<orthography> find(std::string_view template_name) const {
        const auto it = lookup_.find(normalize(template_name));
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<std::pair<std::string, orthography>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    static std::string normalize(std::string_view name) {
        std::size_t b = 0, e = name.size();
        auto is_space = [](char c) {
            return c == ' ' || c == '\t' || c == '\r' || c == '\n';
        };
        while (b < e && is_space(name[b])) ++b;
        while (e > b && is_space(name[e - 1])) --e;
        return utf8::lowercase(name.substr(b, e - b));
    }

private:
    std::vector<std::pair<std::string, orthography>> entries_;
    std::unordered_map<std::string, orthography> lookup_;
};

// Scans every {{...}} invocation (name = text before the first '|') in
// document order and returns the class of the first mapped template.
// `multiple_tags`, when given, is set if a later template maps to a
// different class.
inline orthography detect_orthography_tag(std::string_view wikitext, const tag_map& tags,
                                          bool* multiple_tags = nullptr) {
    if (multiple_tags) *multiple_tags = false;
    std::optional<orthography> first;
    std::size_t i = 0;
    while (i + 1 < wikitext.size()) {
        if (wikitext[i] != '{' || wikitext[i + 1] != '{') {
            ++i;
            continue;
        }
        const std::size_t name_start = i + 2;
        std::size_t j = name_start;
        bool nested = false;
        while (j < wikitext.size()) {
            if (wikitext[j] == '|') break;
            if (wikitext[j] == '}' && j + 1 < wikitext.size() && wikitext[j + 1] == '}') break;
            if (wikitext[j] == '{' && j + 1 < wikitext.size() && wikitext[j + 1] == '{') {
                nested = true;
                break;
            }
            ++j;
        }
        if (nested) {
            i = j; // restart at the inner template
            continue;
        }
        const auto cls = tags.find(wikitext.substr(name_start, j - name_start));
        if (cls) {
            if (!first) {
                first = *cls;
            } else if (*cls != *first && multiple_tags) {
                *multiple_tags = true;
            }
        }
        i = j;
    }
    return first.value_or(orthography::no_tag);
}

namespace detail {

inline bool iequal_ascii(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        char x = a[i], y = b[i];
        if (x >= 'A' && x <= 'Z') x += 0x20;
        if (y >= 'A' && y <= 'Z') y += 0x20;
        if (x != y) return false;
    }
    return true;
}

// Removes every '<open>...</close>' region wholesale; an unclosed opener
// eats the rest of the string. Opener match is case-insensitive and must be
// followed by '>', '/' or whitespace.
inline void remove_tag_blocks(std::string& s, std::string_view tag) {
    std::string out;
    out.reserve(s.size());
    const std::string open = "<" + std::string(tag);
    const std::string close = "</" + std::string(tag);
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<' && i + open.size() <= s.size() &&
            iequal_ascii(std::string_view(s.data() + i, open.size()), open)) {
            const char after = i + open.size() < s.size() ? s[i + open.size()] : '>';
            if (after == '>' || after == '/' || after == ' ' || after == '\t' || after == '\n') {
                const auto tag_end = s.find('>', i);
                if (tag_end == std::string::npos) break; // unclosed opener: drop rest
                if (s[tag_end - 1] == '/') {             // self-closing
                    i = tag_end + 1;
                    continue;
                }
                auto close_at = s.find(close, tag_end + 1);
                if (close_at == std::string::npos) break;
                const auto close_end = s.find('>', close_at);
                if (close_end == std::string::npos) break;
                i = close_end + 1;
                continue;
            }
        }
        out.push_back(s[i++]);
    }
    s.swap(out);
}

// Deletes balanced '{{...}}' / '{|...|}' regions, tracking nesting;
// unbalanced openers delete to end of string.
inline void remove_braced(std::string& s, std::string_view open, std::string_view close) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    int depth = 0;
    while (i < s.size()) {
        if (i + 1 < s.size() && s[i] == open[0] && s[i + 1] == open[1]) {
            ++depth;
            i += 2;
            continue;
        }
        if (depth > 0 && i + 1 < s.size() && s[i] == close[0] && s[i + 1] == close[1]) {
            --depth;
            i += 2;
            continue;
        }
        if (depth == 0) out.push_back(s[i]);
        ++i;
    }
    s.swap(out);
}

inline bool is_media_prefix(std::string_view target) {
    std::string_view t = target;
    if (!t.empty() && t[0] == ':') t.remove_prefix(1);
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) return false;
    const std::string_view prefix = t.substr(0, colon);
    for (std::string_view p : {"file", "image", "media", "category", "categoria", "immagine"}) {
        if (iequal_ascii(prefix, p)) return true;
    }
    return false;
}

// [[target|label]] -> label, [[target]] -> target; media/category links and
// interwiki links vanish. Runs innermost-first so nested links inside file
// captions resolve before the outer region is judged.
inline std::string resolve_links(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (i + 1 < s.size() && s[i] == '[' && s[i + 1] == '[') {
            // find the matching ]] at this nesting level
            std::size_t j = i + 2;
            int depth = 1;
            while (j + 1 < s.size() && depth > 0) {
                if (s[j] == '[' && s[j + 1] == '[') {
                    depth += 1;
                    j += 2;
                } else if (s[j] == ']' && s[j + 1] == ']') {
                    depth -= 1;
                    j += 2;
                } else {
                    ++j;
                }
            }
            if (depth != 0) break; // unbalanced: drop the rest
            const std::string inner = resolve_links(s.substr(i + 2, j - 2 - (i + 2)));
            i = j;
            if (is_media_prefix(inner)) continue;
            const auto bar = inner.find('|');
            if (bar == std::string::npos) {
                // bare [[xx:...]] cross-wiki links disappear
                if (inner.find(':') != std::string::npos) continue;
                out.append(inner);
            } else {
                out.append(inner.substr(bar + 1));
            }
            continue;
        }
        out.push_back(s[i++]);
    }
    return out;
}

// [http://url label] -> label, [http://url] -> nothing.
inline void resolve_external_links(std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        bool is_ext = false;
        if (s[i] == '[') {
            for (std::string_view scheme : {"[http://", "[https://", "[ftp://", "[//"}) {
                if (s.compare(i, scheme.size(), scheme) == 0) {
                    is_ext = true;
                    break;
                }
            }
        }
        if (!is_ext) {
            out.push_back(s[i++]);
            continue;
        }
        const auto end = s.find(']', i);
        if (end == std::string::npos) break;
        const std::string_view inner(s.data() + i + 1, end - i - 1);
        const auto space = inner.find(' ');
        if (space != std::string_view::npos) out.append(inner.substr(space + 1));
        i = end + 1;
    }
    s.swap(out);
}

inline void erase_all(std::string& s, std::string_view needle) {
    std::size_t pos = 0;
    while ((pos = s.find(needle, pos)) != std::string::npos) s.erase(pos, needle.size());
}

// Strips remaining <...> tags; <br> variants become newlines.
inline void strip_html_tags(std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<' && i + 1 < s.size() &&
            (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '/')) {
            const auto end = s.find('>', i);
            if (end == std::string::npos) break;
            const std::string_view tag(s.data() + i, end - i + 1);
            if (tag.size() >= 3 && (iequal_ascii(tag.substr(0, 3), "<br") ||
                                    iequal_ascii(tag.substr(0, 4), "</br"))) {
                out.push_back('\n');
            }
            i = end + 1;
            continue;
        }
        out.push_back(s[i++]);
    }
    s.swap(out);
}

inline void remove_comments(std::string& s) {
    std::size_t pos = 0;
    while ((pos = s.find("<!--", pos)) != std::string::npos) {
        const auto end = s.find("-->", pos + 4);
        if (end == std::string::npos) {
            s.erase(pos);
            break;
        }
        s.erase(pos, end + 3 - pos);
    }
}

// Wikitext keeps HTML entities even after the XML layer unescaped once.
inline void unescape_html_entities(std::string& s) {
    struct ent {
        std::string_view name;
        std::string_view repl;
    };
    static constexpr std::array<ent, 8> table{{{"&nbsp;", " "},
                                               {"&amp;", "&"},
                                               {"&lt;", "<"},
                                               {"&gt;", ">"},
                                               {"&quot;", "\""},
                                               {"&apos;", "'"},
                                               {"&ndash;", "\xE2\x80\x93"},
                                               {"&mdash;", "\xE2\x80\x94"}}};
    for (const auto& e : table) {
        std::size_t pos = 0;
        while ((pos = s.find(e.name, pos)) != std::string::npos) {
            s.replace(pos, e.name.size(), e.repl);
            pos += e.repl.size();
        }
    }
}

inline void remove_magic_words(std::string& s) {
    std::size_t pos = 0;
    while ((pos = s.find("__", pos)) != std::string::npos) {
        const auto end = s.find("__", pos + 2);
        if (end == std::string::npos) break;
        bool word = end > pos + 2;
        for (std::size_t k = pos + 2; k < end && word; ++k) {
            word = (s[k] >= 'A' && s[k] <= 'Z') || (s[k] >= 'a' && s[k] <= 'z');
        }
        if (word) {
            s.erase(pos, end + 2 - pos);
        } else {
            pos += 2;
        }
    }
}

inline std::string tidy_line(std::string_view line) {
    // drop list/indent markers, collapse whitespace runs
    std::size_t b = 0;
    while (b < line.size() && (line[b] == '*' || line[b] == '#' || line[b] == ':' ||
                               line[b] == ';' || line[b] == ' ' || line[b] == '\t')) {
        ++b;
    }
    std::string out;
    out.reserve(line.size() - b);
    bool pending_space = false;
    for (std::size_t i = b; i < line.size(); ++i) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

inline bool is_heading(std::string_view line) {
    return line.size() >= 2 && line.front() == '=' && line.back() == '=';
}

} // namespace detail

// Reduces wikitext to plain-text lines: templates, tables, refs, markup and
// headings go away, link labels stay. Unparseable constructs are dropped,
// never fatal; no output line contains "{{", "[[" or "</".
inline std::vector<std::string> strip_markup(std::string_view wikitext) {
    std::string s(wikitext);
    detail::remove_comments(s);
    for (std::string_view tag : {"ref", "references", "math", "gallery", "timeline", "source",
                                 "syntaxhighlight", "score", "imagemap"}) {
        detail::remove_tag_blocks(s, tag);
    }
    detail::remove_braced(s, "{{", "}}");
    detail::remove_braced(s, "{|", "|}");
    s = detail::resolve_links(s);
    detail::resolve_external_links(s);
    detail::strip_html_tags(s);
    detail::erase_all(s, "'''''");
    detail::erase_all(s, "'''");
    detail::erase_all(s, "''");
    detail::remove_magic_words(s);
    detail::unescape_html_entities(s);

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto nl = s.find('\n', start);
        const std::string_view raw(s.data() + start,
                                   (nl == std::string::npos ? s.size() : nl) - start);
        start = nl == std::string::npos ? s.size() + 1 : nl + 1;

        std::string line = detail::tidy_line(raw);
        if (line.empty()) continue;
        if (detail::is_heading(line)) continue;
        if (line[0] == '|' || line[0] == '!') continue; // table residue
        if (line.find_first_not_of('-') == std::string::npos) continue;
        if (line.find("{{") != std::string::npos || line.find("[[") != std::string::npos ||
            line.find("</") != std::string::npos || line.find("}}") != std::string::npos ||
            line.find("]]") != std::string::npos) {
            continue; // markup residue from unparseable input
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

} // namespace ortho
