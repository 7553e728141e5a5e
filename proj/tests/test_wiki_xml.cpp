#include <doctest.h>

#include <sstream>
#include <string>

#include "orthoclass/wiki_xml.hpp"

using namespace ortho;

namespace {

std::string page_xml(const std::string& title, const std::string& text, int ns = 0,
                     bool redirect = false) {
    std::string out = "  <page>\n    <title>" + title + "</title>\n    <ns>" +
                      std::to_string(ns) + "</ns>\n    <id>1</id>\n";
    if (redirect) out += "    <redirect title=\"Somewhere\" />\n";
    out += "    <revision>\n      <id>2</id>\n      <text xml:space=\"preserve\">" + text +
           "</text>\n    </revision>\n  </page>\n";
    return out;
}

std::string wrap(const std::string& pages) {
    return "<mediawiki xml:lang=\"lmo\">\n  <siteinfo><sitename>Wikipedia</sitename></siteinfo>\n" +
           pages + "</mediawiki>\n";
}

} // namespace

TEST_CASE("extract_pages yields articles in order, skipping redirects") {
    std::istringstream in(wrap(page_xml("Milan", "{{GrafMIL}}\nEl Domm.") +
                               page_xml("Redirect page", "#REDIRECT [[Milan]]", 0, true) +
                               page_xml("Lecch", "El lagh.")));
    const auto pages = extract_pages(in);
    REQUIRE(pages.size() == 2);
    CHECK(pages[0].title == "Milan");
    CHECK(pages[0].wikitext == "{{GrafMIL}}\nEl Domm.");
    CHECK(pages[1].title == "Lecch");
}

TEST_CASE("non-article namespaces are skipped") {
    std::istringstream in(wrap(page_xml("Wikipedia:GrafCat", "regole", 4) +
                               page_xml("Talk:Milan", "ciciarada", 1) +
                               page_xml("Milan", "El Domm.")));
    const auto pages = extract_pages(in);
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].title == "Milan");
}

TEST_CASE("#REDIRECT pages without the element are skipped too") {
    std::istringstream in(wrap(page_xml("R", "  #REDIRECT [[Milan]]") + page_xml("A", "text")));
    const auto pages = extract_pages(in);
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].title == "A");
}

TEST_CASE("empty and self-closing text elements give empty wikitext") {
    std::istringstream in(wrap(page_xml("Empty", "") +
                               "<page><title>SelfClosed</title><ns>0</ns>"
                               "<revision><text bytes=\"0\" /></revision></page>\n"));
    const auto pages = extract_pages(in);
    REQUIRE(pages.size() == 2);
    CHECK(pages[0].wikitext.empty());
    CHECK(pages[1].wikitext.empty());
}

TEST_CASE("xml entities are unescaped in title and text") {
    std::istringstream in(
        wrap(page_xml("A &amp; B", "днес &lt;tag&gt; &quot;q&quot; &#233; &#x00E8;")));
    const auto pages = extract_pages(in);
    REQUIRE(pages.size() == 1);
    CHECK(pages[0].title == "A & B");
    CHECK(pages[0].wikitext == "днес <tag> \"q\" é è");
}

TEST_CASE("truncated dump errors after yielding complete pages") {
    // one complete page, then one opened-but-unterminated page
    std::istringstream broken(
        "<mediawiki>" + page_xml("A", "primm") + "  <page>\n    <title>B</title>\n    <ns>0</ns>");
    page_reader reader(broken);
    const auto first = reader.next();
    REQUIRE(first.has_value());
    CHECK(first->title == "A");
    CHECK_THROWS_AS(reader.next(), truncated_error);
}

TEST_CASE("pages missing required elements are malformed with a byte offset") {
    std::istringstream no_title("<mediawiki><page><ns>0</ns><revision><text>x</text></revision>"
                                "</page></mediawiki>");
    page_reader r1(no_title);
    try {
        r1.next();
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }

    std::istringstream no_text("<mediawiki><page><title>T</title><ns>0</ns></page></mediawiki>");
    page_reader r2(no_text);
    CHECK_THROWS_AS(r2.next(), parse_error);
}

TEST_CASE("reader streams across buffer boundaries") {
    // force the page to straddle several 64 KiB read chunks
    std::string big_text;
    big_text.reserve(200000);
    for (int i = 0; i < 20000; ++i) big_text += "parola mia ";
    std::istringstream in(wrap(page_xml("Big", big_text) + page_xml("Small", "ciao")));
    const auto pages = extract_pages(in);
    REQUIRE(pages.size() == 2);
    CHECK(pages[0].wikitext.size() == big_text.size());
    CHECK(pages[1].title == "Small");
}
