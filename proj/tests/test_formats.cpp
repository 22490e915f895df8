#include <doctest.h>

#include "digraphe/errors.hpp"
#include "digraphe/formats.hpp"
#include "digraphe/unicode.hpp"
#include "test_helpers.hpp"

#include <filesystem>
#include <random>
#include <sstream>

using namespace digraphe;

namespace {

const MappingTable& wolof() {
    static MappingTable t = test::load_validated(test::data_path("wolof.tbl"));
    return t;
}

const Engine& forward() {
    static Engine e(wolof(), Direction::LatinToAjami);
    return e;
}

const Engine& backward() {
    static Engine e(wolof(), Direction::AjamiToLatin);
    return e;
}

std::vector<std::string> html_fixtures() {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(
             std::string(DIGRAPHE_FIXTURE_DIR) + "/html"))
        if (entry.path().extension() == ".html")
            out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    REQUIRE(out.size() >= 10);
    return out;
}

} // namespace

TEST_CASE("text stream: two-line file") {
    std::istringstream in("garab\nbant\n");
    std::ostringstream out;
    TransliterationReport r = transliterate_text_stream(in, out, forward(),
                                                        MatchMode::Strict);
    CHECK(out.str() == "گَرَب\nبَنت\n");
    CHECK(r.tokens_mapped == 8);
}

TEST_CASE("text stream: empty input") {
    std::istringstream in("");
    std::ostringstream out;
    TransliterationReport r = transliterate_text_stream(in, out, forward(),
                                                        MatchMode::Strict);
    CHECK(out.str().empty());
    CHECK(r.chars_in == 0);
    CHECK(r.chars_out == 0);
    CHECK(r.tokens_mapped == 0);
}

TEST_CASE("text stream: final line without newline stays without one") {
    std::istringstream in("garab\nbant");
    std::ostringstream out;
    transliterate_text_stream(in, out, forward(), MatchMode::Strict);
    CHECK(out.str() == "گَرَب\nبَنت");
}

TEST_CASE("text stream: carriage returns ride along") {
    std::istringstream in("garab\r\nbant\r\n");
    std::ostringstream out;
    transliterate_text_stream(in, out, forward(), MatchMode::Strict);
    CHECK(out.str() == "گَرَب\r\nبَنت\r\n");
}

TEST_CASE("text stream: strict errors carry line and column") {
    std::istringstream in("garab\nbanQt zz\n");
    std::ostringstream out;
    try {
        transliterate_text_stream(in, out, forward(), MatchMode::Strict);
        FAIL("expected UnknownCharacterError");
    } catch (const UnknownCharacterError& e) {
        CHECK(e.scalar == U'z');
        CHECK(e.line == 2);
        CHECK(e.column == 7);
    }
}

TEST_CASE("text stream: per-line output equals per-word conversion") {
    std::mt19937 rng(31337);
    std::vector<std::string> sources = test::latin_sources(wolof());
    std::string doc;
    std::vector<std::string> words;
    for (int i = 0; i < 200; ++i) {
        std::string w = test::random_word(sources, rng);
        words.push_back(w);
        doc += w;
        doc += (i % 2) ? "\n" : " ";
    }
    std::istringstream in(doc);
    std::ostringstream out;
    transliterate_text_stream(in, out, forward(), MatchMode::Strict);
    std::string converted = out.str();
    for (const std::string& w : words) {
        std::string single = forward().transliterate(w, MatchMode::Strict).first;
        CHECK_MESSAGE(converted.find(single) != std::string::npos,
                      "per-word output missing for ", w);
    }
}

TEST_CASE("text stream: round trip over the stream interface") {
    std::string doc = "garab bant\njàng, ker; wér\nñaw\n";
    std::istringstream in(doc);
    std::ostringstream mid;
    transliterate_text_stream(in, mid, forward(), MatchMode::Strict);
    std::istringstream back_in(mid.str());
    std::ostringstream back;
    transliterate_text_stream(back_in, back, backward(), MatchMode::Strict);
    CHECK(back.str() == doc);
}

TEST_CASE("html: text nodes convert, tags stay") {
    auto [out, report] = transliterate_html("<p>garab</p>", forward(),
                                            MatchMode::Strict);
    CHECK(out == "<p>گَرَب</p>");
}

TEST_CASE("html: script content is untouched") {
    std::string doc = "<script>var garab=1;</script>";
    auto [out, report] = transliterate_html(doc, forward(), MatchMode::Strict);
    CHECK(out == doc);
}

TEST_CASE("html: custom skip elements") {
    HtmlOptions opts;
    opts.skip_elements = {"code"};
    std::string doc = "<code>garab</code><p>bant</p>";
    auto [out, report] = transliterate_html(doc, forward(), MatchMode::Strict, opts);
    CHECK(out == "<code>garab</code><p>بَنت</p>");
}

TEST_CASE("html: reserved entities decode for matching and keep their spelling") {
    std::string doc = "<p>garab &amp; bant</p>";
    auto [out, report] = transliterate_html(doc, forward(), MatchMode::Strict);
    CHECK(out == "<p>گَرَب &amp; "
                 "بَنت</p>");

    // &#44; is a comma: a delimiter, restored as written.
    auto [out2, r2] = transliterate_html("<p>ker&#44;car</p>", forward(),
                                         MatchMode::Strict);
    CHECK(out2 == "<p>كِىر&#44;چَر</p>");
}

TEST_CASE("html: entities spelling digraphs take part in matching") {
    // b + a + "nt" written with a numeric entity for the n: the decoded text
    // is the word bant, so the digraph applies across the entity boundary.
    auto [out, report] = transliterate_html("<p>ba&#110;t</p>", forward(),
                                            MatchMode::Strict);
    CHECK(out == "<p>بَنت</p>");
}

TEST_CASE("html: unknown named entities pass through verbatim") {
    std::string doc = "<p>garab&nbsp;bant</p>";
    auto [out, report] = transliterate_html(doc, forward(), MatchMode::Strict);
    CHECK(out == "<p>گَرَب&nbsp;"
                 "بَنت</p>");
}

TEST_CASE("html: comments, CDATA and declarations are untouched") {
    std::string doc = "<!DOCTYPE html><!-- garab --><![CDATA[ bant ]]><p>car</p>";
    auto [out, report] = transliterate_html(doc, forward(), MatchMode::Strict);
    CHECK(out == "<!DOCTYPE html><!-- garab --><![CDATA[ bant ]]>"
                 "<p>چَر</p>");
}

TEST_CASE("html: literal '<' not starting markup is text") {
    auto [out, report] = transliterate_html("<p>1 < 2 bant</p>", forward(),
                                            MatchMode::Strict);
    CHECK(out == "<p>1 < 2 بَنت</p>");
}

TEST_CASE("html: dir attribute injection") {
    HtmlOptions opts;
    opts.set_dir_attribute = true;
    auto [out, r] = transliterate_html("<html><body><p>garab</p></body></html>",
                                       forward(), MatchMode::Strict, opts);
    CHECK(out.starts_with("<html dir=\"rtl\">"));

    auto [out2, r2] = transliterate_html(
        "<html dir=\"ltr\"><p>گَرَب</p></html>", backward(),
        MatchMode::Strict, opts);
    CHECK(out2.starts_with("<html dir=\"ltr\">"));
    CHECK(out2.find("garab") != std::string::npos);

    auto [out3, r3] = transliterate_html("<html dir=\"ltr\"><p>garab</p></html>",
                                         forward(), MatchMode::Strict, opts);
    CHECK(out3.starts_with("<html dir=\"rtl\">"));
}

TEST_CASE("html: markup byte subsequence is preserved on the fixture corpus") {
    for (const std::string& path : html_fixtures()) {
        std::string doc = test::read_file(path);
        auto [out, report] = transliterate_html(doc, forward(), MatchMode::Lenient);
        CHECK_MESSAGE(test::strip_text_nodes(out) == test::strip_text_nodes(doc),
                      "markup changed in ", path);
    }
}

TEST_CASE("html: text nodes relate exactly by transliteration") {
    std::string doc = test::read_file(
        std::string(DIGRAPHE_FIXTURE_DIR) + "/html/page06_nested.html");
    auto [out, report] = transliterate_html(doc, forward(), MatchMode::Lenient);
    // Spot-check: the span-split word converts piecewise.
    CHECK(out.find("<span>گَ</span>رَب") !=
          std::string::npos);
}

TEST_CASE("html: forward then reverse is byte-identical for table-pure pages") {
    for (const char* name :
         {"page01_basic.html", "page02_script_style.html", "page03_entities.html",
          "page04_comments.html", "page06_nested.html"}) {
        std::string doc =
            test::read_file(std::string(DIGRAPHE_FIXTURE_DIR) + "/html/" + name);
        auto [ajami, r1] = transliterate_html(doc, forward(), MatchMode::Lenient);
        auto [back, r2] = transliterate_html(ajami, backward(), MatchMode::Lenient);
        CHECK_MESSAGE(back == doc, "round trip changed ", name);
    }
}

TEST_CASE("text stream: non-UTF-8 input is an encoding error") {
    std::istringstream in("gar\xFF" "ab\n");
    std::ostringstream out;
    CHECK_THROWS_AS(transliterate_text_stream(in, out, forward(), MatchMode::Lenient),
                    EncodingError);
}

TEST_CASE("html: non-UTF-8 input is an encoding error") {
    std::istringstream in("<p>ga\xFFrab</p>");
    std::ostringstream out;
    CHECK_THROWS_AS(
        transliterate_html(in, out, forward(), MatchMode::Lenient, HtmlOptions{}),
        EncodingError);
}

TEST_CASE("html: strict unknowns surface with an offset") {
    CHECK_THROWS_AS(transliterate_html("<p>zebra</p>", forward(), MatchMode::Strict),
                    UnknownCharacterError);
}

TEST_CASE("html: report aggregates across text nodes") {
    auto [out, report] = transliterate_html("<p>garab</p><p>bant</p>", forward(),
                                            MatchMode::Strict);
    CHECK(report.tokens_mapped == 8);
    CHECK(report.chars_in == 9);
}
