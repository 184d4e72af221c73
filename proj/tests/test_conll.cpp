#include <doctest.h>

#include <random>

#include "aliasres/conll.hpp"
#include "test_util.hpp"

using namespace aliasres;

namespace {

Corpus corpus_of(const std::string& text) { return parse_corpus_texts({text}); }

}  // namespace

TEST_CASE("single span becomes one mention") {
    Corpus c = corpus_of("Harry B-CHR\nPotter I-CHR\nran O\n");
    REQUIRE(c.mentions.size() == 1);
    const Mention& m = c.mentions[0];
    CHECK(m.surface == "Harry Potter");
    CHECK(m.etype == EntityType::CHR);
    CHECK(m.chapter == 1);
    CHECK(m.line == 1);
    CHECK(m.token_start == 0);
    CHECK(m.token_end == 1);
    CHECK(c.findings.empty());
}

TEST_CASE("two separate spans stay distinct") {
    Corpus c = corpus_of(
        "Constance B-CHR\nBonacieux I-CHR\n\nMme. B-CHR\nBonacieux I-CHR\n");
    REQUIRE(c.mentions.size() == 2);
    CHECK(c.mentions[0].surface == "Constance Bonacieux");
    CHECK(c.mentions[1].surface == "Mme. Bonacieux");
    CHECK(c.mentions[1].line == 2);
}

TEST_CASE("orphan I- tag is repaired as B- and reported") {
    Corpus c = corpus_of("ran O\nParis I-LOC\n");
    REQUIRE(c.mentions.size() == 1);
    CHECK(c.mentions[0].surface == "Paris");
    CHECK(c.mentions[0].etype == EntityType::LOC);
    CHECK(c.mentions[0].token_start == 1);
    REQUIRE(c.findings.size() == 1);
    CHECK(c.findings[0].code == "ORPHAN-I");
    CHECK(c.findings[0].severity == Severity::Warn);
    REQUIRE(c.findings[0].location.has_value());
    CHECK(c.findings[0].location->chapter == 1);
    CHECK(c.findings[0].location->line == 1);
    // the token keeps its raw tag: the file round-trips unchanged
    CHECK(serialize_chapter(c.chapters[0]) == "ran O\nParis I-LOC\n");
}

TEST_CASE("type switch inside a span closes it") {
    Corpus c = corpus_of("Harry B-CHR\nParis I-LOC\n");
    REQUIRE(c.mentions.size() == 2);
    CHECK(c.mentions[0].surface == "Harry");
    CHECK(c.mentions[1].surface == "Paris");
    CHECK(c.findings.size() == 1);  // the I-LOC is an orphan
}

TEST_CASE("parse errors carry file and line") {
    CHECK_THROWS_WITH_AS(corpus_of("onecolumn\n"), doctest::Contains(":1:"), parse_error);
    CHECK_THROWS_WITH_AS(corpus_of("a O\nb B-XYZ\n"), doctest::Contains(":2:"), parse_error);
    CHECK_THROWS_AS(corpus_of("a Q\n"), parse_error);
    CHECK_THROWS_AS(corpus_of("too many cols O\n"), parse_error);
    CHECK_THROWS_AS(corpus_of("# only a comment\n"), parse_error);  // no sentences
}

TEST_CASE("comments are preserved with their positions") {
    std::string text = "#Title=Moby Dick\nCall O\nme O\n# midway\nIshmael B-CHR\n\n# before 2\nYes O\n\n# trailing\n";
    Chapter ch = parse_chapter_text(text, 1, "t");
    REQUIRE(ch.comments.size() == 4);
    CHECK(ch.comments[0].sentence == 0);
    CHECK(ch.comments[0].token_offset == 0);
    CHECK(ch.comments[1].sentence == 0);
    CHECK(ch.comments[1].token_offset == 2);
    CHECK(ch.comments[2].sentence == 1);
    CHECK(ch.comments[2].token_offset == 0);
    CHECK(ch.comments[3].sentence == 2);  // trailing, after the last sentence
    CHECK(serialize_chapter(ch) == text);
}

TEST_CASE("token text is normalized to NFC") {
    // "Be" + combining acute over the e
    Corpus c = corpus_of("Be\xCC\x81izet B-CHR\n");
    CHECK(c.mentions[0].surface == "Béizet");
}

TEST_CASE("round trip: serialize(parse(f)) == f for generated well-formed files") {
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto gen = testutil::generate_chapter(rng);
        Chapter ch = parse_chapter_text(gen.text, 1, "gen");
        CHECK(serialize_chapter(ch) == gen.text);
        // mention count equals the number of B- tags
        Corpus c = parse_corpus_texts({gen.text});
        CHECK(c.mentions.size() == static_cast<std::size_t>(gen.b_tags) + c.findings.size());
        CHECK(c.findings.empty());  // generator emits valid IOB2
    }
}

TEST_CASE("every mention's token span re-yields its surface") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto gen = testutil::generate_chapter(rng);
        Corpus c = parse_corpus_texts({gen.text});
        for (const Mention& m : c.mentions) {
            const Sentence& sent =
                c.chapters[static_cast<std::size_t>(m.chapter - 1)]
                    .sentences[static_cast<std::size_t>(m.line - 1)];
            std::string joined;
            for (int t = m.token_start; t <= m.token_end; ++t) {
                if (t > m.token_start) joined += ' ';
                joined += sent[static_cast<std::size_t>(t)].text;
            }
            CHECK(joined == m.surface);
        }
    }
}

TEST_CASE("parse_corpus orders chapters by filename and is deterministic") {
    testutil::TempDir dir;
    dir.write("corpus/chapter_02.conll", "b O\n");
    dir.write("corpus/chapter_01.conll", "a O\n");
    dir.write("corpus/chapter_10.conll", "c O\n");
    dir.write("corpus/notes.txt", "ignored");
    Corpus c1 = parse_corpus(dir.file("corpus"));
    REQUIRE(c1.chapters.size() == 3);
    CHECK(c1.chapters[0].sentences[0][0].text == "a");
    CHECK(c1.chapters[1].sentences[0][0].text == "b");
    CHECK(c1.chapters[2].sentences[0][0].text == "c");
    CHECK(c1.chapters[2].index == 3);
    Corpus c2 = parse_corpus(dir.file("corpus"));
    CHECK(c1.chapters == c2.chapters);
}

TEST_CASE("parse_corpus wants at least one chapter file") {
    testutil::TempDir dir;
    dir.write("corpus/readme.md", "x");
    CHECK_THROWS_AS(parse_corpus(dir.file("corpus")), parse_error);
}

TEST_CASE("locate_mention finds surfaces with context") {
    std::string ch1 =
        "Athos B-CHR\nspoke O\n\nPotte B-CHR\nran O\nfast O\n\nlater O\n";
    Corpus c = parse_corpus_texts({ch1});
    auto hits = locate_mention(c, 1, 2, "Potte");
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].mention.surface == "Potte");
    CHECK(hits[0].context ==
          "  Athos spoke\n> Potte ran fast\n  later\n");

    CHECK(locate_mention(c, 1, 2, "Potter").empty());
    CHECK(locate_mention(c, 1, 1, "Potte").empty());  // wrong line
    CHECK_THROWS_WITH_AS(locate_mention(c, 9, 1, "x"), doctest::Contains("1..1"), bounds_error);
    CHECK_THROWS_WITH_AS(locate_mention(c, 1, 99, "x"), doctest::Contains("1..3"), bounds_error);
}

TEST_CASE("two mentions of the same surface on one line are distinguished by offsets") {
    Corpus c = corpus_of("Harry B-CHR\nmet O\nHarry B-CHR\n");
    auto hits = locate_mention(c, 1, 1, "Harry");
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].mention.token_start == 0);
    CHECK(hits[1].mention.token_start == 2);
}
