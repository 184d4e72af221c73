#include <doctest.h>

#include <random>

#include "aliasres/graph.hpp"
#include "aliasres/listing.hpp"
#include "test_util.hpp"

using namespace aliasres;

namespace {

AliasTable identity_table(const Corpus& c) {
    AliasTable t;
    for (auto& r : build_entity_list(c)) {
        EntityRecord rec = r;
        rec.canonical = rec.key.surface;
        t.records.push_back(std::move(rec));
    }
    return t;
}

// Oracle: re-scan every window position from scratch, quadratically.
CharacterGraph brute_force(const Corpus& corpus, const AliasTable& t, std::size_t window) {
    CharacterGraph g;
    for (const Chapter& ch : corpus.chapters) {
        std::size_t S = ch.sentences.size();
        std::size_t positions = S > window ? S - window + 1 : 1;
        for (std::size_t p = 0; p < positions; ++p) {
            std::set<std::string> present;
            for (const Mention& m : corpus.mentions) {
                if (m.chapter != ch.index || m.etype != EntityType::CHR) continue;
                std::size_t line0 = static_cast<std::size_t>(m.line - 1);
                if (line0 >= p && line0 < p + window) {
                    present.insert(*t.find(EntityKey{m.surface, m.etype})->canonical);
                }
            }
            for (auto a = present.begin(); a != present.end(); ++a) {
                auto b = a;
                for (++b; b != present.end(); ++b) ++g.edges[edge_key(*a, *b)];
            }
        }
        for (const Mention& m : corpus.mentions)
            if (m.chapter == ch.index && m.etype == EntityType::CHR)
                g.vertices.insert(*t.find(EntityKey{m.surface, m.etype})->canonical);
    }
    return g;
}

}  // namespace

TEST_CASE("same canonical never produces an edge") {
    Corpus c = parse_corpus_texts({"Constance B-CHR\nmet O\nMme. B-CHR\nBonacieux I-CHR\n"});
    AliasTable t;
    t.records.push_back(EntityRecord{{"Constance", EntityType::CHR}, 1,
                                     std::optional<std::string>("Constance Bonacieux")});
    t.records.push_back(EntityRecord{{"Mme. Bonacieux", EntityType::CHR}, 1,
                                     std::optional<std::string>("Constance Bonacieux")});
    CharacterGraph g = build_cooccurrence(c, t, 1);
    CHECK(g.edges.empty());
    CHECK(g.vertices == std::set<std::string>{"Constance Bonacieux"});
}

TEST_CASE("minimal co-occurrence: two names, one sentence, window 1") {
    Corpus c = parse_corpus_texts({"D'Artagnan B-CHR\nmet O\nAthos B-CHR\n"});
    CharacterGraph g = build_cooccurrence(c, identity_table(c), 1);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges.at(edge_key("Athos", "D'Artagnan")) == 1);
}

TEST_CASE("windows never cross chapter boundaries") {
    Corpus c = parse_corpus_texts({"Athos B-CHR\n", "Porthos B-CHR\n"});
    CharacterGraph g = build_cooccurrence(c, identity_table(c), 10);
    CHECK(g.edges.empty());
    CHECK(g.vertices.size() == 2);
}

TEST_CASE("only CHR entities enter the graph") {
    Corpus c = parse_corpus_texts({"Athos B-CHR\nParis B-LOC\nPost B-ORG\n"});
    AliasTable t = identity_table(c);
    CharacterGraph g = build_cooccurrence(c, t, 3);
    CHECK(g.vertices == std::set<std::string>{"Athos"});
    CHECK(g.edges.empty());
}

TEST_CASE("uncovered CHR keys are an error listing the missing surfaces") {
    Corpus c = parse_corpus_texts({"Athos B-CHR\nAramis B-CHR\n"});
    AliasTable t;
    t.records.push_back(
        EntityRecord{{"Athos", EntityType::CHR}, 1, std::optional<std::string>("Athos")});
    CHECK_THROWS_WITH_AS(build_cooccurrence(c, t, 1), doctest::Contains("Aramis"), graph_error);
    CHECK_THROWS_AS(build_cooccurrence(c, identity_table(c), 0), graph_error);
}

TEST_CASE("sliding window equals quadratic rescan (property)") {
    std::mt19937 rng(55);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<std::string> chapters;
        int nch = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < nch; ++i) chapters.push_back(testutil::generate_chapter(rng).text);
        Corpus c = parse_corpus_texts(chapters);
        AliasTable t = identity_table(c);
        for (std::size_t window : {1u, 2u, 5u, 50u}) {
            CharacterGraph fast = build_cooccurrence(c, t, window);
            CharacterGraph slow = brute_force(c, t, window);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("alias merging only removes internal pairs") {
    // Constance and Mme. Bonacieux co-occur with Athos; merging them into one
    // canonical keeps their edges to Athos and drops only the internal pair.
    Corpus c = parse_corpus_texts(
        {"Constance B-CHR\nsaw O\nAthos B-CHR\n\nMme. B-CHR\nBonacieux I-CHR\nmet O\nAthos B-CHR\n"});
    AliasTable split = identity_table(c);
    CharacterGraph g1 = build_cooccurrence(c, split, 2);

    AliasTable merged;
    for (auto r : split.records) {
        if (r.key.etype == EntityType::CHR && r.key.surface != "Athos")
            r.canonical = "Constance Bonacieux";
        merged.records.push_back(r);
    }
    CharacterGraph g2 = build_cooccurrence(c, merged, 2);
    // Athos keeps a connection to the merged vertex; weight is the union of
    // window positions, here identical per window because both aliases hit
    std::int64_t before = 0;
    for (const auto& [e, w] : g1.edges)
        if (e.first == "Athos" || e.second == "Athos") before += w;
    std::int64_t after = 0;
    for (const auto& [e, w] : g2.edges)
        if (e.first == "Athos" || e.second == "Athos") after += w;
    CHECK(after <= before);
    CHECK(g2.edges.count(edge_key("Athos", "Constance Bonacieux")) == 1);
    CHECK(g2.vertices.size() == 2);
}

TEST_CASE("graphml output round trips and is byte deterministic") {
    Corpus c = parse_corpus_texts(
        {"Athos B-CHR\nmet O\nAnne B-CHR\nde I-CHR\nBreuil I-CHR\n\nAthos B-CHR\n"});
    AliasTable t = identity_table(c);
    CharacterGraph g = build_cooccurrence(c, t, 2);
    std::string xml1 = write_graphml(g);
    std::string xml2 = write_graphml(build_cooccurrence(c, t, 2));
    CHECK(xml1 == xml2);
    CharacterGraph back = read_graphml(xml1);
    CHECK(back == g);
    CHECK(write_graphml(back) == xml1);
}

TEST_CASE("graphml escapes metacharacters in names") {
    CharacterGraph g;
    g.vertices = {"A & B", "\"Q\" <tag>"};
    g.edges[edge_key("A & B", "\"Q\" <tag>")] = 2;
    std::string xml = write_graphml(g);
    CharacterGraph back = read_graphml(xml);
    CHECK(back == g);
    CHECK(write_graphml(back) == xml);
}

TEST_CASE("empty graph is a valid file with zero vertices") {
    CharacterGraph g;
    std::string xml = write_graphml(g);
    CHECK(read_graphml(xml).vertices.empty());
    CHECK(write_edgelist(g).empty());
}

TEST_CASE("edge list format") {
    CharacterGraph g;
    g.vertices = {"A", "B"};
    g.edges[edge_key("B", "A")] = 1;
    CHECK(write_edgelist(g) == "A\tB\t1\n");
}

TEST_CASE("write_graph writes atomically to a path") {
    testutil::TempDir dir;
    CharacterGraph g;
    g.vertices = {"A"};
    write_graph(g, GraphFormat::GraphML, dir.file("g.graphml"));
    CHECK(testutil::slurp(dir.file("g.graphml")) == write_graphml(g));
}
