#include <doctest.h>

#include <set>

#include "aliasres/canon_rules.hpp"
#include "aliasres/fixtures.hpp"
#include "aliasres/graph.hpp"
#include "aliasres/resolver.hpp"
#include "aliasres/validation.hpp"
#include "test_util.hpp"

using namespace aliasres;

namespace {

Fixture load(const std::string& name) { return load_fixture(name, testutil::fixtures_dir()); }

std::vector<Finding> validate_all(const Fixture& f) {
    std::vector<Finding> findings = f.corpus.findings;
    for (auto& x : check_coverage(f.table)) findings.push_back(x);
    for (auto& x : check_unicity(f.table)) findings.push_back(x);
    for (auto& x : check_suspect_names(f.table.records)) findings.push_back(x);
    for (auto& x : check_consistency(f.corpus, f.table)) findings.push_back(x);
    sort_findings(findings);
    return findings;
}

}  // namespace

TEST_CASE("unknown fixture names are rejected") {
    CHECK_THROWS_WITH_AS(load("nope"), doctest::Contains("unknown fixture"), std::invalid_argument);
}

TEST_CASE("clean fixture validates to nothing") {
    Fixture f = load("clean");
    CHECK(validate_all(f).empty());
    CHECK(diff_tables(f.table, regenerate_table(f.corpus, f.table)).empty());
}

TEST_CASE("case-variant fixture yields exactly one unicity finding") {
    Fixture f = load("case-variant");
    auto findings = validate_all(f);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].code == "UNICITY");
    CHECK(findings[0].message.find("\"God\"") != std::string::npos);
    CHECK(findings[0].message.find("\"god\"") != std::string::npos);
}

TEST_CASE("musketeers-mini: extraction matches the golden CSVs byte for byte") {
    Fixture f = load("musketeers-mini");
    auto records = build_entity_list(f.corpus);
    CHECK(write_entity_csv(records) == testutil::slurp(f.golden("entity_list.csv")));
    CHECK(write_mention_csv(build_mention_list(f.corpus)) ==
          testutil::slurp(f.golden("mention_list.csv")));

    std::int64_t total = 0;
    for (const auto& r : records) total += r.frequency;
    CHECK(total == static_cast<std::int64_t>(f.corpus.mentions.size()));
}

TEST_CASE("musketeers-mini: the golden table is clean under validate and lint") {
    Fixture f = load("musketeers-mini");
    CHECK(validate_all(f).empty());
    CHECK(lint_table(f.table).empty());
}

TEST_CASE("musketeers-mini: suggested clusters reproduce the paper groupings") {
    Fixture f = load("musketeers-mini");
    std::vector<EntityRecord> chr;
    for (const auto& r : f.table.records)
        if (r.key.etype == EntityType::CHR) chr.push_back(r);
    ClusterSet cs = suggest_clusters(chr);

    auto cluster_of = [&](const std::string& surface) -> std::set<std::string> {
        for (const auto& c : cs.clusters)
            for (const auto& k : c)
                if (k.surface == surface) {
                    std::set<std::string> out;
                    for (const auto& kk : c) out.insert(kk.surface);
                    return out;
                }
        return {};
    };

    CHECK(cluster_of("Constance") ==
          std::set<std::string>{"Constance", "Constance Bonacieux", "Madame Bonacieux",
                                "Mme. Bonacieux"});
    CHECK(cluster_of("De Wardes") ==
          std::set<std::string>{"Comte de Wardes", "De Wardes", "M. de Wardes",
                                "Monsieur de Wardes", "Monsieur le Comte de Wardes"});
    // the Milady aliases stay apart: no shared name part carries them
    CHECK(cluster_of("Milady") == std::set<std::string>{"Milady"});
    CHECK(cluster_of("Anne de Breuil") == std::set<std::string>{"Anne de Breuil"});
    CHECK(cluster_of("Charlotte Backson") == std::set<std::string>{"Charlotte Backson"});
}

TEST_CASE("defects fixture: findings match the golden files") {
    Fixture f = load("defects");
    std::string validate_text;
    for (const auto& x : validate_all(f)) validate_text += format_finding(x) + "\n";
    CHECK(validate_text == testutil::slurp(f.golden("validate_findings.txt")));

    std::string lint_text;
    for (const auto& x : lint_table(f.table)) lint_text += format_finding(x) + "\n";
    CHECK(lint_text == testutil::slurp(f.golden("lint_findings.txt")));
}

TEST_CASE("defects fixture triggers every rule code in the catalogue") {
    Fixture f = load("defects");
    std::set<std::string> codes;
    for (const auto& x : validate_all(f)) codes.insert(x.code);
    for (const auto& x : lint_table(f.table)) codes.insert(x.code);

    std::set<std::string> want = {"ORPHAN-I",   "COVERAGE",     "UNICITY",       "SUSPECT",
                                  "MISSING-KEY", "STALE-KEY",    "FREQ-MISMATCH", "CHR-HONORIFIC",
                                  "CHR-MONARCH", "GRP-HOUSE",    "GRP-PLURAL",    "ORG-NATURE",
                                  "MSC-LANG",    "XTYPE-COLLIDE"};
    CHECK(codes == want);
}

TEST_CASE("every fixture is a valid input for every module") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        Fixture f = load(name);
        CHECK(!f.corpus.chapters.empty());
        CHECK(!f.table.records.empty());
        auto records = build_entity_list(f.corpus);
        CHECK(!records.empty());
        (void)validate_all(f);
        (void)lint_table(f.table);
        (void)suggest_clusters_by_type(f.table.records);
        if (name != "defects") {
            // defects deliberately leaves one CHR canonical blank
            (void)build_cooccurrence(f.corpus, f.table, 5);
        }
        // chapters serialize back to the exact bytes on disk
        for (const auto& ch : f.corpus.chapters)
            CHECK(serialize_chapter(ch) == testutil::slurp(ch.source_path));
    }
}
