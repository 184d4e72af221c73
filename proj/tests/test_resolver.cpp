#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "aliasres/resolver.hpp"

using namespace aliasres;

namespace {

const LintConfig& cfg() {
    static LintConfig c = default_lint_config();
    return c;
}

std::vector<EntityRecord> records_of(std::vector<std::string> surfaces,
                                     EntityType t = EntityType::CHR) {
    std::vector<EntityRecord> out;
    for (auto& s : surfaces) out.push_back(EntityRecord{{s, t}, 1, std::nullopt});
    return out;
}

// Oracle: brute-force transitive closure of the pairwise link predicate.
std::set<std::set<std::string>> closure_clusters(const std::vector<EntityRecord>& records) {
    const std::size_t n = records.size();
    std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            linked[i][j] = i == j || keys_linked(records[i].key.surface, records[j].key.surface, cfg());
    // Warshall closure
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (linked[i][k] && linked[k][j]) linked[i][j] = true;
    std::set<std::set<std::string>> clusters;
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::string> c;
        for (std::size_t j = 0; j < n; ++j)
            if (linked[i][j]) c.insert(records[j].key.surface);
        clusters.insert(std::move(c));
    }
    return clusters;
}

std::set<std::set<std::string>> as_sets(const ClusterSet& cs) {
    std::set<std::set<std::string>> out;
    for (const auto& cluster : cs.clusters) {
        std::set<std::string> c;
        for (const auto& k : cluster) c.insert(k.surface);
        out.insert(std::move(c));
    }
    return out;
}

std::vector<EntityRecord> random_records(std::mt19937& rng, std::size_t max_names) {
    static const char* firsts[] = {"Harry", "Anne", "Charles", "Olivier", "Constance",
                                   "Yakov", "Louis", "Henri", "Marie", "Jean"};
    static const char* lasts[] = {"Potter", "Breuil", "Wardes", "Winter", "Bonacieux",
                                  "Golyadkin", "Clarik", "Richelieu", "Backson", "Condé"};
    static const char* honorifics[] = {"", "M.", "Madame", "Monsieur", "Lord", "Lady", "Comte"};
    std::set<std::string> seen;
    std::vector<EntityRecord> out;
    std::size_t n = 1 + rng() % max_names;
    while (out.size() < n) {
        std::string s(honorifics[rng() % 7]);
        if (!s.empty()) s += ' ';
        unsigned shape = rng() % 4;
        if (shape == 0) s += firsts[rng() % 10];
        else if (shape == 1) s += lasts[rng() % 10];
        else if (shape == 2) s += std::string(firsts[rng() % 10]) + " " + lasts[rng() % 10];
        else s += std::string("de ") + lasts[rng() % 10];
        if (s.empty() || !seen.insert(s).second) {
            if (seen.size() > 200) break;
            continue;
        }
        out.push_back(EntityRecord{{s, EntityType::CHR}, 1 + rng() % 9, std::nullopt});
    }
    return out;
}

}  // namespace

TEST_CASE("first/last name split links the pieces") {
    auto cs = suggest_clusters(records_of({"Harry Potter", "Harry", "Potter", "Hermione"}), cfg());
    auto got = as_sets(cs);
    std::set<std::set<std::string>> want = {{"Harry Potter", "Harry", "Potter"}, {"Hermione"}};
    CHECK(got == want);
}

TEST_CASE("honorific-aware linking groups the Constance forms") {
    auto cs = suggest_clusters(
        records_of({"Constance", "Constance Bonacieux", "Madame Bonacieux", "Mme. Bonacieux"}),
        cfg());
    REQUIRE(cs.clusters.size() == 1);
    CHECK(cs.candidates[0] == "Constance Bonacieux");
}

TEST_CASE("completely different aliases stay apart") {
    auto cs = suggest_clusters(records_of({"Milady", "Anne de Breuil"}), cfg());
    CHECK(cs.clusters.size() == 2);
}

TEST_CASE("particles never link") {
    auto cs = suggest_clusters(records_of({"Comte de Wardes", "Milady de Winter"}), cfg());
    CHECK(cs.clusters.size() == 2);
}

TEST_CASE("short parts never link") {
    auto cs = suggest_clusters(records_of({"Francis I", "Henry I"}), cfg());
    CHECK(cs.clusters.size() == 2);
}

TEST_CASE("mixed types are rejected") {
    std::vector<EntityRecord> recs = records_of({"Paris"}, EntityType::LOC);
    recs.push_back(EntityRecord{{"Paris", EntityType::ORG}, 1, std::nullopt});
    CHECK_THROWS_AS(suggest_clusters(recs, cfg()), std::invalid_argument);
}

TEST_CASE("link predicate is symmetric") {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto recs = random_records(rng, 12);
        if (recs.size() < 2) continue;
        const auto& a = recs[rng() % recs.size()].key.surface;
        const auto& b = recs[rng() % recs.size()].key.surface;
        CHECK(keys_linked(a, b, cfg()) == keys_linked(b, a, cfg()));
    }
}

TEST_CASE("suggest_clusters equals the brute-force closure of the link predicate") {
    std::mt19937 rng(1234);
    for (int iter = 0; iter < 60; ++iter) {
        auto recs = random_records(rng, 50);
        auto cs = suggest_clusters(recs, cfg());
        CHECK(as_sets(cs) == closure_clusters(recs));

        // clusters partition the key set
        std::set<std::string> all;
        std::size_t total = 0;
        for (const auto& c : cs.clusters) {
            total += c.size();
            for (const auto& k : c) all.insert(k.surface);
        }
        CHECK(total == recs.size());
        CHECK(all.size() == recs.size());

        // candidate belongs to its cluster
        for (std::size_t c = 0; c < cs.clusters.size(); ++c) {
            bool member = false;
            for (const auto& k : cs.clusters[c]) member = member || k.surface == cs.candidates[c];
            CHECK(member);
        }
    }
}

TEST_CASE("clustering is order-independent") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 30; ++iter) {
        auto recs = random_records(rng, 20);
        auto shuffled = recs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(as_sets(suggest_clusters(recs, cfg())) == as_sets(suggest_clusters(shuffled, cfg())));
    }
}

TEST_CASE("evaluate: perfect prediction scores all ones") {
    auto recs = records_of({"Harry Potter", "Harry", "Potter", "Hermione"});
    auto cs = suggest_clusters(recs, cfg());
    AliasTable gold;
    for (auto& r : recs) {
        EntityRecord g = r;
        g.canonical = (r.key.surface == "Hermione") ? "Hermione" : "Harry Potter";
        gold.records.push_back(g);
    }
    auto m = evaluate_clusters(cs, gold);
    CHECK(m.pairwise_precision == doctest::Approx(1.0));
    CHECK(m.pairwise_recall == doctest::Approx(1.0));
    CHECK(m.pairwise_f1 == doctest::Approx(1.0));
    CHECK(m.b3_precision == doctest::Approx(1.0));
    CHECK(m.b3_recall == doctest::Approx(1.0));
    CHECK(m.b3_f1 == doctest::Approx(1.0));
}

TEST_CASE("evaluate: all singletons against one gold pair") {
    ClusterSet cs;
    cs.etype = EntityType::CHR;
    for (const char* n : {"a", "b", "c", "d"})
        cs.clusters.push_back({EntityKey{n, EntityType::CHR}});
    cs.candidates = {"a", "b", "c", "d"};
    AliasTable gold;
    for (const char* n : {"a", "b", "c", "d"}) {
        EntityRecord r{{n, EntityType::CHR}, 1, std::string(n)};
        gold.records.push_back(r);
    }
    gold.records[1].canonical = "a";  // gold clusters {a,b}, {c}, {d}
    auto m = evaluate_clusters(cs, gold);
    CHECK(m.pairwise_precision == doctest::Approx(1.0));  // stated degenerate convention
    CHECK(m.pairwise_recall == doctest::Approx(0.0));
    CHECK(m.pairwise_f1 == doctest::Approx(0.0));
}

TEST_CASE("evaluate: hand-computed pairwise and B3 example") {
    // gold {{a,b},{c,d}}, predicted {{a,b,c},{d}}
    ClusterSet cs;
    cs.etype = EntityType::CHR;
    cs.clusters = {{EntityKey{"a", EntityType::CHR}, EntityKey{"b", EntityType::CHR},
                    EntityKey{"c", EntityType::CHR}},
                   {EntityKey{"d", EntityType::CHR}}};
    cs.candidates = {"a", "d"};
    AliasTable gold;
    for (const char* n : {"a", "b", "c", "d"})
        gold.records.push_back(EntityRecord{{n, EntityType::CHR}, 1, std::string(n)});
    gold.records[1].canonical = "a";  // {a,b}
    gold.records[3].canonical = "c";  // {c,d}
    auto m = evaluate_clusters(cs, gold);
    CHECK(m.pairwise_precision == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(m.pairwise_recall == doctest::Approx(0.5).epsilon(1e-12));
    // per-item B3: p = (2/3+2/3+1/3+1)/4 = 2/3, r = (1+1+1/2+1/2)/4 = 3/4
    CHECK(m.b3_precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.b3_recall == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.b3_f1 == doctest::Approx(12.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("evaluate rejects keys missing from gold") {
    ClusterSet cs;
    cs.etype = EntityType::CHR;
    cs.clusters = {{EntityKey{"ghost", EntityType::CHR}}};
    cs.candidates = {"ghost"};
    AliasTable gold;
    CHECK_THROWS_AS(evaluate_clusters(cs, gold), std::invalid_argument);
}

TEST_CASE("evaluate(x, x-as-gold) is all ones (property)") {
    std::mt19937 rng(321);
    for (int iter = 0; iter < 25; ++iter) {
        auto recs = random_records(rng, 25);
        auto cs = suggest_clusters(recs, cfg());
        AliasTable gold;
        for (std::size_t c = 0; c < cs.clusters.size(); ++c) {
            for (const auto& k : cs.clusters[c]) {
                gold.records.push_back(
                    EntityRecord{k, 1, std::optional<std::string>(cs.candidates[c])});
            }
        }
        auto m = evaluate_clusters(cs, gold);
        CHECK(m.pairwise_f1 == doctest::Approx(1.0));
        CHECK(m.b3_f1 == doctest::Approx(1.0));
    }
}

TEST_CASE("suggestion csv and metrics formats") {
    auto cs = suggest_clusters(records_of({"Harry Potter", "Harry"}), cfg());
    std::string csv_text = write_suggestions_csv({cs});
    CHECK(csv_text ==
          "cluster_id,name,type,candidate_canonical\n"
          "1,Harry,CHR,Harry Potter\n"
          "1,Harry Potter,CHR,Harry Potter\n");
    ClusterMetrics m;
    m.pairwise_precision = 1.0;
    m.b3_f1 = 12.0 / 17.0;
    std::string text = format_metrics(m);
    CHECK(text.find("pairwise_precision 1.000000000\n") != std::string::npos);
    CHECK(text.find("b3_f1 0.705882353\n") != std::string::npos);
}
