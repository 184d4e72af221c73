// Bundled synthetic fixtures: a mini-novel corpus with golden files, so the
// test suites run without any external corpus.

#ifndef ALIASRES_FIXTURES_HPP
#define ALIASRES_FIXTURES_HPP

#include <filesystem>
#include <set>
#include <string>

#include "aliasres/alias_table.hpp"
#include "aliasres/conll.hpp"

namespace aliasres {

struct Fixture {
    std::string name;
    std::filesystem::path root;
    std::filesystem::path corpus_dir;
    std::filesystem::path alias_table_path;
    Corpus corpus;
    AliasTable table;

    std::filesystem::path golden(const std::string& filename) const {
        return root / "golden" / filename;
    }
    bool has_golden(const std::string& filename) const {
        return std::filesystem::exists(golden(filename));
    }
};

inline const std::set<std::string>& fixture_names() {
    static const std::set<std::string> names = {"clean", "case-variant", "defects",
                                                "musketeers-mini"};
    return names;
}

// Loads a bundled fixture by name from `fixtures_root` (the fixtures/ tree of
// the source checkout).
inline Fixture load_fixture(const std::string& name, const std::filesystem::path& fixtures_root) {
    if (!fixture_names().count(name)) {
        std::string known;
        for (const auto& n : fixture_names()) {
            if (!known.empty()) known += ", ";
            known += n;
        }
        throw std::invalid_argument("unknown fixture \"" + name + "\" (known: " + known + ")");
    }
    Fixture f;
    f.name = name;
    f.root = fixtures_root / name;
    f.corpus_dir = f.root / "corpus";
    f.alias_table_path = f.root / "alias_table.csv";
    f.corpus = parse_corpus(f.corpus_dir);
    f.table = load_alias_table(f.alias_table_path);
    return f;
}

}  // namespace aliasres

#endif
