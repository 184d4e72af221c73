// The verification suite: coverage, canonical-form unicity, suspect-name
// detection, corpus/table consistency and the v1/v2 table diff that drives
// the fixpoint loop.

#ifndef ALIASRES_VALIDATION_HPP
#define ALIASRES_VALIDATION_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "aliasres/alias_table.hpp"
#include "aliasres/conll.hpp"
#include "aliasres/detail/strings.hpp"
#include "aliasres/detail/unicode.hpp"
#include "aliasres/listing.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

// ---------------------------------------------------------------------------
// Coverage
// ---------------------------------------------------------------------------

// One ERROR per record whose canonical is missing or blank.
inline std::vector<Finding> check_coverage(const AliasTable& t) {
    std::vector<Finding> out;
    for (const EntityRecord& r : t.records) {
        if (!r.has_canonical())
            out.push_back(Finding{Severity::Error, "COVERAGE", r.key,
                                  "no canonical form assigned", std::nullopt});
    }
    sort_findings(out);
    return out;
}

// ---------------------------------------------------------------------------
// Unicity
// ---------------------------------------------------------------------------

// Normal form under which two canonicals count as "the same name written two
// ways": NFC, case fold, trim, collapse internal whitespace. Diacritics are
// not folded; "Béarnais" and "Bearnais" stay distinct.
inline std::string unicity_normal_form(std::string_view canonical) {
    return uni::casefold(uni::nfc(str::collapse_ws(canonical)));
}

// One WARN per normal-form group written as >= 2 distinct raw strings.
inline std::vector<Finding> check_unicity(const AliasTable& t) {
    std::map<std::string, std::set<std::string>> groups;  // normal form -> raw variants
    for (const EntityRecord& r : t.records)
        if (r.has_canonical()) groups[unicity_normal_form(*r.canonical)].insert(*r.canonical);

    std::vector<Finding> out;
    for (const auto& [norm, variants] : groups) {
        if (variants.size() < 2) continue;
        std::string list;
        for (const auto& v : variants) {
            if (!list.empty()) list += ", ";
            list += '"' + v + '"';
        }
        out.push_back(Finding{Severity::Warn, "UNICITY", std::nullopt,
                              "canonical written " + std::to_string(variants.size()) +
                                  " different ways: " + list,
                              std::nullopt});
    }
    sort_findings(out);
    return out;
}

// ---------------------------------------------------------------------------
// Suspect names
// ---------------------------------------------------------------------------

namespace validation_detail {

inline bool allowed_name_char(char32_t cp) {
    return uni::is_letter(cp) || cp == ' ' || cp == '\'' || cp == 0x2019 /* ' */ || cp == '-' ||
           cp == '.';
}

// Trailing '.' is fine on abbreviations ("Mme.", "St."); longer final tokens
// ending in punctuation look like a span that swallowed sentence punctuation.
inline bool suspicious_trailing_punct(const std::u32string& cps) {
    if (cps.empty()) return false;
    char32_t last = cps.back();
    if (last == '-' || last == '\'' || last == 0x2019) return true;
    if (last != '.') return false;
    std::size_t letters = 0;
    for (std::size_t i = cps.size() - 1; i-- > 0;) {
        if (cps[i] == ' ') break;
        if (uni::is_letter(cps[i])) ++letters;
    }
    return letters > 3;
}

}  // namespace validation_detail

// WARN per record whose surface looks like an annotation error: characters a
// name should not contain, swallowed trailing punctuation, an all-lowercase
// character name, or a one-letter truncation of another same-type surface.
inline std::vector<Finding> check_suspect_names(const std::vector<EntityRecord>& records) {
    // decoded surfaces per type, for the truncation scan
    std::map<EntityType, std::vector<std::u32string>> by_type;
    for (const EntityRecord& r : records)
        by_type[r.key.etype].push_back(uni::decode_utf8(r.key.surface));

    std::vector<Finding> out;
    for (const EntityRecord& r : records) {
        std::u32string cps = uni::decode_utf8(r.key.surface);
        std::vector<std::string> reasons;

        bool bad_char = false;
        for (char32_t cp : cps)
            if (!validation_detail::allowed_name_char(cp)) bad_char = true;
        if (bad_char) reasons.push_back("contains non-name characters");

        if (validation_detail::suspicious_trailing_punct(cps))
            reasons.push_back("ends with punctuation");

        if (r.key.etype == EntityType::CHR) {
            bool has_upper = false;
            for (char32_t cp : cps)
                if (uni::is_upper(cp)) has_upper = true;
            if (!has_upper) reasons.push_back("character name is entirely lowercase");
        }

        for (const std::u32string& other : by_type[r.key.etype]) {
            if (other.size() == cps.size() + 1 && other.compare(0, cps.size(), cps) == 0 &&
                uni::is_letter(other.back())) {
                reasons.push_back("looks truncated: \"" + uni::encode_utf8(other) +
                                  "\" also exists");
                break;
            }
        }

        if (!reasons.empty()) {
            std::string msg = reasons[0];
            for (std::size_t i = 1; i < reasons.size(); ++i) msg += "; " + reasons[i];
            out.push_back(Finding{Severity::Warn, "SUSPECT", r.key, msg, std::nullopt});
        }
    }
    sort_findings(out);
    return out;
}

// ---------------------------------------------------------------------------
// Corpus/table consistency
// ---------------------------------------------------------------------------

// ERROR for keys on one side only and for frequency drift; the table must be
// a proper inventory of the corpus.
inline std::vector<Finding> check_consistency(const Corpus& corpus, const AliasTable& t) {
    std::map<EntityKey, std::int64_t> counts;
    for (const Mention& m : corpus.mentions) ++counts[EntityKey{m.surface, m.etype}];

    std::vector<Finding> out;
    std::set<EntityKey> in_table;
    for (const EntityRecord& r : t.records) {
        in_table.insert(r.key);
        auto it = counts.find(r.key);
        if (it == counts.end()) {
            out.push_back(Finding{Severity::Error, "STALE-KEY", r.key,
                                  "listed in the table but no longer found in the corpus",
                                  std::nullopt});
        } else if (it->second != r.frequency) {
            out.push_back(Finding{Severity::Error, "FREQ-MISMATCH", r.key,
                                  "table says " + std::to_string(r.frequency) + ", corpus has " +
                                      std::to_string(it->second),
                                  std::nullopt});
        }
    }
    for (const auto& [key, n] : counts) {
        if (!in_table.count(key))
            out.push_back(Finding{Severity::Error, "MISSING-KEY", key,
                                  "found in the corpus (" + std::to_string(n) +
                                      " mentions) but missing from the table",
                                  std::nullopt});
    }
    sort_findings(out);
    return out;
}

// ---------------------------------------------------------------------------
// v1/v2 diff
// ---------------------------------------------------------------------------

struct CanonicalMismatch {
    EntityKey key;
    std::string canonical_v1;
    std::string canonical_v2;

    bool operator==(const CanonicalMismatch&) const = default;
};

// Row-level comparison of two alias tables, aligned by EntityKey. A missing
// canonical compares as the empty string, so an empty report means the tables
// agree on both keys and canonicals.
struct DiffReport {
    std::vector<CanonicalMismatch> mismatches;
    std::vector<EntityKey> only_in_v1;
    std::vector<EntityKey> only_in_v2;

    bool empty() const { return mismatches.empty() && only_in_v1.empty() && only_in_v2.empty(); }
};

inline DiffReport diff_tables(const AliasTable& v1, const AliasTable& v2) {
    std::map<EntityKey, const EntityRecord*> m1, m2;
    for (const auto& r : v1.records) m1.emplace(r.key, &r);
    for (const auto& r : v2.records) m2.emplace(r.key, &r);

    DiffReport report;
    for (const auto& [key, r1] : m1) {
        auto it = m2.find(key);
        if (it == m2.end()) {
            report.only_in_v1.push_back(key);
            continue;
        }
        const std::string c1 = r1->canonical.value_or("");
        const std::string c2 = it->second->canonical.value_or("");
        if (c1 != c2) report.mismatches.push_back(CanonicalMismatch{key, c1, c2});
    }
    for (const auto& [key, r2] : m2)
        if (!m1.count(key)) report.only_in_v2.push_back(key);
    return report;  // std::map iteration keeps every list key-sorted
}

// Regenerates the entity list from the corpus and carries over the canonical
// forms of `v1` by key: one iteration of the fixpoint loop.
inline AliasTable regenerate_table(const Corpus& corpus, const AliasTable& v1) {
    AliasTable v2;
    v2.records = build_entity_list(corpus);
    v2.metadata = v1.metadata;
    std::map<EntityKey, const EntityRecord*> old_records;
    for (const auto& r : v1.records) old_records.emplace(r.key, &r);
    for (auto& r : v2.records) {
        auto it = old_records.find(r.key);
        if (it != old_records.end()) r.canonical = it->second->canonical;
    }
    return v2;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string format_finding(const Finding& f) {
    std::string out(to_string(f.severity));
    out += ' ';
    out += f.code;
    if (f.key) {
        out += " (" + f.key->surface + ", " + std::string(to_string(f.key->etype)) + ")";
    }
    if (f.location) {
        out += " at ch " + std::to_string(f.location->chapter) + " line " +
               std::to_string(f.location->line);
    }
    out += " — " + f.message;
    return out;
}

inline nlohmann::json finding_to_json(const Finding& f) {
    nlohmann::json j;
    j["severity"] = std::string(to_string(f.severity));
    j["code"] = f.code;
    if (f.key) {
        j["name"] = f.key->surface;
        j["type"] = std::string(to_string(f.key->etype));
    }
    j["message"] = f.message;
    if (f.location) {
        j["chapter"] = f.location->chapter;
        j["line"] = f.location->line;
    }
    return j;
}

// Machine-readable report: one JSON record per line.
inline std::string findings_report(const std::vector<Finding>& findings) {
    std::string out;
    for (const Finding& f : findings) {
        out += finding_to_json(f).dump();
        out += '\n';
    }
    return out;
}

inline std::string diff_report_json(const DiffReport& r) {
    std::string out;
    for (const auto& m : r.mismatches) {
        nlohmann::json j{{"kind", "mismatch"},
                         {"name", m.key.surface},
                         {"type", std::string(to_string(m.key.etype))},
                         {"v1", m.canonical_v1},
                         {"v2", m.canonical_v2}};
        out += j.dump();
        out += '\n';
    }
    auto keys = [&out](const std::vector<EntityKey>& ks, const char* kind) {
        for (const auto& k : ks) {
            nlohmann::json j{{"kind", kind},
                             {"name", k.surface},
                             {"type", std::string(to_string(k.etype))}};
            out += j.dump();
            out += '\n';
        }
    };
    keys(r.only_in_v1, "only_in_v1");
    keys(r.only_in_v2, "only_in_v2");
    return out;
}

}  // namespace aliasres

#endif
