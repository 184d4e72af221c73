// Canonical-form conventions as per-type lint rules, honorific stripping and
// the demonym majority rule.
//
// All rules are advisory (WARN): picking the right canonical often needs
// knowledge of the story or of history, so the tool points and the annotator
// decides.

#ifndef ALIASRES_CANON_RULES_HPP
#define ALIASRES_CANON_RULES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aliasres/alias_table.hpp"
#include "aliasres/detail/io.hpp"
#include "aliasres/detail/strings.hpp"
#include "aliasres/detail/unicode.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Lexicons and configuration
// ---------------------------------------------------------------------------

// Honorific titles, matched case-insensitively against whole leading tokens.
// Entries may span several tokens. Rank titles (Comte, Duc, ...) behave
// differently from courtesy titles: a rank followed by a particle is part of
// the name itself ("Comte de Wardes"), not a prefix to drop.
struct HonorificLexicon {
    std::set<std::string> entries;  // casefolded
    std::set<std::string> ranks;    // casefolded subset of entries

    bool contains(std::string_view token_seq) const {
        return entries.count(uni::casefold(token_seq)) > 0;
    }
    bool is_rank(std::string_view token_seq) const {
        return ranks.count(uni::casefold(token_seq)) > 0;
    }
    void add(std::string_view entry, bool rank = false) {
        std::string k = uni::casefold(str::collapse_ws(entry));
        entries.insert(k);
        if (rank) ranks.insert(k);
    }
    void remove(std::string_view entry) {
        std::string k = uni::casefold(str::collapse_ws(entry));
        entries.erase(k);
        ranks.erase(k);
    }
};

enum class Gender : std::uint8_t { Masculine, Feminine, Neutral };

struct GenderSuffix {
    std::string suffix;  // casefolded, matched longest-first
    Gender gender = Gender::Neutral;
    bool plural = false;
};

struct LintConfig {
    HonorificLexicon honorifics;
    std::string group_marker = "House";
    std::vector<GenderSuffix> gender_suffixes;
    std::set<std::string> enabled_rules;   // lint rule codes
    std::set<std::string> particles;       // casefolded; never a linking part
    std::set<std::string> articles;        // casefolded; dropped after a stripped title
    std::size_t min_part_length = 3;       // in code points
};

inline const std::set<std::string>& all_lint_rules() {
    static const std::set<std::string> rules = {"CHR-HONORIFIC", "CHR-MONARCH",  "GRP-HOUSE",
                                                "GRP-PLURAL",    "ORG-NATURE",   "MSC-LANG",
                                                "XTYPE-COLLIDE"};
    return rules;
}

inline LintConfig default_lint_config() {
    LintConfig cfg;
    for (const char* e :
         {"Mr.", "Mrs.", "Ms.", "M.", "Mme.", "Madame", "Mademoiselle", "Monsieur", "Monseigneur",
          "Lord", "Lady", "Sir", "Dame", "Dr.", "St.", "Saint", "Captain", "Milady"})
        cfg.honorifics.add(e);
    for (const char* e : {"Comte", "Comtesse", "Duc", "Duchesse", "Cardinal"})
        cfg.honorifics.add(e, /*rank=*/true);
    cfg.gender_suffixes = {{"women", Gender::Feminine, true},
                           {"woman", Gender::Feminine, false},
                           {"men", Gender::Masculine, true},
                           {"man", Gender::Masculine, false}};
    cfg.enabled_rules = all_lint_rules();
    cfg.particles = {"de", "du", "des", "la", "le", "les", "d'", "von", "van", "of", "the", "ter", "al"};
    cfg.articles = {"le", "la", "les", "the", "l'"};
    return cfg;
}

inline bool is_particle_token(const LintConfig& cfg, std::string_view token) {
    return cfg.particles.count(uni::casefold(token)) > 0;
}

// ---------------------------------------------------------------------------
// Honorific stripping
// ---------------------------------------------------------------------------

namespace canon_detail {

inline std::size_t count_non_particle(const LintConfig& cfg, const std::vector<std::string>& tokens,
                                      std::size_t from) {
    std::size_t n = 0;
    for (std::size_t i = from; i < tokens.size(); ++i)
        if (!is_particle_token(cfg, tokens[i])) ++n;
    return n;
}

// Longest lexicon entry starting at tokens[from]; returns its token count.
inline std::size_t match_honorific(const LintConfig& cfg, const std::vector<std::string>& tokens,
                                   std::size_t from, bool& rank) {
    std::size_t best = 0;
    for (std::size_t len = 1; from + len <= tokens.size() && len <= 3; ++len) {
        std::string seq = tokens[from];
        for (std::size_t k = 1; k < len; ++k) {
            seq += ' ';
            seq += tokens[from + k];
        }
        if (cfg.honorifics.contains(seq)) {
            best = len;
            rank = cfg.honorifics.is_rank(seq);
        }
    }
    return best;
}

}  // namespace canon_detail

// Removes the longest matching leading honorific sequence. The name is
// returned unchanged when stripping would leave nothing identifying: either
// the honorific is the whole name ("Milady") or a rank heads a
// particle-joined name ("Comte de Wardes").
inline std::string strip_honorifics(std::string_view name, const LintConfig& cfg) {
    auto tokens = str::split_ws(name);
    if (tokens.empty()) return std::string(name);

    std::size_t start = 0;
    while (start < tokens.size()) {
        bool rank = false;
        std::size_t len = canon_detail::match_honorific(cfg, tokens, start, rank);
        if (len == 0) break;
        std::size_t after = start + len;
        if (rank && after < tokens.size() && is_particle_token(cfg, tokens[after])) break;
        if (canon_detail::count_non_particle(cfg, tokens, after) == 0) break;
        start = after;
        // articles glue stacked titles together: Monsieur le Comte
        while (start < tokens.size() && cfg.articles.count(uni::casefold(tokens[start])) > 0 &&
               canon_detail::count_non_particle(cfg, tokens, start + 1) > 0)
            ++start;
    }
    if (start == 0) return std::string(name);
    return str::join(std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                                              tokens.end()),
                     " ");
}

inline std::string strip_honorifics(std::string_view name, const HonorificLexicon& lex) {
    LintConfig cfg = default_lint_config();
    cfg.honorifics = lex;
    return strip_honorifics(name, cfg);
}

// ---------------------------------------------------------------------------
// Demonym majority rule
// ---------------------------------------------------------------------------

struct DemonymVariant {
    std::string surface;
    std::int64_t frequency = 1;
};

struct NumberedGender {
    Gender gender = Gender::Neutral;
    bool plural = false;
};

// Suffix-map classification of a demonym surface. Unmatched surfaces are
// neutral; their number falls back to a trailing-s / trailing-"people" check.
inline NumberedGender classify_demonym(std::string_view surface, const LintConfig& cfg) {
    std::string folded = uni::casefold(str::collapse_ws(surface));
    const GenderSuffix* best = nullptr;
    for (const auto& gs : cfg.gender_suffixes) {
        if (str::ends_with(folded, gs.suffix) && (!best || gs.suffix.size() > best->suffix.size()))
            best = &gs;
    }
    if (best) return {best->gender, best->plural};
    if (str::ends_with(folded, " people") || str::ends_with(folded, "s")) return {Gender::Neutral, true};
    return {Gender::Neutral, false};
}

// Majority rule for demonym clusters: group variants by gender class, pick
// the class with the highest summed frequency, then the plural form of that
// class when one exists, else its most frequent variant. Ties: higher
// individual frequency, then lexicographic order.
inline std::string demonym_canonical(const std::vector<DemonymVariant>& variants,
                                     const LintConfig& cfg = default_lint_config()) {
    if (variants.empty()) throw std::invalid_argument("demonym_canonical: no variants");

    struct ClassInfo {
        std::int64_t total = 0;
        const DemonymVariant* best = nullptr;  // highest frequency, lexicographic tiebreak
    };
    std::map<int, ClassInfo> classes;
    auto better = [](const DemonymVariant* a, const DemonymVariant* b) {
        if (!b) return true;
        if (a->frequency != b->frequency) return a->frequency > b->frequency;
        return a->surface < b->surface;
    };
    std::vector<NumberedGender> klass(variants.size());
    for (std::size_t i = 0; i < variants.size(); ++i) {
        klass[i] = classify_demonym(variants[i].surface, cfg);
        ClassInfo& ci = classes[static_cast<int>(klass[i].gender)];
        ci.total += variants[i].frequency;
        if (better(&variants[i], ci.best)) ci.best = &variants[i];
    }

    int win = -1;
    for (const auto& [g, ci] : classes) {
        if (win < 0) {
            win = g;
            continue;
        }
        const ClassInfo& w = classes.at(win);
        if (ci.total > w.total ||
            (ci.total == w.total && better(ci.best, w.best)))
            win = g;
    }

    const DemonymVariant* plural_pick = nullptr;
    const DemonymVariant* any_pick = nullptr;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        if (static_cast<int>(klass[i].gender) != win) continue;
        if (klass[i].plural && better(&variants[i], plural_pick)) plural_pick = &variants[i];
        if (better(&variants[i], any_pick)) any_pick = &variants[i];
    }
    return (plural_pick ? plural_pick : any_pick)->surface;
}

// ---------------------------------------------------------------------------
// Per-type lint rules
// ---------------------------------------------------------------------------

namespace canon_detail {

inline const std::set<std::string>& roman_numerals() {
    // I..XX; covers monarch numbering in the era the corpora deal with.
    static const std::set<std::string> r = {"I",    "II",  "III",  "IV",  "V",    "VI",  "VII",
                                            "VIII", "IX",  "X",    "XI",  "XII",  "XIII", "XIV",
                                            "XV",   "XVI", "XVII", "XVIII", "XIX", "XX"};
    return r;
}

inline std::vector<std::string> non_particle_tokens(const LintConfig& cfg, std::string_view name) {
    std::vector<std::string> out;
    for (auto& t : str::split_ws(name))
        if (!is_particle_token(cfg, t)) out.push_back(t);
    return out;
}

// Demonym stem: the surface with its gender suffix (or plural marker)
// removed, casefolded. "Englishmen" -> "english", "Arabs" -> "arab".
inline std::string demonym_stem(std::string_view surface, const LintConfig& cfg) {
    std::string folded = uni::casefold(str::collapse_ws(surface));
    if (str::ends_with(folded, " people")) return folded.substr(0, folded.size() - 7);
    const GenderSuffix* best = nullptr;
    for (const auto& gs : cfg.gender_suffixes)
        if (str::ends_with(folded, gs.suffix) && (!best || gs.suffix.size() > best->suffix.size()))
            best = &gs;
    if (best && folded.size() > best->suffix.size())
        return folded.substr(0, folded.size() - best->suffix.size());
    if (str::ends_with(folded, "s") && folded.size() > 1) return folded.substr(0, folded.size() - 1);
    return folded;
}

struct LintContext {
    const AliasTable* table = nullptr;
    const LintConfig* cfg = nullptr;
    // casefolded token sets of honorific-stripped CHR surfaces with >= 2
    // non-particle tokens (evidence that a fuller name exists in the text)
    std::vector<std::set<std::string>> chr_full_surface_tokens;
    // casefolded non-particle tokens of honorific-stripped CHR canonicals
    std::set<std::string> chr_canonical_tokens;
    // demonym stems of GRP surfaces and canonicals
    std::set<std::string> grp_stems;
    // canonical (raw) -> set of entity types using it
    std::map<std::string, std::set<EntityType>> canonical_types;
    // canonical (raw) -> GRP cluster surfaces
    std::map<std::string, std::vector<std::string>> grp_clusters;
};

inline LintContext make_lint_context(const AliasTable& t, const LintConfig& cfg) {
    LintContext ctx;
    ctx.table = &t;
    ctx.cfg = &cfg;
    for (const EntityRecord& r : t.records) {
        if (r.key.etype == EntityType::CHR) {
            std::string stripped = strip_honorifics(r.key.surface, cfg);
            auto toks = non_particle_tokens(cfg, stripped);
            if (toks.size() >= 2) {
                std::set<std::string> folded;
                for (auto& tk : toks) folded.insert(uni::casefold(tk));
                ctx.chr_full_surface_tokens.push_back(std::move(folded));
            }
            if (r.has_canonical()) {
                for (auto& tk : non_particle_tokens(cfg, strip_honorifics(*r.canonical, cfg)))
                    ctx.chr_canonical_tokens.insert(uni::casefold(tk));
            }
        }
        if (r.key.etype == EntityType::GRP) {
            ctx.grp_stems.insert(demonym_stem(r.key.surface, cfg));
            if (r.has_canonical()) {
                ctx.grp_stems.insert(demonym_stem(*r.canonical, cfg));
                ctx.grp_clusters[*r.canonical].push_back(r.key.surface);
            }
        }
        if (r.has_canonical()) ctx.canonical_types[*r.canonical].insert(r.key.etype);
    }
    return ctx;
}

inline bool contains_marker(const LintConfig& cfg, std::string_view canonical) {
    std::string marker = uni::casefold(cfg.group_marker);
    for (auto& t : str::split_ws(canonical))
        if (uni::casefold(t) == marker) return true;
    return false;
}

inline void lint_record(const EntityRecord& rec, const LintContext& ctx, std::vector<Finding>& out) {
    const LintConfig& cfg = *ctx.cfg;
    if (!rec.has_canonical()) return;
    const std::string& canon = *rec.canonical;
    auto enabled = [&](const char* code) { return cfg.enabled_rules.count(code) > 0; };
    auto warn = [&](const char* code, std::string msg) {
        out.push_back(Finding{Severity::Warn, code, rec.key, std::move(msg), std::nullopt});
    };

    if (rec.key.etype == EntityType::CHR) {
        if (enabled("CHR-HONORIFIC")) {
            std::string stripped = strip_honorifics(canon, cfg);
            if (stripped != canon) {
                auto rest = non_particle_tokens(cfg, stripped);
                bool flag = rest.size() >= 2;
                if (!flag && !rest.empty()) {
                    // a short remainder is fine unless the text shows a fuller
                    // name carrying the same family token
                    std::string family = uni::casefold(rest.back());
                    for (const auto& toks : ctx.chr_full_surface_tokens)
                        if (toks.count(family)) {
                            flag = true;
                            break;
                        }
                }
                if (flag)
                    warn("CHR-HONORIFIC", "canonical \"" + canon +
                                              "\" starts with an honorific; use the first and family "
                                              "names (\"" + stripped + "\" ...)");
            }
        }
        if (enabled("CHR-MONARCH")) {
            auto toks = str::split_ws(canon);
            if (toks.size() >= 2 && roman_numerals().count(toks.back()) > 0)
                warn("CHR-MONARCH", "canonical \"" + canon +
                                        "\" looks like a monarch without a realm; append it "
                                        "(\"" + canon + " of ...\")");
        }
    }

    if (rec.key.etype == EntityType::GRP) {
        // a canonical that names a family (a surname seen in CHR canonicals)
        // is not a demonym; it needs the marker, not a plural
        bool family_name = false;
        if (!contains_marker(cfg, canon)) {
            auto toks = str::split_ws(canon);
            family_name =
                toks.size() == 1 && ctx.chr_canonical_tokens.count(uni::casefold(toks[0])) > 0;
        }
        if (enabled("GRP-HOUSE") && family_name)
            warn("GRP-HOUSE", "canonical \"" + canon + "\" is a family surname; mark the group (\"" +
                                  cfg.group_marker + " " + canon + "\")");
        if (enabled("GRP-PLURAL") && !contains_marker(cfg, canon) && !family_name) {
            if (!classify_demonym(canon, cfg).plural) {
                auto it = ctx.grp_clusters.find(canon);
                if (it != ctx.grp_clusters.end()) {
                    for (const std::string& surface : it->second) {
                        if (classify_demonym(surface, cfg).plural) {
                            warn("GRP-PLURAL", "canonical \"" + canon +
                                                   "\" is singular while the cluster has the plural "
                                                   "form \"" + surface + "\"");
                            break;
                        }
                    }
                }
            }
        }
    }

    if (rec.key.etype == EntityType::ORG && enabled("ORG-NATURE")) {
        if (str::split_ws(canon).size() == 1)
            warn("ORG-NATURE", "canonical \"" + canon +
                                   "\" does not state the nature of the organization "
                                   "(\"Kingdom of ...\", \"Inn of ...\")");
    }

    if (rec.key.etype == EntityType::MSC && enabled("MSC-LANG")) {
        auto toks = str::split_ws(canon);
        if (toks.empty() || uni::casefold(toks.back()) != "language") {
            if (ctx.grp_stems.count(demonym_stem(canon, cfg)) > 0)
                warn("MSC-LANG", "canonical \"" + canon +
                                     "\" matches a demonym; state the nature (\"" + canon +
                                     " language\")");
        }
    }

    if (enabled("XTYPE-COLLIDE")) {
        auto it = ctx.canonical_types.find(canon);
        if (it != ctx.canonical_types.end() && it->second.size() > 1) {
            std::string others;
            for (EntityType t : it->second) {
                if (t == rec.key.etype) continue;
                if (!others.empty()) others += ", ";
                others += to_string(t);
            }
            warn("XTYPE-COLLIDE",
                 "canonical \"" + canon + "\" is also used under type " + others);
        }
    }
}

}  // namespace canon_detail

// Lints a single record against its table.
inline std::vector<Finding> lint_canonical(const EntityRecord& rec, const AliasTable& table,
                                           const LintConfig& cfg = default_lint_config()) {
    auto ctx = canon_detail::make_lint_context(table, cfg);
    std::vector<Finding> out;
    canon_detail::lint_record(rec, ctx, out);
    sort_findings(out);
    return out;
}

// Lints every record of the table.
inline std::vector<Finding> lint_table(const AliasTable& table,
                                       const LintConfig& cfg = default_lint_config()) {
    auto ctx = canon_detail::make_lint_context(table, cfg);
    std::vector<Finding> out;
    for (const EntityRecord& r : table.records) canon_detail::lint_record(r, ctx, out);
    sort_findings(out);
    return out;
}

// ---------------------------------------------------------------------------
// Config file
// ---------------------------------------------------------------------------

// Flat line format, one directive per line, '#' comments:
//   group_marker House
//   min_part_length 3
//   honorific_add Grand Vizier
//   honorific_rank_add Baron
//   honorific_remove Captain
//   particle_add della
//   rule_disable ORG-NATURE
//   rule_enable ORG-NATURE
//   gender_suffix_add ette feminine singular
inline LintConfig parse_lint_config(std::string_view text, const std::string& where = "<config>") {
    LintConfig cfg = default_lint_config();
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        std::string_view line = str::trim(raw);
        if (line.empty() || line[0] == '#') {
            if (eol == text.size()) break;
            continue;
        }
        std::size_t sp = line.find_first_of(" \t");
        std::string key(line.substr(0, sp));
        std::string value(sp == std::string_view::npos ? "" : str::trim(line.substr(sp)));
        auto fail = [&](const std::string& why) {
            throw config_error(where + ":" + std::to_string(line_no) + ": " + why);
        };
        if (value.empty()) fail("directive \"" + key + "\" needs a value");

        if (key == "group_marker") {
            cfg.group_marker = value;
        } else if (key == "min_part_length") {
            std::size_t n = 0;
            for (char c : value) {
                if (c < '0' || c > '9') fail("min_part_length must be an integer");
                n = n * 10 + static_cast<std::size_t>(c - '0');
            }
            if (n == 0) fail("min_part_length must be >= 1");
            cfg.min_part_length = n;
        } else if (key == "honorific_add") {
            cfg.honorifics.add(value);
        } else if (key == "honorific_rank_add") {
            cfg.honorifics.add(value, /*rank=*/true);
        } else if (key == "honorific_remove") {
            cfg.honorifics.remove(value);
        } else if (key == "particle_add") {
            cfg.particles.insert(uni::casefold(value));
        } else if (key == "particle_remove") {
            cfg.particles.erase(uni::casefold(value));
        } else if (key == "rule_disable") {
            if (!all_lint_rules().count(value)) fail("unknown rule code \"" + value + "\"");
            cfg.enabled_rules.erase(value);
        } else if (key == "rule_enable") {
            if (!all_lint_rules().count(value)) fail("unknown rule code \"" + value + "\"");
            cfg.enabled_rules.insert(value);
        } else if (key == "gender_suffix_add") {
            auto parts = str::split_ws(value);
            if (parts.size() != 3) fail("gender_suffix_add wants: <suffix> <gender> <number>");
            Gender g;
            if (parts[1] == "masculine") g = Gender::Masculine;
            else if (parts[1] == "feminine") g = Gender::Feminine;
            else if (parts[1] == "neutral") g = Gender::Neutral;
            else fail("gender must be masculine, feminine or neutral");
            bool plural;
            if (parts[2] == "plural") plural = true;
            else if (parts[2] == "singular") plural = false;
            else fail("number must be singular or plural");
            cfg.gender_suffixes.push_back({uni::casefold(parts[0]), g, plural});
        } else {
            fail("unknown directive \"" + key + "\"");
        }
        if (eol == text.size()) break;
    }
    return cfg;
}

inline LintConfig load_lint_config(const std::filesystem::path& path) {
    return parse_lint_config(io::read_file(path), path.string());
}

}  // namespace aliasres

#endif
