// Core domain types shared by every module: entity types, tokens, mentions,
// entity records and findings.

#ifndef ALIASRES_TYPES_HPP
#define ALIASRES_TYPES_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aliasres/detail/strings.hpp"
#include "aliasres/detail/unicode.hpp"

namespace aliasres {

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

class bounds_error : public std::out_of_range {
public:
    explicit bounds_error(const std::string& what) : std::out_of_range(what) {}
};

// ---------------------------------------------------------------------------
// Entity types
// ---------------------------------------------------------------------------

enum class EntityType : std::uint8_t { CHR, GRP, LOC, MSC, ORG };

inline constexpr EntityType kAllEntityTypes[] = {EntityType::CHR, EntityType::GRP, EntityType::LOC,
                                                 EntityType::MSC, EntityType::ORG};

inline std::string_view to_string(EntityType t) {
    switch (t) {
        case EntityType::CHR: return "CHR";
        case EntityType::GRP: return "GRP";
        case EntityType::LOC: return "LOC";
        case EntityType::MSC: return "MSC";
        case EntityType::ORG: return "ORG";
    }
    return "?";
}

inline std::optional<EntityType> entity_type_from(std::string_view s) {
    if (s == "CHR") return EntityType::CHR;
    if (s == "GRP") return EntityType::GRP;
    if (s == "LOC") return EntityType::LOC;
    if (s == "MSC") return EntityType::MSC;
    if (s == "ORG") return EntityType::ORG;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tokens and mentions
// ---------------------------------------------------------------------------

enum class TagKind : std::uint8_t { Outside, Begin, Inside };

// One token line: text plus its IOB2 tag. `etype` is meaningful only when
// kind != Outside.
struct Token {
    std::string text;
    TagKind kind = TagKind::Outside;
    EntityType etype = EntityType::CHR;

    std::string tag() const {
        if (kind == TagKind::Outside) return "O";
        std::string t(kind == TagKind::Begin ? "B-" : "I-");
        t += to_string(etype);
        return t;
    }

    bool operator==(const Token&) const = default;
};

// Parses "O", "B-CHR", "I-LOC", ... Returns nullopt for anything else.
inline std::optional<Token> make_token(std::string text, std::string_view tag) {
    Token t;
    t.text = std::move(text);
    if (t.text.empty()) return std::nullopt;
    if (tag == "O") {
        t.kind = TagKind::Outside;
        return t;
    }
    if (tag.size() != 5 || tag[1] != '-') return std::nullopt;
    if (tag[0] == 'B') t.kind = TagKind::Begin;
    else if (tag[0] == 'I') t.kind = TagKind::Inside;
    else return std::nullopt;
    auto et = entity_type_from(tag.substr(2));
    if (!et) return std::nullopt;
    t.etype = *et;
    return t;
}

// One annotated occurrence of an entity. `line` is the 1-based sentence index
// within the chapter; token offsets are 0-based and inclusive.
struct Mention {
    std::string surface;
    EntityType etype = EntityType::CHR;
    int chapter = 0;
    int line = 0;
    int token_start = 0;
    int token_end = 0;

    bool operator==(const Mention&) const = default;
};

// ---------------------------------------------------------------------------
// Entity keys and records
// ---------------------------------------------------------------------------

// A unique (surface form, entity type) pair. Comparison is exact and
// case-sensitive; ordering uses the entity-list collation (case-insensitive
// code points, ties case-sensitive, then type).
struct EntityKey {
    std::string surface;
    EntityType etype = EntityType::CHR;

    bool operator==(const EntityKey&) const = default;
};

inline bool operator<(const EntityKey& a, const EntityKey& b) {
    if (int c = uni::compare_ci(a.surface, b.surface); c != 0) return c < 0;
    return to_string(a.etype) < to_string(b.etype);
}

struct EntityRecord {
    EntityKey key;
    std::int64_t frequency = 1;
    std::optional<std::string> canonical;

    bool has_canonical() const {
        return canonical && !str::trim(*canonical).empty();
    }

    bool operator==(const EntityRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Findings
// ---------------------------------------------------------------------------

enum class Severity : std::uint8_t { Error, Warn, Info };

inline std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Error: return "ERROR";
        case Severity::Warn: return "WARN";
        case Severity::Info: return "INFO";
    }
    return "?";
}

struct SourceLocation {
    int chapter = 0;
    int line = 0;

    bool operator==(const SourceLocation&) const = default;
};

// One validation or lint result.
//
// Rule catalogue:
//   ORPHAN-I       I- tag without a preceding B-/I- of the same type (repaired as B-)
//   COVERAGE       record without a canonical form
//   UNICITY        one canonical identity written as several raw strings
//   SUSPECT        surface form that looks like an annotation error
//   MISSING-KEY    key present in the corpus but absent from the table
//   STALE-KEY      key present in the table but absent from the corpus
//   FREQ-MISMATCH  table frequency differs from the corpus count
//   CHR-HONORIFIC  character canonical begins with an honorific
//   CHR-MONARCH    monarch canonical lacks the realm suffix
//   GRP-HOUSE      family-group canonical lacks the group marker
//   GRP-PLURAL     demonym canonical is singular while plural variants exist
//   ORG-NATURE     organization canonical does not state its nature
//   MSC-LANG       language canonical lacks the trailing "language"
//   XTYPE-COLLIDE  identical canonical under two different entity types
struct Finding {
    Severity severity = Severity::Warn;
    std::string code;
    std::optional<EntityKey> key;
    std::string message;
    std::optional<SourceLocation> location;

    bool operator==(const Finding&) const = default;
};

// Deterministic finding order: severity, then code, then key, then message.
inline bool finding_less(const Finding& a, const Finding& b) {
    if (a.severity != b.severity) return a.severity < b.severity;
    if (a.code != b.code) return a.code < b.code;
    const bool ak = a.key.has_value(), bk = b.key.has_value();
    if (ak != bk) return bk;  // keyless findings first within a code
    if (ak && bk && !(*a.key == *b.key)) return *a.key < *b.key;
    return a.message < b.message;
}

inline void sort_findings(std::vector<Finding>& fs) {
    std::stable_sort(fs.begin(), fs.end(), finding_less);
}

inline bool has_errors(const std::vector<Finding>& fs) {
    for (const auto& f : fs)
        if (f.severity == Severity::Error) return true;
    return false;
}

}  // namespace aliasres

#endif
