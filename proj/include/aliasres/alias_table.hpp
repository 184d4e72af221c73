// The annotated alias table (alias_resolution.csv): load, save, metadata.
//
// On-disk format: UTF-8 CSV with header name,type,frequency,canonical,metadata
// (RFC 4180). Document metadata is stored as one Key=Value pair per row in
// the metadata column of the first four data rows: Title, Annotator
// (";"-separated), Guidelines, Updated.

#ifndef ALIASRES_ALIAS_TABLE_HPP
#define ALIASRES_ALIAS_TABLE_HPP

#include <charconv>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aliasres/detail/csv.hpp"
#include "aliasres/detail/io.hpp"
#include "aliasres/detail/strings.hpp"
#include "aliasres/detail/unicode.hpp"
#include "aliasres/listing.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

class table_error : public std::runtime_error {
public:
    explicit table_error(const std::string& what) : std::runtime_error(what) {}
};

struct Metadata {
    std::string title;
    std::vector<std::string> annotators;
    std::string guidelines_version;  // major.minor.patch
    std::string updated;             // ISO-8601 date

    bool operator==(const Metadata&) const = default;
};

inline bool is_version_string(std::string_view v) {
    int part = 0, digits = 0;
    for (char c : v) {
        if (c >= '0' && c <= '9') {
            ++digits;
        } else if (c == '.') {
            if (digits == 0) return false;
            ++part;
            digits = 0;
        } else {
            return false;
        }
    }
    return part == 2 && digits > 0;
}

inline bool is_iso_date(std::string_view d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (d[i] < '0' || d[i] > '9') return false;
    int month = (d[5] - '0') * 10 + (d[6] - '0');
    int day = (d[8] - '0') * 10 + (d[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

inline void validate_metadata(const Metadata& m) {
    if (!is_version_string(m.guidelines_version))
        throw table_error("guidelines version \"" + m.guidelines_version +
                          "\" does not match major.minor.patch");
    if (!is_iso_date(m.updated))
        throw table_error("updated date \"" + m.updated + "\" is not an ISO-8601 date (YYYY-MM-DD)");
}

struct AliasTable {
    std::vector<EntityRecord> records;  // file order
    std::optional<Metadata> metadata;

    const EntityRecord* find(const EntityKey& key) const {
        for (const auto& r : records)
            if (r.key == key) return &r;
        return nullptr;
    }
};

namespace table_detail {

inline constexpr const char* kMetaKeys[] = {"Title", "Annotator", "Guidelines", "Updated"};

inline std::string meta_cell(const Metadata& m, std::size_t row) {
    switch (row) {
        case 0: return "Title=" + m.title;
        case 1: return "Annotator=" + str::join(m.annotators, ";");
        case 2: return "Guidelines=" + m.guidelines_version;
        case 3: return "Updated=" + m.updated;
        default: return "";
    }
}

}  // namespace table_detail

inline void validate_table(const AliasTable& t) {
    std::map<EntityKey, std::size_t> seen;
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        const EntityRecord& r = t.records[i];
        if (r.key.surface.empty()) throw table_error("record " + std::to_string(i + 1) + ": empty name");
        if (r.frequency < 1)
            throw table_error("record " + std::to_string(i + 1) + ": frequency must be >= 1");
        auto [it, inserted] = seen.emplace(r.key, i);
        if (!inserted)
            throw table_error("duplicate entity key (" + r.key.surface + ", " +
                              std::string(to_string(r.key.etype)) + ") in records " +
                              std::to_string(it->second + 1) + " and " + std::to_string(i + 1));
    }
    if (t.metadata) validate_metadata(*t.metadata);
}

inline AliasTable load_alias_table_text(std::string_view text, const std::string& where) {
    auto rows = csv::parse(text);
    if (rows.empty()) throw table_error(where + ": empty file");
    const csv::Row& header = rows[0];
    csv::Row want;
    for (auto h : kEntityListHeader) want.emplace_back(h);
    if (header != want)
        throw table_error(where + ": bad header; want name,type,frequency,canonical,metadata");

    AliasTable t;
    std::map<EntityKey, std::size_t> seen;  // key -> file line
    std::map<std::string, std::pair<std::string, std::size_t>> meta_pairs;

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const csv::Row& row = rows[i];
        std::size_t line = i + 1;
        if (row.size() != 5)
            throw table_error(where + ":" + std::to_string(line) + ": expected 5 columns, got " +
                              std::to_string(row.size()));
        EntityRecord rec;
        rec.key.surface = uni::nfc(row[0]);
        if (rec.key.surface.empty())
            throw table_error(where + ":" + std::to_string(line) + ": empty name");
        auto et = entity_type_from(row[1]);
        if (!et)
            throw table_error(where + ":" + std::to_string(line) + ": unknown entity type \"" +
                              row[1] + "\"");
        rec.key.etype = *et;

        std::int64_t freq = 0;
        auto [p, ec] = std::from_chars(row[2].data(), row[2].data() + row[2].size(), freq);
        if (ec != std::errc() || p != row[2].data() + row[2].size() || freq < 1)
            throw table_error(where + ":" + std::to_string(line) + ": frequency \"" + row[2] +
                              "\" is not a positive integer");
        rec.frequency = freq;

        if (!row[3].empty()) rec.canonical = uni::nfc(row[3]);

        auto [it, inserted] = seen.emplace(rec.key, line);
        if (!inserted)
            throw table_error(where + ": duplicate entity key (" + rec.key.surface + ", " +
                              std::string(to_string(rec.key.etype)) + ") on lines " +
                              std::to_string(it->second) + " and " + std::to_string(line));

        const std::string& cell = row[4];
        if (!cell.empty()) {
            auto eq = cell.find('=');
            if (eq == std::string::npos || eq == 0)
                throw table_error(where + ":" + std::to_string(line) + ": malformed metadata pair \"" +
                                  cell + "\"");
            std::string k = cell.substr(0, eq);
            bool known = false;
            for (auto mk : table_detail::kMetaKeys) known = known || (k == mk);
            if (!known)
                throw table_error(where + ":" + std::to_string(line) + ": unknown metadata field \"" +
                                  k + "\"");
            auto [mit, fresh] = meta_pairs.emplace(k, std::make_pair(cell.substr(eq + 1), line));
            if (!fresh)
                throw table_error(where + ": metadata field \"" + k + "\" given twice (lines " +
                                  std::to_string(mit->second.second) + " and " + std::to_string(line) +
                                  ")");
        }
        t.records.push_back(std::move(rec));
    }

    if (!meta_pairs.empty()) {
        for (auto mk : table_detail::kMetaKeys)
            if (!meta_pairs.count(mk))
                throw table_error(where + ": incomplete metadata, missing field \"" +
                                  std::string(mk) + "\"");
        Metadata m;
        m.title = meta_pairs.at("Title").first;
        const std::string& ann = meta_pairs.at("Annotator").first;
        std::size_t b = 0;
        while (b <= ann.size()) {
            std::size_t e = ann.find(';', b);
            if (e == std::string::npos) e = ann.size();
            std::string part(str::trim(ann.substr(b, e - b)));
            if (!part.empty()) m.annotators.push_back(std::move(part));
            b = e + 1;
        }
        m.guidelines_version = meta_pairs.at("Guidelines").first;
        m.updated = meta_pairs.at("Updated").first;
        validate_metadata(m);
        t.metadata = std::move(m);
    }
    return t;
}

inline AliasTable load_alias_table(const std::filesystem::path& path) {
    return load_alias_table_text(io::read_file(path), path.string());
}

inline std::string render_alias_csv(const AliasTable& t) {
    validate_table(t);
    if (t.metadata && t.records.size() < 4)
        throw table_error("table has fewer than 4 records; nowhere to store the metadata column");
    std::string out;
    csv::Row header;
    for (auto h : kEntityListHeader) header.emplace_back(h);
    csv::write_row(out, header);
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        const EntityRecord& r = t.records[i];
        std::string meta = t.metadata ? table_detail::meta_cell(*t.metadata, i) : std::string();
        csv::write_row(out, csv::Row{r.key.surface, std::string(to_string(r.key.etype)),
                                     std::to_string(r.frequency), r.canonical.value_or(""), meta});
    }
    return out;
}

inline void save_alias_table(const AliasTable& t, const std::filesystem::path& path) {
    io::write_file_atomic(path, render_alias_csv(t));
}

// Returns a copy of the table carrying `m`; records are untouched.
inline AliasTable set_metadata(AliasTable t, Metadata m) {
    validate_metadata(m);
    t.metadata = std::move(m);
    return t;
}

}  // namespace aliasres

#endif
