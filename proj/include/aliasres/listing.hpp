// The two CSV inventories derived from a corpus: the entity list (unique
// surface/type pairs with frequencies, canonical column initially empty) and
// the mention list (every occurrence with its position).

#ifndef ALIASRES_LISTING_HPP
#define ALIASRES_LISTING_HPP

#include <map>
#include <string>
#include <vector>

#include "aliasres/conll.hpp"
#include "aliasres/detail/csv.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

inline constexpr std::string_view kEntityListHeader[] = {"name", "type", "frequency", "canonical",
                                                         "metadata"};
inline constexpr std::string_view kMentionListHeader[] = {"name",  "type",        "chapter",
                                                          "line",  "token_start", "token_end"};

// One record per distinct (surface, type), frequency = mention count, ordered
// by the entity-list collation: case-insensitive code points, ties
// case-sensitive, then type CHR<GRP<LOC<MSC<ORG.
inline std::vector<EntityRecord> build_entity_list(const Corpus& corpus) {
    std::map<EntityKey, std::int64_t> counts;
    for (const Mention& m : corpus.mentions) ++counts[EntityKey{m.surface, m.etype}];
    std::vector<EntityRecord> records;
    records.reserve(counts.size());
    for (auto& [key, n] : counts)
        records.push_back(EntityRecord{key, n, std::nullopt});
    return records;
}

// Document order: (chapter, line, token_start).
inline const std::vector<Mention>& build_mention_list(const Corpus& corpus) {
    return corpus.mentions;
}

inline std::string write_entity_csv(const std::vector<EntityRecord>& records) {
    std::string out;
    csv::Row header;
    for (auto h : kEntityListHeader) header.emplace_back(h);
    csv::write_row(out, header);
    for (const EntityRecord& r : records) {
        csv::write_row(out, csv::Row{r.key.surface, std::string(to_string(r.key.etype)),
                                     std::to_string(r.frequency), r.canonical.value_or(""),
                                     std::string()});
    }
    return out;
}

inline std::string write_mention_csv(const std::vector<Mention>& mentions) {
    std::string out;
    csv::Row header;
    for (auto h : kMentionListHeader) header.emplace_back(h);
    csv::write_row(out, header);
    for (const Mention& m : mentions) {
        csv::write_row(out, csv::Row{m.surface, std::string(to_string(m.etype)),
                                     std::to_string(m.chapter), std::to_string(m.line),
                                     std::to_string(m.token_start), std::to_string(m.token_end)});
    }
    return out;
}

}  // namespace aliasres

#endif
