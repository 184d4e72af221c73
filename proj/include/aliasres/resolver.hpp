// Alias-cluster suggestion by honorific-aware name-part matching, plus
// pairwise and B-cubed scoring against a gold table.
//
// Suggestions are advisory output for review; they are never written back
// into an alias table.

#ifndef ALIASRES_RESOLVER_HPP
#define ALIASRES_RESOLVER_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "aliasres/alias_table.hpp"
#include "aliasres/canon_rules.hpp"
#include "aliasres/detail/csv.hpp"
#include "aliasres/detail/strings.hpp"
#include "aliasres/detail/unicode.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

// ---------------------------------------------------------------------------
// Name parts and the link predicate
// ---------------------------------------------------------------------------

// Linkable parts of a surface form: honorifics stripped, whitespace split,
// apostrophe particles ("d'Artagnan") and surrounding punctuation removed,
// particles and short tokens dropped, casefolded NFC.
inline std::set<std::string> name_parts(std::string_view surface, const LintConfig& cfg) {
    std::set<std::string> parts;
    std::string stripped = strip_honorifics(surface, cfg);
    for (const std::string& raw : str::split_ws(stripped)) {
        std::string tok = uni::casefold(uni::nfc(raw));
        // d'Artagnan, l'Olonnais: drop the elided particle
        for (const std::string& p : cfg.particles) {
            if ((p.size() >= 2 && p.back() == '\'') && str::starts_with(tok, p) && tok.size() > p.size()) {
                tok = tok.substr(p.size());
                break;
            }
        }
        std::u32string cps = uni::decode_utf8(tok);
        std::size_t b = 0, e = cps.size();
        while (b < e && !uni::is_letter(cps[b])) ++b;
        while (e > b && !uni::is_letter(cps[e - 1])) --e;
        cps = cps.substr(b, e - b);
        if (cps.size() < cfg.min_part_length) continue;
        std::string part = uni::encode_utf8(cps);
        if (cfg.particles.count(part)) continue;
        parts.insert(std::move(part));
    }
    return parts;
}

// Two surfaces are linked iff they share a full part.
inline bool keys_linked(std::string_view a, std::string_view b, const LintConfig& cfg) {
    auto pa = name_parts(a, cfg);
    auto pb = name_parts(b, cfg);
    for (const auto& p : pa)
        if (pb.count(p)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Cluster suggestion
// ---------------------------------------------------------------------------

struct ClusterSet {
    EntityType etype = EntityType::CHR;
    std::vector<std::vector<EntityKey>> clusters;  // partition of the input keys
    std::vector<std::string> candidates;           // per-cluster suggested canonical
};

namespace resolver_detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace resolver_detail

// Connected components of the link relation over a single-type record list.
// Candidate canonical per cluster: the surface with the most parts, ties by
// higher frequency then lexicographic order.
inline ClusterSet suggest_clusters(const std::vector<EntityRecord>& records,
                                   const LintConfig& cfg = default_lint_config()) {
    ClusterSet result;
    if (records.empty()) return result;
    result.etype = records[0].key.etype;
    for (const auto& r : records)
        if (r.key.etype != result.etype)
            throw std::invalid_argument("suggest_clusters: mixed entity types in input");

    const std::size_t n = records.size();
    std::vector<std::set<std::string>> parts(n);
    for (std::size_t i = 0; i < n; ++i) parts[i] = name_parts(records[i].key.surface, cfg);

    resolver_detail::UnionFind uf(n);
    std::map<std::string, std::size_t> first_with_part;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& p : parts[i]) {
            auto [it, fresh] = first_with_part.emplace(p, i);
            if (!fresh) uf.unite(i, it->second);
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;  // root -> record indices
    for (std::size_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);

    std::vector<std::pair<EntityKey, std::size_t>> order;  // (smallest key, root)
    for (const auto& [root, members] : groups) {
        EntityKey smallest = records[members[0]].key;
        for (std::size_t m : members)
            if (records[m].key < smallest) smallest = records[m].key;
        order.emplace_back(smallest, root);
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [_, root] : order) {
        const auto& members = groups.at(root);
        std::vector<EntityKey> cluster;
        const EntityRecord* best = nullptr;
        std::size_t best_parts = 0;
        for (std::size_t m : members) {
            cluster.push_back(records[m].key);
            std::size_t np = parts[m].size();
            if (!best || np > best_parts ||
                (np == best_parts && (records[m].frequency > best->frequency ||
                                      (records[m].frequency == best->frequency &&
                                       records[m].key.surface < best->key.surface)))) {
                best = &records[m];
                best_parts = np;
            }
        }
        std::sort(cluster.begin(), cluster.end());
        result.clusters.push_back(std::move(cluster));
        result.candidates.push_back(best->key.surface);
    }
    return result;
}

// Per-type suggestion over a mixed record list, in type order.
inline std::vector<ClusterSet> suggest_clusters_by_type(const std::vector<EntityRecord>& records,
                                                        const LintConfig& cfg = default_lint_config()) {
    std::vector<ClusterSet> out;
    for (EntityType t : kAllEntityTypes) {
        std::vector<EntityRecord> subset;
        for (const auto& r : records)
            if (r.key.etype == t) subset.push_back(r);
        if (!subset.empty()) out.push_back(suggest_clusters(subset, cfg));
    }
    return out;
}

// Review file: cluster_id,name,type,candidate_canonical.
inline std::string write_suggestions_csv(const std::vector<ClusterSet>& sets) {
    std::string out;
    csv::write_row(out, csv::Row{"cluster_id", "name", "type", "candidate_canonical"});
    int cluster_id = 0;
    for (const ClusterSet& cs : sets) {
        for (std::size_t c = 0; c < cs.clusters.size(); ++c) {
            ++cluster_id;
            for (const EntityKey& k : cs.clusters[c]) {
                csv::write_row(out, csv::Row{std::to_string(cluster_id), k.surface,
                                             std::string(to_string(k.etype)), cs.candidates[c]});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

struct ClusterMetrics {
    double pairwise_precision = 0.0;
    double pairwise_recall = 0.0;
    double pairwise_f1 = 0.0;
    double b3_precision = 0.0;
    double b3_recall = 0.0;
    double b3_f1 = 0.0;
};

inline double f1_of(double p, double r) { return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

// Scores a predicted clustering against the gold table, whose clusters are
// records grouped by identical canonical string within the type. Metrics are
// computed over the predicted key set; precision over an empty predicted
// pair set is 1.0 (and recall likewise for an empty gold pair set).
inline ClusterMetrics evaluate_clusters(const ClusterSet& predicted, const AliasTable& gold) {
    std::map<EntityKey, std::size_t> pred_of;  // key -> predicted cluster id
    for (std::size_t c = 0; c < predicted.clusters.size(); ++c)
        for (const EntityKey& k : predicted.clusters[c]) pred_of[k] = c;

    // gold cluster id per predicted key; blank canonicals are singletons
    std::map<std::string, std::size_t> gold_ids;
    std::map<EntityKey, std::size_t> gold_of;
    std::size_t next_gold = 0;
    for (const auto& [key, _] : pred_of) {
        const EntityRecord* rec = gold.find(key);
        if (!rec)
            throw std::invalid_argument("evaluate_clusters: predicted key (" + key.surface + ", " +
                                        std::string(to_string(key.etype)) + ") absent from gold");
        std::string label;
        if (rec->has_canonical())
            label = std::string(to_string(key.etype)) + "\x1f" + *rec->canonical;
        else
            label = "\x1e" + key.surface + "\x1f" + std::string(to_string(key.etype));
        auto [it, fresh] = gold_ids.emplace(label, next_gold);
        if (fresh) ++next_gold;
        gold_of[key] = it->second;
    }

    // pairwise counts
    std::size_t pred_pairs = 0, gold_pairs = 0, both = 0;
    std::vector<EntityKey> keys;
    for (const auto& [k, _] : pred_of) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            bool p = pred_of.at(keys[i]) == pred_of.at(keys[j]);
            bool g = gold_of.at(keys[i]) == gold_of.at(keys[j]);
            pred_pairs += p;
            gold_pairs += g;
            both += p && g;
        }
    }

    ClusterMetrics m;
    m.pairwise_precision = pred_pairs ? static_cast<double>(both) / static_cast<double>(pred_pairs) : 1.0;
    m.pairwise_recall = gold_pairs ? static_cast<double>(both) / static_cast<double>(gold_pairs) : 1.0;
    m.pairwise_f1 = f1_of(m.pairwise_precision, m.pairwise_recall);

    // B-cubed, standard per-item formulation
    std::map<std::size_t, std::size_t> pred_size, gold_size;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlap;
    for (const auto& [k, pc] : pred_of) {
        ++pred_size[pc];
        ++gold_size[gold_of.at(k)];
        ++overlap[{pc, gold_of.at(k)}];
    }
    double sum_p = 0.0, sum_r = 0.0;
    for (const auto& [k, pc] : pred_of) {
        std::size_t gc = gold_of.at(k);
        double ov = static_cast<double>(overlap.at({pc, gc}));
        sum_p += ov / static_cast<double>(pred_size.at(pc));
        sum_r += ov / static_cast<double>(gold_size.at(gc));
    }
    const double n = static_cast<double>(pred_of.size());
    m.b3_precision = n > 0 ? sum_p / n : 1.0;
    m.b3_recall = n > 0 ? sum_r / n : 1.0;
    m.b3_f1 = f1_of(m.b3_precision, m.b3_recall);
    return m;
}

// Flat key/value text, one metric per line.
inline std::string format_metrics(const ClusterMetrics& m) {
    auto line = [](const char* k, double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s %.9f\n", k, v);
        return std::string(buf);
    };
    std::string out;
    out += line("pairwise_precision", m.pairwise_precision);
    out += line("pairwise_recall", m.pairwise_recall);
    out += line("pairwise_f1", m.pairwise_f1);
    out += line("b3_precision", m.b3_precision);
    out += line("b3_recall", m.b3_recall);
    out += line("b3_f1", m.b3_f1);
    return out;
}

}  // namespace aliasres

#endif
