// Character co-occurrence network: vertices are canonical forms of CHR
// entities, edge weights count sliding-window co-occurrences.
//
// Window model: within a chapter of S sentences and window size N, the
// window positions are the spans [p, p+N-1] for p = 1..S-N+1 (one spanning
// window when S < N); windows never cross chapter boundaries. Two distinct
// canonicals gain one count for every window position containing mentions of
// both; repeated mentions inside one window position count once.

#ifndef ALIASRES_GRAPH_HPP
#define ALIASRES_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "aliasres/alias_table.hpp"
#include "aliasres/conll.hpp"
#include "aliasres/detail/io.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

class graph_error : public std::runtime_error {
public:
    explicit graph_error(const std::string& what) : std::runtime_error(what) {}
};

struct CharacterGraph {
    std::set<std::string> vertices;
    // unordered pairs stored with first < second (byte order)
    std::map<std::pair<std::string, std::string>, std::int64_t> edges;

    bool operator==(const CharacterGraph&) const = default;
};

inline std::pair<std::string, std::string> edge_key(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

inline CharacterGraph build_cooccurrence(const Corpus& corpus, const AliasTable& t,
                                         std::size_t window) {
    if (window == 0) throw graph_error("window must be >= 1");

    // map every CHR surface to its canonical; all keys must be covered
    std::map<EntityKey, std::string> canon_of;
    std::vector<std::string> missing;
    for (const Mention& m : corpus.mentions) {
        if (m.etype != EntityType::CHR) continue;
        EntityKey key{m.surface, m.etype};
        if (canon_of.count(key)) continue;
        const EntityRecord* rec = t.find(key);
        if (rec && rec->has_canonical()) canon_of[key] = *rec->canonical;
        else missing.push_back(m.surface);
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string list;
        for (const auto& s : missing) {
            if (!list.empty()) list += ", ";
            list += '"' + s + '"';
        }
        throw graph_error("CHR surface forms without a canonical in the table: " + list);
    }

    CharacterGraph g;
    for (const Chapter& ch : corpus.chapters) {
        // canonical sets per sentence (1-based line -> set)
        std::vector<std::set<std::string>> per_line(ch.sentences.size());
        for (const Mention& m : corpus.mentions) {
            if (m.chapter != ch.index || m.etype != EntityType::CHR) continue;
            const std::string& c = canon_of.at(EntityKey{m.surface, m.etype});
            per_line[static_cast<std::size_t>(m.line - 1)].insert(c);
            g.vertices.insert(c);
        }

        const std::size_t S = per_line.size();
        if (S == 0) continue;
        const std::size_t positions = S > window ? S - window + 1 : 1;

        // incremental sliding window: how many sentences of the current
        // window mention each canonical
        std::map<std::string, std::size_t> active;
        auto add_line = [&](std::size_t l) {
            for (const auto& c : per_line[l]) ++active[c];
        };
        auto drop_line = [&](std::size_t l) {
            for (const auto& c : per_line[l]) {
                auto it = active.find(c);
                if (--it->second == 0) active.erase(it);
            }
        };
        for (std::size_t l = 0; l < std::min(window, S); ++l) add_line(l);
        for (std::size_t p = 0;; ++p) {
            for (auto a = active.begin(); a != active.end(); ++a) {
                auto b = a;
                for (++b; b != active.end(); ++b)
                    ++g.edges[edge_key(a->first, b->first)];
            }
            if (p + 1 >= positions) break;
            drop_line(p);
            if (p + window < S) add_line(p + window);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

enum class GraphFormat { GraphML, EdgeList };

namespace graph_detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string xml_unescape(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            auto semi = s.find(';', i);
            if (semi != std::string_view::npos) {
                std::string_view ent = s.substr(i + 1, semi - i - 1);
                char c = 0;
                if (ent == "amp") c = '&';
                else if (ent == "lt") c = '<';
                else if (ent == "gt") c = '>';
                else if (ent == "quot") c = '"';
                else if (ent == "apos") c = '\'';
                if (c) {
                    out += c;
                    i = semi + 1;
                    continue;
                }
            }
        }
        out += s[i++];
    }
    return out;
}

}  // namespace graph_detail

// Deterministic GraphML: vertices and edges in byte order, weight as edge
// attribute "w".
inline std::string write_graphml(const CharacterGraph& g) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out += "  <key id=\"w\" for=\"edge\" attr.name=\"w\" attr.type=\"long\"/>\n";
    out += "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (const auto& v : g.vertices)
        out += "    <node id=\"" + graph_detail::xml_escape(v) + "\"/>\n";
    for (const auto& [e, w] : g.edges) {
        out += "    <edge source=\"" + graph_detail::xml_escape(e.first) + "\" target=\"" +
               graph_detail::xml_escape(e.second) + "\"><data key=\"w\">" + std::to_string(w) +
               "</data></edge>\n";
    }
    out += "  </graph>\n";
    out += "</graphml>\n";
    return out;
}

// Tab-separated edges, one per line: A<TAB>B<TAB>weight. Isolated vertices
// appear only in GraphML output.
inline std::string write_edgelist(const CharacterGraph& g) {
    std::string out;
    for (const auto& [e, w] : g.edges)
        out += e.first + "\t" + e.second + "\t" + std::to_string(w) + "\n";
    return out;
}

inline std::string write_graph_text(const CharacterGraph& g, GraphFormat f) {
    return f == GraphFormat::GraphML ? write_graphml(g) : write_edgelist(g);
}

inline void write_graph(const CharacterGraph& g, GraphFormat f, const std::filesystem::path& path) {
    io::write_file_atomic(path, write_graph_text(g, f));
}

// Reads the GraphML shape this module writes (enough for round trips).
inline CharacterGraph read_graphml(std::string_view text) {
    CharacterGraph g;
    auto attr = [&](std::string_view tag, const char* name) -> std::string {
        std::string pat = std::string(name) + "=\"";
        auto p = tag.find(pat);
        if (p == std::string_view::npos) throw graph_error("graphml: missing attribute " + std::string(name));
        p += pat.size();
        auto q = tag.find('"', p);
        if (q == std::string_view::npos) throw graph_error("graphml: unterminated attribute");
        return graph_detail::xml_unescape(tag.substr(p, q - p));
    };
    std::size_t pos = 0;
    while ((pos = text.find('<', pos)) != std::string_view::npos) {
        std::size_t end = text.find('>', pos);
        if (end == std::string_view::npos) break;
        std::string_view tag = text.substr(pos, end - pos + 1);
        if (str::starts_with(tag, "<node ")) {
            g.vertices.insert(attr(tag, "id"));
        } else if (str::starts_with(tag, "<edge ")) {
            std::string a = attr(tag, "source");
            std::string b = attr(tag, "target");
            std::size_t dpos = text.find("<data key=\"w\">", end);
            std::size_t dend = text.find("</data>", dpos);
            if (dpos == std::string_view::npos || dend == std::string_view::npos)
                throw graph_error("graphml: edge without a weight");
            dpos += 14;
            std::int64_t w = 0;
            for (char c : text.substr(dpos, dend - dpos)) {
                if (c < '0' || c > '9') throw graph_error("graphml: bad weight");
                w = w * 10 + (c - '0');
            }
            g.edges[edge_key(std::move(a), std::move(b))] = w;
        }
        pos = end + 1;
    }
    return g;
}

}  // namespace aliasres

#endif
