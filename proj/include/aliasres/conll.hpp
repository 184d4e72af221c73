// CoNLL ingestion: per-chapter IOB2 files in, an immutable corpus out.
//
// File schema: two whitespace-separated columns (token, tag); a blank line
// ends a sentence; lines beginning with '#' are comments and are preserved
// verbatim with their positions. Input is normalized to Unicode NFC at parse
// time. A well-formed file (single-space separator, NFC text, one blank line
// between sentences, one trailing newline) serializes back byte-identically.

#ifndef ALIASRES_CONLL_HPP
#define ALIASRES_CONLL_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "aliasres/detail/io.hpp"
#include "aliasres/detail/strings.hpp"
#include "aliasres/detail/unicode.hpp"
#include "aliasres/types.hpp"

namespace aliasres {

using Sentence = std::vector<Token>;

// A comment line anchored to its position: it appears immediately before
// token `token_offset` of sentence `sentence` (0-based). `token_offset` equal
// to the sentence length places it after the last token; `sentence` equal to
// the sentence count marks a trailing comment at end of file.
struct Comment {
    int sentence = 0;
    int token_offset = 0;
    std::string text;  // raw line, including the leading '#'

    bool operator==(const Comment&) const = default;
};

struct Chapter {
    int index = 0;  // 1-based, assigned from lexicographic file order
    std::string source_path;
    std::vector<Sentence> sentences;
    std::vector<Comment> comments;  // document order

    bool operator==(const Chapter&) const = default;
};

struct Corpus {
    std::vector<Chapter> chapters;
    std::vector<Mention> mentions;   // document order
    std::vector<Finding> findings;   // tagging errors recovered during parsing

    const Chapter& chapter(int index1) const {
        if (index1 < 1 || index1 > static_cast<int>(chapters.size()))
            throw bounds_error("chapter " + std::to_string(index1) + " out of range 1.." +
                               std::to_string(chapters.size()));
        return chapters[static_cast<std::size_t>(index1 - 1)];
    }
};

namespace conll_detail {

// Derives the mentions of one chapter. Orphan I- tags (no open span of the
// same type) are treated as B- and reported; the token keeps its raw tag so
// the file still round-trips and the error stays visible to the annotator.
inline void extract_mentions(const Chapter& ch, std::vector<Mention>& mentions,
                             std::vector<Finding>& findings) {
    for (std::size_t s = 0; s < ch.sentences.size(); ++s) {
        const Sentence& sent = ch.sentences[s];
        int line = static_cast<int>(s) + 1;
        int open_start = -1;
        EntityType open_type = EntityType::CHR;
        std::string open_surface;

        auto close = [&](int end_tok) {
            if (open_start < 0) return;
            mentions.push_back(Mention{open_surface, open_type, ch.index, line, open_start, end_tok});
            open_start = -1;
            open_surface.clear();
        };

        for (std::size_t t = 0; t < sent.size(); ++t) {
            const Token& tok = sent[t];
            int ti = static_cast<int>(t);
            switch (tok.kind) {
                case TagKind::Outside:
                    close(ti - 1);
                    break;
                case TagKind::Begin:
                    close(ti - 1);
                    open_start = ti;
                    open_type = tok.etype;
                    open_surface = tok.text;
                    break;
                case TagKind::Inside:
                    if (open_start >= 0 && open_type == tok.etype) {
                        open_surface += ' ';
                        open_surface += tok.text;
                    } else {
                        close(ti - 1);
                        findings.push_back(Finding{
                            Severity::Warn, "ORPHAN-I", std::nullopt,
                            "I-" + std::string(to_string(tok.etype)) + " on \"" + tok.text +
                                "\" without a preceding B-" + std::string(to_string(tok.etype)) +
                                "; treated as B-",
                            SourceLocation{ch.index, line}});
                        open_start = ti;
                        open_type = tok.etype;
                        open_surface = tok.text;
                    }
                    break;
            }
        }
        close(static_cast<int>(sent.size()) - 1);
    }
}

}  // namespace conll_detail

// Parses one chapter body. `where` names the source in error messages.
inline Chapter parse_chapter_text(std::string_view text, int index, const std::string& where) {
    Chapter ch;
    ch.index = index;
    ch.source_path = where;

    Sentence current;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        if (pos == text.size()) {
            if (line_no == 0) break;  // empty input handled below
        }
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        bool last = eol >= text.size();
        pos = eol + 1;

        if (last && line.empty()) break;  // the final newline

        if (!line.empty() && line[0] == '#') {
            ch.comments.push_back(Comment{static_cast<int>(ch.sentences.size()),
                                          static_cast<int>(current.size()),
                                          uni::nfc(line)});
        } else if (str::trim(line).empty()) {
            if (!current.empty()) {
                ch.sentences.push_back(std::move(current));
                current.clear();
            }
        } else {
            auto cols = str::split_ws(line);
            if (cols.size() != 2)
                throw parse_error(where + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                                  std::to_string(cols.size()));
            auto tok = make_token(uni::nfc(cols[0]), cols[1]);
            if (!tok)
                throw parse_error(where + ":" + std::to_string(line_no) + ": bad tag \"" + cols[1] +
                                  "\" (want O, B-<type> or I-<type> with type CHR/LOC/ORG/GRP/MSC)");
            current.push_back(std::move(*tok));
        }
        if (last) break;
    }
    if (!current.empty()) ch.sentences.push_back(std::move(current));
    if (ch.sentences.empty())
        throw parse_error(where + ": chapter contains no sentences");
    return ch;
}

// Serializes a chapter to its canonical text form: token lines as
// "text tag", one blank line between sentences, comments in their recorded
// slots, exactly one trailing newline.
inline std::string serialize_chapter(const Chapter& ch) {
    std::string out;
    std::size_t ci = 0;  // comments are kept in document order
    auto emit_comments_at = [&](int s, int k) {
        while (ci < ch.comments.size() && ch.comments[ci].sentence == s &&
               ch.comments[ci].token_offset == k) {
            out += ch.comments[ci].text;
            out += '\n';
            ++ci;
        }
    };

    for (std::size_t s = 0; s < ch.sentences.size(); ++s) {
        if (s > 0) out += '\n';
        const Sentence& sent = ch.sentences[s];
        for (std::size_t t = 0; t <= sent.size(); ++t) {
            emit_comments_at(static_cast<int>(s), static_cast<int>(t));
            if (t < sent.size()) {
                out += sent[t].text;
                out += ' ';
                out += sent[t].tag();
                out += '\n';
            }
        }
    }
    // trailing comments sit after a separating blank line, mirroring the parse
    if (ci < ch.comments.size()) {
        out += '\n';
        emit_comments_at(static_cast<int>(ch.sentences.size()), 0);
    }
    return out;
}

inline bool is_chapter_filename(std::string_view name) {
    if (!str::starts_with(name, "chapter_") || !str::ends_with(name, ".conll")) return false;
    std::string_view digits = name.substr(8, name.size() - 8 - 6);
    if (digits.empty()) return false;
    return std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Parses every chapter_NN.conll in `dir`, in lexicographic filename order.
inline Corpus parse_corpus(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw io::io_error(dir.string() + " is not a directory");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_chapter_filename(entry.path().filename().string()))
            files.push_back(entry.path());
    }
    if (files.empty())
        throw parse_error("no chapter_NN.conll files in " + dir.string());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    Corpus corpus;
    int index = 1;
    for (const auto& f : files) {
        corpus.chapters.push_back(parse_chapter_text(io::read_file(f), index++, f.string()));
    }
    for (const Chapter& ch : corpus.chapters)
        conll_detail::extract_mentions(ch, corpus.mentions, corpus.findings);
    return corpus;
}

// Builds a corpus from in-memory chapter bodies (used by tests and fixtures).
inline Corpus parse_corpus_texts(const std::vector<std::string>& chapter_texts) {
    Corpus corpus;
    int index = 1;
    for (const auto& text : chapter_texts) {
        corpus.chapters.push_back(
            parse_chapter_text(text, index, "chapter_" + std::to_string(index)));
        ++index;
    }
    if (corpus.chapters.empty()) throw parse_error("no chapters given");
    for (const Chapter& ch : corpus.chapters)
        conll_detail::extract_mentions(ch, corpus.mentions, corpus.findings);
    return corpus;
}

struct LocatedMention {
    Mention mention;
    std::string context;  // the sentence plus its neighbors, one per line
};

inline std::string sentence_text(const Sentence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ' ';
        out += s[i].text;
    }
    return out;
}

// Finds every mention at (chapter, line) whose surface equals `surface`,
// with a +/-1 sentence context snippet.
inline std::vector<LocatedMention> locate_mention(const Corpus& corpus, int chapter, int line,
                                                  std::string_view surface) {
    const Chapter& ch = corpus.chapter(chapter);
    int nlines = static_cast<int>(ch.sentences.size());
    if (line < 1 || line > nlines)
        throw bounds_error("line " + std::to_string(line) + " out of range 1.." +
                           std::to_string(nlines) + " in chapter " + std::to_string(chapter));

    std::string query = uni::nfc(std::string(surface));
    std::vector<LocatedMention> hits;
    for (const Mention& m : corpus.mentions) {
        if (m.chapter != chapter || m.line != line || m.surface != query) continue;
        std::string ctx;
        for (int l = std::max(1, line - 1); l <= std::min(nlines, line + 1); ++l) {
            ctx += (l == line) ? "> " : "  ";
            ctx += sentence_text(ch.sentences[static_cast<std::size_t>(l - 1)]);
            ctx += '\n';
        }
        hits.push_back(LocatedMention{m, std::move(ctx)});
    }
    return hits;
}

}  // namespace aliasres

#endif
