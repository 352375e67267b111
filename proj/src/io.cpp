#include "umod/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <istream>
#include <vector>

namespace umod {

namespace {

struct Token {
    int line = 0;
    int col = 0;
    std::string text;
};

struct TokenLine {
    int line = 0;
    std::vector<Token> toks;
};

// Splits the stream into significant lines of whitespace-separated tokens,
// dropping comments and blank lines. Columns are 1-based.
std::vector<TokenLine> tokenize(std::istream& in) {
    std::vector<TokenLine> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        TokenLine tl;
        tl.line = line_no;
        std::size_t i = 0;
        while (i < raw.size()) {
            char ch = raw[i];
            if (ch == '#') break;
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && raw[j] != '#' &&
                   !std::isspace(static_cast<unsigned char>(raw[j]))) {
                ++j;
            }
            tl.toks.push_back({line_no, static_cast<int>(i) + 1, raw.substr(i, j - i)});
            i = j;
        }
        if (!tl.toks.empty()) out.push_back(std::move(tl));
    }
    return out;
}

long long parse_number(const Token& t, long long lo, long long hi, const std::string& what) {
    long long value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(t.line, t.col, what + " is not an integer: '" + t.text + "'");
    }
    if (value < lo || value > hi) {
        throw ParseError(t.line, t.col, what + " out of range [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "]: " + t.text);
    }
    return value;
}

// Matrix inputs would need ~n^2 * 4 bytes once converted to a relation;
// this cap keeps a bad header from looking like an allocation bug.
constexpr long long kMaxElements = 20000;

class Parser {
  public:
    Parser(std::istream& in, std::string source) : source_(std::move(source)) {
        lines_ = tokenize(in);
    }

    InputDocument run() {
        if (lines_.empty()) throw ParseError(1, 1, "empty input: missing header line");
        const TokenLine& head = lines_[0];
        next_ = 1;
        const std::string& kind = head.toks[0].text;
        InputDocument doc;
        doc.source = source_;
        if (kind == "graph") {
            parse_graph(head, doc);
        } else if (kind == "tournament") {
            parse_tournament(head, doc);
        } else if (kind == "twostructure") {
            parse_two_structure(head, doc);
        } else if (kind == "relation") {
            parse_relation(head, doc);
        } else {
            throw ParseError(head.toks[0].line, head.toks[0].col,
                             "unknown input kind '" + kind +
                                 "' (expected graph, tournament, twostructure, or relation)");
        }
        if (next_ < lines_.size()) {
            const Token& t = lines_[next_].toks[0];
            throw ParseError(t.line, t.col, "unexpected trailing content");
        }
        return doc;
    }

  private:
    int parse_header_n(const TokenLine& head, std::size_t expected_tokens,
                       const std::string& usage) {
        if (head.toks.size() != expected_tokens) {
            throw ParseError(head.toks[0].line, head.toks[0].col, "header must be '" + usage + "'");
        }
        return static_cast<int>(parse_number(head.toks[1], 1, kMaxElements, "element count"));
    }

    const TokenLine& take_line(const std::string& what) {
        if (next_ >= lines_.size()) {
            int after = lines_.back().line;
            throw ParseError(after, 1, "unexpected end of input: expected " + what);
        }
        return lines_[next_++];
    }

    // Reads n lines of exactly n tokens each.
    std::vector<std::vector<Token>> take_matrix(int n) {
        std::vector<std::vector<Token>> rows;
        rows.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const TokenLine& tl = take_line("matrix row " + std::to_string(i));
            if (static_cast<int>(tl.toks.size()) != n) {
                throw ParseError(tl.line, tl.toks[0].col,
                                 "matrix row must have exactly " + std::to_string(n) +
                                     " entries, got " + std::to_string(tl.toks.size()));
            }
            rows.push_back(tl.toks);
        }
        return rows;
    }

    void parse_graph(const TokenLine& head, InputDocument& doc) {
        if (head.toks.size() != 3) {
            throw ParseError(head.toks[0].line, head.toks[0].col, "header must be 'graph n m'");
        }
        int n = static_cast<int>(parse_number(head.toks[1], 1, kMaxElements, "vertex count"));
        long long max_m = static_cast<long long>(n) * (n - 1) / 2;
        long long m = parse_number(head.toks[2], 0, max_m, "edge count");
        doc.kind = InputKind::graph;
        doc.graph = UndirectedGraph(n);
        for (long long e = 0; e < m; ++e) {
            const TokenLine& tl = take_line("edge " + std::to_string(e));
            if (tl.toks.size() != 2) {
                throw ParseError(tl.line, tl.toks[0].col, "edge line must be 'u v'");
            }
            int u = static_cast<int>(parse_number(tl.toks[0], 0, n - 1, "vertex id"));
            int v = static_cast<int>(parse_number(tl.toks[1], 0, n - 1, "vertex id"));
            if (u == v) {
                throw ParseError(tl.toks[0].line, tl.toks[0].col,
                                 "self loop at vertex " + std::to_string(u));
            }
            if (doc.graph.has_edge(u, v)) {
                throw ParseError(tl.toks[0].line, tl.toks[0].col,
                                 "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
            }
            doc.graph.add_edge(u, v);
        }
    }

    void parse_tournament(const TokenLine& head, InputDocument& doc) {
        int n = parse_header_n(head, 2, "tournament n");
        auto rows = take_matrix(n);
        doc.kind = InputKind::tournament;
        doc.tournament = Tournament(n);
        std::vector<std::vector<bool>> raw(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                long long v = parse_number(rows[i][j], 0, 1, "arc entry");
                if (i == j && v != 0) {
                    throw ParseError(rows[i][j].line, rows[i][j].col, "diagonal entry must be 0");
                }
                raw[i][j] = v == 1;
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (raw[i][j] == raw[j][i]) {
                    throw ParseError(rows[j][i].line, rows[j][i].col,
                                     "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") must have exactly one arc");
                }
                if (raw[i][j]) {
                    doc.tournament.set_arc(i, j);
                } else {
                    doc.tournament.set_arc(j, i);
                }
            }
        }
    }

    void parse_two_structure(const TokenLine& head, InputDocument& doc) {
        int n = parse_header_n(head, 2, "twostructure n");
        auto rows = take_matrix(n);
        doc.kind = InputKind::two_structure;
        doc.structure = TwoStructure(n);
        long long max_color = 0xFFFFFFFFll - 1;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                long long v = parse_number(rows[i][j], 0, max_color, "color entry");
                doc.structure.set(i, j, static_cast<ClassId>(v));
            }
        }
    }

    void parse_relation(const TokenLine& head, InputDocument& doc) {
        int n = parse_header_n(head, 2, "relation n");
        auto rows = take_matrix(n);
        doc.kind = InputKind::relation;
        long long max_class = 0xFFFFFFFFll - 1;
        std::vector<std::vector<ClassId>> cells(n, std::vector<ClassId>(n, 0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                long long v = parse_number(rows[i][j], 0, max_class, "class entry");
                cells[i][j] = static_cast<ClassId>(v);
            }
        }
        doc.relation = HomogeneousRelation::from_classes(n, cells);
    }

    std::string source_;
    std::vector<TokenLine> lines_;
    std::size_t next_ = 0;
};

}  // namespace

InputDocument parse_input(std::istream& in, const std::string& source) {
    return Parser(in, source).run();
}

InputDocument parse_input_file(const std::string& path) {
    if (path == "-") return parse_input(std::cin, "<stdin>");
    std::ifstream file(path);
    if (!file) throw ParseError(0, 0, "cannot open input file: " + path);
    return parse_input(file, path);
}

HomogeneousRelation InputDocument::to_relation() const {
    switch (kind) {
        case InputKind::graph:
            return build_standard_relation(graph);
        case InputKind::tournament:
            return build_standard_relation(tournament);
        case InputKind::two_structure:
            return build_standard_relation(structure);
        case InputKind::relation:
            return relation;
    }
    throw Error("invalid input kind");
}

}  // namespace umod
