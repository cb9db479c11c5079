#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace archlab::test {

/// Recursive-descent recognizer for the Graphviz DOT language:
///
///   graph     : [strict] (graph | digraph) [ID] '{' stmt_list '}'
///   stmt_list : [stmt [';'] stmt_list]
///   stmt      : node_stmt | edge_stmt | attr_stmt | ID '=' ID | subgraph
///   attr_stmt : (graph | node | edge) attr_list
///   attr_list : '[' [a_list] ']' [attr_list]
///   a_list    : ID '=' ID [(';' | ',')] [a_list]
///   edge_stmt : (node_id | subgraph) edgeRHS [attr_list]
///   edgeRHS   : edgeop (node_id | subgraph) [edgeRHS]
///   node_stmt : node_id [attr_list]
///   node_id   : ID [port]
///   subgraph  : [subgraph [ID]] '{' stmt_list '}'
///
/// Throws std::runtime_error with the offset of the first syntax error.
class DotRecognizer {
public:
    explicit DotRecognizer(std::string_view text) : text_(text) {}

    void check() {
        skip();
        if (keyword("strict")) skip();
        if (keyword("digraph")) {
            directed_ = true;
        } else if (!keyword("graph")) {
            fail("expected graph or digraph");
        }
        skip();
        if (peek() != '{') id();
        expect('{');
        stmt_list();
        expect('}');
        skip();
        if (pos_ != text_.size()) fail("trailing input");
    }

private:
    void stmt_list() {
        for (;;) {
            skip();
            if (peek() == '}' || pos_ >= text_.size()) return;
            stmt();
            skip();
            if (peek() == ';') ++pos_;
        }
    }

    void stmt() {
        skip();
        if (keyword("graph") || keyword("node") || keyword("edge")) {
            attr_list(true);
            return;
        }
        if (peek() == '{' || at_keyword("subgraph")) {
            subgraph();
            edge_rhs();
            return;
        }
        id();
        skip();
        if (peek() == '=') {
            ++pos_;
            id();
            return;
        }
        port();
        edge_rhs();
        attr_list(false);
    }

    void subgraph() {
        if (keyword("subgraph")) {
            skip();
            if (peek() != '{') id();
        }
        expect('{');
        stmt_list();
        expect('}');
    }

    void edge_rhs() {
        skip();
        while (edge_op()) {
            skip();
            if (peek() == '{' || at_keyword("subgraph")) {
                subgraph();
            } else {
                id();
                port();
            }
            skip();
        }
    }

    bool edge_op() {
        if (text_.substr(pos_, 2) == "->") {
            if (!directed_) fail("'->' in undirected graph");
            pos_ += 2;
            return true;
        }
        if (text_.substr(pos_, 2) == "--") {
            if (directed_) fail("'--' in directed graph");
            pos_ += 2;
            return true;
        }
        return false;
    }

    void port() {
        skip();
        while (peek() == ':') {
            ++pos_;
            id();
            skip();
        }
    }

    void attr_list(bool required) {
        skip();
        if (peek() != '[') {
            if (required) fail("expected '['");
            return;
        }
        while (peek() == '[') {
            ++pos_;
            skip();
            while (peek() != ']') {
                id();
                expect('=');
                id();
                skip();
                if (peek() == ',' || peek() == ';') ++pos_;
                skip();
                if (pos_ >= text_.size()) fail("unterminated attribute list");
            }
            ++pos_;
            skip();
        }
    }

    void id() {
        skip();
        const char c = peek();
        if (c == '"') {
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\') ++pos_;
                ++pos_;
            }
            if (pos_ >= text_.size()) fail("unterminated string");
            ++pos_;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
            if (c == '-') ++pos_;
            const std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
            if (pos_ == start) fail("expected numeral");
            return;
        }
        fail("expected ID");
    }

    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool at_keyword(std::string_view word) const {
        if (text_.substr(pos_, word.size()) != word) return false;
        const std::size_t end = pos_ + word.size();
        return end >= text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_');
    }

    bool keyword(std::string_view word) {
        if (!at_keyword(word)) return false;
        pos_ += word.size();
        return true;
    }

    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_.substr(pos_, 2) == "//" || text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (text_.substr(pos_, 2) == "/*") {
                const std::size_t end = text_.find("*/", pos_ + 2);
                pos_ = end == std::string_view::npos ? text_.size() : end + 2;
            } else {
                return;
            }
        }
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("DOT syntax error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    bool directed_ = false;
};

inline bool is_valid_dot(std::string_view text) {
    try {
        DotRecognizer(text).check();
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

} // namespace archlab::test
