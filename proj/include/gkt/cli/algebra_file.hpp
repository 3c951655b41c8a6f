#pragma once

// Line-oriented algebra description files.
//
//   algebra example61A over GF(5)
//   vertices 1 2
//   arrow alpha : 1 -> 2
//   arrow beta : 2 -> 1
//   relation beta*alpha*beta*alpha = 0
//   option max_len 12
//
// Words are written right to left: beta*alpha is alpha first.

#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "gkt/morita/morita.hpp"

namespace gkt::cli {

struct Coefficient {
    std::int64_t num = 1, den = 1;
    bool operator==(const Coefficient&) const = default;
};

struct RelationTerm {
    Coefficient coeff;
    std::vector<std::string> word;  // written order
    std::size_t column = 0;
    bool operator==(const RelationTerm& o) const { return coeff == o.coeff && word == o.word; }
};

struct RelationLine {
    std::vector<RelationTerm> terms;
    std::size_t line = 0;
    bool operator==(const RelationLine& o) const { return terms == o.terms; }
};

struct ArrowDecl {
    std::string name, source, target;
    bool operator==(const ArrowDecl&) const = default;
};

struct AlgebraFile {
    std::string name;
    std::uint32_t prime = 0;  // 0 means QQ
    std::vector<std::string> vertices;
    std::vector<ArrowDecl> arrows;
    std::vector<RelationLine> relations;
    std::map<std::string, std::int64_t> options;

    bool rational() const { return prime == 0; }
    std::string field_string() const { return prime ? "GF(" + std::to_string(prime) + ")" : "QQ"; }
    std::int64_t option(const std::string& k, std::int64_t fallback) const {
        auto it = options.find(k);
        return it == options.end() ? fallback : it->second;
    }
    bool operator==(const AlgebraFile&) const = default;
};

inline const std::set<std::string>& known_options() {
    static const std::set<std::string> k{"max_len", "dim_cap", "iter_cap", "seed", "bound", "probe_depth"};
    return k;
}

namespace detail {

struct Token {
    enum Kind { Ident, Number, Symbol, End } kind = End;
    std::string text;
    std::size_t column = 0;  // 1-based
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

class Lexer {
public:
    Lexer(const std::string& line, std::size_t lineno) : s_(line), line_(lineno) { advance(); }

    const Token& peek() const { return cur_; }
    Token next() {
        Token t = cur_;
        advance();
        return t;
    }
    [[noreturn]] void fail(std::size_t col, const std::string& msg) const { throw ParseError(line_, col, msg); }
    [[noreturn]] void fail(const std::string& msg) const { fail(cur_.column, msg); }

    Token expect_ident(const std::string& what) {
        if (cur_.kind != Token::Ident) fail("expected " + what + (cur_.kind == Token::End ? "" : ", got '" + cur_.text + "'"));
        return next();
    }
    // vertex labels may be plain numbers
    Token expect_label(const std::string& what) {
        if (cur_.kind != Token::Ident && cur_.kind != Token::Number)
            fail("expected " + what + (cur_.kind == Token::End ? "" : ", got '" + cur_.text + "'"));
        return next();
    }
    void expect_symbol(const std::string& s) {
        if (cur_.kind != Token::Symbol || cur_.text != s)
            fail("expected '" + s + "'" + (cur_.kind == Token::End ? "" : ", got '" + cur_.text + "'"));
        next();
    }
    bool accept_symbol(const std::string& s) {
        if (cur_.kind == Token::Symbol && cur_.text == s) {
            next();
            return true;
        }
        return false;
    }
    void expect_end() {
        if (cur_.kind != Token::End) fail("unexpected '" + cur_.text + "'");
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        cur_ = Token{};
        cur_.column = pos_ + 1;
        if (pos_ >= s_.size()) return;
        char c = s_[pos_];
        if (ident_start(c)) {
            std::size_t b = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            cur_.kind = Token::Ident;
            cur_.text = s_.substr(b, pos_ - b);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            // labels like 1a are identifiers
            if (pos_ < s_.size() && ident_start(s_[pos_])) {
                while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
                cur_.kind = Token::Ident;
            } else {
                cur_.kind = Token::Number;
            }
            cur_.text = s_.substr(b, pos_ - b);
        } else if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
            cur_.kind = Token::Symbol;
            cur_.text = "->";
            pos_ += 2;
        } else if (std::string("*+-=:/()").find(c) != std::string::npos) {
            cur_.kind = Token::Symbol;
            cur_.text = std::string(1, c);
            ++pos_;
        } else {
            throw ParseError(line_, pos_ + 1, std::string("unexpected character '") + c + "'");
        }
    }

    std::string s_;
    std::size_t line_;
    std::size_t pos_ = 0;
    Token cur_;
};

inline std::int64_t to_int(const Lexer& lx, const Token& t) {
    try {
        std::size_t used = 0;
        auto v = std::stoll(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        lx.fail(t.column, "number '" + t.text + "' out of range");
    }
}

inline Coefficient normalize(std::int64_t n, std::int64_t d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    auto g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return {n, d};
}

}  // namespace detail

/// Parse an algebra file. Errors carry the line and column.
inline AlgebraFile parse(const std::string& text) {
    using detail::Lexer;
    using detail::Token;
    AlgebraFile out;
    bool have_header = false;
    std::map<std::string, std::size_t> arrow_line;
    std::set<std::string> vertex_set;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Lexer lx(line, lineno);
        if (lx.peek().kind == Token::End) continue;
        auto kw = lx.peek();
        if (kw.kind != Token::Ident) lx.fail("expected a keyword");
        lx.next();
        if (kw.text != "algebra" && !have_header) lx.fail(kw.column, "the first declaration must be 'algebra <name> over <field>'");

        if (kw.text == "algebra") {
            if (have_header) lx.fail(kw.column, "second 'algebra' line");
            out.name = lx.expect_label("an algebra name").text;
            auto over = lx.expect_ident("'over'");
            if (over.text != "over") lx.fail(over.column, "expected 'over', got '" + over.text + "'");
            auto fld = lx.expect_ident("GF(<p>) or QQ");
            if (fld.text == "QQ") {
                out.prime = 0;
            } else if (fld.text == "GF") {
                lx.expect_symbol("(");
                auto p = lx.peek();
                if (p.kind != Token::Number) lx.fail("expected a prime");
                lx.next();
                auto v = detail::to_int(lx, p);
                try {
                    if (v < 2 || v >= (std::int64_t{1} << 31)) throw InvalidArgument("range");
                    PrimeField check(static_cast<std::uint32_t>(v));
                } catch (const InvalidArgument&) {
                    lx.fail(p.column, p.text + " is not a prime below 2^31");
                }
                out.prime = static_cast<std::uint32_t>(v);
                lx.expect_symbol(")");
            } else {
                lx.fail(fld.column, "unknown field '" + fld.text + "' (use GF(<p>) or QQ)");
            }
            lx.expect_end();
            have_header = true;
        } else if (kw.text == "vertices") {
            if (lx.peek().kind == Token::End) lx.fail("'vertices' needs at least one label");
            while (lx.peek().kind != Token::End) {
                auto v = lx.expect_label("a vertex label");
                if (!vertex_set.insert(v.text).second) lx.fail(v.column, "vertex '" + v.text + "' declared twice");
                out.vertices.push_back(v.text);
            }
        } else if (kw.text == "arrow") {
            auto name = lx.expect_ident("an arrow name");
            if (arrow_line.count(name.text)) lx.fail(name.column, "arrow '" + name.text + "' declared twice");
            lx.expect_symbol(":");
            auto s = lx.expect_label("a source vertex");
            if (!vertex_set.count(s.text)) lx.fail(s.column, "undeclared vertex '" + s.text + "'");
            lx.expect_symbol("->");
            auto t = lx.expect_label("a target vertex");
            if (!vertex_set.count(t.text)) lx.fail(t.column, "undeclared vertex '" + t.text + "'");
            lx.expect_end();
            arrow_line[name.text] = lineno;
            out.arrows.push_back({name.text, s.text, t.text});
        } else if (kw.text == "relation") {
            RelationLine rel;
            rel.line = lineno;
            bool first = true;
            std::optional<std::pair<std::string, std::string>> ends;  // (source, target) of the first term
            while (true) {
                auto start = lx.peek();
                std::int64_t sign = 1;
                if (lx.accept_symbol("-")) sign = -1;
                else if (!first && !lx.accept_symbol("+")) break;
                else if (first) lx.accept_symbol("+");
                first = false;
                RelationTerm term;
                term.column = start.column;
                if (lx.peek().kind == Token::Number) {
                    auto n = lx.next();
                    std::int64_t num = detail::to_int(lx, n), den = 1;
                    if (lx.accept_symbol("/")) {
                        auto d = lx.peek();
                        if (d.kind != Token::Number) lx.fail("expected a denominator");
                        lx.next();
                        den = detail::to_int(lx, d);
                        if (den == 0) lx.fail(d.column, "zero denominator");
                    }
                    if (num == 0) lx.fail(n.column, "zero coefficient");
                    term.coeff = detail::normalize(sign * num, den);
                    lx.expect_symbol("*");
                } else {
                    term.coeff = {sign, 1};
                }
                // word, written right to left
                std::string prev_source;
                std::string src, tgt;
                while (true) {
                    auto a = lx.expect_ident("an arrow");
                    auto it = std::find_if(out.arrows.begin(), out.arrows.end(),
                                           [&](const ArrowDecl& d) { return d.name == a.text; });
                    if (it == out.arrows.end()) lx.fail(a.column, "undeclared arrow '" + a.text + "'");
                    if (term.word.empty()) tgt = it->target;
                    else if (it->target != prev_source)
                        lx.fail(a.column, "'" + term.word.back() + "*" + a.text + "' does not compose");
                    prev_source = it->source;
                    src = it->source;
                    term.word.push_back(a.text);
                    if (!lx.accept_symbol("*")) break;
                }
                if (term.word.size() < 2) lx.fail(term.column, "relation terms need length at least 2");
                if (!ends) ends = std::make_pair(src, tgt);
                else if (ends->first != src || ends->second != tgt)
                    lx.fail(term.column, "relation terms are not parallel");
                rel.terms.push_back(std::move(term));
            }
            lx.expect_symbol("=");
            auto z = lx.peek();
            if (z.kind != Token::Number || z.text != "0") lx.fail("expected '0' on the right-hand side");
            lx.next();
            lx.expect_end();
            out.relations.push_back(std::move(rel));
        } else if (kw.text == "option") {
            auto key = lx.expect_ident("an option name");
            if (!known_options().count(key.text)) lx.fail(key.column, "unknown option '" + key.text + "'");
            auto v = lx.peek();
            if (v.kind != Token::Number) lx.fail("expected a non-negative integer");
            lx.next();
            lx.expect_end();
            out.options[key.text] = detail::to_int(lx, v);
        } else {
            lx.fail(kw.column, "unknown keyword '" + kw.text + "'");
        }
    }
    if (!have_header) throw ParseError(lineno ? lineno : 1, 1, "missing 'algebra' line");
    if (out.vertices.empty()) throw ParseError(lineno ? lineno : 1, 1, "no vertices declared");
    return out;
}

inline std::string term_string(const RelationTerm& t, bool leading) {
    std::string s;
    std::int64_t n = t.coeff.num;
    if (n < 0) s += leading ? "-" : " - ";
    else if (!leading) s += " + ";
    std::int64_t a = n < 0 ? -n : n;
    if (a != 1 || t.coeff.den != 1) {
        s += std::to_string(a);
        if (t.coeff.den != 1) s += "/" + std::to_string(t.coeff.den);
        s += "*";
    }
    for (std::size_t i = 0; i < t.word.size(); ++i) s += (i ? "*" : "") + t.word[i];
    return s;
}

inline std::string relation_string(const RelationLine& r) {
    std::string s;
    for (std::size_t i = 0; i < r.terms.size(); ++i) s += term_string(r.terms[i], i == 0);
    return s + " = 0";
}

/// Canonical text: comments and spacing dropped, options sorted.
inline std::string serialize(const AlgebraFile& f) {
    std::string s = "algebra " + f.name + " over " + f.field_string() + "\n";
    s += "vertices";
    for (const auto& v : f.vertices) s += " " + v;
    s += "\n";
    for (const auto& a : f.arrows) s += "arrow " + a.name + " : " + a.source + " -> " + a.target + "\n";
    for (const auto& r : f.relations) s += "relation " + relation_string(r) + "\n";
    for (const auto& [k, v] : f.options) s += "option " + k + " " + std::to_string(v) + "\n";
    return s;
}

template <class F>
typename F::Element coefficient(const F& field, const Coefficient& c, std::size_t line, std::size_t col) {
    auto n = field.from_int(c.num), d = field.from_int(c.den);
    if (field.is_zero(n) || field.is_zero(d))
        throw ParseError(line, col, "coefficient " + std::to_string(c.num) + "/" + std::to_string(c.den) +
                                        " vanishes or is undefined in the field");
    return field.mul(n, field.inv(d));
}

inline Quiver quiver_of(const AlgebraFile& f) {
    Quiver q;
    for (const auto& v : f.vertices) q.add_vertex(v);
    for (const auto& a : f.arrows) q.add_arrow(a.name, a.source, a.target);
    return q;
}

/// Build the algebra over `field` (which may differ from the file's own).
template <class F>
Algebra<F> build(const AlgebraFile& file, const F& field, std::optional<std::size_t> max_len = std::nullopt) {
    auto q = quiver_of(file);
    std::vector<Relation<F>> rels;
    for (const auto& r : file.relations) {
        Relation<F> rel;
        for (const auto& t : r.terms)
            rel.terms.push_back({coefficient(field, t.coeff, r.line, t.column), Path::from_labels(q, t.word)});
        rels.push_back(std::move(rel));
    }
    std::size_t ml = max_len ? *max_len : static_cast<std::size_t>(file.option("max_len", 12));
    return build_algebra<F>(q, rels, field, ml, file.name);
}

// ---------------------------------------------------------------------------
// Bimodule files: a direct sum of standard pieces over (B, A).
//
//   bimodule M
//   summand regular          # only when B = A
//   summand free 1 2         # B e_1 ⊗ e_2 A
//   summand simple 1 2       # the simple bimodule at (1, 2)

struct BimoduleSummand {
    std::string kind;  // regular | free | simple
    std::string left_vertex, right_vertex;
    std::size_t line = 0;
    bool operator==(const BimoduleSummand& o) const {
        return kind == o.kind && left_vertex == o.left_vertex && right_vertex == o.right_vertex;
    }
};

struct BimoduleFile {
    std::string name;
    std::vector<BimoduleSummand> summands;
    bool operator==(const BimoduleFile&) const = default;
};

inline BimoduleFile parse_bimodule(const std::string& text) {
    using detail::Lexer;
    using detail::Token;
    BimoduleFile out;
    bool header = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        Lexer lx(line, lineno);
        if (lx.peek().kind == Token::End) continue;
        auto kw = lx.expect_ident("a keyword");
        if (kw.text == "bimodule") {
            if (header) lx.fail(kw.column, "second 'bimodule' line");
            out.name = lx.expect_label("a name").text;
            lx.expect_end();
            header = true;
        } else if (kw.text == "summand") {
            if (!header) lx.fail(kw.column, "the first declaration must be 'bimodule <name>'");
            auto k = lx.expect_ident("regular, free or simple");
            BimoduleSummand s{k.text, "", "", lineno};
            if (k.text == "free" || k.text == "simple") {
                s.left_vertex = lx.expect_label("a vertex of the left algebra").text;
                s.right_vertex = lx.expect_label("a vertex of the right algebra").text;
            } else if (k.text != "regular") {
                lx.fail(k.column, "unknown summand kind '" + k.text + "'");
            }
            lx.expect_end();
            out.summands.push_back(std::move(s));
        } else {
            lx.fail(kw.column, "unknown keyword '" + kw.text + "'");
        }
    }
    if (!header) throw ParseError(1, 1, "missing 'bimodule' line");
    return out;
}

inline std::string serialize(const BimoduleFile& b) {
    std::string s = "bimodule " + b.name + "\n";
    for (const auto& x : b.summands) {
        s += "summand " + x.kind;
        if (x.kind != "regular") s += " " + x.left_vertex + " " + x.right_vertex;
        s += "\n";
    }
    return s;
}

template <class F>
Bimodule<F> build_bimodule(const BimoduleFile& file, const Algebra<F>& b, const Algebra<F>& a) {
    auto env = envelope(b, a);
    std::vector<Representation<F>> parts;
    auto vertex = [&](const Algebra<F>& alg, const std::string& label, std::size_t line) {
        if (!alg.quiver().has_vertex(label))
            throw ParseError(line, 1, "vertex '" + label + "' is not in " + alg.name());
        return alg.quiver().vertex(label);
    };
    for (const auto& s : file.summands) {
        if (s.kind == "regular") {
            if (!b.same_as(a)) throw ParseError(s.line, 1, "a regular summand needs the same algebra on both sides");
            parts.push_back(regular_bimodule(a).rep);
            continue;
        }
        std::size_t idx = vertex(b, s.left_vertex, s.line) * a.num_vertices() + vertex(a, s.right_vertex, s.line);
        parts.push_back(s.kind == "free" ? projective(env, idx) : simple(env, idx));
    }
    return Bimodule<F>{b, a, direct_sum(parts, env)};
}

}  // namespace gkt::cli
