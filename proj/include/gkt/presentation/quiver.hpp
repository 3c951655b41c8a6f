#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gkt/errors.hpp"

namespace gkt {

struct Arrow {
    std::string label;
    std::size_t source;
    std::size_t target;
    bool operator==(const Arrow&) const = default;
};

/// Finite quiver. Vertices and arrows are addressed by declaration index.
class Quiver {
public:
    Quiver() = default;

    std::size_t add_vertex(const std::string& label) {
        if (vertex_ids_.count(label) || arrow_ids_.count(label))
            throw InvalidArgument("duplicate label '" + label + "'");
        vertex_ids_[label] = vertices_.size();
        vertices_.push_back(label);
        return vertices_.size() - 1;
    }

    std::size_t add_arrow(const std::string& label, std::size_t source, std::size_t target) {
        if (vertex_ids_.count(label) || arrow_ids_.count(label))
            throw InvalidArgument("duplicate label '" + label + "'");
        if (source >= vertices_.size() || target >= vertices_.size())
            throw InvalidArgument("arrow '" + label + "' uses an undeclared vertex");
        arrow_ids_[label] = arrows_.size();
        arrows_.push_back({label, source, target});
        return arrows_.size() - 1;
    }

    std::size_t add_arrow(const std::string& label, const std::string& source, const std::string& target) {
        return add_arrow(label, vertex(source), vertex(target));
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::string& vertex_label(std::size_t v) const { return vertices_.at(v); }

    std::size_t vertex(const std::string& label) const {
        auto it = vertex_ids_.find(label);
        if (it == vertex_ids_.end()) throw InvalidArgument("undeclared vertex '" + label + "'");
        return it->second;
    }
    std::size_t arrow_index(const std::string& label) const {
        auto it = arrow_ids_.find(label);
        if (it == arrow_ids_.end()) throw InvalidArgument("undeclared arrow '" + label + "'");
        return it->second;
    }
    bool has_vertex(const std::string& label) const { return vertex_ids_.count(label) > 0; }
    bool has_arrow(const std::string& label) const { return arrow_ids_.count(label) > 0; }

    /// Same vertices, every arrow reversed (labels kept).
    Quiver opposite() const {
        Quiver q;
        for (const auto& v : vertices_) q.add_vertex(v);
        for (const auto& a : arrows_) q.add_arrow(a.label, a.target, a.source);
        return q;
    }

    bool operator==(const Quiver& o) const { return vertices_ == o.vertices_ && arrows_ == o.arrows_; }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> vertex_ids_;
    std::map<std::string, std::size_t> arrow_ids_;
};

/// A path, stored as its written word: `word = {beta, alpha}` is the path
/// "beta alpha", alpha applied first. The empty word is the trivial path e_v.
struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> word;

    std::size_t length() const { return word.size(); }
    bool is_trivial() const { return word.empty(); }

    static Path trivial(std::size_t v) { return Path{v, v, {}}; }

    static Path from_word(const Quiver& q, std::vector<std::size_t> word) {
        if (word.empty()) throw InvalidArgument("use Path::trivial for the empty word");
        for (std::size_t i = 0; i + 1 < word.size(); ++i)
            if (q.arrow(word[i]).source != q.arrow(word[i + 1]).target)
                throw InvalidArgument("arrows '" + q.arrow(word[i + 1]).label + "' and '" + q.arrow(word[i]).label +
                                      "' do not compose");
        Path p;
        p.source = q.arrow(word.back()).source;
        p.target = q.arrow(word.front()).target;
        p.word = std::move(word);
        return p;
    }

    /// Path from arrow labels in written order, e.g. {"beta","alpha"}.
    static Path from_labels(const Quiver& q, const std::vector<std::string>& labels) {
        std::vector<std::size_t> w;
        for (const auto& l : labels) w.push_back(q.arrow_index(l));
        return from_word(q, std::move(w));
    }

    /// Canonical order: by length, then trivial paths by vertex, then
    /// lexicographic on the written word by arrow index.
    friend bool operator<(const Path& a, const Path& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        if (a.word.empty()) return a.source < b.source;
        return a.word < b.word;
    }
    bool operator==(const Path&) const = default;

    std::string to_string(const Quiver& q) const {
        if (word.empty()) return "e_" + q.vertex_label(source);
        std::string s;
        for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "*" : "") + q.arrow(word[i]).label;
        return s;
    }
};

/// Concatenation `p * q`: q first, then p. Requires source(p) == target(q).
inline Path concat(const Path& p, const Path& q) {
    if (p.source != q.target) throw InvalidArgument("paths do not compose");
    Path r;
    r.source = q.source;
    r.target = p.target;
    r.word = p.word;
    r.word.insert(r.word.end(), q.word.begin(), q.word.end());
    return r;
}

/// Every path of length <= max_len in canonical order.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len) {
    std::vector<Path> out;
    std::vector<Path> layer;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) layer.push_back(Path::trivial(v));
    out = layer;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : layer)
            for (std::size_t a = 0; a < q.num_arrows(); ++a)
                if (q.arrow(a).source == p.target) {
                    Path r;
                    r.source = p.source;
                    r.target = q.arrow(a).target;
                    r.word.reserve(p.word.size() + 1);
                    r.word.push_back(a);
                    r.word.insert(r.word.end(), p.word.begin(), p.word.end());
                    next.push_back(std::move(r));
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

/// Linear combination of parallel paths.
template <class F>
struct Relation {
    std::vector<std::pair<typename F::Element, Path>> terms;

    std::size_t source() const { return terms.front().second.source; }
    std::size_t target() const { return terms.front().second.target; }
    std::size_t min_length() const {
        std::size_t m = terms.front().second.length();
        for (const auto& t : terms) m = std::min(m, t.second.length());
        return m;
    }
    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& t : terms) m = std::max(m, t.second.length());
        return m;
    }
};

template <class F>
void validate_relation(const F& field, const Quiver& q, const Relation<F>& r) {
    if (r.terms.empty()) throw InvalidRelation("relation with no terms");
    const auto& first = r.terms.front().second;
    for (const auto& [c, p] : r.terms) {
        if (field.is_zero(c)) throw InvalidRelation("relation term with zero coefficient: " + p.to_string(q));
        if (p.source != first.source || p.target != first.target)
            throw InvalidRelation("relation terms are not parallel: " + first.to_string(q) + " vs " + p.to_string(q));
        if (p.length() < 2)
            throw InvalidRelation("relation term " + p.to_string(q) + " has length < 2 (ideal would not be admissible)");
    }
}

}  // namespace gkt
