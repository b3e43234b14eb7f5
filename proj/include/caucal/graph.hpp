#pragma once

// Finitely-colored directed graphs: finite adjacency or lazy generation from
// a root, inverse closure, bounded unfolding, treegraph, determinism checks,
// and DOT/text emission. Vertices are identified by stable canonical string
// keys so bounded exploration of infinite graphs is sound.

#include <algorithm>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace caucal {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GraphEdge {
    std::string color;
    std::string to;
    bool operator==(const GraphEdge&) const = default;
    auto operator<=>(const GraphEdge&) const = default;
};

struct ExploreBound {
    std::size_t max_vertices = 100000;
    std::size_t max_path_length = 1000;
};

class ColoredGraph {
public:
    using Successors = std::function<std::vector<GraphEdge>(const std::string&)>;

    static ColoredGraph finite(std::vector<std::string> colors,
                               std::vector<std::string> vertices,
                               std::map<std::string, std::vector<GraphEdge>> adjacency,
                               std::optional<std::string> root = std::nullopt) {
        ColoredGraph g;
        g.colors_ = std::move(colors);
        g.vertices_ = std::move(vertices);
        g.adjacency_ = std::move(adjacency);
        g.root_ = std::move(root);
        for (const auto& [v, edges] : g.adjacency_)
            for (const auto& e : edges) g.require_color(e.color);
        return g;
    }

    static ColoredGraph lazy(std::vector<std::string> colors, std::string root,
                             Successors successors) {
        ColoredGraph g;
        g.colors_ = std::move(colors);
        g.root_ = std::move(root);
        g.successors_ = std::move(successors);
        return g;
    }

    bool is_finite() const { return !successors_; }
    const std::vector<std::string>& colors() const { return colors_; }
    const std::optional<std::string>& root() const { return root_; }

    const std::vector<std::string>& vertices() const {
        if (!is_finite()) throw GraphError("vertices(): graph is lazy");
        return vertices_;
    }

    bool has_vertex(const std::string& v) const {
        if (!is_finite()) return true;  // lazy membership is not decidable here
        return adjacency_.count(v) > 0 ||
               std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
    }

    std::vector<GraphEdge> successors(const std::string& v) const {
        if (successors_) return successors_(v);
        auto it = adjacency_.find(v);
        return it == adjacency_.end() ? std::vector<GraphEdge>{} : it->second;
    }

    bool has_color(const std::string& c) const {
        return std::find(colors_.begin(), colors_.end(), c) != colors_.end();
    }

private:
    void require_color(const std::string& c) const {
        if (!has_color(c)) throw GraphError("edge color not declared: " + c);
    }

    std::vector<std::string> colors_;
    std::vector<std::string> vertices_;
    std::map<std::string, std::vector<GraphEdge>> adjacency_;
    std::optional<std::string> root_;
    Successors successors_;
};

// --- exploration -----------------------------------------------------------

struct Explored {
    ColoredGraph graph;   // finite
    bool complete = true; // false iff a bound was hit
};

// Breadth-first materialization from `from` up to the bound.
inline Explored explore(const ColoredGraph& g, const std::string& from,
                        ExploreBound bound = {}) {
    std::vector<std::string> vertices;
    std::map<std::string, std::vector<GraphEdge>> adjacency;
    std::set<std::string> seen{from};
    std::deque<std::pair<std::string, std::size_t>> queue{{from, 0}};
    bool complete = true;
    while (!queue.empty()) {
        auto [v, depth] = queue.front();
        queue.pop_front();
        vertices.push_back(v);
        auto edges = g.successors(v);
        adjacency[v] = edges;
        for (const auto& e : edges) {
            if (seen.count(e.to)) continue;
            if (depth + 1 > bound.max_path_length || seen.size() >= bound.max_vertices) {
                complete = false;
                continue;
            }
            seen.insert(e.to);
            queue.emplace_back(e.to, depth + 1);
        }
    }
    // edges out of the frontier may point at unvisited vertices; keep the
    // graph closed by dropping them
    for (auto& [v, edges] : adjacency) {
        std::erase_if(edges, [&](const GraphEdge& e) {
            if (seen.count(e.to)) return false;
            complete = false;
            return true;
        });
    }
    return {ColoredGraph::finite(g.colors(), std::move(vertices), std::move(adjacency),
                                 from),
            complete};
}

// --- inverse closure ---------------------------------------------------------

inline std::string inverse_color(const std::string& c) { return c + "-"; }
inline bool is_inverse_color(const std::string& c) {
    return !c.empty() && c.back() == '-';
}
inline std::string base_color(const std::string& c) {
    return is_inverse_color(c) ? c.substr(0, c.size() - 1) : c;
}

// R(G): original edges plus a reversed edge with the inverse color for each.
inline ColoredGraph inverse_closure(const ColoredGraph& g) {
    if (!g.is_finite())
        throw GraphError("inverse_closure: requires a finite (or explored) graph");
    std::vector<std::string> colors = g.colors();
    for (const auto& c : g.colors()) colors.push_back(inverse_color(c));
    std::map<std::string, std::vector<GraphEdge>> adjacency;
    for (const auto& v : g.vertices()) adjacency[v] = g.successors(v);
    for (const auto& v : g.vertices())
        for (const auto& e : g.successors(v))
            adjacency[e.to].push_back({inverse_color(e.color), v});
    return ColoredGraph::finite(std::move(colors), g.vertices(), std::move(adjacency),
                                g.root());
}

// --- unfolding ----------------------------------------------------------------

// The tree of paths from v0 of length <= depth; vertices are serialized
// alternating vertex/color sequences.
inline ColoredGraph unfold(const ColoredGraph& g, const std::string& v0, std::size_t depth,
                           ExploreBound bound = {}) {
    if (g.is_finite() && !g.has_vertex(v0)) throw GraphError("unfold: vertex not found: " + v0);
    std::vector<std::string> vertices;
    std::map<std::string, std::vector<GraphEdge>> adjacency;
    struct Item {
        std::string key;
        std::string end;
        std::size_t len;
    };
    std::deque<Item> queue{{v0, v0, 0}};
    while (!queue.empty() && vertices.size() < bound.max_vertices) {
        auto [key, end, len] = queue.front();
        queue.pop_front();
        vertices.push_back(key);
        auto& out = adjacency[key];
        if (len >= depth) continue;
        for (const auto& e : g.successors(end)) {
            std::string child = key + "|" + e.color + "|" + e.to;
            out.push_back({e.color, child});
            queue.push_back({child, e.to, len + 1});
        }
    }
    return ColoredGraph::finite(g.colors(), std::move(vertices), std::move(adjacency), v0);
}

// --- treegraph ----------------------------------------------------------------

// Vertices are non-empty vertex sequences of length <= depth; each original
// edge is copied inside every shared-prefix context, and each sequence gets
// an e-edge to the sequence extended by its own last vertex.
inline ColoredGraph treegraph(const ColoredGraph& g, const std::string& e,
                              std::size_t depth) {
    if (!g.is_finite()) throw GraphError("treegraph: requires a finite graph");
    if (g.has_color(e)) throw GraphError("treegraph: color already used: " + e);
    if (depth < 1) throw GraphError("treegraph: depth must be >= 1");
    const auto& base = g.vertices();
    auto join = [](const std::vector<std::string>& seq) {
        std::string s;
        for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "~" : "") + seq[i];
        return s;
    };
    std::vector<std::string> vertices;
    std::map<std::string, std::vector<GraphEdge>> adjacency;
    std::vector<std::vector<std::string>> level;
    for (const auto& v : base) level.push_back({v});
    while (!level.empty()) {
        std::vector<std::vector<std::string>> next;
        for (const auto& seq : level) {
            std::string key = join(seq);
            vertices.push_back(key);
            auto& out = adjacency[key];
            std::vector<std::string> prefix(seq.begin(), seq.end() - 1);
            for (const auto& ed : g.successors(seq.back())) {
                auto target = prefix;
                target.push_back(ed.to);
                out.push_back({ed.color, join(target)});
            }
            if (seq.size() < depth) {
                auto ext = seq;
                ext.push_back(seq.back());
                out.push_back({e, join(ext)});
                for (const auto& v : base) {
                    auto child = seq;
                    child.push_back(v);
                    next.push_back(std::move(child));
                }
            }
        }
        level = std::move(next);
    }
    auto colors = g.colors();
    colors.push_back(e);
    return ColoredGraph::finite(std::move(colors), std::move(vertices),
                                std::move(adjacency));
}

// --- determinism ----------------------------------------------------------------

struct DeterminismVerdict {
    bool deterministic = true;
    bool complete = true;
    std::optional<std::string> offending_vertex;
    std::optional<std::string> offending_color;
};

inline DeterminismVerdict is_deterministic(const ColoredGraph& g, ExploreBound bound = {}) {
    DeterminismVerdict verdict;
    const ColoredGraph* target = &g;
    Explored ex{ColoredGraph::finite({}, {}, {}), true};
    if (!g.is_finite()) {
        if (!g.root()) throw GraphError("is_deterministic: lazy graph without root");
        ex = explore(g, *g.root(), bound);
        verdict.complete = ex.complete;
        target = &ex.graph;
    }
    for (const auto& v : target->vertices()) {
        std::set<std::string> seen;
        for (const auto& e : target->successors(v)) {
            if (!seen.insert(e.color).second) {
                verdict.deterministic = false;
                verdict.offending_vertex = v;
                verdict.offending_color = e.color;
                return verdict;
            }
        }
    }
    return verdict;
}

// --- emission --------------------------------------------------------------------

inline std::string escape_dot(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string to_dot(const ColoredGraph& g, const std::string& name = "G") {
    if (!g.is_finite()) throw GraphError("to_dot: requires a finite graph");
    std::ostringstream out;
    out << "digraph \"" << escape_dot(name) << "\" {\n";
    for (const auto& v : g.vertices()) out << "  \"" << escape_dot(v) << "\";\n";
    for (const auto& v : g.vertices())
        for (const auto& e : g.successors(v))
            out << "  \"" << escape_dot(v) << "\" -> \"" << escape_dot(e.to)
                << "\" [label=\"" << escape_dot(e.color) << "\"];\n";
    out << "}\n";
    return out.str();
}

// Text format: lines `vertex ; color ; vertex`. '#' starts a comment line.
inline ColoredGraph parse_graph(std::istream& in) {
    std::set<std::string> colors, vertices;
    std::map<std::string, std::vector<GraphEdge>> adjacency;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto p1 = t.find(';');
        auto p2 = t.find(';', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw GraphError("graph line " + std::to_string(lineno) +
                             ": expected `vertex ; color ; vertex`");
        std::string v1 = trim(t.substr(0, p1));
        std::string c = trim(t.substr(p1 + 1, p2 - p1 - 1));
        std::string v2 = trim(t.substr(p2 + 1));
        colors.insert(c);
        vertices.insert(v1);
        vertices.insert(v2);
        adjacency[v1].push_back({c, v2});
    }
    return ColoredGraph::finite({colors.begin(), colors.end()},
                                {vertices.begin(), vertices.end()}, std::move(adjacency));
}

}  // namespace caucal
