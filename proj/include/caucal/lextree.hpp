#pragma once

// A lexicographic family of deterministic trees presenting the ordinals
// omega^k: the order embedding into ordinals, the rational (regular) order
// presentation, and the constructions of cofinal-sequence systems on the
// tree, including the Bachmann-property refinement.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "caucal/funseq.hpp"
#include "caucal/graph.hpp"
#include "caucal/tree_types.hpp"

namespace caucal {

class LexTreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exponent tuple (i_1, ..., i_k): the vertex a_1^{i_1} ... a_k^{i_k}.
using VertexTuple = std::vector<Nat>;

class LexTree {
public:
    explicit LexTree(unsigned arity) : arity_(arity) {
        if (arity < 1 || arity > 12)
            throw LexTreeError("arity must be between 1 and 12");
        for (unsigned j = 0; j < arity; ++j)
            colors_.push_back(std::string(1, static_cast<char>('a' + j)));
    }

    unsigned arity() const { return arity_; }
    const std::vector<std::string>& colors() const { return colors_; }
    // 1-based block index
    const std::string& color(unsigned j) const { return colors_.at(j - 1); }

    VertexTuple root() const { return VertexTuple(arity_, 0); }

    void validate(const VertexTuple& v) const {
        if (v.size() != arity_)
            throw LexTreeError("vertex has " + std::to_string(v.size()) +
                               " blocks, expected " + std::to_string(arity_));
    }

    // 1-based index of the last nonzero block; 0 for the root.
    unsigned used_block(const VertexTuple& v) const {
        validate(v);
        for (unsigned j = arity_; j >= 1; --j)
            if (v[j - 1] > 0) return j;
        return 0;
    }

    // one a_j-child for each block j >= the current block index
    std::vector<std::pair<unsigned, VertexTuple>> children(const VertexTuple& v) const {
        unsigned first = std::max(used_block(v), 1u);
        std::vector<std::pair<unsigned, VertexTuple>> out;
        for (unsigned j = first; j <= arity_; ++j) {
            VertexTuple child = v;
            ++child[j - 1];
            out.push_back({j, std::move(child)});
        }
        return out;
    }

    std::optional<VertexTuple> parent(const VertexTuple& v) const {
        unsigned b = used_block(v);
        if (b == 0) return std::nullopt;
        VertexTuple p = v;
        --p[b - 1];
        return p;
    }

    // u's word is a prefix of w's word (w lies in the T-cone of u)
    bool in_cone(const VertexTuple& u, const VertexTuple& w) const {
        validate(u);
        validate(w);
        unsigned b = used_block(u);
        if (b == 0) return true;
        for (unsigned i = 1; i < b; ++i)
            if (u[i - 1] != w[i - 1]) return false;
        return w[b - 1] >= u[b - 1];
    }

    Nat depth(const VertexTuple& v) const {
        validate(v);
        Nat d = 0;
        for (Nat e : v) d += e;
        return d;
    }

    std::string format_vertex(const VertexTuple& v) const {
        validate(v);
        std::string out;
        for (unsigned j = 1; j <= arity_; ++j) {
            if (v[j - 1] == 0) continue;
            if (!out.empty()) out += ' ';
            out += color(j) + "^" + std::to_string(v[j - 1]);
        }
        return out.empty() ? "()" : out;
    }

    VertexTuple parse_vertex(std::string_view text) const {
        VertexTuple v = root();
        std::string s(text);
        std::istringstream ss(s);
        std::string token;
        bool any = false;
        int last = 0;
        while (ss >> token) {
            any = true;
            if (token == "()") {
                if (last != 0) throw LexTreeError("vertex parse: stray ()");
                continue;
            }
            char c = token[0];
            if (c < 'a' || c >= static_cast<char>('a' + arity_))
                throw LexTreeError("vertex parse: unknown color in " + token);
            int j = c - 'a' + 1;
            if (j <= last) throw LexTreeError("vertex parse: blocks out of order in " + s);
            last = j;
            Nat exp = 1;
            if (token.size() > 1) {
                if (token[1] != '^')
                    throw LexTreeError("vertex parse: expected '^' in " + token);
                try {
                    exp = std::stoull(token.substr(2));
                } catch (const std::exception&) {
                    throw LexTreeError("vertex parse: bad exponent in " + token);
                }
            }
            v[j - 1] = exp;
        }
        if (!any) throw LexTreeError("vertex parse: empty input");
        return v;
    }

    // lazy colored graph over all vertices, rooted at ()
    ColoredGraph graph() const {
        LexTree copy = *this;
        return ColoredGraph::lazy(colors_, format_vertex(root()),
                                  [copy](const std::string& key) {
                                      VertexTuple v = copy.parse_vertex(key);
                                      std::vector<GraphEdge> edges;
                                      for (const auto& [j, child] : copy.children(v))
                                          edges.push_back({copy.color(j),
                                                           copy.format_vertex(child)});
                                      return edges;
                                  });
    }

private:
    unsigned arity_;
    std::vector<std::string> colors_;
};

inline std::strong_ordering lex_compare(const LexTree& t, const VertexTuple& v1,
                                        const VertexTuple& v2) {
    t.validate(v1);
    t.validate(v2);
    for (unsigned i = 0; i < t.arity(); ++i)
        if (auto c = v1[i] <=> v2[i]; c != std::strong_ordering::equal) return c;
    return std::strong_ordering::equal;
}

// f(a_1^{i_1} ... a_k^{i_k}) = w^{k-1} i_1 + ... + w^0 i_k
inline Ordinal vertex_to_ordinal(const LexTree& t, const VertexTuple& v) {
    t.validate(v);
    Ordinal o;
    for (unsigned j = 1; j <= t.arity(); ++j)
        if (v[j - 1] > 0)
            o.append_term(Ordinal::natural(t.arity() - j), v[j - 1]);
    return o;
}

inline VertexTuple ordinal_to_vertex(const LexTree& t, const Ordinal& o) {
    VertexTuple v = t.root();
    for (const auto& term : o.terms()) {
        if (!term.exponent.terms().empty() && !term.exponent.terms()[0].exponent.is_zero())
            throw LexTreeError("ordinal out of range: " + to_string(o));
        Nat e = term.exponent.is_zero() ? 0 : term.exponent.terms()[0].coefficient;
        if (e >= t.arity()) throw LexTreeError("ordinal out of range: " + to_string(o));
        v[t.arity() - 1 - e] = term.coefficient;
    }
    return v;
}

inline bool is_limit_vertex(const LexTree& t, const VertexTuple& v) {
    unsigned b = t.used_block(v);
    return b != 0 && b < t.arity();
}

// L_c: union over j of (a_k^-)* ... (a_{j+1}^-)* a_j a_j* a_{j+1}* ... a_k*.
// A word of L_c marks a path v1 -> v2 in the inverse closure iff v1 < v2.
inline std::string order_language(const LexTree& t) {
    std::string out;
    for (unsigned j = 1; j <= t.arity(); ++j) {
        if (j > 1) out += "|";
        for (unsigned i = t.arity(); i > j; --i) out += "(" + t.color(i) + "-)*";
        out += t.color(j) + t.color(j) + "*";
        for (unsigned i = j + 1; i <= t.arity(); ++i) out += t.color(i) + "*";
    }
    return out;
}

// The unique R(T)-path word from v1 up to the common prefix and down to v2;
// requires v1 < v2. Used to validate construction output against the order
// automaton.
inline std::vector<std::string> witness_word(const LexTree& t, const VertexTuple& v1,
                                             const VertexTuple& v2) {
    if (lex_compare(t, v1, v2) != std::strong_ordering::less)
        throw LexTreeError("witness_word: requires v1 < v2");
    unsigned j = 1;
    while (v1[j - 1] == v2[j - 1]) ++j;
    std::vector<std::string> word;
    for (unsigned i = t.arity(); i > j; --i)
        for (Nat n = 0; n < v1[i - 1]; ++n) word.push_back(inverse_color(t.color(i)));
    for (Nat n = v1[j - 1]; n < v2[j - 1]; ++n) word.push_back(t.color(j));
    for (unsigned i = j + 1; i <= t.arity(); ++i)
        for (Nat n = 0; n < v2[i - 1]; ++n) word.push_back(t.color(i));
    return word;
}

// --- cofinality oracle ------------------------------------------------------------

// Whether the T-cone under u contains a subset cofinal in the limit vertex
// v0. Decided from exponent tuples: with t the last nonzero block of v0,
// vertices approaching v0 from below have the form
// (v0_1, ..., v0_{t-1}, v0_t - 1, n, 0, ..., 0) for large n.
inline bool cone_cofinal(const LexTree& tr, const VertexTuple& u, const VertexTuple& v0) {
    if (!is_limit_vertex(tr, v0)) throw LexTreeError("cone_cofinal: v0 is not a limit");
    unsigned t = tr.used_block(v0);
    unsigned b = tr.used_block(u);
    if (b == 0) return true;
    if (b > t + 1) return false;
    for (unsigned i = 1; i < std::min(b, t); ++i)
        if (u[i - 1] != v0[i - 1]) return false;
    if (b < t) return u[b - 1] <= v0[b - 1];
    if (b == t) return u[t - 1] + 1 <= v0[t - 1];
    // b == t + 1: block t must sit one below v0's
    return u[t - 1] + 1 == v0[t - 1];
}

// --- cofinal-sequence constructions -------------------------------------------------

// A per-limit-vertex sequence generator; entries are strictly increasing
// below the vertex with supremum equal to it.
struct CofinalRelation {
    std::string name;
    std::function<VertexTuple(const VertexTuple&, Nat)> seq;
};

// Walks the tree from the root through the vertices whose cones contain a
// subset cofinal in v0; the ones whose cone misses v0 form the chain P_{v0},
// and each emitted entry is the representative of B_i \ B_{i+1} with
// all-zero tail (the R_c-maximal element when the tail is empty).
inline std::vector<VertexTuple> construct_cofinal(const LexTree& t, const VertexTuple& v0,
                                                  Nat count, const WordAutomaton& aut) {
    if (!is_limit_vertex(t, v0))
        throw LexTreeError("construct_cofinal: not a limit vertex: " +
                           t.format_vertex(v0));
    std::vector<VertexTuple> entries;
    VertexTuple cur = t.root();
    Nat guard = 0;
    while (entries.size() < count) {
        std::optional<VertexTuple> next;
        for (const auto& [j, child] : t.children(cur)) {
            if (!cone_cofinal(t, child, v0)) continue;
            if (next)
                throw LexTreeError("construct_cofinal: branching cofinal cone at " +
                                   t.format_vertex(cur));
            next = child;
        }
        if (!next)
            throw LexTreeError("construct_cofinal: no cofinal cone below " +
                               t.format_vertex(cur));
        cur = *next;
        if (!t.in_cone(cur, v0) &&
            lex_compare(t, cur, v0) == std::strong_ordering::less) {
            if (!accepts(aut, witness_word(t, cur, v0)))
                throw LexTreeError("construct_cofinal: order automaton rejects entry " +
                                   t.format_vertex(cur));
            entries.push_back(cur);
        }
        if (++guard > count + 4 * t.arity() + 64)
            throw LexTreeError("construct_cofinal: walk did not converge");
    }
    return entries;
}

inline CofinalRelation cofinal_relation(const LexTree& t, WordAutomaton aut) {
    return {"d", [t, aut = std::move(aut)](const VertexTuple& v0, Nat n) {
                return construct_cofinal(t, v0, n + 1, aut).back();
            }};
}

// --- Bachmann refinement ----------------------------------------------------------

struct BachmannizeParams {
    std::size_t sample = 12;      // base entries sampled per limit vertex
    std::size_t window = 6;       // tail treated as "occurring infinitely often"
    Nat candidate_margin = 2;     // exponent margin for the interference scan
    Nat below_scan_cap = 256;     // entries scanned for the largest one below v0
    std::size_t extend_cap = 512; // base indexes scanned for filtered output
    ExploreBound bound{400000, 96};
};

namespace detail {

struct LexTypeContext {
    const LexTree& tree;
    const WordAutomaton& aut;
    WordAutomaton reversed;
    ColoredGraph closed{ColoredGraph::finite({}, {}, {})};
    Nat depth = 0;
    VertexTuple anchor;
    // per automaton state: switch sets from the anchor
    std::map<std::string, std::map<std::string, std::set<std::string>>> fwd_from_anchor;
    std::map<std::string, std::map<std::string, std::set<std::string>>> rev_from_anchor;

    LexTypeContext(const LexTree& tree, const WordAutomaton& aut, VertexTuple anchor)
        : tree(tree), aut(aut), anchor(std::move(anchor)) {
        for (const auto& ins : aut.instructions)
            reversed.add(ins.to,
                         is_inverse_color(ins.symbol) ? base_color(ins.symbol)
                                                      : inverse_color(ins.symbol),
                         ins.from);
        for (const auto& q : aut.states) reversed.states.insert(q);
    }

    void ensure_depth(Nat d, const ExploreBound& bound) {
        if (d <= depth && !fwd_from_anchor.empty()) return;
        depth = std::max(d, depth);
        ExploreBound b = bound;
        b.max_path_length = static_cast<std::size_t>(depth);
        Explored ex = explore(tree.graph(), tree.format_vertex(tree.root()), b);
        closed = inverse_closure(ex.graph);
        std::string a = tree.format_vertex(anchor);
        fwd_from_anchor.clear();
        rev_from_anchor.clear();
        for (const auto& q : aut.states) {
            fwd_from_anchor[q] = switch_fixpoint(aut, closed, a, q);
            rev_from_anchor[q] = switch_fixpoint(reversed, closed, a, q);
        }
    }

    // type of (w, anchor): forward via the reversed automaton from the
    // anchor, backward via the automaton from the anchor
    VertexPairType type_of(const VertexTuple& w, const BachmannizeParams& params) {
        ensure_depth(tree.depth(w) + 2, params.bound);
        std::string key = tree.format_vertex(w);
        VertexPairType t;
        for (const auto& [q1, sets] : rev_from_anchor)
            for (const auto& [q2, vs] : sets)
                if (vs.count(key)) t.forward.insert({q2, q1});
        for (const auto& [q1, sets] : fwd_from_anchor)
            for (const auto& [q2, vs] : sets)
                if (vs.count(key)) t.backward.insert({q1, q2});
        return t;
    }
};

// The deterministic cone choice: deepest ancestor of v0 whose cone holds the
// sampled tail of the base sequence, then its first child (in color order)
// whose cone holds the tail but misses v0.
inline VertexTuple select_anchor(const LexTree& t, const CofinalRelation& base,
                                 const VertexTuple& v0, const BachmannizeParams& params) {
    std::vector<VertexTuple> tail;
    for (std::size_t i = params.sample - params.window; i < params.sample; ++i)
        tail.push_back(base.seq(v0, i));
    auto holds_tail = [&](const VertexTuple& u) {
        for (const auto& w : tail)
            if (!t.in_cone(u, w)) return false;
        return true;
    };
    VertexTuple deepest = t.root();
    for (auto p = t.parent(v0); p; p = t.parent(*p)) {
        if (holds_tail(*p)) {
            deepest = *p;
            break;
        }
    }
    for (const auto& [j, child] : t.children(deepest)) {
        if (t.in_cone(child, v0)) continue;
        if (holds_tail(child)) return child;
    }
    throw LexTreeError("bachmannize: no qualifying cone below " +
                       t.format_vertex(deepest) + " for " + t.format_vertex(v0));
}

}  // namespace detail

inline std::vector<VertexTuple> bachmannize(const LexTree& t, const CofinalRelation& base,
                                            const VertexTuple& v0, Nat count,
                                            const WordAutomaton& aut,
                                            BachmannizeParams params = {}) {
    if (!is_limit_vertex(t, v0))
        throw LexTreeError("bachmannize: not a limit vertex: " + t.format_vertex(v0));
    if (params.window > params.sample || params.window == 0)
        throw LexTreeError("bachmannize: window must be within the sample");
    if (count == 0) return {};

    VertexTuple anchor = detail::select_anchor(t, base, v0, params);
    detail::LexTypeContext ctx(t, aut, anchor);

    // least type occurring in the sampled tail = least type assumed to occur
    // infinitely often
    std::vector<VertexTuple> sampled;
    for (std::size_t i = 0; i < params.sample; ++i) sampled.push_back(base.seq(v0, i));
    std::optional<VertexPairType> least;
    for (std::size_t i = params.sample - params.window; i < params.sample; ++i) {
        if (!t.in_cone(anchor, sampled[i])) continue;
        VertexPairType ty = ctx.type_of(sampled[i], params);
        if (!least || ty < *least) least = ty;
    }
    if (!least)
        throw LexTreeError("bachmannize: sampled tail misses the selected cone for " +
                           t.format_vertex(v0));

    // interference scan: other limit vertices v1 whose selected cone sits on
    // the ancestor path of v0. Their full base-entry families (supersets of
    // the type-filtered sets) provide the exclusion bound; using the
    // superset only strengthens the filter.
    Nat max_exp = 0;
    for (Nat e : v0) max_exp = std::max(max_exp, e);
    Nat cap = max_exp + params.candidate_margin;
    std::optional<VertexTuple> lower;  // entries must exceed this
    bool lower_strict = false;
    std::vector<VertexTuple> candidates;
    {
        // all limit tuples with every block <= cap
        VertexTuple v1 = t.root();
        auto rec = [&](auto&& self, unsigned j) -> void {
            if (j > t.arity()) {
                if (is_limit_vertex(t, v1) && v1 != v0) candidates.push_back(v1);
                return;
            }
            for (Nat e = 0; e <= cap; ++e) {
                v1[j - 1] = e;
                self(self, j + 1);
            }
            v1[j - 1] = 0;
        };
        rec(rec, 1);
    }
    for (const auto& v1 : candidates) {
        VertexTuple u1;
        try {
            u1 = detail::select_anchor(t, base, v1, params);
        } catch (const LexTreeError&) {
            continue;  // no qualifying cone: candidate exerts no constraint
        }
        if (!t.in_cone(u1, v0)) continue;  // anchor not on v0's ancestor path
        auto rel = lex_compare(t, v1, v0);
        if (rel == std::strong_ordering::less) {
            // every entry of v1's family is below v1; entries of the output
            // must be >= v1
            if (!lower || lex_compare(t, v1, *lower) == std::strong_ordering::greater) {
                lower = v1;
                lower_strict = false;
            }
        } else {
            // finitely many of v1's entries lie below v0; the output must
            // exceed the largest of them
            std::optional<VertexTuple> below;
            bool crossed = false;
            for (Nat n = 0; n < params.below_scan_cap; ++n) {
                VertexTuple w = base.seq(v1, n);
                if (lex_compare(t, w, v0) == std::strong_ordering::less) {
                    below = w;
                } else {
                    crossed = true;
                    break;
                }
            }
            if (!crossed)
                throw LexTreeError("bachmannize: entry scan for " + t.format_vertex(v1) +
                                   " did not cross " + t.format_vertex(v0));
            if (below) {
                auto c = lower ? lex_compare(t, *below, *lower)
                               : std::strong_ordering::greater;
                if (c == std::strong_ordering::greater ||
                    (c == std::strong_ordering::equal && !lower_strict)) {
                    lower = below;
                    lower_strict = true;
                }
            }
        }
    }

    std::vector<VertexTuple> out;
    for (std::size_t n = 0; n < params.extend_cap && out.size() < count; ++n) {
        VertexTuple w = n < sampled.size() ? sampled[n] : base.seq(v0, n);
        if (!t.in_cone(anchor, w)) continue;
        if (ctx.type_of(w, params) != *least) continue;
        if (lower) {
            auto c = lex_compare(t, w, *lower);
            if (c == std::strong_ordering::less) continue;
            if (c == std::strong_ordering::equal && lower_strict) continue;
        }
        out.push_back(w);
    }
    if (out.size() < count)
        throw LexTreeError("bachmannize: filtered sequence for " + t.format_vertex(v0) +
                           " exhausted after " + std::to_string(out.size()) + " entries");
    return out;
}

inline CofinalRelation bachmann_relation(const LexTree& t, CofinalRelation base,
                                         WordAutomaton aut, BachmannizeParams params = {}) {
    auto cache = std::make_shared<std::map<VertexTuple, std::vector<VertexTuple>>>();
    return {"e", [t, base = std::move(base), aut = std::move(aut), params,
                  cache](const VertexTuple& v0, Nat n) {
                auto& entries = (*cache)[v0];
                if (entries.size() <= n)
                    entries = bachmannize(t, base, v0, std::max<Nat>(n + 1, 8), aut, params);
                return entries[n];
            }};
}

// --- standard system on the tree ----------------------------------------------------

// Pulls the standard fundamental sequences back through f, for limit
// vertices with ordinal below cap.
inline CofinalRelation standard_relation_on_tree(const LexTree& t, const Ordinal& cap) {
    // cap must not exceed w^k (the supremum of the presented segment)
    if (compare(cap, Ordinal::omega_power(Ordinal::natural(t.arity()))) ==
        std::strong_ordering::greater)
        throw LexTreeError("standard_relation_on_tree: cap exceeds the presented segment");
    Ordinal cap_copy = cap;
    return {"st", [t, cap_copy](const VertexTuple& v, Nat n) {
                Ordinal o = vertex_to_ordinal(t, v);
                if (compare(o, cap_copy) != std::strong_ordering::less)
                    throw LexTreeError("standard_relation_on_tree: vertex at or above cap");
                return ordinal_to_vertex(t, standard_fundamental(o, n));
            }};
}

// The rank classification: rank 0 = successor vertices; rank n+1 = limits
// of rank-n vertices that are not limits of rank-n limits. Computed by
// descending through the standard sequences; equals the last CNF exponent.
inline unsigned a_rank(const LexTree& t, const VertexTuple& v) {
    unsigned b = t.used_block(v);
    if (b == 0) throw LexTreeError("a_rank: the minimum has no rank");
    if (b == t.arity()) return 0;
    Ordinal o = vertex_to_ordinal(t, v);
    VertexTuple approx = ordinal_to_vertex(t, standard_fundamental(o, 1));
    return 1 + a_rank(t, approx);
}

// --- cofinal-sequence system adapter --------------------------------------------------

// Presents a LexTree with a cofinal relation as a CofinalSystem over
// exponent tuples.
struct LexTreeSystem {
    using element = VertexTuple;
    LexTree tree;
    CofinalRelation relation;

    std::strong_ordering compare(const VertexTuple& a, const VertexTuple& b) const {
        return lex_compare(tree, a, b);
    }
    PointClass<VertexTuple> classify(const VertexTuple& a) const {
        unsigned b = tree.used_block(a);
        if (b == 0) return {PointKind::zero, std::nullopt};
        if (b == tree.arity()) {
            VertexTuple pred = a;
            --pred[b - 1];
            return {PointKind::successor, std::move(pred)};
        }
        return {PointKind::limit, std::nullopt};
    }
    VertexTuple minimum() const { return tree.root(); }
    VertexTuple seq(const VertexTuple& a, Nat n) const { return relation.seq(a, n); }
    std::string format(const VertexTuple& a) const { return tree.format_vertex(a); }
};

static_assert(CofinalSystem<LexTreeSystem>);

}  // namespace caucal
