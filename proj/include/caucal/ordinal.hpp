#pragma once

// Ordinals below epsilon_0 in Cantor normal form, with the standard
// (Loeb-Wainer) fundamental sequences.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace caucal {

using Nat = std::uint64_t;

class OrdinalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Ordinal {
public:
    struct Term;

    Ordinal() = default;  // zero

    static Ordinal natural(Nat n);
    static Ordinal omega();
    // w^exponent * coefficient; coefficient 0 yields zero.
    static Ordinal omega_power(const Ordinal& exponent, Nat coefficient = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Appends a term; requires exponent strictly below the current last
    // exponent (CNF order). Internal building block for add/parse.
    void append_term(const Ordinal& exponent, Nat coefficient);

    std::strong_ordering operator<=>(const Ordinal& other) const;
    bool operator==(const Ordinal& other) const;

    std::size_t nesting_depth() const;

private:
    std::vector<Term> terms_;
};

struct Ordinal::Term {
    Ordinal exponent;
    Nat coefficient = 1;
};

enum class OrdinalKind { zero, successor, limit };

struct OrdinalClass {
    OrdinalKind kind;
    std::optional<Ordinal> predecessor;  // set iff kind == successor
};

inline std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    const std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = compare(ta[i].exponent, tb[i].exponent);
        if (c != std::strong_ordering::equal) return c;
        if (ta[i].coefficient != tb[i].coefficient)
            return ta[i].coefficient <=> tb[i].coefficient;
    }
    return ta.size() <=> tb.size();
}

inline std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
    return compare(*this, other);
}

inline bool Ordinal::operator==(const Ordinal& other) const {
    return compare(*this, other) == std::strong_ordering::equal;
}

inline void Ordinal::append_term(const Ordinal& exponent, Nat coefficient) {
    if (coefficient == 0) return;
    if (!terms_.empty() &&
        compare(terms_.back().exponent, exponent) != std::strong_ordering::greater)
        throw OrdinalError("append_term: exponent not strictly decreasing");
    terms_.push_back(Term{exponent, coefficient});
}

inline Ordinal Ordinal::natural(Nat n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(Term{Ordinal{}, n});
    return o;
}

inline Ordinal Ordinal::omega() {
    return omega_power(natural(1));
}

inline Ordinal Ordinal::omega_power(const Ordinal& exponent, Nat coefficient) {
    Ordinal o;
    if (coefficient > 0) o.terms_.push_back(Term{exponent, coefficient});
    return o;
}

inline std::size_t Ordinal::nesting_depth() const {
    std::size_t d = 0;
    for (const auto& t : terms_) d = std::max(d, 1 + t.exponent.nesting_depth());
    return d;
}

// Ordinal sum in CNF: terms of a with exponent below the leading exponent
// of b are absorbed.
inline Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const Ordinal& lead = b.terms().front().exponent;
    Ordinal r;
    Nat merged = b.terms().front().coefficient;
    for (const auto& t : a.terms()) {
        auto c = compare(t.exponent, lead);
        if (c == std::strong_ordering::greater) {
            r.append_term(t.exponent, t.coefficient);
        } else {
            if (c == std::strong_ordering::equal) merged += t.coefficient;
            break;
        }
    }
    r.append_term(lead, merged);
    for (std::size_t i = 1; i < b.terms().size(); ++i)
        r.append_term(b.terms()[i].exponent, b.terms()[i].coefficient);
    return r;
}

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }

inline OrdinalClass classify(const Ordinal& a) {
    if (a.is_zero()) return {OrdinalKind::zero, std::nullopt};
    const auto& last = a.terms().back();
    if (!last.exponent.is_zero()) return {OrdinalKind::limit, std::nullopt};
    Ordinal pred;
    for (std::size_t i = 0; i + 1 < a.terms().size(); ++i)
        pred.append_term(a.terms()[i].exponent, a.terms()[i].coefficient);
    pred.append_term(Ordinal{}, last.coefficient - 1);
    return {OrdinalKind::successor, pred};
}

inline Ordinal last_exponent(const Ordinal& a) {
    if (a.is_zero()) throw OrdinalError("last_exponent: zero has no terms");
    return a.terms().back().exponent;
}

// s_st(a, n) for limit a. Below w^w this is s_st(alpha + w^{m+1}, n) =
// alpha + w^m * n; above, the Loeb-Wainer completion applies: limit
// trailing exponents recurse, coefficients > 1 split off one power.
inline Ordinal standard_fundamental(const Ordinal& a, Nat n) {
    if (classify(a).kind != OrdinalKind::limit)
        throw OrdinalError("standard_fundamental: not a limit ordinal");
    const auto& last = a.terms().back();
    Ordinal head;
    for (std::size_t i = 0; i + 1 < a.terms().size(); ++i)
        head.append_term(a.terms()[i].exponent, a.terms()[i].coefficient);
    if (last.coefficient > 1) {
        head.append_term(last.exponent, last.coefficient - 1);
        return add(head, standard_fundamental(Ordinal::omega_power(last.exponent), n));
    }
    auto ec = classify(last.exponent);
    if (ec.kind == OrdinalKind::successor) {
        if (n > 0) head.append_term(*ec.predecessor, n);
        return head;
    }
    // limit exponent
    head.append_term(standard_fundamental(last.exponent, n), 1);
    return head;
}

inline Ordinal omega_tower(Nat k, Nat depth_cap = 64) {
    if (k > depth_cap) throw OrdinalError("omega_tower: depth cap exceeded");
    Ordinal o = Ordinal::natural(1);
    for (Nat i = 0; i < k; ++i) o = Ordinal::omega_power(o);
    return o;
}

// --- text syntax -----------------------------------------------------------
//
//   ordinal := term ('+' term)*
//   term    := nat | 'w' ('^' atom)? ('*' nat)?
//   atom    := nat | 'w' | '(' ordinal ')'
//
// Unsorted input is normalized through add.

namespace detail {

struct OrdinalParser {
    std::string_view s;
    std::size_t pos = 0;
    std::size_t depth_cap;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    Nat parse_nat() {
        skip_ws();
        if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
            throw OrdinalError("ordinal parse: expected number at position " +
                               std::to_string(pos));
        Nat v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            Nat d = static_cast<Nat>(s[pos] - '0');
            if (v > (UINT64_MAX - d) / 10) throw OrdinalError("ordinal parse: number too large");
            v = v * 10 + d;
            ++pos;
        }
        return v;
    }
    Ordinal parse_atom(std::size_t depth) {
        if (depth > depth_cap) throw OrdinalError("ordinal parse: nesting depth cap exceeded");
        skip_ws();
        if (eat('(')) {
            Ordinal o = parse_ordinal(depth + 1);
            if (!eat(')')) throw OrdinalError("ordinal parse: missing ')'");
            return o;
        }
        if (pos < s.size() && s[pos] == 'w') { ++pos; return Ordinal::omega(); }
        return Ordinal::natural(parse_nat());
    }
    Ordinal parse_term(std::size_t depth) {
        skip_ws();
        if (pos < s.size() && s[pos] == 'w') {
            ++pos;
            Ordinal expo = Ordinal::natural(1);
            if (eat('^')) expo = parse_atom(depth + 1);
            Nat coef = 1;
            if (eat('*')) coef = parse_nat();
            return Ordinal::omega_power(expo, coef);
        }
        return Ordinal::natural(parse_nat());
    }
    Ordinal parse_ordinal(std::size_t depth) {
        if (depth > depth_cap) throw OrdinalError("ordinal parse: nesting depth cap exceeded");
        Ordinal acc = parse_term(depth);
        while (eat('+')) acc = add(acc, parse_term(depth));
        return acc;
    }
};

}  // namespace detail

inline Ordinal parse_ordinal(std::string_view text, std::size_t depth_cap = 64) {
    detail::OrdinalParser p{text, 0, depth_cap};
    Ordinal o = p.parse_ordinal(0);
    p.skip_ws();
    if (p.pos != text.size())
        throw OrdinalError("ordinal parse: trailing input at position " +
                           std::to_string(p.pos));
    return o;
}

inline std::string to_string(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) out += "+";
        first = false;
        if (t.exponent.is_zero()) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (!(t.exponent == Ordinal::natural(1))) {
            std::string e = to_string(t.exponent);
            bool simple = e == "w" || e.find_first_of("+*^") == std::string::npos;
            out += "^";
            out += simple ? e : "(" + e + ")";
        }
        if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

}  // namespace caucal
