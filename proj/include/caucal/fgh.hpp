#pragma once

// Budget-capped evaluation of fast-growing hierarchies and domination
// experiments between two cofinal-sequence systems.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "caucal/funseq.hpp"

namespace caucal {

using BigNat = boost::multiprecision::cpp_int;

class FghError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvalBudget {
    Nat max_recursion_steps = Nat{1} << 24;
    Nat max_result_bits = Nat{1} << 20;
};

// Either an exact value or a budget-exceeded marker. Budget exhaustion is a
// first-class outcome, not a failure.
struct EvalOutcome {
    std::optional<BigNat> value;
    Nat steps_consumed = 0;
    bool exact() const { return value.has_value(); }
};

inline BigNat beth(Nat n, const BigNat& x, Nat max_result_bits = Nat{1} << 20) {
    if (x < 0) throw FghError("beth: negative argument");
    BigNat v = x;
    for (Nat i = 0; i < n; ++i) {
        if (v > max_result_bits)
            throw FghError("beth: result exceeds " + std::to_string(max_result_bits) +
                           " bits");
        v = BigNat(1) << v.convert_to<unsigned>();
    }
    return v;
}

namespace detail {

template <CofinalSystem S>
struct FghEvaluator {
    using E = typename S::element;
    const S& sys;
    EvalBudget budget;
    Nat steps = 0;
    std::map<std::pair<E, BigNat>, BigNat> memo;

    bool consume() { return ++steps <= budget.max_recursion_steps; }
    bool fits(const BigNat& v) const { return v == 0 || msb(v) < budget.max_result_bits; }

    // nullopt = budget exceeded
    std::optional<BigNat> eval(const E& a, const BigNat& x) {
        if (!consume()) return std::nullopt;
        auto cls = sys.classify(a);
        if (cls.kind == PointKind::zero) {
            BigNat r = x + 1;
            if (!fits(r)) return std::nullopt;
            return r;
        }
        auto key = std::make_pair(a, x);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::optional<BigNat> result;
        if (cls.kind == PointKind::successor) {
            // x-fold iterate of F_b starting at x
            BigNat v = x;
            for (BigNat i = 0; i < x; ++i) {
                auto r = eval(*cls.predecessor, v);
                if (!r) return std::nullopt;
                v = *r;
            }
            result = v;
        } else {
            if (x < 0 || x > BigNat(UINT64_MAX)) return std::nullopt;
            E t = sys.seq(a, x.convert_to<Nat>());
            result = eval(t, x);
            if (!result) return std::nullopt;
        }
        memo.emplace(key, *result);
        return result;
    }
};

}  // namespace detail

template <CofinalSystem S>
EvalOutcome fgh_eval(const S& sys, const typename S::element& a, const BigNat& x,
                     EvalBudget budget = {}) {
    detail::FghEvaluator<S> ev{sys, budget};
    auto v = ev.eval(a, x);
    return EvalOutcome{v, ev.steps};
}

// --- domination experiments ----------------------------------------------------

enum class Verdict { greater, not_greater, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::greater: return "greater";
        case Verdict::not_greater: return "not-greater";
        default: return "inconclusive";
    }
}

struct DominationRow {
    BigNat x;
    EvalOutcome lhs;  // F^{sys1}_a(x)
    EvalOutcome rhs;  // F^{sys2}_b(x)
    Verdict verdict;
};

struct DominationTable {
    std::vector<DominationRow> rows;
    // Least sampled x from which rhs > lhs held at every larger exact sample.
    std::optional<BigNat> crossover;
};

template <CofinalSystem S1, CofinalSystem S2>
DominationTable domination_experiment(const S1& sys1, const S2& sys2,
                                      const typename S1::element& a,
                                      const typename S2::element& b,
                                      const std::vector<BigNat>& x_values,
                                      EvalBudget budget = {}) {
    if (sys1.compare(a, b) != std::strong_ordering::less)
        throw FghError("domination_experiment: requires a < b in the shared ordering");
    DominationTable table;
    for (const BigNat& x : x_values) {
        DominationRow row{x, fgh_eval(sys1, a, x, budget), fgh_eval(sys2, b, x, budget),
                          Verdict::inconclusive};
        if (row.lhs.exact() && row.rhs.exact())
            row.verdict = *row.rhs.value > *row.lhs.value ? Verdict::greater
                                                          : Verdict::not_greater;
        table.rows.push_back(std::move(row));
    }
    std::optional<BigNat> last_bad;
    for (const auto& r : table.rows)
        if (r.verdict == Verdict::not_greater) last_bad = r.x;
    for (const auto& r : table.rows)
        if (r.verdict == Verdict::greater && (!last_bad || r.x > *last_bad)) {
            table.crossover = r.x;
            break;
        }
    return table;
}

struct CoherentDomRow {
    BigNat x;
    EvalOutcome upper;  // F_a(x)
    EvalOutcome lower;  // F_b(x)
    enum class Status { holds, violated, inconclusive } status;
};

struct CoherentDomReport {
    PathCode path;
    Nat measure = 0;
    std::vector<CoherentDomRow> rows;
    bool ok() const {
        for (const auto& r : rows)
            if (r.status == CoherentDomRow::Status::violated) return false;
        return true;
    }
};

// F_a(x) >= F_b(x) for all x >= |p|, p the greedy path from a to b.
template <CofinalSystem S>
CoherentDomReport check_coherent_dom(const S& sys, const typename S::element& a,
                                     const typename S::element& b,
                                     const std::vector<BigNat>& x_values,
                                     EvalBudget budget = {}) {
    CoherentDomReport report;
    report.path = greedy_min_path(sys, a, b);
    report.measure = path_measure(report.path);
    for (const BigNat& x : x_values) {
        if (x < BigNat(report.measure)) continue;
        CoherentDomRow row{x, fgh_eval(sys, a, x, budget), fgh_eval(sys, b, x, budget),
                           CoherentDomRow::Status::inconclusive};
        if (row.upper.exact() && row.lower.exact())
            row.status = *row.upper.value >= *row.lower.value
                             ? CoherentDomRow::Status::holds
                             : CoherentDomRow::Status::violated;
        report.rows.push_back(std::move(row));
    }
    return report;
}

// --- emission -------------------------------------------------------------------

inline std::string outcome_string(const EvalOutcome& o) {
    return o.exact() ? o.value->str() : "budget-exceeded";
}

inline std::string domination_csv(const DominationTable& t) {
    std::ostringstream out;
    out << "x,lhs,rhs,verdict\n";
    for (const auto& r : t.rows)
        out << r.x.str() << ',' << outcome_string(r.lhs) << ',' << outcome_string(r.rhs)
            << ',' << to_string(r.verdict) << '\n';
    return out.str();
}

}  // namespace caucal
