// Single-binary command-line front end over the library: ordinal arithmetic,
// descent paths, fast-growing-hierarchy experiments, graph operations,
// higher-order pushdown runs, vertex pair types, and the lexicographic tree
// constructions. Exit 0 on success, 1 on domain errors, 2 on usage errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "caucal/fgh.hpp"
#include "caucal/funseq.hpp"
#include "caucal/graph.hpp"
#include "caucal/hopda.hpp"
#include "caucal/lextree.hpp"
#include "caucal/ordinal.hpp"
#include "caucal/rpq.hpp"
#include "caucal/tree_types.hpp"

using json = nlohmann::json;
using namespace caucal;

namespace {

struct RunConfig {
    std::string format = "text";
    std::size_t bound_vertices = 100000;
    std::size_t bound_path = 1000;
    Nat budget_steps = Nat{1} << 24;
    Nat budget_bits = Nat{1} << 20;
    unsigned long seed = 0;

    ExploreBound bound() const { return {bound_vertices, bound_path}; }
    EvalBudget budget() const { return {budget_steps, budget_bits}; }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return in;
}

std::vector<Ordinal> parse_ordinal_list(const std::string& text) {
    std::vector<Ordinal> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_ordinal(item));
    if (out.empty()) throw UsageError("empty ordinal list");
    return out;
}

std::vector<BigNat> parse_nat_list(const std::string& text) {
    std::vector<BigNat> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(BigNat(item));
    if (out.empty()) throw UsageError("empty number list");
    return out;
}

// funseq/fgh systems selected by name
template <class F>
void with_system(const std::string& name, F&& f) {
    if (name == "st")
        f(StandardOrdinalSystem{});
    else if (name == "sh")
        f(ShiftedStandardSystem{});
    else
        throw UsageError("unknown system: " + name + " (expected st or sh)");
}

void emit_graph(const RunConfig& cfg, const ColoredGraph& g, const std::string& name) {
    if (cfg.format == "dot") {
        std::cout << to_dot(g, name);
    } else if (cfg.format == "json") {
        json edges = json::array();
        for (const auto& v : g.vertices())
            for (const auto& e : g.successors(v))
                edges.push_back({{"from", v}, {"color", e.color}, {"to", e.to}});
        json out{{"vertices", g.vertices()}, {"edges", edges}};
        if (g.root()) out["root"] = *g.root();
        std::cout << out.dump(2) << "\n";
    } else if (cfg.format == "text") {
        for (const auto& v : g.vertices())
            for (const auto& e : g.successors(v))
                std::cout << v << " ; " << e.color << " ; " << e.to << "\n";
    } else {
        throw UsageError("graph output supports text, json, or dot");
    }
}

void emit_value(const RunConfig& cfg, const std::string& key, const std::string& value) {
    if (cfg.format == "json")
        std::cout << json{{key, value}}.dump() << "\n";
    else
        std::cout << value << "\n";
}

json path_json(const PathCode& p) {
    json a = json::array();
    for (Nat e : p) a.push_back(e);
    return a;
}

std::string path_text(const PathCode& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i)
        out += (i ? " " : "") + std::to_string(p[i]);
    return out.empty() ? "(empty)" : out;
}

std::string outcome_text(const EvalOutcome& o) {
    return o.exact() ? o.value->str() : outcome_string(o);
}

// --- command bodies -------------------------------------------------------------

void cmd_compare(const RunConfig& cfg, const std::string& lhs, const std::string& rhs) {
    auto c = compare(parse_ordinal(lhs), parse_ordinal(rhs));
    std::string word = c == std::strong_ordering::less      ? "less"
                       : c == std::strong_ordering::greater ? "greater"
                                                            : "equal";
    emit_value(cfg, "order", word);
}

void cmd_check(const RunConfig& cfg, const std::string& which, const std::string& system,
               const std::string& table_path, const std::string& limits_text, Nat n_cap) {
    auto limits = parse_ordinal_list(limits_text);
    auto report_out = [&](bool ok, json violations, const auto& lines) {
        if (cfg.format == "json") {
            std::cout << json{{"ok", ok}, {"violations", violations}}.dump(2) << "\n";
        } else {
            if (ok) std::cout << "ok\n";
            for (const auto& line : lines) std::cout << line << "\n";
        }
    };
    auto run = [&](const auto& sys) {
        if (which == "bachmann") {
            auto report = check_bachmann(sys, limits, n_cap);
            json vs = json::array();
            std::vector<std::string> lines;
            for (const auto& v : report.violations) {
                vs.push_back({{"x", to_string(v.x)},
                              {"n", v.n},
                              {"y", to_string(v.y)},
                              {"s_x_n", to_string(v.s_x_n)},
                              {"s_y_0", to_string(v.s_y_0)}});
                lines.push_back("violation: x=" + to_string(v.x) + " n=" +
                                std::to_string(v.n) + " y=" + to_string(v.y));
            }
            report_out(report.ok(), vs, lines);
        } else {
            auto report = check_schmidt_coherent(sys, limits, n_cap);
            json vs = json::array();
            std::vector<std::string> lines;
            for (const auto& v : report.violations) {
                vs.push_back({{"x", to_string(v.x)},
                              {"n", v.n},
                              {"s_x_n", to_string(v.s_x_n)},
                              {"s_x_n1", to_string(v.s_x_n1)}});
                lines.push_back("violation: x=" + to_string(v.x) + " n=" +
                                std::to_string(v.n));
            }
            report_out(report.ok(), vs, lines);
        }
    };
    if (!table_path.empty()) {
        if (system != "st")
            throw UsageError("--table overrides apply to the standard system only");
        auto in = open_input(table_path);
        run(load_table_system(in, StandardOrdinalSystem{}));
    } else {
        with_system(system, run);
    }
}

void cmd_dominate(const RunConfig& cfg, const std::string& sys1, const std::string& sys2,
                  const std::string& a, const std::string& b, const std::string& xs) {
    with_system(sys1, [&](const auto& s1) {
        with_system(sys2, [&](const auto& s2) {
            auto table = domination_experiment(s1, s2, parse_ordinal(a), parse_ordinal(b),
                                               parse_nat_list(xs), cfg.budget());
            if (cfg.format == "csv") {
                std::cout << domination_csv(table);
            } else if (cfg.format == "json") {
                json rows = json::array();
                for (const auto& r : table.rows)
                    rows.push_back({{"x", r.x.str()},
                                    {"lhs", outcome_text(r.lhs)},
                                    {"rhs", outcome_text(r.rhs)},
                                    {"verdict", to_string(r.verdict)}});
                json out{{"rows", rows}};
                out["crossover"] =
                    table.crossover ? json(table.crossover->str()) : json(nullptr);
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& r : table.rows)
                    std::cout << r.x << " " << outcome_text(r.lhs) << " "
                              << outcome_text(r.rhs) << " " << to_string(r.verdict)
                              << "\n";
                std::cout << "crossover: "
                          << (table.crossover ? table.crossover->str() : "none") << "\n";
            }
        });
    });
}

void cmd_coherent(const RunConfig& cfg, const std::string& system, const std::string& a,
                  const std::string& b, const std::string& xs) {
    with_system(system, [&](const auto& sys) {
        auto report = check_coherent_dom(sys, parse_ordinal(a), parse_ordinal(b),
                                         parse_nat_list(xs), cfg.budget());
        if (cfg.format == "json") {
            json rows = json::array();
            for (const auto& r : report.rows)
                rows.push_back(
                    {{"x", r.x.str()},
                     {"upper", outcome_text(r.upper)},
                     {"lower", outcome_text(r.lower)},
                     {"status", r.status == CoherentDomRow::Status::holds ? "holds"
                                : r.status == CoherentDomRow::Status::violated
                                    ? "violated"
                                    : "inconclusive"}});
            std::cout << json{{"path", path_json(report.path)},
                              {"measure", report.measure},
                              {"ok", report.ok()},
                              {"rows", rows}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << "path: " << path_text(report.path) << "\n";
            std::cout << "measure: " << report.measure << "\n";
            for (const auto& r : report.rows)
                std::cout << r.x << " " << outcome_text(r.upper) << " "
                          << outcome_text(r.lower) << "\n";
            std::cout << (report.ok() ? "ok" : "violated") << "\n";
        }
    });
}

void cmd_query(const RunConfig& cfg, const std::string& input, const std::string& from,
               const std::string& pattern) {
    auto in = open_input(input);
    auto g = parse_graph(in);
    auto res = regular_path_query(g, from, pattern, cfg.bound());
    if (cfg.format == "json") {
        json targets = json::object();
        for (const auto& [t, w] : res.targets) targets[t] = w;
        std::cout << json{{"targets", targets}, {"complete", res.complete}}.dump(2)
                  << "\n";
    } else {
        for (const auto& [t, w] : res.targets) {
            std::cout << t << " :";
            for (const auto& c : w) std::cout << " " << c;
            std::cout << "\n";
        }
    }
}

void cmd_hopda_run(const RunConfig& cfg, const std::string& input, std::size_t max_length) {
    auto in = open_input(input);
    auto sys = parse_pushdown_system(in);
    auto words = accepted_words(sys, max_length, cfg.bound());
    if (cfg.format == "json") {
        json out = json::array();
        for (const auto& w : words) out.push_back(w);
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& w : words) {
            std::string line;
            for (const auto& s : w) line += (line.empty() ? "" : " ") + s;
            std::cout << (line.empty() ? "(empty)" : line) << "\n";
        }
    }
}

void cmd_types(const RunConfig& cfg, const std::string& tree_path,
               const std::string& automaton_path, const std::string& mode,
               const std::vector<std::string>& vertices) {
    auto tin = open_input(tree_path);
    auto g = parse_graph(tin);
    auto ain = open_input(automaton_path);
    auto aut = parse_automaton(ain);
    VertexPairType result;
    if (mode == "pair") {
        result = pair_type(aut, g, vertices[0], vertices[1], cfg.bound());
    } else if (mode == "collinear") {
        result = compose_collinear(
            pair_type(aut, g, vertices[0], vertices[1], cfg.bound()),
            pair_type(aut, g, vertices[1], vertices[2], cfg.bound()));
    } else {
        result = compose_forked(
            pair_type(aut, g, vertices[0], vertices[1], cfg.bound()),
            pair_type(aut, g, vertices[0], vertices[2], cfg.bound()),
            pair_type(aut, g, vertices[1], vertices[3], cfg.bound()));
    }
    emit_value(cfg, "type", serialize(result));
}

void emit_vertex_sequence(const LexTree& t, const std::vector<VertexTuple>& entries) {
    // cofinal sequences are always emitted as JSON arrays of vertex strings
    json out = json::array();
    for (const auto& v : entries) out.push_back(t.format_vertex(v));
    std::cout << out.dump() << "\n";
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"ordinal notations in families of tree-presented graphs"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv", "dot"}));
    app.add_option("--bound-vertices", cfg.bound_vertices, "exploration vertex cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--bound-path", cfg.bound_path, "exploration path length cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-steps", cfg.budget_steps, "evaluation step budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-bits", cfg.budget_bits, "evaluation bit budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized suites");

    std::function<void()> action;

    // ordinal arithmetic
    {
        auto* c = app.add_subcommand("compare", "compare two ordinals");
        auto lhs = std::make_shared<std::string>();
        auto rhs = std::make_shared<std::string>();
        c->add_option("--lhs", *lhs)->required();
        c->add_option("--rhs", *rhs)->required();
        c->callback([&, lhs, rhs] {
            action = [&, lhs, rhs] { cmd_compare(cfg, *lhs, *rhs); };
        });
    }
    {
        auto* c = app.add_subcommand("add", "ordinal sum");
        auto lhs = std::make_shared<std::string>();
        auto rhs = std::make_shared<std::string>();
        c->add_option("--lhs", *lhs)->required();
        c->add_option("--rhs", *rhs)->required();
        c->callback([&, lhs, rhs] {
            action = [&, lhs, rhs] {
                emit_value(cfg, "sum", to_string(add(parse_ordinal(*lhs), parse_ordinal(*rhs))));
            };
        });
    }
    {
        auto* c = app.add_subcommand("fundseq", "standard fundamental sequence entry");
        auto ord = std::make_shared<std::string>();
        auto n = std::make_shared<Nat>(0);
        c->add_option("--ordinal", *ord)->required();
        c->add_option("--n", *n)->required();
        c->callback([&, ord, n] {
            action = [&, ord, n] {
                emit_value(cfg, "entry",
                           to_string(standard_fundamental(parse_ordinal(*ord), *n)));
            };
        });
    }
    {
        auto* c = app.add_subcommand("tower", "finite omega tower");
        auto k = std::make_shared<Nat>(0);
        auto cap = std::make_shared<Nat>(64);
        c->add_option("--k", *k)->required();
        c->add_option("--depth-cap", *cap);
        c->callback([&, k, cap] {
            action = [&, k, cap] { emit_value(cfg, "tower", to_string(omega_tower(*k, *cap))); };
        });
    }

    // descent paths
    auto* path = app.add_subcommand("path", "descent paths between ordinals");
    path->require_subcommand(1);
    {
        auto* c = path->add_subcommand("find", "greedy least-measure path");
        auto sys = std::make_shared<std::string>("st");
        auto from = std::make_shared<std::string>();
        auto to = std::make_shared<std::string>();
        c->add_option("--system", *sys);
        c->add_option("--from", *from)->required();
        c->add_option("--to", *to)->required();
        c->callback([&, sys, from, to] {
            action = [&, sys, from, to] {
                with_system(*sys, [&](const auto& s) {
                    PathCode p = greedy_min_path(s, parse_ordinal(*from), parse_ordinal(*to));
                    if (cfg.format == "json")
                        std::cout << json{{"path", path_json(p)},
                                          {"measure", path_measure(p)}}
                                         .dump()
                                  << "\n";
                    else
                        std::cout << "path: " << path_text(p)
                                  << "\nmeasure: " << path_measure(p) << "\n";
                });
            };
        });
    }
    {
        auto* c = path->add_subcommand("enumerate", "all paths within a measure cap");
        auto sys = std::make_shared<std::string>("st");
        auto from = std::make_shared<std::string>();
        auto to = std::make_shared<std::string>();
        auto cap = std::make_shared<Nat>(0);
        c->add_option("--system", *sys);
        c->add_option("--from", *from)->required();
        c->add_option("--to", *to)->required();
        c->add_option("--cap", *cap)->required();
        c->callback([&, sys, from, to, cap] {
            action = [&, sys, from, to, cap] {
                with_system(*sys, [&](const auto& s) {
                    auto paths =
                        enumerate_paths(s, parse_ordinal(*from), parse_ordinal(*to), *cap);
                    if (cfg.format == "json") {
                        json out = json::array();
                        for (const auto& p : paths) out.push_back(path_json(p));
                        std::cout << out.dump() << "\n";
                    } else {
                        for (const auto& p : paths) std::cout << path_text(p) << "\n";
                    }
                });
            };
        });
    }
    {
        auto* c = path->add_subcommand("stepdown", "canonical step-down chain");
        auto sys = std::make_shared<std::string>("st");
        auto ord = std::make_shared<std::string>();
        c->add_option("--system", *sys);
        c->add_option("--ordinal", *ord)->required();
        c->callback([&, sys, ord] {
            action = [&, sys, ord] {
                with_system(*sys, [&](const auto& s) {
                    auto chain = step_down_chain(s, parse_ordinal(*ord));
                    if (cfg.format == "json") {
                        json out = json::array();
                        for (const auto& x : chain) out.push_back(to_string(x));
                        std::cout << out.dump() << "\n";
                    } else {
                        for (const auto& x : chain) std::cout << to_string(x) << "\n";
                    }
                });
            };
        });
    }

    // sequence-system checkers
    auto* check = app.add_subcommand("check", "cofinal-sequence system properties");
    check->require_subcommand(1);
    for (const std::string which : {"bachmann", "schmidt"}) {
        auto* c = check->add_subcommand(
            which, which == std::string("bachmann") ? "step-ordering property"
                                                    : "step-down coherence");
        auto sys = std::make_shared<std::string>("st");
        auto table = std::make_shared<std::string>();
        auto limits = std::make_shared<std::string>();
        auto n_cap = std::make_shared<Nat>(3);
        c->add_option("--system", *sys);
        c->add_option("--table", *table, "override entries from a file");
        c->add_option("--limits", *limits, "comma-separated limit ordinals")->required();
        c->add_option("--n-cap", *n_cap);
        c->callback([&, which, sys, table, limits, n_cap] {
            action = [&, which, sys, table, limits, n_cap] {
                cmd_check(cfg, which, *sys, *table, *limits, *n_cap);
            };
        });
    }

    // fast-growing hierarchy
    auto* fgh = app.add_subcommand("fgh", "fast-growing hierarchy experiments");
    fgh->require_subcommand(1);
    {
        auto* c = fgh->add_subcommand("eval", "evaluate F_a(x) under budget");
        auto sys = std::make_shared<std::string>("st");
        auto ord = std::make_shared<std::string>();
        auto x = std::make_shared<std::string>();
        c->add_option("--system", *sys);
        c->add_option("--ordinal", *ord)->required();
        c->add_option("--x", *x)->required();
        c->callback([&, sys, ord, x] {
            action = [&, sys, ord, x] {
                with_system(*sys, [&](const auto& s) {
                    auto out = fgh_eval(s, parse_ordinal(*ord), BigNat(*x), cfg.budget());
                    if (cfg.format == "json") {
                        json j{{"outcome", out.exact() ? "exact" : "budget-exceeded"},
                               {"steps", out.steps_consumed}};
                        j["value"] = out.exact() ? json(out.value->str()) : json(nullptr);
                        std::cout << j.dump() << "\n";
                    } else
                        std::cout << outcome_text(out) << "\n";
                });
            };
        });
    }
    {
        auto* c = fgh->add_subcommand("dominate", "two-system domination table");
        auto sys1 = std::make_shared<std::string>("st");
        auto sys2 = std::make_shared<std::string>("st");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto xs = std::make_shared<std::string>();
        c->add_option("--sys1", *sys1);
        c->add_option("--sys2", *sys2);
        c->add_option("--a", *a)->required();
        c->add_option("--b", *b)->required();
        c->add_option("--xs", *xs, "comma-separated arguments")->required();
        c->callback([&, sys1, sys2, a, b, xs] {
            action = [&, sys1, sys2, a, b, xs] {
                cmd_dominate(cfg, *sys1, *sys2, *a, *b, *xs);
            };
        });
    }
    {
        auto* c = fgh->add_subcommand("coherent", "domination along the greedy path");
        auto sys = std::make_shared<std::string>("st");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto xs = std::make_shared<std::string>();
        c->add_option("--system", *sys);
        c->add_option("--a", *a)->required();
        c->add_option("--b", *b)->required();
        c->add_option("--xs", *xs)->required();
        c->callback([&, sys, a, b, xs] {
            action = [&, sys, a, b, xs] { cmd_coherent(cfg, *sys, *a, *b, *xs); };
        });
    }

    // colored graphs
    auto* graph = app.add_subcommand("graph", "colored graph operations");
    graph->require_subcommand(1);
    {
        auto* c = graph->add_subcommand("unfold", "path tree from a root");
        auto input = std::make_shared<std::string>();
        auto root = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(0);
        c->add_option("--input", *input)->required();
        c->add_option("--root", *root)->required();
        c->add_option("--depth", *depth)->required();
        c->callback([&, input, root, depth] {
            action = [&, input, root, depth] {
                auto in = open_input(*input);
                emit_graph(cfg, unfold(parse_graph(in), *root, *depth), "unfolding");
            };
        });
    }
    {
        auto* c = graph->add_subcommand("treegraph", "context copies joined by a fresh color");
        auto input = std::make_shared<std::string>();
        auto color = std::make_shared<std::string>("e");
        auto depth = std::make_shared<std::size_t>(0);
        c->add_option("--input", *input)->required();
        c->add_option("--color", *color);
        c->add_option("--depth", *depth)->required();
        c->callback([&, input, color, depth] {
            action = [&, input, color, depth] {
                auto in = open_input(*input);
                emit_graph(cfg, treegraph(parse_graph(in), *color, *depth), "treegraph");
            };
        });
    }
    {
        auto* c = graph->add_subcommand("query", "regular path query with witnesses");
        auto input = std::make_shared<std::string>();
        auto from = std::make_shared<std::string>();
        auto pattern = std::make_shared<std::string>();
        c->add_option("--input", *input)->required();
        c->add_option("--from", *from)->required();
        c->add_option("--pattern", *pattern)->required();
        c->callback([&, input, from, pattern] {
            action = [&, input, from, pattern] { cmd_query(cfg, *input, *from, *pattern); };
        });
    }
    {
        auto* c = graph->add_subcommand("dot", "DOT rendering");
        auto input = std::make_shared<std::string>();
        auto name = std::make_shared<std::string>("G");
        c->add_option("--input", *input)->required();
        c->add_option("--name", *name);
        c->callback([&, input, name] {
            action = [&, input, name] {
                auto in = open_input(*input);
                std::cout << to_dot(parse_graph(in), *name);
            };
        });
    }

    // higher-order pushdown systems
    auto* hopda = app.add_subcommand("hopda", "higher-order pushdown systems");
    hopda->require_subcommand(1);
    {
        auto* c = hopda->add_subcommand("run", "accepted words up to a length");
        auto input = std::make_shared<std::string>();
        auto max_length = std::make_shared<std::size_t>(0);
        c->add_option("--input", *input)->required();
        c->add_option("--max-length", *max_length)->required();
        c->callback([&, input, max_length] {
            action = [&, input, max_length] { cmd_hopda_run(cfg, *input, *max_length); };
        });
    }
    {
        auto* c = hopda->add_subcommand("graph", "explored configuration graph");
        auto input = std::make_shared<std::string>();
        c->add_option("--input", *input)->required();
        c->callback([&, input] {
            action = [&, input] {
                auto in = open_input(*input);
                auto sys = parse_pushdown_system(in);
                auto ex = explore(configuration_graph(sys),
                                  serialize(initial_configuration(sys)), cfg.bound());
                emit_graph(cfg, ex.graph, "configurations");
            };
        });
    }
    {
        auto* c = hopda->add_subcommand("contract", "epsilon-contracted configuration graph");
        auto input = std::make_shared<std::string>();
        c->add_option("--input", *input)->required();
        c->callback([&, input] {
            action = [&, input] {
                auto in = open_input(*input);
                auto sys = parse_pushdown_system(in);
                auto contracted = epsilon_contraction(configuration_graph(sys), cfg.bound());
                emit_graph(cfg, contracted.graph, "contracted");
            };
        });
    }
    {
        auto* c = hopda->add_subcommand("pump", "pumping threshold");
        auto level = std::make_shared<unsigned>(1);
        auto m = std::make_shared<Nat>(0);
        auto cc = std::make_shared<Nat>(1);
        c->add_option("--level", *level)->required();
        c->add_option("--m", *m)->required();
        c->add_option("--c", *cc)->required();
        c->callback([&, level, m, cc] {
            action = [&, level, m, cc] {
                emit_value(cfg, "threshold", pumping_threshold(*level, *m, *cc).str());
            };
        });
    }

    // vertex pair types
    auto* types = app.add_subcommand("types", "vertex pair types over tree automata");
    types->require_subcommand(1);
    {
        auto* c = types->add_subcommand("pair", "type of a vertex pair");
        auto tree = std::make_shared<std::string>();
        auto automaton = std::make_shared<std::string>();
        auto v1 = std::make_shared<std::string>();
        auto v2 = std::make_shared<std::string>();
        c->add_option("--tree", *tree)->required();
        c->add_option("--automaton", *automaton)->required();
        c->add_option("--v1", *v1)->required();
        c->add_option("--v2", *v2)->required();
        c->callback([&, tree, automaton, v1, v2] {
            action = [&, tree, automaton, v1, v2] {
                cmd_types(cfg, *tree, *automaton, "pair", {*v1, *v2});
            };
        });
    }
    {
        auto* c = types->add_subcommand("compose", "composition along tree positions");
        auto tree = std::make_shared<std::string>();
        auto automaton = std::make_shared<std::string>();
        auto mode = std::make_shared<std::string>();
        auto vs = std::make_shared<std::vector<std::string>>();
        c->add_option("--tree", *tree)->required();
        c->add_option("--automaton", *automaton)->required();
        c->add_option("--mode", *mode)->required()->check(CLI::IsMember({"collinear", "forked"}));
        c->add_option("--vertices", *vs,
                      "collinear: v1 v2 v3; forked: v1 v2 u1 u2")
            ->required()
            ->expected(3, 4);
        c->callback([&, tree, automaton, mode, vs] {
            action = [&, tree, automaton, mode, vs] {
                std::size_t need = *mode == "collinear" ? 3 : 4;
                if (vs->size() != need)
                    throw UsageError("--vertices expects " + std::to_string(need) +
                                     " entries for mode " + *mode);
                cmd_types(cfg, *tree, *automaton, *mode, *vs);
            };
        });
    }

    // lexicographic trees
    auto* lextree = app.add_subcommand("lextree", "lexicographic tree constructions");
    lextree->require_subcommand(1);
    {
        auto* c = lextree->add_subcommand("order", "order language for arity k");
        auto arity = std::make_shared<unsigned>(2);
        c->add_option("--arity", *arity)->required();
        c->callback([&, arity] {
            action = [&, arity] {
                emit_value(cfg, "language", order_language(LexTree(*arity)));
            };
        });
    }
    {
        auto* c = lextree->add_subcommand("cofinal", "constructed cofinal sequence");
        auto arity = std::make_shared<unsigned>(2);
        auto vertex = std::make_shared<std::string>();
        auto count = std::make_shared<Nat>(8);
        c->add_option("--arity", *arity)->required();
        c->add_option("--vertex", *vertex)->required();
        c->add_option("--count", *count);
        c->callback([&, arity, vertex, count] {
            action = [&, arity, vertex, count] {
                LexTree t(*arity);
                auto aut = from_regex(order_language(t));
                emit_vertex_sequence(
                    t, construct_cofinal(t, t.parse_vertex(*vertex), *count, aut));
            };
        });
    }
    {
        auto* c = lextree->add_subcommand("bachmannize", "refined cofinal sequence");
        auto arity = std::make_shared<unsigned>(2);
        auto vertex = std::make_shared<std::string>();
        auto count = std::make_shared<Nat>(8);
        c->add_option("--arity", *arity)->required();
        c->add_option("--vertex", *vertex)->required();
        c->add_option("--count", *count);
        c->callback([&, arity, vertex, count] {
            action = [&, arity, vertex, count] {
                LexTree t(*arity);
                auto aut = from_regex(order_language(t));
                auto base = cofinal_relation(t, aut);
                emit_vertex_sequence(
                    t, bachmannize(t, base, t.parse_vertex(*vertex), *count, aut));
            };
        });
    }
    {
        auto* c = lextree->add_subcommand("standard", "standard sequences pulled onto the tree");
        auto arity = std::make_shared<unsigned>(2);
        auto vertex = std::make_shared<std::string>();
        auto n = std::make_shared<Nat>(0);
        c->add_option("--arity", *arity)->required();
        c->add_option("--vertex", *vertex)->required();
        c->add_option("--n", *n)->required();
        c->callback([&, arity, vertex, n] {
            action = [&, arity, vertex, n] {
                LexTree t(*arity);
                auto rel = standard_relation_on_tree(
                    t, Ordinal::omega_power(Ordinal::natural(t.arity())));
                emit_value(cfg, "entry",
                           t.format_vertex(rel.seq(t.parse_vertex(*vertex), *n)));
            };
        });
    }

    // global flags remain usable after any subcommand
    auto enable_fallthrough = [](auto&& self, CLI::App* a) -> void {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            self(self, sub);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!action) return 2;
    try {
        action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int main(int argc, char** argv) { return run(argc, argv); }
