#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spectra/subshift.hpp"

using namespace spectra;
using namespace spectra::sft;

namespace {

// Arbitrary digraph on n letter vertices from an adjacency mask.
TransitionGraph letters_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<Word> vs;
    for (int i = 1; i <= n; ++i) vs.push_back(Word({i}, n));
    std::vector<std::pair<Word, Word>> ew;
    for (auto [u, v] : edges) ew.emplace_back(Word({u + 1}, n), Word({v + 1}, n));
    return TransitionGraph(vs, ew, n);
}

struct ClosureOracle {
    int n;
    std::vector<std::vector<bool>> reach;  // >= 1 edge paths
    explicit ClosureOracle(int n_, const std::vector<std::pair<int, int>>& edges) : n(n_) {
        reach.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
        for (auto [u, v] : edges) reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                        reach[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                        reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    }
    bool same_scc(int u, int v) const {
        if (u == v) return true;
        return reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] &&
               reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
    }
    bool nonwandering(int v) const { return reach[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)]; }
};

void check_against_oracle(const TransitionGraph& g, int n,
                          const std::vector<std::pair<int, int>>& edges) {
    ClosureOracle oracle(n, edges);
    Decomposition d = scc_decompose(g);

    // Vertex classification matches: in a component iff on a cycle.
    for (int v = 0; v < n; ++v) {
        bool in_comp = d.component_of[static_cast<std::size_t>(v)] >= 0;
        CHECK(in_comp == oracle.nonwandering(v));
        if (!in_comp)
            CHECK(std::count(d.transient_states.begin(), d.transient_states.end(), v) == 1);
    }
    // Component partition matches the oracle equivalence.
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (d.component_of[static_cast<std::size_t>(u)] < 0 ||
                d.component_of[static_cast<std::size_t>(v)] < 0)
                continue;
            bool together = d.component_of[static_cast<std::size_t>(u)] ==
                            d.component_of[static_cast<std::size_t>(v)];
            CHECK(together == oracle.same_scc(u, v));
        }
    // Block-triangular order: no edges from later components to earlier ones.
    for (auto [u, v] : edges) {
        int cu = d.component_of[static_cast<std::size_t>(u)];
        int cv = d.component_of[static_cast<std::size_t>(v)];
        if (cu >= 0 && cv >= 0) CHECK(cu <= cv);
    }
    // Transient sets match reachability between distinct components.
    for (std::size_t a = 0; a < d.components.size(); ++a)
        for (std::size_t b = 0; b < d.components.size(); ++b) {
            if (a == b) continue;
            bool expect = oracle.reach[static_cast<std::size_t>(d.components[a][0])]
                                      [static_cast<std::size_t>(d.components[b][0])];
            bool got = false;
            for (const auto& t : d.transient_sets)
                if (t.source_component == static_cast<int>(a) &&
                    t.sink_component == static_cast<int>(b))
                    got = true;
            CHECK(got == expect);
        }
}

}  // namespace

TEST_CASE("from_word_set examples") {
    auto full = from_word_set({Word({1}, 2), Word({2}, 2)}, false);
    CHECK(!full.empty_core);
    CHECK(full.graph.size() == 2);
    CHECK(full.graph.succ(0).size() == 2);
    CHECK(full.graph.succ(1).size() == 2);

    auto golden = from_word_set({Word({1, 1}), Word({1, 2}), Word({2, 1})}, false);
    CHECK(golden.graph.size() == 3);
    auto idx = [&](std::initializer_list<int> w) { return *golden.graph.find(Word(w)); };
    CHECK(golden.graph.succ(idx({1, 1})) ==
          std::vector<int>{idx({1, 1}), idx({1, 2})});
    CHECK(golden.graph.succ(idx({1, 2})) == std::vector<int>{idx({2, 1})});
    CHECK(golden.graph.succ(idx({2, 1})) ==
          std::vector<int>{idx({1, 1}), idx({1, 2})});

    auto dead = from_word_set({Word({1, 2})}, false);
    CHECK(dead.empty_core);
    CHECK(dead.graph.empty());
}

TEST_CASE("from_word_set with mixed lengths pads per the appendix construction") {
    CHECK_THROWS(from_word_set({Word({1}), Word({2, 1})}, false));
    auto r = from_word_set({Word({1}, 2), Word({2, 1}, 2)}, true);
    REQUIRE(!r.graph.empty());
    // Language: every position starts 1 or 21, i.e. the golden mean shift.
    CHECK(r.graph.word_admissible(Word({1, 1, 1})));
    CHECK(r.graph.word_admissible(Word({1, 2, 1})));
    CHECK(r.graph.word_admissible(Word({2, 1, 2})));
    CHECK(!r.graph.word_admissible(Word({2, 2})));
    // Factor sets of length 3 agree with the golden mean graph exactly.
    auto golden = from_word_set({Word({1, 1}), Word({1, 2}), Word({2, 1})}, false);
    std::vector<std::vector<int>> all3;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c) all3.push_back({a, b, c});
    for (auto& w : all3)
        CHECK(r.graph.word_admissible(Word(w, 2)) == golden.graph.word_admissible(Word(w, 2)));
}

TEST_CASE("scc decomposition examples") {
    Decomposition full = scc_decompose(TransitionGraph::full_shift(2));
    CHECK(full.components.size() == 1);
    CHECK(full.transient_states.empty());
    CHECK(full.kinds[0] == ComponentKind::mixing);

    // a<->b, b->c, c->c
    TransitionGraph g1 = letters_graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
    Decomposition d1 = scc_decompose(g1);
    CHECK(d1.components.size() == 2);
    CHECK(d1.transient_states.empty());
    CHECK(d1.components[0] == std::vector<int>{0, 1});
    CHECK(d1.components[1] == std::vector<int>{2});
    CHECK(d1.kinds[0] == ComponentKind::trivial_cycle);  // pure 2-cycle
    CHECK(d1.periods[0] == 2);
    CHECK(d1.kinds[1] == ComponentKind::trivial_cycle);  // fixed point
    REQUIRE(d1.transient_sets.size() == 1);
    CHECK(d1.transient_sets[0].source_component == 0);
    CHECK(d1.transient_sets[0].sink_component == 1);

    // chain a->b->c with self-loops at a and c only
    TransitionGraph g2 = letters_graph(3, {{0, 0}, {0, 1}, {1, 2}, {2, 2}});
    Decomposition d2 = scc_decompose(g2);
    CHECK(d2.components.size() == 2);
    CHECK(d2.transient_states == std::vector<int>{1});
    REQUIRE(d2.transient_sets.size() == 1);
    CHECK(d2.transient_sets[0].source_component == 0);
    CHECK(d2.transient_sets[0].sink_component == 1);

    // single self-loop vertex: one trivial component
    Decomposition d3 = scc_decompose(letters_graph(1, {{0, 0}}));
    CHECK(d3.components.size() == 1);
    CHECK(d3.kinds[0] == ComponentKind::trivial_cycle);
}

TEST_CASE("golden mean shift classifies as one mixing component") {
    auto golden = from_word_set({Word({1, 1}), Word({1, 2}), Word({2, 1})}, false);
    Decomposition d = scc_decompose(golden.graph);
    CHECK(d.components.size() == 1);
    CHECK(d.transient_states.empty());
    CHECK(d.transient_sets.empty());
    CHECK(d.kinds[0] == ComponentKind::mixing);  // cycles of length 1 and 3
}

TEST_CASE("scc against closure oracle, exhaustive n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        int bits = n * n;
        for (unsigned mask = 0; mask < (1u << bits); ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (mask >> (u * n + v) & 1u) edges.emplace_back(u, v);
            TransitionGraph g = letters_graph(n, edges);
            check_against_oracle(g, n, edges);
        }
    }
}

TEST_CASE("scc against closure oracle, sampled n == 5 and random n <= 40") {
    std::mt19937_64 rng(20);
    for (int it = 0; it < 200000; ++it) {
        unsigned mask = static_cast<unsigned>(rng() & ((1u << 25) - 1));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v)
                if (mask >> (u * 5 + v) & 1u) edges.emplace_back(u, v);
        check_against_oracle(letters_graph(5, edges), 5, edges);
    }
    for (int it = 0; it < 200; ++it) {
        int n = 2 + static_cast<int>(rng() % 39);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng() % 100 < 8) edges.emplace_back(u, v);
        check_against_oracle(letters_graph(n, edges), n, edges);
    }
}

TEST_CASE("connectors") {
    // Full 2-shift: direct edge, empty connector.
    TransitionGraph full = TransitionGraph::full_shift(2);
    Decomposition df = scc_decompose(full);
    Connector c = connector(full, df, 0, *full.find(Word({1})), *full.find(Word({2})));
    CHECK(c.between.empty());
    CHECK(c.path_edges == 1);
    CHECK(mixing_constant(full, df, 0) == 1);

    // Golden mean: (2,1) -> (1,2) has a direct overlap edge.
    auto golden = from_word_set({Word({1, 1}), Word({1, 2}), Word({2, 1})}, false);
    Decomposition dg = scc_decompose(golden.graph);
    int a = *golden.graph.find(Word({2, 1})), b = *golden.graph.find(Word({1, 2}));
    Connector cg = connector(golden.graph, dg, 0, a, b);
    CHECK(cg.between.empty());
    CHECK(cg.path_edges == 1);
    Connector cg2 = connector(golden.graph, dg, 0, a, b);
    CHECK(cg.between == cg2.between);
    CHECK(cg.path_edges == cg2.path_edges);

    // Non-mixing 2-cycle: parity obstruction.
    TransitionGraph cyc = letters_graph(2, {{0, 1}, {1, 0}});
    Decomposition dc = scc_decompose(cyc);
    CHECK(dc.periods[0] == 2);
    CHECK_THROWS(connector(cyc, dc, 0, 0, 1));
    CHECK_THROWS(mixing_constant(cyc, dc, 0));
}

TEST_CASE("connector lengths bounded by the mixing constant; exact-length paths") {
    std::mt19937_64 rng(21);
    int tested = 0;
    while (tested < 40) {
        int n = 2 + static_cast<int>(rng() % 6);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng() % 100 < 35) edges.emplace_back(u, v);
        TransitionGraph g = letters_graph(n, edges);
        Decomposition d = scc_decompose(g);
        for (std::size_t comp = 0; comp < d.components.size(); ++comp) {
            if (d.kinds[comp] != ComponentKind::mixing) continue;
            int cmax = mixing_constant(g, d, static_cast<int>(comp));
            int diam = 0;
            for (int u : d.components[comp])
                for (int v : d.components[comp]) {
                    Connector cc = connector(g, d, static_cast<int>(comp), u, v);
                    CHECK(cc.path_edges <= cmax);
                    CHECK(static_cast<int>(cc.between.size()) <=
                          std::max(0, cmax - g.word_length()));
                    diam = std::max(diam, cc.path_edges);
                }
            CHECK(cmax <= static_cast<int>(d.components[comp].size()) + diam);
            int prim = primitivity_index(g, d, static_cast<int>(comp));
            for (int u : d.components[comp])
                for (int v : d.components[comp]) {
                    Connector ce = connector_exact(g, d, static_cast<int>(comp), u, v,
                                                   prim - g.word_length() >= 0
                                                       ? prim - g.word_length()
                                                       : prim);
                    CHECK(ce.path_edges >= 1);
                }
            ++tested;
        }
    }
}

TEST_CASE("export/import round trip") {
    TransitionGraph g = letters_graph(3, {{0, 0}, {0, 1}, {1, 2}, {2, 2}, {2, 0}});
    std::string text = g.export_text();
    TransitionGraph h = TransitionGraph::import_text(text, 3);
    CHECK(h.size() == g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        CHECK(h.vertex(static_cast<int>(v)) == g.vertex(static_cast<int>(v)));
        CHECK(h.succ(static_cast<int>(v)) == g.succ(static_cast<int>(v)));
    }
}

TEST_CASE("word admissibility") {
    auto golden = from_word_set({Word({1, 1}), Word({1, 2}), Word({2, 1})}, false);
    CHECK(golden.graph.word_admissible(Word({1, 2, 1, 1, 2})));
    CHECK(!golden.graph.word_admissible(Word({1, 2, 2})));
    CHECK(golden.graph.word_admissible(Word({2})));
    CHECK(!golden.graph.word_admissible(Word({3})));
}
