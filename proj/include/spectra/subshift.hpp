#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spectra/word.hpp"

namespace spectra::sft {

// Subshift of finite type as a digraph on equal-length words: an edge v -> w
// exists when the last |v|-1 digits of v equal the first |w|-1 of w (and the
// pair is admitted). Bi-infinite admissible sequences are the bi-infinite
// paths.
class TransitionGraph {
public:
    TransitionGraph() = default;
    // All overlap edges among the given equal-length words.
    TransitionGraph(std::vector<Word> vertices, int alphabet_bound);
    // Explicit edge subset; every pair must satisfy the overlap condition
    // (vacuous for length-1 words, so arbitrary digraphs live on letters).
    TransitionGraph(std::vector<Word> vertices, const std::vector<std::pair<Word, Word>>& edges,
                    int alphabet_bound);

    static TransitionGraph full_shift(int N);
    // Graph on the given equal-length words with all overlap edges.
    static TransitionGraph from_words(const std::vector<Word>& words, int alphabet_bound = 0);

    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    int word_length() const { return word_len_; }
    int alphabet_bound() const { return bound_; }
    const Word& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
    const std::vector<Word>& vertices() const { return vertices_; }
    const std::vector<int>& succ(int v) const { return succ_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& pred(int v) const { return pred_[static_cast<std::size_t>(v)]; }
    std::optional<int> find(const Word& w) const;

    // Digit appended when following edge u -> v, and digit exposed on the
    // left when stepping backwards.
    int appended_digit(int v) const { return vertices_[static_cast<std::size_t>(v)].digits().back(); }
    int prepended_digit(int u) const { return vertices_[static_cast<std::size_t>(u)].digits().front(); }

    // Iteratively removes vertices without successors or predecessors.
    // Returns the number of removed vertices; the graph may end up empty.
    std::size_t core_prune();

    TransitionGraph subgraph(const std::vector<int>& keep) const;
    TransitionGraph transposed() const;

    // Is `w` a factor of the graph's bi-infinite language?
    bool word_admissible(const Word& w) const;

    // Line-oriented text format: "vertex: succ1 succ2 ..." per line, words in
    // comma-digit syntax.
    std::string export_text() const;
    static TransitionGraph import_text(const std::string& text, int alphabet_bound = 0);

private:
    std::vector<Word> vertices_;
    std::vector<std::vector<int>> succ_, pred_;
    std::map<Word, int> index_;
    int word_len_ = 0;
    int bound_ = 1;
    void init_vertices(std::vector<Word> vertices, int bound);
    void rebuild_overlap_edges();
};

// Sequences every position of which starts a word of X; mixed lengths are
// padded to centered words of length 2 n(X)+1 when `normalize` is set.
struct FromWordSetResult {
    TransitionGraph graph;
    bool empty_core;
    std::size_t pruned_vertices;
};
FromWordSetResult from_word_set(const std::vector<Word>& X, bool normalize);

enum class ComponentKind { trivial_cycle, mixing, periodic_nonmixing };

struct TransientSet {
    int source_component;  // where the past limit set lives
    int sink_component;    // where the future limit set lives
};

struct Decomposition {
    std::vector<std::vector<int>> components;  // vertex sets, topological order
    std::vector<int> transient_states;         // singleton SCCs without a loop
    std::vector<int> component_of;             // vertex -> component id or -1
    std::vector<ComponentKind> kinds;
    std::vector<int> periods;                  // gcd of cycle lengths per component
    std::vector<TransientSet> transient_sets;  // one per ordered reachable pair
};

// Strongly connected components in topological order (no edges from a later
// to an earlier component), transient states, per-component kind and the
// transient sets between reachable component pairs.
Decomposition scc_decompose(const TransitionGraph& g);

struct Connector {
    Word between;     // digits strictly between the two blocks
    int path_edges;   // graph path length realizing it
};

// Uniform connector budget: the largest over ordered vertex pairs of the
// shortest (>= 1 edge) path length inside the component. Throws if the
// component is not mixing.
int mixing_constant(const TransitionGraph& g, const Decomposition& d, int component);

// Least m with a path of exactly m edges between every ordered pair
// (primitivity index); exact-length connectors exist for any length >= m.
int primitivity_index(const TransitionGraph& g, const Decomposition& d, int component);

// Word w such that a . w . b is admissible, deterministic per (a, b);
// shortest, with |w| <= mixing constant. Throws if the component is not
// mixing or the vertices lie outside it.
Connector connector(const TransitionGraph& g, const Decomposition& d, int component, int a, int b);

// As above but with |between| exactly `len` (needed for uniform splice
// blocks); len must admit a path of len + word_length edges.
Connector connector_exact(const TransitionGraph& g, const Decomposition& d, int component, int a,
                          int b, int len);

}  // namespace spectra::sft
