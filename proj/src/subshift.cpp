#include "spectra/subshift.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace spectra::sft {

namespace {

bool overlap_ok(const Word& u, const Word& v) {
    for (std::size_t k = 0; k + 1 < u.size(); ++k)
        if (u[k + 1] != v[k]) return false;
    return true;
}

}  // namespace

void TransitionGraph::init_vertices(std::vector<Word> vertices, int bound) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    vertices_ = std::move(vertices);
    if (vertices_.empty()) throw std::invalid_argument("TransitionGraph: no vertices");
    word_len_ = static_cast<int>(vertices_[0].size());
    if (word_len_ == 0) throw std::invalid_argument("TransitionGraph: empty vertex words");
    bound_ = bound;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (static_cast<int>(vertices_[i].size()) != word_len_)
            throw std::invalid_argument("TransitionGraph: vertex words of mixed length");
        for (int d : vertices_[i].digits()) bound_ = std::max(bound_, d);
        index_[vertices_[i]] = static_cast<int>(i);
    }
}

TransitionGraph::TransitionGraph(std::vector<Word> vertices, int bound) {
    init_vertices(std::move(vertices), bound);
    rebuild_overlap_edges();
}

TransitionGraph::TransitionGraph(std::vector<Word> vertices,
                                 const std::vector<std::pair<Word, Word>>& edges, int bound) {
    init_vertices(std::move(vertices), bound);
    succ_.assign(vertices_.size(), {});
    pred_.assign(vertices_.size(), {});
    for (const auto& [uw, vw] : edges) {
        auto u = find(uw), v = find(vw);
        if (!u || !v) throw std::invalid_argument("TransitionGraph: edge endpoint not a vertex");
        if (!overlap_ok(uw, vw))
            throw std::invalid_argument("TransitionGraph: edge violates the overlap condition");
        succ_[static_cast<std::size_t>(*u)].push_back(*v);
        pred_[static_cast<std::size_t>(*v)].push_back(*u);
    }
    for (auto& s : succ_) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    for (auto& p : pred_) {
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }
}

void TransitionGraph::rebuild_overlap_edges() {
    succ_.assign(vertices_.size(), {});
    pred_.assign(vertices_.size(), {});
    std::size_t L = static_cast<std::size_t>(word_len_);
    std::map<std::vector<int>, std::vector<int>> by_prefix;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const auto& d = vertices_[v].digits();
        by_prefix[std::vector<int>(d.begin(), d.end() - 1)].push_back(static_cast<int>(v));
    }
    if (L == 1) {
        // Every pair is overlap-admissible on length-1 words.
        for (std::size_t u = 0; u < vertices_.size(); ++u)
            for (std::size_t v = 0; v < vertices_.size(); ++v) {
                succ_[u].push_back(static_cast<int>(v));
                pred_[v].push_back(static_cast<int>(u));
            }
        return;
    }
    for (std::size_t u = 0; u < vertices_.size(); ++u) {
        const auto& d = vertices_[u].digits();
        auto it = by_prefix.find(std::vector<int>(d.begin() + 1, d.end()));
        if (it == by_prefix.end()) continue;
        for (int v : it->second) {
            succ_[u].push_back(v);
            pred_[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
        }
    }
}

TransitionGraph TransitionGraph::full_shift(int N) {
    std::vector<Word> letters;
    for (int a = 1; a <= N; ++a) letters.push_back(Word({a}, N));
    return TransitionGraph(std::move(letters), N);
}

TransitionGraph TransitionGraph::from_words(const std::vector<Word>& words, int bound) {
    return TransitionGraph(words, bound);
}

std::optional<int> TransitionGraph::find(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t TransitionGraph::core_prune() {
    std::size_t removed_total = 0;
    std::vector<bool> dead(vertices_.size(), false);
    std::vector<std::size_t> out(vertices_.size()), in(vertices_.size());
    std::queue<int> kill;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        out[v] = succ_[v].size();
        in[v] = pred_[v].size();
        if (out[v] == 0 || in[v] == 0) {
            dead[v] = true;
            kill.push(static_cast<int>(v));
        }
    }
    while (!kill.empty()) {
        int v = kill.front();
        kill.pop();
        ++removed_total;
        for (int s : succ_[static_cast<std::size_t>(v)])
            if (!dead[static_cast<std::size_t>(s)] && --in[static_cast<std::size_t>(s)] == 0) {
                dead[static_cast<std::size_t>(s)] = true;
                kill.push(s);
            }
        for (int p : pred_[static_cast<std::size_t>(v)])
            if (!dead[static_cast<std::size_t>(p)] && --out[static_cast<std::size_t>(p)] == 0) {
                dead[static_cast<std::size_t>(p)] = true;
                kill.push(p);
            }
    }
    if (removed_total == 0) return 0;
    std::vector<int> keep;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!dead[v]) keep.push_back(static_cast<int>(v));
    if (keep.empty()) {
        vertices_.clear();
        succ_.clear();
        pred_.clear();
        index_.clear();
        return removed_total;
    }
    *this = subgraph(keep);
    return removed_total;
}

TransitionGraph TransitionGraph::subgraph(const std::vector<int>& keep) const {
    std::vector<Word> ws;
    std::vector<bool> in(vertices_.size(), false);
    for (int v : keep) {
        ws.push_back(vertices_[static_cast<std::size_t>(v)]);
        in[static_cast<std::size_t>(v)] = true;
    }
    std::vector<std::pair<Word, Word>> edges;
    for (int u : keep)
        for (int v : succ_[static_cast<std::size_t>(u)])
            if (in[static_cast<std::size_t>(v)])
                edges.emplace_back(vertices_[static_cast<std::size_t>(u)],
                                   vertices_[static_cast<std::size_t>(v)]);
    return TransitionGraph(std::move(ws), edges, bound_);
}

TransitionGraph TransitionGraph::transposed() const {
    std::vector<Word> ws;
    for (const Word& w : vertices_) ws.push_back(w.reversed());
    std::vector<std::pair<Word, Word>> edges;
    for (std::size_t u = 0; u < vertices_.size(); ++u)
        for (int v : succ_[u])
            edges.emplace_back(vertices_[static_cast<std::size_t>(v)].reversed(),
                               vertices_[u].reversed());
    return TransitionGraph(std::move(ws), edges, bound_);
}

bool TransitionGraph::word_admissible(const Word& w) const {
    if (empty()) return false;
    int L = word_len_;
    if (static_cast<int>(w.size()) <= L) {
        for (const Word& v : vertices_) {
            for (std::size_t off = 0; off + w.size() <= v.size(); ++off) {
                bool ok = true;
                for (std::size_t k = 0; k < w.size() && ok; ++k) ok = v[off + k] == w[k];
                if (ok) return true;
            }
        }
        // Words no longer than a vertex may still straddle an edge.
        if (static_cast<int>(w.size()) < L) {
            for (std::size_t u = 0; u < vertices_.size(); ++u)
                for (int v : succ_[u]) {
                    std::vector<int> edge = vertices_[u].digits();
                    edge.push_back(appended_digit(v));
                    for (std::size_t off = 0; off + w.size() <= edge.size(); ++off) {
                        bool ok = true;
                        for (std::size_t k = 0; k < w.size() && ok; ++k)
                            ok = edge[off + k] == w[k];
                        if (ok) return true;
                    }
                }
            return false;
        }
        return false;
    }
    // Automaton run: set of vertices compatible with each position.
    std::vector<int> state;
    Word head = w.subword(0, static_cast<std::size_t>(L));
    if (auto i = find(head)) state.push_back(*i);
    if (state.empty()) return false;
    for (std::size_t pos = static_cast<std::size_t>(L); pos < w.size(); ++pos) {
        std::vector<int> next;
        for (int u : state)
            for (int v : succ_[static_cast<std::size_t>(u)])
                if (appended_digit(v) == w[pos]) next.push_back(v);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        state = std::move(next);
        if (state.empty()) return false;
    }
    return true;
}

std::string TransitionGraph::export_text() const {
    std::ostringstream os;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        os << vertices_[v].str() << ":";
        for (int s : succ_[v]) os << " " << vertices_[static_cast<std::size_t>(s)].str();
        os << "\n";
    }
    return os.str();
}

TransitionGraph TransitionGraph::import_text(const std::string& text, int bound) {
    std::vector<Word> ws;
    std::vector<std::pair<Word, Word>> edges;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string head = line.substr(0, colon);
        if (head.find_first_not_of(" \t") == std::string::npos) continue;
        Word u = Word::parse(head, bound);
        ws.push_back(u);
        std::istringstream rest(line.substr(colon + 1));
        std::string tok;
        while (rest >> tok) edges.emplace_back(u, Word::parse(tok, bound));
    }
    if (ws.empty()) throw std::invalid_argument("import_text: no vertices");
    return TransitionGraph(std::move(ws), edges, bound);
}

// ---- word sets ---------------------------------------------------------------

FromWordSetResult from_word_set(const std::vector<Word>& X, bool normalize) {
    if (X.empty()) throw std::invalid_argument("from_word_set: empty word set");
    std::size_t min_len = X[0].size(), max_len = X[0].size();
    int bound = 0;
    for (const Word& w : X) {
        if (w.empty()) throw std::invalid_argument("from_word_set: empty word");
        min_len = std::min(min_len, w.size());
        max_len = std::max(max_len, w.size());
        bound = std::max(bound, w.alphabet_bound());
    }
    std::vector<Word> vertices;
    if (min_len == max_len) {
        vertices = X;
    } else {
        if (!normalize)
            throw std::invalid_argument("from_word_set: mixed word lengths require normalize");
        // Pad to centered words of length 2n+1 whose center starts an X-word.
        std::size_t n = max_len;
        std::set<std::vector<int>> xset;
        for (const Word& w : X) xset.insert(w.digits());
        std::vector<std::vector<int>> stack{{}};
        while (!stack.empty()) {
            std::vector<int> w = stack.back();
            stack.pop_back();
            if (w.size() == 2 * n + 1) {
                for (std::size_t len = 1; len <= n; ++len) {
                    std::vector<int> center(w.begin() + static_cast<long>(n),
                                            w.begin() + static_cast<long>(n + len));
                    if (xset.count(center)) {
                        vertices.push_back(Word(w, bound));
                        break;
                    }
                }
                continue;
            }
            for (int a = 1; a <= bound; ++a) {
                w.push_back(a);
                stack.push_back(w);
                w.pop_back();
            }
        }
        if (vertices.empty()) return {TransitionGraph(), true, 0};
    }
    TransitionGraph g(vertices, bound);
    std::size_t removed = g.core_prune();
    return {g, g.empty(), removed};
}

// ---- decomposition -------------------------------------------------------------

namespace {

// Iterative Tarjan; emits components in reverse topological order.
std::vector<std::vector<int>> tarjan_scc(const TransitionGraph& g) {
    int n = static_cast<int>(g.size());
    std::vector<int> number(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;
    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (number[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        number[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& edges = g.succ(f.v);
            if (f.edge < edges.size()) {
                int w = edges[f.edge++];
                if (number[static_cast<std::size_t>(w)] == -1) {
                    number[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], number[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == number[static_cast<std::size_t>(f.v)]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().v)] = std::min(
                        low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
            }
        }
    }
    return sccs;
}

int component_period(const TransitionGraph& g, const std::vector<int>& comp) {
    // gcd over edges of dist(u)+1-dist(v) within the component.
    std::map<int, int> dist;
    std::queue<int> bfs;
    dist[comp[0]] = 0;
    bfs.push(comp[0]);
    std::set<int> inside(comp.begin(), comp.end());
    int g_period = 0;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : g.succ(u)) {
            if (!inside.count(v)) continue;
            if (!dist.count(v)) {
                dist[v] = dist[u] + 1;
                bfs.push(v);
            }
        }
    }
    for (int u : comp)
        for (int v : g.succ(u)) {
            if (!inside.count(v)) continue;
            g_period = std::gcd(g_period, dist[u] + 1 - dist[v]);
        }
    return std::abs(g_period);
}

}  // namespace

Decomposition scc_decompose(const TransitionGraph& g) {
    Decomposition d;
    d.component_of.assign(g.size(), -1);
    if (g.empty()) return d;
    auto sccs = tarjan_scc(g);
    std::reverse(sccs.begin(), sccs.end());  // topological: sources first

    for (auto& scc : sccs) {
        bool cycle = scc.size() > 1;
        if (!cycle)
            for (int s : g.succ(scc[0]))
                if (s == scc[0]) cycle = true;
        if (!cycle) {
            d.transient_states.push_back(scc[0]);
            continue;
        }
        int id = static_cast<int>(d.components.size());
        for (int v : scc) d.component_of[static_cast<std::size_t>(v)] = id;
        d.components.push_back(std::move(scc));
    }
    std::sort(d.transient_states.begin(), d.transient_states.end());

    for (const auto& comp : d.components) {
        int period = component_period(g, comp);
        d.periods.push_back(period);
        bool single_cycle = true;
        std::set<int> inside(comp.begin(), comp.end());
        for (int u : comp) {
            int within = 0;
            for (int v : g.succ(u))
                if (inside.count(v)) ++within;
            if (within != 1) single_cycle = false;
        }
        if (single_cycle)
            d.kinds.push_back(ComponentKind::trivial_cycle);
        else if (period == 1)
            d.kinds.push_back(ComponentKind::mixing);
        else
            d.kinds.push_back(ComponentKind::periodic_nonmixing);
    }

    // Component-to-component reachability, one reverse-topological DP pass
    // over the condensation.
    std::size_t m = d.components.size();
    std::vector<int> super_of(g.size(), -1);
    std::vector<int> comp_id_of_super;
    int num_super = 0;
    {
        auto order = tarjan_scc(g);  // reverse topological
        std::reverse(order.begin(), order.end());
        for (auto& scc : order) {
            int cid = d.component_of[static_cast<std::size_t>(scc[0])];
            for (int v : scc) super_of[static_cast<std::size_t>(v)] = num_super;
            comp_id_of_super.push_back(cid);
            ++num_super;
        }
    }
    std::vector<std::vector<int>> members(static_cast<std::size_t>(num_super));
    for (std::size_t u = 0; u < g.size(); ++u)
        members[static_cast<std::size_t>(super_of[u])].push_back(static_cast<int>(u));
    std::size_t words = (m + 63) / 64;
    std::vector<std::vector<std::uint64_t>> reach(static_cast<std::size_t>(num_super),
                                                  std::vector<std::uint64_t>(words, 0));
    for (int s = num_super - 1; s >= 0; --s) {
        auto& dst = reach[static_cast<std::size_t>(s)];
        for (int u : members[static_cast<std::size_t>(s)])
            for (int v : g.succ(u)) {
                int sv = super_of[static_cast<std::size_t>(v)];
                if (sv == s) continue;
                const auto& src = reach[static_cast<std::size_t>(sv)];
                for (std::size_t w = 0; w < words; ++w) dst[w] |= src[w];
                int cv = comp_id_of_super[static_cast<std::size_t>(sv)];
                if (cv >= 0) dst[static_cast<std::size_t>(cv) / 64] |= 1ull << (cv % 64);
            }
    }
    for (int s = 0; s < num_super; ++s) {
        int ca = comp_id_of_super[static_cast<std::size_t>(s)];
        if (ca < 0) continue;
        for (std::size_t b = 0; b < m; ++b)
            if (static_cast<int>(b) != ca && (reach[static_cast<std::size_t>(s)][b / 64] >> (b % 64) & 1))
                d.transient_sets.push_back({ca, static_cast<int>(b)});
    }
    std::sort(d.transient_sets.begin(), d.transient_sets.end(), [](auto& x, auto& y) {
        return std::pair(x.source_component, x.sink_component) <
               std::pair(y.source_component, y.sink_component);
    });
    return d;
}

// ---- connectors -----------------------------------------------------------------

namespace {

std::vector<std::vector<bool>> adjacency(const TransitionGraph& g, const std::vector<int>& comp) {
    std::size_t n = comp.size();
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[comp[i]] = i;
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (int v : g.succ(comp[i])) {
            auto it = pos.find(v);
            if (it != pos.end()) a[i][it->second] = true;
        }
    return a;
}

std::vector<std::vector<bool>> bool_mul(const std::vector<std::vector<bool>>& x,
                                        const std::vector<std::vector<bool>>& y) {
    std::size_t n = x.size();
    std::vector<std::vector<bool>> z(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (x[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (y[k][j]) z[i][j] = true;
    return z;
}

bool all_positive(const std::vector<std::vector<bool>>& a) {
    for (const auto& row : a)
        for (bool b : row)
            if (!b) return false;
    return true;
}

}  // namespace

int mixing_constant(const TransitionGraph& g, const Decomposition& d, int component) {
    if (component < 0 || component >= static_cast<int>(d.components.size()))
        throw std::invalid_argument("mixing_constant: no such component");
    if (d.periods[static_cast<std::size_t>(component)] != 1)
        throw std::domain_error("mixing_constant: component is not mixing");
    const auto& comp = d.components[static_cast<std::size_t>(component)];
    auto a = adjacency(g, comp);
    std::size_t n = comp.size();
    // Pairwise shortest >= 1-edge paths by BFS layers of the boolean matrix.
    int longest = 0;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    auto power = a;
    std::size_t remaining = n * n;
    for (int m = 1; remaining > 0 && m <= static_cast<int>(2 * n * n + 2); ++m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (power[i][j] && dist[i][j] == -1) {
                    dist[i][j] = m;
                    longest = std::max(longest, m);
                    --remaining;
                }
        if (remaining) power = bool_mul(power, a);
    }
    if (remaining) throw std::domain_error("mixing_constant: component not strongly connected");
    return longest;
}

int primitivity_index(const TransitionGraph& g, const Decomposition& d, int component) {
    if (component < 0 || component >= static_cast<int>(d.components.size()))
        throw std::invalid_argument("primitivity_index: no such component");
    if (d.periods[static_cast<std::size_t>(component)] != 1)
        throw std::domain_error("primitivity_index: component is not mixing");
    const auto& comp = d.components[static_cast<std::size_t>(component)];
    auto a = adjacency(g, comp);
    auto power = a;
    std::size_t n = comp.size();
    std::size_t wielandt = (n - 1) * (n - 1) + 1;
    for (std::size_t m = 1; m <= wielandt + 1; ++m) {
        if (all_positive(power)) return static_cast<int>(m);
        power = bool_mul(power, a);
    }
    throw std::domain_error("primitivity_index: component is not primitive");
}

namespace {

Connector path_to_connector(const TransitionGraph& g, const std::vector<int>& path) {
    // path = vertices a = v0, ..., vk = b; emitted digits are the appended
    // digit of each step, and the final |b| of them spell b (when k >= |b|).
    int L = g.word_length();
    int k = static_cast<int>(path.size()) - 1;
    std::vector<int> emitted;
    for (int i = 1; i <= k; ++i) emitted.push_back(g.appended_digit(path[static_cast<std::size_t>(i)]));
    std::vector<int> between;
    if (k > L)
        between.assign(emitted.begin(), emitted.end() - L);
    else if (k == L)
        between = {};
    else
        between = {};  // blocks overlap; concatenation is still admissible
    return {Word(between, g.alphabet_bound()), k};
}

}  // namespace

Connector connector(const TransitionGraph& g, const Decomposition& d, int component, int a, int b) {
    if (component < 0 || component >= static_cast<int>(d.components.size()))
        throw std::invalid_argument("connector: no such component");
    if (d.periods[static_cast<std::size_t>(component)] != 1)
        throw std::domain_error("connector: component is not mixing");
    if (d.component_of[static_cast<std::size_t>(a)] != component ||
        d.component_of[static_cast<std::size_t>(b)] != component)
        throw std::invalid_argument("connector: vertices outside component");
    // Deterministic BFS over at-least-one-edge paths: neighbor lists are
    // sorted by construction, so the first path found is the
    // lexicographically least among shortest ones. Works for a == b too
    // (shortest genuine return path).
    std::set<int> inside(d.components[static_cast<std::size_t>(component)].begin(),
                         d.components[static_cast<std::size_t>(component)].end());
    std::map<int, int> parent;  // vertex -> predecessor on its BFS path
    std::queue<int> bfs;
    for (int v : g.succ(a)) {
        if (!inside.count(v) || parent.count(v)) continue;
        parent[v] = a;
        bfs.push(v);
    }
    while (!bfs.empty() && !parent.count(b)) {
        int u = bfs.front();
        bfs.pop();
        for (int v : g.succ(u)) {
            if (!inside.count(v) || parent.count(v)) continue;
            parent[v] = u;
            bfs.push(v);
        }
    }
    if (!parent.count(b)) throw std::domain_error("connector: unreachable pair");
    std::vector<int> path{b};
    int cur = b;
    while (cur != a || path.size() == 1) {
        cur = parent[cur];
        path.push_back(cur);
        if (cur == a) break;
    }
    std::reverse(path.begin(), path.end());
    return path_to_connector(g, path);
}

Connector connector_exact(const TransitionGraph& g, const Decomposition& d, int component, int a,
                          int b, int len) {
    if (d.periods[static_cast<std::size_t>(component)] != 1)
        throw std::domain_error("connector_exact: component is not mixing");
    std::set<int> inside(d.components[static_cast<std::size_t>(component)].begin(),
                         d.components[static_cast<std::size_t>(component)].end());
    int steps = len + g.word_length();
    // can[k][v]: a path of exactly k edges from v to b exists.
    std::vector<std::set<int>> can(static_cast<std::size_t>(steps) + 1);
    can[0].insert(b);
    for (int k = 1; k <= steps; ++k)
        for (int v : inside)
            for (int s : g.succ(v))
                if (can[static_cast<std::size_t>(k - 1)].count(s)) {
                    can[static_cast<std::size_t>(k)].insert(v);
                    break;
                }
    if (!can[static_cast<std::size_t>(steps)].count(a))
        throw std::domain_error("connector_exact: no path of the requested length");
    std::vector<int> path{a};
    int cur = a;
    for (int k = steps; k > 0; --k) {
        for (int s : g.succ(cur)) {
            if (inside.count(s) && can[static_cast<std::size_t>(k - 1)].count(s)) {
                path.push_back(s);
                cur = s;
                break;
            }
        }
    }
    return path_to_connector(g, path);
}

}  // namespace spectra::sft
