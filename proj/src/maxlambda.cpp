#include "spectra/maxlambda.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace spectra::sym {

namespace {

using sft::TransitionGraph;

struct Node {
    std::vector<int> digits;
    int center;
    int start_vertex, end_vertex;
    Rat bound;  // certified upper bound of lambda over this cylinder
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;  // max-heap by bound
        if (a.digits != b.digits) return a.digits > b.digits;
        return a.center > b.center;
    }
};

Rat upper_bound(const TransitionGraph& g, const Node& n) {
    int N = g.alphabet_bound();
    std::vector<int> right(n.digits.begin() + n.center + 1, n.digits.end());
    std::vector<int> left(n.digits.rend() - n.center, n.digits.rend());
    std::vector<int> next, prev;
    for (int v : g.succ(n.end_vertex)) next.push_back(g.appended_digit(v));
    for (int u : g.pred(n.start_vertex)) prev.push_back(g.prepended_digit(u));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::sort(prev.begin(), prev.end());
    prev.erase(std::unique(prev.begin(), prev.end()), prev.end());
    return Rat(n.digits[static_cast<std::size_t>(n.center)]) +
           cf::tail_enclosure_restricted(right, N, next).hi +
           cf::tail_enclosure_restricted(left, N, prev).hi;
}

// Deterministic walk along least successors until a vertex repeats: the ray
// beyond `from`, as transient digits plus a cycle.
std::pair<std::vector<int>, std::vector<int>> forward_completion(const TransitionGraph& g,
                                                                 int from) {
    std::vector<int> order;           // appended digits along the walk
    std::map<int, std::size_t> seen;  // vertex -> position in walk
    int cur = from;
    std::size_t step = 0;
    seen[cur] = 0;
    while (true) {
        int nxt = g.succ(cur)[0];
        order.push_back(g.appended_digit(nxt));
        ++step;
        auto it = seen.find(nxt);
        if (it != seen.end()) {
            std::size_t cycle_start = it->second;
            std::vector<int> transient(order.begin(),
                                       order.begin() + static_cast<long>(cycle_start));
            std::vector<int> period(order.begin() + static_cast<long>(cycle_start), order.end());
            return {transient, period};
        }
        seen[nxt] = step;
        cur = nxt;
    }
}

std::pair<std::vector<int>, std::vector<int>> backward_completion(const TransitionGraph& g,
                                                                  int from) {
    // Digits are collected leftward (nearest first).
    std::vector<int> order;
    std::map<int, std::size_t> seen;
    int cur = from;
    std::size_t step = 0;
    seen[cur] = 0;
    while (true) {
        int prv = g.pred(cur)[0];
        order.push_back(g.prepended_digit(prv));
        ++step;
        auto it = seen.find(prv);
        if (it != seen.end()) {
            std::size_t cycle_start = it->second;
            std::vector<int> transient(order.begin(),
                                       order.begin() + static_cast<long>(cycle_start));
            std::vector<int> period(order.begin() + static_cast<long>(cycle_start), order.end());
            return {transient, period};
        }
        seen[prv] = step;
        cur = prv;
    }
}

// Digits of a shortest path from -> to (>= 1 edge), or empty when unreachable.
std::vector<int> closing_digits(const TransitionGraph& g, int from, int to) {
    std::map<int, int> parent;
    std::queue<int> bfs;
    for (int v : g.succ(from))
        if (!parent.count(v)) {
            parent[v] = from;
            bfs.push(v);
        }
    while (!bfs.empty() && !parent.count(to)) {
        int u = bfs.front();
        bfs.pop();
        for (int v : g.succ(u))
            if (!parent.count(v)) {
                parent[v] = u;
                bfs.push(v);
            }
    }
    if (!parent.count(to)) return {};
    std::vector<int> vertices{to};
    int cur = to;
    while (true) {
        cur = parent[cur];
        vertices.push_back(cur);
        if (cur == from) break;
    }
    std::reverse(vertices.begin(), vertices.end());
    std::vector<int> digits;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        digits.push_back(g.appended_digit(vertices[i]));
    return digits;
}

struct Witness {
    BiSeq seq;
    long center;
    bool periodic;
    std::vector<int> period_word;  // for the lexicographic tie-break
};

Witness make_witness(const TransitionGraph& g, const Node& n) {
    int L = g.word_length();
    int N = g.alphabet_bound();
    std::vector<int> close = closing_digits(g, n.end_vertex, n.start_vertex);
    if (!close.empty()) {
        // Periodic: one pass around node digits (minus the leading vertex
        // word, which the closing path re-emits) plus the closing path.
        std::vector<int> period(n.digits.begin() + L, n.digits.end());
        period.insert(period.end(), close.begin(), close.end());
        BiSeq seq = BiSeq::periodic(Word(period, N), N);
        int m = static_cast<int>(period.size());
        long phase = ((n.center - L) % m + m) % m;
        return {seq, phase, true, period};
    }
    auto [rt_post, rp] = forward_completion(g, n.end_vertex);
    auto [lt_pre_rev, lp_rev] = backward_completion(g, n.start_vertex);
    std::vector<int> rt(n.digits.begin() + n.center, n.digits.end());
    rt.insert(rt.end(), rt_post.begin(), rt_post.end());
    std::vector<int> lt(lt_pre_rev.rbegin(), lt_pre_rev.rend());
    lt.insert(lt.end(), n.digits.begin(), n.digits.begin() + n.center);
    std::vector<int> lp(lp_rev.rbegin(), lp_rev.rend());
    BiSeq seq(Word(lp, N), Word(lt, N), Word(rt, N), Word(rp, N), N);
    return {seq, 0, false, {}};
}

}  // namespace

MaxLambdaResult max_lambda0_on_subshift(const TransitionGraph& g_in, const Rat& target,
                                        std::size_t node_cap) {
    TransitionGraph g = g_in;
    g.core_prune();
    if (g.empty())
        throw std::domain_error(
            "max_lambda0_on_subshift: no bi-infinite admissible sequence (empty core)");
    int L = g.word_length();

    std::priority_queue<Node, std::vector<Node>, NodeOrder> frontier;
    for (std::size_t v = 0; v < g.size(); ++v) {
        Node n{g.vertex(static_cast<int>(v)).digits(), L - 1, static_cast<int>(v),
               static_cast<int>(v), Rat(0)};
        n.bound = upper_bound(g, n);
        frontier.push(std::move(n));
    }

    std::optional<SurdSum> incumbent;
    std::optional<Witness> best_witness;
    Rat incumbent_lo(-1);
    std::size_t expanded = 0;
    Rat top_bound = frontier.top().bound;

    auto consider = [&](const Node& n) {
        Witness w = make_witness(g, n);
        SurdSum val = lambda_at(w.seq, w.center);
        bool take = false;
        if (!incumbent) {
            take = true;
        } else {
            int c = (val - *incumbent).sign();
            take = c > 0 || (c == 0 && best_witness->periodic && w.periodic &&
                             w.period_word < best_witness->period_word);
        }
        if (take) {
            incumbent = std::move(val);
            best_witness = std::move(w);
            incumbent_lo = incumbent->enclosure().lo;
        }
    };

    bool width_reached = false;
    while (!frontier.empty()) {
        Node n = frontier.top();
        top_bound = n.bound;
        if (incumbent && top_bound - incumbent_lo <= target) {
            width_reached = true;
            break;
        }
        if (expanded >= node_cap) break;
        frontier.pop();
        ++expanded;
        consider(n);
        if (n.bound - incumbent_lo <= 0) continue;  // cannot improve the incumbent
        // Extend the shorter side by one graph step.
        bool extend_right = (n.digits.size() - 1 - static_cast<std::size_t>(n.center)) <=
                            static_cast<std::size_t>(n.center);
        if (extend_right) {
            for (int v : g.succ(n.end_vertex)) {
                Node child = n;
                child.digits.push_back(g.appended_digit(v));
                child.end_vertex = v;
                child.bound = upper_bound(g, child);
                if (child.bound - incumbent_lo > 0) frontier.push(std::move(child));
            }
        } else {
            for (int u : g.pred(n.start_vertex)) {
                Node child;
                child.digits.reserve(n.digits.size() + 1);
                child.digits.push_back(g.prepended_digit(u));
                child.digits.insert(child.digits.end(), n.digits.begin(), n.digits.end());
                child.center = n.center + 1;
                child.start_vertex = u;
                child.end_vertex = n.end_vertex;
                child.bound = upper_bound(g, child);
                if (child.bound - incumbent_lo > 0) frontier.push(std::move(child));
            }
        }
    }
    if (frontier.empty()) {
        top_bound = incumbent_lo;
        width_reached = true;
    }

    return {RatInterval(incumbent_lo, std::max(incumbent_lo, top_bound)),
            *incumbent,
            best_witness->seq,
            best_witness->center,
            best_witness->periodic,
            expanded,
            width_reached};
}

}  // namespace spectra::sym
