#pragma once

#include "arcade/bitset.hpp"
#include "arcade/caps.hpp"
#include "arcade/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace arcade {

// Finite simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))) {
        if (n < 0) throw StructuralError("graph: negative vertex count");
    }

    int size() const { return n_; }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw StructuralError("graph: loop at vertex " + std::to_string(u));
        adj_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
        adj_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && adj_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }

    const Bitset& neighbours(int u) const {
        check_vertex(u);
        return adj_[static_cast<std::size_t>(u)];
    }

    int edge_count() const {
        std::size_t twice = 0;
        for (const auto& row : adj_) twice += row.count();
        return static_cast<int>(twice / 2);
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n_; ++u)
            adj_[static_cast<std::size_t>(u)].for_each([&](std::size_t v) {
                if (static_cast<int>(v) > u) e.emplace_back(u, static_cast<int>(v));
            });
        return e;
    }

    bool operator==(const Graph&) const = default;

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw StructuralError("graph: vertex " + std::to_string(v) + " out of range");
    }

    int n_ = 0;
    std::vector<Bitset> adj_;
};

// ---- generators ----

inline Graph gen_complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph gen_empty(int n) { return Graph(n); }

inline Graph gen_cycle(int n) {
    if (n < 3) throw PreconditionError("cycle graph needs at least 3 vertices");
    Graph g(n);
    for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
}

// k disjoint copies of the complete graph on c vertices.
inline Graph gen_disjoint_cliques(int k, int c) {
    if (k < 1 || c < 1) throw PreconditionError("disjoint cliques: count and size must be >= 1");
    Graph g(k * c);
    for (int b = 0; b < k; ++b)
        for (int u = 0; u < c; ++u)
            for (int v = u + 1; v < c; ++v) g.add_edge(b * c + u, b * c + v);
    return g;
}

// Vertices 0..n-1 in a line; u ~ v iff 0 < |u - v| < width.
inline Graph gen_band(int n, int width) {
    if (n < 1 || width < 1) throw PreconditionError("band graph: length and width must be >= 1");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n && v - u < width; ++v) g.add_edge(u, v);
    return g;
}

// ---- chromatic number (exact, small graphs) ----

namespace detail {

inline int greedy_clique_bound(const Graph& g) {
    int n = g.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.neighbours(a).count() > g.neighbours(b).count();
    });
    int best = n > 0 ? 1 : 0;
    for (int start : order) {
        std::vector<int> clique{start};
        Bitset cand = g.neighbours(start);
        while (true) {
            int pick = -1;
            std::size_t pick_deg = 0;
            cand.for_each([&](std::size_t v) {
                Bitset rest = cand;
                rest &= g.neighbours(static_cast<int>(v));
                std::size_t d = rest.count();
                if (pick < 0 || d > pick_deg) {
                    pick = static_cast<int>(v);
                    pick_deg = d;
                }
            });
            if (pick < 0) break;
            clique.push_back(pick);
            cand &= g.neighbours(pick);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

inline bool colourable_with(const Graph& g, int k) {
    int n = g.size();
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.neighbours(a).count() > g.neighbours(b).count();
    });

    // Backtracking with symmetry breaking: vertex i may use colours up to
    // 1 + max colour used so far.
    std::vector<int> stack_colour;
    std::vector<int> used_max;
    stack_colour.reserve(static_cast<std::size_t>(n));

    struct Frame {
        int next;
    };
    std::vector<Frame> frames;
    frames.push_back({0});
    int depth = 0;
    int max_used = -1;
    std::vector<int> max_used_at(static_cast<std::size_t>(n) + 1, -1);
    while (depth >= 0) {
        if (depth == n) return true;
        int v = order[static_cast<std::size_t>(depth)];
        int limit = std::min(k - 1, max_used + 1);
        int c = frames[static_cast<std::size_t>(depth)].next;
        bool advanced = false;
        for (; c <= limit; ++c) {
            bool clash = false;
            g.neighbours(v).for_each([&](std::size_t w) {
                if (colour[w] == c) clash = true;
            });
            if (clash) continue;
            colour[static_cast<std::size_t>(v)] = c;
            frames[static_cast<std::size_t>(depth)].next = c + 1;
            max_used_at[static_cast<std::size_t>(depth)] = max_used;
            max_used = std::max(max_used, c);
            ++depth;
            if (static_cast<std::size_t>(depth) >= frames.size()) frames.push_back({0});
            else frames[static_cast<std::size_t>(depth)].next = 0;
            advanced = true;
            break;
        }
        if (!advanced) {
            --depth;
            if (depth >= 0) {
                int u = order[static_cast<std::size_t>(depth)];
                colour[static_cast<std::size_t>(u)] = -1;
                max_used = max_used_at[static_cast<std::size_t>(depth)];
            }
        }
    }
    return false;
}

} // namespace detail

// Exact chromatic number by branch and bound. Guarded by caps: throws
// CapExceeded above chromatic_max_vertices.
inline int chromatic_number(const Graph& g, const Caps& caps = Caps::defaults()) {
    int n = g.size();
    if (n > caps.chromatic_max_vertices)
        throw CapExceeded("chromatic: " + std::to_string(n) + " vertices exceeds cap " +
                          std::to_string(caps.chromatic_max_vertices));
    if (n == 0) return 0;
    if (g.edge_count() == 0) return 1;
    int lo = detail::greedy_clique_bound(g);
    for (int k = lo; k <= n; ++k)
        if (detail::colourable_with(g, k)) return k;
    return n;
}

// Girth: length of a shortest cycle, or -1 when the graph is a forest.
inline int girth(const Graph& g) {
    int n = g.size();
    int best = -1;
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<int> q{s};
        dist[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            bool stop = false;
            g.neighbours(u).for_each([&](std::size_t wz) {
                int w = static_cast<int>(wz);
                if (w == parent[static_cast<std::size_t>(u)]) return;
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(w)] = u;
                    q.push_back(w);
                } else {
                    int len = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1;
                    if (best < 0 || len < best) best = len;
                    if (best == 3) stop = true;
                }
            });
            if (stop) return 3;
        }
    }
    return best;
}

// ---- text format ----
// Line-oriented: "p <n> <m>" then m lines "e <u> <v>" with 0-based vertices.
// Blank lines and lines starting with '#' are ignored.

inline Graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Graph g;
    bool have_header = false;
    int declared_edges = 0, seen_edges = 0;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            if (have_header) throw StructuralError("graph text: repeated header");
            int n = -1, m = -1;
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw StructuralError("graph text: bad header line");
            g = Graph(n);
            declared_edges = m;
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) throw StructuralError("graph text: edge before header");
            int u = -1, v = -1;
            if (!(ls >> u >> v)) throw StructuralError("graph text: bad edge line");
            g.add_edge(u, v);
            ++seen_edges;
        } else {
            throw StructuralError("graph text: unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw StructuralError("graph text: missing header");
    if (seen_edges != declared_edges)
        throw StructuralError("graph text: header declares " + std::to_string(declared_edges) +
                              " edges, found " + std::to_string(seen_edges));
    return g;
}

inline std::string graph_to_text(const Graph& g) {
    std::ostringstream out;
    auto es = g.edges();
    out << "p " << g.size() << " " << es.size() << "\n";
    for (auto [u, v] : es) out << "e " << u << " " << v << "\n";
    return out.str();
}

// ---- ordered structures for rainbow constructions and pebble games ----

// A finite linear-order-like structure: named points plus a strict order
// relation that may be total (chain), empty (antichain), or arbitrary.
struct OrderedStructure {
    std::string name;
    int size = 0;
    std::vector<std::pair<int, int>> less; // strict pairs (a, b) meaning a < b

    bool lt(int a, int b) const {
        for (auto [x, y] : less)
            if (x == a && y == b) return true;
        return false;
    }
};

inline OrderedStructure make_chain(int k) {
    if (k < 0) throw PreconditionError("chain: negative size");
    OrderedStructure s;
    s.name = "chain:" + std::to_string(k);
    s.size = k;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) s.less.emplace_back(a, b);
    return s;
}

inline OrderedStructure make_antichain(int k) {
    if (k < 0) throw PreconditionError("antichain: negative size");
    OrderedStructure s;
    s.name = "antichain:" + std::to_string(k);
    s.size = k;
    return s;
}

// Complete irreflexive structure: every ordered pair of distinct points.
inline OrderedStructure make_kp(int k) {
    if (k < 0) throw PreconditionError("kp: negative size");
    OrderedStructure s;
    s.name = "kp:" + std::to_string(k);
    s.size = k;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b) s.less.emplace_back(a, b);
    return s;
}

// M[p, I]: disjoint union of I (points 0..|I|-1) and K_p (points |I|..|I|+p-1);
// relation = less(I) ∪ all distinct pairs within K_p ∪ I×K_p ∪ K_p×I.
inline OrderedStructure gen_mpI(int p, const OrderedStructure& inner) {
    if (p < 0) throw PreconditionError("mpI: negative p");
    OrderedStructure s;
    s.name = "mpI:" + std::to_string(p) + "," + inner.name;
    s.size = inner.size + p;
    s.less = inner.less;
    int base = inner.size;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j) s.less.emplace_back(base + i, base + j);
    for (int u = 0; u < base; ++u)
        for (int i = 0; i < p; ++i) {
            s.less.emplace_back(u, base + i);
            s.less.emplace_back(base + i, u);
        }
    return s;
}

// "chain:k" | "antichain:k" | "kp:k" | "mpI:p,REST" (REST is itself a spec)
inline OrderedStructure parse_ordered(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw StructuralError("ordered structure: expected kind:size, got '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    auto parse_int = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            int v = std::stoi(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw StructuralError("ordered structure: bad size in '" + spec + "'");
        }
    };
    if (kind == "mpI") {
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw StructuralError("ordered structure: mpI needs 'mpI:p,inner', got '" + spec + "'");
        int p = parse_int(rest.substr(0, comma));
        if (p < 0) throw StructuralError("ordered structure: negative size in '" + spec + "'");
        return gen_mpI(p, parse_ordered(rest.substr(comma + 1)));
    }
    int k = parse_int(rest);
    if (k < 0) throw StructuralError("ordered structure: negative size in '" + spec + "'");
    if (kind == "chain") return make_chain(k);
    if (kind == "antichain") return make_antichain(k);
    if (kind == "kp") return make_kp(k);
    throw StructuralError("ordered structure: unknown kind '" + kind + "'");
}

} // namespace arcade
