#pragma once

#include "arcade/bitset.hpp"
#include "arcade/ca.hpp"
#include "arcade/canonical.hpp"
#include "arcade/caps.hpp"
#include "arcade/error.hpp"
#include "arcade/graph.hpp"
#include "arcade/report.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arcade {

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

struct RainbowSignature {
    int n = 3;              // dimension; edges are 2-ary, shades (n-1)-ary
    OrderedStructure A;     // tint structure (greens, shade universe)
    OrderedStructure B;     // red index structure
    bool split = false;     // reds split into copies, plus the flexible rho
    int copies = 1;
};

inline RainbowSignature make_rainbow(int n, OrderedStructure A, OrderedStructure B) {
    if (n < 3) throw PreconditionError("rainbow: dimension must be at least 3");
    if (A.size < 1 || B.size < 1) throw PreconditionError("rainbow: A and B must be nonempty");
    if (A.size > 20) throw PreconditionError("rainbow: tint structure too large for shade masks");
    RainbowSignature s;
    s.n = n;
    s.A = std::move(A);
    s.B = std::move(B);
    return s;
}

inline RainbowSignature split_reds(RainbowSignature sig, int copies) {
    if (copies < 1) throw PreconditionError("rainbow: split needs at least one copy");
    sig.split = true;
    sig.copies = copies;
    return sig;
}

// ---------------------------------------------------------------------------
// Edge colours
// ---------------------------------------------------------------------------

enum class ColourKind { GreenI, Green0, White, WhiteI, Yellow, Red, Rho };

struct EdgeColour {
    ColourKind kind = ColourKind::White;
    int index = -1;        // GreenI: leg index 1..n-2; Green0: tint in A; WhiteI: 0..n-3
    int k = -1, l = -1;    // Red: ordered index pair in B
    int copy = -1;         // Red under a split signature; -1 otherwise
};

class Palette {
public:
    explicit Palette(RainbowSignature sig) : sig_(std::move(sig)) {
        if (sig_.n < 3) throw PreconditionError("rainbow: dimension must be at least 3");
        if (sig_.A.size < 1 || sig_.B.size < 1)
            throw PreconditionError("rainbow: A and B must be nonempty");
        if (sig_.A.size > 20)
            throw PreconditionError("rainbow: tint structure too large for shade masks");
        if (sig_.split && sig_.copies < 1)
            throw PreconditionError("rainbow: split needs at least one copy");
        int n = sig_.n;
        for (int i = 1; i <= n - 2; ++i) push({ColourKind::GreenI, i, -1, -1, -1});
        green0_base_ = static_cast<int>(cols_.size());
        for (int a = 0; a < sig_.A.size; ++a) push({ColourKind::Green0, a, -1, -1, -1});
        white_ = static_cast<int>(cols_.size());
        push({ColourKind::White, -1, -1, -1, -1});
        white_i_base_ = static_cast<int>(cols_.size());
        for (int i = 0; i <= n - 3; ++i) push({ColourKind::WhiteI, i, -1, -1, -1});
        yellow_ = static_cast<int>(cols_.size());
        push({ColourKind::Yellow, -1, -1, -1, -1});
        red_base_ = static_cast<int>(cols_.size());
        n_copies_ = sig_.split ? sig_.copies : 1;
        for (int k = 0; k < sig_.B.size; ++k)
            for (int l = 0; l < sig_.B.size; ++l)
                for (int t = 0; t < n_copies_; ++t)
                    push({ColourKind::Red, -1, k, l, sig_.split ? t : -1});
        if (sig_.split) {
            rho_ = static_cast<int>(cols_.size());
            push({ColourKind::Rho, -1, -1, -1, -1});
        }
        flip_.resize(cols_.size());
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            const EdgeColour& e = cols_[c];
            flip_[c] = e.kind == ColourKind::Red
                           ? id_red(e.l, e.k, e.copy)
                           : static_cast<int>(c);
        }
    }

    const RainbowSignature& sig() const { return sig_; }
    int count() const { return static_cast<int>(cols_.size()); }
    const EdgeColour& desc(int c) const { return cols_[static_cast<std::size_t>(c)]; }
    int flip(int c) const { return flip_[static_cast<std::size_t>(c)]; }

    bool green(int c) const {
        auto k = desc(c).kind;
        return k == ColourKind::GreenI || k == ColourKind::Green0;
    }
    // leg index of a green: i for g_i, 0 for every tinted g_0^a
    int green_index(int c) const {
        const EdgeColour& e = desc(c);
        if (e.kind == ColourKind::GreenI) return e.index;
        if (e.kind == ColourKind::Green0) return 0;
        return -1;
    }

    int id_green(int i) const {
        if (i < 1 || i > sig_.n - 2) throw PreconditionError("rainbow: no such green index");
        return i - 1;
    }
    int id_green0(int a) const {
        if (a < 0 || a >= sig_.A.size) throw PreconditionError("rainbow: tint out of range");
        return green0_base_ + a;
    }
    int id_white() const { return white_; }
    int id_white_i(int i) const {
        if (i < 0 || i > sig_.n - 3) throw PreconditionError("rainbow: no such white index");
        return white_i_base_ + i;
    }
    int id_yellow() const { return yellow_; }
    int id_red(int k, int l, int copy = -1) const {
        if (k < 0 || k >= sig_.B.size || l < 0 || l >= sig_.B.size)
            throw PreconditionError("rainbow: red index out of range");
        int t = sig_.split ? copy : 0;
        if (sig_.split && (copy < 0 || copy >= n_copies_))
            throw PreconditionError("rainbow: red copy out of range");
        return red_base_ + (k * sig_.B.size + l) * n_copies_ + t;
    }
    int id_rho() const {
        if (!sig_.split) throw PreconditionError("rainbow: rho exists only under split");
        return rho_;
    }

    int shade_universe() const { return sig_.A.size; }
    int full_shade() const { return (1 << sig_.A.size) - 1; }

    std::string colour_name(int c) const {
        const EdgeColour& e = desc(c);
        switch (e.kind) {
        case ColourKind::GreenI: return "g" + std::to_string(e.index);
        case ColourKind::Green0: return "g0^" + std::to_string(e.index);
        case ColourKind::White: return "w";
        case ColourKind::WhiteI: return "w" + std::to_string(e.index);
        case ColourKind::Yellow: return "y";
        case ColourKind::Red: {
            std::string s = "r" + std::to_string(e.k) + "," + std::to_string(e.l);
            if (e.copy >= 0) s += "^" + std::to_string(e.copy);
            return s;
        }
        case ColourKind::Rho: return "rho";
        }
        return "?";
    }

    std::string shade_name(int mask) const {
        std::string s = "y{";
        bool first = true;
        for (int a = 0; a < sig_.A.size; ++a)
            if (mask & (1 << a)) {
                if (!first) s += ",";
                s += std::to_string(a);
                first = false;
            }
        return s + "}";
    }

private:
    void push(EdgeColour e) { cols_.push_back(e); }

    RainbowSignature sig_;
    std::vector<EdgeColour> cols_;
    std::vector<int> flip_;
    int green0_base_ = 0, white_ = 0, white_i_base_ = 0, yellow_ = 0, red_base_ = 0;
    int rho_ = -1, n_copies_ = 1;
};

// ---------------------------------------------------------------------------
// Coloured graphs
// ---------------------------------------------------------------------------

struct ColouredGraph {
    int nodes = 0;
    std::vector<int> col;                   // nodes*nodes oriented colour ids, -1 unset
    std::map<std::vector<int>, int> shades; // sorted (n-1)-subset -> tint mask

    static ColouredGraph blank(int k) {
        ColouredGraph g;
        g.nodes = k;
        g.col.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), -1);
        return g;
    }

    int at(int u, int v) const { return col[static_cast<std::size_t>(u * nodes + v)]; }

    void set_edge(const Palette& pal, int u, int v, int c) {
        if (u == v) throw PreconditionError("graph: edges join distinct nodes");
        col[static_cast<std::size_t>(u * nodes + v)] = c;
        col[static_cast<std::size_t>(v * nodes + u)] = c < 0 ? -1 : pal.flip(c);
    }

    bool operator==(const ColouredGraph&) const = default;
};

namespace detail {

inline void for_each_subset(int nodes, int size, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == size) {
            f(pick);
            return;
        }
        for (int v = from; v < nodes; ++v) {
            if (nodes - v < size - static_cast<int>(pick.size())) break;
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

// tints of all cones over base set T (apex outside T, one g_0 leg + g_i legs)
inline int cone_tints(const Palette& pal, const ColouredGraph& g, const std::vector<int>& T) {
    int forced = 0;
    int m = static_cast<int>(T.size());
    std::vector<int> perm(T);
    std::sort(perm.begin(), perm.end());
    for (int apex = 0; apex < g.nodes; ++apex) {
        if (std::binary_search(perm.begin(), perm.end(), apex)) continue;
        std::vector<int> p(perm);
        do {
            int c0 = g.at(apex, p[0]);
            if (c0 < 0 || pal.desc(c0).kind != ColourKind::Green0) continue;
            bool legs = true;
            for (int i = 1; i < m; ++i) {
                int ci = g.at(apex, p[static_cast<std::size_t>(i)]);
                if (ci < 0 || pal.desc(ci).kind != ColourKind::GreenI ||
                    pal.desc(ci).index != i) {
                    legs = false;
                    break;
                }
            }
            if (legs) forced |= 1 << pal.desc(c0).index;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return forced;
}

// (g_0^i, g_0^j, r_kl) side condition: {(i,k),(j,l)} extends to a partial
// homomorphism of (A,<) into (B,<)
inline bool tint_red_compatible(const RainbowSignature& sig, int i, int j, int k, int l) {
    if (i == j) return k == l;
    if (sig.A.lt(i, j) && !sig.B.lt(k, l)) return false;
    if (sig.A.lt(j, i) && !sig.B.lt(l, k)) return false;
    return true;
}

// forbidden-triangle test on oriented colours cuv, cuw, cvw (all set);
// returns the violated law name or nullptr
inline const char* triangle_law(const Palette& pal, int u, int v, int w,
                                int cuv, int cuw, int cvw) {
    const RainbowSignature& sig = pal.sig();
    struct E {
        int from, to, c;
    };
    E es[3] = {{u, v, cuv}, {u, w, cuw}, {v, w, cvw}};
    int greens = 0, whites = 0, whites_i = 0, yellows = 0, reds = 0, rhos = 0;
    for (const E& e : es) {
        switch (pal.desc(e.c).kind) {
        case ColourKind::GreenI:
        case ColourKind::Green0: ++greens; break;
        case ColourKind::White: ++whites; break;
        case ColourKind::WhiteI: ++whites_i; break;
        case ColourKind::Yellow: ++yellows; break;
        case ColourKind::Red: ++reds; break;
        case ColourKind::Rho: ++rhos; break;
        }
    }
    if (greens == 3) return "green-triangle";
    if (yellows == 3) return "yellow-triangle";
    if (rhos > 0 && reds > 0) return "rho-red";
    if (greens == 2) {
        int gi[2], gn = 0, other = -1;
        int apex_of[2];
        for (int e = 0; e < 3; ++e) {
            if (pal.green(es[e].c)) {
                gi[gn] = es[e].c;
                apex_of[gn] = e;
                ++gn;
            } else {
                other = e;
            }
        }
        int ck = es[other].c;
        ColourKind ok = pal.desc(ck).kind;
        if (ok == ColourKind::White &&
            pal.green_index(gi[0]) == pal.green_index(gi[1]))
            return "green-green-white";
        bool both_g0 = pal.desc(gi[0]).kind == ColourKind::Green0 &&
                       pal.desc(gi[1]).kind == ColourKind::Green0;
        if (both_g0 && ok == ColourKind::WhiteI && pal.desc(ck).index == 0)
            return "green-green-white0";
        if (both_g0 && ok == ColourKind::Red) {
            // the two greens share a node z; the red joins the green endpoints
            // x, y with the tint at x read against the first red index
            const E& red = es[other];
            const E& ga = es[apex_of[0]];
            int tint_at_from, tint_at_to;
            // ga covers red.from or red.to; its far endpoint is the shared z
            if (ga.from == red.from || ga.to == red.from) {
                tint_at_from = pal.desc(gi[0]).index;
                tint_at_to = pal.desc(gi[1]).index;
            } else {
                tint_at_from = pal.desc(gi[1]).index;
                tint_at_to = pal.desc(gi[0]).index;
            }
            if (!tint_red_compatible(sig, tint_at_from, tint_at_to,
                                     pal.desc(red.c).k, pal.desc(red.c).l))
                return "green-green-red";
        }
    }
    if (greens == 1 && yellows == 1 && whites_i == 1) {
        for (const E& e : es)
            if (pal.green(e.c) && pal.desc(e.c).kind != ColourKind::Green0) return nullptr;
        return "green-yellow-white";
    }
    if (reds == 3) {
        // mu(u)=a, mu(v)=b from (u,v); chain through (v,w) and (u,w)
        const EdgeColour& uv = pal.desc(cuv);
        const EdgeColour& vw = pal.desc(cvw);
        const EdgeColour& uw = pal.desc(cuw);
        if (!(uv.l == vw.k && uv.k == uw.k && vw.l == uw.l)) return "red-matching";
    }
    return nullptr;
}

} // namespace detail

inline ValidationReport check_coloured_graph(const Palette& pal, const ColouredGraph& g) {
    const RainbowSignature& sig = pal.sig();
    int k = g.nodes;
    if (k < 0 || g.col.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
        throw StructuralError("graph: colour table size mismatch");
    ValidationReport rep;
    auto nd = [](int v) { return std::to_string(v); };

    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v) {
            int c = g.at(u, v);
            if (u == v) {
                if (c != -1) rep.add("orientation", "(" + nd(u) + "," + nd(v) + ")", "loop label");
                continue;
            }
            if (c < -1 || c >= pal.count())
                throw StructuralError("graph: colour id out of range");
            if (c == -1) {
                if (u < v) rep.add("completeness", "(" + nd(u) + "," + nd(v) + ")", "uncoloured edge");
                continue;
            }
            if (u < v) {
                int back = g.at(v, u);
                if (back != pal.flip(c))
                    rep.add("orientation", "(" + nd(u) + "," + nd(v) + ")",
                            "reverse label is not the converse colour");
            }
        }

    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
            for (int w = v + 1; w < k; ++w) {
                int cuv = g.at(u, v), cuw = g.at(u, w), cvw = g.at(v, w);
                if (cuv < 0 || cuw < 0 || cvw < 0) continue;
                if (const char* law = detail::triangle_law(pal, u, v, w, cuv, cuw, cvw))
                    rep.add(law, "(" + nd(u) + "," + nd(v) + "," + nd(w) + ")",
                            pal.colour_name(cuv) + "," + pal.colour_name(cuw) + "," +
                                pal.colour_name(cvw));
            }

    for (const auto& [T, mask] : g.shades) {
        bool dom_ok = static_cast<int>(T.size()) == sig.n - 1 && std::is_sorted(T.begin(), T.end()) &&
                      std::adjacent_find(T.begin(), T.end()) == T.end() &&
                      (T.empty() || (T.front() >= 0 && T.back() < k));
        if (!dom_ok) {
            rep.add("yellow-domain", "shade key", "not a sorted (n-1)-subset of the nodes");
            continue;
        }
        if (mask < 0 || mask > pal.full_shade())
            rep.add("yellow-domain", "shade key", "mask outside the tint universe");
    }

    detail::for_each_subset(k, sig.n - 1, [&](const std::vector<int>& T) {
        bool green_inside = false, missing = false;
        for (std::size_t a = 0; a < T.size(); ++a)
            for (std::size_t b = a + 1; b < T.size(); ++b) {
                int c = g.at(T[a], T[b]);
                if (c < 0)
                    missing = true;
                else if (pal.green(c))
                    green_inside = true;
            }
        std::string key = "{";
        for (std::size_t a = 0; a < T.size(); ++a)
            key += (a ? "," : "") + nd(T[a]);
        key += "}";
        auto it = g.shades.find(T);
        if (green_inside && it != g.shades.end())
            rep.add("yellow-on-green", key, "shade on a set with a green edge");
        if (!green_inside && !missing && it == g.shades.end())
            rep.add("yellow-missing", key, "green-free set without a shade");
        if (it != g.shades.end() && !missing) {
            int forced = detail::cone_tints(pal, g, T);
            if ((forced & it->second) != forced)
                rep.add("cone-shade", key,
                        "cone tint outside " + pal.shade_name(it->second));
        }
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Enumeration of valid complete coloured graphs on k labelled nodes
// ---------------------------------------------------------------------------

template <typename F>
inline void enumerate_coloured_graphs(const Palette& pal, int k, bool allow_rho, F&& emit) {
    const RainbowSignature& sig = pal.sig();
    if (k < 0) throw PreconditionError("rainbow: negative node count");
    ColouredGraph g = ColouredGraph::blank(k);

    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < k; ++v)
        for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);

    std::vector<std::vector<int>> subsets;
    detail::for_each_subset(k, sig.n - 1,
                            [&](const std::vector<int>& T) { subsets.push_back(T); });

    std::function<void(std::size_t)> shade_rec = [&](std::size_t si) {
        while (si < subsets.size()) {
            bool green_inside = false;
            const auto& T = subsets[si];
            for (std::size_t a = 0; a < T.size() && !green_inside; ++a)
                for (std::size_t b = a + 1; b < T.size(); ++b)
                    if (pal.green(g.at(T[a], T[b]))) {
                        green_inside = true;
                        break;
                    }
            if (!green_inside) break;
            ++si;
        }
        if (si == subsets.size()) {
            emit(const_cast<const ColouredGraph&>(g));
            return;
        }
        const auto& T = subsets[si];
        int forced = detail::cone_tints(pal, g, T);
        int full = pal.full_shade();
        int free = full & ~forced;
        // iterate supersets of forced: forced | s for s subset of free
        int s = 0;
        while (true) {
            g.shades[T] = forced | s;
            shade_rec(si + 1);
            if (s == free) break;
            s = (s - free) & free;
        }
        g.shades.erase(T);
    };

    std::function<void(std::size_t)> edge_rec = [&](std::size_t pi) {
        if (pi == pairs.size()) {
            shade_rec(0);
            return;
        }
        auto [u, v] = pairs[pi];
        for (int c = 0; c < pal.count(); ++c) {
            if (!allow_rho && pal.desc(c).kind == ColourKind::Rho) continue;
            g.set_edge(pal, u, v, c);
            bool ok = true;
            for (int w = 0; w < u && ok; ++w)
                ok = detail::triangle_law(pal, w, u, v, g.at(w, u), g.at(w, v),
                                          g.at(u, v)) == nullptr;
            if (ok) edge_rec(pi + 1);
        }
        g.set_edge(pal, u, v, -1);
    };

    edge_rec(0);
}

// ---------------------------------------------------------------------------
// Atom structure: atoms are surjections of the dimension onto valid graphs
// ---------------------------------------------------------------------------

struct RainbowAtom {
    std::vector<int> map; // length n, first-occurrence block numbering
    ColouredGraph graph;  // on max(map)+1 nodes
};

inline std::string rainbow_atom_name(const Palette& pal, const RainbowAtom& atom,
                                     bool strip_copies = false) {
    std::string s;
    for (int b : atom.map) s += std::to_string(b);
    const ColouredGraph& g = atom.graph;
    for (int v = 1; v < g.nodes; ++v)
        for (int u = 0; u < v; ++u) {
            int c = g.at(u, v);
            const EdgeColour& e = pal.desc(c);
            if (strip_copies && e.kind == ColourKind::Red)
                s += "|r" + std::to_string(e.k) + "," + std::to_string(e.l);
            else
                s += "|" + pal.colour_name(c);
        }
    for (const auto& [T, mask] : g.shades) {
        s += "|y";
        for (int t : T) s += std::to_string(t);
        s += ":";
        for (int a = 0; a < pal.shade_universe(); ++a)
            if (mask & (1 << a)) s += std::to_string(a) + ",";
    }
    return s;
}

struct RainbowAtomStructure {
    RainbowSignature sig;
    std::vector<RainbowAtom> reps;
    CAAtomStructure ca;
    std::unordered_map<std::string, int> index; // atom name -> id
};

namespace detail {

// restriction-off-i signature: what an atom looks like with index i deleted
inline std::vector<int> ti_signature(const Palette& pal, const RainbowAtom& atom, int i) {
    int n = pal.sig().n;
    std::vector<int> J;
    for (int j = 0; j < n; ++j)
        if (j != i) J.push_back(j);
    std::vector<int> sig;
    std::vector<int> renum(static_cast<std::size_t>(atom.graph.nodes), -1);
    int next = 0;
    std::vector<int> image;
    for (int j : J) {
        int node = atom.map[static_cast<std::size_t>(j)];
        if (renum[static_cast<std::size_t>(node)] < 0) {
            renum[static_cast<std::size_t>(node)] = next++;
            image.push_back(node);
        }
        sig.push_back(renum[static_cast<std::size_t>(node)]);
    }
    for (std::size_t a = 0; a < J.size(); ++a)
        for (std::size_t b = a + 1; b < J.size(); ++b) {
            int x = atom.map[static_cast<std::size_t>(J[a])];
            int y = atom.map[static_cast<std::size_t>(J[b])];
            sig.push_back(x == y ? -2 : atom.graph.at(x, y));
        }
    if (static_cast<int>(image.size()) == n - 1) {
        std::vector<int> T(image);
        std::sort(T.begin(), T.end());
        auto it = atom.graph.shades.find(T);
        sig.push_back(it == atom.graph.shades.end() ? -3 : it->second);
    }
    return sig;
}

inline void restricted_growth_strings(int n, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> r(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int mx) {
        if (pos == n) {
            f(r);
            return;
        }
        for (int b = 0; b <= mx + 1; ++b) {
            r[static_cast<std::size_t>(pos)] = b;
            rec(pos + 1, std::max(mx, b));
        }
    };
    rec(1, 0);
}

} // namespace detail

inline RainbowAtomStructure enumerate_atoms(const RainbowSignature& sig,
                                            const Caps& caps = Caps::defaults()) {
    Palette pal(sig);
    RainbowAtomStructure out;
    out.sig = sig;
    int n = sig.n;

    // valid graphs per block count, enumerated once
    std::vector<std::vector<ColouredGraph>> by_blocks(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k)
        enumerate_coloured_graphs(pal, k, false, [&](const ColouredGraph& g) {
            by_blocks[static_cast<std::size_t>(k)].push_back(g);
        });

    detail::restricted_growth_strings(n, [&](const std::vector<int>& rgs) {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        for (const ColouredGraph& g : by_blocks[static_cast<std::size_t>(blocks)]) {
            if (static_cast<long long>(out.reps.size()) >= caps.max_atoms)
                throw CapExceeded("rainbow: atom count over max_atoms");
            out.reps.push_back({rgs, g});
        }
    });

    std::size_t na = out.reps.size();
    std::vector<std::string> names(na);
    for (std::size_t a = 0; a < na; ++a) {
        names[a] = rainbow_atom_name(pal, out.reps[a]);
        out.index.emplace(names[a], static_cast<int>(a));
    }

    std::vector<CARelation> ti;
    for (int i = 0; i < n; ++i) {
        std::map<std::vector<int>, int> classes;
        std::vector<int> class_of(na);
        for (std::size_t a = 0; a < na; ++a) {
            auto s = detail::ti_signature(pal, out.reps[a], i);
            auto [it, fresh] = classes.emplace(std::move(s), static_cast<int>(classes.size()));
            class_of[a] = it->second;
            (void)fresh;
        }
        ti.push_back(CARelation::partition(std::move(class_of)));
    }

    std::vector<Bitset> eij;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Bitset b(na);
            for (std::size_t a = 0; a < na; ++a)
                if (out.reps[a].map[static_cast<std::size_t>(i)] ==
                    out.reps[a].map[static_cast<std::size_t>(j)])
                    b.set(a);
            eij.push_back(std::move(b));
        }

    out.ca = CAAtomStructure::create(n, std::move(names), std::move(ti), std::move(eij));
    return out;
}

// split atoms grouped under the base atom they project to when copy
// superscripts are erased; feeds embed_by_copies
inline std::vector<std::vector<int>> rainbow_copy_lists(const RainbowAtomStructure& base,
                                                        const RainbowAtomStructure& split) {
    if (!split.sig.split || base.sig.split)
        throw PreconditionError("rainbow: copy lists go from an unsplit base to a split structure");
    Palette pal(split.sig);
    std::vector<std::vector<int>> lists(base.reps.size());
    for (std::size_t a = 0; a < split.reps.size(); ++a) {
        std::string stem = rainbow_atom_name(pal, split.reps[a], true);
        auto it = base.index.find(stem);
        if (it == base.index.end())
            throw StructuralError("rainbow: split atom has no base atom under copy erasure");
        lists[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(a));
    }
    return lists;
}

// ---------------------------------------------------------------------------
// Graph <-> network translation
// ---------------------------------------------------------------------------

struct AtomicNetwork {
    int nodes = 0;
    std::vector<int> entry; // nodes^dim atom ids, row-major

    static AtomicNetwork blank(int nodes, int dim) {
        AtomicNetwork n;
        n.nodes = nodes;
        std::size_t total = 1;
        for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(nodes);
        n.entry.assign(total, -1);
        return n;
    }

    std::size_t pos(const std::vector<int>& t) const {
        std::size_t p = 0;
        for (int x : t) p = p * static_cast<std::size_t>(nodes) + static_cast<std::size_t>(x);
        return p;
    }
    int at(const std::vector<int>& t) const { return entry[pos(t)]; }
    void put(const std::vector<int>& t, int a) { entry[pos(t)] = a; }

    bool operator==(const AtomicNetwork&) const = default;
};

namespace detail {

inline void for_each_tuple(int nodes, int dim, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> t(static_cast<std::size_t>(dim), 0);
    while (true) {
        f(t);
        int i = dim - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == nodes - 1) {
            t[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
    }
}

} // namespace detail

// atom named by a tuple of graph nodes: kernel plus pulled-back colours/shades
inline RainbowAtom atom_of_tuple(const RainbowSignature& sig, const ColouredGraph& g,
                                 const std::vector<int>& t) {
    RainbowAtom atom;
    std::vector<int> renum(static_cast<std::size_t>(g.nodes), -1);
    std::vector<int> image;
    for (int x : t) {
        if (renum[static_cast<std::size_t>(x)] < 0) {
            renum[static_cast<std::size_t>(x)] = static_cast<int>(image.size());
            image.push_back(x);
        }
        atom.map.push_back(renum[static_cast<std::size_t>(x)]);
    }
    int k = static_cast<int>(image.size());
    atom.graph = ColouredGraph::blank(k);
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q)
            if (p != q)
                atom.graph.col[static_cast<std::size_t>(p * k + q)] =
                    g.at(image[static_cast<std::size_t>(p)], image[static_cast<std::size_t>(q)]);
    detail::for_each_subset(k, sig.n - 1, [&](const std::vector<int>& T) {
        std::vector<int> U;
        for (int p : T) U.push_back(image[static_cast<std::size_t>(p)]);
        std::sort(U.begin(), U.end());
        auto it = g.shades.find(U);
        if (it != g.shades.end()) atom.graph.shades[T] = it->second;
    });
    return atom;
}

inline AtomicNetwork network_from_graph(const RainbowAtomStructure& ras, const ColouredGraph& g) {
    Palette pal(ras.sig);
    for (int u = 0; u < g.nodes; ++u)
        for (int v = 0; v < g.nodes; ++v)
            if (u != v && g.at(u, v) < 0)
                throw StructuralError("translation: graph is not complete");
    AtomicNetwork net = AtomicNetwork::blank(g.nodes, ras.sig.n);
    detail::for_each_tuple(g.nodes, ras.sig.n, [&](const std::vector<int>& t) {
        RainbowAtom atom = atom_of_tuple(ras.sig, g, t);
        auto it = ras.index.find(rainbow_atom_name(pal, atom));
        if (it == ras.index.end())
            throw StructuralError("translation: tuple names no atom; graph is not valid");
        net.put(t, it->second);
    });
    return net;
}

inline ColouredGraph graph_from_network(const RainbowAtomStructure& ras, const AtomicNetwork& net) {
    int n = ras.sig.n;
    ColouredGraph g = ColouredGraph::blank(net.nodes);
    for (int x = 0; x < net.nodes; ++x)
        for (int y = 0; y < net.nodes; ++y) {
            if (x == y) continue;
            std::vector<int> t(static_cast<std::size_t>(n), y);
            t[0] = x;
            int a = net.at(t);
            if (a < 0 || static_cast<std::size_t>(a) >= ras.reps.size())
                throw StructuralError("translation: network entry is not an atom id");
            const RainbowAtom& rep = ras.reps[static_cast<std::size_t>(a)];
            g.col[static_cast<std::size_t>(x * net.nodes + y)] =
                rep.graph.at(rep.map[0], rep.map[1]);
        }
    detail::for_each_subset(net.nodes, n - 1, [&](const std::vector<int>& T) {
        std::vector<int> t(T);
        t.push_back(T.back());
        int a = net.at(t);
        const RainbowAtom& rep = ras.reps[static_cast<std::size_t>(a)];
        std::vector<int> all;
        for (int p = 0; p < rep.graph.nodes; ++p) all.push_back(p);
        auto it = rep.graph.shades.find(all);
        if (it != rep.graph.shades.end()) g.shades[T] = it->second;
    });
    return g;
}

// canonical-key bridge for game states
inline LabelledObject graph_labelled(const ColouredGraph& g) {
    LabelledObject o = LabelledObject::blank(g.nodes);
    for (int u = 0; u < g.nodes; ++u)
        for (int v = 0; v < g.nodes; ++v)
            if (u != v) o.set_e(u, v, g.at(u, v) + 1);
    for (const auto& [T, mask] : g.shades) o.tuples.emplace_back(T, mask);
    return o;
}

} // namespace arcade
