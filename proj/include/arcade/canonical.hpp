#pragma once

#include "arcade/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace arcade {

// Finite node-labelled object: vertex colours, oriented edge colours, and
// arbitrary labelled node tuples. Canonicalization relabels nodes 0..n-1 to
// the lexicographically least encoding, so two objects are isomorphic iff
// their canonical forms are equal.
struct LabelledObject {
    int n = 0;
    std::vector<int> vertex;                              // size n
    std::vector<int> edge;                                // size n*n, oriented
    std::vector<std::pair<std::vector<int>, int>> tuples; // labelled node tuples

    static LabelledObject blank(int n) {
        LabelledObject o;
        o.n = n;
        o.vertex.assign(static_cast<std::size_t>(n), 0);
        o.edge.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
        return o;
    }

    int e(int u, int v) const { return edge[static_cast<std::size_t>(u * n + v)]; }
    void set_e(int u, int v, int c) { edge[static_cast<std::size_t>(u * n + v)] = c; }

    bool operator==(const LabelledObject&) const = default;
};

namespace detail {

// Iterated colour refinement. Returns per-node colours where equal colours
// are compatible under some candidate isomorphism; colour ids are ranks of
// sorted signatures, hence invariant across isomorphic copies.
inline std::vector<int> refine_colours(const LabelledObject& o) {
    std::size_t n = static_cast<std::size_t>(o.n);
    std::vector<int> colour(n, 0);
    {
        std::map<int, int> rank;
        for (int v : o.vertex) rank.emplace(v, 0);
        int next = 0;
        for (auto& [k, r] : rank) r = next++;
        for (std::size_t v = 0; v < n; ++v) colour[v] = rank[o.vertex[v]];
    }
    std::size_t classes = 0;
    for (int round = 0; round < o.n; ++round) {
        std::map<std::vector<std::int64_t>, int> rank;
        std::vector<std::vector<std::int64_t>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.push_back(colour[v]);
            std::vector<std::int64_t> nb;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v) continue;
                nb.push_back((static_cast<std::int64_t>(colour[u]) << 40) ^
                             (static_cast<std::int64_t>(o.e(static_cast<int>(v),
                                                            static_cast<int>(u)) + 1)
                              << 20) ^
                             static_cast<std::int64_t>(o.e(static_cast<int>(u),
                                                           static_cast<int>(v)) + 1));
            }
            std::sort(nb.begin(), nb.end());
            s.insert(s.end(), nb.begin(), nb.end());
            std::vector<std::int64_t> tp;
            for (const auto& [t, label] : o.tuples)
                for (std::size_t p = 0; p < t.size(); ++p) {
                    if (t[p] != static_cast<int>(v)) continue;
                    std::int64_t h = (static_cast<std::int64_t>(label + 1) << 32) ^
                                     (static_cast<std::int64_t>(p) << 24);
                    for (int m : t) h = h * 1000003 + colour[static_cast<std::size_t>(m)] + 1;
                    tp.push_back(h);
                }
            std::sort(tp.begin(), tp.end());
            s.push_back(static_cast<std::int64_t>(tp.size()));
            s.insert(s.end(), tp.begin(), tp.end());
            rank.emplace(s, 0);
        }
        int next = 0;
        for (auto& [k, r] : rank) r = next++;
        for (std::size_t v = 0; v < n; ++v) colour[v] = rank[sig[v]];
        if (rank.size() == classes) break;
        classes = rank.size();
    }
    return colour;
}

inline std::vector<std::int64_t> encode_under(const LabelledObject& o,
                                              const std::vector<int>& newid) {
    std::size_t n = static_cast<std::size_t>(o.n);
    std::vector<int> old_of(n);
    for (std::size_t v = 0; v < n; ++v) old_of[static_cast<std::size_t>(newid[v])] = static_cast<int>(v);
    std::vector<std::int64_t> enc;
    enc.reserve(1 + n + n * n);
    enc.push_back(o.n);
    for (std::size_t v = 0; v < n; ++v) enc.push_back(o.vertex[static_cast<std::size_t>(old_of[v])]);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            enc.push_back(o.e(old_of[u], old_of[v]));
    std::vector<std::vector<std::int64_t>> ts;
    ts.reserve(o.tuples.size());
    for (const auto& [t, label] : o.tuples) {
        std::vector<std::int64_t> one;
        one.reserve(t.size() + 2);
        one.push_back(static_cast<std::int64_t>(t.size()));
        for (int m : t) one.push_back(newid[static_cast<std::size_t>(m)]);
        one.push_back(label);
        ts.push_back(std::move(one));
    }
    std::sort(ts.begin(), ts.end());
    for (const auto& one : ts) enc.insert(enc.end(), one.begin(), one.end());
    return enc;
}

} // namespace detail

// Relabelling old node -> new node realizing the canonical form.
inline std::vector<int> canonical_order(const LabelledObject& o,
                                        long long perm_cap = 1'000'000) {
    std::size_t n = static_cast<std::size_t>(o.n);
    if (n == 0) return {};
    std::vector<int> colour = detail::refine_colours(o);
    std::vector<std::vector<int>> cells;
    {
        int classes = *std::max_element(colour.begin(), colour.end()) + 1;
        cells.assign(static_cast<std::size_t>(classes), {});
        for (std::size_t v = 0; v < n; ++v)
            cells[static_cast<std::size_t>(colour[v])].push_back(static_cast<int>(v));
    }
    long long work = 1;
    for (const auto& c : cells) {
        for (std::size_t k = 2; k <= c.size(); ++k) {
            work *= static_cast<long long>(k);
            if (work > perm_cap)
                throw CapExceeded("canonical: candidate relabellings over cap");
        }
    }

    std::vector<int> order;
    order.reserve(n);
    for (const auto& c : cells) order.insert(order.end(), c.begin(), c.end());

    std::vector<int> best_newid;
    std::vector<std::int64_t> best_enc;
    // enumerate cell-respecting orders: permute within each cell
    std::vector<std::vector<int>> perms(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) perms[c] = cells[c];
    auto consider = [&]() {
        std::vector<int> newid(n);
        int next = 0;
        for (const auto& p : perms)
            for (int v : p) newid[static_cast<std::size_t>(v)] = next++;
        auto enc = detail::encode_under(o, newid);
        if (best_enc.empty() || enc < best_enc) {
            best_enc = std::move(enc);
            best_newid = std::move(newid);
        }
    };
    // odometer over per-cell permutations
    std::vector<bool> done(cells.size(), false);
    for (auto& p : perms) std::sort(p.begin(), p.end());
    while (true) {
        consider();
        std::size_t c = 0;
        while (c < perms.size() && !std::next_permutation(perms[c].begin(), perms[c].end())) ++c;
        if (c == perms.size()) break;
    }
    return best_newid;
}

inline LabelledObject apply_order(const LabelledObject& o, const std::vector<int>& newid) {
    LabelledObject out = LabelledObject::blank(o.n);
    std::size_t n = static_cast<std::size_t>(o.n);
    for (std::size_t v = 0; v < n; ++v)
        out.vertex[static_cast<std::size_t>(newid[v])] = o.vertex[v];
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            out.set_e(newid[u], newid[v], o.e(static_cast<int>(u), static_cast<int>(v)));
    for (const auto& [t, label] : o.tuples) {
        std::vector<int> nt;
        nt.reserve(t.size());
        for (int m : t) nt.push_back(newid[static_cast<std::size_t>(m)]);
        out.tuples.emplace_back(std::move(nt), label);
    }
    std::sort(out.tuples.begin(), out.tuples.end());
    return out;
}

inline LabelledObject canonical_form(const LabelledObject& o, long long perm_cap = 1'000'000) {
    return apply_order(o, canonical_order(o, perm_cap));
}

// Compact text key of the canonical form; equal keys iff isomorphic objects.
inline std::string canonical_key(const LabelledObject& o, long long perm_cap = 1'000'000) {
    auto enc = detail::encode_under(o, canonical_order(o, perm_cap));
    std::string s;
    s.reserve(enc.size() * 3);
    for (std::int64_t v : enc) {
        if (v >= 0 && v < 64) {
            s.push_back(static_cast<char>('0' + (v & 31)));
            s.push_back(static_cast<char>('a' + ((v >> 5) & 1)));
        } else {
            s.push_back('#');
            s += std::to_string(v);
            s.push_back(';');
        }
    }
    return s;
}

} // namespace arcade
