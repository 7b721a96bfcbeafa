#pragma once

#include "arcade/ca.hpp"
#include "arcade/caps.hpp"
#include "arcade/error.hpp"
#include "arcade/matrices.hpp"
#include "arcade/ra.hpp"
#include "arcade/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arcade {

// Labelled structure on m nodes: atoms on ordered pairs, labels from a finite
// set Lambda = {0..lambda-1} on every other tuple of length 1..width.
struct Hypernetwork {
    int m = 0;
    int width = 2;
    std::vector<int> pair_label;           // m*m atom ids, row-major
    std::map<std::vector<int>, int> hyper; // tuples of length != 2 -> Lambda id

    int at(int x, int y) const { return pair_label[static_cast<std::size_t>(x * m + y)]; }
    int& at(int x, int y) { return pair_label[static_cast<std::size_t>(x * m + y)]; }

    int label(const std::vector<int>& t) const {
        auto it = hyper.find(t);
        if (it == hyper.end()) throw StructuralError("hypernetwork: no such hyperedge");
        return it->second;
    }

    bool operator==(const Hypernetwork&) const = default;
    bool operator<(const Hypernetwork& o) const {
        if (pair_label != o.pair_label) return pair_label < o.pair_label;
        return hyper < o.hyper;
    }
};

namespace detail {

// hyperedge lengths for a given width: 1, then 3..width
inline std::vector<int> hyper_lengths(int width) {
    std::vector<int> ls{1};
    for (int l = 3; l <= width; ++l) ls.push_back(l);
    return ls;
}

template <typename Fn>
inline void for_each_tuple(int m, int len, Fn&& fn) {
    std::vector<int> t(static_cast<std::size_t>(len), 0);
    while (true) {
        fn(t);
        int p = len - 1;
        while (p >= 0 && t[static_cast<std::size_t>(p)] == m - 1) {
            t[static_cast<std::size_t>(p)] = 0;
            --p;
        }
        if (p < 0) return;
        ++t[static_cast<std::size_t>(p)];
    }
}

inline void check_hyper_shape(const RAAtomStructure& r, const Hypernetwork& n, int lambda) {
    if (n.m < 3) throw StructuralError("hypernetwork: needs at least 3 nodes");
    if (n.width < 2) throw StructuralError("hypernetwork: width must be at least 2");
    if (n.pair_label.size() != static_cast<std::size_t>(n.m) * static_cast<std::size_t>(n.m))
        throw StructuralError("hypernetwork: pair labels have wrong shape");
    for (int a : n.pair_label)
        if (a < 0 || a >= r.n()) throw StructuralError("hypernetwork: pair label out of range");
    std::size_t expected = 0;
    for (int l : hyper_lengths(n.width)) {
        std::size_t c = 1;
        for (int k = 0; k < l; ++k) c *= static_cast<std::size_t>(n.m);
        expected += c;
    }
    if (n.hyper.size() != expected)
        throw StructuralError("hypernetwork: hyperedge table has wrong size");
    for (const auto& [t, v] : n.hyper) {
        if (t.size() == 2 || t.empty() || static_cast<int>(t.size()) > n.width)
            throw StructuralError("hypernetwork: hyperedge of illegal length");
        for (int x : t)
            if (x < 0 || x >= n.m) throw StructuralError("hypernetwork: hyperedge node out of range");
        if (v < 0 || v >= lambda) throw StructuralError("hypernetwork: hyperlabel out of range");
    }
}

} // namespace detail

// The three hypernetwork clauses, checked literally.
inline ValidationReport is_hypernetwork(const RAAtomStructure& r, const Hypernetwork& n,
                                        int lambda) {
    detail::check_hyper_shape(r, n, lambda);
    ValidationReport rep;
    const auto name = [&](int a) { return r.atoms[static_cast<std::size_t>(a)]; };

    for (int x = 0; x < n.m; ++x)
        if (!r.is_identity(n.at(x, x)))
            rep.add("hyper-diagonal", {std::to_string(x)},
                    "N(x,x) = " + name(n.at(x, x)) + " is not an identity atom");

    for (int x = 0; x < n.m; ++x)
        for (int y = 0; y < n.m; ++y)
            for (int z = 0; z < n.m; ++z)
                if (!r.cycle(n.at(x, z), n.at(z, y), n.at(x, y)))
                    rep.add("hyper-triangle",
                            {std::to_string(x), std::to_string(y), std::to_string(z)},
                            "N(x,y) = " + name(n.at(x, y)) + " not below " +
                                name(n.at(x, z)) + ";" + name(n.at(z, y)));

    // identification on pairs
    for (int x0 = 0; x0 < n.m; ++x0)
        for (int y0 = 0; y0 < n.m; ++y0) {
            if (!r.is_identity(n.at(x0, y0))) continue;
            for (int x1 = 0; x1 < n.m; ++x1)
                for (int y1 = 0; y1 < n.m; ++y1) {
                    if (!r.is_identity(n.at(x1, y1))) continue;
                    if (n.at(x0, x1) != n.at(y0, y1))
                        rep.add("hyper-identification",
                                {std::to_string(x0), std::to_string(x1),
                                 std::to_string(y0), std::to_string(y1)},
                                "pointwise-identified pairs carry different atoms");
                }
        }

    // identification on hyperedges
    for (auto i = n.hyper.begin(); i != n.hyper.end(); ++i)
        for (auto j = std::next(i); j != n.hyper.end(); ++j) {
            const auto& s = i->first;
            const auto& t = j->first;
            if (s.size() != t.size()) continue;
            bool pw_st = true, pw_ts = true;
            for (std::size_t k = 0; k < s.size() && (pw_st || pw_ts); ++k) {
                if (!r.is_identity(n.at(s[k], t[k]))) pw_st = false;
                if (!r.is_identity(n.at(t[k], s[k]))) pw_ts = false;
            }
            if ((pw_st || pw_ts) && i->second != j->second) {
                auto show = [](const std::vector<int>& v) {
                    std::string out = "(";
                    for (std::size_t k = 0; k < v.size(); ++k)
                        out += (k ? "," : "") + std::to_string(v[k]);
                    return out + ")";
                };
                rep.add("hyper-identification", {show(s), show(t)},
                        "pointwise-identified hyperedges carry different labels");
            }
        }
    return rep;
}

// M agrees with N on every tuple avoiding all nodes in `avoid`.
inline bool hyper_equiv_except(const Hypernetwork& a, const Hypernetwork& b,
                               const std::vector<int>& avoid) {
    if (a.m != b.m || a.width != b.width)
        throw PreconditionError("hypernetwork: comparing different signatures");
    auto avoided = [&](int x) {
        return std::find(avoid.begin(), avoid.end(), x) != avoid.end();
    };
    for (int x = 0; x < a.m; ++x)
        for (int y = 0; y < a.m; ++y)
            if (!avoided(x) && !avoided(y) && a.at(x, y) != b.at(x, y)) return false;
    auto i = a.hyper.begin();
    auto j = b.hyper.begin();
    for (; i != a.hyper.end(); ++i, ++j) {
        if (j == b.hyper.end() || i->first != j->first)
            throw PreconditionError("hypernetwork: comparing different hyperedge tables");
        bool touches = false;
        for (int x : i->first)
            if (avoided(x)) {
                touches = true;
                break;
            }
        if (!touches && i->second != j->second) return false;
    }
    return true;
}

// N composed with tau: labels pulled back along the node map.
inline Hypernetwork hyper_compose(const Hypernetwork& n, const std::vector<int>& tau) {
    if (tau.size() != static_cast<std::size_t>(n.m))
        throw PreconditionError("hypernetwork: node map has wrong domain");
    for (int v : tau)
        if (v < 0 || v >= n.m) throw PreconditionError("hypernetwork: node map out of range");
    Hypernetwork out;
    out.m = n.m;
    out.width = n.width;
    out.pair_label.assign(n.pair_label.size(), 0);
    for (int x = 0; x < n.m; ++x)
        for (int y = 0; y < n.m; ++y)
            out.at(x, y) = n.at(tau[static_cast<std::size_t>(x)], tau[static_cast<std::size_t>(y)]);
    for (const auto& [t, v] : n.hyper) {
        std::vector<int> mapped(t.size());
        for (std::size_t k = 0; k < t.size(); ++k)
            mapped[k] = tau[static_cast<std::size_t>(t[k])];
        out.hyper[t] = n.hyper.at(mapped);
    }
    return out;
}

// Restriction to fewer nodes and/or smaller width.
inline Hypernetwork hyper_restrict(const Hypernetwork& n, int m_small, int width_small) {
    if (m_small < 3 || m_small > n.m)
        throw PreconditionError("hypernetwork: restricted node count out of range");
    if (width_small < 2 || width_small > n.width)
        throw PreconditionError("hypernetwork: restricted width out of range");
    Hypernetwork out;
    out.m = m_small;
    out.width = width_small;
    out.pair_label.assign(static_cast<std::size_t>(m_small) * static_cast<std::size_t>(m_small), 0);
    for (int x = 0; x < m_small; ++x)
        for (int y = 0; y < m_small; ++y) out.at(x, y) = n.at(x, y);
    for (const auto& [t, v] : n.hyper) {
        if (static_cast<int>(t.size()) > width_small) continue;
        bool inside = std::all_of(t.begin(), t.end(), [&](int x) { return x < m_small; });
        if (inside) out.hyper[t] = v;
    }
    return out;
}

namespace detail {

// Orbits of hyperedges under the closure of pointwise identification; labels
// must be constant on each orbit. Returns, per length, orbit ids of all
// tuples in lexicographic order, numbered by first occurrence.
struct HyperOrbits {
    std::vector<int> lengths;
    std::vector<std::vector<int>> orbit_of; // per length, tuple rank -> orbit id
    std::vector<int> orbit_count;           // per length
    long long total = 0;
};

class UnionFind {
public:
    explicit UnionFind(int n) : up_(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) up_[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (up_[static_cast<std::size_t>(x)] != x) {
            up_[static_cast<std::size_t>(x)] = up_[static_cast<std::size_t>(up_[static_cast<std::size_t>(x)])];
            x = up_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { up_[static_cast<std::size_t>(find(a))] = find(b); }

private:
    std::vector<int> up_;
};

inline HyperOrbits hyper_orbits(const RAAtomStructure& r, const std::vector<int>& pair_label,
                                int m, int width) {
    auto at = [&](int x, int y) { return pair_label[static_cast<std::size_t>(x * m + y)]; };
    auto ident = [&](int x, int y) { return r.is_identity(at(x, y)); };

    // fast path: the node relation x ~ y iff N(x,y) <= Id is an equivalence
    bool equiv = true;
    for (int x = 0; x < m && equiv; ++x) {
        if (!ident(x, x)) equiv = false;
        for (int y = 0; y < m && equiv; ++y) {
            if (ident(x, y) != ident(y, x)) equiv = false;
            for (int z = 0; z < m && equiv; ++z)
                if (ident(x, y) && ident(y, z) && !ident(x, z)) equiv = false;
        }
    }

    HyperOrbits res;
    res.lengths = hyper_lengths(width);

    std::vector<int> node_class(static_cast<std::size_t>(m), -1);
    if (equiv) {
        int next = 0;
        for (int x = 0; x < m; ++x) {
            if (node_class[static_cast<std::size_t>(x)] >= 0) continue;
            node_class[static_cast<std::size_t>(x)] = next;
            for (int y = x + 1; y < m; ++y)
                if (ident(x, y)) node_class[static_cast<std::size_t>(y)] = next;
            ++next;
        }
    }

    for (int len : res.lengths) {
        long long count = 1;
        for (int k = 0; k < len; ++k) count *= m;
        std::vector<int> orbit(static_cast<std::size_t>(count));
        int orbits = 0;
        if (equiv) {
            std::map<std::vector<int>, int> seen;
            long long rank = 0;
            for_each_tuple(m, len, [&](const std::vector<int>& t) {
                std::vector<int> key(t.size());
                for (std::size_t k = 0; k < t.size(); ++k)
                    key[k] = node_class[static_cast<std::size_t>(t[k])];
                auto [it, fresh] = seen.try_emplace(std::move(key), orbits);
                if (fresh) ++orbits;
                orbit[static_cast<std::size_t>(rank++)] = it->second;
            });
        } else {
            if (count > 4096)
                throw CapExceeded("hypernetworks: identification closure too large over a "
                                  "non-equivalence identity relation");
            std::vector<std::vector<int>> tuples;
            tuples.reserve(static_cast<std::size_t>(count));
            for_each_tuple(m, len, [&](const std::vector<int>& t) { tuples.push_back(t); });
            UnionFind uf(static_cast<int>(count));
            for (std::size_t a = 0; a < tuples.size(); ++a)
                for (std::size_t b = a + 1; b < tuples.size(); ++b) {
                    bool fwd = true, bwd = true;
                    for (std::size_t k = 0; k < tuples[a].size() && (fwd || bwd); ++k) {
                        if (!ident(tuples[a][k], tuples[b][k])) fwd = false;
                        if (!ident(tuples[b][k], tuples[a][k])) bwd = false;
                    }
                    if (fwd || bwd) uf.unite(static_cast<int>(a), static_cast<int>(b));
                }
            std::map<int, int> remap;
            for (std::size_t a = 0; a < tuples.size(); ++a) {
                int root = uf.find(static_cast<int>(a));
                auto [it, fresh] = remap.try_emplace(root, orbits);
                if (fresh) ++orbits;
                orbit[a] = it->second;
            }
        }
        res.orbit_of.push_back(std::move(orbit));
        res.orbit_count.push_back(orbits);
        res.total += orbits;
    }
    return res;
}

// All pair-label assignments satisfying diagonal, triangle, and pair
// identification, in lexicographic order of the row-major label vector.
inline std::vector<std::vector<int>> enumerate_pair_parts(const RAAtomStructure& r, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> lab(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), -1);
    auto at = [&](int x, int y) -> int& { return lab[static_cast<std::size_t>(x * m + y)]; };

    std::vector<std::pair<int, int>> slots;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) slots.emplace_back(x, y);

    auto triangles_ok = [&](int x, int y) {
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q)
                for (int s = 0; s < m; ++s) {
                    bool involves = (p == x && s == y) || (s == x && q == y) || (p == x && q == y);
                    if (!involves) continue;
                    int a = at(p, s), b = at(s, q), c = at(p, q);
                    if (a < 0 || b < 0 || c < 0) continue;
                    if (!r.cycle(a, b, c)) return false;
                }
        return true;
    };
    auto identification_ok = [&] {
        for (int x0 = 0; x0 < m; ++x0)
            for (int y0 = 0; y0 < m; ++y0) {
                if (!r.is_identity(at(x0, y0))) continue;
                for (int x1 = 0; x1 < m; ++x1)
                    for (int y1 = 0; y1 < m; ++y1)
                        if (r.is_identity(at(x1, y1)) && at(x0, x1) != at(y0, y1)) return false;
            }
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t slot) -> void {
        if (slot == slots.size()) {
            if (identification_ok()) out.push_back(lab);
            return;
        }
        auto [x, y] = slots[slot];
        if (x == y) {
            for (int e : r.identity.to_vector()) {
                at(x, y) = e;
                if (triangles_ok(x, y)) self(self, slot + 1);
                at(x, y) = -1;
            }
        } else {
            for (int a = 0; a < r.n(); ++a) {
                at(x, y) = a;
                if (triangles_ok(x, y)) self(self, slot + 1);
                at(x, y) = -1;
            }
        }
    };
    dfs(dfs, 0);
    return out;
}

} // namespace detail

// Number of hypernetworks without materializing them.
inline unsigned long long count_hypernetworks(const RAAtomStructure& r, int m, int width,
                                              int lambda, const Caps& caps = Caps::defaults()) {
    if (m < 3) throw PreconditionError("hypernetworks: need at least 3 nodes");
    if (width < 2) throw PreconditionError("hypernetworks: width must be at least 2");
    if (lambda < 1) throw PreconditionError("hypernetworks: label set must be non-empty");
    if (m > caps.max_nodes)
        throw CapExceeded("hypernetworks: node count " + std::to_string(m) +
                          " exceeds the node cap");
    {
        long long space = 1;
        const long long bound = caps.max_hypernetworks * 64;
        for (int k = 0; k < m * (m - 1) / 2; ++k) {
            if (space > bound / r.n()) {
                space = bound + 1;
                break;
            }
            space *= r.n();
        }
        if (space > bound)
            throw CapExceeded("hypernetworks: pair search space exceeds the enumeration cap");
    }
    const unsigned long long limit = 1ull << 62;
    unsigned long long total = 0;
    for (const auto& pl : detail::enumerate_pair_parts(r, m)) {
        auto orb = detail::hyper_orbits(r, pl, m, width);
        unsigned long long mult = 1;
        for (long long k = 0; k < orb.total; ++k) {
            if (mult > limit / static_cast<unsigned long long>(lambda))
                throw CapExceeded("hypernetworks: count overflows");
            mult *= static_cast<unsigned long long>(lambda);
        }
        if (total > limit - mult) throw CapExceeded("hypernetworks: count overflows");
        total += mult;
    }
    return total;
}

// All n-wide m-dimensional hypernetworks over r with labels in {0..lambda-1},
// canonically ordered.
inline std::vector<Hypernetwork> enumerate_hypernetworks(const RAAtomStructure& r, int m,
                                                         int width, int lambda,
                                                         const Caps& caps = Caps::defaults()) {
    unsigned long long total = count_hypernetworks(r, m, width, lambda, caps);
    if (total > static_cast<unsigned long long>(caps.max_hypernetworks))
        throw CapExceeded("hypernetworks: " + std::to_string(total) +
                          " networks exceed the enumeration cap");

    std::vector<Hypernetwork> out;
    out.reserve(static_cast<std::size_t>(total));
    for (const auto& pl : detail::enumerate_pair_parts(r, m)) {
        auto orb = detail::hyper_orbits(r, pl, m, width);
        std::vector<int> choice(static_cast<std::size_t>(orb.total), 0);
        while (true) {
            Hypernetwork n;
            n.m = m;
            n.width = width;
            n.pair_label = pl;
            std::size_t base = 0;
            for (std::size_t li = 0; li < orb.lengths.size(); ++li) {
                long long rank = 0;
                detail::for_each_tuple(m, orb.lengths[li], [&](const std::vector<int>& t) {
                    int o = orb.orbit_of[li][static_cast<std::size_t>(rank++)];
                    n.hyper[t] = choice[base + static_cast<std::size_t>(o)];
                });
                base += static_cast<std::size_t>(orb.orbit_count[li]);
            }
            out.push_back(std::move(n));
            std::size_t p = choice.size();
            while (p > 0 && choice[p - 1] == lambda - 1) choice[--p] = 0;
            if (p == 0) break;
            ++choice[p - 1];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::vector<int> network_signature(const Hypernetwork& n, int z1, int z2 = -1) {
    std::vector<int> s;
    for (int i = 0; i < n.m; ++i)
        for (int j = 0; j < n.m; ++j)
            if (i != z1 && j != z1 && i != z2 && j != z2) s.push_back(n.at(i, j));
    for (const auto& [t, l] : n.hyper) {
        bool avoid = false;
        for (int v : t)
            if (v == z1 || v == z2) {
                avoid = true;
                break;
            }
        if (!avoid) s.push_back(l);
    }
    return s;
}

} // namespace detail

// Hyperbasis clauses over H: atom witness at (0,1), the equiv_z patching
// condition, and amalgamation through a shared interpolant.  Members are
// grouped by their equiv signatures so witness scans stay within one group.
inline ValidationReport is_hyperbasis(const RAAtomStructure& r, int m, int width, int lambda,
                                      const std::vector<Hypernetwork>& H) {
    ValidationReport rep;
    for (const auto& n : H) {
        if (n.m != m || n.width != width)
            throw PreconditionError("hyperbasis: network with wrong signature");
        if (!is_hypernetwork(r, n, lambda).ok())
            throw PreconditionError("hyperbasis: set contains a non-hypernetwork");
    }

    for (int a = 0; a < r.n(); ++a) {
        bool found = false;
        for (const auto& n : H)
            if (n.at(0, 1) == a) {
                found = true;
                break;
            }
        if (!found)
            rep.add("hyperbasis-atom-witness", {r.atoms[static_cast<std::size_t>(a)]},
                    "no network has this atom at (0,1)");
    }

    std::vector<std::vector<int>> gid(static_cast<std::size_t>(m),
                                      std::vector<int>(H.size()));
    std::vector<std::vector<std::vector<int>>> members(static_cast<std::size_t>(m));
    for (int z = 0; z < m; ++z) {
        std::map<std::vector<int>, int> intern;
        for (std::size_t k = 0; k < H.size(); ++k) {
            auto [it, fresh] = intern.try_emplace(detail::network_signature(H[k], z),
                                                  static_cast<int>(members[static_cast<std::size_t>(z)].size()));
            if (fresh) members[static_cast<std::size_t>(z)].push_back({});
            gid[static_cast<std::size_t>(z)][k] = it->second;
            members[static_cast<std::size_t>(z)][static_cast<std::size_t>(it->second)].push_back(
                static_cast<int>(k));
        }
    }

    for (std::size_t ni = 0; ni < H.size(); ++ni) {
        const auto& n = H[ni];
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                for (int z = 0; z < m; ++z) {
                    if (z == x || z == y) continue;
                    int c = n.at(x, y);
                    const auto& cand =
                        members[static_cast<std::size_t>(z)]
                               [static_cast<std::size_t>(gid[static_cast<std::size_t>(z)][ni])];
                    for (int a = 0; a < r.n(); ++a) {
                        for (int b = 0; b < r.n(); ++b) {
                            if (!r.cycle(a, b, c)) continue;
                            bool found = false;
                            for (int k : cand)
                                if (H[static_cast<std::size_t>(k)].at(x, z) == a &&
                                    H[static_cast<std::size_t>(k)].at(z, y) == b) {
                                    found = true;
                                    break;
                                }
                            if (!found) {
                                rep.add("hyperbasis-patching",
                                        {"N" + std::to_string(ni), std::to_string(x),
                                         std::to_string(y), std::to_string(z),
                                         r.atoms[static_cast<std::size_t>(a)],
                                         r.atoms[static_cast<std::size_t>(b)]},
                                        "no equiv_z witness with the required entries");
                                if (rep.total >= 8) return rep;
                            }
                        }
                    }
                }
    }

    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            if (x == y) continue;
            std::set<std::pair<int, int>> present;
            for (std::size_t k = 0; k < H.size(); ++k)
                present.insert({gid[static_cast<std::size_t>(x)][k],
                                gid[static_cast<std::size_t>(y)][k]});
            std::map<std::vector<int>, std::pair<std::map<int, int>, std::map<int, int>>> cls;
            for (std::size_t k = 0; k < H.size(); ++k) {
                auto& c = cls[detail::network_signature(H[k], x, y)];
                c.first.try_emplace(gid[static_cast<std::size_t>(x)][k], static_cast<int>(k));
                c.second.try_emplace(gid[static_cast<std::size_t>(y)][k], static_cast<int>(k));
            }
            for (const auto& [sig, reps] : cls)
                for (const auto& [gx, mi] : reps.first)
                    for (const auto& [gy, ni] : reps.second)
                        if (!present.count({gx, gy})) {
                            rep.add("hyperbasis-amalgamation",
                                    {"N" + std::to_string(mi), "N" + std::to_string(ni),
                                     std::to_string(x), std::to_string(y)},
                                    "no L with M equiv_x L equiv_y N");
                            if (rep.total >= 8) return rep;
                        }
        }
    return rep;
}

// Closure under every node map, the paper's symmetry for hypernetwork sets.
inline bool is_symmetric_hyperset(const std::vector<Hypernetwork>& H) {
    if (H.empty()) return true;
    int m = H.front().m;
    std::vector<Hypernetwork> sorted = H;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> tau(static_cast<std::size_t>(m), 0);
    while (true) {
        for (const auto& n : H) {
            Hypernetwork img = hyper_compose(n, tau);
            if (!std::binary_search(sorted.begin(), sorted.end(), img)) return false;
        }
        std::size_t p = tau.size();
        while (p > 0 && tau[p - 1] == m - 1) tau[--p] = 0;
        if (p == 0) return true;
        ++tau[p - 1];
    }
}

// Atom structure of Ca(H) for a symmetric hyperbasis H: one atom per network,
// ti from equiv_i, eij from identity entries, pij from transpositions.
inline CAAtomStructure pea_from_hyperbasis(const RAAtomStructure& r, int m, int width,
                                           int lambda, const std::vector<Hypernetwork>& H) {
    if (!is_symmetric_hyperset(H))
        throw PreconditionError(
            "pea_from_hyperbasis: polyadic construction requested for a non-symmetric set");
    ValidationReport basis = is_hyperbasis(r, m, width, lambda, H);
    if (!basis.ok())
        throw PreconditionError("pea_from_hyperbasis: hyperbasis check failed: " +
                                basis.summary());

    std::vector<Hypernetwork> sorted = H;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::map<Hypernetwork, int> index;
    for (std::size_t k = 0; k < sorted.size(); ++k)
        index.emplace(sorted[k], static_cast<int>(k));

    std::vector<std::string> names;
    names.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) names.push_back("N" + std::to_string(k));

    std::vector<CARelation> ti;
    for (int i = 0; i < m; ++i) {
        std::map<std::vector<int>, int> sig_class;
        std::vector<int> class_of(sorted.size());
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            std::vector<int> sig;
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y)
                    if (x != i && y != i) sig.push_back(sorted[k].at(x, y));
            for (const auto& [t, v] : sorted[k].hyper)
                if (std::find(t.begin(), t.end(), i) == t.end()) sig.push_back(v);
            auto [it, fresh] =
                sig_class.try_emplace(std::move(sig), static_cast<int>(sig_class.size()));
            (void)fresh;
            class_of[k] = it->second;
        }
        ti.push_back(CARelation::partition(std::move(class_of)));
    }

    std::vector<Bitset> eij;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Bitset s(sorted.size());
            for (std::size_t k = 0; k < sorted.size(); ++k)
                if (r.is_identity(sorted[k].at(i, j))) s.set(k);
            eij.push_back(std::move(s));
        }

    std::vector<std::vector<int>> pij;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<int> tau(static_cast<std::size_t>(m));
            for (int v = 0; v < m; ++v) tau[static_cast<std::size_t>(v)] = v;
            tau[static_cast<std::size_t>(i)] = j;
            tau[static_cast<std::size_t>(j)] = i;
            std::vector<int> pm(sorted.size());
            for (std::size_t k = 0; k < sorted.size(); ++k)
                pm[k] = index.at(hyper_compose(sorted[k], tau));
            pij.push_back(std::move(pm));
        }

    return CAAtomStructure::create(m, std::move(names), std::move(ti), std::move(eij),
                                   std::move(pij));
}

} // namespace arcade
