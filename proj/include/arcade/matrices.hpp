#pragma once

#include "arcade/ca.hpp"
#include "arcade/caps.hpp"
#include "arcade/error.hpp"
#include "arcade/parallel.hpp"
#include "arcade/ra.hpp"
#include "arcade/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arcade {

// n by n matrix of atoms of a fixed RAAtomStructure: identity on the
// diagonal, converse-symmetric, and every (i,k,j) triangle a consistent cycle.
struct BasicMatrix {
    int n = 0;
    std::vector<int> entries; // row-major atom ids

    int at(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
    int& at(int i, int j) { return entries[static_cast<std::size_t>(i * n + j)]; }

    bool operator==(const BasicMatrix&) const = default;
    bool operator<(const BasicMatrix& o) const { return entries < o.entries; }
};

inline std::string matrix_to_string(const RAAtomStructure& r, const BasicMatrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.n; ++i) {
        if (i) s += "|";
        for (int j = 0; j < m.n; ++j) {
            if (j) s += ",";
            s += r.atoms[static_cast<std::size_t>(m.at(i, j))];
        }
    }
    return s + "]";
}

// The three matrix invariants, checked literally.
inline bool is_basic_matrix(const RAAtomStructure& r, const BasicMatrix& m) {
    int n = m.n;
    if (static_cast<int>(m.entries.size()) != n * n) return false;
    for (int e : m.entries)
        if (e < 0 || e >= r.n()) return false;
    for (int i = 0; i < n; ++i)
        if (!r.identity.test(static_cast<std::size_t>(m.at(i, i)))) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.at(j, i) != r.converse[static_cast<std::size_t>(m.at(i, j))]) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!r.cycle(m.at(i, k), m.at(k, j), m.at(i, j))) return false;
    return true;
}

namespace detail {

// Backtracking over the upper triangle in lex pair order; diagonal entries
// range over identity atoms. Output is in lex order of the entry vector.
class MatrixEnumerator {
public:
    MatrixEnumerator(const RAAtomStructure& r, int n) : r_(r), n_(n) {
        identity_atoms_ = r.identity.to_vector();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
    }

    // Enumerates matrices whose first upper-triangle entry (if any) equals
    // `first_atom`; first_atom < 0 means no restriction.
    std::vector<BasicMatrix> run(int first_atom) {
        std::vector<BasicMatrix> out;
        BasicMatrix m;
        m.n = n_;
        m.entries.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
        diag_dfs(m, 0, first_atom, out);
        return out;
    }

private:
    void diag_dfs(BasicMatrix& m, int i, int first_atom, std::vector<BasicMatrix>& out) {
        if (i == n_) {
            pair_dfs(m, 0, first_atom, out);
            return;
        }
        for (int e : identity_atoms_) {
            m.at(i, i) = e;
            if (r_.cycle(e, e, e)) diag_dfs(m, i + 1, first_atom, out);
            m.at(i, i) = -1;
        }
    }

    bool triangles_ok(const BasicMatrix& m, int i, int j) const {
        // all triangle instances whose three entries are assigned and which
        // involve the fresh pair (i, j)
        if (!r_.cycle(m.at(i, i), m.at(i, j), m.at(i, j))) return false;
        if (!r_.cycle(m.at(i, j), m.at(j, j), m.at(i, j))) return false;
        if (!r_.cycle(m.at(i, j), m.at(j, i), m.at(i, i))) return false;
        if (!r_.cycle(m.at(j, i), m.at(i, j), m.at(j, j))) return false;
        if (!r_.cycle(m.at(j, i), m.at(i, i), m.at(j, i))) return false;
        if (!r_.cycle(m.at(j, j), m.at(j, i), m.at(j, i))) return false;
        for (int k = 0; k < n_; ++k) {
            if (k == i || k == j) continue;
            if (m.at(i, k) < 0 || m.at(k, j) < 0) continue;
            int ik = m.at(i, k), ki = m.at(k, i);
            int jk = m.at(j, k), kj = m.at(k, j);
            int ij = m.at(i, j), ji = m.at(j, i);
            if (!r_.cycle(ik, kj, ij)) return false;
            if (!r_.cycle(jk, ki, ji)) return false;
            if (!r_.cycle(ij, jk, ik)) return false;
            if (!r_.cycle(ji, ik, jk)) return false;
            if (!r_.cycle(kj, ji, ki)) return false;
            if (!r_.cycle(ki, ij, kj)) return false;
        }
        return true;
    }

    void pair_dfs(BasicMatrix& m, std::size_t p, int first_atom, std::vector<BasicMatrix>& out) {
        if (p == pairs_.size()) {
            out.push_back(m);
            return;
        }
        auto [i, j] = pairs_[p];
        int total = static_cast<int>(r_.n());
        for (int a = 0; a < total; ++a) {
            if (p == 0 && first_atom >= 0 && a != first_atom) continue;
            m.at(i, j) = a;
            m.at(j, i) = r_.converse[static_cast<std::size_t>(a)];
            if (triangles_ok(m, i, j)) pair_dfs(m, p + 1, first_atom, out);
            m.at(i, j) = -1;
            m.at(j, i) = -1;
        }
    }

    const RAAtomStructure& r_;
    int n_;
    std::vector<int> identity_atoms_;
    std::vector<std::pair<int, int>> pairs_;
};

} // namespace detail

inline std::vector<BasicMatrix> enumerate_basic_matrices(const RAAtomStructure& r, int n,
                                                         const Caps& caps = Caps::defaults()) {
    if (n < 3) throw PreconditionError("matrices: n must be at least 3");
    double search = std::pow(static_cast<double>(r.n()),
                             static_cast<double>(n) * (n - 1) / 2.0);
    if (search > static_cast<double>(caps.max_matrices) * 64.0)
        throw CapExceeded("matrices: search space " + std::to_string(search) +
                          " exceeds the enumeration cap");
    // parallel over the first upper-triangle entry; slice order keeps the
    // merged output identical to a sequential run
    auto slices = run_indexed_tasks<std::vector<BasicMatrix>>(
        r.n(), caps.workers,
        [&](std::size_t a) { return detail::MatrixEnumerator(r, n).run(static_cast<int>(a)); });
    std::vector<BasicMatrix> out;
    for (auto& s : slices) {
        for (auto& m : s) {
            out.push_back(std::move(m));
            if (out.size() > static_cast<std::size_t>(caps.max_matrices))
                throw CapExceeded("matrices: more than " + std::to_string(caps.max_matrices) +
                                  " basic matrices");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// agreement on all entries whose row and column both avoid z
inline bool matrix_equiv(const BasicMatrix& a, const BasicMatrix& b, int z) {
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (i != z && j != z && a.at(i, j) != b.at(i, j)) return false;
    return true;
}

inline bool matrix_equiv2(const BasicMatrix& a, const BasicMatrix& b, int x, int y) {
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (i != x && j != x && i != y && j != y && a.at(i, j) != b.at(i, j)) return false;
    return true;
}

namespace detail {

inline std::vector<int> matrix_signature(const BasicMatrix& m, int z) {
    std::vector<int> s;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != z && j != z) s.push_back(m.at(i, j));
    return s;
}

inline std::vector<int> matrix_signature2(const BasicMatrix& m, int x, int y) {
    std::vector<int> s;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != x && j != x && i != y && j != y) s.push_back(m.at(i, j));
    return s;
}

} // namespace detail

// Cylindric-basis conditions over B:
//  (i)  every atom occurs as some M(0,1)
//  (ii) for all M in B, x,y,z (z distinct from x,y) and atoms a,b with
//       M(x,y) <= a;b there is N in B with N equiv_z M, N(x,z)=a, N(z,y)=b
//  (iii) amalgamation: M equiv_xy N implies some L with M equiv_x L equiv_y N
// Members are grouped by their equiv signatures so witness scans stay within
// one group.
inline ValidationReport is_cylindric_basis(const RAAtomStructure& r, int n,
                                           const std::vector<BasicMatrix>& B) {
    ValidationReport rep;
    for (const auto& m : B)
        if (m.n != n || !is_basic_matrix(r, m))
            throw PreconditionError("basis: set contains a non-basic matrix");

    for (int a = 0; a < r.n(); ++a) {
        bool found = false;
        for (const auto& m : B)
            if (m.at(0, 1) == a) {
                found = true;
                break;
            }
        if (!found)
            rep.add("basis-atom-witness", {r.atoms[static_cast<std::size_t>(a)]},
                    "no matrix has this atom at (0,1)");
    }

    std::vector<std::vector<int>> gid(static_cast<std::size_t>(n),
                                      std::vector<int>(B.size()));
    std::vector<std::vector<std::vector<int>>> members(static_cast<std::size_t>(n));
    for (int z = 0; z < n; ++z) {
        std::map<std::vector<int>, int> intern;
        for (std::size_t k = 0; k < B.size(); ++k) {
            auto [it, fresh] = intern.try_emplace(detail::matrix_signature(B[k], z),
                                                  static_cast<int>(members[static_cast<std::size_t>(z)].size()));
            if (fresh) members[static_cast<std::size_t>(z)].push_back({});
            gid[static_cast<std::size_t>(z)][k] = it->second;
            members[static_cast<std::size_t>(z)][static_cast<std::size_t>(it->second)].push_back(
                static_cast<int>(k));
        }
    }

    for (std::size_t mi = 0; mi < B.size(); ++mi) {
        const auto& m = B[mi];
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    if (z == x || z == y) continue;
                    int c = m.at(x, y);
                    const auto& cand =
                        members[static_cast<std::size_t>(z)]
                               [static_cast<std::size_t>(gid[static_cast<std::size_t>(z)][mi])];
                    for (int a = 0; a < r.n(); ++a)
                        for (int b = 0; b < r.n(); ++b) {
                            if (!r.cycle(a, b, c)) continue;
                            bool found = false;
                            for (int k : cand)
                                if (B[static_cast<std::size_t>(k)].at(x, z) == a &&
                                    B[static_cast<std::size_t>(k)].at(z, y) == b) {
                                    found = true;
                                    break;
                                }
                            if (!found) {
                                rep.add("basis-patching",
                                        {matrix_to_string(r, m), std::to_string(x),
                                         std::to_string(y), std::to_string(z),
                                         r.atoms[static_cast<std::size_t>(a)],
                                         r.atoms[static_cast<std::size_t>(b)]},
                                        "no equiv_z witness with the required (x,z), (z,y) entries");
                                if (rep.total >= 8) return rep;
                            }
                        }
                }
    }

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            std::set<std::pair<int, int>> present;
            for (std::size_t k = 0; k < B.size(); ++k)
                present.insert({gid[static_cast<std::size_t>(x)][k],
                                gid[static_cast<std::size_t>(y)][k]});
            std::map<std::vector<int>, std::pair<std::map<int, int>, std::map<int, int>>> cls;
            for (std::size_t k = 0; k < B.size(); ++k) {
                auto& c = cls[detail::matrix_signature2(B[k], x, y)];
                c.first.try_emplace(gid[static_cast<std::size_t>(x)][k], static_cast<int>(k));
                c.second.try_emplace(gid[static_cast<std::size_t>(y)][k], static_cast<int>(k));
            }
            for (const auto& [sig, reps] : cls)
                for (const auto& [gx, mi] : reps.first)
                    for (const auto& [gy, ni] : reps.second)
                        if (!present.count({gx, gy})) {
                            rep.add("basis-amalgamation",
                                    {matrix_to_string(r, B[static_cast<std::size_t>(mi)]),
                                     matrix_to_string(r, B[static_cast<std::size_t>(ni)]),
                                     std::to_string(x), std::to_string(y)},
                                    "no L with M equiv_x L equiv_y N");
                            if (rep.total >= 8) return rep;
                        }
        }
    return rep;
}

// Atom structure on a cylindric basis: ti by equiv_i, eij by identity entries,
// pij by transposing rows and columns when B is closed under that action.
inline CAAtomStructure ca_from_matrices(const RAAtomStructure& r, int n,
                                        const std::vector<BasicMatrix>& B) {
    ValidationReport basis = is_cylindric_basis(r, n, B);
    if (!basis.ok())
        throw PreconditionError("ca_from_matrices: basis check failed: " + basis.summary());

    std::vector<BasicMatrix> sorted = B;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::map<std::vector<int>, int> index;
    for (std::size_t k = 0; k < sorted.size(); ++k) index[sorted[k].entries] = static_cast<int>(k);

    std::vector<std::string> names;
    names.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) names.push_back("M" + std::to_string(k));

    std::vector<CARelation> ti;
    for (int i = 0; i < n; ++i) {
        std::map<std::vector<int>, int> sig_class;
        std::vector<int> class_of(sorted.size());
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            std::vector<int> sig;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    if (p != i && q != i) sig.push_back(sorted[k].at(p, q));
            auto [it, fresh] = sig_class.try_emplace(std::move(sig),
                                                     static_cast<int>(sig_class.size()));
            (void)fresh;
            class_of[k] = it->second;
        }
        ti.push_back(CARelation::partition(std::move(class_of)));
    }

    std::vector<Bitset> eij;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Bitset s(sorted.size());
            for (std::size_t k = 0; k < sorted.size(); ++k)
                if (r.identity.test(static_cast<std::size_t>(sorted[k].at(i, j)))) s.set(k);
            eij.push_back(std::move(s));
        }

    bool closed = true;
    std::vector<std::vector<int>> pij;
    for (int i = 0; i < n && closed; ++i)
        for (int j = 0; j < n && closed; ++j) {
            std::vector<int> pm(sorted.size());
            for (std::size_t k = 0; k < sorted.size(); ++k) {
                BasicMatrix t;
                t.n = n;
                t.entries.resize(sorted[k].entries.size());
                auto tau = [&](int v) { return v == i ? j : (v == j ? i : v); };
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) t.at(p, q) = sorted[k].at(tau(p), tau(q));
                auto it = index.find(t.entries);
                if (it == index.end()) {
                    closed = false;
                    break;
                }
                pm[k] = it->second;
            }
            pij.push_back(std::move(pm));
        }
    if (!closed) pij.clear();

    return CAAtomStructure::create(n, std::move(names), std::move(ti), std::move(eij),
                                   std::move(pij));
}

} // namespace arcade
