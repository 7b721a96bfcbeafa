#pragma once

#include "arcade/bitset.hpp"
#include "arcade/caps.hpp"
#include "arcade/error.hpp"
#include "arcade/parallel.hpp"
#include "arcade/report.hpp"

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

namespace arcade {

// Finite relation algebra atom structure. Atoms are indices into `atoms`.
// A stored cycle (a,b,c) means the atom c is a consistent value of a;b.
// The cycle set must be Peircean-closed; ra_validate reports where it is not.
struct RAAtomStructure {
    std::vector<std::string> atoms;
    std::vector<int> converse;   // involution candidate, checked by ra_validate
    Bitset identity;             // subset of atoms
    std::vector<Bitset> rows;    // rows[a*n+b] = {c : (a,b,c) in cycles}

    int n() const { return static_cast<int>(atoms.size()); }

    const Bitset& row(int a, int b) const { return rows[static_cast<std::size_t>(a) * atoms.size() + b]; }
    Bitset& row(int a, int b) { return rows[static_cast<std::size_t>(a) * atoms.size() + b]; }

    bool cycle(int a, int b, int c) const { return row(a, b).test(static_cast<std::size_t>(c)); }
    void add_cycle(int a, int b, int c) { row(a, b).set(static_cast<std::size_t>(c)); }

    bool is_identity(int a) const { return identity.test(static_cast<std::size_t>(a)); }

    long long cycle_count() const {
        long long c = 0;
        for (const auto& r : rows) c += static_cast<long long>(r.count());
        return c;
    }

    int atom_id(const std::string& name) const {
        for (int i = 0; i < n(); ++i)
            if (atoms[i] == name) return i;
        throw StructuralError("unknown atom: " + name);
    }

    // Builds a structure from parts, checking shape (ids in range, unique
    // names, total converse). Law violations are ra_validate's business.
    static RAAtomStructure create(std::vector<std::string> names,
                                  std::vector<int> conv,
                                  const std::vector<int>& identity_atoms,
                                  const std::vector<std::array<int, 3>>& cycles) {
        RAAtomStructure r;
        const int n = static_cast<int>(names.size());
        if (n == 0) throw StructuralError("atom structure needs at least one atom");
        {
            std::unordered_map<std::string, int> seen;
            for (int i = 0; i < n; ++i)
                if (!seen.emplace(names[i], i).second)
                    throw StructuralError("duplicate atom name: " + names[i]);
        }
        if (static_cast<int>(conv.size()) != n)
            throw StructuralError("converse table has wrong size");
        for (int c : conv)
            if (c < 0 || c >= n) throw StructuralError("converse maps outside atom range");
        r.atoms = std::move(names);
        r.converse = std::move(conv);
        r.identity = Bitset(static_cast<std::size_t>(n));
        for (int e : identity_atoms) {
            if (e < 0 || e >= n) throw StructuralError("identity atom id out of range");
            r.identity.set(static_cast<std::size_t>(e));
        }
        r.rows.assign(static_cast<std::size_t>(n) * n, Bitset(static_cast<std::size_t>(n)));
        for (const auto& t : cycles) {
            for (int x : t)
                if (x < 0 || x >= n) throw StructuralError("cycle refers to unknown atom id");
            r.add_cycle(t[0], t[1], t[2]);
        }
        return r;
    }

    bool operator==(const RAAtomStructure& o) const = default;
};

// a;b for sets of atoms: union of the cycle rows. Monotone and normal by
// construction.
inline CmElement ra_compose(const RAAtomStructure& r, const CmElement& x, const CmElement& y) {
    CmElement out(static_cast<std::size_t>(r.n()));
    x.for_each([&](int a) { y.for_each([&](int b) { out |= r.row(a, b); }); });
    return out;
}

inline CmElement ra_singleton(const RAAtomStructure& r, int a) {
    CmElement s(static_cast<std::size_t>(r.n()));
    s.set(static_cast<std::size_t>(a));
    return s;
}

inline CmElement ra_converse(const RAAtomStructure& r, const CmElement& x) {
    CmElement out(static_cast<std::size_t>(r.n()));
    x.for_each([&](int a) { out.set(static_cast<std::size_t>(r.converse[a])); });
    return out;
}

// Checks the atom-structure laws exhaustively:
//   converse involution; Peircean closure of the cycle set; the identity law
//   1';x = x;1' = x computed semantically from the identity atom set; and
//   associativity at atom level ((a;b);c = a;(b;c) as atom sets for all
//   triples, i.e. the exists-e / exists-f witness condition on quadruples).
inline ValidationReport ra_validate(const RAAtomStructure& r, const Caps& caps = Caps::defaults()) {
    ValidationReport rep;
    const int n = r.n();
    const auto name = [&](int a) { return r.atoms[static_cast<std::size_t>(a)]; };

    for (int a = 0; a < n; ++a)
        if (r.converse[static_cast<std::size_t>(r.converse[a])] != a)
            rep.add("converse-involution", {name(a)},
                    "conv(conv(" + name(a) + ")) = " +
                        name(r.converse[static_cast<std::size_t>(r.converse[a])]));

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            r.row(a, b).for_each([&](int c) {
                const int ca = r.converse[a], cb = r.converse[b];
                if (!r.cycle(ca, c, b))
                    rep.add("peircean-closure", {name(a), name(b), name(c)},
                            "missing variant (" + name(ca) + "," + name(c) + "," + name(b) + ")");
                if (!r.cycle(c, cb, a))
                    rep.add("peircean-closure", {name(a), name(b), name(c)},
                            "missing variant (" + name(c) + "," + name(cb) + "," + name(a) + ")");
            });

    for (int a = 0; a < n; ++a) {
        CmElement left(static_cast<std::size_t>(n)), right(static_cast<std::size_t>(n));
        r.identity.for_each([&](int e) {
            left |= r.row(e, a);
            right |= r.row(a, e);
        });
        CmElement just_a = ra_singleton(r, a);
        if (left != just_a)
            rep.add("identity-law", {name(a)}, "1';" + name(a) + " has " +
                    std::to_string(left.count()) + " atoms");
        if (right != just_a)
            rep.add("identity-law", {name(a)}, name(a) + ";1' has " +
                    std::to_string(right.count()) + " atoms");
    }

    // one slice per first argument; merging in slice order keeps the report
    // independent of the worker count
    auto slices = run_indexed_tasks<std::vector<Violation>>(
        static_cast<std::size_t>(n), caps.workers, [&](std::size_t ai) {
            const int a = static_cast<int>(ai);
            std::vector<Violation> found;
            for (int b = 0; b < n; ++b) {
                const Bitset& ab = r.row(a, b);
                for (int c = 0; c < n; ++c) {
                    CmElement left(static_cast<std::size_t>(n));
                    ab.for_each([&](int e) { left |= r.row(e, c); });
                    CmElement right(static_cast<std::size_t>(n));
                    r.row(b, c).for_each([&](int f) { right |= r.row(a, f); });
                    if (left != right) {
                        CmElement diff = left;
                        diff.subtract(right);
                        if (diff.none()) {
                            diff = right;
                            diff.subtract(left);
                        }
                        found.push_back({"associativity", {name(a), name(b), name(c)},
                                         "sides differ at atom " + name(diff.first())});
                    }
                }
            }
            return found;
        });
    for (const auto& slice : slices)
        for (const auto& v : slice) rep.add(v.law, v.witness, v.detail);

    return rep;
}

} // namespace arcade
