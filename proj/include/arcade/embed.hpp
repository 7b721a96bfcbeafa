#pragma once

#include "arcade/ca.hpp"
#include "arcade/error.hpp"
#include "arcade/ra.hpp"
#include "arcade/report.hpp"

#include <string>
#include <vector>

namespace arcade {

namespace detail {

// copy_map[a] is the set of big atoms standing for small atom a. Images must
// be nonempty and pairwise disjoint; the induced map on complex algebras is
// X |-> union of images.
inline void check_copy_map(std::size_t small_atoms, std::size_t big_atoms,
                           const std::vector<Bitset>& copy_map) {
    if (copy_map.size() != small_atoms)
        throw PreconditionError("embed: copy_map must cover every small atom");
    Bitset seen(big_atoms);
    for (std::size_t a = 0; a < copy_map.size(); ++a) {
        if (copy_map[a].size() != big_atoms)
            throw PreconditionError("embed: copy image over wrong atom set");
        if (copy_map[a].none())
            throw PreconditionError("embed: empty copy image for atom " + std::to_string(a));
        if (seen.intersects(copy_map[a]))
            throw PreconditionError("embed: overlapping copy images at atom " + std::to_string(a));
        seen |= copy_map[a];
    }
}

inline Bitset map_set(const std::vector<Bitset>& copy_map, const Bitset& x, std::size_t big_atoms) {
    Bitset out(big_atoms);
    x.for_each([&](std::size_t a) { out |= copy_map[a]; });
    return out;
}

} // namespace detail

// Does a |-> join(copy_map(a)) extend to an embedding of complex algebras?
// Checked exhaustively on atoms and atom pairs (enough by additivity).
inline ValidationReport embed_by_copies(const RAAtomStructure& small, const RAAtomStructure& big,
                                        const std::vector<Bitset>& copy_map) {
    detail::check_copy_map(small.n(), big.n(), copy_map);
    ValidationReport rep;
    std::size_t bn = big.n();

    Bitset cover(bn);
    for (const auto& img : copy_map) cover |= img;
    if (cover.count() != bn) {
        Bitset miss = cover.complement();
        rep.add("top-cover", {big.atoms[static_cast<std::size_t>(miss.first())]},
                "big atom lies in no copy image, so tops differ");
        return rep;
    }

    Bitset id_img = detail::map_set(copy_map, small.identity, bn);
    if (!(id_img == big.identity)) {
        Bitset diff = id_img;
        diff.subtract(big.identity);
        std::string side = "image has extra";
        if (diff.none()) {
            diff = big.identity;
            diff.subtract(id_img);
            side = "image misses";
        }
        rep.add("identity", {big.atoms[static_cast<std::size_t>(diff.first())]},
                side + " identity atom");
        return rep;
    }

    for (std::size_t a = 0; a < static_cast<std::size_t>(small.n()); ++a) {
        Bitset lhs = ra_converse(big, copy_map[a]);
        const Bitset& rhs = copy_map[static_cast<std::size_t>(small.converse[a])];
        if (!(lhs == rhs)) {
            rep.add("converse", {small.atoms[a]},
                    "converse of the copy image is not the image of the converse");
            return rep;
        }
    }

    for (std::size_t a = 0; a < static_cast<std::size_t>(small.n()); ++a)
        for (std::size_t b = 0; b < static_cast<std::size_t>(small.n()); ++b) {
            Bitset lhs = ra_compose(big, copy_map[a], copy_map[b]);
            Bitset rhs = detail::map_set(copy_map, small.row(static_cast<int>(a), static_cast<int>(b)), bn);
            if (!(lhs == rhs)) {
                Bitset diff = lhs;
                diff.subtract(rhs);
                std::string side = "composite gains";
                if (diff.none()) {
                    diff = rhs;
                    diff.subtract(lhs);
                    side = "composite loses";
                }
                rep.add("composition",
                        {small.atoms[a], small.atoms[b],
                         big.atoms[static_cast<std::size_t>(diff.first())]},
                        side + " this atom after splitting");
                return rep;
            }
        }
    return rep;
}

inline ValidationReport embed_by_copies(const CAAtomStructure& small, const CAAtomStructure& big,
                                        const std::vector<Bitset>& copy_map) {
    if (small.dim != big.dim) throw PreconditionError("embed: dimensions differ");
    detail::check_copy_map(small.n_atoms(), big.n_atoms(), copy_map);
    ValidationReport rep;
    std::size_t bn = big.n_atoms();
    int d = small.dim;

    Bitset cover(bn);
    for (const auto& img : copy_map) cover |= img;
    if (cover.count() != bn) {
        Bitset miss = cover.complement();
        rep.add("top-cover", {big.atoms[static_cast<std::size_t>(miss.first())]},
                "big atom lies in no copy image, so tops differ");
        return rep;
    }

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Bitset img = detail::map_set(copy_map, small.e(i, j), bn);
            if (!(img == big.e(i, j))) {
                Bitset diff = img;
                diff.subtract(big.e(i, j));
                std::string side = "image has extra";
                if (diff.none()) {
                    diff = big.e(i, j);
                    diff.subtract(img);
                    side = "image misses";
                }
                rep.add("diagonal", {big.atoms[static_cast<std::size_t>(diff.first())]},
                        side + " atom of e" + std::to_string(i) + std::to_string(j));
                return rep;
            }
        }

    for (int i = 0; i < d; ++i)
        for (std::size_t a = 0; a < small.n_atoms(); ++a) {
            Bitset lhs = cm_cylindrify(big, i, copy_map[a]);
            Bitset sm(small.n_atoms());
            sm.set(a);
            Bitset rhs = detail::map_set(copy_map, cm_cylindrify(small, i, sm), bn);
            if (!(lhs == rhs)) {
                Bitset diff = lhs;
                diff.subtract(rhs);
                std::string side = "cylindrification gains";
                if (diff.none()) {
                    diff = rhs;
                    diff.subtract(lhs);
                    side = "cylindrification loses";
                }
                rep.add("cylindrification",
                        {small.atoms[a], big.atoms[static_cast<std::size_t>(diff.first())]},
                        side + " this atom after splitting (c" + std::to_string(i) + ")");
                return rep;
            }
        }

    if (small.has_pij && big.has_pij) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const auto& ps = small.p(i, j);
                const auto& pb = big.p(i, j);
                for (std::size_t a = 0; a < small.n_atoms(); ++a) {
                    Bitset lhs(bn);
                    bool any_undef = false;
                    copy_map[a].for_each([&](std::size_t x) {
                        if (pb[x] >= 0) lhs.set(static_cast<std::size_t>(pb[x]));
                        else any_undef = true;
                    });
                    if (ps[a] >= 0) {
                        if (any_undef || !(lhs == copy_map[static_cast<std::size_t>(ps[a])])) {
                            rep.add("substitution", {small.atoms[a]},
                                    "p" + std::to_string(i) + std::to_string(j) +
                                        " image of the copies is not the copies of the image");
                            return rep;
                        }
                    } else if (lhs.any()) {
                        rep.add("substitution", {small.atoms[a]},
                                "p" + std::to_string(i) + std::to_string(j) +
                                    " defined on copies of an atom where undefined below");
                        return rep;
                    }
                }
            }
    }
    return rep;
}

// Convenience form: images given as atom-id lists.
inline std::vector<Bitset> copies_from_lists(std::size_t big_atoms,
                                             const std::vector<std::vector<int>>& lists) {
    std::vector<Bitset> out;
    out.reserve(lists.size());
    for (const auto& l : lists) {
        Bitset s(big_atoms);
        for (int a : l) {
            if (a < 0 || static_cast<std::size_t>(a) >= big_atoms)
                throw PreconditionError("embed: copy image atom out of range");
            s.set(static_cast<std::size_t>(a));
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace arcade
