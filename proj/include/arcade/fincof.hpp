#pragma once

#include "arcade/error.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace arcade {

// Element of the term algebra of a blown-up structure: per atom class, a
// finite or cofinite set of copy/blur indices drawn from an omega-indexed
// family. The class list is fixed when the split is constructed; operations
// refuse mismatched class counts.
struct FinCofSet {
    struct Part {
        bool cofinite = false;
        std::vector<int> idx; // sorted, unique; the set itself or its complement

        bool contains(int i) const {
            bool listed = std::binary_search(idx.begin(), idx.end(), i);
            return cofinite ? !listed : listed;
        }
        bool empty() const { return !cofinite && idx.empty(); }
        bool full() const { return cofinite && idx.empty(); }
        bool operator==(const Part&) const = default;
    };

    std::vector<Part> parts; // one per class

    static FinCofSet bottom(std::size_t classes) {
        FinCofSet s;
        s.parts.assign(classes, {});
        return s;
    }
    static FinCofSet top(std::size_t classes) {
        FinCofSet s;
        s.parts.assign(classes, {true, {}});
        return s;
    }

    bool is_empty() const {
        for (const auto& p : parts)
            if (!p.empty()) return false;
        return true;
    }

    bool operator==(const FinCofSet&) const = default;
};

namespace detail {

inline std::vector<int> vec_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
inline std::vector<int> vec_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
inline std::vector<int> vec_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline void check_classes(const FinCofSet& a, const FinCofSet& b) {
    if (a.parts.size() != b.parts.size())
        throw PreconditionError("fincof: class counts differ (" +
                                std::to_string(a.parts.size()) + " vs " +
                                std::to_string(b.parts.size()) + ")");
}

} // namespace detail

inline FinCofSet fincof_complement(const FinCofSet& a) {
    FinCofSet r = a;
    for (auto& p : r.parts) p.cofinite = !p.cofinite;
    return r;
}

inline FinCofSet fincof_union(const FinCofSet& a, const FinCofSet& b) {
    detail::check_classes(a, b);
    FinCofSet r;
    r.parts.reserve(a.parts.size());
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        const auto& x = a.parts[i];
        const auto& y = b.parts[i];
        FinCofSet::Part p;
        if (!x.cofinite && !y.cofinite) {
            p = {false, detail::vec_union(x.idx, y.idx)};
        } else if (x.cofinite && y.cofinite) {
            p = {true, detail::vec_intersect(x.idx, y.idx)};
        } else {
            const auto& fin = x.cofinite ? y : x;
            const auto& cof = x.cofinite ? x : y;
            p = {true, detail::vec_minus(cof.idx, fin.idx)};
        }
        r.parts.push_back(std::move(p));
    }
    return r;
}

inline FinCofSet fincof_intersect(const FinCofSet& a, const FinCofSet& b) {
    return fincof_complement(fincof_union(fincof_complement(a), fincof_complement(b)));
}

// Whether the atom (class, index) sits below the element.
inline bool fincof_is_atom_below(const FinCofSet& s, std::size_t cls, int index) {
    if (cls >= s.parts.size()) throw PreconditionError("fincof: class out of range");
    return s.parts[cls].contains(index);
}

} // namespace arcade
