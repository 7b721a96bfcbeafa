#pragma once

#include "arcade/bitset.hpp"
#include "arcade/caps.hpp"
#include "arcade/embed.hpp"
#include "arcade/error.hpp"
#include "arcade/graph.hpp"
#include "arcade/ra.hpp"
#include "arcade/report.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace arcade {

// Graph algebra: atoms 1' and (v,i) for v in G and colour i < n, all self
// converse. A diversity triple is consistent when its colours are not all
// equal, or when its vertex set spans at least one edge of G.
inline RAAtomStructure alpha_of_graph(const Graph& g, int n) {
    if (n < 3) throw PreconditionError("alpha: colour count must be at least 3");
    if (g.size() < 1) throw PreconditionError("alpha: graph must be nonempty");

    const int v_count = g.size();
    std::vector<std::string> names{"1'"};
    for (int v = 0; v < v_count; ++v)
        for (int i = 0; i < n; ++i)
            names.push_back("v" + std::to_string(v) + "c" + std::to_string(i));
    const int total = static_cast<int>(names.size());

    std::vector<int> conv(static_cast<std::size_t>(total));
    for (int a = 0; a < total; ++a) conv[static_cast<std::size_t>(a)] = a;

    auto vertex = [&](int a) { return (a - 1) / n; };
    auto colour = [&](int a) { return (a - 1) % n; };
    auto consistent = [&](int a, int b, int c) {
        if (a == 0) return b == c;
        if (b == 0) return a == c;
        if (c == 0) return a == b;
        if (colour(a) != colour(b) || colour(b) != colour(c)) return true;
        int va = vertex(a), vb = vertex(b), vc = vertex(c);
        return g.has_edge(va, vb) || g.has_edge(vb, vc) || g.has_edge(va, vc);
    };

    std::vector<std::array<int, 3>> cycles;
    for (int a = 0; a < total; ++a)
        for (int b = 0; b < total; ++b)
            for (int c = 0; c < total; ++c)
                if (consistent(a, b, c)) cycles.push_back({a, b, c});

    return RAAtomStructure::create(std::move(names), std::move(conv), {0}, cycles);
}

// Maddux algebra: atoms id and a^k(i,j) for i < n-1, j < r, k < psi, all self
// converse. Forbidden: permutations of (id,s,t) with s != t, and permutations
// of (a^k(i,j), a^k'(i,j), a^k''(i,j')) with j <= j' < r.
inline RAAtomStructure maddux_a(int n, int r, int psi) {
    if (n < 3) throw PreconditionError("maddux: n must be at least 3");
    if (r < 0) throw PreconditionError("maddux: r must be nonnegative");
    if (psi < n || psi < r)
        throw PreconditionError("maddux: psi must be at least max(n, r)");

    std::vector<std::string> names{"id"};
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < psi; ++k)
                names.push_back("a^" + std::to_string(k) + "(" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    const int total = static_cast<int>(names.size());

    std::vector<int> conv(static_cast<std::size_t>(total));
    for (int a = 0; a < total; ++a) conv[static_cast<std::size_t>(a)] = a;

    auto block = [&](int a) { return (a - 1) / (r * psi); };
    auto second = [&](int a) { return ((a - 1) / psi) % r; };
    auto forbidden = [&](int a, int b, int c) {
        int ids = (a == 0) + (b == 0) + (c == 0);
        if (ids == 3) return false;
        if (ids == 2) return true;
        if (ids == 1) {
            if (a == 0) return b != c;
            if (b == 0) return a != c;
            return a != b;
        }
        if (block(a) != block(b) || block(b) != block(c)) return false;
        int ja = second(a), jb = second(b), jc = second(c);
        return (ja == jb && jc >= ja) || (ja == jc && jb >= ja) || (jb == jc && ja >= jb);
    };

    std::vector<std::array<int, 3>> cycles;
    for (int a = 0; a < total; ++a)
        for (int b = 0; b < total; ++b)
            for (int c = 0; c < total; ++c)
                if (!forbidden(a, b, c)) cycles.push_back({a, b, c});

    return RAAtomStructure::create(std::move(names), std::move(conv), {0}, cycles);
}

// Blow-up plan: every diversity atom splits into copy_count copies per blur
// label (one slot when blurs is empty); the rule decides the blown cycles.
struct BlurSchema {
    std::vector<std::string> base_atoms; // expected atom names; empty skips the check
    int copy_count = 1;
    std::vector<std::string> blurs; // empty means the unit blur
    std::string rule = "copy-agnostic";

    int blur_count() const { return blurs.empty() ? 1 : static_cast<int>(blurs.size()); }
};

// Blur family J = {(X,t) : X subset of I, |X| = l, t < mu} over a named atom
// set I with |I| >= 3l.
struct FLMuSchema {
    std::vector<std::string> I;
    int l = 2;
    int mu = 1;
};

namespace detail {

inline void check_flmu(const FLMuSchema& s) {
    if (s.l < 2) throw PreconditionError("flmu: l must be at least 2");
    if (s.mu < 1) throw PreconditionError("flmu: mu must be positive");
    if (static_cast<int>(s.I.size()) < 3 * s.l)
        throw PreconditionError("flmu: need at least 3l atoms in I");
}

template <typename F>
inline void for_each_lsubset(int n, int l, F&& fn) {
    std::vector<int> pick(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(pick);
        int p = l - 1;
        while (p >= 0 && pick[static_cast<std::size_t>(p)] == n - l + p) --p;
        if (p < 0) return;
        ++pick[static_cast<std::size_t>(p)];
        for (int q = p + 1; q < l; ++q)
            pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
    }
}

} // namespace detail

inline std::vector<std::string> flmu_blur_labels(const FLMuSchema& s) {
    detail::check_flmu(s);
    std::vector<std::string> out;
    detail::for_each_lsubset(static_cast<int>(s.I.size()), s.l, [&](const std::vector<int>& pick) {
        std::string x = "{";
        for (std::size_t i = 0; i < pick.size(); ++i) {
            if (i) x += ",";
            x += s.I[static_cast<std::size_t>(pick[i])];
        }
        x += "}";
        for (int t = 0; t < s.mu; ++t) out.push_back(x + ":" + std::to_string(t));
    });
    return out;
}

// The same blurs as atom sets of a structure whose atoms include I.
inline std::vector<Bitset> flmu_blur_sets(const FLMuSchema& s, const RAAtomStructure& base) {
    detail::check_flmu(s);
    std::vector<int> ids;
    ids.reserve(s.I.size());
    for (const auto& nm : s.I) ids.push_back(base.atom_id(nm));
    std::vector<Bitset> out;
    detail::for_each_lsubset(static_cast<int>(s.I.size()), s.l, [&](const std::vector<int>& pick) {
        Bitset x(static_cast<std::size_t>(base.n()));
        for (int i : pick) x.set(static_cast<std::size_t>(ids[static_cast<std::size_t>(i)]));
        for (int t = 0; t < s.mu; ++t) out.push_back(x);
    });
    return out;
}

// Schema blurring the diversity atoms of base by F(l, mu), copy-agnostic.
inline BlurSchema flmu_schema(const RAAtomStructure& base, int l, int mu, int copies = 1) {
    FLMuSchema s;
    s.l = l;
    s.mu = mu;
    for (int a = 0; a < base.n(); ++a)
        if (!base.is_identity(a)) s.I.push_back(base.atoms[static_cast<std::size_t>(a)]);
    BlurSchema schema;
    schema.base_atoms = base.atoms;
    schema.copy_count = copies;
    schema.blurs = flmu_blur_labels(s);
    schema.rule = "copy-agnostic";
    return schema;
}

// Blown structure plus the collapse data tying every blown atom to its base.
struct BlownStructure {
    RAAtomStructure structure;
    std::vector<int> base_of;
    int base_atoms = 0;
    int copy_count = 1;
    int blur_count = 1;
    std::string rule;
};

namespace detail {

// red-index-match reads blur labels as ordered pairs over a square root b of
// the blur count; a diversity cycle must chain them like composable pairs.
struct RedIndexRule {
    int b = 1;
    int first(int t) const { return t / b; }
    int second(int t) const { return t % b; }
    bool chains(int tx, int ty, int tz) const {
        return second(tx) == first(ty) && first(tx) == first(tz) && second(ty) == second(tz);
    }
    int swapped(int t) const { return second(t) * b + first(t); }
};

} // namespace detail

// Splits every diversity atom of base into copy_count x blur_count fresh
// atoms named base#copy@blur (unchanged when there is a single slot), keeps
// identity atoms unsplit, and induces cycles by the schema's rule.
inline BlownStructure blow_up_full(const RAAtomStructure& base, const BlurSchema& schema) {
    if (!schema.base_atoms.empty() && schema.base_atoms != base.atoms)
        throw PreconditionError("blow_up: schema was made for a different algebra");
    if (schema.copy_count < 1) throw PreconditionError("blow_up: copy count must be positive");
    const int blurs = schema.blur_count();
    const bool agnostic = schema.rule == "copy-agnostic";
    const bool red_match = schema.rule == "red-index-match";
    if (!agnostic && !red_match)
        throw StructuralError("blow_up: unknown rule '" + schema.rule + "'");

    detail::RedIndexRule red;
    if (red_match) {
        while (red.b * red.b < blurs) ++red.b;
        if (red.b * red.b != blurs)
            throw PreconditionError("blow_up: red-index-match needs a square number of blurs");
    }

    const bool plain = schema.copy_count == 1 && blurs == 1;
    std::vector<std::string> names;
    std::vector<int> base_of;
    std::vector<int> first_copy(static_cast<std::size_t>(base.n()), -1);
    for (int a = 0; a < base.n(); ++a) {
        first_copy[static_cast<std::size_t>(a)] = static_cast<int>(names.size());
        if (base.is_identity(a)) {
            names.push_back(base.atoms[static_cast<std::size_t>(a)]);
            base_of.push_back(a);
            continue;
        }
        for (int k = 0; k < schema.copy_count; ++k)
            for (int t = 0; t < blurs; ++t) {
                std::string nm = base.atoms[static_cast<std::size_t>(a)];
                if (!plain) {
                    nm += "#" + std::to_string(k);
                    if (!schema.blurs.empty())
                        nm += "@" + schema.blurs[static_cast<std::size_t>(t)];
                }
                names.push_back(std::move(nm));
                base_of.push_back(a);
            }
    }
    const int total = static_cast<int>(names.size());

    auto slot = [&](int x) {
        return x - first_copy[static_cast<std::size_t>(base_of[static_cast<std::size_t>(x)])];
    };
    auto blur_of = [&](int x) { return slot(x) % blurs; };

    std::vector<int> conv(static_cast<std::size_t>(total));
    for (int x = 0; x < total; ++x) {
        int a = base_of[static_cast<std::size_t>(x)];
        int ca = base.converse[static_cast<std::size_t>(a)];
        if (base.is_identity(a)) {
            conv[static_cast<std::size_t>(x)] = first_copy[static_cast<std::size_t>(ca)];
            continue;
        }
        int k = slot(x) / blurs;
        int t = blur_of(x);
        if (red_match) t = red.swapped(t);
        conv[static_cast<std::size_t>(x)] = first_copy[static_cast<std::size_t>(ca)] + k * blurs + t;
    }

    std::vector<int> identity_atoms;
    for (int x = 0; x < total; ++x)
        if (base.is_identity(base_of[static_cast<std::size_t>(x)])) identity_atoms.push_back(x);

    auto consistent = [&](int x, int y, int z) {
        int bx = base_of[static_cast<std::size_t>(x)];
        int by = base_of[static_cast<std::size_t>(y)];
        int bz = base_of[static_cast<std::size_t>(z)];
        if (!base.cycle(bx, by, bz)) return false;
        bool ix = base.is_identity(bx), iy = base.is_identity(by), iz = base.is_identity(bz);
        if (ix && !iy && !iz) return y == z;
        if (iy && !ix && !iz) return x == z;
        if (iz && !ix && !iy) return y == conv[static_cast<std::size_t>(x)];
        if (ix || iy || iz) return true;
        if (red_match) return red.chains(blur_of(x), blur_of(y), blur_of(z));
        return true;
    };

    BlownStructure out;
    out.structure = RAAtomStructure::create(std::move(names), conv, identity_atoms, {});
    for (int x = 0; x < total; ++x)
        for (int y = 0; y < total; ++y)
            for (int z = 0; z < total; ++z)
                if (consistent(x, y, z)) out.structure.add_cycle(x, y, z);
    out.base_of = std::move(base_of);
    out.base_atoms = base.n();
    out.copy_count = schema.copy_count;
    out.blur_count = blurs;
    out.rule = schema.rule;
    return out;
}

inline RAAtomStructure blow_up(const RAAtomStructure& base, const BlurSchema& schema) {
    return blow_up_full(base, schema).structure;
}

// Collapses blown atoms onto base atoms by exact provenance and checks that
// base embeds atom-by-atom into the blown complex algebra.
inline ValidationReport collapse_map_check(const BlownStructure& blown,
                                           const RAAtomStructure& base) {
    if (blown.base_atoms != base.n() ||
        blown.base_of.size() != static_cast<std::size_t>(blown.structure.n()))
        throw PreconditionError("collapse: blown structure does not come from this base");
    std::vector<Bitset> copy_map(static_cast<std::size_t>(base.n()),
                                 Bitset(static_cast<std::size_t>(blown.structure.n())));
    for (int x = 0; x < blown.structure.n(); ++x) {
        int a = blown.base_of[static_cast<std::size_t>(x)];
        if (a < 0 || a >= base.n())
            throw PreconditionError("collapse: blown structure does not come from this base");
        copy_map[static_cast<std::size_t>(a)].set(static_cast<std::size_t>(x));
    }
    for (int a = 0; a < base.n(); ++a)
        if (copy_map[static_cast<std::size_t>(a)].none())
            throw PreconditionError("collapse: blown structure does not come from this base");
    return embed_by_copies(base, blown.structure, copy_map);
}

// Same check with provenance recovered from names: a blown atom's base atom
// is its name up to the first '#'.
inline ValidationReport collapse_map_check(const RAAtomStructure& blown,
                                           const RAAtomStructure& base) {
    std::map<std::string, int> base_ids;
    for (int a = 0; a < base.n(); ++a) base_ids[base.atoms[static_cast<std::size_t>(a)]] = a;

    std::vector<Bitset> copy_map(static_cast<std::size_t>(base.n()),
                                 Bitset(static_cast<std::size_t>(blown.n())));
    for (int x = 0; x < blown.n(); ++x) {
        const std::string& nm = blown.atoms[static_cast<std::size_t>(x)];
        auto hash_pos = nm.find('#');
        std::string stem = hash_pos == std::string::npos ? nm : nm.substr(0, hash_pos);
        auto it = base_ids.find(stem);
        if (it == base_ids.end())
            throw PreconditionError("collapse: blown atom '" + nm + "' has no base provenance");
        copy_map[static_cast<std::size_t>(it->second)].set(static_cast<std::size_t>(x));
    }
    for (int a = 0; a < base.n(); ++a)
        if (copy_map[static_cast<std::size_t>(a)].none())
            throw PreconditionError("collapse: base atom '" +
                                    base.atoms[static_cast<std::size_t>(a)] +
                                    "' has no copies in the blown structure");
    return embed_by_copies(base, blown, copy_map);
}

// Adequacy of a blur family J at dimension n: for every choice of blurs
// V_2..V_n, W_2..W_n there is a blur T with a <= b;c for all a in V_i,
// b in W_i, c in T. Strong adequacy requires every T to work.
namespace detail {

inline Bitset blur_okset(const RAAtomStructure& r, const std::vector<Bitset>& J,
                         const Bitset& V, const Bitset& W) {
    Bitset ok(J.size());
    for (std::size_t t = 0; t < J.size(); ++t) {
        bool good = true;
        V.for_each([&](int a) {
            if (!good) return;
            W.for_each([&](int b) {
                if (!good) return;
                J[t].for_each([&](int c) {
                    if (!good) return;
                    if (!r.cycle(b, c, a)) good = false;
                });
            });
        });
        if (good) ok.set(t);
    }
    return ok;
}

inline void check_blurs(const RAAtomStructure& r, const std::vector<Bitset>& J, int n) {
    if (n < 2) throw PreconditionError("blur adequacy: n must be at least 2");
    if (J.empty()) throw PreconditionError("blur adequacy: blur family is empty");
    for (const auto& s : J)
        if (s.size() != static_cast<std::size_t>(r.n()))
            throw PreconditionError("blur adequacy: blur set over wrong atom count");
}

} // namespace detail

namespace detail {

// the okset scan touches every (V, W, T) triple of blurs
inline void check_blur_budget(std::size_t j_count, const Caps& caps) {
    long long work = 1;
    for (int i = 0; i < 3; ++i) {
        work *= static_cast<long long>(j_count);
        if (work > caps.max_states) throw CapExceeded("blur adequacy: choice space over cap");
    }
}

} // namespace detail

inline bool blurs_strongly_adequate(const RAAtomStructure& r, const std::vector<Bitset>& J,
                                    int n, const Caps& caps = Caps::defaults()) {
    detail::check_blurs(r, J, n);
    detail::check_blur_budget(J.size(), caps);
    for (const auto& V : J)
        for (const auto& W : J)
            if (detail::blur_okset(r, J, V, W).count() != J.size()) return false;
    return true;
}

inline bool blurs_adequate(const RAAtomStructure& r, const std::vector<Bitset>& J, int n,
                           const Caps& caps = Caps::defaults()) {
    detail::check_blurs(r, J, n);
    detail::check_blur_budget(J.size(), caps);
    std::vector<Bitset> oksets;
    for (const auto& V : J)
        for (const auto& W : J) {
            Bitset ok = detail::blur_okset(r, J, V, W);
            if (ok.none()) return false;
            oksets.push_back(std::move(ok));
        }
    std::sort(oksets.begin(), oksets.end());
    oksets.erase(std::unique(oksets.begin(), oksets.end()), oksets.end());

    // every (n-1)-fold intersection of oksets (with repetition) must be
    // nonempty; combinations suffice since intersection is order-blind
    const std::size_t u = oksets.size();
    long long combos = 1;
    for (int i = 0; i < n - 1; ++i) {
        if (combos > caps.max_states) throw CapExceeded("blur adequacy: choice space over cap");
        combos *= static_cast<long long>(u);
    }
    if (combos > caps.max_states) throw CapExceeded("blur adequacy: choice space over cap");

    int picks = n - 1;
    std::vector<std::size_t> idx(static_cast<std::size_t>(picks), 0);
    while (true) {
        Bitset meet = oksets[idx[0]];
        for (int i = 1; i < picks; ++i) meet &= oksets[idx[static_cast<std::size_t>(i)]];
        if (meet.none()) return false;
        int i = picks - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == u - 1) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < picks; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(i)];
    }
}

} // namespace arcade
