#include <catch2/catch_amalgamated.hpp>

#include "arcade/caps.hpp"
#include "arcade/error.hpp"
#include "arcade/graph.hpp"
#include "arcade/hyper.hpp"
#include "arcade/matrices.hpp"
#include "arcade/monk.hpp"
#include "arcade/ra.hpp"

#include <algorithm>
#include <vector>

using namespace arcade;

namespace {

// Order relations over a dense unbounded linear order: 1', <, >.
RAAtomStructure point_algebra() {
    return RAAtomStructure::create(
        {"1'", "<", ">"}, {0, 2, 1}, {0},
        {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 2, 2}, {2, 0, 2},
         {1, 1, 1}, {1, 2, 1}, {1, 2, 2}, {1, 2, 0},
         {2, 1, 1}, {2, 1, 2}, {2, 1, 0}, {2, 2, 2}});
}

bool has_law(const ValidationReport& rep, const std::string& law) {
    return std::any_of(rep.violations.begin(), rep.violations.end(),
                       [&](const Violation& v) { return v.law == law; });
}

// Brute-force matrix enumeration with no pruning: every diagonal over the
// identity atoms, every upper triangle over all atoms, converse fill, then
// the literal triangle law on all n^3 instances.
std::vector<BasicMatrix> oracle_matrices(const RAAtomStructure& r, int n) {
    std::vector<int> ids;
    for (int a = 0; a < r.n(); ++a)
        if (r.is_identity(a)) ids.push_back(a);
    std::vector<std::pair<int, int>> up;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) up.push_back({i, j});

    std::vector<BasicMatrix> out;
    std::vector<std::size_t> d(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<std::size_t> u(up.size(), 0);
        while (true) {
            BasicMatrix m;
            m.n = n;
            m.entries.assign(static_cast<std::size_t>(n) * n, 0);
            for (int i = 0; i < n; ++i) m.at(i, i) = ids[d[static_cast<std::size_t>(i)]];
            for (std::size_t e = 0; e < up.size(); ++e) {
                m.at(up[e].first, up[e].second) = static_cast<int>(u[e]);
                m.at(up[e].second, up[e].first) =
                    r.converse[u[e]];
            }
            bool good = true;
            for (int i = 0; i < n && good; ++i)
                for (int k = 0; k < n && good; ++k)
                    for (int j = 0; j < n && good; ++j)
                        if (!r.cycle(m.at(i, k), m.at(k, j), m.at(i, j))) good = false;
            if (good) out.push_back(std::move(m));
            std::size_t p = u.size();
            while (p > 0 && u[p - 1] + 1 == static_cast<std::size_t>(r.n())) u[--p] = 0;
            if (p == 0) break;
            ++u[p - 1];
        }
        std::size_t p = d.size();
        while (p > 0 && d[p - 1] + 1 == ids.size()) d[--p] = 0;
        if (p == 0) break;
        ++d[p - 1];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Network with the given pair entries and every hyperedge labelled 0.
Hypernetwork make_network(int m, int width, std::vector<int> pair_label) {
    Hypernetwork n;
    n.m = m;
    n.width = width;
    n.pair_label = std::move(pair_label);
    std::vector<int> lens{1};
    for (int l = 3; l <= width; ++l) lens.push_back(l);
    for (int len : lens) {
        std::vector<int> t(static_cast<std::size_t>(len), 0);
        while (true) {
            n.hyper[t] = 0;
            std::size_t p = t.size();
            while (p > 0 && t[p - 1] == m - 1) t[--p] = 0;
            if (p == 0) break;
            ++t[p - 1];
        }
    }
    return n;
}

int off_diagonal_identity_entries(const RAAtomStructure& r, const BasicMatrix& m) {
    int c = 0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j && r.is_identity(m.at(i, j))) ++c;
    return c;
}

} // namespace

TEST_CASE("matrix enumeration agrees with an unpruned brute force") {
    RAAtomStructure p = point_algebra();
    CHECK(enumerate_basic_matrices(p, 3) == oracle_matrices(p, 3));

    RAAtomStructure a = maddux_a(3, 1, 3);
    CHECK(enumerate_basic_matrices(a, 3) == oracle_matrices(a, 3));

    RAAtomStructure g = alpha_of_graph(gen_disjoint_cliques(2, 3), 3);
    CHECK(enumerate_basic_matrices(g, 3) == oracle_matrices(g, 3));
}

TEST_CASE("single identity atom admits only the constant matrix") {
    RAAtomStructure with = RAAtomStructure::create({"1'"}, {0}, {0}, {{0, 0, 0}});
    auto mats = enumerate_basic_matrices(with, 3);
    REQUIRE(mats.size() == 1);
    CHECK(std::all_of(mats[0].entries.begin(), mats[0].entries.end(),
                      [](int e) { return e == 0; }));

    RAAtomStructure without = RAAtomStructure::create({"1'"}, {0}, {0}, {});
    CHECK(enumerate_basic_matrices(without, 3).empty());
}

TEST_CASE("maddux A(3,1,3) matrices split by identity usage") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    REQUIRE(a.n() == 7);
    auto mats = enumerate_basic_matrices(a, 3);
    REQUIRE(mats.size() == 181);

    // 6^3 - 2*3^3 all-diversity, 3 positions x 6 forced pairs with one
    // off-diagonal identity edge, and the constant matrix
    int diversity = 0, one_edge = 0, constant = 0;
    for (const auto& m : mats) {
        int k = off_diagonal_identity_entries(a, m);
        if (k == 0) ++diversity;
        else if (k == 2) ++one_edge;
        else if (k == 6) ++constant;
        else FAIL("unexpected identity pattern");
    }
    CHECK(diversity == 162);
    CHECK(one_edge == 18);
    CHECK(constant == 1);
}

TEST_CASE("alpha matrix counts at small graphs") {
    CHECK(enumerate_basic_matrices(alpha_of_graph(gen_disjoint_cliques(2, 3), 3), 3).size() ==
          5707);
    CHECK(enumerate_basic_matrices(alpha_of_graph(gen_disjoint_cliques(3, 3), 3), 3).size() ==
          18766);
}

TEST_CASE("empty matrix family fails the atom witness clause") {
    RAAtomStructure p = point_algebra();
    ValidationReport rep = is_cylindric_basis(p, 3, {});
    CHECK(rep.total == 3);
    for (const auto& v : rep.violations) CHECK(v.law == "basis-atom-witness");

    BasicMatrix junk;
    junk.n = 3;
    junk.entries.assign(9, 1);
    CHECK_THROWS_AS(is_cylindric_basis(p, 3, {junk}), PreconditionError);
}

TEST_CASE("maddux matrices form a basis inducing a validated ca structure") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto mats = enumerate_basic_matrices(a, 3);

    ValidationReport basis = is_cylindric_basis(a, 3, mats);
    INFO(basis.summary());
    REQUIRE(basis.ok());

    CAAtomStructure ca = ca_from_matrices(a, 3, mats);
    CHECK(ca.dim == 3);
    CHECK(ca.n_atoms() == 181);
    REQUIRE(ca.has_pij);

    ValidationReport rep = ca_validate(ca);
    INFO(rep.summary());
    CHECK(rep.ok());

    std::vector<BasicMatrix> sorted = mats;
    std::sort(sorted.begin(), sorted.end());

    SECTION("ti is entry agreement off the dropped index") {
        for (int i = 0; i < 3; ++i)
            for (std::size_t x = 0; x < sorted.size(); ++x)
                for (std::size_t y = 0; y < sorted.size(); ++y)
                    if (ca.t(i).related(static_cast<int>(x), static_cast<int>(y)) !=
                        matrix_equiv(sorted[x], sorted[y], i)) {
                        FAIL("ti mismatch at i=" << i << " x=" << x << " y=" << y);
                    }
    }

    SECTION("ti compositions commute and classes partition the atoms") {
        std::vector<std::vector<Bitset>> cls(3);
        for (int i = 0; i < 3; ++i) {
            std::size_t total = 0;
            for (const auto& c : ca.t(i).classes()) total += c.size();
            CHECK(total == ca.n_atoms());
            cls[static_cast<std::size_t>(i)].assign(ca.n_atoms(), Bitset(ca.n_atoms()));
            for (std::size_t x = 0; x < ca.n_atoms(); ++x)
                for (int y : ca.t(i).classes()[static_cast<std::size_t>(
                         ca.t(i).class_of()[x])])
                    cls[static_cast<std::size_t>(i)][x].set(static_cast<std::size_t>(y));
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                for (std::size_t x = 0; x < ca.n_atoms(); ++x)
                    for (std::size_t y = 0; y < ca.n_atoms(); ++y) {
                        Bitset ij = cls[static_cast<std::size_t>(i)][x];
                        ij &= cls[static_cast<std::size_t>(j)][y];
                        Bitset ji = cls[static_cast<std::size_t>(j)][x];
                        ji &= cls[static_cast<std::size_t>(i)][y];
                        if (ij.any() != ji.any())
                            FAIL("ti o tj mismatch at x=" << x << " y=" << y);
                    }
    }

    SECTION("eij collects the matrices with identity at (i,j)") {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < sorted.size(); ++k)
                    if (ca.e(i, j).test(k) != a.is_identity(sorted[k].at(i, j)))
                        FAIL("eij mismatch at i=" << i << " j=" << j << " k=" << k);

        int constant = -1;
        for (std::size_t k = 0; k < sorted.size(); ++k)
            if (off_diagonal_identity_entries(a, sorted[k]) == 6) constant = static_cast<int>(k);
        REQUIRE(constant >= 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(ca.e(i, j).test(static_cast<std::size_t>(constant)));
    }
}

TEST_CASE("width-2 hypernetworks reduce to basic matrices") {
    RAAtomStructure p = point_algebra();
    auto nets = enumerate_hypernetworks(p, 3, 2, 1);
    auto mats = enumerate_basic_matrices(p, 3);
    REQUIRE(nets.size() == mats.size());

    std::vector<std::vector<int>> pair_parts;
    for (const auto& n : nets) {
        pair_parts.push_back(n.pair_label);
        REQUIRE(n.hyper.size() == 3);
        for (const auto& [t, l] : n.hyper) {
            CHECK(t.size() == 1);
            CHECK(l == 0);
        }
    }
    std::vector<std::vector<int>> entries;
    for (const auto& m : mats) entries.push_back(m.entries);
    std::sort(pair_parts.begin(), pair_parts.end());
    std::sort(entries.begin(), entries.end());
    CHECK(pair_parts == entries);
}

TEST_CASE("hypernetwork counting matches enumeration and honours caps") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto nets = enumerate_hypernetworks(a, 3, 4, 1);
    CHECK(count_hypernetworks(a, 3, 4, 1) == nets.size());
    CHECK(nets.size() == 181);
    CHECK(std::is_sorted(nets.begin(), nets.end()));
    for (const auto& n : nets) {
        ValidationReport rep = is_hypernetwork(a, n, 1);
        if (!rep.ok()) FAIL(rep.summary());
    }

    RAAtomStructure p = point_algebra();
    CHECK(count_hypernetworks(p, 3, 3, 2) == 6442457092ULL);
    CHECK_THROWS_AS(enumerate_hypernetworks(p, 3, 3, 2), CapExceeded);

    CHECK_THROWS_AS(count_hypernetworks(p, 2, 3, 1), PreconditionError);
    CHECK_THROWS_AS(count_hypernetworks(p, 3, 1, 1), PreconditionError);
    CHECK_THROWS_AS(count_hypernetworks(p, 3, 3, 0), PreconditionError);
}

TEST_CASE("hypernetwork clause violations are reported per law") {
    RAAtomStructure p = point_algebra();
    int id = 0, lt = 1, gt = 2;

    Hypernetwork diag = make_network(3, 2, {lt, id, id, id, id, id, id, id, id});
    CHECK(has_law(is_hypernetwork(p, diag, 1), "hyper-diagonal"));

    Hypernetwork tri = make_network(3, 2, {id, lt, gt, gt, id, lt, lt, gt, id});
    CHECK(has_law(is_hypernetwork(p, tri, 1), "hyper-triangle"));

    Hypernetwork ident = make_network(3, 2, std::vector<int>(9, id));
    ident.hyper[{0}] = 1;
    CHECK(is_hypernetwork(p, ident, 2).total > 0);
    CHECK(has_law(is_hypernetwork(p, ident, 2), "hyper-identification"));

    Hypernetwork gap = make_network(3, 3, std::vector<int>(9, id));
    gap.hyper.erase(std::vector<int>{0, 0, 0});
    CHECK_THROWS_AS(is_hypernetwork(p, gap, 1), StructuralError);
}

TEST_CASE("restriction keeps hypernetworks valid") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto nets = enumerate_hypernetworks(a, 3, 4, 1);
    for (const auto& n : nets) {
        Hypernetwork cut = hyper_restrict(n, 3, 3);
        CHECK(cut.width == 3);
        CHECK(cut.pair_label == n.pair_label);
        ValidationReport rep = is_hypernetwork(a, cut, 1);
        if (!rep.ok()) FAIL(rep.summary());
    }
    CHECK_THROWS_AS(hyper_restrict(nets.front(), 2, 4), PreconditionError);
    CHECK_THROWS_AS(hyper_restrict(nets.front(), 3, 1), PreconditionError);
}

TEST_CASE("composition along node maps") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto nets = enumerate_hypernetworks(a, 3, 4, 1);

    Hypernetwork constant_image = make_network(3, 4, std::vector<int>(9, 0));
    for (const auto& n : nets) {
        CHECK(hyper_compose(n, {0, 1, 2}) == n);
        CHECK(hyper_compose(n, {0, 0, 0}) == constant_image);
    }

    CHECK(is_symmetric_hyperset(nets));
    auto cut = nets;
    std::erase(cut, constant_image);
    REQUIRE(cut.size() == nets.size() - 1);
    CHECK_FALSE(is_symmetric_hyperset(cut));
}

TEST_CASE("the full maddux family is a hyperbasis; removals break patching") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto nets = enumerate_hypernetworks(a, 3, 4, 1);

    ValidationReport rep = is_hyperbasis(a, 3, 4, 1, nets);
    INFO(rep.summary());
    REQUIRE(rep.ok());

    ValidationReport empty = is_hyperbasis(a, 3, 4, 1, {});
    CHECK(empty.total == 7);
    for (const auto& v : empty.violations) CHECK(v.law == "hyperbasis-atom-witness");

    // drop an all-diversity network: its pair part is the only equiv_z
    // witness for the patching instances it serves
    std::size_t victim = 0;
    while (victim < nets.size() &&
           off_diagonal_identity_entries(
               a, BasicMatrix{3, nets[victim].pair_label}) != 0)
        ++victim;
    REQUIRE(victim < nets.size());
    auto cut = nets;
    cut.erase(cut.begin() + static_cast<std::ptrdiff_t>(victim));
    CHECK(has_law(is_hyperbasis(a, 3, 4, 1, cut), "hyperbasis-patching"));
}

TEST_CASE("hyperbasis preconditions reject malformed members") {
    RAAtomStructure p = point_algebra();
    auto nets = enumerate_hypernetworks(p, 3, 2, 1);

    auto wrong = nets;
    wrong.push_back(make_network(4, 2, std::vector<int>(16, 0)));
    CHECK_THROWS_AS(is_hyperbasis(p, 3, 2, 1, wrong), PreconditionError);

    auto broken = nets;
    broken.push_back(make_network(3, 2, {1, 0, 0, 0, 0, 0, 0, 0, 0}));
    CHECK_THROWS_AS(is_hyperbasis(p, 3, 2, 1, broken), PreconditionError);
}

TEST_CASE("pea over the maddux hyperbasis validates with polyadic maps") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto nets = enumerate_hypernetworks(a, 3, 4, 1);
    CAAtomStructure pea = pea_from_hyperbasis(a, 3, 4, 1, nets);

    CHECK(pea.dim == 3);
    CHECK(pea.n_atoms() == 181);
    REQUIRE(pea.has_pij);

    ValidationReport rep = ca_validate(pea);
    INFO(rep.summary());
    CHECK(rep.ok());

    std::vector<Hypernetwork> sorted = nets;
    std::sort(sorted.begin(), sorted.end());

    SECTION("ti is agreement off the dropped node") {
        for (int i = 0; i < 3; ++i)
            for (std::size_t x = 0; x < sorted.size(); ++x)
                for (std::size_t y = 0; y < sorted.size(); ++y)
                    if (pea.t(i).related(static_cast<int>(x), static_cast<int>(y)) !=
                        hyper_equiv_except(sorted[x], sorted[y], {i}))
                        FAIL("ti mismatch at i=" << i << " x=" << x << " y=" << y);
    }

    SECTION("diagonal atoms are the networks with identity at (i,j)") {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < sorted.size(); ++k)
                    if (pea.e(i, j).test(k) != a.is_identity(sorted[k].at(i, j)))
                        FAIL("eij mismatch at i=" << i << " j=" << j << " k=" << k);
    }

    SECTION("pij composes with the transposition and is an involution") {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                std::vector<int> tau{0, 1, 2};
                std::swap(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]);
                for (std::size_t k = 0; k < sorted.size(); ++k) {
                    Hypernetwork img = hyper_compose(sorted[k], tau);
                    auto it = std::lower_bound(sorted.begin(), sorted.end(), img);
                    REQUIRE(it != sorted.end());
                    REQUIRE(*it == img);
                    int want = static_cast<int>(it - sorted.begin());
                    CHECK(pea.p(i, j)[k] == want);
                    CHECK(pea.p(i, j)[static_cast<std::size_t>(want)] == static_cast<int>(k));
                }
            }
    }
}

TEST_CASE("pea refuses a non-symmetric family") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    auto nets = enumerate_hypernetworks(a, 3, 4, 1);
    Hypernetwork constant_image = make_network(3, 4, std::vector<int>(9, 0));
    std::erase(nets, constant_image);
    CHECK_THROWS_WITH(pea_from_hyperbasis(a, 3, 4, 1, nets),
                      Catch::Matchers::ContainsSubstring("non-symmetric"));
}
