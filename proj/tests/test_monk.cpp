#include <catch2/catch_amalgamated.hpp>

#include "arcade/caps.hpp"
#include "arcade/embed.hpp"
#include "arcade/error.hpp"
#include "arcade/graph.hpp"
#include "arcade/monk.hpp"
#include "arcade/ra.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace arcade;

namespace {

RAAtomStructure point_algebra() {
    return RAAtomStructure::create(
        {"1'", "<", ">"}, {0, 2, 1}, {0},
        {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 2, 2}, {2, 0, 2},
         {1, 1, 1}, {1, 2, 1}, {1, 2, 2}, {1, 2, 0},
         {2, 1, 1}, {2, 1, 2}, {2, 1, 0}, {2, 2, 2}});
}

// Identity plus k diversity atoms with every diversity triple consistent.
RAAtomStructure flexible(int k) {
    std::vector<std::string> names{"1'"};
    for (int d = 0; d < k; ++d) names.push_back("d" + std::to_string(d));
    std::vector<int> conv(static_cast<std::size_t>(k + 1));
    for (int a = 0; a <= k; ++a) conv[static_cast<std::size_t>(a)] = a;
    std::vector<std::array<int, 3>> cycles{{0, 0, 0}};
    for (int a = 1; a <= k; ++a) {
        cycles.push_back({0, a, a});
        cycles.push_back({a, 0, a});
        cycles.push_back({a, a, 0});
        for (int b = 1; b <= k; ++b)
            for (int c = 1; c <= k; ++c) cycles.push_back({a, b, c});
    }
    return RAAtomStructure::create(std::move(names), std::move(conv), {0}, cycles);
}

bool only_law(const ValidationReport& rep, const std::string& law) {
    return !rep.ok() && std::all_of(rep.violations.begin(), rep.violations.end(),
                                    [&](const Violation& v) { return v.law == law; });
}

std::vector<Bitset> singleton_blurs(const RAAtomStructure& r,
                                    const std::vector<std::string>& names) {
    std::vector<Bitset> J;
    for (const auto& nm : names) {
        Bitset b(static_cast<std::size_t>(r.n()));
        b.set(static_cast<std::size_t>(r.atom_id(nm)));
        J.push_back(b);
    }
    return J;
}

} // namespace

TEST_CASE("alpha atoms and cycles follow the colour test") {
    RAAtomStructure sparse = alpha_of_graph(gen_empty(3), 3);
    REQUIRE(sparse.n() == 10);
    int u0 = sparse.atom_id("v0c0"), v0 = sparse.atom_id("v1c0"), w0 = sparse.atom_id("v2c0");
    int v1 = sparse.atom_id("v1c1"), w2 = sparse.atom_id("v2c2");

    CHECK(sparse.cycle(0, 0, 0));
    CHECK(sparse.cycle(0, u0, u0));
    CHECK(sparse.cycle(u0, 0, u0));
    CHECK(sparse.cycle(u0, u0, 0));
    CHECK_FALSE(sparse.cycle(0, u0, v0));
    CHECK_FALSE(sparse.cycle(u0, v0, 0));

    CHECK(sparse.cycle(u0, v1, w2));
    CHECK(sparse.cycle(u0, v1, v0));
    CHECK_FALSE(sparse.cycle(u0, v0, w0));
    CHECK_FALSE(sparse.cycle(u0, u0, u0));

    RAAtomStructure dense = alpha_of_graph(gen_complete(3), 3);
    CHECK(dense.cycle(dense.atom_id("v0c0"), dense.atom_id("v1c0"), dense.atom_id("v2c0")));
    CHECK_FALSE(dense.cycle(dense.atom_id("v0c0"), dense.atom_id("v0c0"), dense.atom_id("v0c0")));

    CHECK_THROWS_AS(alpha_of_graph(gen_complete(3), 2), PreconditionError);
    CHECK_THROWS_AS(alpha_of_graph(Graph(0), 3), PreconditionError);
}

TEST_CASE("alpha structures validate on small graphs") {
    for (const Graph& g : {gen_complete(3), gen_band(4, 2), gen_disjoint_cliques(2, 3)}) {
        ValidationReport rep = ra_validate(alpha_of_graph(g, 3));
        INFO(rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("maddux atom inventory and example triples") {
    RAAtomStructure a = maddux_a(3, 1, 3);
    REQUIRE(a.n() == 7);
    int x0 = a.atom_id("a^0(0,0)"), x1 = a.atom_id("a^1(0,0)"), x2 = a.atom_id("a^2(0,0)");
    int y0 = a.atom_id("a^0(1,0)");

    CHECK_FALSE(a.cycle(x0, x1, x2));
    CHECK(a.cycle(x0, y0, x0));
    CHECK(a.cycle(x0, y0, x1));
    CHECK_FALSE(a.cycle(0, x0, x1));
    CHECK(a.cycle(0, x0, x0));
    CHECK(a.cycle(x0, x0, 0));
    CHECK_FALSE(a.cycle(x0, x1, 0));

    RAAtomStructure trivial = maddux_a(3, 0, 3);
    CHECK(trivial.n() == 1);
    CHECK(ra_validate(trivial).ok());

    CHECK_THROWS_AS(maddux_a(2, 1, 3), PreconditionError);
    CHECK_THROWS_AS(maddux_a(3, -1, 3), PreconditionError);
    CHECK_THROWS_AS(maddux_a(3, 1, 2), PreconditionError);
    CHECK_THROWS_AS(maddux_a(3, 4, 3), PreconditionError);
}

TEST_CASE("maddux associativity depends on the block count") {
    // with two blocks the witness sets cannot bridge back, so only the
    // associativity law fails; three blocks restore it
    for (auto [r, psi] : {std::pair{1, 3}, {2, 3}}) {
        ValidationReport rep = ra_validate(maddux_a(3, r, psi));
        INFO(rep.summary());
        CHECK(only_law(rep, "associativity"));
    }
    for (auto [r, psi] : {std::pair{1, 4}, {2, 4}}) {
        ValidationReport rep = ra_validate(maddux_a(4, r, psi));
        INFO(rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("unit blow up reproduces the base") {
    BlurSchema unit;
    CHECK(blow_up(point_algebra(), unit) == point_algebra());
    CHECK(blow_up(maddux_a(3, 1, 3), unit) == maddux_a(3, 1, 3));
}

TEST_CASE("copy agnostic blow up keeps laws and collapses onto the base") {
    RAAtomStructure base = alpha_of_graph(gen_complete(3), 3);
    BlurSchema schema;
    schema.copy_count = 3;
    BlownStructure blown = blow_up_full(base, schema);

    REQUIRE(blown.structure.n() == 28);
    CHECK(blown.structure.atoms[0] == "1'");
    CHECK(blown.structure.atoms[1] == "v0c0#0");
    CHECK(blown.copy_count == 3);
    CHECK(blown.blur_count == 1);

    ValidationReport laws = ra_validate(blown.structure);
    INFO(laws.summary());
    CHECK(laws.ok());

    CHECK(collapse_map_check(blown, base).ok());
    CHECK(collapse_map_check(blown.structure, base).ok());
}

TEST_CASE("collapse rejects foreign structures and reports corrupted cycles") {
    RAAtomStructure pt = point_algebra();
    BlurSchema two;
    two.copy_count = 2;
    BlownStructure blown = blow_up_full(pt, two);

    CHECK_THROWS_AS(collapse_map_check(blown, maddux_a(3, 1, 3)), PreconditionError);
    CHECK_THROWS_AS(collapse_map_check(blown.structure, maddux_a(3, 1, 3)), PreconditionError);

    RAAtomStructure wide = RAAtomStructure::create({"1'", "<", ">", "x"}, {0, 2, 1, 3}, {0}, {});
    CHECK_THROWS_AS(collapse_map_check(blown.structure, wide), PreconditionError);

    RAAtomStructure corrupt = blown.structure;
    std::vector<int> lt{corrupt.atom_id("<#0"), corrupt.atom_id("<#1")};
    for (int x : lt)
        for (int y : lt) corrupt.row(x, y) = Bitset(static_cast<std::size_t>(corrupt.n()));
    ValidationReport rep = collapse_map_check(corrupt, pt);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].law == "composition");
}

TEST_CASE("flmu schemas enumerate l subsets times mu") {
    RAAtomStructure base = maddux_a(3, 1, 3);
    BlurSchema schema = flmu_schema(base, 2, 1);
    REQUIRE(schema.blurs.size() == 15);
    CHECK(schema.blur_count() == 15);
    CHECK(schema.blurs.front() == "{a^0(0,0),a^1(0,0)}:0");
    CHECK(schema.blurs.back() == "{a^1(1,0),a^2(1,0)}:0");
    CHECK(schema.rule == "copy-agnostic");

    CHECK(flmu_schema(base, 2, 2).blurs.size() == 30);

    FLMuSchema raw;
    for (int a = 1; a < base.n(); ++a) raw.I.push_back(base.atoms[static_cast<std::size_t>(a)]);
    raw.l = 2;
    raw.mu = 2;
    std::vector<Bitset> sets = flmu_blur_sets(raw, base);
    REQUIRE(sets.size() == 30);
    CHECK(sets[0] == sets[1]);
    for (const auto& s : sets) CHECK(s.count() == 2);

    raw.l = 1;
    CHECK_THROWS_AS(flmu_blur_sets(raw, base), PreconditionError);
    raw.l = 3;
    CHECK_THROWS_AS(flmu_blur_sets(raw, base), PreconditionError);
    raw.l = 2;
    raw.mu = 0;
    CHECK_THROWS_AS(flmu_blur_sets(raw, base), PreconditionError);
}

TEST_CASE("blown flmu structure collapses onto its base") {
    RAAtomStructure base = maddux_a(3, 1, 3);
    BlownStructure blown = blow_up_full(base, flmu_schema(base, 2, 1));
    REQUIRE(blown.structure.n() == 91);
    CHECK(blown.structure.atoms[1] == "a^0(0,0)#0@{a^0(0,0),a^1(0,0)}:0");
    CHECK(collapse_map_check(blown, base).ok());
}

TEST_CASE("red index match swaps blur pairs and chains cycles") {
    RAAtomStructure pt = point_algebra();
    BlurSchema schema;
    schema.blurs = {"00", "01", "10", "11"};
    schema.rule = "red-index-match";
    RAAtomStructure blown = blow_up(pt, schema);
    REQUIRE(blown.n() == 9);

    auto id = [&](const std::string& nm) { return blown.atom_id(nm); };
    CHECK(blown.converse[static_cast<std::size_t>(id("<#0@01"))] == id(">#0@10"));
    CHECK(blown.converse[static_cast<std::size_t>(id("<#0@00"))] == id(">#0@00"));

    CHECK(blown.cycle(id("<#0@01"), id("<#0@11"), id("<#0@01")));
    CHECK_FALSE(blown.cycle(id("<#0@01"), id("<#0@11"), id("<#0@11")));
    CHECK_FALSE(blown.cycle(id("<#0@01"), id("<#0@01"), id("<#0@01")));

    CHECK(blown.cycle(0, id("<#0@01"), id("<#0@01")));
    CHECK_FALSE(blown.cycle(0, id("<#0@01"), id("<#0@11")));
    CHECK(blown.cycle(id("<#0@01"), id(">#0@10"), 0));
    CHECK_FALSE(blown.cycle(id("<#0@01"), id(">#0@01"), 0));

    ValidationReport rep = ra_validate(blown);
    INFO(rep.summary());
    CHECK(only_law(rep, "associativity"));

    BlurSchema bad = schema;
    bad.blurs = {"a", "b", "c"};
    CHECK_THROWS_AS(blow_up(pt, bad), PreconditionError);

    BlurSchema red_unit;
    red_unit.copy_count = 2;
    red_unit.rule = "red-index-match";
    BlurSchema plain_unit;
    plain_unit.copy_count = 2;
    CHECK(blow_up(pt, red_unit) == blow_up(pt, plain_unit));
}

TEST_CASE("blow up preconditions") {
    RAAtomStructure pt = point_algebra();
    BlurSchema schema;
    schema.copy_count = 0;
    CHECK_THROWS_AS(blow_up(pt, schema), PreconditionError);
    schema.copy_count = 1;
    schema.rule = "mystery";
    CHECK_THROWS_AS(blow_up(pt, schema), StructuralError);
    schema.rule = "copy-agnostic";
    schema.base_atoms = {"id"};
    CHECK_THROWS_AS(blow_up(pt, schema), PreconditionError);
}

TEST_CASE("blur adequacy on hand checked families") {
    RAAtomStructure pt = point_algebra();
    std::vector<Bitset> split = singleton_blurs(pt, {"<", ">"});
    CHECK_FALSE(blurs_adequate(pt, split, 3));
    CHECK_FALSE(blurs_strongly_adequate(pt, split, 3));

    RAAtomStructure flex = flexible(3);
    REQUIRE(ra_validate(flex).ok());
    std::vector<Bitset> singles = singleton_blurs(flex, {"d0", "d1", "d2"});
    CHECK(blurs_adequate(flex, singles, 3));
    CHECK(blurs_strongly_adequate(flex, singles, 3));

    RAAtomStructure k3 = alpha_of_graph(gen_complete(3), 3);
    FLMuSchema wide;
    for (int a = 1; a < k3.n(); ++a) wide.I.push_back(k3.atoms[static_cast<std::size_t>(a)]);
    wide.l = 2;
    wide.mu = 1;
    std::vector<Bitset> k3_blurs = flmu_blur_sets(wide, k3);
    REQUIRE(k3_blurs.size() == 36);
    CHECK(blurs_adequate(k3, k3_blurs, 3));
    CHECK_FALSE(blurs_strongly_adequate(k3, k3_blurs, 3));

    // same-block choices force T into the other block, and the two blocks
    // demand disjoint witnesses
    RAAtomStructure m = maddux_a(3, 1, 3);
    FLMuSchema blocks;
    for (int a = 1; a < m.n(); ++a) blocks.I.push_back(m.atoms[static_cast<std::size_t>(a)]);
    blocks.l = 2;
    blocks.mu = 1;
    CHECK_FALSE(blurs_adequate(m, flmu_blur_sets(blocks, m), 3));

    Caps tight = Caps::defaults();
    tight.max_states = 100;
    CHECK_THROWS_AS(blurs_adequate(k3, k3_blurs, 3, tight), CapExceeded);
    CHECK_THROWS_AS(blurs_strongly_adequate(k3, k3_blurs, 3, tight), CapExceeded);

    CHECK_THROWS_AS(blurs_adequate(pt, {}, 3), PreconditionError);
    CHECK_THROWS_AS(blurs_adequate(pt, split, 1), PreconditionError);
    std::vector<Bitset> wrong{Bitset(2)};
    CHECK_THROWS_AS(blurs_adequate(pt, wrong, 3), PreconditionError);
}
