#include <doctest.h>

#include "extlin/errors.hpp"
#include "extlin/groupoid.hpp"
#include "extlin/rng.hpp"

#include <array>
#include <set>

using namespace extlin;

namespace {

bool oracle_is_isomorphism(const GroupoidFunctor& f) {
    std::set<std::size_t> objs(f.object_map().begin(), f.object_map().end());
    std::set<std::size_t> mors(f.morphism_map().begin(), f.morphism_map().end());
    return objs.size() == f.target()->num_objects() && f.object_map().size() == objs.size() &&
           mors.size() == f.target()->num_morphisms() && f.morphism_map().size() == mors.size();
}

std::size_t automorphism_count(const FinGroupoid& x, std::size_t o) { return x.hom(o, o).size(); }

} // namespace

TEST_CASE("group validation cites the failing data") {
    // 0*1 = 0 breaks the inverse law for a two-element "group" with identity 0.
    CHECK_THROWS_AS(FiniteGroup({"a", "b"}, {0, 1, 1, 1}), ValidationError);
    try {
        // Non-associative magma with identity e: a*a = b, a*b = a, b*a = b, b*b = e.
        FiniteGroup({"e", "a", "b"}, {0, 1, 2, 1, 2, 1, 2, 2, 0});
        FAIL("expected group-law error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("group law") != std::string::npos);
    }
}

TEST_CASE("delooping") {
    Grpd pt = delooping(FiniteGroup::trivial());
    CHECK(pt->num_objects() == 1);
    CHECK(pt->num_morphisms() == 1);
    CHECK(is_equivalence(to_terminal(pt)));
    Grpd bz2 = delooping(FiniteGroup::cyclic(2));
    CHECK(bz2->num_objects() == 1);
    CHECK(bz2->num_morphisms() == 2);

    // S3 against an independent permutation-composition oracle: (s o t)(x) = s(t(x)).
    FiniteGroup s3 = FiniteGroup::symmetric3();
    Grpd bs3 = delooping(s3);
    CHECK(bs3->num_morphisms() == 6);
    const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    bool nonabelian = false;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> ab{};
            for (int x = 0; x < 3; ++x)
                ab[x] = perms[a][perms[b][x]];
            CHECK(perms[bs3->compose(a, b)] == ab);
            if (bs3->compose(a, b) != bs3->compose(b, a))
                nonabelian = true;
        }
    CHECK(nonabelian);
}

TEST_CASE("E G and its quotient functor") {
    EGroupoid ez2 = e_groupoid(FiniteGroup::cyclic(2));
    CHECK(ez2.groupoid->num_objects() == 2);
    CHECK(ez2.groupoid->num_morphisms() == 4);

    FiniteGroup z3 = FiniteGroup::cyclic(3);
    EGroupoid ez3 = e_groupoid(z3);
    GroupoidFunctor iso = e_to_codiscrete(z3, ez3);
    CHECK(oracle_is_isomorphism(iso));

    for (const FiniteGroup& g : {z3, FiniteGroup::symmetric3()}) {
        EGroupoid eg = e_groupoid(g);
        for (std::size_t a = 0; a < g.order(); ++a)
            for (std::size_t b = 0; b < g.order(); ++b) {
                const auto& hom = eg.groupoid->hom(a, b);
                REQUIRE(hom.size() == 1);
                CHECK(eg.q.on_morphism(hom.front()) == g.mul(b, g.inverse(a)));
            }
    }
}

TEST_CASE("action groupoids") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    ActionGroupoid trivial = action_groupoid(z2, {"a", "b"}, {0, 1, 0, 1});
    Components tc = connected_components(*trivial.groupoid);
    CHECK(tc.members.size() == 2);
    CHECK(automorphism_count(*trivial.groupoid, 0) == 2);
    CHECK(automorphism_count(*trivial.groupoid, 1) == 2);
    CHECK(is_isofibration(trivial.projection));

    ActionGroupoid self = action_groupoid(z2, z2.names(), {0, 1, 1, 0});
    EGroupoid ez2 = e_groupoid(z2);
    CHECK(*self.groupoid == *ez2.groupoid);

    ActionGroupoid swap = action_groupoid(z2, {"a", "b"}, {0, 1, 1, 0});
    CHECK(connected_components(*swap.groupoid).members.size() == 1);
    CHECK(automorphism_count(*swap.groupoid, 0) == 1);
    CHECK(is_equivalence(to_terminal(swap.groupoid)));

    CHECK_THROWS_AS(action_groupoid(z2, {"a", "b"}, {1, 0, 1, 0}), ValidationError);
}

TEST_CASE("codiscrete, discrete and terminal") {
    Grpd c4 = codiscrete({"1", "2", "3", "4"});
    CHECK(c4->num_morphisms() == 16);
    Grpd c0 = codiscrete({});
    CHECK(c0->num_objects() == 0);
    CHECK(c0->num_morphisms() == 0);
    GroupoidFunctor t = to_terminal(codiscrete({"a", "b"}));
    CHECK(is_equivalence(t));
    CHECK_FALSE(is_cofibration(t));
    CHECK(discrete({"x", "y"})->is_discrete());
}

TEST_CASE("products, coproducts, exponentials") {
    FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3);
    Product p = product(delooping(z2), delooping(z3));
    Grpd b6 = delooping(FiniteGroup::product(z2, z3));
    // Element (a,b) of Z2 x Z3 and morphism (a,b) of BZ2 x BZ3 share the index a*3+b.
    std::vector<std::size_t> mor(6);
    for (std::size_t k = 0; k < 6; ++k)
        mor[k] = k;
    GroupoidFunctor w(p.groupoid, b6, {0}, mor);
    CHECK(oracle_is_isomorphism(w));

    Coproduct c = coproduct({delooping(z2), terminal()});
    CHECK(connected_components(*c.groupoid).members.size() == 2);

    Product e = exponential(delooping(z2), discrete({"0", "1"}));
    CHECK(e.groupoid->num_objects() == 1);
    CHECK(e.groupoid->num_morphisms() == 4);
    CHECK(e.projections.size() == 2);
    CHECK_THROWS_AS(exponential(delooping(z2), codiscrete({"0", "1"})), Unsupported);
}

TEST_CASE("skeletization") {
    Skeleton s = skeletize(codiscrete({"a", "b", "c"}));
    CHECK(s.skeleton->num_objects() == 1);
    CHECK(s.skeleton->num_morphisms() == 1);
    CHECK(compose(s.projection, s.inclusion) == GroupoidFunctor::identity(s.skeleton));

    Skeleton se = skeletize(e_groupoid(FiniteGroup::cyclic(2)).groupoid);
    CHECK(se.skeleton->num_objects() == 1);
    CHECK(se.skeleton->num_morphisms() == 1);

    // Z/4 acting on Z/4 / {0,2} = {0,1} by translation: transitive, stabilizer of order 2.
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    std::vector<std::size_t> act;
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t w = 0; w < 2; ++w)
            act.push_back((g + w) % 2);
    ActionGroupoid ag = action_groupoid(z4, {"0", "1"}, act);
    Skeleton sa = skeletize(ag.groupoid);
    CHECK(sa.skeleton->num_objects() == 1);
    std::size_t stabilizer = 0;
    for (std::size_t g = 0; g < 4; ++g)
        if ((g + 0) % 2 == 0)
            ++stabilizer;
    CHECK(sa.skeleton->num_morphisms() == stabilizer);

    // Generic properties on mixed bases.
    std::vector<Grpd> bases = {
        coproduct({codiscrete({"a", "b"}), delooping(FiniteGroup::symmetric3()), terminal()}).groupoid,
        product(codiscrete({"a", "b"}), delooping(z4)).groupoid, ag.groupoid,
        e_groupoid(FiniteGroup::symmetric3()).groupoid};
    for (const auto& x : bases) {
        Skeleton sk = skeletize(x);
        CHECK(compose(sk.projection, sk.inclusion) == GroupoidFunctor::identity(sk.skeleton));
        CHECK(is_equivalence(sk.inclusion));
        CHECK(is_equivalence(sk.projection));
        for (std::size_t i = 0; i < sk.basepoints.size(); ++i) {
            CHECK(sk.gamma.component(sk.basepoints[i]) == x->identity(sk.basepoints[i]));
            CHECK(sk.basepoints[i] == connected_components(*x).members[i].front());
        }
    }
}

TEST_CASE("model structure predicates") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    Grpd bz2 = delooping(z2);
    GroupoidFunctor to_pt = to_terminal(bz2);
    CHECK_FALSE(is_equivalence(to_pt));
    CHECK(is_isofibration(to_pt));

    GroupoidFunctor from_pt = point_at(bz2, 0);
    CHECK(is_cofibration(from_pt));
    CHECK_FALSE(is_equivalence(from_pt));
    // The non-identity element out of the image of * has no lift with domain * in pt.
    CHECK_FALSE(is_isofibration(from_pt));

    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::string> s;
        for (std::size_t k = 0; k < n; ++k)
            s.push_back(std::to_string(k));
        GroupoidFunctor t = to_terminal(codiscrete(s));
        CHECK(is_equivalence(t));
        CHECK(is_cofibration(t) == (n < 2));
    }
}

TEST_CASE("acyclic cofibrations are the injective-on-objects equivalences") {
    Grpd c3 = codiscrete({"a", "b", "c"});
    Grpd bz2 = delooping(FiniteGroup::cyclic(2));
    std::vector<GroupoidFunctor> fs = {point_at(c3, 1), to_terminal(c3), point_at(bz2, 0), to_terminal(bz2),
                                      GroupoidFunctor::identity(c3)};
    for (const auto& f : fs) {
        bool injective = std::set<std::size_t>(f.object_map().begin(), f.object_map().end()).size() ==
                         f.object_map().size();
        CHECK((is_cofibration(f) && is_equivalence(f)) == (injective && is_equivalence(f)));
    }
}

TEST_CASE("products with a fixed groupoid preserve equivalences") {
    Rng rng(31);
    std::vector<Grpd> pool = {terminal(), codiscrete({"a", "b"}), codiscrete({"a", "b", "c"}),
                              delooping(FiniteGroup::cyclic(2)), delooping(FiniteGroup::cyclic(3)),
                              e_groupoid(FiniteGroup::cyclic(2)).groupoid};
    for (int n = 0; n < 30; ++n) {
        Grpd x = pool[rng.below(pool.size())], z = pool[rng.below(pool.size())];
        // An equivalence x -> x' built as the terminal map of a contractible groupoid, or an identity.
        GroupoidFunctor f = rng.coin() ? GroupoidFunctor::identity(x) : to_terminal(codiscrete({"p", "q"}));
        if (!is_equivalence(f))
            continue;
        Product src = product(f.source(), z), dst = product(f.target(), z);
        GroupoidFunctor fz = product_functor(f, GroupoidFunctor::identity(z), src, dst);
        CHECK(is_equivalence(fz));
    }
}

TEST_CASE("orbit groupoids") {
    FiniteGroup z3 = FiniteGroup::cyclic(3);
    EGroupoid ez3 = e_groupoid(z3);
    OrbitGroupoid o = orbit_groupoid(canonical_action_on_e(z3, ez3));
    CHECK(o.groupoid->num_objects() == 1);
    CHECK(o.groupoid->num_morphisms() == 3);
    // The quotient functor agrees with q : E G -> B G under the orbit labelling.
    Grpd bz3 = delooping(z3);
    std::vector<std::size_t> mor;
    for (std::size_t m = 0; m < o.groupoid->num_morphisms(); ++m)
        mor.push_back(ez3.q.on_morphism(ez3.groupoid->morphism_index(o.groupoid->morphism_id(m))));
    GroupoidFunctor comparison(o.groupoid, bz3, {0}, mor);
    CHECK(oracle_is_isomorphism(comparison));
    CHECK(compose(comparison, o.quotient) == ez3.q);

    GroupoidAction trivial{FiniteGroup::trivial(), bz3, {GroupoidFunctor::identity(bz3)}};
    OrbitGroupoid ot = orbit_groupoid(trivial);
    CHECK(*ot.groupoid == *bz3);

    // Z/2 swapping two copies of BZ/3.
    Coproduct two = coproduct({bz3, bz3});
    std::vector<std::size_t> swap_mor;
    for (std::size_t m = 0; m < 6; ++m)
        swap_mor.push_back((m + 3) % 6);
    GroupoidAction sw{FiniteGroup::cyclic(2), two.groupoid,
                      {GroupoidFunctor::identity(two.groupoid), GroupoidFunctor(two.groupoid, two.groupoid, {1, 0}, swap_mor)}};
    OrbitGroupoid os = orbit_groupoid(sw);
    CHECK(os.groupoid->num_objects() == 1);
    CHECK(os.groupoid->num_morphisms() == 3);

    GroupoidAction fixing{FiniteGroup::cyclic(2), bz3,
                          {GroupoidFunctor::identity(bz3), GroupoidFunctor::identity(bz3)}};
    CHECK_THROWS_AS(orbit_groupoid(fixing), Unsupported);
}

TEST_CASE("set pushout-products") {
    SetPushoutProduct id = set_pushout_product(2, 2, {0, 1}, 3, 3, {0, 1, 2});
    CHECK(id.matches_formula);
    for (auto s : id.fiber_sizes)
        CHECK(s == 1);

    // {0} -> {0,1} twice: brute-force fiber table.
    SetPushoutProduct inc = set_pushout_product(1, 2, {0}, 1, 2, {0});
    CHECK(inc.matches_formula);
    CHECK(inc.fiber_sizes == std::vector<std::size_t>{1, 1, 1, 0});

    // f injective, g surjective with 2-point fibers: over x' outside im f the fiber is g^-1(y').
    SetPushoutProduct sur = set_pushout_product(1, 3, {0}, 4, 2, {0, 0, 1, 1});
    CHECK(sur.matches_formula);
    for (std::size_t a = 1; a < 3; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            CHECK(sur.fiber_sizes[a * 2 + b] == 2);

    Rng rng(32);
    for (int n = 0; n < 50; ++n) {
        std::size_t x = rng.below(4), xp = 1 + rng.below(4), y = rng.below(4), yp = 1 + rng.below(4);
        std::vector<std::size_t> f(x), g(y);
        for (auto& v : f)
            v = rng.below(xp);
        for (auto& v : g)
            v = rng.below(yp);
        CHECK(set_pushout_product(x, xp, f, y, yp, g).matches_formula);
    }
}

TEST_CASE("corrupted composition tables are rejected") {
    Grpd bz3 = delooping(FiniteGroup::cyclic(3));
    std::vector<std::size_t> table = bz3->table();
    table[1 * 3 + 1] = 1; // 1 o 1 should be 2
    try {
        FinGroupoid bad(bz3->objects(), bz3->morphisms(), bz3->identities(), table);
        FAIL("expected groupoid-law error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("(") != std::string::npos);
    }
}
