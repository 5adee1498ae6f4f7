#include <doctest.h>

#include "extlin/errors.hpp"
#include "extlin/quantum.hpp"
#include "extlin/random.hpp"
#include "support.hpp"

using namespace extlin;
using testing_support::oracle_product;

namespace {

Matrix col(std::initializer_list<long> entries) {
    Matrix m(entries.size(), 1);
    std::size_t i = 0;
    for (long v : entries)
        m(i++, 0) = Scalar(v);
    return m;
}

Matrix row(std::initializer_list<long> entries) { return col(entries).transpose(); }

LocalSystem bundle(const BranchSet& b, const std::vector<std::size_t>& dims) {
    std::vector<VectorSpace> fibers;
    for (auto d : dims)
        fibers.push_back(VectorSpace::standard(d, "v"));
    std::vector<LinearMap> transport;
    for (auto& f : fibers)
        transport.push_back(identity(f));
    return LocalSystem(b.set, fibers, transport);
}

LocalSystem over_point(std::size_t d) {
    VectorSpace v = VectorSpace::standard(d, "s");
    return LocalSystem(terminal(), {v}, {identity(v)});
}

BranchSet random_branches(Rng& rng) {
    std::vector<std::string> names;
    std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("b" + std::to_string(i));
    return branch_set(names);
}

} // namespace

TEST_CASE("branch sets reject empty and repeated outcomes") {
    CHECK_THROWS_AS(branch_set({}), ValidationError);
    CHECK_THROWS_AS(branch_set({"0", "0"}), ValidationError);
    CHECK(branch_set({"0", "1"}).size() == 2);
}

TEST_CASE("qubit measurement components are the coordinate projections") {
    BranchSet b = branch_set({"0", "1"});
    MeasureComonad box(b);
    LocalSystem v = bundle(b, {1, 1});
    LocalSystem bv = box.apply(v);
    CHECK(bv.fiber(0).dim() == 2);
    CHECK(bv.fiber(1).dim() == 2);
    LocMorphism eps = box.counit(v);
    CHECK(eps.component(0).matrix() == row({1, 0}));
    CHECK(eps.component(1).matrix() == row({0, 1}));
}

TEST_CASE("preparation is the unit column of the chosen branch") {
    BranchSet b = branch_set({"0", "1"});
    LocalSystem k = over_point(1);
    CHECK(prepare(b, 0, k).component(0).matrix() == col({1, 0}));
    CHECK(prepare(b, "1", k).component(0).matrix() == col({0, 1}));
    CHECK_THROWS_AS(prepare(b, 2, k), ValidationError);
    CHECK_THROWS_AS(prepare(b, "2", k), ValidationError);
    CHECK_THROWS_AS(prepare(b, 0, bundle(b, {1, 1})), ValidationError);
}

TEST_CASE("measurement after preparation selects the prepared branch") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        BranchSet b = random_branches(rng);
        LocalSystem v = over_point(1 + rng.below(3));
        std::size_t prepared = rng.below(b.size());
        auto m = measure_after_prepare(b, prepared, v);
        REQUIRE(m.size() == b.size());
        for (std::size_t c = 0; c < b.size(); ++c) {
            CHECK(m[c].rows() == v.fiber(0).dim());
            CHECK((c == prepared ? m[c].is_identity() : m[c].is_zero()));
        }
    }
}

TEST_CASE("comonad laws on random bundles over random branch sets") {
    Rng rng(72);
    for (int trial = 0; trial < 25; ++trial) {
        BranchSet b = random_branches(rng);
        MeasureComonad box(b);
        LocalSystem v = gen::local_system(rng, b.set, 3);
        ComonadLaws laws = check_comonad_laws(box, v);
        CHECK(laws.left_counit);
        CHECK(laws.right_counit);
        CHECK(laws.coassociative);

        std::size_t total = 0;
        for (const auto& f : v.fibers())
            total += f.dim();
        LocalSystem bv = box.apply(v);
        LocMorphism eps = box.counit(v);
        // Each epsilon_c restricted to the d-th summand of the direct sum is the identity for d = c
        // and zero otherwise, read off by composing with the coordinate inclusion of the summand.
        std::size_t offset = 0;
        for (std::size_t d = 0; d < b.size(); ++d) {
            CHECK(bv.fiber(d).dim() == total);
            std::vector<std::size_t> sel;
            for (std::size_t k = 0; k < v.fiber(d).dim(); ++k)
                sel.push_back(offset + k);
            Matrix incl = Matrix::selection(sel, total);
            for (std::size_t c = 0; c < b.size(); ++c) {
                Matrix m = oracle_product(eps.component(c).matrix(), incl);
                CHECK((c == d ? m.is_identity() : m.is_zero()));
            }
            offset += v.fiber(d).dim();
        }
    }
}

TEST_CASE("the counit is natural") {
    Rng rng(73);
    for (int trial = 0; trial < 15; ++trial) {
        BranchSet b = random_branches(rng);
        MeasureComonad box(b);
        LocalSystem v = gen::local_system(rng, b.set, 2);
        LocalSystem w = gen::local_system(rng, b.set, 2);
        LocMorphism phi = gen::loc_morphism(rng, v, w, GroupoidFunctor::identity(b.set));
        LocMorphism lhs = compose_loc(box.counit(w), box.apply(phi));
        LocMorphism rhs = compose_loc(phi, box.counit(v));
        for (std::size_t c = 0; c < b.size(); ++c)
            CHECK(lhs.component(c).matrix() == rhs.component(c).matrix());
    }
}

TEST_CASE("a single outcome gives the identity comonad") {
    Rng rng(74);
    BranchSet b = branch_set({"only"});
    MeasureComonad box(b);
    for (int trial = 0; trial < 5; ++trial) {
        LocalSystem v = gen::local_system(rng, b.set, 3);
        CHECK(box.counit(v).component(0).matrix().is_identity());
        CHECK(box.comultiplication(v).component(0).matrix().is_identity());
    }
}

TEST_CASE("qubit demo verifies every diagram") {
    QubitReport r = qubit_demo();
    CHECK(r.verified());
    CHECK(r.outcomes[0] == Scalar(Rational(3, 5)));
    CHECK(r.outcomes[1] == Scalar(Rational(0), Rational(4, 5)));
    std::string text = render_text(r);
    CHECK(text.find("all diagrams verified") != std::string::npos);
    CHECK(text.find("counit of p* -| p_*") != std::string::npos);

    QubitReport other = qubit_demo(Scalar(Rational(5, 13)), Scalar(Rational(-12, 13)));
    CHECK(other.verified());
    CHECK(other.outcomes[1] == Scalar(Rational(-12, 13)));
}
