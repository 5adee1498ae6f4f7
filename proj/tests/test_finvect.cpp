#include <doctest.h>

#include "extlin/errors.hpp"
#include "extlin/finvect.hpp"
#include "support.hpp"

using namespace extlin;
using namespace testing_support;

TEST_CASE("compose and identity") {
    Rng rng(21);
    for (int k = 0; k < 20; ++k) {
        VectorSpace v = VectorSpace::standard(rng.below(4), "v"), w = VectorSpace::standard(rng.below(4), "w");
        LinearMap f = random_map(rng, v, w, k % 2);
        CHECK(compose(identity(w), f) == f);
        CHECK(compose(f, identity(v)) == f);
    }
    VectorSpace a = VectorSpace::standard(4, "a"), b = VectorSpace::standard(3, "b"),
                c = VectorSpace::standard(2, "c");
    LinearMap f = random_map(rng, a, b, true), g = random_map(rng, b, c, true);
    LinearMap gf = compose(g, f);
    CHECK(gf.matrix().rows() == 2);
    CHECK(gf.matrix().cols() == 4);
    CHECK(gf.matrix() == oracle_product(g.matrix(), f.matrix()));
    CHECK(compose(g, zero_map(a, b)) == zero_map(a, c));
    CHECK_THROWS_AS(compose(f, g), ShapeError);
}

TEST_CASE("serial and parallel kernels agree") {
    Rng rng(22);
    for (int k = 0; k < 10; ++k) {
        Matrix a = random_matrix(rng, 20, 17, k % 2), b = random_matrix(rng, 17, 19, true);
        CHECK(kernels::matmul_serial(a, b) == kernels::matmul_parallel(a, b));
        Rref s = kernels::rref_serial(a), p = kernels::rref_parallel(a);
        CHECK(s.reduced == p.reduced);
        CHECK(s.pivots == p.pivots);
        CHECK(s.pivots.size() == oracle_rank(a));
    }
}

TEST_CASE("tensor products") {
    VectorSpace v = VectorSpace::standard(2, "v"), w = VectorSpace::standard(3, "w");
    CHECK(tensor_space(v, w).dim() == 6);
    CHECK(tensor_space(v, w).label(1) == "(v0,w1)");
    CHECK(tensor_map(identity(v), identity(w)) == identity(tensor_space(v, w)));
    Rng rng(23);
    for (int k = 0; k < 20; ++k) {
        VectorSpace a = VectorSpace::standard(1 + rng.below(3), "a"), b = VectorSpace::standard(1 + rng.below(3), "b"),
                    c = VectorSpace::standard(1 + rng.below(3), "c");
        VectorSpace x = VectorSpace::standard(1 + rng.below(3), "x"), y = VectorSpace::standard(1 + rng.below(3), "y"),
                    z = VectorSpace::standard(1 + rng.below(3), "z");
        LinearMap f = random_map(rng, a, b, true), g = random_map(rng, b, c, true);
        LinearMap f2 = random_map(rng, x, y, true), g2 = random_map(rng, y, z, true);
        CHECK(tensor_map(compose(g, f), compose(g2, f2)) == compose(tensor_map(g, g2), tensor_map(f, f2)));
    }
}

TEST_CASE("direct sums and set tensoring") {
    VectorSpace v = VectorSpace::standard(2, "v");
    CHECK(set_tensoring({"a", "b", "c"}, v).dim() == 6);
    CHECK(set_tensoring({}, v).dim() == 0);
    LinearMap w = set_tensoring_witness({"a", "b", "c"}, v);
    // Oracle: label (s,v) must land on the K[S](x)V basis vector with the same pair of labels.
    const Matrix& m = w.matrix();
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j).is_one()) {
                ++ones;
                CHECK(w.codomain().label(i) == w.domain().label(j));
            } else {
                CHECK(m(i, j).is_zero());
            }
        CHECK(ones == 1);
    }
    DirectSum s = direct_sum(v, VectorSpace::standard(1, "u"));
    CHECK(s.space.dim() == 3);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(compose(s.projections[k], s.injections[k]).matrix().is_identity());
        CHECK(compose(s.projections[k], s.injections[1 - k]).matrix().is_zero());
    }
}

TEST_CASE("internal hom and currying") {
    CHECK(internal_hom(VectorSpace::standard(2), VectorSpace::standard(3)).dim() == 6);
    CHECK(internal_hom(VectorSpace(), VectorSpace::standard(3)).dim() == 0);
    Rng rng(24);
    for (int k = 0; k < 10; ++k) {
        VectorSpace t = VectorSpace::standard(1 + rng.below(3), "t"), v = VectorSpace::standard(1 + rng.below(3), "v"),
                    w = VectorSpace::standard(1 + rng.below(3), "w");
        HomAdjunction h = hom_adjunction_witness(t, v, w);
        CHECK(compose(h.uncurry, h.curry) == identity(h.curry.domain()));
        CHECK(compose(h.curry, h.uncurry) == identity(h.curry.codomain()));
        // Explicit currying oracle: g(e_a) is the map v |-> f(e_a (x) v).
        LinearMap f = random_map(rng, tensor_space(t, v), w, true);
        LinearMap curried = compose(h.curry, name_of(f));
        LinearMap g = map_from_coordinates(t, internal_hom(v, w), curried.matrix());
        for (std::size_t a = 0; a < t.dim(); ++a) {
            Matrix col = g.matrix().block(0, a, g.matrix().rows(), 1);
            LinearMap ga = map_from_coordinates(v, w, col);
            for (std::size_t b = 0; b < v.dim(); ++b)
                for (std::size_t c = 0; c < w.dim(); ++c)
                    CHECK(ga.matrix()(c, b) == f.matrix()(c, a * v.dim() + b));
        }
    }
}

TEST_CASE("kernel, cokernel and rank") {
    VectorSpace v = VectorSpace::standard(2);
    CHECK(kernel(identity(v)).space.dim() == 0);
    Matrix m(2, 2);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = Scalar(1);
    LinearMap f(v, v, m);
    CHECK(rank(f) == 1);
    Kernel k = kernel(f);
    CHECK(k.space.dim() == 1);
    // Row reduction by hand: x + y = 0, so the kernel is spanned by (-1, 1).
    CHECK(k.inclusion.matrix()(0, 0) == Scalar(-1));
    CHECK(k.inclusion.matrix()(1, 0) == Scalar(1));

    Rng rng(25);
    for (int n = 0; n < 100; ++n) {
        VectorSpace a = VectorSpace::standard(rng.below(6), "a"), b = VectorSpace::standard(rng.below(6), "b");
        LinearMap g = random_map(rng, a, b, n % 3 == 0);
        Kernel kg = kernel(g);
        Cokernel cg = cokernel(g);
        CHECK(kg.space.dim() + rank(g) == a.dim());
        CHECK(rank(g) == oracle_rank(g.matrix()));
        CHECK(compose(g, kg.inclusion).matrix().is_zero());
        CHECK(compose(kg.retraction, kg.inclusion).matrix().is_identity());
        CHECK(compose(cg.projection, g).matrix().is_zero());
        CHECK(compose(cg.projection, cg.section).matrix().is_identity());
        CHECK(cg.space.dim() + rank(g) == b.dim());
    }
    for (int n = 0; n < 10; ++n) {
        VectorSpace a = VectorSpace::standard(1 + rng.below(3), "a"), b = VectorSpace::standard(1 + rng.below(3), "b");
        LinearMap f1 = random_map(rng, a, b), f2 = random_map(rng, b, a);
        CHECK(rank(tensor_map(f1, f2)) == oracle_rank(f1.matrix()) * oracle_rank(f2.matrix()));
    }
}

TEST_CASE("coherence of associator and symmetry") {
    Rng rng(26);
    for (int n = 0; n < 10; ++n) {
        VectorSpace a = VectorSpace::standard(1 + rng.below(3), "a"), b = VectorSpace::standard(1 + rng.below(3), "b"),
                    c = VectorSpace::standard(1 + rng.below(3), "c"), d = VectorSpace::standard(1 + rng.below(2), "d");
        // Pentagon.
        LinearMap lhs = compose(associator(a, b, tensor_space(c, d)), associator(tensor_space(a, b), c, d));
        LinearMap rhs = compose(tensor_map(identity(a), associator(b, c, d)),
                                compose(associator(a, tensor_space(b, c), d), tensor_map(associator(a, b, c), identity(d))));
        CHECK(lhs.matrix() == rhs.matrix());
        // Hexagon.
        LinearMap h1 = compose(associator(b, c, a), compose(symmetry(a, tensor_space(b, c)), associator(a, b, c)));
        LinearMap h2 = compose(tensor_map(identity(b), symmetry(a, c)),
                               compose(associator(b, a, c), tensor_map(symmetry(a, b), identity(c))));
        CHECK(h1.matrix() == h2.matrix());
        CHECK(compose(symmetry(b, a), symmetry(a, b)) == identity(tensor_space(a, b)));
    }
}

TEST_CASE("solve and inverse") {
    Rng rng(27);
    for (int n = 0; n < 30; ++n) {
        Matrix a = random_matrix(rng, 4, 4, true);
        auto inv = inverse(a);
        CHECK(inv.has_value() == (oracle_rank(a) == 4));
        if (inv)
            CHECK((a * *inv).is_identity());
        Matrix b = random_matrix(rng, 4, 2, true);
        auto x = solve(a, b);
        if (x)
            CHECK(a * *x == b);
        else
            CHECK(oracle_rank(a) < 4);
    }
}
