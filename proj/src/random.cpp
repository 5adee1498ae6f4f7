#include "extlin/random.hpp"

#include "extlin/errors.hpp"

#include <algorithm>

namespace extlin::gen {

FiniteGroup group(Rng& rng, std::size_t max_order) {
    std::vector<FiniteGroup> pool;
    pool.push_back(FiniteGroup::trivial());
    for (std::size_t n : {2, 3, 4, 5, 6})
        if (n <= max_order)
            pool.push_back(FiniteGroup::cyclic(n));
    if (max_order >= 4)
        pool.push_back(FiniteGroup::klein());
    if (max_order >= 6)
        pool.push_back(FiniteGroup::symmetric3());
    return pool[rng.below(pool.size())];
}

Grpd groupoid_from_components(const std::vector<std::pair<FiniteGroup, std::size_t>>& components) {
    std::vector<std::string> objects;
    std::vector<MorphismData> mors;
    std::vector<std::size_t> ids;
    // Per morphism: component, group element, local source and target.
    struct Info {
        std::size_t comp, g, a, b;
    };
    std::vector<Info> info;
    std::vector<std::size_t> obj_offset, mor_offset;
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& [grp, k] = components[c];
        obj_offset.push_back(objects.size());
        mor_offset.push_back(mors.size());
        for (std::size_t a = 0; a < k; ++a)
            objects.push_back("x" + std::to_string(obj_offset[c] + a));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t g = 0; g < grp.order(); ++g) {
                    if (a == b && g == grp.identity())
                        ids.push_back(mors.size());
                    mors.push_back({grp.name(g) + ":" + objects[obj_offset[c] + a] + "->" + objects[obj_offset[c] + b],
                                    obj_offset[c] + a, obj_offset[c] + b});
                    info.push_back({c, g, a, b});
                }
    }
    return std::make_shared<FinGroupoid>(FinGroupoid::from_function(
        std::move(objects), std::move(mors), std::move(ids), [&](std::size_t h, std::size_t f) {
            const Info& ih = info[h];
            const Info& iff = info[f];
            const auto& [grp, k] = components[ih.comp];
            const std::size_t g = grp.mul(ih.g, iff.g);
            return mor_offset[ih.comp] + (iff.a * k + ih.b) * grp.order() + g;
        }));
}

Grpd groupoid(Rng& rng, std::size_t max_objects, std::size_t max_order) {
    std::size_t remaining = 1 + rng.below(max_objects);
    std::vector<std::pair<FiniteGroup, std::size_t>> comps;
    while (remaining > 0) {
        std::size_t k = 1 + rng.below(remaining);
        comps.emplace_back(group(rng, max_order), k);
        remaining -= k;
    }
    return groupoid_from_components(comps);
}

Grpd finite_set(Rng& rng, std::size_t max_objects, bool allow_empty) {
    std::size_t n = allow_empty ? rng.below(max_objects + 1) : 1 + rng.below(max_objects);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(std::to_string(i));
    return discrete(names);
}

std::vector<std::vector<std::size_t>> automorphism_homs(const FinGroupoid& x, std::size_t b, const FinGroupoid& y,
                                                        std::size_t c) {
    const auto& source = x.hom(b, b);
    const auto& target = y.hom(c, c);
    std::vector<std::size_t> pos(x.num_morphisms(), FinGroupoid::none);
    for (std::size_t i = 0; i < source.size(); ++i)
        pos[source[i]] = i;
    auto closure = [&](const std::vector<std::size_t>& gens) {
        std::vector<bool> seen(source.size(), false);
        std::vector<std::size_t> queue{x.identity(b)};
        seen[pos[x.identity(b)]] = true;
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (auto s : gens) {
                std::size_t e = x.compose(s, queue[q]);
                if (!seen[pos[e]]) {
                    seen[pos[e]] = true;
                    queue.push_back(e);
                }
            }
        return seen;
    };
    std::vector<std::size_t> gens;
    for (auto e : source)
        if (!closure(gens)[pos[e]])
            gens.push_back(e);

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> choice(gens.size(), 0);
    while (true) {
        std::vector<std::size_t> image(source.size(), FinGroupoid::none);
        image[pos[x.identity(b)]] = y.identity(c);
        std::vector<std::size_t> queue{x.identity(b)};
        bool ok = true;
        for (std::size_t q = 0; q < queue.size() && ok; ++q)
            for (std::size_t k = 0; k < gens.size() && ok; ++k) {
                std::size_t e = x.compose(gens[k], queue[q]);
                std::size_t im = y.compose(target[choice[k]], image[pos[queue[q]]]);
                if (image[pos[e]] == FinGroupoid::none) {
                    image[pos[e]] = im;
                    queue.push_back(e);
                } else if (image[pos[e]] != im) {
                    ok = false;
                }
            }
        if (ok)
            for (std::size_t i = 0; i < source.size() && ok; ++i)
                for (std::size_t j = 0; j < source.size() && ok; ++j)
                    ok = image[pos[x.compose(source[i], source[j])]] == y.compose(image[i], image[j]);
        if (ok)
            out.push_back(image);
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == target.size())
            choice[k++] = 0;
        if (k == choice.size())
            break;
    }
    return out;
}

GroupoidFunctor functor(Rng& rng, const Grpd& xp, const Grpd& yp) {
    const FinGroupoid& x = *xp;
    const FinGroupoid& y = *yp;
    if (x.num_objects() > 0 && y.num_objects() == 0)
        throw ShapeError("no functor into the empty groupoid from a nonempty one");
    Skeleton sx = skeletize(xp);
    Components cy = connected_components(y);
    std::vector<std::size_t> obj(x.num_objects()), mor(x.num_morphisms());
    std::vector<std::size_t> d(x.num_objects());
    std::vector<std::vector<std::size_t>> phi(sx.basepoints.size());
    std::vector<std::size_t> pos(x.num_morphisms(), FinGroupoid::none);
    for (std::size_t i = 0; i < sx.basepoints.size(); ++i) {
        const std::size_t b = sx.basepoints[i];
        const auto& hb = x.hom(b, b);
        for (std::size_t k = 0; k < hb.size(); ++k)
            pos[hb[k]] = k;
        const std::size_t y0 = rng.below(y.num_objects());
        auto homs = automorphism_homs(x, b, y, y0);
        phi[i] = homs[rng.below(homs.size())];
        const auto& comp = cy.members[cy.of_object[y0]];
        for (std::size_t o = 0; o < x.num_objects(); ++o) {
            if (sx.projection.on_object(o) != i)
                continue;
            if (o == b) {
                obj[o] = y0;
                d[o] = y.identity(y0);
            } else {
                obj[o] = comp[rng.below(comp.size())];
                const auto& h = y.hom(y0, obj[o]);
                d[o] = h[rng.below(h.size())];
            }
        }
    }
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        const std::size_t s = x.src(m), t = x.dst(m);
        const std::size_t i = sx.projection.on_object(s);
        const std::size_t loop = x.compose(x.inverse(sx.connecting[t]), x.compose(m, sx.connecting[s]));
        mor[m] = y.compose(d[t], y.compose(phi[i][pos[loop]], y.inverse(d[s])));
    }
    return GroupoidFunctor(xp, yp, std::move(obj), std::move(mor));
}

Matrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = Scalar(Rational(rng.range(-bound, bound)));
    return m;
}

Matrix invertible(Rng& rng, std::size_t n) {
    Matrix lower = Matrix::identity(n), upper = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            lower(i, j) = Scalar(Rational(rng.range(-1, 1)));
            upper(j, i) = Scalar(Rational(rng.range(-1, 1)));
        }
    for (std::size_t i = 0; i < n; ++i)
        if (rng.coin())
            upper(i, i) = Scalar(Rational(-1));
    return lower * upper;
}

namespace {

struct TargetRep {
    FiniteGroup group;
    std::vector<Matrix> rho;
};

Matrix perm3(const std::vector<std::size_t>& p) { return Matrix::permutation(p, 3); }

std::vector<TargetRep> target_reps(std::size_t d) {
    std::vector<TargetRep> out;
    const Scalar i_unit(Gaussian(Rational(0), Rational(1)));
    if (d == 1) {
        std::vector<Matrix> rho;
        Scalar s(Rational(1));
        for (std::size_t k = 0; k < 4; ++k) {
            Matrix m(1, 1);
            m(0, 0) = s;
            rho.push_back(m);
            s *= i_unit;
        }
        out.push_back({FiniteGroup::cyclic(4), rho});
    } else if (d == 2) {
        out.push_back({FiniteGroup::cyclic(2), {Matrix::identity(2), Matrix::permutation({1, 0}, 2)}});
        Matrix rot(2, 2);
        rot(0, 1) = Scalar(Rational(-1));
        rot(1, 0) = Scalar(Rational(1));
        out.push_back({FiniteGroup::cyclic(4), {Matrix::identity(2), rot, rot * rot, rot * rot * rot}});
        // The standard representation of S3 on the sum-zero plane, basis e0 - e2, e1 - e2.
        FiniteGroup s3 = FiniteGroup::symmetric3();
        const std::vector<std::vector<std::size_t>> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
        Matrix basis(3, 2);
        basis(0, 0) = Scalar(Rational(1));
        basis(2, 0) = Scalar(Rational(-1));
        basis(1, 1) = Scalar(Rational(1));
        basis(2, 1) = Scalar(Rational(-1));
        std::vector<Matrix> rho;
        for (const auto& p : perms)
            rho.push_back((perm3(p) * basis).block(0, 0, 2, 2));
        out.push_back({s3, rho});
    } else if (d == 3) {
        const std::vector<std::vector<std::size_t>> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
        std::vector<Matrix> rho;
        for (const auto& p : perms)
            rho.push_back(perm3(p));
        out.push_back({FiniteGroup::symmetric3(), rho});
    }
    return out;
}

} // namespace

std::vector<Matrix> automorphism_rep(Rng& rng, const FinGroupoid& x, std::size_t b, std::size_t d) {
    const auto& hb = x.hom(b, b);
    std::vector<Matrix> rho(hb.size(), Matrix(0, 0));
    std::size_t remaining = d;
    while (remaining > 0) {
        std::size_t block = 1 + rng.below(std::min<std::size_t>(remaining, 3));
        auto targets = target_reps(block);
        const TargetRep& t = targets[rng.below(targets.size())];
        Grpd bt = delooping(t.group);
        auto homs = automorphism_homs(x, b, *bt, 0);
        const auto& phi = homs[rng.below(homs.size())];
        for (std::size_t k = 0; k < hb.size(); ++k)
            rho[k] = block_diagonal({rho[k], t.rho[phi[k]]});
        remaining -= block;
    }
    Matrix a = invertible(rng, d);
    Matrix ainv = *inverse(a);
    for (auto& m : rho)
        m = a * m * ainv;
    return rho;
}

LocalSystem local_system(Rng& rng, const Grpd& xp, std::size_t max_dim, std::size_t min_dim) {
    const FinGroupoid& x = *xp;
    Skeleton sx = skeletize(xp);
    std::vector<std::vector<Matrix>> reps;
    std::vector<std::size_t> dims;
    for (auto b : sx.basepoints) {
        std::size_t d = min_dim + rng.below(max_dim - min_dim + 1);
        dims.push_back(d);
        reps.push_back(automorphism_rep(rng, x, b, d));
    }
    std::vector<Matrix> change, change_inv;
    std::vector<VectorSpace> fibers;
    for (std::size_t o = 0; o < x.num_objects(); ++o) {
        const std::size_t d = dims[sx.projection.on_object(o)];
        change.push_back(invertible(rng, d));
        change_inv.push_back(*inverse(change.back()));
        fibers.push_back(VectorSpace::standard(d, "v"));
    }
    std::vector<Matrix> transport;
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        const std::size_t s = x.src(m), t = x.dst(m);
        const std::size_t i = sx.projection.on_object(s);
        const std::size_t b = sx.basepoints[i];
        const std::size_t loop = x.compose(x.inverse(sx.connecting[t]), x.compose(m, sx.connecting[s]));
        const auto& hb = x.hom(b, b);
        const std::size_t k = static_cast<std::size_t>(std::find(hb.begin(), hb.end(), loop) - hb.begin());
        transport.push_back(change[t] * reps[i][k] * change_inv[s]);
    }
    return LocalSystem::from_matrices(xp, std::move(fibers), transport);
}

LocMorphism loc_morphism(Rng& rng, const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f) {
    Kernel k = morphism_space(v, w, f);
    Matrix coeffs = matrix(rng, k.space.dim(), 1, 2);
    return morphism_from_coordinates(v, w, f, k.inclusion.matrix() * coeffs);
}

} // namespace extlin::gen
