#include "extlin/errors.hpp"
#include "extlin/locsys.hpp"

namespace extlin {

namespace {

std::string coordinate_label(const FinGroupoid& x, const FinGroupoid& y, std::size_t o, std::size_t a,
                             const std::string& v) {
    return "(" + x.object(o) + "," + y.morphism_id(a) + "," + v + ")";
}

bool over_identity(const LocMorphism& phi) {
    return phi.base_map() == GroupoidFunctor::identity(phi.domain().base());
}

} // namespace

LeftKan pushforward(const GroupoidFunctor& f, const LocalSystem& v) {
    if (!same_groupoid(f.source(), v.base()))
        throw ShapeError("pushforward: functor does not start at the base of the system");
    const FinGroupoid& x = *f.source();
    const FinGroupoid& y = *f.target();
    const std::size_t ny = y.num_morphisms();
    LeftKan out;
    out.f = f;
    out.source = v;
    out.block_offset.assign(x.num_objects() * ny, FinGroupoid::none);
    out.coord_dim.assign(y.num_objects(), 0);
    std::vector<std::vector<std::string>> coord_labels(y.num_objects());
    // Blocks (x, id) come first so that the cokernel keeps them as pivots.
    for (std::size_t t = 0; t < y.num_objects(); ++t)
        for (bool identities : {true, false})
            for (std::size_t o = 0; o < x.num_objects(); ++o)
                for (std::size_t a : y.hom(f.on_object(o), t)) {
                    if (y.is_identity(a) != identities)
                        continue;
                    out.block_offset[o * ny + a] = out.coord_dim[t];
                    out.coord_dim[t] += v.fiber(o).dim();
                    for (const auto& l : v.fiber(o).labels())
                        coord_labels[t].push_back(coordinate_label(x, y, o, a, l));
                }

    // One relation block per non-identity m : x -> x' and a : f(x') -> y:
    // e_{(x, a o f m)} v - e_{(x', a)} V_m v.
    std::vector<VectorSpace> fibers;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        std::size_t ncols = 0;
        for (std::size_t m = 0; m < x.num_morphisms(); ++m)
            if (!x.is_identity(m))
                ncols += y.hom(f.on_object(x.dst(m)), t).size() * v.fiber(x.src(m)).dim();
        Matrix rel(out.coord_dim[t], ncols);
        std::size_t col = 0;
        for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
            if (x.is_identity(m))
                continue;
            const std::size_t s = x.src(m), d = x.dst(m);
            const std::size_t dim = v.fiber(s).dim();
            for (std::size_t a : y.hom(f.on_object(d), t)) {
                const std::size_t moved = y.compose(a, f.on_morphism(m));
                rel.add_block(out.block_offset[s * ny + moved], col, Matrix::identity(dim));
                rel.add_block(out.block_offset[d * ny + a], col, -v.transport(m).matrix());
                col += dim;
            }
        }
        LeftNullspace ln = left_nullspace(rel);
        std::vector<std::string> labels;
        for (auto p : ln.pivots)
            labels.push_back(coord_labels[t][p]);
        fibers.emplace_back(std::move(labels));
        out.section.push_back(Matrix::selection(ln.pivots, out.coord_dim[t]));
        out.projection.push_back(std::move(ln.basis));
    }

    // b : y -> y' moves block (x, a) to block (x, b o a).
    std::vector<Matrix> transport;
    for (std::size_t b = 0; b < ny; ++b) {
        const std::size_t s = y.src(b), d = y.dst(b);
        Matrix move(out.coord_dim[d], out.coord_dim[s]);
        for (std::size_t o = 0; o < x.num_objects(); ++o)
            for (std::size_t a : y.hom(f.on_object(o), s))
                move.set_block(out.block_offset[o * ny + y.compose(b, a)], out.block_offset[o * ny + a],
                               Matrix::identity(v.fiber(o).dim()));
        transport.push_back(out.projection[d] * move * out.section[s]);
    }
    out.value = LocalSystem::from_matrices(f.target(), std::move(fibers), transport);

    std::vector<Matrix> unit;
    for (std::size_t o = 0; o < x.num_objects(); ++o) {
        const std::size_t t = f.on_object(o);
        const std::size_t dim = v.fiber(o).dim();
        unit.push_back(out.projection[t].block(0, out.block_offset[o * ny + y.identity(t)],
                                               out.projection[t].rows(), dim));
    }
    out.unit = LocMorphism::from_matrices(v, pullback(f, out.value), GroupoidFunctor::identity(f.source()), unit);
    return out;
}

RightKan sections(const GroupoidFunctor& f, const LocalSystem& v) {
    if (!same_groupoid(f.source(), v.base()))
        throw ShapeError("sections: functor does not start at the base of the system");
    const FinGroupoid& x = *f.source();
    const FinGroupoid& y = *f.target();
    const std::size_t ny = y.num_morphisms();
    RightKan out;
    out.f = f;
    out.source = v;
    out.block_offset.assign(x.num_objects() * ny, FinGroupoid::none);
    out.coord_dim.assign(y.num_objects(), 0);
    std::vector<std::vector<std::string>> coord_labels(y.num_objects());
    // Blocks (x, id) come last so that the kernel keeps them as free coordinates.
    for (std::size_t t = 0; t < y.num_objects(); ++t)
        for (bool identities : {false, true})
            for (std::size_t o = 0; o < x.num_objects(); ++o)
                for (std::size_t a : y.hom(t, f.on_object(o))) {
                    if (y.is_identity(a) != identities)
                        continue;
                    out.block_offset[o * ny + a] = out.coord_dim[t];
                    out.coord_dim[t] += v.fiber(o).dim();
                    for (const auto& l : v.fiber(o).labels())
                        coord_labels[t].push_back(coordinate_label(x, y, o, a, l));
                }

    // V_m v_{(x, a)} = v_{(x', f(m) o a)} for m : x -> x', a : y -> f(x).
    std::vector<VectorSpace> fibers;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        std::size_t nrows = 0;
        for (std::size_t m = 0; m < x.num_morphisms(); ++m)
            if (!x.is_identity(m))
                nrows += y.hom(t, f.on_object(x.src(m))).size() * v.fiber(x.dst(m)).dim();
        Matrix con(nrows, out.coord_dim[t]);
        std::size_t row = 0;
        for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
            if (x.is_identity(m))
                continue;
            const std::size_t s = x.src(m), d = x.dst(m);
            const std::size_t dim = v.fiber(d).dim();
            for (std::size_t a : y.hom(t, f.on_object(s))) {
                con.add_block(row, out.block_offset[s * ny + a], v.transport(m).matrix());
                con.add_block(row, out.block_offset[d * ny + y.compose(f.on_morphism(m), a)], -Matrix::identity(dim));
                row += dim;
            }
        }
        Nullspace ns = nullspace(con);
        std::vector<std::string> labels;
        for (auto p : ns.free_columns)
            labels.push_back(coord_labels[t][p]);
        fibers.emplace_back(std::move(labels));
        out.retraction.push_back(Matrix::selection(ns.free_columns, out.coord_dim[t]).transpose());
        out.inclusion.push_back(std::move(ns.basis));
    }

    // (b . v)_{(x, a')} = v_{(x, a' o b)} for b : y -> y'.
    std::vector<Matrix> transport;
    for (std::size_t b = 0; b < ny; ++b) {
        const std::size_t s = y.src(b), d = y.dst(b);
        Matrix move(out.coord_dim[d], out.coord_dim[s]);
        for (std::size_t o = 0; o < x.num_objects(); ++o)
            for (std::size_t a : y.hom(d, f.on_object(o)))
                move.set_block(out.block_offset[o * ny + a], out.block_offset[o * ny + y.compose(a, b)],
                               Matrix::identity(v.fiber(o).dim()));
        transport.push_back(out.retraction[d] * move * out.inclusion[s]);
    }
    out.value = LocalSystem::from_matrices(f.target(), std::move(fibers), transport);

    std::vector<Matrix> counit;
    for (std::size_t o = 0; o < x.num_objects(); ++o) {
        const std::size_t t = f.on_object(o);
        const std::size_t dim = v.fiber(o).dim();
        counit.push_back(out.inclusion[t].block(out.block_offset[o * ny + y.identity(t)], 0, dim,
                                                out.inclusion[t].cols()));
    }
    out.counit = LocMorphism::from_matrices(pullback(f, out.value), v, GroupoidFunctor::identity(f.source()), counit);
    return out;
}

LocMorphism adjunct(const LeftKan& k, const LocMorphism& phi) {
    if (!(phi.base_map() == k.f) || phi.domain() != k.source)
        throw ShapeError("adjunct: morphism does not match the extension (different base map or domain)");
    const FinGroupoid& x = *k.f.source();
    const FinGroupoid& y = *k.f.target();
    const std::size_t ny = y.num_morphisms();
    const LocalSystem& w = phi.codomain();
    std::vector<Matrix> comps;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        Matrix m(w.fiber(t).dim(), k.coord_dim[t]);
        for (std::size_t o = 0; o < x.num_objects(); ++o)
            for (std::size_t a : y.hom(k.f.on_object(o), t))
                m.set_block(0, k.block_offset[o * ny + a], w.transport(a).matrix() * phi.component(o).matrix());
        comps.push_back(m * k.section[t]);
    }
    return LocMorphism::from_matrices(k.value, w, GroupoidFunctor::identity(k.f.target()), comps);
}

LocMorphism adjunct(const LocMorphism& phi) { return adjunct(pushforward(phi.base_map(), phi.domain()), phi); }

LocMorphism adjunct_inverse(const LeftKan& k, const LocMorphism& psi) {
    if (!over_identity(psi) || psi.domain() != k.value)
        throw ShapeError("adjunct_inverse: expected a morphism out of the extension over an identity");
    std::vector<Matrix> comps;
    for (std::size_t o = 0; o < k.source.base()->num_objects(); ++o)
        comps.push_back(psi.component(k.f.on_object(o)).matrix() * k.unit.component(o).matrix());
    return LocMorphism::from_matrices(k.source, psi.codomain(), k.f, comps);
}

LocMorphism pushforward_mor(const LeftKan& kv, const LeftKan& kw, const LocMorphism& alpha) {
    if (!over_identity(alpha) || alpha.domain() != kv.source || alpha.codomain() != kw.source || !(kv.f == kw.f))
        throw ShapeError("pushforward_mor: morphism does not match the two extensions");
    std::vector<Matrix> comps;
    for (std::size_t o = 0; o < alpha.domain().base()->num_objects(); ++o)
        comps.push_back(kw.unit.component(o).matrix() * alpha.component(o).matrix());
    return adjunct(kv, LocMorphism::from_matrices(kv.source, kw.value, kv.f, comps));
}

LocMorphism left_counit(const LeftKan& k, const LocalSystem& w) { return adjunct(k, cartesian_lift(k.f, w)); }

LocMorphism right_adjunct(const RightKan& k, const LocalSystem& w, const LocMorphism& psi) {
    if (!over_identity(psi) || psi.codomain() != k.source || psi.domain() != pullback(k.f, w))
        throw ShapeError("right_adjunct: expected a morphism f* W -> V over an identity");
    const FinGroupoid& x = *k.f.source();
    const FinGroupoid& y = *k.f.target();
    const std::size_t ny = y.num_morphisms();
    std::vector<Matrix> comps;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        Matrix n(k.coord_dim[t], w.fiber(t).dim());
        for (std::size_t o = 0; o < x.num_objects(); ++o)
            for (std::size_t a : y.hom(t, k.f.on_object(o)))
                n.set_block(k.block_offset[o * ny + a], 0, psi.component(o).matrix() * w.transport(a).matrix());
        comps.push_back(k.retraction[t] * n);
        if (k.inclusion[t] * comps.back() != n)
            throw ValidationError("right_adjunct: assembled family does not satisfy the end constraints");
    }
    return LocMorphism::from_matrices(w, k.value, GroupoidFunctor::identity(k.f.target()), comps);
}

LocMorphism right_adjunct_inverse(const RightKan& k, const LocMorphism& chi) {
    if (!over_identity(chi) || chi.codomain() != k.value)
        throw ShapeError("right_adjunct_inverse: expected a morphism into the extension over an identity");
    std::vector<Matrix> comps;
    for (std::size_t o = 0; o < k.source.base()->num_objects(); ++o)
        comps.push_back(k.counit.component(o).matrix() * chi.component(k.f.on_object(o)).matrix());
    return LocMorphism::from_matrices(pullback(k.f, chi.domain()), k.source, GroupoidFunctor::identity(k.f.source()),
                                      comps);
}

LocMorphism sections_mor(const RightKan& kv, const RightKan& kw, const LocMorphism& alpha) {
    if (!over_identity(alpha) || alpha.domain() != kv.source || alpha.codomain() != kw.source || !(kv.f == kw.f))
        throw ShapeError("sections_mor: morphism does not match the two extensions");
    return right_adjunct(kw, kv.value, compose_loc(alpha, kv.counit));
}

LocMorphism right_unit(const RightKan& k, const LocalSystem& w) {
    return right_adjunct(k, w, identity_loc(pullback(k.f, w)));
}

namespace {

bool is_identity_family(const LocMorphism& phi) {
    for (const auto& c : phi.components())
        if (c.domain() != c.codomain() || !c.matrix().is_identity())
            return false;
    return true;
}

} // namespace

TriangleReport triangle_identities(const GroupoidFunctor& f, const LocalSystem& v, const LocalSystem& w) {
    TriangleReport r;
    {
        LeftKan kv = pushforward(f, v);
        LeftKan k2 = pushforward(f, pullback(f, kv.value));
        LocMorphism lhs = compose_loc(left_counit(k2, kv.value), pushforward_mor(kv, k2, kv.unit));
        r.left_first = is_identity_family(lhs);
    }
    {
        LeftKan kw = pushforward(f, pullback(f, w));
        LocMorphism lhs = compose_loc(pullback_mor(f, left_counit(kw, w)), kw.unit);
        r.left_second = is_identity_family(lhs);
    }
    {
        RightKan rv = sections(f, v);
        RightKan r2 = sections(f, pullback(f, rv.value));
        LocMorphism lhs = compose_loc(sections_mor(r2, rv, rv.counit), right_unit(r2, rv.value));
        r.right_first = is_identity_family(lhs);
    }
    {
        RightKan rw = sections(f, pullback(f, w));
        LocMorphism lhs = compose_loc(rw.counit, pullback_mor(f, right_unit(rw, w)));
        r.right_second = is_identity_family(lhs);
    }
    return r;
}

Ambidexterity ambidexterity_witness(const LocalSystem& v) {
    if (!v.base()->is_discrete())
        throw Unsupported("ambidexterity: base is not discrete; only finite discrete bases are supported");
    GroupoidFunctor p = to_terminal(v.base());
    LeftKan kl = pushforward(p, v);
    RightKan kr = sections(p, v);
    // Block (x, id) of the sum goes identically to block (x, id) of the product.
    Matrix canonical = Matrix::identity(kl.coord_dim[0]);
    Matrix w = kr.retraction[0] * canonical * kl.section[0];
    auto inv = inverse(w);
    if (!inv)
        throw ValidationError("ambidexterity: canonical map is not invertible");
    GroupoidFunctor id = GroupoidFunctor::identity(p.target());
    return {LocMorphism::from_matrices(kl.value, kr.value, id, {w}),
            LocMorphism::from_matrices(kr.value, kl.value, id, {*inv})};
}

FrobeniusWitnesses frobenius_witnesses(const GroupoidFunctor& f, const LocalSystem& v, const LocalSystem& w,
                                       const LocalSystem& r) {
    if (!same_groupoid(v.base(), f.target()) || !same_groupoid(w.base(), f.target()) ||
        !same_groupoid(r.base(), f.source()))
        throw ShapeError("frobenius: V and W must live over the target, R over the source");
    auto identity_between = [](const LocalSystem& a, const LocalSystem& b) {
        std::vector<Matrix> comps;
        for (const auto& fib : a.fibers())
            comps.push_back(Matrix::identity(fib.dim()));
        return LocMorphism::from_matrices(a, b, GroupoidFunctor::identity(a.base()), comps);
    };
    FrobeniusWitnesses out;
    out.monoidal = identity_between(pullback(f, tensor_loc(v, w)), tensor_loc(pullback(f, v), pullback(f, w)));
    out.closed = identity_between(pullback(f, internal_hom_loc(v, w)),
                                  internal_hom_loc(pullback(f, v), pullback(f, w)));
    out.unit = identity_between(pullback(f, unit_system(f.target())), unit_system(f.source()));

    LocalSystem fv = pullback(f, v);
    LocalSystem a = tensor_loc(r, fv);
    LeftKan ka = pushforward(f, a);
    LeftKan kr = pushforward(f, r);
    LocalSystem target = tensor_loc(kr.value, v);
    std::vector<Matrix> comps;
    for (std::size_t o = 0; o < f.source()->num_objects(); ++o)
        comps.push_back(kron(kr.unit.component(o).matrix(), Matrix::identity(fv.fiber(o).dim())));
    out.projection = adjunct(ka, LocMorphism::from_matrices(a, target, f, comps));
    return out;
}

LocMorphism beck_chevalley_product(const GroupoidFunctor& f, const Grpd& y, const LocalSystem& v) {
    if (!same_groupoid(v.base(), f.source()))
        throw ShapeError("beck_chevalley_product: system does not live over the source of f");
    Product p1 = product(f.source(), y);
    Product p2 = product(f.target(), y);
    GroupoidFunctor fxid = product_functor(f, GroupoidFunctor::identity(y), p1, p2);
    LocalSystem prv = pullback(p1.projections[0], v);
    LeftKan k1 = pushforward(fxid, prv);
    LeftKan kv = pushforward(f, v);
    LocalSystem target = pullback(p2.projections[0], kv.value);
    std::vector<Matrix> comps;
    for (std::size_t o = 0; o < p1.groupoid->num_objects(); ++o)
        comps.push_back(kv.unit.component(p1.projections[0].on_object(o)).matrix());
    return adjunct(k1, LocMorphism::from_matrices(prv, target, fxid, comps));
}

LocMorphism beck_chevalley_embedding(const GroupoidFunctor& f, const std::vector<std::size_t>& objects,
                                     const LocalSystem& v) {
    if (!same_groupoid(v.base(), f.source()))
        throw ShapeError("beck_chevalley_embedding: system does not live over the source of f");
    const FinGroupoid& y = *f.target();
    const FinGroupoid& x = *f.source();
    std::vector<bool> in_sub(y.num_objects(), false);
    for (auto o : objects) {
        if (o >= y.num_objects())
            throw ShapeError("beck_chevalley_embedding: object index out of range");
        in_sub[o] = true;
    }
    Components comps = connected_components(y);
    for (const auto& c : comps.members)
        for (auto o : c)
            if (in_sub[o] != in_sub[c.front()])
                throw Unsupported("beck_chevalley_embedding: the subgroupoid must be a union of connected components");
    Subgroupoid sy = full_subgroupoid(f.target(), objects);
    std::vector<std::size_t> xs;
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        if (in_sub[f.on_object(o)])
            xs.push_back(o);
    Subgroupoid sx = full_subgroupoid(f.source(), xs);
    // Corestriction f' : X' -> Y'.
    std::vector<std::size_t> local_obj(y.num_objects(), FinGroupoid::none), local_mor(y.num_morphisms(), FinGroupoid::none);
    for (std::size_t i = 0; i < sy.groupoid->num_objects(); ++i)
        local_obj[sy.inclusion.on_object(i)] = i;
    for (std::size_t i = 0; i < sy.groupoid->num_morphisms(); ++i)
        local_mor[sy.inclusion.on_morphism(i)] = i;
    std::vector<std::size_t> obj, mor;
    for (std::size_t i = 0; i < sx.groupoid->num_objects(); ++i)
        obj.push_back(local_obj[f.on_object(sx.inclusion.on_object(i))]);
    for (std::size_t i = 0; i < sx.groupoid->num_morphisms(); ++i)
        mor.push_back(local_mor[f.on_morphism(sx.inclusion.on_morphism(i))]);
    GroupoidFunctor fp(sx.groupoid, sy.groupoid, std::move(obj), std::move(mor));

    LocalSystem iv = pullback(sx.inclusion, v);
    LeftKan k1 = pushforward(fp, iv);
    LeftKan kv = pushforward(f, v);
    LocalSystem target = pullback(sy.inclusion, kv.value);
    std::vector<Matrix> unit;
    for (std::size_t i = 0; i < sx.groupoid->num_objects(); ++i)
        unit.push_back(kv.unit.component(sx.inclusion.on_object(i)).matrix());
    return adjunct(k1, LocMorphism::from_matrices(iv, target, fp, unit));
}

void validate_diagram(const BGDiagram& d) {
    validate_action(d.action);
    const FiniteGroup& g = d.action.group;
    if (!same_groupoid(d.system.base(), d.action.space))
        throw ShapeError("diagram: system does not live over the acted-on groupoid");
    if (d.beta.size() != g.order())
        throw ShapeError("diagram: need one morphism per group element");
    for (std::size_t a = 0; a < g.order(); ++a) {
        const LocMorphism& b = d.beta[a];
        if (b.domain() != d.system || b.codomain() != d.system || !(b.base_map() == d.action.act[a]))
            throw ShapeError("diagram: beta(" + g.name(a) + ") is not an endomorphism of the system over alpha(" +
                             g.name(a) + ")");
    }
    if (!(d.beta[g.identity()] == identity_loc(d.system)))
        throw ValidationError("diagram: beta(e) is not the identity");
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (!(compose_loc(d.beta[a], d.beta[b]) == d.beta[g.mul(a, b)]))
                throw ValidationError("diagram: beta(" + g.name(a) + ") o beta(" + g.name(b) + ") != beta(" +
                                      g.name(g.mul(a, b)) + ")");
}

LocColimit loc_colimit(const BGDiagram& d) {
    validate_diagram(d);
    LocColimit out;
    out.base = orbit_groupoid(d.action);
    const GroupoidFunctor& q = out.base.quotient;
    out.pushed = pushforward(q, d.system);
    const LeftKan& k = out.pushed;
    const FinGroupoid& x = *d.system.base();
    const FinGroupoid& y = *out.base.groupoid;
    for (std::size_t a = 0; a < d.action.group.order(); ++a) {
        std::vector<Matrix> comps;
        for (std::size_t o = 0; o < x.num_objects(); ++o)
            comps.push_back(k.unit.component(d.action.act[a].on_object(o)).matrix() * d.beta[a].component(o).matrix());
        out.pushed_action.push_back(adjunct(k, LocMorphism::from_matrices(d.system, k.value, q, comps)));
    }
    std::vector<VectorSpace> fibers;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        const std::size_t dim = k.value.fiber(t).dim();
        Matrix rel(dim, 0);
        for (const auto& b : out.pushed_action)
            rel = hstack(rel, b.component(t).matrix() - Matrix::identity(dim));
        LeftNullspace ln = left_nullspace(rel);
        std::vector<std::string> labels;
        for (auto p : ln.pivots)
            labels.push_back(k.value.fiber(t).label(p));
        fibers.emplace_back(std::move(labels));
        out.section.push_back(Matrix::selection(ln.pivots, dim));
        out.projection.push_back(std::move(ln.basis));
    }
    std::vector<Matrix> transport;
    for (std::size_t b = 0; b < y.num_morphisms(); ++b)
        transport.push_back(out.projection[y.dst(b)] * k.value.transport(b).matrix() * out.section[y.src(b)]);
    out.system = LocalSystem::from_matrices(out.base.groupoid, std::move(fibers), transport);
    std::vector<Matrix> cocone;
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        cocone.push_back(out.projection[q.on_object(o)] * k.unit.component(o).matrix());
    out.cocone = LocMorphism::from_matrices(d.system, out.system, q, cocone);
    return out;
}

LocMorphism induced_map(const LocColimit& colim, const BGDiagram& d, const LocMorphism& cocone) {
    if (cocone.domain() != d.system)
        throw ShapeError("induced_map: cocone does not start at the diagram's system");
    for (std::size_t a = 0; a < d.beta.size(); ++a)
        if (!(compose_loc(cocone, d.beta[a]) == cocone))
            throw ValidationError("induced_map: cocone is not invariant under beta(" + d.action.group.name(a) + ")");
    GroupoidFunctor ubar = factor_through(colim.base, cocone.base_map());
    const LocalSystem& w = cocone.codomain();
    LocalSystem uw = pullback(ubar, w);
    LocMorphism over_q = LocMorphism(d.system, uw, colim.base.quotient, cocone.components());
    LocMorphism a = adjunct(colim.pushed, over_q);
    std::vector<Matrix> comps;
    for (std::size_t t = 0; t < colim.base.groupoid->num_objects(); ++t) {
        for (const auto& b : colim.pushed_action)
            if (a.component(t).matrix() * b.component(t).matrix() != a.component(t).matrix())
                throw ValidationError("induced_map: adjunct does not factor through the coinvariants");
        comps.push_back(a.component(t).matrix() * colim.section[t]);
    }
    return LocMorphism::from_matrices(colim.system, w, ubar, comps);
}

QuasiColimitDiagram quasi_colimit_diagram(const FiniteGroup& g, const LocalSystem& rho) {
    EGroupoid eg = e_groupoid(g);
    if (!same_groupoid(eg.q.target(), rho.base()))
        throw ShapeError("quasi_colimit_diagram: representation does not live over BG");
    GroupoidAction act = canonical_action_on_e(g, eg);
    LocalSystem v = constant_system(eg.groupoid, rho.fiber(0));
    std::vector<LocMorphism> beta;
    for (std::size_t a = 0; a < g.order(); ++a)
        beta.push_back(LocMorphism::from_matrices(v, v, act.act[a],
                                                  std::vector<Matrix>(g.order(), rho.transport(a).matrix())));
    std::vector<Matrix> cocone;
    for (std::size_t h = 0; h < g.order(); ++h)
        cocone.push_back(rho.transport(h).matrix());
    LocMorphism c = LocMorphism::from_matrices(v, rho, eg.q, cocone);
    return {BGDiagram{std::move(act), std::move(v), std::move(beta)}, std::move(eg), std::move(c)};
}

} // namespace extlin
