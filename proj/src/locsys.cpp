#include "extlin/locsys.hpp"

#include "extlin/errors.hpp"
#include "extlin/faults.hpp"

#include <algorithm>

namespace extlin {

LocalSystem::LocalSystem(Grpd base, std::vector<VectorSpace> fibers, std::vector<LinearMap> transport)
    : base_(std::move(base)), fibers_(std::move(fibers)), transport_(std::move(transport)) {
    const FinGroupoid& x = *base_;
    if (fibers_.size() != x.num_objects())
        throw ShapeError("local system: " + std::to_string(fibers_.size()) + " fibers for " +
                         std::to_string(x.num_objects()) + " objects");
    if (transport_.size() != x.num_morphisms())
        throw ShapeError("local system: " + std::to_string(transport_.size()) + " transports for " +
                         std::to_string(x.num_morphisms()) + " morphisms");
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        const LinearMap& t = transport_[m];
        if (t.domain() != fibers_[x.src(m)] || t.codomain() != fibers_[x.dst(m)])
            throw ShapeError("local system: transport of '" + x.morphism_id(m) +
                             "' does not go between the fibers at its endpoints");
        if (x.is_identity(m) && !t.matrix().is_identity())
            throw ValidationError("functor law: transport of identity '" + x.morphism_id(m) +
                                  "' is not the identity");
    }
    for (std::size_t g = 0; g < x.num_morphisms(); ++g)
        for (std::size_t f = 0; f < x.num_morphisms(); ++f) {
            if (x.src(g) != x.dst(f) || x.is_identity(g) || x.is_identity(f))
                continue;
            if (transport_[x.compose(g, f)].matrix() != transport_[g].matrix() * transport_[f].matrix())
                throw ValidationError("functor law: transport('" + x.morphism_id(g) + "' o '" + x.morphism_id(f) +
                                      "') differs from the composite of the transports");
        }
}

LocalSystem LocalSystem::from_matrices(Grpd base, std::vector<VectorSpace> fibers, const std::vector<Matrix>& transport) {
    if (transport.size() != base->num_morphisms())
        throw ShapeError("local system: wrong number of transport matrices");
    if (fibers.size() != base->num_objects())
        throw ShapeError("local system: wrong number of fibers");
    std::vector<LinearMap> maps;
    maps.reserve(transport.size());
    for (std::size_t m = 0; m < transport.size(); ++m)
        maps.emplace_back(fibers[base->src(m)], fibers[base->dst(m)], transport[m]);
    return LocalSystem(std::move(base), std::move(fibers), std::move(maps));
}

std::size_t LocalSystem::total_dim() const {
    std::size_t n = 0;
    for (const auto& f : fibers_)
        n += f.dim();
    return n;
}

bool operator==(const LocalSystem& a, const LocalSystem& b) {
    return same_groupoid(a.base_, b.base_) && a.fibers_ == b.fibers_ && a.transport_ == b.transport_;
}

LocMorphism::LocMorphism(LocalSystem domain, LocalSystem codomain, GroupoidFunctor f, std::vector<LinearMap> components)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), f_(std::move(f)), components_(std::move(components)) {
    if (!same_groupoid(f_.source(), domain_.base()) || !same_groupoid(f_.target(), codomain_.base()))
        throw ShapeError("local system morphism: base map does not go between the bases");
    const FinGroupoid& x = *domain_.base();
    if (components_.size() != x.num_objects())
        throw ShapeError("local system morphism: wrong number of components");
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        if (components_[o].domain() != domain_.fiber(o) || components_[o].codomain() != codomain_.fiber(f_.on_object(o)))
            throw ShapeError("local system morphism: component at '" + x.object(o) +
                             "' does not go from V_x to W_f(x)");
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        if (x.is_identity(m))
            continue;
        const Matrix lhs = codomain_.transport(f_.on_morphism(m)).matrix() * components_[x.src(m)].matrix();
        const Matrix rhs = components_[x.dst(m)].matrix() * domain_.transport(m).matrix();
        if (lhs != rhs)
            throw ValidationError("naturality fails at morphism '" + x.morphism_id(m) + "'");
    }
}

LocMorphism LocMorphism::from_matrices(LocalSystem domain, LocalSystem codomain, GroupoidFunctor f,
                                       const std::vector<Matrix>& components) {
    if (components.size() != domain.base()->num_objects())
        throw ShapeError("local system morphism: wrong number of components");
    std::vector<LinearMap> maps;
    maps.reserve(components.size());
    for (std::size_t o = 0; o < components.size(); ++o)
        maps.emplace_back(domain.fiber(o), codomain.fiber(f.on_object(o)), components[o]);
    return LocMorphism(std::move(domain), std::move(codomain), std::move(f), std::move(maps));
}

bool operator==(const LocMorphism& a, const LocMorphism& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.f_ == b.f_ && a.components_ == b.components_;
}

LocalSystem constant_system(const Grpd& base, const VectorSpace& v) {
    std::vector<VectorSpace> fibers(base->num_objects(), v);
    std::vector<LinearMap> transport(base->num_morphisms(), identity(v));
    return LocalSystem(base, std::move(fibers), std::move(transport));
}

LocalSystem unit_system(const Grpd& base) { return constant_system(base, unit_space()); }

LocalSystem zero_system(const Grpd& base) { return constant_system(base, VectorSpace()); }

LocalSystem representation(const FiniteGroup& g, const VectorSpace& space, const std::vector<Matrix>& rho) {
    if (rho.size() != g.order())
        throw ShapeError("representation: need one matrix per group element");
    return LocalSystem::from_matrices(delooping(g), {space}, rho);
}

LocalSystem regular_representation(const FiniteGroup& g) {
    std::vector<Matrix> rho;
    for (std::size_t a = 0; a < g.order(); ++a) {
        std::vector<std::size_t> perm;
        for (std::size_t h = 0; h < g.order(); ++h)
            perm.push_back(g.mul(a, h));
        rho.push_back(Matrix::permutation(perm, g.order()));
    }
    return representation(g, free_space(g.names()), rho);
}

LocMorphism identity_loc(const LocalSystem& v) {
    std::vector<LinearMap> comps;
    for (const auto& f : v.fibers())
        comps.push_back(identity(f));
    return LocMorphism(v, v, GroupoidFunctor::identity(v.base()), std::move(comps));
}

LocMorphism compose_loc(const LocMorphism& psi, const LocMorphism& phi) {
    if (!same_groupoid(psi.domain().base(), phi.codomain().base()) || psi.domain() != phi.codomain())
        throw ShapeError("compose_loc: codomain of the first morphism is not the domain of the second");
    const GroupoidFunctor& f = phi.base_map();
    std::vector<LinearMap> comps;
    for (std::size_t o = 0; o < phi.domain().base()->num_objects(); ++o)
        comps.push_back(compose(psi.component(f.on_object(o)), phi.component(o)));
    return LocMorphism(phi.domain(), psi.codomain(), compose(psi.base_map(), f), std::move(comps));
}

bool is_iso(const LocMorphism& phi) {
    if (!is_isomorphism(phi.base_map()))
        return false;
    return std::all_of(phi.components().begin(), phi.components().end(),
                       [](const LinearMap& c) { return is_invertible(c); });
}

LocMorphism inverse_loc(const LocMorphism& phi) {
    if (!is_iso(phi))
        throw ValidationError("inverse_loc: morphism is not invertible");
    const GroupoidFunctor& f = phi.base_map();
    const FinGroupoid& x = *f.source();
    const FinGroupoid& y = *f.target();
    std::vector<std::size_t> obj(y.num_objects()), mor(y.num_morphisms());
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        obj[f.on_object(o)] = o;
    for (std::size_t m = 0; m < x.num_morphisms(); ++m)
        mor[f.on_morphism(m)] = m;
    GroupoidFunctor g(f.target(), f.source(), obj, mor);
    std::vector<LinearMap> comps;
    for (std::size_t o = 0; o < y.num_objects(); ++o)
        comps.push_back(inverse(phi.component(obj[o])));
    return LocMorphism(phi.codomain(), phi.domain(), std::move(g), std::move(comps));
}

LocalSystem pullback(const GroupoidFunctor& f, const LocalSystem& w) {
    if (!same_groupoid(f.target(), w.base()))
        throw ShapeError("pullback: functor does not land in the base of the system");
    const FinGroupoid& x = *f.source();
    std::vector<VectorSpace> fibers;
    std::vector<LinearMap> transport;
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        fibers.push_back(w.fiber(f.on_object(o)));
    for (std::size_t m = 0; m < x.num_morphisms(); ++m)
        transport.push_back(w.transport(f.on_morphism(m)));
    return LocalSystem(f.source(), std::move(fibers), std::move(transport));
}

LocMorphism pullback_mor(const GroupoidFunctor& f, const LocMorphism& alpha) {
    if (!(alpha.base_map() == GroupoidFunctor::identity(alpha.domain().base())))
        throw ShapeError("pullback_mor: morphism must lie over an identity");
    std::vector<LinearMap> comps;
    for (std::size_t o = 0; o < f.source()->num_objects(); ++o)
        comps.push_back(alpha.component(f.on_object(o)));
    return LocMorphism(pullback(f, alpha.domain()), pullback(f, alpha.codomain()), GroupoidFunctor::identity(f.source()),
                       std::move(comps));
}

LocMorphism cartesian_lift(const GroupoidFunctor& f, const LocalSystem& w) {
    LocalSystem fw = pullback(f, w);
    std::vector<LinearMap> comps;
    for (const auto& fib : fw.fibers())
        comps.push_back(identity(fib));
    return LocMorphism(fw, w, f, std::move(comps));
}

LocalSystem restrict_to(const LocalSystem& v, const std::vector<std::size_t>& objects) {
    return pullback(full_subgroupoid(v.base(), objects).inclusion, v);
}

CoproductLoc coproduct_loc(const std::vector<LocalSystem>& summands) {
    std::vector<Grpd> bases;
    for (const auto& s : summands)
        bases.push_back(s.base());
    CoproductLoc out;
    out.base = coproduct(bases);
    std::vector<VectorSpace> fibers;
    std::vector<LinearMap> transport;
    for (const auto& s : summands) {
        fibers.insert(fibers.end(), s.fibers().begin(), s.fibers().end());
        transport.insert(transport.end(), s.transports().begin(), s.transports().end());
    }
    out.system = LocalSystem(out.base.groupoid, std::move(fibers), std::move(transport));
    for (std::size_t k = 0; k < summands.size(); ++k) {
        std::vector<LinearMap> comps;
        for (const auto& fib : summands[k].fibers())
            comps.push_back(identity(fib));
        out.coprojections.emplace_back(summands[k], out.system, out.base.coprojections[k], std::move(comps));
    }
    return out;
}

CoproductLoc loc_colimit(const std::vector<LocalSystem>& discrete_diagram) { return coproduct_loc(discrete_diagram); }

ExternalTensor external_tensor(const LocalSystem& v, const LocalSystem& w) {
    ExternalTensor out;
    out.base = product(v.base(), w.base());
    const FinGroupoid& p = *out.base.groupoid;
    const auto& pr0 = out.base.projections[0];
    const auto& pr1 = out.base.projections[1];
    std::vector<VectorSpace> fibers;
    std::vector<LinearMap> transport;
    for (std::size_t o = 0; o < p.num_objects(); ++o)
        fibers.push_back(tensor_space(v.fiber(pr0.on_object(o)), w.fiber(pr1.on_object(o))));
    for (std::size_t m = 0; m < p.num_morphisms(); ++m)
        transport.push_back(tensor_map(v.transport(pr0.on_morphism(m)), w.transport(pr1.on_morphism(m))));
    if (faults::active() == faults::Fault::transpose_transport) {
        for (std::size_t m = 0; m < p.num_morphisms(); ++m) {
            const Matrix& t = transport[m].matrix();
            if (p.src(m) == p.dst(m) && t != t.transpose()) {
                transport[m] = LinearMap(transport[m].domain(), transport[m].codomain(), t.transpose());
                break;
            }
        }
    }
    out.system = LocalSystem(out.base.groupoid, std::move(fibers), std::move(transport));
    return out;
}

LocMorphism external_tensor_mor(const LocMorphism& phi, const LocMorphism& gamma) {
    ExternalTensor dom = external_tensor(phi.domain(), gamma.domain());
    ExternalTensor cod = external_tensor(phi.codomain(), gamma.codomain());
    GroupoidFunctor f = product_functor(phi.base_map(), gamma.base_map(), dom.base, cod.base);
    std::vector<LinearMap> comps;
    for (std::size_t o = 0; o < dom.base.groupoid->num_objects(); ++o)
        comps.push_back(tensor_map(phi.component(dom.base.projections[0].on_object(o)),
                                   gamma.component(dom.base.projections[1].on_object(o))));
    return LocMorphism(dom.system, cod.system, std::move(f), std::move(comps));
}

LocalSystem grpd_tensoring(const Grpd& x, const LocalSystem& w) {
    Product p = product(x, w.base());
    return pullback(p.projections[1], w);
}

namespace {

void require_same_base(const LocalSystem& v, const LocalSystem& w, const char* what) {
    if (!same_groupoid(v.base(), w.base()))
        throw ShapeError(std::string(what) + ": systems live over different bases");
}

} // namespace

LocalSystem tensor_loc(const LocalSystem& v, const LocalSystem& w) {
    require_same_base(v, w, "tensor_loc");
    std::vector<VectorSpace> fibers;
    std::vector<LinearMap> transport;
    for (std::size_t o = 0; o < v.base()->num_objects(); ++o)
        fibers.push_back(tensor_space(v.fiber(o), w.fiber(o)));
    for (std::size_t m = 0; m < v.base()->num_morphisms(); ++m)
        transport.push_back(tensor_map(v.transport(m), w.transport(m)));
    return LocalSystem(v.base(), std::move(fibers), std::move(transport));
}

LocalSystem internal_hom_loc(const LocalSystem& v, const LocalSystem& w) {
    require_same_base(v, w, "internal_hom_loc");
    const FinGroupoid& x = *v.base();
    std::vector<VectorSpace> fibers;
    std::vector<Matrix> transport;
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        fibers.push_back(internal_hom(v.fiber(o), w.fiber(o)));
    // A |-> W_m A V_m^-1 in row-major coordinates.
    for (std::size_t m = 0; m < x.num_morphisms(); ++m)
        transport.push_back(kron(w.transport(m).matrix(), v.transport(x.inverse(m)).matrix().transpose()));
    return LocalSystem::from_matrices(v.base(), std::move(fibers), transport);
}

ExternalHom external_hom(const LocalSystem& r, const LocalSystem& w) {
    if (!r.base()->is_discrete())
        throw Unsupported("external hom: the base of the first system must be discrete");
    ExternalHom out;
    out.base = exponential(w.base(), r.base());
    const FinGroupoid& zy = *out.base.groupoid;
    const std::size_t ny = r.base()->num_objects();
    std::vector<VectorSpace> fibers;
    std::vector<Matrix> transport;
    for (std::size_t o = 0; o < zy.num_objects(); ++o) {
        std::vector<VectorSpace> parts;
        for (std::size_t k = 0; k < ny; ++k)
            parts.push_back(internal_hom(r.fiber(k), w.fiber(out.base.projections[k].on_object(o))));
        fibers.push_back(direct_sum(parts).space);
    }
    for (std::size_t m = 0; m < zy.num_morphisms(); ++m) {
        std::vector<Matrix> blocks;
        for (std::size_t k = 0; k < ny; ++k)
            blocks.push_back(kron(w.transport(out.base.projections[k].on_morphism(m)).matrix(),
                                  Matrix::identity(r.fiber(k).dim())));
        transport.push_back(block_diagonal(blocks));
    }
    out.system = LocalSystem::from_matrices(out.base.groupoid, std::move(fibers), transport);
    return out;
}

namespace {

struct HomCoordinates {
    VectorSpace space;
    std::vector<std::size_t> offset;
};

HomCoordinates hom_coordinates(const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f) {
    std::vector<VectorSpace> parts;
    HomCoordinates out;
    std::size_t off = 0;
    for (std::size_t o = 0; o < v.base()->num_objects(); ++o) {
        parts.push_back(internal_hom(v.fiber(o), w.fiber(f.on_object(o))));
        out.offset.push_back(off);
        off += parts.back().dim();
    }
    out.space = direct_sum(parts).space;
    return out;
}

} // namespace

Kernel morphism_space(const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f) {
    if (!same_groupoid(f.source(), v.base()) || !same_groupoid(f.target(), w.base()))
        throw ShapeError("morphism_space: base map does not go between the bases");
    const FinGroupoid& x = *v.base();
    HomCoordinates coords = hom_coordinates(v, w, f);
    // W_{f m} phi_x - phi_x' V_m = 0 for m : x -> x'.
    Matrix constraints(0, coords.space.dim());
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        if (x.is_identity(m))
            continue;
        const std::size_t s = x.src(m), t = x.dst(m);
        const Matrix& wm = w.transport(f.on_morphism(m)).matrix();
        const Matrix& vm = v.transport(m).matrix();
        const std::size_t dwt = w.fiber(f.on_object(t)).dim();
        const std::size_t dvs = v.fiber(s).dim();
        Matrix rows(dwt * dvs, coords.space.dim());
        rows.add_block(0, coords.offset[s], kron(wm, Matrix::identity(dvs)));
        rows.add_block(0, coords.offset[t], -kron(Matrix::identity(dwt), vm.transpose()));
        constraints = vstack(constraints, rows);
    }
    VectorSpace rel = VectorSpace::standard(constraints.rows(), "r");
    return kernel(LinearMap(coords.space, rel, constraints), "n");
}

LocMorphism morphism_from_coordinates(const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f,
                                      const Matrix& column) {
    HomCoordinates coords = hom_coordinates(v, w, f);
    if (column.rows() != coords.space.dim() || column.cols() != 1)
        throw ShapeError("morphism_from_coordinates: coordinate vector has wrong shape");
    std::vector<LinearMap> comps;
    for (std::size_t o = 0; o < v.base()->num_objects(); ++o) {
        const VectorSpace& wf = w.fiber(f.on_object(o));
        comps.push_back(map_from_coordinates(v.fiber(o), wf, column.block(coords.offset[o], 0, v.fiber(o).dim() * wf.dim(), 1)));
    }
    return LocMorphism(v, w, f, std::move(comps));
}

SkeletalDecomposition skeletal_decomposition(const LocalSystem& v) {
    const Grpd& xp = v.base();
    const FinGroupoid& x = *xp;
    Skeleton sk = skeletize(xp);
    Components comps = connected_components(x);
    std::vector<LocalSystem> pieces;
    std::vector<Product> bases;
    for (std::size_t i = 0; i < comps.members.size(); ++i) {
        const std::size_t b = sk.basepoints[i];
        Subgroupoid aut = full_subgroupoid(xp, {b});
        LocalSystem rep = pullback(aut.inclusion, v);
        std::vector<std::string> names;
        for (auto o : comps.members[i])
            names.push_back(x.object(o));
        Product p = product(codiscrete(names), aut.groupoid);
        pieces.push_back(pullback(p.projections[1], rep));
        bases.push_back(std::move(p));
    }
    CoproductLoc cp = coproduct_loc(pieces);
    std::vector<GroupoidFunctor> legs;
    std::vector<LinearMap> components;
    for (std::size_t i = 0; i < comps.members.size(); ++i) {
        const auto& members = comps.members[i];
        const Product& p = bases[i];
        const FinGroupoid& pg = *p.groupoid;
        const GroupoidFunctor& pr_cd = p.projections[0];
        const GroupoidFunctor& pr_aut = p.projections[1];
        const std::size_t b = sk.basepoints[i];
        std::vector<std::size_t> obj, mor;
        for (std::size_t o = 0; o < pg.num_objects(); ++o)
            obj.push_back(members[pr_cd.on_object(o)]);
        for (std::size_t m = 0; m < pg.num_morphisms(); ++m) {
            const std::size_t from = members[pr_cd.source()->src(pr_cd.on_morphism(m))];
            const std::size_t to = members[pr_cd.source()->dst(pr_cd.on_morphism(m))];
            const std::size_t g = x.hom(b, b)[pr_aut.on_morphism(m)];
            mor.push_back(x.compose(sk.connecting[to], x.compose(g, x.inverse(sk.connecting[from]))));
        }
        legs.emplace_back(p.groupoid, xp, std::move(obj), std::move(mor));
        for (std::size_t o = 0; o < pg.num_objects(); ++o)
            components.push_back(v.transport(sk.connecting[members[pr_cd.on_object(o)]]));
    }
    GroupoidFunctor iso_base = comps.members.empty()
                                   ? GroupoidFunctor(cp.base.groupoid, xp, {}, {})
                                   : copair(cp.base, legs);
    return {cp.system, LocMorphism(cp.system, v, std::move(iso_base), std::move(components))};
}

QuotientIso quotient_iso(const FiniteGroup& g, const std::vector<std::size_t>& subgroup, const VectorSpace& v,
                         const std::vector<Matrix>& rho) {
    if (!g.is_subgroup(subgroup))
        throw ValidationError("quotient_iso: the given elements do not form a subgroup");
    if (rho.size() != subgroup.size())
        throw ShapeError("quotient_iso: need one matrix per subgroup element");
    const std::size_t n = g.order(), d = v.dim();
    std::vector<std::size_t> position(n, FinGroupoid::none);
    for (std::size_t k = 0; k < subgroup.size(); ++k)
        position[subgroup[k]] = k;
    for (std::size_t a = 0; a < subgroup.size(); ++a)
        for (std::size_t b = 0; b < subgroup.size(); ++b)
            if (rho[position[g.mul(subgroup[a], subgroup[b])]] != rho[a] * rho[b])
                throw ValidationError("quotient_iso: matrices do not form a representation of the subgroup");

    // Left cosets gH, each represented by its smallest element.
    std::vector<std::size_t> coset_of(n, FinGroupoid::none), section;
    for (std::size_t a = 0; a < n; ++a) {
        if (coset_of[a] != FinGroupoid::none)
            continue;
        for (auto h : subgroup)
            coset_of[g.mul(a, h)] = section.size();
        section.push_back(a);
    }
    std::vector<std::string> group_labels, coset_labels;
    for (std::size_t a = 0; a < n; ++a)
        group_labels.push_back(g.name(a));
    for (auto s : section)
        coset_labels.push_back(g.name(s) + "H");
    VectorSpace gv = set_tensoring(group_labels, v);

    // Relations e_{g h^-1} (x) rho(h) e_i - e_g (x) e_i.
    Matrix rel(n * d, subgroup.size() * n * d);
    std::size_t col = 0;
    for (std::size_t k = 0; k < subgroup.size(); ++k)
        for (std::size_t a = 0; a < n; ++a) {
            const std::size_t moved = g.mul(a, g.inverse(subgroup[k]));
            for (std::size_t i = 0; i < d; ++i, ++col) {
                for (std::size_t r = 0; r < d; ++r)
                    rel(moved * d + r, col) += rho[k](r, i);
                rel(a * d + i, col) -= Scalar(1);
            }
        }
    Cokernel coinv = cokernel(LinearMap(VectorSpace::standard(rel.cols(), "r"), gv, rel), "q");

    QuotientIso out;
    out.quotient = coinv.space;
    out.tensoring = set_tensoring(coset_labels, v);
    out.section = section;
    // (g, v) |-> ([g], (sigma[g]^-1 g) v)
    Matrix fwd(section.size() * d, n * d);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t c = coset_of[a];
        const std::size_t h = g.mul(g.inverse(section[c]), a);
        fwd.set_block(c * d, a * d, rho[position[h]]);
    }
    if (!(fwd * rel).is_zero())
        throw ValidationError("quotient_iso: forward map does not respect the relations");
    out.forward = LinearMap(out.quotient, out.tensoring, fwd * coinv.section.matrix());
    // ([g], v) |-> [sigma[g], v]
    Matrix bwd(n * d, section.size() * d);
    for (std::size_t c = 0; c < section.size(); ++c)
        bwd.set_block(section[c] * d, c * d, Matrix::identity(d));
    out.backward = LinearMap(out.tensoring, out.quotient, coinv.projection.matrix() * bwd);
    return out;
}

} // namespace extlin
