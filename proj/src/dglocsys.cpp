#include "extlin/dglocsys.hpp"

#include "extlin/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace extlin {

namespace {

bool is_identity_functor(const GroupoidFunctor& f) {
    if (!same_groupoid(f.source(), f.target()))
        return false;
    for (std::size_t x = 0; x < f.object_map().size(); ++x)
        if (f.on_object(x) != x)
            return false;
    for (std::size_t m = 0; m < f.morphism_map().size(); ++m)
        if (f.on_morphism(m) != m)
            return false;
    return true;
}

std::set<int> all_degrees(const DgLocalSystem& v) {
    std::set<int> out;
    for (const auto& c : v.fibers())
        for (int n : c.support())
            out.insert(n);
    return out;
}

std::vector<int> span_of(const std::set<int>& s) {
    std::vector<int> out;
    if (s.empty())
        return out;
    for (int n = *s.begin(); n <= *s.rbegin(); ++n)
        out.push_back(n);
    return out;
}

LocMorphism differential_slice(const DgLocalSystem& v, int n) {
    std::vector<LinearMap> comps;
    for (const auto& c : v.fibers())
        comps.push_back(c.differential(n));
    return LocMorphism(degree_slice(v, n), degree_slice(v, n - 1), GroupoidFunctor::identity(v.base()),
                       std::move(comps));
}

// A functor between discrete groupoids given on objects.
GroupoidFunctor discrete_functor(const Grpd& source, const Grpd& target, std::vector<std::size_t> objects) {
    std::vector<std::size_t> morphisms;
    for (std::size_t m = 0; m < source->num_morphisms(); ++m)
        morphisms.push_back(target->identity(objects.at(source->src(m))));
    return GroupoidFunctor(source, target, std::move(objects), std::move(morphisms));
}

// Object index of (a, b) in a binary product.
std::size_t pair_object(const Product& p, std::size_t a, std::size_t b) {
    for (std::size_t o = 0; o < p.groupoid->num_objects(); ++o)
        if (p.projections[0].on_object(o) == a && p.projections[1].on_object(o) == b)
            return o;
    throw ShapeError("product has no object over the given pair");
}

bool invertible_cc(const ChainMap& f) {
    for (int n : f.degrees())
        if (f.domain().dim(n) != f.codomain().dim(n) || !is_invertible(f.at(n)))
            return false;
    return true;
}

ChainMap concentrated_map(const LinearMap& f, int degree) {
    return ChainMap(concentrated(f.domain(), degree), concentrated(f.codomain(), degree), {{degree, f}});
}

ChainMap transport_inverse(const DgLocalSystem& v, std::size_t m) {
    return v.transport(v.base()->inverse(m));
}

// Functoriality checked through basepoints: T is a homomorphism on each basepoint group
// and T(m) = T(c_y) T(c_y^-1 m c_x) T(c_x)^-1 for connecting morphisms c. Together these
// are equivalent to T(g f) = T(g) T(f) for all composable pairs.
bool functorial_via_basepoints(const FinGroupoid& x, const std::vector<ChainMap>& t, const std::vector<int>& degrees) {
    const Components comps = connected_components(x);
    std::vector<std::size_t> connecting(x.num_objects());
    for (const auto& members : comps.members)
        for (std::size_t o : members)
            connecting[o] = x.hom(members.front(), o).front();
    for (int n : degrees) {
        std::vector<Matrix> m;
        for (const auto& map : t)
            m.push_back(map.at(n).matrix());
        for (const auto& members : comps.members) {
            const auto& group = x.hom(members.front(), members.front());
            for (std::size_t g : group)
                for (std::size_t f : group)
                    if (m[x.compose(g, f)] != m[g] * m[f])
                        return false;
        }
        std::vector<Matrix> inv;
        for (std::size_t o = 0; o < x.num_objects(); ++o) {
            const Matrix& c = m[connecting[o]];
            auto i = c.rows() == c.cols() ? inverse(c) : std::nullopt;
            if (!i)
                return false;
            inv.push_back(std::move(*i));
        }
        for (std::size_t k = 0; k < x.num_morphisms(); ++k) {
            const std::size_t cx = connecting[x.src(k)], cy = connecting[x.dst(k)];
            const std::size_t a = x.compose(x.inverse(cy), x.compose(k, cx));
            if (m[k] != m[cy] * m[a] * inv[x.src(k)])
                return false;
        }
    }
    return true;
}

} // namespace

DgLocalSystem::DgLocalSystem(Grpd base, std::vector<ChainComplex> fibers, std::vector<ChainMap> transport)
    : base_(std::move(base)), fibers_(std::move(fibers)), transport_(std::move(transport)) {
    const FinGroupoid& x = *base_;
    if (fibers_.size() != x.num_objects())
        throw ShapeError("dg local system: " + std::to_string(fibers_.size()) + " fibers for " +
                         std::to_string(x.num_objects()) + " objects");
    if (transport_.size() != x.num_morphisms())
        throw ShapeError("dg local system: " + std::to_string(transport_.size()) + " transports for " +
                         std::to_string(x.num_morphisms()) + " morphisms");
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        const ChainMap& t = transport_[m];
        if (t.domain() != fibers_[x.src(m)] || t.codomain() != fibers_[x.dst(m)])
            throw ShapeError("dg local system: transport of '" + x.morphism_id(m) +
                             "' does not go between the fibers at its endpoints");
        if (x.is_identity(m) && t != identity_cc(fibers_[x.src(m)]))
            throw ValidationError("functor law: transport of identity '" + x.morphism_id(m) +
                                  "' is not the identity");
    }
    if (functorial_via_basepoints(x, transport_, degrees()))
        return;
    for (std::size_t g = 0; g < x.num_morphisms(); ++g)
        for (std::size_t f = 0; f < x.num_morphisms(); ++f) {
            if (x.src(g) != x.dst(f) || x.is_identity(g) || x.is_identity(f))
                continue;
            if (transport_[x.compose(g, f)] != compose_cc(transport_[g], transport_[f]))
                throw ValidationError("functor law: transport('" + x.morphism_id(g) + "' o '" + x.morphism_id(f) +
                                      "') differs from the composite of the transports");
        }
    throw ValidationError("functor law: transports along connecting morphisms are not invertible");
}

std::vector<int> DgLocalSystem::degrees() const { return span_of(all_degrees(*this)); }

bool operator==(const DgLocalSystem& a, const DgLocalSystem& b) {
    return same_groupoid(a.base_, b.base_) && a.fibers_ == b.fibers_ && a.transport_ == b.transport_;
}

DgLocMorphism::DgLocMorphism(DgLocalSystem domain, DgLocalSystem codomain, GroupoidFunctor f,
                             std::vector<ChainMap> components)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), f_(std::move(f)), components_(std::move(components)) {
    if (!same_groupoid(f_.source(), domain_.base()) || !same_groupoid(f_.target(), codomain_.base()))
        throw ShapeError("dg local system morphism: base map does not go between the bases");
    const FinGroupoid& x = *domain_.base();
    if (components_.size() != x.num_objects())
        throw ShapeError("dg local system morphism: wrong number of components");
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        if (components_[o].domain() != domain_.fiber(o) ||
            components_[o].codomain() != codomain_.fiber(f_.on_object(o)))
            throw ShapeError("dg local system morphism: component at '" + x.object(o) +
                             "' does not go from V_x to W_f(x)");
    std::set<int> degrees;
    for (const auto& c : components_)
        for (int n : c.degrees())
            degrees.insert(n);
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        if (x.is_identity(m))
            continue;
        const ChainMap& w = codomain_.transport(f_.on_morphism(m));
        const ChainMap& v = domain_.transport(m);
        for (int n : degrees)
            if (w.at(n).matrix() * components_[x.src(m)].at(n).matrix() !=
                components_[x.dst(m)].at(n).matrix() * v.at(n).matrix())
                throw ValidationError("naturality fails at morphism '" + x.morphism_id(m) + "' in degree " +
                                      std::to_string(n));
    }
}

bool operator==(const DgLocMorphism& a, const DgLocMorphism& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.f_ == b.f_ && a.components_ == b.components_;
}

DgLocalSystem constant_dg(const Grpd& x, const ChainComplex& c) {
    std::vector<ChainMap> transport(x->num_morphisms(), identity_cc(c));
    return DgLocalSystem(x, std::vector<ChainComplex>(x->num_objects(), c), std::move(transport));
}

DgLocalSystem concentrated_dg(const LocalSystem& v, int degree) {
    std::vector<ChainComplex> fibers;
    for (const auto& f : v.fibers())
        fibers.push_back(concentrated(f, degree));
    std::vector<ChainMap> transport;
    for (const auto& t : v.transports())
        transport.push_back(concentrated_map(t, degree));
    return DgLocalSystem(v.base(), std::move(fibers), std::move(transport));
}

DgLocalSystem tensor_with(const LocalSystem& l, const ChainComplex& c) {
    std::vector<ChainComplex> fibers;
    for (const auto& f : l.fibers())
        fibers.push_back(tensor_cc(concentrated(f, 0), c));
    std::vector<ChainMap> transport;
    for (const auto& t : l.transports())
        transport.push_back(tensor_ccmap(concentrated_map(t, 0), identity_cc(c)));
    return DgLocalSystem(l.base(), std::move(fibers), std::move(transport));
}

DgLocMorphism tensor_with_mor(const LocMorphism& alpha, const ChainMap& q) {
    std::vector<ChainMap> comps;
    for (const auto& a : alpha.components())
        comps.push_back(tensor_ccmap(concentrated_map(a, 0), q));
    return DgLocMorphism(tensor_with(alpha.domain(), q.domain()), tensor_with(alpha.codomain(), q.codomain()),
                         alpha.base_map(), std::move(comps));
}

DgLocMorphism identity_dg(const DgLocalSystem& v) {
    std::vector<ChainMap> comps;
    for (const auto& c : v.fibers())
        comps.push_back(identity_cc(c));
    return DgLocMorphism(v, v, GroupoidFunctor::identity(v.base()), std::move(comps));
}

DgLocMorphism compose_dg(const DgLocMorphism& g, const DgLocMorphism& f) {
    if (f.codomain() != g.domain())
        throw ShapeError("compose: codomain of the first morphism is not the domain of the second");
    std::vector<ChainMap> comps;
    for (std::size_t x = 0; x < f.components().size(); ++x)
        comps.push_back(compose_cc(g.component(f.base_map().on_object(x)), f.component(x)));
    return DgLocMorphism(f.domain(), g.codomain(), compose(g.base_map(), f.base_map()), std::move(comps));
}

DgLocalSystem pullback_dg(const GroupoidFunctor& f, const DgLocalSystem& v) {
    if (!same_groupoid(f.target(), v.base()))
        throw ShapeError("pullback: functor does not land in the base of the system");
    std::vector<ChainComplex> fibers;
    for (std::size_t x = 0; x < f.source()->num_objects(); ++x)
        fibers.push_back(v.fiber(f.on_object(x)));
    std::vector<ChainMap> transport;
    for (std::size_t m = 0; m < f.source()->num_morphisms(); ++m)
        transport.push_back(v.transport(f.on_morphism(m)));
    return DgLocalSystem(f.source(), std::move(fibers), std::move(transport));
}

DgLocMorphism pullback_dg_mor(const GroupoidFunctor& u, const DgLocMorphism& phi) {
    if (!is_identity_functor(phi.base_map()))
        throw ShapeError("pullback of a morphism: expected a morphism over an identity");
    std::vector<ChainMap> comps;
    for (std::size_t x = 0; x < u.source()->num_objects(); ++x)
        comps.push_back(phi.component(u.on_object(x)));
    return DgLocMorphism(pullback_dg(u, phi.domain()), pullback_dg(u, phi.codomain()), GroupoidFunctor::identity(u.source()),
                         std::move(comps));
}

LocalSystem degree_slice(const DgLocalSystem& v, int n) {
    std::vector<VectorSpace> fibers;
    for (const auto& c : v.fibers())
        fibers.push_back(c.component(n));
    std::vector<LinearMap> transport;
    for (const auto& t : v.transports())
        transport.push_back(t.at(n));
    return LocalSystem(v.base(), std::move(fibers), std::move(transport));
}

LocMorphism degree_slice(const DgLocMorphism& phi, int n) {
    std::vector<LinearMap> comps;
    for (const auto& c : phi.components())
        comps.push_back(c.at(n));
    return LocMorphism(degree_slice(phi.domain(), n), degree_slice(phi.codomain(), n), phi.base_map(), std::move(comps));
}

DgLeftKan pushforward_dg(const GroupoidFunctor& f, const DgLocalSystem& v) {
    if (!same_groupoid(f.source(), v.base()))
        throw ShapeError("pushforward: system does not live over the source of the functor");
    DgLeftKan out;
    out.f = f;
    out.source = v;
    const std::vector<int> degrees = v.degrees();
    for (int n : degrees)
        out.slices.emplace(n, pushforward(f, degree_slice(v, n)));
    std::map<int, LocMorphism> diffs;
    for (int n : degrees)
        if (out.slices.count(n - 1))
            diffs.emplace(n, pushforward_mor(out.slices.at(n), out.slices.at(n - 1), differential_slice(v, n)));
    const FinGroupoid& y = *f.target();
    std::vector<ChainComplex> fibers;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        std::map<int, VectorSpace> comps;
        std::map<int, LinearMap> ds;
        for (const auto& [n, k] : out.slices)
            comps.emplace(n, k.value.fiber(t));
        for (const auto& [n, d] : diffs)
            ds.emplace(n, d.component(t));
        fibers.emplace_back(std::move(comps), std::move(ds));
    }
    std::vector<ChainMap> transport;
    for (std::size_t m = 0; m < y.num_morphisms(); ++m) {
        std::map<int, LinearMap> maps;
        for (const auto& [n, k] : out.slices)
            maps.emplace(n, k.value.transport(m));
        transport.emplace_back(fibers[y.src(m)], fibers[y.dst(m)], std::move(maps));
    }
    out.value = DgLocalSystem(f.target(), std::move(fibers), std::move(transport));
    std::vector<ChainMap> unit;
    for (std::size_t x = 0; x < v.base()->num_objects(); ++x) {
        std::map<int, LinearMap> maps;
        for (const auto& [n, k] : out.slices)
            maps.emplace(n, k.unit.component(x));
        unit.emplace_back(v.fiber(x), out.value.fiber(f.on_object(x)), std::move(maps));
    }
    out.unit = DgLocMorphism(v, out.value, f, std::move(unit));
    return out;
}

DgLocMorphism adjunct_dg(const DgLeftKan& k, const DgLocMorphism& phi) {
    if (!(phi.base_map() == k.f) || phi.domain() != k.source)
        throw ShapeError("adjunct: morphism does not match the extension (different base map or domain)");
    std::map<int, LocMorphism> slices;
    for (const auto& [n, kn] : k.slices)
        slices.emplace(n, adjunct(kn, degree_slice(phi, n)));
    const DgLocalSystem& w = phi.codomain();
    std::vector<ChainMap> comps;
    for (std::size_t t = 0; t < k.f.target()->num_objects(); ++t) {
        std::map<int, LinearMap> maps;
        for (const auto& [n, s] : slices)
            maps.emplace(n, s.component(t));
        comps.emplace_back(k.value.fiber(t), w.fiber(t), std::move(maps));
    }
    return DgLocMorphism(k.value, w, GroupoidFunctor::identity(k.f.target()), std::move(comps));
}

DgLocMorphism adjunct_dg(const DgLocMorphism& phi) {
    return adjunct_dg(pushforward_dg(phi.base_map(), phi.domain()), phi);
}

ExternalTensorDg external_tensor_dg(const DgLocalSystem& v, const DgLocalSystem& w) {
    ExternalTensorDg out;
    out.base = product(v.base(), w.base());
    const FinGroupoid& p = *out.base.groupoid;
    const auto& pr0 = out.base.projections[0];
    const auto& pr1 = out.base.projections[1];
    std::vector<ChainComplex> fibers;
    std::vector<ChainMap> transport;
    for (std::size_t o = 0; o < p.num_objects(); ++o)
        fibers.push_back(tensor_cc(v.fiber(pr0.on_object(o)), w.fiber(pr1.on_object(o))));
    for (std::size_t m = 0; m < p.num_morphisms(); ++m)
        transport.push_back(tensor_ccmap(v.transport(pr0.on_morphism(m)), w.transport(pr1.on_morphism(m))));
    out.system = DgLocalSystem(out.base.groupoid, std::move(fibers), std::move(transport));
    return out;
}

DgLocMorphism external_tensor_dg_mor(const DgLocMorphism& phi, const DgLocMorphism& gamma) {
    ExternalTensorDg dom = external_tensor_dg(phi.domain(), gamma.domain());
    ExternalTensorDg cod = external_tensor_dg(phi.codomain(), gamma.codomain());
    GroupoidFunctor f = product_functor(phi.base_map(), gamma.base_map(), dom.base, cod.base);
    std::vector<ChainMap> comps;
    for (std::size_t o = 0; o < dom.base.groupoid->num_objects(); ++o)
        comps.push_back(tensor_ccmap(phi.component(dom.base.projections[0].on_object(o)),
                                     gamma.component(dom.base.projections[1].on_object(o))));
    return DgLocMorphism(dom.system, cod.system, std::move(f), std::move(comps));
}

PushoutDg pushout_dg(const DgLocMorphism& alpha, const DgLocMorphism& beta) {
    if (!is_identity_functor(alpha.base_map()) || !is_identity_functor(beta.base_map()) ||
        alpha.domain() != beta.domain())
        throw ShapeError("pushout: expected two morphisms over the identity out of a common system");
    PushoutDg out;
    const Grpd& x = alpha.domain().base();
    for (std::size_t o = 0; o < x->num_objects(); ++o)
        out.fibers.push_back(pushout_cc(alpha.component(o), beta.component(o)));
    const DgLocalSystem& b = alpha.codomain();
    const DgLocalSystem& c = beta.codomain();
    std::vector<ChainComplex> fibers;
    for (const auto& p : out.fibers)
        fibers.push_back(p.object);
    std::vector<ChainMap> transport;
    for (std::size_t m = 0; m < x->num_morphisms(); ++m) {
        const PushoutCC& from = out.fibers[x->src(m)];
        const PushoutCC& to = out.fibers[x->dst(m)];
        transport.push_back(
            pushout_induced(from, compose_cc(to.from_b, b.transport(m)), compose_cc(to.from_c, c.transport(m))));
    }
    out.object = DgLocalSystem(x, std::move(fibers), std::move(transport));
    std::vector<ChainMap> fb, fc;
    for (const auto& p : out.fibers) {
        fb.push_back(p.from_b);
        fc.push_back(p.from_c);
    }
    const GroupoidFunctor id = GroupoidFunctor::identity(x);
    out.from_b = DgLocMorphism(b, out.object, id, std::move(fb));
    out.from_c = DgLocMorphism(c, out.object, id, std::move(fc));
    return out;
}

DgLocMorphism pushout_induced_dg(const PushoutDg& p, const DgLocMorphism& u, const DgLocMorphism& v) {
    if (!(u.base_map() == v.base_map()) || u.domain() != p.from_b.domain() || v.domain() != p.from_c.domain())
        throw ShapeError("pushout_induced: legs do not fit the pushout");
    std::vector<ChainMap> comps;
    for (std::size_t o = 0; o < p.fibers.size(); ++o)
        comps.push_back(pushout_induced(p.fibers[o], u.component(o), v.component(o)));
    return DgLocMorphism(p.object, u.codomain(), u.base_map(), std::move(comps));
}

bool is_weak_equivalence(const DgLocMorphism& phi) {
    return is_equivalence(phi.base_map()) && std::all_of(phi.components().begin(), phi.components().end(),
                                                         [](const ChainMap& c) { return is_quasi_iso(c); });
}

Classification classify(const DgLocMorphism& phi) {
    Classification out;
    const GroupoidFunctor& f = phi.base_map();
    out.weq = is_weak_equivalence(phi);
    out.fib = is_isofibration(f) && std::all_of(phi.components().begin(), phi.components().end(),
                                                [](const ChainMap& c) { return is_fibration_cc(c); });
    if (is_cofibration(f)) {
        const DgLocMorphism adj = adjunct_dg(phi);
        out.cof = std::all_of(adj.components().begin(), adj.components().end(),
                              [](const ChainMap& c) { return is_cofibration_cc(c); });
    }
    return out;
}

bool check_homotopical(const DgLocMorphism& phi, const DgLocMorphism& gamma) {
    if (!is_weak_equivalence(phi) || !is_weak_equivalence(gamma))
        throw ValidationError("check_homotopical: both inputs must be weak equivalences");
    return is_weak_equivalence(external_tensor_dg_mor(phi, gamma));
}

BasePushoutProduct base_pushout_product(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    BasePushoutProduct out;
    out.corner = product(f.source(), g.source());
    out.left = product(f.target(), g.source());
    out.right = product(f.source(), g.target());
    out.target = product(f.target(), g.target());
    const GroupoidFunctor id_x = GroupoidFunctor::identity(f.source());
    const GroupoidFunctor id_xp = GroupoidFunctor::identity(f.target());
    const GroupoidFunctor id_y = GroupoidFunctor::identity(g.source());
    const GroupoidFunctor id_yp = GroupoidFunctor::identity(g.target());
    if (is_identity_functor(g)) {
        out.groupoid = out.left.groupoid;
        out.from_left = GroupoidFunctor::identity(out.groupoid);
        out.from_right = product_functor(f, id_y, out.right, out.left);
        out.comparison = product_functor(id_xp, g, out.left, out.target);
        return out;
    }
    if (is_identity_functor(f)) {
        out.groupoid = out.right.groupoid;
        out.from_left = product_functor(id_x, g, out.left, out.right);
        out.from_right = GroupoidFunctor::identity(out.groupoid);
        out.comparison = product_functor(f, id_yp, out.right, out.target);
        return out;
    }
    if (!f.source()->is_discrete() || !f.target()->is_discrete() || !g.source()->is_discrete() ||
        !g.target()->is_discrete())
        throw Unsupported("external pushout-product: the base pushout is computed only when one base map is an "
                          "identity or all bases are discrete");
    const std::size_t nl = out.left.groupoid->num_objects();
    const std::size_t nr = out.right.groupoid->num_objects();
    std::vector<std::size_t> parent(nl + nr);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t o = 0; o < out.corner.groupoid->num_objects(); ++o) {
        const std::size_t x = out.corner.projections[0].on_object(o);
        const std::size_t y = out.corner.projections[1].on_object(o);
        const std::size_t l = pair_object(out.left, f.on_object(x), y);
        const std::size_t r = nl + pair_object(out.right, x, g.on_object(y));
        const std::size_t a = find(l), b = find(r);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> class_of(nl + nr);
    std::vector<std::string> names;
    std::vector<std::size_t> comparison;
    std::map<std::size_t, std::size_t> index;
    for (std::size_t e = 0; e < nl + nr; ++e) {
        const std::size_t root = find(e);
        auto [it, fresh] = index.emplace(root, names.size());
        class_of[e] = it->second;
        if (!fresh)
            continue;
        std::size_t t;
        if (e < nl)
            t = pair_object(out.target, out.left.projections[0].on_object(e),
                            g.on_object(out.left.projections[1].on_object(e)));
        else
            t = pair_object(out.target, f.on_object(out.right.projections[0].on_object(e - nl)),
                            out.right.projections[1].on_object(e - nl));
        names.push_back(e < nl ? "L" + out.left.groupoid->object(e) : "R" + out.right.groupoid->object(e - nl));
        comparison.push_back(t);
    }
    out.groupoid = discrete(names);
    out.from_left = discrete_functor(out.left.groupoid, out.groupoid,
                                     std::vector<std::size_t>(class_of.begin(), class_of.begin() + static_cast<long>(nl)));
    out.from_right = discrete_functor(out.right.groupoid, out.groupoid,
                                      std::vector<std::size_t>(class_of.begin() + static_cast<long>(nl), class_of.end()));
    out.comparison = discrete_functor(out.groupoid, out.target.groupoid, std::move(comparison));
    return out;
}

ExternalPushoutProduct external_pushout_product(const DgLocMorphism& phi, const DgLocMorphism& gamma) {
    const GroupoidFunctor& f = phi.base_map();
    const GroupoidFunctor& g = gamma.base_map();
    ExternalPushoutProduct out;
    out.base = base_pushout_product(f, g);
    const BasePushoutProduct& b = out.base;
    const GroupoidFunctor id_y = GroupoidFunctor::identity(g.source());
    const GroupoidFunctor to_left = product_functor(f, id_y, b.corner, b.left);
    const GroupoidFunctor q0 = compose(b.from_left, to_left);

    const DgLocMorphism phi_w = external_tensor_dg_mor(phi, identity_dg(gamma.domain()));
    const DgLocMorphism v_gamma = external_tensor_dg_mor(identity_dg(phi.domain()), gamma);
    const DgLocMorphism vp_gamma = external_tensor_dg_mor(identity_dg(phi.codomain()), gamma);
    const DgLocMorphism phi_wp = external_tensor_dg_mor(phi, identity_dg(gamma.codomain()));

    const DgLeftKan ka = pushforward_dg(q0, phi_w.domain());
    const DgLeftKan kb = pushforward_dg(b.from_left, phi_w.codomain());
    const DgLeftKan kc = pushforward_dg(b.from_right, v_gamma.codomain());
    const DgLocMorphism alpha = adjunct_dg(ka, compose_dg(kb.unit, phi_w));
    const DgLocMorphism beta = adjunct_dg(ka, compose_dg(kc.unit, v_gamma));
    const PushoutDg d = pushout_dg(alpha, beta);

    // Legs into c* (V' [x] W') over the identity of P; their components are those of the result.
    const DgLocalSystem& target = vp_gamma.codomain();
    const DgLocalSystem pulled = pullback_dg(b.comparison, target);
    auto into_pulled = [&](const DgLocMorphism& m, const GroupoidFunctor& q) {
        return DgLocMorphism(m.domain(), pulled, q, m.components());
    };
    const DgLocMorphism u = adjunct_dg(kb, into_pulled(vp_gamma, b.from_left));
    const DgLocMorphism v = adjunct_dg(kc, into_pulled(phi_wp, b.from_right));
    const DgLocMorphism over_id = pushout_induced_dg(d, u, v);
    out.result = DgLocMorphism(d.object, target, b.comparison, over_id.components());

    const DgLocMorphism adj = adjunct_dg(out.result);
    const DgLocMorphism phit = adjunct_dg(phi);
    const DgLocMorphism gammat = adjunct_dg(gamma);
    for (std::size_t t = 0; t < b.target.groupoid->num_objects(); ++t) {
        const ChainMap pp = pushout_product_cc(phit.component(b.target.projections[0].on_object(t)),
                                               gammat.component(b.target.projections[1].on_object(t)));
        const ChainMap& a = adj.component(t);
        bool ok = pp.codomain() == a.codomain();
        if (ok) {
            auto theta = solve_lifting(zero_cc(zero_complex(), a.domain()), pp, zero_cc(zero_complex(), pp.domain()), a);
            ok = theta && invertible_cc(*theta);
        }
        out.matches_formula.push_back(ok);
    }
    return out;
}

std::vector<DgLocMorphism> covered_generating_cofibrations(int n) {
    const Grpd pt = terminal();
    const Grpd two = discrete({"0", "1"});
    const Grpd pair = codiscrete({"0", "1"});
    const GroupoidFunctor cover = discrete_functor(two, pair, {0, 1});
    const Generators gen = generators(n);
    std::vector<DgLocMorphism> out;
    out.emplace_back(constant_dg(empty_groupoid(), zero_complex()), constant_dg(pt, zero_complex()),
                     GroupoidFunctor(empty_groupoid(), pt, {}, {}), std::vector<ChainMap>{});
    out.emplace_back(constant_dg(two, zero_complex()), constant_dg(pair, zero_complex()), cover,
                     std::vector<ChainMap>(2, identity_cc(zero_complex())));
    const DgLocalSystem dom(two, {gen.sphere, zero_complex()}, {identity_cc(gen.sphere), identity_cc(zero_complex())});
    out.emplace_back(dom, constant_dg(pair, gen.disk), cover, std::vector<ChainMap>{gen.i, gen.j});
    return out;
}

std::vector<DgLocMorphism> covered_generating_acyclic_cofibrations(int n) {
    const Grpd pt = terminal();
    const Grpd pair = codiscrete({"0", "1"});
    const GroupoidFunctor incl = point_at(pair, 0);
    const Generators gen = generators(n);
    std::vector<DgLocMorphism> out;
    out.emplace_back(constant_dg(pt, zero_complex()), constant_dg(pair, zero_complex()), incl,
                     std::vector<ChainMap>{identity_cc(zero_complex())});
    out.emplace_back(constant_dg(pt, zero_complex()), constant_dg(pair, gen.disk), incl, std::vector<ChainMap>{gen.j});
    return out;
}

namespace {

// Every functor h : B -> E with h o i = a and p o h = b, by backtracking over morphism images.
std::vector<GroupoidFunctor> base_lifts(const GroupoidFunctor& i, const GroupoidFunctor& p, const GroupoidFunctor& a,
                                        const GroupoidFunctor& b) {
    const FinGroupoid& bx = *i.target();
    const FinGroupoid& ex = *p.source();
    const std::size_t none = FinGroupoid::none;
    std::vector<std::size_t> forced_obj(bx.num_objects(), none), forced_mor(bx.num_morphisms(), none);
    for (std::size_t s = 0; s < i.source()->num_objects(); ++s) {
        std::size_t& slot = forced_obj[i.on_object(s)];
        if (slot != none && slot != a.on_object(s))
            return {};
        slot = a.on_object(s);
    }
    for (std::size_t s = 0; s < i.source()->num_morphisms(); ++s) {
        std::size_t& slot = forced_mor[i.on_morphism(s)];
        if (slot != none && slot != a.on_morphism(s))
            return {};
        slot = a.on_morphism(s);
    }
    std::vector<GroupoidFunctor> out;
    std::vector<std::size_t> obj(bx.num_objects()), mor(bx.num_morphisms());
    auto assign_morphisms = [&](auto&& self, std::size_t m) -> void {
        if (m == bx.num_morphisms()) {
            try {
                out.emplace_back(i.target(), p.source(), obj, mor);
            } catch (const ValidationError&) {
            }
            return;
        }
        const std::size_t s = obj[bx.src(m)], t = obj[bx.dst(m)];
        if (bx.is_identity(m)) {
            mor[m] = ex.identity(s);
            if (forced_mor[m] == none || forced_mor[m] == mor[m])
                self(self, m + 1);
            return;
        }
        for (std::size_t e : ex.hom(s, t)) {
            if (p.on_morphism(e) != b.on_morphism(m) || (forced_mor[m] != none && forced_mor[m] != e))
                continue;
            mor[m] = e;
            self(self, m + 1);
        }
    };
    auto assign_objects = [&](auto&& self, std::size_t o) -> void {
        if (o == bx.num_objects()) {
            assign_morphisms(assign_morphisms, 0);
            return;
        }
        for (std::size_t e = 0; e < ex.num_objects(); ++e) {
            if (p.on_object(e) != b.on_object(o) || (forced_obj[o] != none && forced_obj[o] != e))
                continue;
            obj[o] = e;
            self(self, o + 1);
        }
    };
    assign_objects(assign_objects, 0);
    return out;
}

} // namespace

std::optional<DgLocMorphism> lift_covered(const DgLocMorphism& i, const DgLocMorphism& p, const DgLocMorphism& u,
                                          const DgLocMorphism& v) {
    if (compose_dg(p, u) != compose_dg(v, i))
        throw ValidationError("lifting square does not commute");
    const DgLocalSystem& bsys = i.codomain();
    const DgLocalSystem& esys = p.domain();
    const FinGroupoid& bx = *bsys.base();
    for (std::size_t m = 0; m < bx.num_morphisms(); ++m)
        if (!bx.is_identity(m) && bx.src(m) == bx.dst(m))
            throw Unsupported("lift_covered: the codomain base has nontrivial automorphisms");
    const Components comps = connected_components(bx);
    for (const GroupoidFunctor& h : base_lifts(i.base_map(), p.base_map(), u.base_map(), v.base_map())) {
        std::vector<ChainMap> fiber(bx.num_objects());
        bool solved = true;
        for (const auto& members : comps.members) {
            const std::size_t y0 = members.front();
            auto connecting = [&](std::size_t y) { return bx.hom(y0, y).front(); };
            // Transport every constraint from the domain back to the basepoint y0.
            std::vector<ChainMap> i_legs, u_legs;
            std::vector<ChainComplex> sources;
            for (std::size_t s = 0; s < i.domain().base()->num_objects(); ++s) {
                const std::size_t y = i.base_map().on_object(s);
                if (comps.of_object[y] != comps.of_object[y0])
                    continue;
                const std::size_t c = connecting(y);
                sources.push_back(i.domain().fiber(s));
                i_legs.push_back(compose_cc(transport_inverse(bsys, c), i.component(s)));
                u_legs.push_back(compose_cc(transport_inverse(esys, h.on_morphism(c)), u.component(s)));
            }
            const DirectSumCC sum = direct_sum_cc(sources);
            ChainMap i0 = zero_cc(sum.complex, bsys.fiber(y0));
            ChainMap u0 = zero_cc(sum.complex, esys.fiber(h.on_object(y0)));
            for (std::size_t k = 0; k < sources.size(); ++k) {
                i0 = add_cc(i0, compose_cc(i_legs[k], sum.projections[k]));
                u0 = add_cc(u0, compose_cc(u_legs[k], sum.projections[k]));
            }
            auto lift = solve_lifting(i0, p.component(h.on_object(y0)), u0, v.component(y0));
            if (!lift) {
                solved = false;
                break;
            }
            for (std::size_t y : members) {
                const std::size_t c = connecting(y);
                fiber[y] = compose_cc(esys.transport(h.on_morphism(c)), compose_cc(*lift, transport_inverse(bsys, c)));
            }
        }
        if (!solved)
            continue;
        DgLocMorphism out(bsys, esys, h, std::move(fiber));
        if (compose_dg(out, i) == u && compose_dg(p, out) == v)
            return out;
    }
    return std::nullopt;
}

} // namespace extlin
