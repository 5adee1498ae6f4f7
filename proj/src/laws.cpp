#include "extlin/laws.hpp"

#include "extlin/quantum.hpp"
#include "extlin/random.hpp"
#include "extlin/serialize.hpp"

#include <chrono>
#include <sstream>

namespace extlin::laws {

namespace {

using io::to_json;

bool same_matrices(const LocMorphism& a, const LocMorphism& b) {
    if (a.components().size() != b.components().size())
        return false;
    for (std::size_t i = 0; i < a.components().size(); ++i)
        if (a.component(i).matrix() != b.component(i).matrix())
            return false;
    return true;
}

LocMorphism identity_components(const LocalSystem& from, const LocalSystem& to, const GroupoidFunctor& f) {
    std::vector<Matrix> comps;
    for (const auto& fib : from.fibers())
        comps.push_back(Matrix::identity(fib.dim()));
    return LocMorphism::from_matrices(from, to, f, comps);
}

/// (V [x] W1) + (V [x] W2) -> V [x] (W1 + W2), or with the sum in the first variable.
LocMorphism distributivity_comparison(const LocalSystem& v, const LocalSystem& w1, const LocalSystem& w2,
                                      bool sum_on_right) {
    CoproductLoc sum = coproduct_loc({w1, w2});
    ExternalTensor big = sum_on_right ? external_tensor(v, sum.system) : external_tensor(sum.system, v);
    ExternalTensor t1 = sum_on_right ? external_tensor(v, w1) : external_tensor(w1, v);
    ExternalTensor t2 = sum_on_right ? external_tensor(v, w2) : external_tensor(w2, v);
    CoproductLoc split = coproduct_loc({t1.system, t2.system});
    std::vector<GroupoidFunctor> legs;
    const GroupoidFunctor id = GroupoidFunctor::identity(v.base());
    for (std::size_t k = 0; k < 2; ++k) {
        const ExternalTensor& tk = k == 0 ? t1 : t2;
        const GroupoidFunctor& inj = sum.base.coprojections[k];
        legs.push_back(sum_on_right ? product_functor(id, inj, tk.base, big.base)
                                    : product_functor(inj, id, tk.base, big.base));
    }
    return identity_components(split.system, big.system, copair(split.base, legs));
}

std::size_t rank_homology(const ChainComplex& c, int n) {
    return c.dim(n) - rank(c.differential(n).matrix()) - rank(c.differential(n + 1).matrix());
}

std::map<int, std::size_t> rank_homology_all(const ChainComplex& c) {
    std::map<int, std::size_t> out;
    for (int n : c.support())
        if (auto d = rank_homology(c, n))
            out[n] = d;
    return out;
}

json homology_json(const std::map<int, std::size_t>& dims) {
    json out = json::object();
    for (const auto& [n, d] : dims)
        out[std::to_string(n)] = d;
    return out;
}

/// H as a group in its own right, with elements named as in G.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<std::size_t>& h) {
    std::vector<std::string> names;
    std::vector<std::size_t> pos(g.order(), 0), table;
    for (std::size_t k = 0; k < h.size(); ++k) {
        names.push_back(g.name(h[k]));
        pos[h[k]] = k;
    }
    for (std::size_t a : h)
        for (std::size_t b : h)
            table.push_back(pos[g.mul(a, b)]);
    return FiniteGroup(names, table);
}

std::vector<std::vector<std::size_t>> subgroups(const FiniteGroup& g) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t n = g.order();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> elems;
        for (std::size_t a = 0; a < n; ++a)
            if (mask >> a & 1)
                elems.push_back(a);
        if (g.is_subgroup(elems))
            out.push_back(elems);
    }
    return out;
}

// Suites. Every case records its inputs before checking, so a failure, including an error
// thrown halfway, comes with a serialized counterexample.

void characterization_sets(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    LocalSystem v = gen::local_system(rng, gen::finite_set(rng, 4), 3);
    LocalSystem w = gen::local_system(rng, gen::finite_set(rng, 4), 3);
    ctx.record("v", to_json(v));
    ctx.record("w", to_json(w));
    ExternalTensor t = external_tensor(v, w);
    const std::size_t nx = v.base()->num_objects(), ny = w.base()->num_objects();

    // Reconstruction as the coproduct of the fiberwise tensors over X x Y.
    Grpd pt = terminal();
    std::vector<LocalSystem> pieces;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            pieces.push_back(constant_system(pt, tensor_space(v.fiber(i), w.fiber(j))));
    CoproductLoc recon = coproduct_loc(pieces);
    std::vector<std::size_t> index(pieces.size());
    for (std::size_t k = 0; k < index.size(); ++k)
        index[k] = k;
    GroupoidFunctor relabel(recon.base.groupoid, t.base.groupoid, index, index);
    if (ctx.check(is_isomorphism(relabel), "canonical relabeling is not an isomorphism"))
        ctx.check(pullback(relabel, t.system) == recon.system, "external tensor differs from its reconstruction");

    // Singleton clause at every pair of points.
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            LocalSystem at = pullback(point_at(t.base.groupoid, i * ny + j), t.system);
            ctx.check(at.fiber(0) == tensor_space(v.fiber(i), w.fiber(j)),
                      "fiber over (" + std::to_string(i) + "," + std::to_string(j) + ") is not V_x (x) W_y");
        }

    // Coproduct clause: splitting Y in two splits the external tensor.
    if (ny >= 2) {
        std::size_t k = 1 + rng.below(ny - 1);
        std::vector<std::size_t> first, second;
        for (std::size_t j = 0; j < ny; ++j)
            (j < k ? first : second).push_back(j);
        LocMorphism cmp = distributivity_comparison(v, restrict_to(w, first), restrict_to(w, second), true);
        ctx.check(is_iso(cmp), "coproduct clause: comparison is not invertible");
    }
}

void distributivity(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    LocalSystem v = gen::local_system(rng, gen::groupoid(rng, 2, 4), 2);
    LocalSystem w1 = gen::local_system(rng, gen::groupoid(rng, 2, 4), 2);
    LocalSystem w2 = gen::local_system(rng, gen::groupoid(rng, 2, 4), 2);
    ctx.record("v", to_json(v));
    ctx.record("w1", to_json(w1));
    ctx.record("w2", to_json(w2));
    for (bool right : {true, false}) {
        LocMorphism cmp = distributivity_comparison(v, w1, w2, right);
        std::string side = right ? "V [x] (W1 + W2)" : "(W1 + W2) [x] V";
        bool full_rank = true;
        for (const auto& c : cmp.components())
            full_rank = full_rank && c.domain().dim() == c.codomain().dim() && rank(c.matrix()) == c.domain().dim();
        ctx.check(is_isomorphism(cmp.base_map()), side + ": base comparison is not an isomorphism");
        ctx.check(full_rank, side + ": a comparison component is not of full rank");
    }
}

void hq_coproducts(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    // Singleton clause.
    VectorSpace a = VectorSpace::standard(rng.below(4), "a"), b = VectorSpace::standard(rng.below(4), "b");
    ctx.record("singleton", {{"dims", {a.dim(), b.dim()}}});
    Grpd pt = terminal();
    ctx.check(external_tensor(constant_system(pt, a), constant_system(pt, b)).system.fiber(0) == tensor_space(a, b),
              "pt [x] pt is not the tensor product");

    // Coproduct clause: a system over a groupoid is the coproduct of its restrictions to components.
    LocalSystem u = gen::local_system(rng, gen::groupoid(rng, 3, 4), 2);
    LocalSystem z = gen::local_system(rng, gen::groupoid(rng, 2, 3), 2);
    ctx.record("u", to_json(u));
    ctx.record("z", to_json(z));
    Components comps = connected_components(*u.base());
    if (comps.members.size() >= 2) {
        std::vector<std::size_t> first = comps.members[0], rest;
        for (std::size_t c = 1; c < comps.members.size(); ++c)
            rest.insert(rest.end(), comps.members[c].begin(), comps.members[c].end());
        std::sort(rest.begin(), rest.end());
        LocMorphism cmp = distributivity_comparison(z, restrict_to(u, first), restrict_to(u, rest), true);
        ctx.check(is_iso(cmp), "coproduct clause over components: comparison is not invertible");
    }

    // Homotopy-quotient clause: V//G [x] W//H = (V (x) W)//(G x H).
    FiniteGroup g = gen::group(rng, 6), h = gen::group(rng, 6);
    LocalSystem rho = gen::local_system(rng, delooping(g), 2, 1);
    LocalSystem sigma = gen::local_system(rng, delooping(h), 2, 1);
    ctx.record("rho", to_json(rho));
    ctx.record("sigma", to_json(sigma));
    ExternalTensor t = external_tensor(rho, sigma);
    FiniteGroup gh = FiniteGroup::product(g, h);
    std::vector<Matrix> mats;
    std::vector<std::size_t> mor(gh.order());
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < h.order(); ++y) {
            mats.push_back(kron(rho.transport(x).matrix(), sigma.transport(y).matrix()));
            mor[x * h.order() + y] = x * h.order() + y;
        }
    LocalSystem joint = representation(gh, t.system.fiber(0), mats);
    GroupoidFunctor iso(joint.base(), t.base.groupoid, {0}, mor);
    ctx.check(is_isomorphism(iso), "B(G x H) -> BG x BH is not an isomorphism");
    LocalSystem pulled = pullback(iso, t.system);
    bool same = true;
    for (std::size_t m = 0; m < gh.order(); ++m)
        same = same && pulled.transport(m).matrix() == joint.transport(m).matrix();
    ctx.check(same, "V//G [x] W//H differs from (V (x) W)//(G x H)");

    // The square pt x BH -> BG x BH restricts V//G [x] W//H to V [x] W//H.
    GroupoidFunctor incl = point_at(rho.base(), 0);
    ExternalTensor left = external_tensor(pullback(incl, rho), sigma);
    GroupoidFunctor square = product_functor(incl, GroupoidFunctor::identity(sigma.base()), left.base, t.base);
    ctx.check(pullback(square, t.system) == left.system, "restriction along the quotient square differs");
}

void adjunctions(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    Grpd x = gen::groupoid(rng, 3, 6), y = gen::groupoid(rng, 3, 6);
    GroupoidFunctor f = gen::functor(rng, x, y);
    LocalSystem v = gen::local_system(rng, x, 2), w = gen::local_system(rng, y, 2);
    ctx.record("f", to_json(f));
    ctx.record("v", to_json(v));
    ctx.record("w", to_json(w));
    TriangleReport t = triangle_identities(f, v, w);
    ctx.check(t.left_first, "eps f_! o f_! eta != id");
    ctx.check(t.left_second, "f* eps o eta f* != id");
    ctx.check(t.right_first, "f_* eps o eta f_* != id");
    ctx.check(t.right_second, "eps f* o f* eta != id");
    ctx.check(is_iso(pushforward_skeletal(f, v, pushforward(f, v)).comparison),
              "skeletal and coend computations of f_! disagree");
    ctx.check(is_iso(sections_skeletal(f, v, sections(f, v)).comparison),
              "skeletal and end computations of f_* disagree");
}

void motivic_yoga(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    Grpd x = gen::groupoid(rng, 3, 6), y = gen::groupoid(rng, 3, 6);
    GroupoidFunctor f = gen::functor(rng, x, y);
    LocalSystem v = gen::local_system(rng, y, 2), w = gen::local_system(rng, y, 2), r = gen::local_system(rng, x, 2);
    ctx.record("f", to_json(f));
    ctx.record("v", to_json(v));
    ctx.record("w", to_json(w));
    ctx.record("r", to_json(r));
    FrobeniusWitnesses fw = frobenius_witnesses(f, v, w, r);
    ctx.check(is_iso(fw.monoidal), "f*(V (x) W) -> f*V (x) f*W is not invertible");
    ctx.check(is_iso(fw.closed), "f*[V, W] -> [f*V, f*W] is not invertible");
    ctx.check(is_iso(fw.unit), "f*1 -> 1 is not invertible");
    ctx.check(is_iso(fw.projection), "projection formula witness is not invertible");

    Grpd z = gen::groupoid(rng, 2, 3);
    ctx.record("z", to_json(*z));
    ctx.check(is_iso(beck_chevalley_product(f, z, r)), "Beck-Chevalley for the product square is not invertible");
    Components comps = connected_components(*y);
    std::vector<std::size_t> objects;
    for (const auto& members : comps.members)
        if (rng.coin() || objects.empty())
            objects.insert(objects.end(), members.begin(), members.end());
    std::sort(objects.begin(), objects.end());
    ctx.record("embedding", objects);
    ctx.check(is_iso(beck_chevalley_embedding(f, objects, r)),
              "Beck-Chevalley for the component embedding is not invertible");
}

void pullpush_external(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    Grpd x = gen::groupoid(rng, 2, 3), xp = gen::groupoid(rng, 2, 3);
    Grpd y = gen::groupoid(rng, 2, 3), yp = gen::groupoid(rng, 2, 3);
    GroupoidFunctor f = gen::functor(rng, x, xp), g = gen::functor(rng, y, yp);
    LocalSystem v = gen::local_system(rng, xp, 2), w = gen::local_system(rng, yp, 2);
    LocalSystem a = gen::local_system(rng, x, 2), b = gen::local_system(rng, y, 2);
    ctx.record("f", to_json(f));
    ctx.record("g", to_json(g));
    ctx.record("v", to_json(v));
    ctx.record("w", to_json(w));
    ctx.record("a", to_json(a));
    ctx.record("b", to_json(b));

    ExternalTensor top = external_tensor(v, w);
    ExternalTensor bottom = external_tensor(pullback(f, v), pullback(g, w));
    GroupoidFunctor fg = product_functor(f, g, bottom.base, top.base);
    ctx.check(pullback(fg, top.system) == bottom.system, "(f x g)*(V [x] W) != f*V [x] g*W");

    LeftKan ka = pushforward(f, a), kb = pushforward(g, b);
    LocMorphism eta = external_tensor_mor(LocMorphism(a, ka.value, f, ka.unit.components()),
                                          LocMorphism(b, kb.value, g, kb.unit.components()));
    LocMorphism push = adjunct(eta);
    ctx.check(is_iso(push), "(f x g)_!(A [x] B) -> f_!A [x] g_!B is not invertible");
    // The pull-push adjunct of phi [x] gamma factors through that comparison.
    LocMorphism phi = gen::loc_morphism(rng, a, v, f), gamma = gen::loc_morphism(rng, b, w, g);
    LocMorphism lhs = adjunct(external_tensor_mor(phi, gamma));
    LocMorphism rhs = compose_loc(external_tensor_mor(adjunct(ka, phi), adjunct(kb, gamma)), push);
    ctx.check(same_matrices(lhs, rhs), "adjunct(phi [x] gamma) != (adjunct phi [x] adjunct gamma) o comparison");
}

void colimit_preservation(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    const FiniteGroup groups[] = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()};
    const FiniteGroup& g = groups[rng.below(3)];
    LocalSystem rho = gen::local_system(rng, delooping(g), 2, 1);
    LocalSystem u = gen::local_system(rng, gen::groupoid(rng, 2, 3), 2);
    ctx.record("rho", to_json(rho));
    ctx.record("u", to_json(u));
    QuasiColimitDiagram q = quasi_colimit_diagram(g, rho);
    LocColimit colim = loc_colimit(q.diagram);
    ExternalTensor vu = external_tensor(q.diagram.system, u);
    std::vector<GroupoidFunctor> act;
    std::vector<LocMorphism> beta;
    for (std::size_t e = 0; e < g.order(); ++e) {
        LocMorphism b = external_tensor_mor(q.diagram.beta[e], identity_loc(u));
        act.push_back(b.base_map());
        beta.push_back(b);
    }
    BGDiagram du{GroupoidAction{g, vu.base.groupoid, act}, vu.system, beta};
    LocColimit cu = loc_colimit(du);
    LocMorphism cmp = induced_map(cu, du, external_tensor_mor(colim.cocone, identity_loc(u)));
    ctx.check(is_iso(cmp), "colim(D [x] U) -> (colim D) [x] U is not invertible");
}

void quotient_iso_suite(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    FiniteGroup g = gen::group(rng, 6);
    auto subs = subgroups(g);
    const std::vector<std::size_t>& h = subs[rng.below(subs.size())];
    FiniteGroup hg = subgroup_as_group(g, h);
    const std::size_t d = 1 + rng.below(2);
    std::vector<Matrix> rho = gen::automorphism_rep(rng, *delooping(hg), 0, d);
    ctx.record("group", to_json(*delooping(g)));
    ctx.record("subgroup", h);
    json rj = json::array();
    for (const auto& m : rho)
        rj.push_back(to_json(m));
    ctx.record("rho", rj);
    QuotientIso q = quotient_iso(g, h, VectorSpace::standard(d), rho);
    ctx.check(q.tensoring.dim() == (g.order() / h.size()) * d, "(G/H).V has the wrong dimension");
    ctx.check(compose(q.forward, q.backward).matrix().is_identity(), "forward o backward != id");
    ctx.check(compose(q.backward, q.forward).matrix().is_identity(), "backward o forward != id");
}

void chain_model(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    const int n = static_cast<int>(rng.range(-2, 2));
    ctx.record("n", n);
    ctx.check(homology(sphere(n)).dims == std::map<int, std::size_t>{{n, 1}}, "H(S^n) is not K[n]");
    ctx.check(homology(disk(n)).dims.empty(), "D^n is not acyclic");

    // Pushout-product axiom on random generator pairs.
    for (int k = 0; k < 3; ++k) {
        const int m1 = static_cast<int>(rng.range(-2, 2)), m2 = static_cast<int>(rng.range(-2, 2));
        const bool a1 = rng.coin(), a2 = rng.coin();
        Generators g1 = generators(m1), g2 = generators(m2);
        ChainMap pp = pushout_product_cc(a1 ? g1.j : g1.i, a2 ? g2.j : g2.i);
        std::string name = std::string(a1 ? "j" : "i") + "_" + std::to_string(m1) + " x " + (a2 ? "j" : "i") + "_" +
                           std::to_string(m2);
        ctx.check(is_cofibration_cc(pp), name + ": pushout-product is not a cofibration");
        if (a1 || a2)
            ctx.check(is_quasi_iso(pp), name + ": pushout-product is not acyclic");
    }

    // Lifting against a generator.
    const bool acyclic = rng.coin();
    Generators g = generators(n);
    ChainComplex y = gen::complex(rng, n - 2, n + 1);
    ChainMap p = gen::fibration(rng, y, acyclic);
    ChainMap i = acyclic ? g.i : g.j;
    ChainMap v = gen::chain_map(rng, g.disk, y);
    ChainMap u = zero_cc(i.domain(), p.domain());
    ctx.record("fibration", to_json(p));
    ctx.record("bottom", to_json(v));
    if (acyclic) {
        const ChainComplex& x = p.domain();
        Matrix a = vstack(p.at(n - 1).matrix(), x.differential(n - 1).matrix());
        Matrix b = vstack(v.at(n - 1).matrix(), Matrix(x.dim(n - 2), 1));
        auto sol = solve(a, b);
        if (!ctx.check(sol.has_value(), "no cycle over d v: p is not an acyclic fibration"))
            return;
        u = ChainMap::from_matrices(i.domain(), x, {{n - 1, *sol}});
    }
    auto lift = solve_lifting(i, p, u, v);
    if (ctx.check(lift.has_value(), "no lift found"))
        ctx.check(compose_cc(*lift, i) == u && compose_cc(p, *lift) == v, "lift does not fill the square");
    // S^(n-1) -> 0 is not an acyclic fibration and i_n has no lift against it.
    ChainMap q = zero_cc(g.sphere, zero_complex());
    ctx.check(!solve_lifting(g.i, q, identity_cc(g.sphere), zero_cc(g.disk, zero_complex())).has_value(),
              "lift found on the negative instance");

    // Kunneth against rank-computed homology.
    ChainComplex c1 = gen::complex(rng, -2, 2), c2 = gen::complex(rng, -2, 2);
    ctx.record("left", to_json(c1));
    ctx.record("right", to_json(c2));
    std::map<int, std::size_t> expected;
    for (const auto& [a, ha] : rank_homology_all(c1))
        for (const auto& [b, hb] : rank_homology_all(c2))
            expected[a + b] += ha * hb;
    std::map<int, std::size_t> got = homology(tensor_cc(c1, c2)).dims;
    ctx.check(got == expected,
              "Kunneth: H(V (x) W) = " + homology_json(got).dump() + ", expected " + homology_json(expected).dump());

    ctx.check(homology(totalize(constant_simplicial(sphere(0), 2))).dims == std::map<int, std::size_t>{{0, 1}},
              "tot(const S^0) at N = 2 is not K in degree 0");
}

void integral_classes(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    const Grpd pt = terminal();
    DgLocalSystem v = gen::dg_local_system(rng, gen::groupoid(rng, 2, 3));
    ctx.record("v", to_json(v));
    ctx.check(classify(identity_dg(v)) == Classification{true, true, true}, "identity is not weq, fib and cof");

    const Grpd bz2 = delooping(FiniteGroup::cyclic(2));
    DgLocMorphism collapse(constant_dg(bz2, sphere(0)), constant_dg(pt, sphere(0)), to_terminal(bz2),
                           {identity_cc(sphere(0))});
    ctx.check(classify(collapse) == Classification{false, true, true}, "BZ/2 -> pt misclassified");

    const int n = static_cast<int>(rng.range(-1, 2));
    Generators g = generators(n);
    const GroupoidFunctor id = GroupoidFunctor::identity(pt);
    DgLocMorphism j(constant_dg(pt, zero_complex()), constant_dg(pt, g.disk), id, {g.j});
    DgLocMorphism i(constant_dg(pt, g.sphere), constant_dg(pt, g.disk), id, {g.i});
    ctx.check(classify(j) == Classification{true, false, true}, "j_n misclassified");
    ctx.check(classify(i) == Classification{false, false, true}, "i_n misclassified");
    for (const auto& c : covered_generating_cofibrations(n + 1))
        ctx.check(classify(c).cof, "a generating cofibration is not a cofibration");
    for (const auto& c : covered_generating_acyclic_cofibrations(n + 1)) {
        Classification cc = classify(c);
        ctx.check(cc.cof && cc.weq, "a generating acyclic cofibration is not an acyclic cofibration");
    }

    DgLocMorphism phi = gen::dg_weq(rng), gamma = gen::dg_weq(rng);
    ctx.record("phi", to_json(phi));
    ctx.record("gamma", to_json(gamma));
    ctx.check(classify(phi).weq && classify(gamma).weq, "generated weak equivalence misclassified");
    ctx.check(check_homotopical(phi, gamma), "phi [x] gamma is not a weak equivalence");
}

void quantum_laws(CaseContext& ctx) {
    Rng& rng = ctx.rng;
    std::vector<std::string> names;
    const std::size_t size = 1 + rng.below(4);
    for (std::size_t k = 0; k < size; ++k)
        names.push_back(std::to_string(k));
    BranchSet b = branch_set(names);
    LocalSystem v = gen::local_system(rng, b.set, 2);
    ctx.record("v", to_json(v));
    MeasureComonad box(b);
    ComonadLaws laws = check_comonad_laws(box, v);
    ctx.check(laws.left_counit, "eps o delta != id");
    ctx.check(laws.right_counit, "Box eps o delta != id");
    ctx.check(laws.coassociative, "delta is not coassociative");

    Ambidexterity a = ambidexterity_witness(v);
    const Matrix& w = a.witness.component(0).matrix();
    const Matrix& winv = a.inverse.component(0).matrix();
    ctx.check((w * winv).is_identity() && (winv * w).is_identity(), "ambidexterity witness is not invertible");

    LocalSystem state = constant_system(terminal(), VectorSpace::standard(1 + rng.below(2)));
    const std::size_t prepared = rng.below(size);
    auto m = measure_after_prepare(b, prepared, state);
    for (std::size_t c = 0; c < size; ++c)
        ctx.check(c == prepared ? m[c].is_identity() : m[c].is_zero(),
                  "measuring branch " + std::to_string(c) + " after preparing " + std::to_string(prepared));
}

std::vector<Suite> make_suites() {
    return {
        {"characterization_sets", "external tensor over sets: reconstruction, singleton and coproduct clauses",
         characterization_sets},
        {"distributivity", "external tensor distributes over coproducts in each variable", distributivity},
        {"hq_coproducts", "singleton, coproduct and homotopy-quotient clauses", hq_coproducts},
        {"adjunctions", "triangle identities for f_! -| f* -| f_* and skeletal cross-check", adjunctions},
        {"motivic_yoga", "Frobenius, projection formula and Beck-Chevalley witnesses", motivic_yoga},
        {"pullpush_external", "pullback and pushforward of external tensors", pullpush_external},
        {"colimit_preservation", "external tensor preserves BG-shaped colimits", colimit_preservation},
        {"quotient_iso", "(G . V)/H ~ (G/H) . V", quotient_iso_suite},
        {"chain_model", "homology, pushout-product axiom, lifting, Kunneth, totalization", chain_model},
        {"integral_classes", "classification fixtures and homotopical external tensor", integral_classes},
        {"quantum_laws", "measurement comonad laws, ambidexterity, preparation", quantum_laws},
    };
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k)
        out += (k ? sep : "") + parts[k];
    return out;
}

} // namespace

bool CaseContext::check(bool ok, const std::string& what) {
    if (!ok)
        failed_.push_back(what);
    return ok;
}

UnknownSuite::UnknownSuite(const std::string& name)
    : Error("unknown suite '" + name + "'; registered suites: " + join(suite_names(), ", ")) {}

const std::vector<Suite>& registered_suites() {
    static const std::vector<Suite> suites = make_suites();
    return suites;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : registered_suites())
        out.push_back(s.name);
    return out;
}

Report run_suite(const std::string& name, std::uint64_t seed, std::size_t cases) {
    const Suite* suite = nullptr;
    for (const auto& s : registered_suites())
        if (s.name == name)
            suite = &s;
    if (!suite)
        throw UnknownSuite(name);

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::optional<Failure>> results(cases);
    const long long total = static_cast<long long>(cases);
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < total; ++k) {
        const std::size_t index = static_cast<std::size_t>(k);
        CaseContext ctx(seed, index);
        try {
            suite->run_case(ctx);
        } catch (const std::exception& e) {
            ctx.check(false, std::string("error: ") + e.what());
        }
        if (!ctx.failed().empty())
            results[index] = Failure{index, ctx.input(), join(ctx.failed(), "; ")};
    }
    Report r;
    r.suite = name;
    r.seed = seed;
    r.cases = cases;
    for (auto& f : results)
        if (f)
            r.failures.push_back(std::move(*f));
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<Report> run_all(std::uint64_t seed, std::size_t cases) {
    std::vector<Report> out;
    for (const auto& s : registered_suites())
        out.push_back(run_suite(s.name, seed, cases));
    return out;
}

json to_json(const Report& r) {
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"case", f.case_index}, {"input", f.input}, {"detail", f.detail}});
    return {{"suite", r.suite}, {"seed", r.seed}, {"cases", r.cases}, {"failures", failures}, {"elapsed_ms", r.elapsed_ms}};
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases << " cases, " << r.failures.size()
        << " failures, " << static_cast<long long>(r.elapsed_ms) << " ms\n";
    for (const auto& f : r.failures)
        out << "  case " << f.case_index << ": " << f.detail << "\n    input: " << f.input.dump() << "\n";
    return out.str();
}

} // namespace extlin::laws
