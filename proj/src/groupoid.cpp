#include "extlin/groupoid.hpp"

#include "extlin/errors.hpp"
#include "extlin/faults.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace extlin {

FinGroupoid::FinGroupoid(std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                         std::vector<std::size_t> identities, std::vector<std::size_t> table)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)), identities_(std::move(identities)),
      table_(std::move(table)) {
    validate();
}

FinGroupoid FinGroupoid::from_function(std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                                       std::vector<std::size_t> identities,
                                       const std::function<std::size_t(std::size_t, std::size_t)>& comp) {
    const std::size_t n = morphisms.size();
    std::vector<std::size_t> table(n * n, none);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t f = 0; f < n; ++f)
            if (morphisms[g].src == morphisms[f].dst)
                table[g * n + f] = comp(g, f);
    return FinGroupoid(std::move(objects), std::move(morphisms), std::move(identities), std::move(table));
}

void FinGroupoid::validate() {
    const std::size_t no = objects_.size(), nm = morphisms_.size();
    auto fail = [](const std::string& what) { throw ValidationError("groupoid law: " + what); };
    if (std::set<std::string>(objects_.begin(), objects_.end()).size() != no)
        fail("object ids must be distinct");
    {
        std::set<std::string> ids;
        for (const auto& m : morphisms_)
            if (!ids.insert(m.id).second)
                fail("duplicate morphism id '" + m.id + "'");
    }
    for (const auto& m : morphisms_)
        if (m.src >= no || m.dst >= no)
            fail("morphism '" + m.id + "' has an unknown endpoint");
    if (identities_.size() != no)
        fail("every object needs exactly one identity");
    for (std::size_t x = 0; x < no; ++x) {
        std::size_t i = identities_[x];
        if (i >= nm || morphisms_[i].src != x || morphisms_[i].dst != x)
            fail("identity of '" + objects_[x] + "' is not an endomorphism of it");
    }
    if (table_.size() != nm * nm)
        fail("composition table has wrong size");
    homs_.assign(no * no, {});
    for (std::size_t m = 0; m < nm; ++m)
        homs_[morphisms_[m].src * no + morphisms_[m].dst].push_back(m);

    auto name = [&](std::size_t m) { return morphisms_[m].id; };
    for (std::size_t g = 0; g < nm; ++g)
        for (std::size_t f = 0; f < nm; ++f) {
            std::size_t gf = table_[g * nm + f];
            bool composable = morphisms_[g].src == morphisms_[f].dst;
            if (!composable) {
                if (gf != none)
                    fail("composite of non-composable pair (" + name(g) + ", " + name(f) + ")");
                continue;
            }
            if (gf >= nm)
                fail("composite of (" + name(g) + ", " + name(f) + ") is missing");
            if (morphisms_[gf].src != morphisms_[f].src || morphisms_[gf].dst != morphisms_[g].dst)
                fail("composition entry (" + name(g) + ", " + name(f) + ", " + name(gf) +
                     ") has the wrong source or target");
        }
    for (std::size_t f = 0; f < nm; ++f) {
        if (table_[identities_[morphisms_[f].dst] * nm + f] != f)
            fail("left unit law fails for (" + name(identities_[morphisms_[f].dst]) + ", " + name(f) + ", " +
                 name(table_[identities_[morphisms_[f].dst] * nm + f]) + ")");
        if (table_[f * nm + identities_[morphisms_[f].src]] != f)
            fail("right unit law fails for (" + name(f) + ", " + name(identities_[morphisms_[f].src]) + ", " +
                 name(table_[f * nm + identities_[morphisms_[f].src]]) + ")");
    }
    for (std::size_t f = 0; f < nm; ++f)
        for (std::size_t y = 0; y < no; ++y)
            for (std::size_t g : homs_[morphisms_[f].dst * no + y])
                for (std::size_t z = 0; z < no; ++z)
                    for (std::size_t h : homs_[y * no + z]) {
                        std::size_t hg = table_[h * nm + g], gf = table_[g * nm + f];
                        if (table_[hg * nm + f] != table_[h * nm + gf])
                            fail("associativity fails for (" + name(h) + ", " + name(g) + ", " + name(f) + ")");
                    }
    inverses_.assign(nm, none);
    for (std::size_t m = 0; m < nm; ++m) {
        for (std::size_t n : homs_[morphisms_[m].dst * no + morphisms_[m].src])
            if (table_[m * nm + n] == identities_[morphisms_[m].dst] &&
                table_[n * nm + m] == identities_[morphisms_[m].src]) {
                inverses_[m] = n;
                break;
            }
        if (inverses_[m] == none)
            fail("morphism '" + name(m) + "' has no inverse");
    }
}

std::size_t FinGroupoid::compose(std::size_t g, std::size_t f) const {
    std::size_t gf = table_[g * morphisms_.size() + f];
    if (gf == none)
        throw ShapeError("morphisms '" + morphisms_[g].id + "' and '" + morphisms_[f].id + "' are not composable");
    return gf;
}

std::optional<std::size_t> FinGroupoid::find_object(const std::string& name) const {
    for (std::size_t x = 0; x < objects_.size(); ++x)
        if (objects_[x] == name)
            return x;
    return std::nullopt;
}

std::optional<std::size_t> FinGroupoid::find_morphism(const std::string& id) const {
    for (std::size_t m = 0; m < morphisms_.size(); ++m)
        if (morphisms_[m].id == id)
            return m;
    return std::nullopt;
}

std::size_t FinGroupoid::object_index(const std::string& name) const {
    if (auto x = find_object(name))
        return *x;
    throw ValidationError("unknown object '" + name + "'");
}

std::size_t FinGroupoid::morphism_index(const std::string& id) const {
    if (auto m = find_morphism(id))
        return *m;
    throw ValidationError("unknown morphism '" + id + "'");
}

bool operator==(const FinGroupoid& a, const FinGroupoid& b) {
    if (a.objects_ != b.objects_ || a.morphisms_.size() != b.morphisms_.size() || a.identities_ != b.identities_ ||
        a.table_ != b.table_)
        return false;
    for (std::size_t m = 0; m < a.morphisms_.size(); ++m)
        if (a.morphisms_[m].id != b.morphisms_[m].id || a.morphisms_[m].src != b.morphisms_[m].src ||
            a.morphisms_[m].dst != b.morphisms_[m].dst)
            return false;
    return true;
}

bool same_groupoid(const Grpd& a, const Grpd& b) { return a == b || (a && b && *a == *b); }

GroupoidFunctor::GroupoidFunctor(Grpd source, Grpd target, std::vector<std::size_t> object_map,
                                 std::vector<std::size_t> morphism_map)
    : source_(std::move(source)), target_(std::move(target)), object_map_(std::move(object_map)),
      morphism_map_(std::move(morphism_map)) {
    const FinGroupoid& s = *source_;
    const FinGroupoid& t = *target_;
    auto fail = [](const std::string& what) { throw ValidationError("functor law: " + what); };
    if (object_map_.size() != s.num_objects() || morphism_map_.size() != s.num_morphisms())
        fail("maps have the wrong size");
    for (auto y : object_map_)
        if (y >= t.num_objects())
            fail("object image out of range");
    for (std::size_t m = 0; m < s.num_morphisms(); ++m) {
        std::size_t fm = morphism_map_[m];
        if (fm >= t.num_morphisms())
            fail("morphism image out of range");
        if (t.src(fm) != object_map_[s.src(m)] || t.dst(fm) != object_map_[s.dst(m)])
            fail("image of '" + s.morphism_id(m) + "' has the wrong endpoints");
    }
    for (std::size_t x = 0; x < s.num_objects(); ++x)
        if (morphism_map_[s.identity(x)] != t.identity(object_map_[x]))
            fail("identity of '" + s.object(x) + "' is not preserved");
    for (std::size_t g = 0; g < s.num_morphisms(); ++g)
        for (std::size_t z = 0; z < s.num_objects(); ++z)
            for (std::size_t h : s.hom(s.dst(g), z))
                if (morphism_map_[s.compose(h, g)] != t.compose(morphism_map_[h], morphism_map_[g]))
                    fail("composite (" + s.morphism_id(h) + ", " + s.morphism_id(g) + ") is not preserved");
}

GroupoidFunctor GroupoidFunctor::identity(const Grpd& x) {
    std::vector<std::size_t> obj(x->num_objects()), mor(x->num_morphisms());
    std::iota(obj.begin(), obj.end(), 0);
    std::iota(mor.begin(), mor.end(), 0);
    return GroupoidFunctor(x, x, std::move(obj), std::move(mor));
}

bool operator==(const GroupoidFunctor& a, const GroupoidFunctor& b) {
    return same_groupoid(a.source_, b.source_) && same_groupoid(a.target_, b.target_) &&
           a.object_map_ == b.object_map_ && a.morphism_map_ == b.morphism_map_;
}

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f) {
    if (!same_groupoid(f.target(), g.source()))
        throw ShapeError("functors are not composable");
    std::vector<std::size_t> obj, mor;
    for (auto x : f.object_map())
        obj.push_back(g.on_object(x));
    for (auto m : f.morphism_map())
        mor.push_back(g.on_morphism(m));
    return GroupoidFunctor(f.source(), g.target(), std::move(obj), std::move(mor));
}

NaturalTransformation::NaturalTransformation(GroupoidFunctor from, GroupoidFunctor to,
                                             std::vector<std::size_t> components)
    : from_(std::move(from)), to_(std::move(to)), components_(std::move(components)) {
    if (!same_groupoid(from_.source(), to_.source()) || !same_groupoid(from_.target(), to_.target()))
        throw ValidationError("natural transformation between non-parallel functors");
    const FinGroupoid& s = *from_.source();
    const FinGroupoid& t = *from_.target();
    if (components_.size() != s.num_objects())
        throw ValidationError("natural transformation needs one component per object");
    for (std::size_t x = 0; x < s.num_objects(); ++x) {
        std::size_t c = components_[x];
        if (c >= t.num_morphisms() || t.src(c) != from_.on_object(x) || t.dst(c) != to_.on_object(x))
            throw ValidationError("component at '" + s.object(x) + "' has the wrong endpoints");
    }
    for (std::size_t m = 0; m < s.num_morphisms(); ++m) {
        std::size_t lhs = t.compose(to_.on_morphism(m), components_[s.src(m)]);
        std::size_t rhs = t.compose(components_[s.dst(m)], from_.on_morphism(m));
        if (lhs != rhs)
            throw ValidationError("naturality fails at '" + s.morphism_id(m) + "'");
    }
}

Grpd delooping(const FiniteGroup& g) {
    std::vector<MorphismData> mors;
    for (std::size_t a = 0; a < g.order(); ++a)
        mors.push_back({g.name(a), 0, 0});
    return std::make_shared<FinGroupoid>(FinGroupoid::from_function(
        {"*"}, std::move(mors), {g.identity()}, [&](std::size_t x, std::size_t y) { return g.mul(x, y); }));
}

Grpd codiscrete(const std::vector<std::string>& set) {
    const std::size_t n = set.size();
    std::vector<MorphismData> mors;
    std::vector<std::size_t> ids;
    for (std::size_t a = 0; a < n; ++a) {
        ids.push_back(a * n + a);
        for (std::size_t b = 0; b < n; ++b)
            mors.push_back({set[a] + "->" + set[b], a, b});
    }
    return std::make_shared<FinGroupoid>(FinGroupoid::from_function(
        set, std::move(mors), std::move(ids), [n](std::size_t g, std::size_t f) { return (f / n) * n + g % n; }));
}

Grpd discrete(const std::vector<std::string>& set) {
    std::vector<MorphismData> mors;
    std::vector<std::size_t> ids;
    for (std::size_t a = 0; a < set.size(); ++a) {
        mors.push_back({"id_" + set[a], a, a});
        ids.push_back(a);
    }
    return std::make_shared<FinGroupoid>(
        FinGroupoid::from_function(set, std::move(mors), std::move(ids), [](std::size_t g, std::size_t) { return g; }));
}

Grpd terminal() {
    return std::make_shared<FinGroupoid>(FinGroupoid({"*"}, {{"id", 0, 0}}, {0}, {0}));
}

Grpd empty_groupoid() { return std::make_shared<FinGroupoid>(FinGroupoid({}, {}, {}, {})); }

ActionGroupoid action_groupoid(const FiniteGroup& g, const std::vector<std::string>& set,
                               const std::vector<std::size_t>& action) {
    const std::size_t n = set.size(), order = g.order();
    if (action.size() != order * n)
        throw ValidationError("action law: table must have |G| x |W| entries");
    for (auto w : action)
        if (w >= n)
            throw ValidationError("action law: image out of range");
    auto act = [&](std::size_t a, std::size_t w) { return action[a * n + w]; };
    for (std::size_t w = 0; w < n; ++w) {
        if (act(g.identity(), w) != w)
            throw ValidationError("action law: identity moves '" + set[w] + "'");
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = 0; b < order; ++b)
                if (act(a, act(b, w)) != act(g.mul(a, b), w))
                    throw ValidationError("action law: (" + g.name(a) + ", " + g.name(b) + ", " + set[w] +
                                          ") violates compatibility");
    }
    std::vector<MorphismData> mors;
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t w = 0; w < n; ++w)
            mors.push_back({"(" + g.name(a) + "," + set[w] + ")", w, act(a, w)});
    std::vector<std::size_t> ids;
    for (std::size_t w = 0; w < n; ++w)
        ids.push_back(g.identity() * n + w);
    Grpd grpd = std::make_shared<FinGroupoid>(FinGroupoid::from_function(
        set, std::move(mors), std::move(ids),
        [&](std::size_t h, std::size_t f) { return g.mul(h / n, f / n) * n + f % n; }));
    Grpd bg = delooping(g);
    std::vector<std::size_t> mor_map;
    for (std::size_t m = 0; m < grpd->num_morphisms(); ++m)
        mor_map.push_back(m / n);
    return {grpd, GroupoidFunctor(grpd, bg, std::vector<std::size_t>(n, 0), std::move(mor_map))};
}

EGroupoid e_groupoid(const FiniteGroup& g) {
    std::vector<std::size_t> action;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t w = 0; w < g.order(); ++w)
            action.push_back(g.mul(a, w));
    ActionGroupoid ag = action_groupoid(g, g.names(), action);
    return {ag.groupoid, ag.projection};
}

GroupoidFunctor e_to_codiscrete(const FiniteGroup& g, const EGroupoid& eg) {
    const std::size_t n = g.order();
    Grpd cd = codiscrete(g.names());
    std::vector<std::size_t> obj(n), mor;
    std::iota(obj.begin(), obj.end(), 0);
    for (std::size_t m = 0; m < eg.groupoid->num_morphisms(); ++m)
        mor.push_back(eg.groupoid->src(m) * n + eg.groupoid->dst(m));
    return GroupoidFunctor(eg.groupoid, cd, std::move(obj), std::move(mor));
}

namespace {

std::string tuple_name(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t k = 0; k < parts.size(); ++k)
        s += (k ? "," : "") + parts[k];
    return s + ")";
}

// Mixed-radix decoding, first digit most significant.
std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& radices) {
    std::vector<std::size_t> d(radices.size());
    for (std::size_t k = radices.size(); k-- > 0;) {
        d[k] = index % radices[k];
        index /= radices[k];
    }
    return d;
}

std::size_t encode(const std::vector<std::size_t>& d, const std::vector<std::size_t>& radices) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < radices.size(); ++k)
        index = index * radices[k] + d[k];
    return index;
}

} // namespace

Product product(const std::vector<Grpd>& factors) {
    std::vector<std::size_t> orad, mrad;
    std::size_t no = 1, nm = 1;
    for (const auto& f : factors) {
        orad.push_back(f->num_objects());
        mrad.push_back(f->num_morphisms());
        no *= f->num_objects();
        nm *= f->num_morphisms();
    }
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < no; ++i) {
        auto d = digits(i, orad);
        std::vector<std::string> parts;
        for (std::size_t k = 0; k < factors.size(); ++k)
            parts.push_back(factors[k]->object(d[k]));
        objects.push_back(tuple_name(parts));
    }
    std::vector<MorphismData> mors;
    std::vector<std::vector<std::size_t>> mdigits;
    for (std::size_t i = 0; i < nm; ++i) {
        auto d = digits(i, mrad);
        std::vector<std::string> parts;
        std::vector<std::size_t> s, t;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            parts.push_back(factors[k]->morphism_id(d[k]));
            s.push_back(factors[k]->src(d[k]));
            t.push_back(factors[k]->dst(d[k]));
        }
        mors.push_back({tuple_name(parts), encode(s, orad), encode(t, orad)});
        mdigits.push_back(std::move(d));
    }
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < no; ++i) {
        auto d = digits(i, orad);
        std::vector<std::size_t> md;
        for (std::size_t k = 0; k < factors.size(); ++k)
            md.push_back(factors[k]->identity(d[k]));
        ids.push_back(encode(md, mrad));
    }
    bool corrupt = faults::active() == faults::Fault::corrupt_composition;
    Grpd grpd = std::make_shared<FinGroupoid>(
        FinGroupoid::from_function(std::move(objects), std::move(mors), std::move(ids), [&](std::size_t g, std::size_t f) {
            std::vector<std::size_t> d(factors.size());
            for (std::size_t k = 0; k < factors.size(); ++k)
                d[k] = factors[k]->compose(mdigits[g][k], mdigits[f][k]);
            std::size_t gf = encode(d, mrad);
            if (corrupt && gf != f) {
                corrupt = false;
                return f;
            }
            return gf;
        }));
    Product out;
    out.groupoid = grpd;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        std::vector<std::size_t> obj, mor;
        for (std::size_t i = 0; i < no; ++i)
            obj.push_back(digits(i, orad)[k]);
        for (std::size_t i = 0; i < nm; ++i)
            mor.push_back(mdigits[i][k]);
        out.projections.emplace_back(grpd, factors[k], std::move(obj), std::move(mor));
    }
    return out;
}

Product product(const Grpd& x, const Grpd& y) { return product(std::vector<Grpd>{x, y}); }

Coproduct coproduct(const std::vector<Grpd>& summands) {
    std::vector<std::string> objects;
    std::vector<MorphismData> mors;
    std::vector<std::size_t> ids, obj_offset, mor_offset;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const FinGroupoid& s = *summands[k];
        obj_offset.push_back(objects.size());
        mor_offset.push_back(mors.size());
        for (const auto& o : s.objects())
            objects.push_back(std::to_string(k) + ":" + o);
        for (const auto& m : s.morphisms())
            mors.push_back({std::to_string(k) + ":" + m.id, obj_offset[k] + m.src, obj_offset[k] + m.dst});
        for (auto i : s.identities())
            ids.push_back(mor_offset[k] + i);
    }
    std::vector<std::size_t> summand_of(mors.size()), local(mors.size());
    for (std::size_t k = 0; k < summands.size(); ++k)
        for (std::size_t m = 0; m < summands[k]->num_morphisms(); ++m) {
            summand_of[mor_offset[k] + m] = k;
            local[mor_offset[k] + m] = m;
        }
    Grpd grpd = std::make_shared<FinGroupoid>(
        FinGroupoid::from_function(std::move(objects), std::move(mors), std::move(ids), [&](std::size_t g, std::size_t f) {
            std::size_t k = summand_of[g];
            return mor_offset[k] + summands[k]->compose(local[g], local[f]);
        }));
    Coproduct out;
    out.groupoid = grpd;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        std::vector<std::size_t> obj(summands[k]->num_objects()), mor(summands[k]->num_morphisms());
        std::iota(obj.begin(), obj.end(), obj_offset[k]);
        std::iota(mor.begin(), mor.end(), mor_offset[k]);
        out.coprojections.emplace_back(summands[k], grpd, std::move(obj), std::move(mor));
    }
    return out;
}

Product exponential(const Grpd& z, const Grpd& y) {
    if (!y->is_discrete())
        throw Unsupported("unsupported exponent: Z^Y is only provided for discrete Y");
    return product(std::vector<Grpd>(y->num_objects(), z));
}

GroupoidFunctor to_terminal(const Grpd& x) {
    return GroupoidFunctor(x, terminal(), std::vector<std::size_t>(x->num_objects(), 0),
                           std::vector<std::size_t>(x->num_morphisms(), 0));
}

GroupoidFunctor point_at(const Grpd& x, std::size_t object) {
    return GroupoidFunctor(terminal(), x, {object}, {x->identity(object)});
}

GroupoidFunctor product_functor(const GroupoidFunctor& f, const GroupoidFunctor& g, const Product& source,
                                const Product& target) {
    const FinGroupoid& s = *source.groupoid;
    const std::size_t to2 = target.projections[1].target()->num_objects();
    const std::size_t tm2 = target.projections[1].target()->num_morphisms();
    std::vector<std::size_t> obj, mor;
    for (std::size_t i = 0; i < s.num_objects(); ++i)
        obj.push_back(f.on_object(source.projections[0].on_object(i)) * to2 +
                      g.on_object(source.projections[1].on_object(i)));
    for (std::size_t m = 0; m < s.num_morphisms(); ++m)
        mor.push_back(f.on_morphism(source.projections[0].on_morphism(m)) * tm2 +
                      g.on_morphism(source.projections[1].on_morphism(m)));
    return GroupoidFunctor(source.groupoid, target.groupoid, std::move(obj), std::move(mor));
}

Components connected_components(const FinGroupoid& x) {
    const std::size_t n = x.num_objects();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& m : x.morphisms()) {
        std::size_t a = find(m.src), b = find(m.dst);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    Components out;
    out.of_object.assign(n, 0);
    std::unordered_map<std::size_t, std::size_t> index;
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t r = find(a);
        auto it = index.find(r);
        if (it == index.end()) {
            it = index.emplace(r, out.members.size()).first;
            out.members.emplace_back();
        }
        out.members[it->second].push_back(a);
        out.of_object[a] = it->second;
    }
    return out;
}

Skeleton skeletize(const Grpd& xp) {
    const FinGroupoid& x = *xp;
    Components comps = connected_components(x);
    std::vector<std::size_t> basepoints, connecting(x.num_objects());
    for (const auto& c : comps.members) {
        std::size_t b = c.front();
        basepoints.push_back(b);
        for (std::size_t y : c)
            connecting[y] = y == b ? x.identity(b) : x.hom(b, y).front();
    }
    std::vector<std::string> objects;
    std::vector<MorphismData> mors;
    std::vector<std::size_t> ids, incl_mor, local_of(x.num_morphisms(), FinGroupoid::none);
    for (std::size_t i = 0; i < basepoints.size(); ++i) {
        std::size_t b = basepoints[i];
        objects.push_back(x.object(b));
        for (std::size_t m : x.hom(b, b)) {
            local_of[m] = mors.size();
            if (m == x.identity(b))
                ids.push_back(mors.size());
            mors.push_back({x.morphism_id(m), i, i});
            incl_mor.push_back(m);
        }
    }
    Grpd skl = std::make_shared<FinGroupoid>(FinGroupoid::from_function(
        std::move(objects), std::move(mors), std::move(ids),
        [&](std::size_t g, std::size_t f) { return local_of[x.compose(incl_mor[g], incl_mor[f])]; }));
    GroupoidFunctor inclusion(skl, xp, basepoints, incl_mor);
    std::vector<std::size_t> proj_mor;
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        std::size_t a = x.compose(m, connecting[x.src(m)]);
        proj_mor.push_back(local_of[x.compose(x.inverse(connecting[x.dst(m)]), a)]);
    }
    GroupoidFunctor projection(xp, skl, comps.of_object, std::move(proj_mor));
    NaturalTransformation gamma(compose(inclusion, projection), GroupoidFunctor::identity(xp), connecting);
    return {skl, inclusion, projection, basepoints, connecting, gamma};
}

bool is_fully_faithful(const GroupoidFunctor& f) {
    const FinGroupoid& s = *f.source();
    const FinGroupoid& t = *f.target();
    for (std::size_t x = 0; x < s.num_objects(); ++x)
        for (std::size_t y = 0; y < s.num_objects(); ++y) {
            const auto& src_hom = s.hom(x, y);
            const auto& dst_hom = t.hom(f.on_object(x), f.on_object(y));
            if (src_hom.size() != dst_hom.size())
                return false;
            std::set<std::size_t> images;
            for (auto m : src_hom)
                images.insert(f.on_morphism(m));
            if (images.size() != dst_hom.size())
                return false;
        }
    return true;
}

bool is_essentially_surjective(const GroupoidFunctor& f) {
    const FinGroupoid& t = *f.target();
    std::vector<bool> reached(t.num_objects(), false);
    for (auto y : f.object_map())
        for (std::size_t z = 0; z < t.num_objects(); ++z)
            if (!t.hom(y, z).empty())
                reached[z] = true;
    for (bool r : reached)
        if (!r)
            return false;
    return true;
}

bool is_equivalence(const GroupoidFunctor& f) { return is_fully_faithful(f) && is_essentially_surjective(f); }

bool is_isofibration(const GroupoidFunctor& f) {
    const FinGroupoid& s = *f.source();
    const FinGroupoid& t = *f.target();
    for (std::size_t x = 0; x < s.num_objects(); ++x) {
        std::set<std::size_t> lifted;
        for (std::size_t m = 0; m < s.num_morphisms(); ++m)
            if (s.src(m) == x)
                lifted.insert(f.on_morphism(m));
        std::size_t fx = f.on_object(x);
        for (std::size_t z = 0; z < t.num_objects(); ++z)
            for (auto m : t.hom(fx, z))
                if (!lifted.count(m))
                    return false;
    }
    return true;
}

bool is_cofibration(const GroupoidFunctor& f) {
    std::set<std::size_t> images(f.object_map().begin(), f.object_map().end());
    return images.size() == f.object_map().size();
}

void validate_action(const GroupoidAction& a) {
    const FiniteGroup& g = a.group;
    if (a.act.size() != g.order())
        throw ValidationError("action law: need one functor per group element");
    for (const auto& f : a.act)
        if (!same_groupoid(f.source(), a.space) || !same_groupoid(f.target(), a.space))
            throw ValidationError("action law: functors must be endofunctors of the acted-on groupoid");
    if (!(a.act[g.identity()] == GroupoidFunctor::identity(a.space)))
        throw ValidationError("action law: identity element acts non-trivially");
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y)
            if (!(compose(a.act[x], a.act[y]) == a.act[g.mul(x, y)]))
                throw ValidationError("action law: (" + g.name(x) + ", " + g.name(y) + ") violates compatibility");
}

OrbitGroupoid orbit_groupoid(const GroupoidAction& a) {
    validate_action(a);
    const FinGroupoid& x = *a.space;
    const FiniteGroup& g = a.group;
    for (std::size_t o = 0; o < x.num_objects(); ++o)
        for (std::size_t e = 0; e < g.order(); ++e)
            if (e != g.identity() && a.act[e].on_object(o) == o)
                throw Unsupported("unsupported quotient: action is not free on objects ('" + g.name(e) + "' fixes '" +
                                  x.object(o) + "')");
    std::vector<std::size_t> obj_orbit(x.num_objects(), FinGroupoid::none), obj_rep;
    for (std::size_t o = 0; o < x.num_objects(); ++o) {
        if (obj_orbit[o] != FinGroupoid::none)
            continue;
        for (const auto& f : a.act)
            obj_orbit[f.on_object(o)] = obj_rep.size();
        obj_rep.push_back(o);
    }
    std::vector<std::size_t> mor_orbit(x.num_morphisms(), FinGroupoid::none), mor_rep;
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        if (mor_orbit[m] != FinGroupoid::none)
            continue;
        for (const auto& f : a.act)
            mor_orbit[f.on_morphism(m)] = mor_rep.size();
        mor_rep.push_back(m);
    }
    std::vector<std::string> objects;
    for (auto o : obj_rep)
        objects.push_back(x.object(o));
    std::vector<MorphismData> mors;
    for (auto m : mor_rep)
        mors.push_back({x.morphism_id(m), obj_orbit[x.src(m)], obj_orbit[x.dst(m)]});
    std::vector<std::size_t> ids;
    for (auto o : obj_rep)
        ids.push_back(mor_orbit[x.identity(o)]);
    Grpd quotient = std::make_shared<FinGroupoid>(
        FinGroupoid::from_function(std::move(objects), std::move(mors), std::move(ids), [&](std::size_t h, std::size_t f) {
            std::size_t m1 = mor_rep[f], m2 = mor_rep[h];
            for (const auto& act : a.act)
                if (act.on_object(x.src(m2)) == x.dst(m1))
                    return mor_orbit[x.compose(act.on_morphism(m2), m1)];
            throw ValidationError("orbit composition: endpoints in different orbits");
        }));
    return {quotient, GroupoidFunctor(a.space, quotient, obj_orbit, mor_orbit)};
}

GroupoidAction canonical_action_on_e(const FiniteGroup& g, const EGroupoid& eg) {
    const std::size_t n = g.order();
    std::vector<GroupoidFunctor> act;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::size_t> obj, mor;
        for (std::size_t h = 0; h < n; ++h)
            obj.push_back(g.mul(h, g.inverse(a)));
        // Morphism (k, h) has index k * n + h.
        for (std::size_t m = 0; m < eg.groupoid->num_morphisms(); ++m)
            mor.push_back((m / n) * n + g.mul(m % n, g.inverse(a)));
        act.emplace_back(eg.groupoid, eg.groupoid, std::move(obj), std::move(mor));
    }
    GroupoidAction out{g, eg.groupoid, std::move(act)};
    validate_action(out);
    return out;
}

SetPushoutProduct set_pushout_product(std::size_t x, std::size_t x_prime, const std::vector<std::size_t>& f,
                                      std::size_t y, std::size_t y_prime, const std::vector<std::size_t>& g) {
    if (f.size() != x || g.size() != y)
        throw ShapeError("set maps have the wrong size");
    for (auto v : f)
        if (v >= x_prime)
            throw ShapeError("f maps outside its codomain");
    for (auto v : g)
        if (v >= y_prime)
            throw ShapeError("g maps outside its codomain");
    // Elements of X x Y' come first, then X' x Y.
    const std::size_t left = x * y_prime, total = left + x_prime * y;
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t a = 0; a < x; ++a)
        for (std::size_t b = 0; b < y; ++b) {
            std::size_t p = find(a * y_prime + g[b]), q = find(left + f[a] * y + b);
            if (p != q)
                parent[std::max(p, q)] = std::min(p, q);
        }
    SetPushoutProduct out;
    std::unordered_map<std::size_t, std::size_t> class_of;
    for (std::size_t e = 0; e < total; ++e) {
        std::size_t r = find(e);
        if (class_of.count(r))
            continue;
        class_of[r] = out.elements.size();
        std::size_t target;
        if (e < left) {
            out.elements.push_back("[x" + std::to_string(e / y_prime) + ",y'" + std::to_string(e % y_prime) + "]");
            target = f[e / y_prime] * y_prime + e % y_prime;
        } else {
            std::size_t k = e - left;
            out.elements.push_back("[x'" + std::to_string(k / y) + ",y" + std::to_string(k % y) + "]");
            target = (k / y) * y_prime + g[k % y];
        }
        out.map.push_back(target);
    }
    out.pushout_size = out.elements.size();
    out.fiber_sizes.assign(x_prime * y_prime, 0);
    for (auto t : out.map)
        ++out.fiber_sizes[t];
    std::vector<std::size_t> f_fiber(x_prime, 0), g_fiber(y_prime, 0);
    for (auto v : f)
        ++f_fiber[v];
    for (auto v : g)
        ++g_fiber[v];
    out.formula_sizes.assign(x_prime * y_prime, 0);
    for (std::size_t a = 0; a < x_prime; ++a)
        for (std::size_t b = 0; b < y_prime; ++b) {
            std::size_t& s = out.formula_sizes[a * y_prime + b];
            if (f_fiber[a] > 0 && g_fiber[b] > 0)
                s = 1;
            else if (g_fiber[b] == 0)
                s = f_fiber[a];
            else
                s = g_fiber[b];
        }
    out.matches_formula = out.fiber_sizes == out.formula_sizes;
    return out;
}

GroupoidFunctor copair(const Coproduct& source, const std::vector<GroupoidFunctor>& legs) {
    if (legs.size() != source.coprojections.size())
        throw ShapeError("copair: expected " + std::to_string(source.coprojections.size()) + " legs, got " +
                         std::to_string(legs.size()));
    if (legs.empty())
        throw ShapeError("copair: target of an empty copairing is not determined");
    const Grpd& target = legs.front().target();
    std::vector<std::size_t> obj(source.groupoid->num_objects()), mor(source.groupoid->num_morphisms());
    for (std::size_t k = 0; k < legs.size(); ++k) {
        const auto& inj = source.coprojections[k];
        if (!same_groupoid(legs[k].source(), inj.source()) || !same_groupoid(legs[k].target(), target))
            throw ShapeError("copair: leg " + std::to_string(k) + " does not match the summand or the common target");
        for (std::size_t x = 0; x < inj.source()->num_objects(); ++x)
            obj[inj.on_object(x)] = legs[k].on_object(x);
        for (std::size_t m = 0; m < inj.source()->num_morphisms(); ++m)
            mor[inj.on_morphism(m)] = legs[k].on_morphism(m);
    }
    return GroupoidFunctor(source.groupoid, target, std::move(obj), std::move(mor));
}

GroupoidFunctor pair(const Product& target, const std::vector<GroupoidFunctor>& legs) {
    if (legs.size() != target.projections.size() || legs.empty())
        throw ShapeError("pair: leg count does not match the product");
    const Grpd& source = legs.front().source();
    std::vector<std::size_t> orad, mrad;
    for (std::size_t k = 0; k < legs.size(); ++k) {
        if (!same_groupoid(legs[k].source(), source) || !same_groupoid(legs[k].target(), target.projections[k].target()))
            throw ShapeError("pair: leg " + std::to_string(k) + " does not match the factor or the common source");
        orad.push_back(legs[k].target()->num_objects());
        mrad.push_back(legs[k].target()->num_morphisms());
    }
    std::vector<std::size_t> obj, mor;
    for (std::size_t x = 0; x < source->num_objects(); ++x) {
        std::vector<std::size_t> d;
        for (const auto& l : legs)
            d.push_back(l.on_object(x));
        obj.push_back(encode(d, orad));
    }
    for (std::size_t m = 0; m < source->num_morphisms(); ++m) {
        std::vector<std::size_t> d;
        for (const auto& l : legs)
            d.push_back(l.on_morphism(m));
        mor.push_back(encode(d, mrad));
    }
    return GroupoidFunctor(source, target.groupoid, std::move(obj), std::move(mor));
}

Subgroupoid full_subgroupoid(const Grpd& xp, std::vector<std::size_t> objects) {
    const FinGroupoid& x = *xp;
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    std::vector<std::size_t> local(x.num_objects(), FinGroupoid::none);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (objects[i] >= x.num_objects())
            throw ShapeError("full_subgroupoid: object index out of range");
        local[objects[i]] = i;
        names.push_back(x.object(objects[i]));
    }
    std::vector<MorphismData> mors;
    std::vector<std::size_t> mor_map, local_mor(x.num_morphisms(), FinGroupoid::none);
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        if (local[x.src(m)] == FinGroupoid::none || local[x.dst(m)] == FinGroupoid::none)
            continue;
        local_mor[m] = mors.size();
        mors.push_back({x.morphism_id(m), local[x.src(m)], local[x.dst(m)]});
        mor_map.push_back(m);
    }
    std::vector<std::size_t> ids;
    for (auto o : objects)
        ids.push_back(local_mor[x.identity(o)]);
    Grpd sub = std::make_shared<FinGroupoid>(FinGroupoid::from_function(
        std::move(names), std::move(mors), std::move(ids),
        [&](std::size_t g, std::size_t f) { return local_mor[x.compose(mor_map[g], mor_map[f])]; }));
    return {sub, GroupoidFunctor(sub, xp, objects, mor_map)};
}

GroupoidFunctor factor_through(const OrbitGroupoid& q, const GroupoidFunctor& u) {
    if (!same_groupoid(q.quotient.source(), u.source()))
        throw ShapeError("factor_through: functor does not start at the acted-on groupoid");
    const FinGroupoid& x = *u.source();
    std::vector<std::size_t> obj(q.groupoid->num_objects(), FinGroupoid::none),
        mor(q.groupoid->num_morphisms(), FinGroupoid::none);
    for (std::size_t o = 0; o < x.num_objects(); ++o) {
        std::size_t& slot = obj[q.quotient.on_object(o)];
        if (slot != FinGroupoid::none && slot != u.on_object(o))
            throw ValidationError("factor_through: functor is not constant on the orbit of '" + x.object(o) + "'");
        slot = u.on_object(o);
    }
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
        std::size_t& slot = mor[q.quotient.on_morphism(m)];
        if (slot != FinGroupoid::none && slot != u.on_morphism(m))
            throw ValidationError("factor_through: functor is not constant on the orbit of '" + x.morphism_id(m) + "'");
        slot = u.on_morphism(m);
    }
    return GroupoidFunctor(q.groupoid, u.target(), std::move(obj), std::move(mor));
}

bool is_isomorphism(const GroupoidFunctor& f) {
    auto bijective = [](const std::vector<std::size_t>& map, std::size_t n) {
        if (map.size() != n)
            return false;
        std::vector<bool> hit(n, false);
        for (auto v : map) {
            if (hit[v])
                return false;
            hit[v] = true;
        }
        return true;
    };
    return bijective(f.object_map(), f.target()->num_objects()) &&
           bijective(f.morphism_map(), f.target()->num_morphisms());
}

} // namespace extlin
