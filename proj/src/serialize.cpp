#include "extlin/serialize.hpp"

#include "extlin/errors.hpp"

#include <charconv>
#include <map>
#include <set>

namespace extlin::io {

namespace {

std::string at_key(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object())
        throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(path, "missing field '" + key + "'");
    return *it;
}

const json* optional_field(const json& j, const std::string& key) {
    if (!j.is_object())
        return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const json& as_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw SchemaError(path, "expected an object");
    return j;
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array())
        throw SchemaError(path, "expected an array");
    return j;
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string())
        throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

std::size_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw SchemaError(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
    as_array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_string(j[i], at_index(path, i)));
    return out;
}

int degree_key(const std::string& key, const std::string& path) {
    int n = 0;
    auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
    if (ec != std::errc() || end != key.data() + key.size())
        throw SchemaError(path, "degree key '" + key + "' is not an integer");
    return n;
}

// Runs a constructor and tags law violations with the location of the offending value.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::size_t element_index(const json& j, const std::vector<std::string>& names, const std::string& path) {
    if (j.is_number_integer()) {
        auto v = j.get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= names.size())
            throw SchemaError(path, "index out of range");
        return static_cast<std::size_t>(v);
    }
    std::string s = as_string(j, path);
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s)
            return i;
    throw SchemaError(path, "unknown element '" + s + "'");
}

FiniteGroup group_from_json(const json& j, const std::string& path) {
    std::vector<std::string> names = string_list(field(j, "elements", path), at_key(path, "elements"));
    const json& table = as_array(field(j, "table", path), at_key(path, "table"));
    const std::string tpath = at_key(path, "table");
    if (table.size() != names.size())
        throw SchemaError(tpath, "expected one row per element");
    std::vector<std::size_t> flat;
    for (std::size_t a = 0; a < names.size(); ++a) {
        const json& row = as_array(table[a], at_index(tpath, a));
        if (row.size() != names.size())
            throw SchemaError(at_index(tpath, a), "expected one entry per element");
        for (std::size_t b = 0; b < names.size(); ++b)
            flat.push_back(element_index(row[b], names, at_index(at_index(tpath, a), b)));
    }
    return located(path, [&] { return FiniteGroup(names, flat); });
}

std::size_t object_of(const FinGroupoid& g, const json& j, const std::string& path) {
    std::string name = as_string(j, path);
    if (auto o = g.find_object(name))
        return *o;
    throw SchemaError(path, "unknown object '" + name + "'");
}

std::size_t morphism_of(const FinGroupoid& g, const json& j, const std::string& path) {
    std::string id = as_string(j, path);
    if (auto m = g.find_morphism(id))
        return *m;
    throw SchemaError(path, "unknown morphism '" + id + "'");
}

// Reads {name: value} keyed by the objects of g, requiring every object exactly once.
template <class F>
void per_object(const FinGroupoid& g, const json& j, const std::string& path, F&& f) {
    as_object(j, path);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!g.find_object(it.key()))
            throw SchemaError(at_key(path, it.key()), "not an object of the base");
    for (std::size_t x = 0; x < g.num_objects(); ++x) {
        auto it = j.find(g.object(x));
        if (it == j.end())
            throw SchemaError(path, "missing object '" + g.object(x) + "'");
        f(x, *it, at_key(path, g.object(x)));
    }
}

// Reads {morphism id: value}; identities may be omitted and non-identities may not.
template <class F, class Default>
void per_morphism(const FinGroupoid& g, const json* j, const std::string& path, F&& f, Default&& identity) {
    if (j)
        as_object(*j, path);
    if (j)
        for (auto it = j->begin(); it != j->end(); ++it)
            if (!g.find_morphism(it.key()))
                throw SchemaError(at_key(path, it.key()), "not a morphism of the base");
    for (std::size_t m = 0; m < g.num_morphisms(); ++m) {
        const json* value = nullptr;
        if (j) {
            auto it = j->find(g.morphism_id(m));
            if (it != j->end())
                value = &*it;
        }
        if (value)
            f(m, *value, at_key(path, g.morphism_id(m)));
        else if (g.is_identity(m))
            identity(m);
        else
            throw SchemaError(path, "missing transport for '" + g.morphism_id(m) + "'");
    }
}

json space_to_json(const VectorSpace& v) { return {{"dim", v.dim()}, {"labels", v.labels()}}; }

VectorSpace space_from_json(const json& j, const std::string& path) {
    std::size_t d = as_count(field(j, "dim", path), at_key(path, "dim"));
    if (const json* labels = optional_field(j, "labels")) {
        auto names = string_list(*labels, at_key(path, "labels"));
        if (names.size() != d)
            throw SchemaError(at_key(path, "labels"), "expected " + std::to_string(d) + " labels");
        if (std::set<std::string>(names.begin(), names.end()).size() != d)
            throw SchemaError(at_key(path, "labels"), "labels must be distinct");
        return VectorSpace(names);
    }
    return VectorSpace::standard(d);
}

json graded_to_json(const ChainMap& f) {
    json maps = json::object();
    for (int n : f.degrees()) {
        LinearMap m = f.at(n);
        if (m.domain().dim() > 0 && m.codomain().dim() > 0)
            maps[std::to_string(n)] = to_json(m.matrix());
    }
    return maps;
}

ChainMap graded_from_json(const json& j, const ChainComplex& domain, const ChainComplex& codomain,
                          const std::string& path) {
    as_object(j, path);
    std::map<int, Matrix> maps;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int n = degree_key(it.key(), path);
        maps.emplace(n, matrix_from_json(*it, codomain.dim(n), domain.dim(n), at_key(path, it.key())));
    }
    return located(path, [&] { return ChainMap::from_matrices(domain, codomain, maps); });
}

bool is_dg_fiber(const json& fiber) { return fiber.is_object() && fiber.contains("components"); }

bool fibers_are_complexes(const json& system) {
    const json* fibers = optional_field(system, "fibers");
    if (!fibers || !fibers->is_object() || fibers->empty())
        return false;
    return is_dg_fiber(fibers->begin().value());
}

json functor_maps(const GroupoidFunctor& f) {
    json objects = json::object(), morphisms = json::object();
    const FinGroupoid &s = *f.source(), &t = *f.target();
    for (std::size_t x = 0; x < s.num_objects(); ++x)
        objects[s.object(x)] = t.object(f.on_object(x));
    for (std::size_t m = 0; m < s.num_morphisms(); ++m)
        morphisms[s.morphism_id(m)] = t.morphism_id(f.on_morphism(m));
    return {{"objects", objects}, {"morphisms", morphisms}};
}

} // namespace

json to_json(const Scalar& s) { return format_scalar(s); }

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(format_scalar(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const FinGroupoid& g) {
    json morphisms = json::array(), identities = json::object(), compose = json::array();
    for (const auto& m : g.morphisms())
        morphisms.push_back({{"id", m.id}, {"src", g.object(m.src)}, {"dst", g.object(m.dst)}});
    for (std::size_t x = 0; x < g.num_objects(); ++x)
        identities[g.object(x)] = g.morphism_id(g.identity(x));
    const std::size_t n = g.num_morphisms();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.src(a) == g.dst(b))
                compose.push_back({g.morphism_id(a), g.morphism_id(b), g.morphism_id(g.table()[a * n + b])});
    return {{"objects", g.objects()}, {"morphisms", morphisms}, {"identities", identities}, {"compose", compose}};
}

json to_json(const GroupoidFunctor& f) {
    json out = functor_maps(f);
    out["source"] = to_json(*f.source());
    out["target"] = to_json(*f.target());
    return out;
}

json to_json(const LocalSystem& v) {
    const FinGroupoid& g = *v.base();
    json fibers = json::object(), transport = json::object();
    for (std::size_t x = 0; x < g.num_objects(); ++x)
        fibers[g.object(x)] = space_to_json(v.fiber(x));
    for (std::size_t m = 0; m < g.num_morphisms(); ++m)
        transport[g.morphism_id(m)] = to_json(v.transport(m).matrix());
    return {{"base", to_json(g)}, {"fibers", fibers}, {"transport", transport}};
}

json to_json(const LocMorphism& phi) {
    const FinGroupoid& g = *phi.domain().base();
    json components = json::object();
    for (std::size_t x = 0; x < g.num_objects(); ++x)
        components[g.object(x)] = to_json(phi.component(x).matrix());
    return {{"domain", to_json(phi.domain())},
            {"codomain", to_json(phi.codomain())},
            {"map", functor_maps(phi.base_map())},
            {"components", components}};
}

json to_json(const ChainComplex& c) {
    json components = json::object(), differentials = json::object();
    for (int n : c.support()) {
        components[std::to_string(n)] = space_to_json(c.component(n));
        if (c.dim(n - 1) > 0)
            differentials[std::to_string(n)] = to_json(c.differential(n).matrix());
    }
    return {{"support", c.support()}, {"components", components}, {"differentials", differentials}};
}

json to_json(const ChainMap& f) {
    return {{"domain", to_json(f.domain())}, {"codomain", to_json(f.codomain())}, {"maps", graded_to_json(f)}};
}

json to_json(const TruncatedSimplicialComplex& v) {
    json levels = json::array(), faces = json::array(), degeneracies = json::array();
    for (const auto& l : v.levels())
        levels.push_back(to_json(l));
    for (const auto& level : v.faces()) {
        json row = json::array();
        for (const auto& d : level)
            row.push_back(graded_to_json(d));
        faces.push_back(row);
    }
    for (const auto& level : v.degeneracies()) {
        json row = json::array();
        for (const auto& s : level)
            row.push_back(graded_to_json(s));
        degeneracies.push_back(row);
    }
    return {{"levels", levels}, {"faces", faces}, {"degeneracies", degeneracies}};
}

json to_json(const DgLocalSystem& v) {
    const FinGroupoid& g = *v.base();
    json fibers = json::object(), transport = json::object();
    for (std::size_t x = 0; x < g.num_objects(); ++x)
        fibers[g.object(x)] = to_json(v.fiber(x));
    for (std::size_t m = 0; m < g.num_morphisms(); ++m)
        transport[g.morphism_id(m)] = graded_to_json(v.transport(m));
    return {{"base", to_json(g)}, {"fibers", fibers}, {"transport", transport}};
}

json to_json(const DgLocMorphism& phi) {
    const FinGroupoid& g = *phi.domain().base();
    json components = json::object();
    for (std::size_t x = 0; x < g.num_objects(); ++x)
        components[g.object(x)] = graded_to_json(phi.component(x));
    return {{"domain", to_json(phi.domain())},
            {"codomain", to_json(phi.codomain())},
            {"map", functor_maps(phi.base_map())},
            {"components", components}};
}

json to_json(const Homology& h) {
    json out = json::object();
    for (const auto& [n, d] : h.dims)
        out[std::to_string(n)] = d;
    return out;
}

json to_json(const Classification& c) { return {{"weq", c.weq}, {"fib", c.fib}, {"cof", c.cof}}; }

json to_json(const QubitReport& r) {
    json measurement = json::array(), preparation = json::array(), checks = json::array();
    for (std::size_t b = 0; b < r.measurement.size(); ++b)
        measurement.push_back(
            {{"outcome", std::to_string(b)}, {"projection", to_json(r.measurement[b])}, {"amplitude", to_json(r.outcomes[b])}});
    for (std::size_t b = 0; b < r.preparation.size(); ++b)
        preparation.push_back({{"outcome", std::to_string(b)}, {"column", to_json(r.preparation[b])}});
    for (const auto& [name, ok] : r.checks)
        checks.push_back({{"name", name}, {"ok", ok}});
    return {{"demo", "qubit"},
            {"state", {{"q0", to_json(r.q0)}, {"q1", to_json(r.q1)}}},
            {"branches", {"0", "1"}},
            {"measurement", measurement},
            {"preparation", preparation},
            {"adjunctions", {{"preparation", r.preparation_source}, {"measurement", r.measurement_source}}},
            {"checks", checks},
            {"verified", r.verified()}};
}

Scalar scalar_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer())
        return Scalar(static_cast<long>(j.get<long long>()));
    if (!j.is_string())
        throw SchemaError(path, "expected a scalar string");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const ParseError& e) {
        throw SchemaError(path, e.what());
    } catch (const DivisionByZero& e) {
        throw SchemaError(path, e.what());
    }
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    as_array(j, path);
    if (j.size() != rows)
        throw SchemaError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string rpath = at_index(path, i);
        const json& row = as_array(j[i], rpath);
        if (row.size() != cols)
            throw SchemaError(rpath, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = scalar_from_json(row[k], at_index(rpath, k));
    }
    return m;
}

Grpd groupoid_from_json(const json& j, const std::string& path) {
    as_object(j, path);
    if (const json* g = optional_field(j, "group"))
        return delooping(group_from_json(*g, at_key(path, "group")));
    if (const json* s = optional_field(j, "codiscrete"))
        return located(path, [&] { return codiscrete(string_list(*s, at_key(path, "codiscrete"))); });
    if (const json* s = optional_field(j, "discrete"))
        return located(path, [&] { return discrete(string_list(*s, at_key(path, "discrete"))); });
    if (const json* a = optional_field(j, "action")) {
        const std::string apath = at_key(path, "action");
        FiniteGroup g = group_from_json(field(*a, "group", apath), at_key(apath, "group"));
        std::vector<std::string> set = string_list(field(*a, "set", apath), at_key(apath, "set"));
        const std::string mpath = at_key(apath, "map");
        const json& map = as_array(field(*a, "map", apath), mpath);
        if (map.size() != g.order())
            throw SchemaError(mpath, "expected one row per group element");
        std::vector<std::size_t> flat;
        for (std::size_t e = 0; e < g.order(); ++e) {
            const json& row = as_array(map[e], at_index(mpath, e));
            if (row.size() != set.size())
                throw SchemaError(at_index(mpath, e), "expected one entry per element of the set");
            for (std::size_t w = 0; w < set.size(); ++w)
                flat.push_back(element_index(row[w], set, at_index(at_index(mpath, e), w)));
        }
        return located(path, [&] { return action_groupoid(g, set, flat).groupoid; });
    }

    std::vector<std::string> objects = string_list(field(j, "objects", path), at_key(path, "objects"));
    std::map<std::string, std::size_t> obj_index;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (!obj_index.emplace(objects[i], i).second)
            throw SchemaError(at_index(at_key(path, "objects"), i), "duplicate object '" + objects[i] + "'");
    auto object_named = [&](const json& v, const std::string& p) {
        std::string s = as_string(v, p);
        auto it = obj_index.find(s);
        if (it == obj_index.end())
            throw SchemaError(p, "unknown object '" + s + "'");
        return it->second;
    };

    const std::string mpath = at_key(path, "morphisms");
    const json& mors = as_array(field(j, "morphisms", path), mpath);
    std::vector<MorphismData> morphisms;
    std::map<std::string, std::size_t> mor_index;
    for (std::size_t i = 0; i < mors.size(); ++i) {
        const std::string p = at_index(mpath, i);
        std::string id = as_string(field(mors[i], "id", p), at_key(p, "id"));
        if (!mor_index.emplace(id, i).second)
            throw SchemaError(at_key(p, "id"), "duplicate morphism '" + id + "'");
        morphisms.push_back({id, object_named(field(mors[i], "src", p), at_key(p, "src")),
                             object_named(field(mors[i], "dst", p), at_key(p, "dst"))});
    }
    auto morphism_named = [&](const json& v, const std::string& p) {
        std::string s = as_string(v, p);
        auto it = mor_index.find(s);
        if (it == mor_index.end())
            throw SchemaError(p, "unknown morphism '" + s + "'");
        return it->second;
    };

    const std::string ipath = at_key(path, "identities");
    const json& ids = as_object(field(j, "identities", path), ipath);
    std::vector<std::size_t> identities(objects.size());
    for (auto it = ids.begin(); it != ids.end(); ++it)
        if (!obj_index.count(it.key()))
            throw SchemaError(at_key(ipath, it.key()), "unknown object '" + it.key() + "'");
    for (std::size_t x = 0; x < objects.size(); ++x) {
        auto it = ids.find(objects[x]);
        if (it == ids.end())
            throw SchemaError(ipath, "missing identity for '" + objects[x] + "'");
        identities[x] = morphism_named(*it, at_key(ipath, objects[x]));
    }

    const std::string cpath = at_key(path, "compose");
    const json& comp = as_array(field(j, "compose", path), cpath);
    const std::size_t n = morphisms.size();
    std::vector<std::size_t> table(n * n, FinGroupoid::none);
    for (std::size_t i = 0; i < comp.size(); ++i) {
        const std::string p = at_index(cpath, i);
        const json& t = as_array(comp[i], p);
        if (t.size() != 3)
            throw SchemaError(p, "expected a triple [g, f, g o f]");
        std::size_t g = morphism_named(t[0], at_index(p, 0)), f = morphism_named(t[1], at_index(p, 1)),
                    gf = morphism_named(t[2], at_index(p, 2));
        if (morphisms[g].src != morphisms[f].dst)
            throw SchemaError(p, "'" + morphisms[g].id + "' and '" + morphisms[f].id + "' are not composable");
        std::size_t& slot = table[g * n + f];
        if (slot != FinGroupoid::none && slot != gf)
            throw SchemaError(p, "conflicting entries for (" + morphisms[g].id + ", " + morphisms[f].id + ")");
        slot = gf;
    }
    return located(path, [&] {
        return std::make_shared<const FinGroupoid>(objects, std::move(morphisms), identities, std::move(table));
    });
}

GroupoidFunctor functor_from_json(const json& j, const Grpd& source, const Grpd& target, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() != "identity")
            throw SchemaError(path, "expected a functor object or \"identity\"");
        if (!same_groupoid(source, target))
            throw SchemaError(path, "identity between different groupoids");
        std::vector<std::size_t> obj(source->num_objects()), mor(source->num_morphisms());
        for (std::size_t x = 0; x < obj.size(); ++x)
            obj[x] = x;
        for (std::size_t m = 0; m < mor.size(); ++m)
            mor[m] = m;
        return GroupoidFunctor(source, target, obj, mor);
    }
    as_object(j, path);
    const FinGroupoid &s = *source, &t = *target;
    // Into a groupoid with a single morphism the functor is forced.
    if (!optional_field(j, "objects") && !optional_field(j, "morphisms") && t.num_morphisms() == 1)
        return GroupoidFunctor(source, target, std::vector<std::size_t>(s.num_objects(), 0),
                               std::vector<std::size_t>(s.num_morphisms(), 0));
    std::vector<std::size_t> obj(s.num_objects()), mor(s.num_morphisms());
    per_object(s, field(j, "objects", path), at_key(path, "objects"),
               [&](std::size_t x, const json& v, const std::string& p) { obj[x] = object_of(t, v, p); });
    const std::string mpath = at_key(path, "morphisms");
    const json& ms = as_object(field(j, "morphisms", path), mpath);
    for (auto it = ms.begin(); it != ms.end(); ++it)
        if (!s.find_morphism(it.key()))
            throw SchemaError(at_key(mpath, it.key()), "not a morphism of the source");
    for (std::size_t m = 0; m < s.num_morphisms(); ++m) {
        auto it = ms.find(s.morphism_id(m));
        if (it != ms.end())
            mor[m] = morphism_of(t, *it, at_key(mpath, s.morphism_id(m)));
        else if (s.is_identity(m))
            mor[m] = t.identity(obj[s.src(m)]);
        else
            throw SchemaError(mpath, "missing image of '" + s.morphism_id(m) + "'");
    }
    return located(path, [&] { return GroupoidFunctor(source, target, obj, mor); });
}

GroupoidFunctor functor_from_json(const json& j, const std::string& path) {
    Grpd s = groupoid_from_json(field(j, "source", path), at_key(path, "source"));
    Grpd t = groupoid_from_json(field(j, "target", path), at_key(path, "target"));
    return functor_from_json(j, s, t, path);
}

LocalSystem locsys_from_json(const json& j, const std::string& path) {
    Grpd base = groupoid_from_json(field(j, "base", path), at_key(path, "base"));
    const FinGroupoid& g = *base;
    std::vector<VectorSpace> fibers(g.num_objects());
    per_object(g, field(j, "fibers", path), at_key(path, "fibers"),
               [&](std::size_t x, const json& v, const std::string& p) { fibers[x] = space_from_json(v, p); });
    std::vector<Matrix> transport(g.num_morphisms());
    per_morphism(
        g, optional_field(j, "transport"), at_key(path, "transport"),
        [&](std::size_t m, const json& v, const std::string& p) {
            transport[m] = matrix_from_json(v, fibers[g.dst(m)].dim(), fibers[g.src(m)].dim(), p);
        },
        [&](std::size_t m) { transport[m] = Matrix::identity(fibers[g.src(m)].dim()); });
    return located(path, [&] { return LocalSystem::from_matrices(base, fibers, transport); });
}

LocMorphism loc_morphism_from_json(const json& j, const std::string& path) {
    LocalSystem domain = locsys_from_json(field(j, "domain", path), at_key(path, "domain"));
    LocalSystem codomain = locsys_from_json(field(j, "codomain", path), at_key(path, "codomain"));
    const json* map = optional_field(j, "map");
    GroupoidFunctor f = functor_from_json(map ? *map : json("identity"), domain.base(), codomain.base(),
                                          at_key(path, "map"));
    std::vector<Matrix> comps(domain.base()->num_objects());
    per_object(*domain.base(), field(j, "components", path), at_key(path, "components"),
               [&](std::size_t x, const json& v, const std::string& p) {
                   comps[x] = matrix_from_json(v, codomain.fiber(f.on_object(x)).dim(), domain.fiber(x).dim(), p);
               });
    return located(path, [&] { return LocMorphism::from_matrices(domain, codomain, f, comps); });
}

ChainComplex complex_from_json(const json& j, const std::string& path) {
    std::map<int, VectorSpace> comps;
    const std::string cpath = at_key(path, "components");
    const json& cs = as_object(field(j, "components", path), cpath);
    for (auto it = cs.begin(); it != cs.end(); ++it) {
        int n = degree_key(it.key(), cpath);
        VectorSpace v = space_from_json(*it, at_key(cpath, it.key()));
        if (v.dim() > 0)
            comps.emplace(n, v);
    }
    if (const json* support = optional_field(j, "support")) {
        const std::string spath = at_key(path, "support");
        as_array(*support, spath);
        std::set<int> listed;
        for (std::size_t i = 0; i < support->size(); ++i) {
            if (!(*support)[i].is_number_integer())
                throw SchemaError(at_index(spath, i), "expected an integer degree");
            listed.insert((*support)[i].get<int>());
        }
        std::set<int> actual;
        for (const auto& [n, v] : comps)
            actual.insert(n);
        if (listed != actual)
            throw SchemaError(spath, "does not list exactly the degrees with nonzero components");
    }
    auto space = [&](int n) {
        auto it = comps.find(n);
        return it == comps.end() ? VectorSpace() : it->second;
    };
    std::map<int, LinearMap> diffs;
    if (const json* ds = optional_field(j, "differentials")) {
        const std::string dpath = at_key(path, "differentials");
        as_object(*ds, dpath);
        for (auto it = ds->begin(); it != ds->end(); ++it) {
            int n = degree_key(it.key(), dpath);
            Matrix m = matrix_from_json(*it, space(n - 1).dim(), space(n).dim(), at_key(dpath, it.key()));
            diffs.emplace(n, LinearMap(space(n), space(n - 1), m));
        }
    }
    return located(path, [&] { return ChainComplex(comps, diffs); });
}

ChainMap chain_map_from_json(const json& j, const std::string& path) {
    ChainComplex domain = complex_from_json(field(j, "domain", path), at_key(path, "domain"));
    ChainComplex codomain = complex_from_json(field(j, "codomain", path), at_key(path, "codomain"));
    const json* maps = optional_field(j, "maps");
    return graded_from_json(maps ? *maps : json::object(), domain, codomain, at_key(path, "maps"));
}

TruncatedSimplicialComplex simplicial_from_json(const json& j, const std::string& path) {
    if (const json* c = optional_field(j, "constant")) {
        ChainComplex v = complex_from_json(*c, at_key(path, "constant"));
        std::size_t n = as_count(field(j, "truncation", path), at_key(path, "truncation"));
        return constant_simplicial(v, n);
    }
    const std::string lpath = at_key(path, "levels");
    const json& ls = as_array(field(j, "levels", path), lpath);
    std::vector<ChainComplex> levels;
    for (std::size_t s = 0; s < ls.size(); ++s)
        levels.push_back(complex_from_json(ls[s], at_index(lpath, s)));
    auto read_maps = [&](const std::string& key, bool faces) {
        const std::string kpath = at_key(path, key);
        const json& rows = as_array(field(j, key, path), kpath);
        if (rows.size() != levels.size())
            throw SchemaError(kpath, "expected one entry per level");
        std::vector<std::vector<ChainMap>> out;
        for (std::size_t s = 0; s < rows.size(); ++s) {
            const std::string rpath = at_index(kpath, s);
            const json& row = as_array(rows[s], rpath);
            std::vector<ChainMap> level;
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::size_t target = faces ? s - 1 : s + 1;
                if ((faces && s == 0) || (!faces && s + 1 >= levels.size()))
                    throw SchemaError(at_index(rpath, i), "no " + key + " at this level");
                level.push_back(graded_from_json(row[i], levels[s], levels[target], at_index(rpath, i)));
            }
            out.push_back(std::move(level));
        }
        return out;
    };
    auto faces = read_maps("faces", true);
    auto degeneracies = read_maps("degeneracies", false);
    return located(path, [&] { return TruncatedSimplicialComplex(levels, faces, degeneracies); });
}

DgLocalSystem dg_from_json(const json& j, const std::string& path) {
    Grpd base = groupoid_from_json(field(j, "base", path), at_key(path, "base"));
    const FinGroupoid& g = *base;
    std::vector<ChainComplex> fibers(g.num_objects());
    per_object(g, field(j, "fibers", path), at_key(path, "fibers"),
               [&](std::size_t x, const json& v, const std::string& p) { fibers[x] = complex_from_json(v, p); });
    std::vector<ChainMap> transport(g.num_morphisms());
    per_morphism(
        g, optional_field(j, "transport"), at_key(path, "transport"),
        [&](std::size_t m, const json& v, const std::string& p) {
            transport[m] = graded_from_json(v, fibers[g.src(m)], fibers[g.dst(m)], p);
        },
        [&](std::size_t m) { transport[m] = identity_cc(fibers[g.src(m)]); });
    return located(path, [&] { return DgLocalSystem(base, fibers, transport); });
}

DgLocMorphism dg_morphism_from_json(const json& j, const std::string& path) {
    if (const json* id = optional_field(j, "identity"))
        return identity_dg(dg_from_json(*id, at_key(path, "identity")));
    DgLocalSystem domain = dg_from_json(field(j, "domain", path), at_key(path, "domain"));
    DgLocalSystem codomain = dg_from_json(field(j, "codomain", path), at_key(path, "codomain"));
    const json* map = optional_field(j, "map");
    GroupoidFunctor f = functor_from_json(map ? *map : json("identity"), domain.base(), codomain.base(),
                                          at_key(path, "map"));
    std::vector<ChainMap> comps(domain.base()->num_objects());
    per_object(*domain.base(), field(j, "components", path), at_key(path, "components"),
               [&](std::size_t x, const json& v, const std::string& p) {
                   comps[x] = graded_from_json(v, domain.fiber(x), codomain.fiber(f.on_object(x)), p);
               });
    return located(path, [&] { return DgLocMorphism(domain, codomain, f, comps); });
}

std::string detect_kind(const json& j) {
    if (!j.is_object())
        return "";
    if (j.contains("identity"))
        return "dg_morphism";
    if (j.contains("domain") && j.contains("codomain")) {
        if (j.contains("maps"))
            return "chain_map";
        const json& d = j["domain"];
        if (d.is_object() && d.contains("base"))
            return fibers_are_complexes(d) ? "dg_morphism" : "loc_morphism";
        return "chain_map";
    }
    if (j.contains("source") && j.contains("target"))
        return "functor";
    if (j.contains("levels") || j.contains("constant"))
        return "simplicial";
    if (j.contains("base") && j.contains("fibers"))
        return fibers_are_complexes(j) ? "dg_system" : "local_system";
    if (j.contains("components"))
        return "complex";
    for (const char* key : {"objects", "group", "codiscrete", "discrete", "action"})
        if (j.contains(key))
            return "groupoid";
    return "";
}

void validate_document(const json& j) {
    std::string kind = detect_kind(j);
    if (kind == "groupoid")
        groupoid_from_json(j);
    else if (kind == "functor")
        functor_from_json(j);
    else if (kind == "local_system")
        locsys_from_json(j);
    else if (kind == "loc_morphism")
        loc_morphism_from_json(j);
    else if (kind == "complex")
        complex_from_json(j);
    else if (kind == "chain_map")
        chain_map_from_json(j);
    else if (kind == "simplicial")
        simplicial_from_json(j);
    else if (kind == "dg_system")
        dg_from_json(j);
    else if (kind == "dg_morphism")
        dg_morphism_from_json(j);
    else
        throw SchemaError("$", "not a recognized document (groupoid, functor, local system, morphism, complex, "
                               "chain map, simplicial complex or dg local system)");
}

} // namespace extlin::io
