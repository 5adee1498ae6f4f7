#include "extlin/chaincx.hpp"

#include "extlin/errors.hpp"
#include "extlin/faults.hpp"

#include <algorithm>
#include <set>

namespace extlin {

namespace {

std::string deg(int n) { return std::to_string(n); }

Scalar sign(int k) { return Scalar(k % 2 == 0 ? 1 : -1); }

std::set<int> degree_union(const ChainComplex& a, const ChainComplex& b) {
    std::set<int> out;
    for (int n : a.support())
        out.insert(n);
    for (int n : b.support())
        out.insert(n);
    return out;
}

Matrix diagonal_pair(const Matrix& a, const Matrix& b) { return block_diagonal({a, b}); }

} // namespace

ChainComplex::ChainComplex(std::map<int, VectorSpace> components, std::map<int, LinearMap> differentials) {
    for (auto& [n, v] : components)
        if (v.dim() > 0)
            components_.emplace(n, std::move(v));
    for (auto& [n, d] : differentials) {
        if (d.domain() != component(n) || d.codomain() != component(n - 1))
            throw ShapeError("differential in degree " + deg(n) + " does not match the components");
        if (d.domain().dim() > 0 && d.codomain().dim() > 0 && !d.matrix().is_zero())
            differentials_.emplace(n, std::move(d));
    }
    for (const auto& [n, d] : differentials_) {
        auto below = differentials_.find(n - 1);
        if (below != differentials_.end() && !(below->second.matrix() * d.matrix()).is_zero())
            throw ValidationError("d o d != 0 in degree " + deg(n));
    }
}

ChainComplex ChainComplex::from_matrices(const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& differentials,
                                         const std::string& prefix) {
    std::map<int, VectorSpace> comps;
    for (const auto& [n, d] : dims)
        comps.emplace(n, VectorSpace::standard(d, prefix));
    auto space = [&](int n) {
        auto it = comps.find(n);
        return it == comps.end() ? VectorSpace() : it->second;
    };
    std::map<int, LinearMap> diffs;
    for (const auto& [n, m] : differentials)
        diffs.emplace(n, LinearMap(space(n), space(n - 1), m));
    return ChainComplex(std::move(comps), std::move(diffs));
}

std::vector<int> ChainComplex::support() const {
    std::vector<int> out;
    for (const auto& kv : components_)
        out.push_back(kv.first);
    return out;
}

int ChainComplex::min_degree() const {
    if (components_.empty())
        throw Unsupported("the zero complex has no degrees");
    return components_.begin()->first;
}

int ChainComplex::max_degree() const {
    if (components_.empty())
        throw Unsupported("the zero complex has no degrees");
    return components_.rbegin()->first;
}

VectorSpace ChainComplex::component(int n) const {
    auto it = components_.find(n);
    return it == components_.end() ? VectorSpace() : it->second;
}

LinearMap ChainComplex::differential(int n) const {
    auto it = differentials_.find(n);
    if (it != differentials_.end())
        return it->second;
    return zero_map(component(n), component(n - 1));
}

std::size_t ChainComplex::dim(int n) const {
    auto it = components_.find(n);
    return it == components_.end() ? 0 : it->second.dim();
}

std::size_t ChainComplex::total_dim() const {
    std::size_t d = 0;
    for (const auto& kv : components_)
        d += kv.second.dim();
    return d;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (a.components_ != b.components_ || a.differentials_.size() != b.differentials_.size())
        return false;
    for (const auto& [n, d] : a.differentials_) {
        auto it = b.differentials_.find(n);
        if (it == b.differentials_.end() || it->second.matrix() != d.matrix())
            return false;
    }
    return true;
}

ChainMap::ChainMap(ChainComplex domain, ChainComplex codomain, std::map<int, LinearMap> maps)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
    for (auto& [n, f] : maps) {
        if (f.domain() != domain_.component(n) || f.codomain() != codomain_.component(n))
            throw ShapeError("chain map component in degree " + deg(n) + " does not match the complexes");
        if (f.domain().dim() > 0 && f.codomain().dim() > 0 && !f.matrix().is_zero())
            maps_.emplace(n, std::move(f));
    }
    std::set<int> check;
    for (int n : degrees()) {
        check.insert(n);
        check.insert(n + 1);
    }
    for (int n : check) {
        Matrix lhs = codomain_.differential(n).matrix() * at(n).matrix();
        Matrix rhs = at(n - 1).matrix() * domain_.differential(n).matrix();
        if (lhs != rhs)
            throw ValidationError("chain map does not commute with the differentials in degree " + deg(n));
    }
}

ChainMap ChainMap::from_matrices(ChainComplex domain, ChainComplex codomain, const std::map<int, Matrix>& maps) {
    std::map<int, LinearMap> ls;
    for (const auto& [n, m] : maps)
        ls.emplace(n, LinearMap(domain.component(n), codomain.component(n), m));
    return ChainMap(std::move(domain), std::move(codomain), std::move(ls));
}

LinearMap ChainMap::at(int n) const {
    auto it = maps_.find(n);
    if (it != maps_.end())
        return it->second;
    return zero_map(domain_.component(n), codomain_.component(n));
}

std::vector<int> ChainMap::degrees() const {
    auto u = degree_union(domain_, codomain_);
    return {u.begin(), u.end()};
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    if (a.domain_ != b.domain_ || a.codomain_ != b.codomain_ || a.maps_.size() != b.maps_.size())
        return false;
    for (const auto& [n, f] : a.maps_) {
        auto it = b.maps_.find(n);
        if (it == b.maps_.end() || it->second.matrix() != f.matrix())
            return false;
    }
    return true;
}

ChainComplex zero_complex() { return ChainComplex(); }

ChainComplex unit_complex() { return concentrated(unit_space(), 0); }

ChainComplex concentrated(const VectorSpace& v, int n) { return ChainComplex({{n, v}}, {}); }

ChainComplex sphere(int n) { return concentrated(VectorSpace::standard(1), n); }

ChainComplex disk(int n) {
    return ChainComplex::from_matrices({{n, 1}, {n - 1, 1}}, {{n, Matrix::identity(1)}});
}

ChainMap identity_cc(const ChainComplex& v) {
    std::map<int, LinearMap> maps;
    for (int n : v.support())
        maps.emplace(n, identity(v.component(n)));
    return ChainMap(v, v, std::move(maps));
}

ChainMap zero_cc(const ChainComplex& from, const ChainComplex& to) { return ChainMap(from, to, {}); }

ChainMap compose_cc(const ChainMap& g, const ChainMap& f) {
    if (g.domain() != f.codomain())
        throw ShapeError("cannot compose chain maps: codomain and domain differ");
    std::map<int, LinearMap> maps;
    for (int n : f.domain().support())
        maps.emplace(n, compose(g.at(n), f.at(n)));
    return ChainMap(f.domain(), g.codomain(), std::move(maps));
}

ChainMap add_cc(const ChainMap& f, const ChainMap& g) {
    if (f.domain() != g.domain() || f.codomain() != g.codomain())
        throw ShapeError("cannot add chain maps between different complexes");
    std::map<int, LinearMap> maps;
    for (int n : f.domain().support())
        maps.emplace(n, add(f.at(n), g.at(n)));
    return ChainMap(f.domain(), f.codomain(), std::move(maps));
}

ChainMap inverse_cc(const ChainMap& f) {
    std::map<int, LinearMap> maps;
    for (int n : f.degrees()) {
        const LinearMap fn = f.at(n);
        if (!is_invertible(fn))
            throw ValidationError("chain map is not invertible in degree " + deg(n));
        maps.emplace(n, inverse(fn));
    }
    return ChainMap(f.codomain(), f.domain(), std::move(maps));
}

DirectSumCC direct_sum_cc(const std::vector<ChainComplex>& summands) {
    std::set<int> degrees;
    for (const auto& c : summands)
        for (int n : c.support())
            degrees.insert(n);
    std::map<int, DirectSum> sums;
    std::map<int, VectorSpace> comps;
    for (int n : degrees) {
        std::vector<VectorSpace> parts;
        for (const auto& c : summands)
            parts.push_back(c.component(n));
        sums.emplace(n, direct_sum(parts));
        comps.emplace(n, sums.at(n).space);
    }
    std::map<int, LinearMap> diffs;
    for (int n : degrees) {
        if (!degrees.count(n - 1))
            continue;
        std::vector<Matrix> blocks;
        for (const auto& c : summands)
            blocks.push_back(c.differential(n).matrix());
        diffs.emplace(n, LinearMap(comps.at(n), comps.at(n - 1), block_diagonal(blocks)));
    }
    DirectSumCC out{ChainComplex(comps, diffs), {}, {}};
    for (std::size_t k = 0; k < summands.size(); ++k) {
        std::map<int, LinearMap> inj, proj;
        for (int n : summands[k].support()) {
            inj.emplace(n, sums.at(n).injections[k]);
            proj.emplace(n, sums.at(n).projections[k]);
        }
        out.injections.emplace_back(summands[k], out.complex, std::move(inj));
        out.projections.emplace_back(out.complex, summands[k], std::move(proj));
    }
    return out;
}

namespace {

// Degree n of V (x) W: summands (p, n - p) for p over the support of V with W_(n-p) nonzero.
struct TensorLayout {
    std::map<int, std::vector<int>> first;             // degree -> p values, increasing
    std::map<int, std::vector<std::size_t>> offset;    // degree -> offset of each summand
    std::map<int, std::size_t> dim;
};

TensorLayout tensor_layout(const ChainComplex& v, const ChainComplex& w) {
    TensorLayout t;
    for (int p : v.support())
        for (int q : w.support())
            t.first[p + q].push_back(p);
    for (auto& [n, ps] : t.first) {
        std::sort(ps.begin(), ps.end());
        std::size_t acc = 0;
        for (int p : ps) {
            t.offset[n].push_back(acc);
            acc += v.dim(p) * w.dim(n - p);
        }
        t.dim[n] = acc;
    }
    return t;
}

std::size_t summand_offset(const TensorLayout& t, int n, int p) {
    const auto& ps = t.first.at(n);
    auto it = std::find(ps.begin(), ps.end(), p);
    return t.offset.at(n)[static_cast<std::size_t>(it - ps.begin())];
}

bool has_summand(const TensorLayout& t, int n, int p) {
    auto it = t.first.find(n);
    return it != t.first.end() && std::find(it->second.begin(), it->second.end(), p) != it->second.end();
}

} // namespace

ChainComplex tensor_cc(const ChainComplex& v, const ChainComplex& w) {
    const TensorLayout t = tensor_layout(v, w);
    const bool drop_sign = faults::active() == faults::Fault::koszul_sign;
    std::map<int, VectorSpace> comps;
    for (const auto& [n, ps] : t.first) {
        std::vector<VectorSpace> parts;
        for (int p : ps)
            parts.push_back(tensor_space(v.component(p), w.component(n - p)));
        comps.emplace(n, direct_sum(parts).space);
    }
    std::map<int, LinearMap> diffs;
    for (const auto& [n, ps] : t.first) {
        if (!t.first.count(n - 1))
            continue;
        Matrix d(t.dim.at(n - 1), t.dim.at(n));
        for (int p : ps) {
            const int q = n - p;
            const std::size_t col = summand_offset(t, n, p);
            if (has_summand(t, n - 1, p - 1))
                d.set_block(summand_offset(t, n - 1, p - 1), col,
                            kron(v.differential(p).matrix(), Matrix::identity(w.dim(q))));
            if (has_summand(t, n - 1, p))
                d.set_block(summand_offset(t, n - 1, p), col,
                            (drop_sign ? Scalar(1) : sign(p)) * kron(Matrix::identity(v.dim(p)), w.differential(q).matrix()));
        }
        diffs.emplace(n, LinearMap(comps.at(n), comps.at(n - 1), d));
    }
    return ChainComplex(std::move(comps), std::move(diffs));
}

ChainMap tensor_ccmap(const ChainMap& f, const ChainMap& g) {
    ChainComplex dom = tensor_cc(f.domain(), g.domain());
    ChainComplex cod = tensor_cc(f.codomain(), g.codomain());
    const TensorLayout td = tensor_layout(f.domain(), g.domain());
    const TensorLayout tc = tensor_layout(f.codomain(), g.codomain());
    std::map<int, Matrix> maps;
    for (const auto& [n, ps] : td.first) {
        if (!tc.first.count(n))
            continue;
        Matrix m(tc.dim.at(n), td.dim.at(n));
        for (int p : ps)
            if (has_summand(tc, n, p))
                m.set_block(summand_offset(tc, n, p), summand_offset(td, n, p),
                            kron(f.at(p).matrix(), g.at(n - p).matrix()));
        maps.emplace(n, std::move(m));
    }
    return ChainMap::from_matrices(std::move(dom), std::move(cod), maps);
}

ChainMap right_unitor_cc(const ChainComplex& v) {
    ChainComplex dom = tensor_cc(v, unit_complex());
    std::map<int, Matrix> maps;
    for (int n : v.support())
        maps.emplace(n, Matrix::identity(v.dim(n)));
    return ChainMap::from_matrices(std::move(dom), v, maps);
}

ChainMap symmetry_cc(const ChainComplex& v, const ChainComplex& w) {
    ChainComplex dom = tensor_cc(v, w), cod = tensor_cc(w, v);
    const TensorLayout td = tensor_layout(v, w), tc = tensor_layout(w, v);
    std::map<int, Matrix> maps;
    for (const auto& [n, ps] : td.first) {
        Matrix m(tc.dim.at(n), td.dim.at(n));
        for (int p : ps) {
            const int q = n - p;
            const std::size_t dv = v.dim(p), dw = w.dim(q);
            const std::size_t r0 = summand_offset(tc, n, q), c0 = summand_offset(td, n, p);
            for (std::size_t i = 0; i < dv; ++i)
                for (std::size_t j = 0; j < dw; ++j)
                    m(r0 + j * dv + i, c0 + i * dw + j) = sign(p * q);
        }
        maps.emplace(n, std::move(m));
    }
    return ChainMap::from_matrices(std::move(dom), std::move(cod), maps);
}

namespace {

// Degree n of [V, W]: blocks k over the support of V with W_(k+n) nonzero, k increasing.
struct HomLayout {
    std::map<int, std::vector<int>> ks;
    std::map<int, std::vector<std::size_t>> offset;
    std::map<int, std::size_t> dim;
};

HomLayout hom_layout(const ChainComplex& v, const ChainComplex& w) {
    HomLayout h;
    for (int k : v.support())
        for (int m : w.support())
            h.ks[m - k].push_back(k);
    for (auto& [n, ks] : h.ks) {
        std::sort(ks.begin(), ks.end());
        std::size_t acc = 0;
        for (int k : ks) {
            h.offset[n].push_back(acc);
            acc += v.dim(k) * w.dim(k + n);
        }
        h.dim[n] = acc;
    }
    return h;
}

std::optional<std::size_t> hom_offset(const HomLayout& h, int n, int k) {
    auto it = h.ks.find(n);
    if (it == h.ks.end())
        return std::nullopt;
    auto pos = std::find(it->second.begin(), it->second.end(), k);
    if (pos == it->second.end())
        return std::nullopt;
    return h.offset.at(n)[static_cast<std::size_t>(pos - it->second.begin())];
}

} // namespace

ChainComplex hom_cc(const ChainComplex& v, const ChainComplex& w) {
    const HomLayout h = hom_layout(v, w);
    std::map<int, VectorSpace> comps;
    for (const auto& [n, ks] : h.ks) {
        std::vector<VectorSpace> parts;
        for (int k : ks)
            parts.push_back(internal_hom(v.component(k), w.component(k + n)));
        comps.emplace(n, direct_sum(parts).space);
    }
    std::map<int, LinearMap> diffs;
    for (const auto& [n, ks] : h.ks) {
        if (!h.ks.count(n - 1))
            continue;
        Matrix d(h.dim.at(n - 1), h.dim.at(n));
        for (int k : ks) {
            const std::size_t col = *hom_offset(h, n, k);
            // f_k |-> d o f_k lands in block k of degree n - 1.
            if (auto row = hom_offset(h, n - 1, k))
                d.add_block(*row, col, kron(w.differential(k + n).matrix(), Matrix::identity(v.dim(k))));
            // f_k |-> -(-1)^n f_k o d lands in block k + 1 of degree n - 1.
            if (auto row = hom_offset(h, n - 1, k + 1))
                d.add_block(*row, col,
                            -sign(n) * kron(Matrix::identity(w.dim(k + n)), v.differential(k + 1).matrix().transpose()));
        }
        diffs.emplace(n, LinearMap(comps.at(n), comps.at(n - 1), d));
    }
    return ChainComplex(std::move(comps), std::move(diffs));
}

Matrix hom_coordinates(const ChainMap& f) {
    const HomLayout h = hom_layout(f.domain(), f.codomain());
    auto it = h.dim.find(0);
    Matrix col(it == h.dim.end() ? 0 : it->second, 1);
    if (it == h.dim.end())
        return col;
    for (int k : h.ks.at(0)) {
        const Matrix m = f.at(k).matrix();
        const std::size_t off = *hom_offset(h, 0, k);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                col(off + r * m.cols() + c, 0) = m(r, c);
    }
    return col;
}

ChainMap chain_map_from_coordinates(const ChainComplex& v, const ChainComplex& w, const Matrix& column) {
    const HomLayout h = hom_layout(v, w);
    auto it = h.dim.find(0);
    const std::size_t total = it == h.dim.end() ? 0 : it->second;
    if (column.rows() != total || column.cols() != 1)
        throw ShapeError("coordinate column does not match the degree-0 mapping space");
    std::map<int, Matrix> maps;
    if (total > 0)
        for (int k : h.ks.at(0)) {
            Matrix m(w.dim(k), v.dim(k));
            const std::size_t off = *hom_offset(h, 0, k);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    m(r, c) = column(off + r * m.cols() + c, 0);
            maps.emplace(k, std::move(m));
        }
    return ChainMap::from_matrices(v, w, maps);
}

std::size_t Homology::dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
}

Homology homology(const ChainComplex& v) {
    Homology out;
    for (int n : v.support()) {
        const Matrix d = v.differential(n).matrix();
        Nullspace z = nullspace(d);
        const std::size_t zdim = z.free_columns.size();
        const Matrix retract = Matrix::selection(z.free_columns, v.dim(n)).transpose();
        const Matrix boundaries = retract * v.differential(n + 1).matrix();
        LeftNullspace h = left_nullspace(boundaries);
        const std::size_t hdim = h.pivots.size();
        if (hdim == 0)
            continue;
        out.dims[n] = hdim;
        out.representatives[n] = z.basis * Matrix::selection(h.pivots, zdim);
        out.classes[n] = h.basis * retract;
    }
    return out;
}

Matrix induced_on_homology(const ChainMap& f, const Homology& hv, const Homology& hw, int n) {
    const std::size_t a = hv.dim(n), b = hw.dim(n);
    if (a == 0 || b == 0)
        return Matrix(b, a);
    return hw.classes.at(n) * f.at(n).matrix() * hv.representatives.at(n);
}

Matrix induced_on_homology(const ChainMap& f, int n) {
    return induced_on_homology(f, homology(f.domain()), homology(f.codomain()), n);
}

bool is_quasi_iso(const ChainMap& f) {
    const Homology hv = homology(f.domain()), hw = homology(f.codomain());
    if (hv.dims != hw.dims)
        return false;
    for (const auto& [n, d] : hv.dims)
        if (!is_invertible(induced_on_homology(f, hv, hw, n)))
            return false;
    return true;
}

bool is_acyclic(const ChainComplex& v) { return homology(v).dims.empty(); }

bool is_cofibration_cc(const ChainMap& f) {
    for (int n : f.degrees())
        if (rank(f.at(n).matrix()) != f.domain().dim(n))
            return false;
    return true;
}

bool is_fibration_cc(const ChainMap& f) {
    for (int n : f.degrees())
        if (rank(f.at(n).matrix()) != f.codomain().dim(n))
            return false;
    return true;
}

Generators generators(int n) {
    ChainComplex s = sphere(n - 1), d = disk(n);
    ChainMap i = ChainMap::from_matrices(s, d, {{n - 1, Matrix::identity(1)}});
    ChainMap j = zero_cc(zero_complex(), d);
    return {std::move(s), std::move(d), std::move(i), std::move(j)};
}

PushoutCC pushout_cc(const ChainMap& f, const ChainMap& g) {
    if (f.domain() != g.domain())
        throw ShapeError("pushout: the two maps do not share a domain");
    const ChainComplex& b = f.codomain();
    const ChainComplex& c = g.codomain();
    const std::set<int> degrees = degree_union(b, c);
    std::map<int, Matrix> proj, sect;
    std::map<int, VectorSpace> comps;
    for (int n : degrees) {
        Matrix rel = vstack(f.at(n).matrix(), -g.at(n).matrix());
        LeftNullspace ln = left_nullspace(rel);
        const VectorSpace sum = direct_sum(b.component(n), c.component(n)).space;
        std::vector<std::string> labels;
        for (auto p : ln.pivots)
            labels.push_back(sum.label(p));
        comps.emplace(n, VectorSpace(std::move(labels)));
        sect.emplace(n, Matrix::selection(ln.pivots, rel.rows()));
        proj.emplace(n, std::move(ln.basis));
    }
    std::map<int, LinearMap> diffs;
    for (int n : degrees) {
        if (!degrees.count(n - 1))
            continue;
        Matrix d = proj.at(n - 1) * diagonal_pair(b.differential(n).matrix(), c.differential(n).matrix()) * sect.at(n);
        diffs.emplace(n, LinearMap(comps.at(n), comps.at(n - 1), d));
    }
    ChainComplex object(comps, diffs);
    std::map<int, Matrix> fb, fc;
    for (int n : degrees) {
        const std::size_t db = b.dim(n), dc = c.dim(n);
        fb.emplace(n, proj.at(n) * vstack(Matrix::identity(db), Matrix(dc, db)));
        fc.emplace(n, proj.at(n) * vstack(Matrix(db, dc), Matrix::identity(dc)));
    }
    ChainMap from_b = ChainMap::from_matrices(b, object, fb);
    ChainMap from_c = ChainMap::from_matrices(c, object, fc);
    return {std::move(object), std::move(from_b), std::move(from_c), std::move(sect)};
}

ChainMap pushout_induced(const PushoutCC& p, const ChainMap& u, const ChainMap& v) {
    if (u.codomain() != v.codomain())
        throw ShapeError("pushout_induced: the two legs have different codomains");
    std::map<int, Matrix> maps;
    for (const auto& [n, s] : p.section)
        maps.emplace(n, hstack(u.at(n).matrix(), v.at(n).matrix()) * s);
    ChainMap out = ChainMap::from_matrices(p.object, u.codomain(), maps);
    if (compose_cc(out, p.from_b) != u || compose_cc(out, p.from_c) != v)
        throw ValidationError("pushout_induced: the legs do not agree on the common domain");
    return out;
}

ChainMap pushout_product_cc(const ChainMap& f, const ChainMap& g) {
    const ChainMap left = tensor_ccmap(f, identity_cc(g.domain()));
    const ChainMap right = tensor_ccmap(identity_cc(f.domain()), g);
    PushoutCC p = pushout_cc(left, right);
    return pushout_induced(p, tensor_ccmap(identity_cc(f.codomain()), g), tensor_ccmap(f, identity_cc(g.codomain())));
}

std::optional<ChainMap> solve_lifting(const ChainMap& i, const ChainMap& p, const ChainMap& u, const ChainMap& v) {
    if (u.domain() != i.domain() || u.codomain() != p.domain() || v.domain() != i.codomain() ||
        v.codomain() != p.codomain())
        throw ShapeError("lifting square: maps do not fit together");
    for (int n : i.domain().support())
        if (p.at(n).matrix() * u.at(n).matrix() != v.at(n).matrix() * i.at(n).matrix())
            throw ValidationError("lifting square does not commute in degree " + deg(n));
    const ChainComplex& a = i.domain();
    const ChainComplex& b = i.codomain();
    const ChainComplex& x = p.domain();
    const ChainComplex& y = p.codomain();

    // Unknowns: the entries of h_n : B_n -> X_n, row-major, n increasing.
    std::map<int, std::size_t> offset;
    std::size_t unknowns = 0;
    for (int n : b.support())
        if (x.dim(n) > 0) {
            offset[n] = unknowns;
            unknowns += x.dim(n) * b.dim(n);
        }
    auto var = [&](int n, std::size_t r, std::size_t c) { return offset.at(n) + r * b.dim(n) + c; };
    auto has = [&](int n) { return offset.count(n) > 0; };

    std::size_t rows = 0;
    for (int n : a.support())
        rows += x.dim(n) * a.dim(n);
    for (int n : b.support())
        rows += y.dim(n) * b.dim(n) + x.dim(n - 1) * b.dim(n);
    Matrix m(rows, unknowns), rhs(rows, 1);
    std::size_t row = 0;
    // h_n i_n = u_n
    for (int n : a.support()) {
        const Matrix in = i.at(n).matrix(), un = u.at(n).matrix();
        for (std::size_t r = 0; r < x.dim(n); ++r)
            for (std::size_t c = 0; c < a.dim(n); ++c, ++row) {
                if (has(n))
                    for (std::size_t k = 0; k < b.dim(n); ++k)
                        m(row, var(n, r, k)) += in(k, c);
                rhs(row, 0) = un(r, c);
            }
    }
    // p_n h_n = v_n
    for (int n : b.support()) {
        const Matrix pn = p.at(n).matrix(), vn = v.at(n).matrix();
        for (std::size_t r = 0; r < y.dim(n); ++r)
            for (std::size_t c = 0; c < b.dim(n); ++c, ++row) {
                if (has(n))
                    for (std::size_t k = 0; k < x.dim(n); ++k)
                        m(row, var(n, k, c)) += pn(r, k);
                rhs(row, 0) = vn(r, c);
            }
    }
    // d h_n - h_(n-1) d = 0
    for (int n : b.support()) {
        const Matrix dx = x.differential(n).matrix(), db = b.differential(n).matrix();
        for (std::size_t r = 0; r < x.dim(n - 1); ++r)
            for (std::size_t c = 0; c < b.dim(n); ++c, ++row) {
                if (has(n))
                    for (std::size_t k = 0; k < x.dim(n); ++k)
                        m(row, var(n, k, c)) += dx(r, k);
                if (has(n - 1))
                    for (std::size_t k = 0; k < b.dim(n - 1); ++k)
                        m(row, var(n - 1, r, k)) -= db(k, c);
            }
    }
    std::optional<Matrix> sol = solve(m, rhs);
    if (!sol)
        return std::nullopt;
    std::map<int, Matrix> maps;
    for (const auto& [n, off] : offset) {
        Matrix h(x.dim(n), b.dim(n));
        for (std::size_t r = 0; r < h.rows(); ++r)
            for (std::size_t c = 0; c < h.cols(); ++c)
                h(r, c) = (*sol)(var(n, r, c), 0);
        maps.emplace(n, std::move(h));
    }
    return ChainMap::from_matrices(b, x, maps);
}

namespace {

std::string face(std::size_t i) { return "d_" + std::to_string(i); }
std::string degen(std::size_t i) { return "s_" + std::to_string(i); }

void require_equal(const ChainMap& lhs, const ChainMap& rhs, const std::string& identity, std::size_t level) {
    if (lhs != rhs)
        throw ValidationError("simplicial identity " + identity + " fails at level " + std::to_string(level));
}

} // namespace

TruncatedSimplicialComplex::TruncatedSimplicialComplex(std::vector<ChainComplex> levels,
                                                       std::vector<std::vector<ChainMap>> faces,
                                                       std::vector<std::vector<ChainMap>> degeneracies)
    : levels_(std::move(levels)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies)) {
    if (levels_.empty())
        throw ShapeError("a truncated simplicial complex needs level 0");
    const std::size_t top = levels_.size() - 1;
    faces_.resize(levels_.size());
    degeneracies_.resize(levels_.size());
    for (std::size_t s = 0; s <= top; ++s) {
        if (faces_[s].size() != (s == 0 ? 0 : s + 1))
            throw ShapeError("level " + std::to_string(s) + " needs " + std::to_string(s == 0 ? 0 : s + 1) + " faces");
        if (degeneracies_[s].size() != (s == top ? 0 : s + 1))
            throw ShapeError("level " + std::to_string(s) + " needs " + std::to_string(s == top ? 0 : s + 1) +
                             " degeneracies");
        for (std::size_t i = 0; i < faces_[s].size(); ++i)
            if (faces_[s][i].domain() != levels_[s] || faces_[s][i].codomain() != levels_[s - 1])
                throw ShapeError(face(i) + " at level " + std::to_string(s) + " has the wrong endpoints");
        for (std::size_t i = 0; i < degeneracies_[s].size(); ++i)
            if (degeneracies_[s][i].domain() != levels_[s] || degeneracies_[s][i].codomain() != levels_[s + 1])
                throw ShapeError(degen(i) + " at level " + std::to_string(s) + " has the wrong endpoints");
    }
    for (std::size_t s = 2; s <= top; ++s)
        for (std::size_t j = 1; j <= s; ++j)
            for (std::size_t i = 0; i < j; ++i)
                require_equal(compose_cc(faces_[s - 1][i], faces_[s][j]), compose_cc(faces_[s - 1][j - 1], faces_[s][i]),
                              face(i) + " " + face(j) + " = " + face(j - 1) + " " + face(i), s);
    for (std::size_t s = 0; s + 2 <= top; ++s)
        for (std::size_t j = 0; j <= s; ++j)
            for (std::size_t i = 0; i <= j; ++i)
                require_equal(compose_cc(degeneracies_[s + 1][i], degeneracies_[s][j]),
                              compose_cc(degeneracies_[s + 1][j + 1], degeneracies_[s][i]),
                              degen(i) + " " + degen(j) + " = " + degen(j + 1) + " " + degen(i), s);
    for (std::size_t s = 0; s + 1 <= top; ++s)
        for (std::size_t j = 0; j <= s; ++j)
            for (std::size_t i = 0; i <= s + 1; ++i) {
                const ChainMap lhs = compose_cc(faces_[s + 1][i], degeneracies_[s][j]);
                const std::string name = face(i) + " " + degen(j);
                if (i == j || i == j + 1)
                    require_equal(lhs, identity_cc(levels_[s]), name + " = id", s);
                else if (i < j)
                    require_equal(lhs, compose_cc(degeneracies_[s - 1][j - 1], faces_[s][i]),
                                  name + " = " + degen(j - 1) + " " + face(i), s);
                else
                    require_equal(lhs, compose_cc(degeneracies_[s - 1][j], faces_[s][i - 1]),
                                  name + " = " + degen(j) + " " + face(i - 1), s);
            }
}

TruncatedSimplicialComplex constant_simplicial(const ChainComplex& v, std::size_t n) {
    std::vector<ChainComplex> levels(n + 1, v);
    std::vector<std::vector<ChainMap>> faces(n + 1), degens(n + 1);
    const ChainMap id = identity_cc(v);
    for (std::size_t s = 0; s <= n; ++s) {
        if (s > 0)
            faces[s].assign(s + 1, id);
        if (s < n)
            degens[s].assign(s + 1, id);
    }
    return TruncatedSimplicialComplex(std::move(levels), std::move(faces), std::move(degens));
}

void validate_simplicial_map(const SimplicialChainMap& f) {
    const std::size_t top = f.domain.truncation();
    if (f.codomain.truncation() != top || f.levels.size() != top + 1)
        throw ShapeError("simplicial map: truncation levels differ");
    for (std::size_t s = 0; s <= top; ++s) {
        if (f.levels[s].domain() != f.domain.level(s) || f.levels[s].codomain() != f.codomain.level(s))
            throw ShapeError("simplicial map: level " + std::to_string(s) + " has the wrong endpoints");
        for (std::size_t i = 0; i < f.domain.faces()[s].size(); ++i)
            if (compose_cc(f.levels[s - 1], f.domain.faces()[s][i]) != compose_cc(f.codomain.faces()[s][i], f.levels[s]))
                throw ValidationError("simplicial map does not commute with " + face(i) + " at level " +
                                      std::to_string(s));
        for (std::size_t i = 0; i < f.domain.degeneracies()[s].size(); ++i)
            if (compose_cc(f.levels[s + 1], f.domain.degeneracies()[s][i]) !=
                compose_cc(f.codomain.degeneracies()[s][i], f.levels[s]))
                throw ValidationError("simplicial map does not commute with " + degen(i) + " at level " +
                                      std::to_string(s));
    }
}

namespace {

struct TotalLayout {
    std::set<int> degrees;
    std::map<int, std::vector<std::size_t>> offset; // degree -> offset of level s
    std::map<int, std::size_t> dim;
};

TotalLayout total_layout(const TruncatedSimplicialComplex& v) {
    TotalLayout t;
    for (std::size_t s = 0; s <= v.truncation(); ++s)
        for (int n : v.level(s).support())
            t.degrees.insert(n + static_cast<int>(s));
    for (int n : t.degrees) {
        std::size_t acc = 0;
        for (std::size_t s = 0; s <= v.truncation(); ++s) {
            t.offset[n].push_back(acc);
            acc += v.level(s).dim(n - static_cast<int>(s));
        }
        t.dim[n] = acc;
    }
    return t;
}

} // namespace

ChainComplex totalize(const TruncatedSimplicialComplex& v) {
    const TotalLayout t = total_layout(v);
    std::map<int, VectorSpace> comps;
    for (int n : t.degrees) {
        std::vector<VectorSpace> parts;
        for (std::size_t s = 0; s <= v.truncation(); ++s)
            parts.push_back(v.level(s).component(n - static_cast<int>(s)));
        comps.emplace(n, direct_sum(parts).space);
    }
    std::map<int, LinearMap> diffs;
    for (int n : t.degrees) {
        if (!t.degrees.count(n - 1))
            continue;
        Matrix d(t.dim.at(n - 1), t.dim.at(n));
        for (std::size_t s = 0; s <= v.truncation(); ++s) {
            const int tdeg = n - static_cast<int>(s);
            const std::size_t col = t.offset.at(n)[s];
            if (v.level(s).dim(tdeg) == 0)
                continue;
            d.add_block(t.offset.at(n - 1)[s], col, sign(static_cast<int>(s)) * v.level(s).differential(tdeg).matrix());
            if (s == 0)
                continue;
            Matrix faces(v.level(s - 1).dim(tdeg), v.level(s).dim(tdeg));
            for (std::size_t i = 0; i <= s; ++i)
                faces += sign(static_cast<int>(i)) * v.faces()[s][i].at(tdeg).matrix();
            d.add_block(t.offset.at(n - 1)[s - 1], col, faces);
        }
        diffs.emplace(n, LinearMap(comps.at(n), comps.at(n - 1), d));
    }
    return ChainComplex(std::move(comps), std::move(diffs));
}

ChainMap totalize_map(const SimplicialChainMap& f) {
    validate_simplicial_map(f);
    ChainComplex dom = totalize(f.domain), cod = totalize(f.codomain);
    const TotalLayout td = total_layout(f.domain), tc = total_layout(f.codomain);
    std::map<int, Matrix> maps;
    for (int n : td.degrees) {
        if (!tc.degrees.count(n))
            continue;
        Matrix m(tc.dim.at(n), td.dim.at(n));
        for (std::size_t s = 0; s < f.levels.size(); ++s)
            m.set_block(tc.offset.at(n)[s], td.offset.at(n)[s], f.levels[s].at(n - static_cast<int>(s)).matrix());
        maps.emplace(n, std::move(m));
    }
    return ChainMap::from_matrices(std::move(dom), std::move(cod), maps);
}

bool is_total_quasi_iso(const SimplicialChainMap& f) { return is_quasi_iso(totalize_map(f)); }

} // namespace extlin
