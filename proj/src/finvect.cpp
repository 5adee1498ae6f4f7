#include "extlin/finvect.hpp"

#include "extlin/errors.hpp"

#include <unordered_set>

namespace extlin {

VectorSpace::VectorSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw ValidationError("duplicate basis label '" + l + "'");
}

VectorSpace VectorSpace::standard(std::size_t dim, const std::string& prefix) {
    std::vector<std::string> labels;
    labels.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        labels.push_back(prefix + std::to_string(i));
    return VectorSpace(std::move(labels));
}

std::string VectorSpace::describe() const {
    std::string s = "<";
    for (std::size_t i = 0; i < labels_.size(); ++i)
        s += (i ? "," : "") + labels_[i];
    return s + ">";
}

LinearMap::LinearMap(VectorSpace domain, VectorSpace codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
        throw ShapeError("matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " but map is " +
                         std::to_string(domain_.dim()) + " -> " + std::to_string(codomain_.dim()));
}

LinearMap identity(const VectorSpace& v) { return LinearMap(v, v, Matrix::identity(v.dim())); }

LinearMap zero_map(const VectorSpace& from, const VectorSpace& to) {
    return LinearMap(from, to, Matrix(to.dim(), from.dim()));
}

LinearMap compose(const LinearMap& g, const LinearMap& f) {
    if (g.domain() != f.codomain())
        throw ShapeError("cannot compose: codomain " + f.codomain().describe() +
                         " does not match domain " + g.domain().describe());
    return LinearMap(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

LinearMap add(const LinearMap& f, const LinearMap& g) {
    if (f.domain() != g.domain() || f.codomain() != g.codomain())
        throw ShapeError("cannot add maps between different spaces");
    return LinearMap(f.domain(), f.codomain(), f.matrix() + g.matrix());
}

LinearMap scale(const Scalar& s, const LinearMap& f) {
    return LinearMap(f.domain(), f.codomain(), s * f.matrix());
}

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

VectorSpace tensor_space(const VectorSpace& v, const VectorSpace& w) {
    std::vector<std::string> labels;
    labels.reserve(v.dim() * w.dim());
    for (const auto& a : v.labels())
        for (const auto& b : w.labels())
            labels.push_back(pair_label(a, b));
    return VectorSpace(std::move(labels));
}

LinearMap tensor_map(const LinearMap& f, const LinearMap& g) {
    return LinearMap(tensor_space(f.domain(), g.domain()), tensor_space(f.codomain(), g.codomain()),
                     kron(f.matrix(), g.matrix()));
}

DirectSum direct_sum(const std::vector<VectorSpace>& summands) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < summands.size(); ++k)
        for (const auto& l : summands[k].labels())
            labels.push_back(std::to_string(k) + ":" + l);
    DirectSum out;
    out.space = VectorSpace(std::move(labels));
    std::size_t offset = 0;
    for (const auto& s : summands) {
        Matrix inj(out.space.dim(), s.dim());
        for (std::size_t i = 0; i < s.dim(); ++i)
            inj(offset + i, i) = Scalar(1);
        out.projections.emplace_back(out.space, s, inj.transpose());
        out.injections.emplace_back(s, out.space, std::move(inj));
        offset += s.dim();
    }
    return out;
}

DirectSum direct_sum(const VectorSpace& v, const VectorSpace& w) { return direct_sum(std::vector{v, w}); }

VectorSpace free_space(const std::vector<std::string>& set) { return VectorSpace(set); }

VectorSpace set_tensoring(const std::vector<std::string>& set, const VectorSpace& v) {
    std::vector<std::string> labels;
    for (const auto& s : set)
        for (const auto& l : v.labels())
            labels.push_back(pair_label(s, l));
    return VectorSpace(std::move(labels));
}

LinearMap set_tensoring_witness(const std::vector<std::string>& set, const VectorSpace& v) {
    VectorSpace from = set_tensoring(set, v);
    VectorSpace to = tensor_space(free_space(set), v);
    // Both bases enumerate (s, v) with s major, so the witness is the identity permutation.
    std::vector<std::size_t> perm(from.dim());
    for (std::size_t k = 0; k < perm.size(); ++k)
        perm[k] = k;
    return LinearMap(from, to, Matrix::permutation(perm, to.dim()));
}

VectorSpace internal_hom(const VectorSpace& v, const VectorSpace& w) {
    std::vector<std::string> labels;
    labels.reserve(v.dim() * w.dim());
    for (const auto& b : w.labels())
        for (const auto& a : v.labels())
            labels.push_back("[" + a + "->" + b + "]");
    return VectorSpace(std::move(labels));
}

LinearMap name_of(const LinearMap& f) {
    VectorSpace h = internal_hom(f.domain(), f.codomain());
    Matrix col(h.dim(), 1);
    const Matrix& m = f.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            col(i * m.cols() + j, 0) = m(i, j);
    return LinearMap(unit_space(), h, std::move(col));
}

LinearMap map_from_coordinates(const VectorSpace& v, const VectorSpace& w, const Matrix& column) {
    if (column.rows() != v.dim() * w.dim() || column.cols() != 1)
        throw ShapeError("coordinate vector has wrong shape");
    Matrix m(w.dim(), v.dim());
    for (std::size_t i = 0; i < w.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j)
            m(i, j) = column(i * v.dim() + j, 0);
    return LinearMap(v, w, std::move(m));
}

HomAdjunction hom_adjunction_witness(const VectorSpace& t, const VectorSpace& v, const VectorSpace& w) {
    VectorSpace left = internal_hom(tensor_space(t, v), w);
    VectorSpace right = internal_hom(t, internal_hom(v, w));
    const std::size_t nt = t.dim(), nv = v.dim(), nw = w.dim();
    // f_{c,(a,b)} sits at c*(nt*nv) + a*nv + b; its curried form g_{(c,b),a} at (c*nv + b)*nt + a.
    std::vector<std::size_t> perm(left.dim());
    for (std::size_t c = 0; c < nw; ++c)
        for (std::size_t a = 0; a < nt; ++a)
            for (std::size_t b = 0; b < nv; ++b)
                perm[c * nt * nv + a * nv + b] = (c * nv + b) * nt + a;
    Matrix p = Matrix::permutation(perm, right.dim());
    HomAdjunction out;
    out.uncurry = LinearMap(right, left, p.transpose());
    out.curry = LinearMap(left, right, std::move(p));
    return out;
}

Kernel kernel(const LinearMap& f, const std::string& prefix) {
    Nullspace ns = nullspace(f.matrix());
    Kernel out;
    out.space = VectorSpace::standard(ns.free_columns.size(), prefix);
    out.inclusion = LinearMap(out.space, f.domain(), ns.basis);
    out.retraction = LinearMap(f.domain(), out.space,
                               Matrix::selection(ns.free_columns, f.domain().dim()).transpose());
    return out;
}

Cokernel cokernel(const LinearMap& f, const std::string& prefix) {
    LeftNullspace ln = left_nullspace(f.matrix());
    Cokernel out;
    out.space = VectorSpace::standard(ln.pivots.size(), prefix);
    out.projection = LinearMap(f.codomain(), out.space, ln.basis);
    out.section = LinearMap(out.space, f.codomain(), Matrix::selection(ln.pivots, f.codomain().dim()));
    return out;
}

std::size_t rank(const LinearMap& f) { return rank(f.matrix()); }

bool is_invertible(const LinearMap& f) { return is_invertible(f.matrix()); }

LinearMap inverse(const LinearMap& f) {
    auto inv = extlin::inverse(f.matrix());
    if (!inv)
        throw ValidationError("map " + f.domain().describe() + " -> " + f.codomain().describe() +
                              " is not invertible");
    return LinearMap(f.codomain(), f.domain(), std::move(*inv));
}

LinearMap associator(const VectorSpace& u, const VectorSpace& v, const VectorSpace& w) {
    // Lexicographic ordering makes ((u,v),w) and (u,(v,w)) occupy the same position.
    VectorSpace from = tensor_space(tensor_space(u, v), w);
    VectorSpace to = tensor_space(u, tensor_space(v, w));
    return LinearMap(from, to, Matrix::identity(from.dim()));
}

LinearMap symmetry(const VectorSpace& v, const VectorSpace& w) {
    VectorSpace from = tensor_space(v, w);
    VectorSpace to = tensor_space(w, v);
    std::vector<std::size_t> perm(from.dim());
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < w.dim(); ++j)
            perm[i * w.dim() + j] = j * v.dim() + i;
    return LinearMap(from, to, Matrix::permutation(perm, to.dim()));
}

VectorSpace unit_space() { return VectorSpace({"1"}); }

LinearMap right_unitor(const VectorSpace& v) {
    return LinearMap(tensor_space(v, unit_space()), v, Matrix::identity(v.dim()));
}

LinearMap left_unitor(const VectorSpace& v) {
    return LinearMap(tensor_space(unit_space(), v), v, Matrix::identity(v.dim()));
}

} // namespace extlin
