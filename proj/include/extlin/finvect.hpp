#pragma once

#include "extlin/matrix.hpp"

#include <string>
#include <vector>

namespace extlin {

class VectorSpace {
public:
    VectorSpace() = default;
    /// Labels must be pairwise distinct.
    explicit VectorSpace(std::vector<std::string> labels);
    /// Basis labelled prefix0, prefix1, ...
    static VectorSpace standard(std::size_t dim, const std::string& prefix = "e");

    std::size_t dim() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    friend bool operator==(const VectorSpace& a, const VectorSpace& b) { return a.labels_ == b.labels_; }
    friend bool operator!=(const VectorSpace& a, const VectorSpace& b) { return !(a == b); }

    std::string describe() const;

private:
    std::vector<std::string> labels_;
};

class LinearMap {
public:
    LinearMap() = default;
    LinearMap(VectorSpace domain, VectorSpace codomain, Matrix matrix);

    const VectorSpace& domain() const noexcept { return domain_; }
    const VectorSpace& codomain() const noexcept { return codomain_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
    }
    friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

private:
    VectorSpace domain_;
    VectorSpace codomain_;
    Matrix matrix_;
};

LinearMap identity(const VectorSpace& v);
LinearMap zero_map(const VectorSpace& from, const VectorSpace& to);
LinearMap compose(const LinearMap& g, const LinearMap& f);
LinearMap add(const LinearMap& f, const LinearMap& g);
LinearMap scale(const Scalar& s, const LinearMap& f);

std::string pair_label(const std::string& a, const std::string& b);

VectorSpace tensor_space(const VectorSpace& v, const VectorSpace& w);
LinearMap tensor_map(const LinearMap& f, const LinearMap& g);

struct DirectSum {
    VectorSpace space;
    std::vector<LinearMap> injections;
    std::vector<LinearMap> projections;
};
/// Labels "k:label" for the k-th summand.
DirectSum direct_sum(const std::vector<VectorSpace>& summands);
DirectSum direct_sum(const VectorSpace& v, const VectorSpace& w);

/// K[S]: basis labelled by the elements of S.
VectorSpace free_space(const std::vector<std::string>& set);
/// S.V, the |S|-fold direct sum, labels "(s,v)".
VectorSpace set_tensoring(const std::vector<std::string>& set, const VectorSpace& v);
/// The canonical isomorphism S.V -> K[S] (x) V.
LinearMap set_tensoring_witness(const std::vector<std::string>& set, const VectorSpace& v);

/// [V,W] with basis e_{ij}, i over W, j over V, ordered row-major: coordinates of a
/// map are its matrix entries read row by row.
VectorSpace internal_hom(const VectorSpace& v, const VectorSpace& w);
/// Coordinates of f in internal_hom(f.domain, f.codomain), as a map K -> [V,W].
LinearMap name_of(const LinearMap& f);
/// Inverse of name_of.
LinearMap map_from_coordinates(const VectorSpace& v, const VectorSpace& w, const Matrix& column);

struct HomAdjunction {
    LinearMap curry;   // [T(x)V, W] -> [T, [V,W]]
    LinearMap uncurry; // [T, [V,W]] -> [T(x)V, W]
};
HomAdjunction hom_adjunction_witness(const VectorSpace& t, const VectorSpace& v, const VectorSpace& w);

struct Kernel {
    VectorSpace space;
    LinearMap inclusion;
    LinearMap retraction; // retraction o inclusion = id
};
struct Cokernel {
    VectorSpace space;
    LinearMap projection;
    LinearMap section; // projection o section = id
};
Kernel kernel(const LinearMap& f, const std::string& prefix = "k");
Cokernel cokernel(const LinearMap& f, const std::string& prefix = "c");
std::size_t rank(const LinearMap& f);
bool is_invertible(const LinearMap& f);
LinearMap inverse(const LinearMap& f);

LinearMap associator(const VectorSpace& u, const VectorSpace& v, const VectorSpace& w);
LinearMap symmetry(const VectorSpace& v, const VectorSpace& w);
/// V (x) K -> V and K (x) V -> V, K the one-dimensional space labelled "1".
VectorSpace unit_space();
LinearMap right_unitor(const VectorSpace& v);
LinearMap left_unitor(const VectorSpace& v);

} // namespace extlin
