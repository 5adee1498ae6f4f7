#pragma once

#include "extlin/finvect.hpp"

#include <map>
#include <optional>
#include <vector>

namespace extlin {

/// Finitely supported chain complex; the differential at n goes C_n -> C_{n-1}.
class ChainComplex {
public:
    ChainComplex() = default;
    /// Zero-dimensional components are dropped; missing differentials are zero.
    /// Throws ValidationError naming the degree if d o d != 0.
    ChainComplex(std::map<int, VectorSpace> components, std::map<int, LinearMap> differentials);
    static ChainComplex from_matrices(const std::map<int, std::size_t>& dims, const std::map<int, Matrix>& differentials,
                                      const std::string& prefix = "e");

    std::vector<int> support() const;
    bool is_zero() const noexcept { return components_.empty(); }
    int min_degree() const;
    int max_degree() const;
    VectorSpace component(int n) const;
    LinearMap differential(int n) const;
    std::size_t dim(int n) const;
    std::size_t total_dim() const;

    friend bool operator==(const ChainComplex& a, const ChainComplex& b);
    friend bool operator!=(const ChainComplex& a, const ChainComplex& b) { return !(a == b); }

private:
    std::map<int, VectorSpace> components_;
    std::map<int, LinearMap> differentials_;
};

class ChainMap {
public:
    ChainMap() = default;
    /// Throws ValidationError naming the degree if the square with the differentials fails.
    ChainMap(ChainComplex domain, ChainComplex codomain, std::map<int, LinearMap> maps);
    static ChainMap from_matrices(ChainComplex domain, ChainComplex codomain, const std::map<int, Matrix>& maps);

    const ChainComplex& domain() const noexcept { return domain_; }
    const ChainComplex& codomain() const noexcept { return codomain_; }
    LinearMap at(int n) const;
    /// Degrees where domain or codomain is nonzero.
    std::vector<int> degrees() const;

    friend bool operator==(const ChainMap& a, const ChainMap& b);
    friend bool operator!=(const ChainMap& a, const ChainMap& b) { return !(a == b); }

private:
    ChainComplex domain_;
    ChainComplex codomain_;
    std::map<int, LinearMap> maps_;
};

ChainComplex zero_complex();
/// K in degree 0.
ChainComplex unit_complex();
/// A single space in degree n.
ChainComplex concentrated(const VectorSpace& v, int n);
/// S^n: K in degree n.
ChainComplex sphere(int n);
/// D^n: K in degrees n and n-1 with identity differential.
ChainComplex disk(int n);

ChainMap identity_cc(const ChainComplex& v);
ChainMap zero_cc(const ChainComplex& from, const ChainComplex& to);
ChainMap compose_cc(const ChainMap& g, const ChainMap& f);
ChainMap add_cc(const ChainMap& f, const ChainMap& g);
ChainMap inverse_cc(const ChainMap& f);

struct DirectSumCC {
    ChainComplex complex;
    std::vector<ChainMap> injections;
    std::vector<ChainMap> projections;
};
DirectSumCC direct_sum_cc(const std::vector<ChainComplex>& summands);

/// Degree n is the sum over p + q = n of V_p (x) W_q, p increasing; on V_p (x) W_q the
/// differential is d (x) id + (-1)^p id (x) d.
ChainComplex tensor_cc(const ChainComplex& v, const ChainComplex& w);
ChainMap tensor_ccmap(const ChainMap& f, const ChainMap& g);
ChainMap right_unitor_cc(const ChainComplex& v);
/// V (x) W -> W (x) V with the sign (-1)^(pq).
ChainMap symmetry_cc(const ChainComplex& v, const ChainComplex& w);

/// Degree n is the product over k of [V_k, W_(k+n)], k increasing; the differential sends
/// f to d o f - (-1)^n f o d.
ChainComplex hom_cc(const ChainComplex& v, const ChainComplex& w);
/// Degree-0 elements of hom_cc(v, w) as families of maps, and back.
Matrix hom_coordinates(const ChainMap& f);
ChainMap chain_map_from_coordinates(const ChainComplex& v, const ChainComplex& w, const Matrix& column);

struct Homology {
    std::map<int, std::size_t> dims;        // nonzero degrees only
    std::map<int, Matrix> representatives;  // columns: cycles in C_n, one per class
    std::map<int, Matrix> classes;          // maps a cycle in C_n to its class coordinates
    std::size_t dim(int n) const;
};
Homology homology(const ChainComplex& v);
/// The map on homology in degree n, in the bases of the chosen representatives.
Matrix induced_on_homology(const ChainMap& f, int n);
Matrix induced_on_homology(const ChainMap& f, const Homology& hv, const Homology& hw, int n);
bool is_quasi_iso(const ChainMap& f);
bool is_acyclic(const ChainComplex& v);

/// Degreewise injective.
bool is_cofibration_cc(const ChainMap& f);
/// Degreewise surjective.
bool is_fibration_cc(const ChainMap& f);

struct Generators {
    ChainComplex sphere; // S^(n-1)
    ChainComplex disk;   // D^n
    ChainMap i;          // S^(n-1) -> D^n
    ChainMap j;          // 0 -> D^n
};
Generators generators(int n);

struct PushoutCC {
    ChainComplex object;
    ChainMap from_b;
    ChainMap from_c;
    std::map<int, Matrix> section; // per degree, a section of B_n + C_n -> P_n
};
/// Pushout of B <- A -> C as the degreewise cokernel of A -> B + C, a |-> (f a, -g a).
PushoutCC pushout_cc(const ChainMap& f, const ChainMap& g);
/// The map out of the pushout induced by u : B -> T and v : C -> T.
ChainMap pushout_induced(const PushoutCC& p, const ChainMap& u, const ChainMap& v);
/// For f : X -> X', g : Y -> Y' the map X' (x) Y  +_{X (x) Y}  X (x) Y' -> X' (x) Y'.
ChainMap pushout_product_cc(const ChainMap& f, const ChainMap& g);

/// A chain map h : B -> X with h o i = u and p o h = v, if one exists. The square
/// p o u = v o i is validated.
std::optional<ChainMap> solve_lifting(const ChainMap& i, const ChainMap& p, const ChainMap& u, const ChainMap& v);

/// Levels 0..N with faces d_i : level s -> s-1 (i = 0..s) and degeneracies
/// s_i : level s -> s+1 (i = 0..s, s < N).
class TruncatedSimplicialComplex {
public:
    TruncatedSimplicialComplex() = default;
    /// Throws ValidationError naming the first simplicial identity that fails.
    TruncatedSimplicialComplex(std::vector<ChainComplex> levels, std::vector<std::vector<ChainMap>> faces,
                               std::vector<std::vector<ChainMap>> degeneracies);

    std::size_t truncation() const noexcept { return levels_.empty() ? 0 : levels_.size() - 1; }
    const ChainComplex& level(std::size_t s) const { return levels_.at(s); }
    const std::vector<ChainComplex>& levels() const noexcept { return levels_; }
    /// faces()[s][i] = d_i at level s; faces()[0] is empty.
    const std::vector<std::vector<ChainMap>>& faces() const noexcept { return faces_; }
    /// degeneracies()[s][i] = s_i at level s; defined for s < N.
    const std::vector<std::vector<ChainMap>>& degeneracies() const noexcept { return degeneracies_; }

private:
    std::vector<ChainComplex> levels_;
    std::vector<std::vector<ChainMap>> faces_;
    std::vector<std::vector<ChainMap>> degeneracies_;
};

/// The constant simplicial object on v truncated at n: identity faces and degeneracies.
TruncatedSimplicialComplex constant_simplicial(const ChainComplex& v, std::size_t n);

/// Levelwise chain maps commuting with faces and degeneracies.
struct SimplicialChainMap {
    TruncatedSimplicialComplex domain;
    TruncatedSimplicialComplex codomain;
    std::vector<ChainMap> levels;
};
void validate_simplicial_map(const SimplicialChainMap& f);

/// Total degree n is the sum over s + t = n, 0 <= s <= N, s increasing, of V_(s,t); on V_(s,t)
/// the differential is (-1)^s d + sum_i (-1)^i d_i.
ChainComplex totalize(const TruncatedSimplicialComplex& v);
ChainMap totalize_map(const SimplicialChainMap& f);
bool is_total_quasi_iso(const SimplicialChainMap& f);

} // namespace extlin
