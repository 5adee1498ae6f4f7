#pragma once

#include "extlin/finvect.hpp"
#include "extlin/groupoid.hpp"

#include <memory>
#include <string>
#include <vector>

namespace extlin {

/// A functor from a finite groupoid to finite-dimensional vector spaces. Functoriality
/// is checked on construction for every composable pair.
class LocalSystem {
public:
    LocalSystem() = default;
    LocalSystem(Grpd base, std::vector<VectorSpace> fibers, std::vector<LinearMap> transport);
    /// Transports given as bare matrices between the listed fibers.
    static LocalSystem from_matrices(Grpd base, std::vector<VectorSpace> fibers, const std::vector<Matrix>& transport);

    const Grpd& base() const noexcept { return base_; }
    const VectorSpace& fiber(std::size_t x) const { return fibers_.at(x); }
    const LinearMap& transport(std::size_t m) const { return transport_.at(m); }
    const std::vector<VectorSpace>& fibers() const noexcept { return fibers_; }
    const std::vector<LinearMap>& transports() const noexcept { return transport_; }
    std::size_t total_dim() const;

    friend bool operator==(const LocalSystem& a, const LocalSystem& b);
    friend bool operator!=(const LocalSystem& a, const LocalSystem& b) { return !(a == b); }

private:
    Grpd base_;
    std::vector<VectorSpace> fibers_;
    std::vector<LinearMap> transport_;
};

/// phi_f : V -> W over f : X -> Y, stored as components phi_x : V_x -> W_{f(x)}.
class LocMorphism {
public:
    LocMorphism() = default;
    /// Validates naturality against every morphism of the domain base.
    LocMorphism(LocalSystem domain, LocalSystem codomain, GroupoidFunctor f, std::vector<LinearMap> components);
    static LocMorphism from_matrices(LocalSystem domain, LocalSystem codomain, GroupoidFunctor f,
                                     const std::vector<Matrix>& components);

    const LocalSystem& domain() const noexcept { return domain_; }
    const LocalSystem& codomain() const noexcept { return codomain_; }
    const GroupoidFunctor& base_map() const noexcept { return f_; }
    const LinearMap& component(std::size_t x) const { return components_.at(x); }
    const std::vector<LinearMap>& components() const noexcept { return components_; }

    friend bool operator==(const LocMorphism& a, const LocMorphism& b);

private:
    LocalSystem domain_;
    LocalSystem codomain_;
    GroupoidFunctor f_;
    std::vector<LinearMap> components_;
};

// Basic systems.

LocalSystem constant_system(const Grpd& base, const VectorSpace& v);
/// The tensor unit: K at every object, identity transports.
LocalSystem unit_system(const Grpd& base);
LocalSystem zero_system(const Grpd& base);
/// A representation of G on `space` as a system over BG; rho[g] is the action of g.
LocalSystem representation(const FiniteGroup& g, const VectorSpace& space, const std::vector<Matrix>& rho);
LocalSystem regular_representation(const FiniteGroup& g);

LocMorphism identity_loc(const LocalSystem& v);
/// Base map g o f, components psi_{f(x)} o phi_x.
LocMorphism compose_loc(const LocMorphism& psi, const LocMorphism& phi);
/// Base functor bijective and every component invertible.
bool is_iso(const LocMorphism& phi);
LocMorphism inverse_loc(const LocMorphism& phi);

// Base change.

/// (f* W)_x = W_{f(x)}.
LocalSystem pullback(const GroupoidFunctor& f, const LocalSystem& w);
/// f* on a morphism over id_Y.
LocMorphism pullback_mor(const GroupoidFunctor& f, const LocMorphism& alpha);
/// The identity-component morphism f* W -> W over f.
LocMorphism cartesian_lift(const GroupoidFunctor& f, const LocalSystem& w);
LocalSystem restrict_to(const LocalSystem& v, const std::vector<std::size_t>& objects);

/// f_! V computed as a coend: at y the coordinates are blocks V_x indexed by pairs
/// (x, a : f(x) -> y), divided by the relations coming from every non-identity
/// morphism of the source.
struct LeftKan {
    GroupoidFunctor f;
    LocalSystem source;
    LocalSystem value;                             // f_! V over Y
    LocMorphism unit;                              // V -> f* f_! V over id_X
    std::vector<std::size_t> block_offset;         // at x * |Mor Y| + a, for a : f(x) -> y
    std::vector<std::size_t> coord_dim;            // per y
    std::vector<Matrix> projection;                // coordinates -> fiber
    std::vector<Matrix> section;                   // fiber -> coordinates
};
LeftKan pushforward(const GroupoidFunctor& f, const LocalSystem& v);

/// f_* V computed as an end: at y the coordinates are blocks V_x indexed by pairs
/// (x, a : y -> f(x)) constrained by every morphism of the source.
struct RightKan {
    GroupoidFunctor f;
    LocalSystem source;
    LocalSystem value;                             // f_* V over Y
    LocMorphism counit;                            // f* f_* V -> V over id_X
    std::vector<std::size_t> block_offset;         // at x * |Mor Y| + a, for a : y -> f(x)
    std::vector<std::size_t> coord_dim;
    std::vector<Matrix> inclusion;                 // fiber -> coordinates
    std::vector<Matrix> retraction;                // coordinates -> fiber
};
RightKan sections(const GroupoidFunctor& f, const LocalSystem& v);

/// phi : V -> W over f  |->  its adjunct f_! V -> W over id_Y.
LocMorphism adjunct(const LeftKan& k, const LocMorphism& phi);
LocMorphism adjunct(const LocMorphism& phi);
/// psi : f_! V -> W over id_Y  |->  psi o eta, a morphism V -> W over f.
LocMorphism adjunct_inverse(const LeftKan& k, const LocMorphism& psi);
/// f_!(alpha) for alpha : V -> V' over id_X, given both extensions.
LocMorphism pushforward_mor(const LeftKan& kv, const LeftKan& kw, const LocMorphism& alpha);
/// Counit f_! f* W -> W; `k` must be the extension of f* W.
LocMorphism left_counit(const LeftKan& k, const LocalSystem& w);

/// psi : f* W -> V over id_X  |->  W -> f_* V over id_Y.
LocMorphism right_adjunct(const RightKan& k, const LocalSystem& w, const LocMorphism& psi);
/// chi : W -> f_* V over id_Y  |->  eps o f* chi.
LocMorphism right_adjunct_inverse(const RightKan& k, const LocMorphism& chi);
LocMorphism sections_mor(const RightKan& kv, const RightKan& kw, const LocMorphism& alpha);
/// Unit W -> f_* f* W; `k` must be the extension of f* W.
LocMorphism right_unit(const RightKan& k, const LocalSystem& w);

struct TriangleReport {
    bool left_first = false;  // eps_{f_! V} o f_!(eta_V) = id
    bool left_second = false; // f*(eps_W) o eta_{f* W} = id
    bool right_first = false; // f_*(eps_V) o eta_{f_* V} = id
    bool right_second = false; // eps_{f* W} o f*(eta_W) = id
    bool all() const { return left_first && left_second && right_first && right_second; }
};
/// Triangle identities of f_! -| f* -| f_* at V over X and W over Y.
TriangleReport triangle_identities(const GroupoidFunctor& f, const LocalSystem& v, const LocalSystem& w);

/// The same extensions computed through skeleta: induced and coinduced representations of
/// the automorphism groups at basepoints, pulled back along the skeleton projection, with
/// comparison isomorphisms to the coend/end versions.
struct SkeletalKan {
    LocalSystem value;
    LocMorphism comparison; // value -> generic f_! V (left) or generic f_* V -> value (right)
};
SkeletalKan pushforward_skeletal(const GroupoidFunctor& f, const LocalSystem& v, const LeftKan& generic);
SkeletalKan sections_skeletal(const GroupoidFunctor& f, const LocalSystem& v, const RightKan& generic);

/// p_! V -> p_* V for p : X -> pt, X discrete.
struct Ambidexterity {
    LocMorphism witness;
    LocMorphism inverse;
};
Ambidexterity ambidexterity_witness(const LocalSystem& v);

// Coproducts and tensor structures.

struct CoproductLoc {
    LocalSystem system;
    Coproduct base;
    std::vector<LocMorphism> coprojections;
};
CoproductLoc coproduct_loc(const std::vector<LocalSystem>& summands);

struct ExternalTensor {
    LocalSystem system;
    Product base;
};
/// Fiber V_x (x) W_y over (x, y), transport V_m (x) W_n.
ExternalTensor external_tensor(const LocalSystem& v, const LocalSystem& w);
LocMorphism external_tensor_mor(const LocMorphism& phi, const LocMorphism& gamma);
/// X . W: fiber W_y over (x, y), transport W_n.
LocalSystem grpd_tensoring(const Grpd& x, const LocalSystem& w);
/// Fiberwise tensor and internal hom over a common base.
LocalSystem tensor_loc(const LocalSystem& v, const LocalSystem& w);
LocalSystem internal_hom_loc(const LocalSystem& v, const LocalSystem& w);
/// R over discrete Y, W over Z: a system over Z^Y with fiber (+)_y [R_y, W_{z_y}].
struct ExternalHom {
    LocalSystem system;
    Product base;
};
ExternalHom external_hom(const LocalSystem& r, const LocalSystem& w);

/// Coordinates of all component families V_x -> W_{f(x)} that are natural, as the kernel of
/// the naturality constraints inside (+)_x [V_x, W_{f(x)}].
Kernel morphism_space(const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f);
LocMorphism morphism_from_coordinates(const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f,
                                      const Matrix& column);

// Colimits.

/// A BG-shaped diagram: G acts on the base by alpha_g and on the system by beta_g over alpha_g.
struct BGDiagram {
    GroupoidAction action;
    LocalSystem system;
    std::vector<LocMorphism> beta;
};
void validate_diagram(const BGDiagram& d);

struct LocColimit {
    LocalSystem system;
    OrbitGroupoid base;
    LocMorphism cocone;     // system of the diagram -> colimit, over the quotient
    LeftKan pushed;         // q_! of the diagram's system
    std::vector<LocMorphism> pushed_action; // q_!(beta_g) as endomorphisms of q_! V
    std::vector<Matrix> projection; // (q_! V)_y -> colimit fiber
    std::vector<Matrix> section;
};
LocColimit loc_colimit(const BGDiagram& d);
/// Colimit of a discrete diagram.
CoproductLoc loc_colimit(const std::vector<LocalSystem>& discrete_diagram);
/// The map out of the colimit induced by a cocone c : V -> W over u with c o beta_g = c.
LocMorphism induced_map(const LocColimit& colim, const BGDiagram& d, const LocMorphism& cocone);
/// The diagram E G . V with beta_g = rho(g) over h |-> h g^-1, and its cocone into V over BG.
struct QuasiColimitDiagram {
    BGDiagram diagram;
    EGroupoid eg;
    LocMorphism cocone;
};
QuasiColimitDiagram quasi_colimit_diagram(const FiniteGroup& g, const LocalSystem& rho);

/// Coproduct over components of CoDisc(objects) . (automorphism representation at the basepoint),
/// with the isomorphism onto V built from connecting transports.
struct SkeletalDecomposition {
    LocalSystem system;
    LocMorphism iso;
};
SkeletalDecomposition skeletal_decomposition(const LocalSystem& v);

// Frobenius reciprocity and base change.

struct FrobeniusWitnesses {
    LocMorphism monoidal;   // f*(V (x) W) -> f*V (x) f*W over id_X
    LocMorphism closed;     // f*[V, W] -> [f*V, f*W] over id_X
    LocMorphism unit;       // f*(1) -> 1 over id_X
    LocMorphism projection; // f_!(R (x) f*V) -> f_!R (x) V over id_Y
};
/// V, W over Y; R over X.
FrobeniusWitnesses frobenius_witnesses(const GroupoidFunctor& f, const LocalSystem& v, const LocalSystem& w,
                                       const LocalSystem& r);

/// (f x id)_! pr_X* V -> pr_X'* f_! V over X' x Y.
LocMorphism beck_chevalley_product(const GroupoidFunctor& f, const Grpd& y, const LocalSystem& v);
/// f'_! i_X* V -> i_Y* f_! V for the full subgroupoid Y' of Y on `objects` and X' its preimage.
/// Y' must be a union of connected components.
LocMorphism beck_chevalley_embedding(const GroupoidFunctor& f, const std::vector<std::size_t>& objects,
                                     const LocalSystem& v);

/// (G . V) / H  ~  (G/H) . V for a subgroup H of G and an H-representation V, built from a
/// section of G -> G/H. Returns both maps between the coinvariant space and the tensoring.
struct QuotientIso {
    VectorSpace quotient;  // coinvariants of G . V under h.(g, v) = (g h^-1, h v)
    VectorSpace tensoring; // (G/H) . V
    LinearMap forward;
    LinearMap backward;
    std::vector<std::size_t> section; // coset index -> chosen representative
};
QuotientIso quotient_iso(const FiniteGroup& g, const std::vector<std::size_t>& subgroup, const VectorSpace& v,
                         const std::vector<Matrix>& rho);

} // namespace extlin
