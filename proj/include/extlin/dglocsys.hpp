#pragma once

#include "extlin/chaincx.hpp"
#include "extlin/locsys.hpp"

#include <optional>

namespace extlin {

/// A functor from a finite groupoid into chain complexes.
class DgLocalSystem {
public:
    DgLocalSystem() = default;
    /// Validates endpoints, identities and composition (hence invertibility) of the transports.
    DgLocalSystem(Grpd base, std::vector<ChainComplex> fibers, std::vector<ChainMap> transport);

    const Grpd& base() const noexcept { return base_; }
    const ChainComplex& fiber(std::size_t x) const { return fibers_.at(x); }
    const ChainMap& transport(std::size_t m) const { return transport_.at(m); }
    const std::vector<ChainComplex>& fibers() const noexcept { return fibers_; }
    const std::vector<ChainMap>& transports() const noexcept { return transport_; }
    /// Smallest interval containing the support of every fiber; empty when all fibers vanish.
    std::vector<int> degrees() const;

    friend bool operator==(const DgLocalSystem& a, const DgLocalSystem& b);
    friend bool operator!=(const DgLocalSystem& a, const DgLocalSystem& b) { return !(a == b); }

private:
    Grpd base_;
    std::vector<ChainComplex> fibers_;
    std::vector<ChainMap> transport_;
};

/// phi_f : V -> W over f, with chain map components phi_x : V_x -> W_{f(x)}.
class DgLocMorphism {
public:
    DgLocMorphism() = default;
    /// Validates naturality against every morphism of the domain base.
    DgLocMorphism(DgLocalSystem domain, DgLocalSystem codomain, GroupoidFunctor f, std::vector<ChainMap> components);

    const DgLocalSystem& domain() const noexcept { return domain_; }
    const DgLocalSystem& codomain() const noexcept { return codomain_; }
    const GroupoidFunctor& base_map() const noexcept { return f_; }
    const ChainMap& component(std::size_t x) const { return components_.at(x); }
    const std::vector<ChainMap>& components() const noexcept { return components_; }

    friend bool operator==(const DgLocMorphism& a, const DgLocMorphism& b);
    friend bool operator!=(const DgLocMorphism& a, const DgLocMorphism& b) { return !(a == b); }

private:
    DgLocalSystem domain_;
    DgLocalSystem codomain_;
    GroupoidFunctor f_;
    std::vector<ChainMap> components_;
};

DgLocalSystem constant_dg(const Grpd& x, const ChainComplex& c);
/// A local system of vector spaces placed in a single degree.
DgLocalSystem concentrated_dg(const LocalSystem& v, int degree);
/// L (x) C: fiber L_x (x) C with transports L_m (x) id.
DgLocalSystem tensor_with(const LocalSystem& l, const ChainComplex& c);
/// alpha (x) q over the base map of alpha.
DgLocMorphism tensor_with_mor(const LocMorphism& alpha, const ChainMap& q);
DgLocMorphism identity_dg(const DgLocalSystem& v);
DgLocMorphism compose_dg(const DgLocMorphism& g, const DgLocMorphism& f);
DgLocalSystem pullback_dg(const GroupoidFunctor& f, const DgLocalSystem& v);
/// u* of a morphism over the identity.
DgLocMorphism pullback_dg_mor(const GroupoidFunctor& u, const DgLocMorphism& phi);

/// The degree-n part: fibers V_x,n and transports V_m,n.
LocalSystem degree_slice(const DgLocalSystem& v, int n);
LocMorphism degree_slice(const DgLocMorphism& phi, int n);

/// f_! computed degreewise by the coend formula, with the induced differentials.
struct DgLeftKan {
    GroupoidFunctor f;
    DgLocalSystem source;
    DgLocalSystem value;
    DgLocMorphism unit; // V -> f_! V over f
    std::map<int, LeftKan> slices;
};
DgLeftKan pushforward_dg(const GroupoidFunctor& f, const DgLocalSystem& v);
/// phi : V -> W over f  |->  f_! V -> W over the identity.
DgLocMorphism adjunct_dg(const DgLeftKan& k, const DgLocMorphism& phi);
DgLocMorphism adjunct_dg(const DgLocMorphism& phi);

struct ExternalTensorDg {
    DgLocalSystem system;
    Product base;
};
/// Fibers tensor_cc(V_x, W_y) over the object (x, y), transports tensor_ccmap.
ExternalTensorDg external_tensor_dg(const DgLocalSystem& v, const DgLocalSystem& w);
DgLocMorphism external_tensor_dg_mor(const DgLocMorphism& phi, const DgLocMorphism& gamma);

/// Pushout of B <- A -> C over a common base along morphisms over the identity.
struct PushoutDg {
    DgLocalSystem object;
    DgLocMorphism from_b;
    DgLocMorphism from_c;
    std::vector<PushoutCC> fibers;
};
PushoutDg pushout_dg(const DgLocMorphism& alpha, const DgLocMorphism& beta);
DgLocMorphism pushout_induced_dg(const PushoutDg& p, const DgLocMorphism& u, const DgLocMorphism& v);

struct Classification {
    bool weq = false;
    bool fib = false;
    bool cof = false;
    friend bool operator==(const Classification&, const Classification&) = default;
};
/// weq: base equivalence and objectwise quasi-isomorphism. fib: base isofibration and objectwise
/// degreewise surjection. cof: base injective on objects and adjunct degreewise injective.
Classification classify(const DgLocMorphism& phi);
bool is_weak_equivalence(const DgLocMorphism& phi);
/// Whether phi [x] gamma is a weak equivalence; both inputs must be weak equivalences.
bool check_homotopical(const DgLocMorphism& phi, const DgLocMorphism& gamma);

/// The Cartesian pushout-product of the bases with its coprojections and comparison map.
struct BasePushoutProduct {
    Grpd groupoid;
    GroupoidFunctor from_left;  // X' x Y -> P
    GroupoidFunctor from_right; // X x Y' -> P
    GroupoidFunctor comparison; // P -> X' x Y'
    Product left, right, corner, target;
};
/// Supported when f or g is an identity functor or all four bases are discrete.
BasePushoutProduct base_pushout_product(const GroupoidFunctor& f, const GroupoidFunctor& g);

struct ExternalPushoutProduct {
    BasePushoutProduct base;
    DgLocMorphism result; // over base.comparison
    /// Per object (x', y') of X' x Y': the adjunct of the result agrees, up to an isomorphism
    /// of domains over the common codomain, with the chain-level pushout-product of the
    /// pulled-back adjuncts of phi and gamma.
    std::vector<bool> matches_formula;
};
ExternalPushoutProduct external_pushout_product(const DgLocMorphism& phi, const DgLocMorphism& gamma);

/// The finite members of the covered generating cofibrations in degree n, in the order
/// (empty -> point), (two points -> pair), i_n over (two points -> pair); and the covered
/// generating acyclic cofibrations (point -> pair), j_n over (point -> pair).
std::vector<DgLocMorphism> covered_generating_cofibrations(int n);
std::vector<DgLocMorphism> covered_generating_acyclic_cofibrations(int n);

/// A diagonal filler h for the square p u = v i: base lift by search, fiber lift by the
/// chain-level solver at one basepoint per component, extended by transport and verified.
std::optional<DgLocMorphism> lift_covered(const DgLocMorphism& i, const DgLocMorphism& p, const DgLocMorphism& u,
                                          const DgLocMorphism& v);

} // namespace extlin
