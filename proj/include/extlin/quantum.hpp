#pragma once

#include "extlin/locsys.hpp"

#include <string>
#include <vector>

namespace extlin {

/// A finite set of classical outcomes with its map to the point.
struct BranchSet {
    Grpd set;
    GroupoidFunctor p; // B -> pt
    std::size_t size() const { return set->num_objects(); }
};
/// Throws ValidationError on an empty or repeated outcome list.
BranchSet branch_set(const std::vector<std::string>& outcomes);

/// A local system over a discrete base, read as a bundle of state spaces.
using QuantumBundle = LocalSystem;

/// The measurement comonad p* p_* on bundles over B.
class MeasureComonad {
public:
    explicit MeasureComonad(BranchSet b);

    const BranchSet& branches() const noexcept { return b_; }
    /// The constant bundle on the direct sum of the fibers.
    QuantumBundle apply(const QuantumBundle& v) const;
    /// p* p_* on a morphism over the identity of B.
    LocMorphism apply(const LocMorphism& phi) const;
    /// epsilon_V : p* p_* V -> V, at b the projection onto the b-th summand.
    LocMorphism counit(const QuantumBundle& v) const;
    /// delta_V : p* p_* V -> p* p_* p* p_* V, the pullback of the unit of p* -| p_* at p_* V.
    LocMorphism comultiplication(const QuantumBundle& v) const;

private:
    BranchSet b_;
};
MeasureComonad measure_comonad(const BranchSet& b);

struct ComonadLaws {
    bool left_counit = false;  // epsilon_(Box V) o delta_V = id
    bool right_counit = false; // Box(epsilon_V) o delta_V = id
    bool coassociative = false; // delta_(Box V) o delta_V = Box(delta_V) o delta_V
    bool all() const { return left_counit && right_counit && coassociative; }
};
ComonadLaws check_comonad_laws(const MeasureComonad& box, const QuantumBundle& v);

/// Preparation in branch b of a state space v over the point: the b-th component of the unit of
/// p_! -| p* at v, a map v -> p_! p* v that includes v as the b-th summand.
LocMorphism prepare(const BranchSet& b, std::size_t outcome, const QuantumBundle& v);
LocMorphism prepare(const BranchSet& b, const std::string& outcome, const QuantumBundle& v);

/// epsilon_c o w o prepare(b) : v -> v for every outcome c, where w is the ambidexterity witness
/// p_! p* v -> p_* p* v; the identity for c = b and zero otherwise.
std::vector<Matrix> measure_after_prepare(const BranchSet& b, std::size_t outcome, const QuantumBundle& v);

struct QubitReport {
    Scalar q0, q1;
    std::vector<Matrix> measurement;      // epsilon_0, epsilon_1 on C[{0,1}]
    std::vector<Scalar> outcomes;         // epsilon_b applied to q0|0> + q1|1>
    std::vector<Matrix> preparation;      // prepare(0), prepare(1) as columns
    std::vector<std::pair<std::string, bool>> checks;
    std::string preparation_source;
    std::string measurement_source;
    bool verified() const;
};
QubitReport qubit_demo(const Scalar& q0 = Scalar(Rational(3, 5)), const Scalar& q1 = Scalar(Rational(0), Rational(4, 5)));
std::string render_text(const QubitReport& r);

} // namespace extlin
