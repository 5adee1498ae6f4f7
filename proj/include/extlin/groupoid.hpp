#pragma once

#include "extlin/group.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace extlin {

struct MorphismData {
    std::string id;
    std::size_t src;
    std::size_t dst;
};

/// Finite groupoid with a full composition table. Laws are checked exhaustively on
/// construction, so a FinGroupoid value is always valid.
class FinGroupoid {
public:
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    /// table[g * n + f] = g o f when src(g) = dst(f), `none` otherwise.
    FinGroupoid(std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                std::vector<std::size_t> identities, std::vector<std::size_t> table);

    /// Fills the table from `comp`, called only on composable pairs.
    static FinGroupoid from_function(std::vector<std::string> objects, std::vector<MorphismData> morphisms,
                                     std::vector<std::size_t> identities,
                                     const std::function<std::size_t(std::size_t, std::size_t)>& comp);

    std::size_t num_objects() const noexcept { return objects_.size(); }
    std::size_t num_morphisms() const noexcept { return morphisms_.size(); }
    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::string& object(std::size_t x) const { return objects_.at(x); }
    const std::vector<MorphismData>& morphisms() const noexcept { return morphisms_; }
    const std::string& morphism_id(std::size_t m) const { return morphisms_.at(m).id; }
    std::size_t src(std::size_t m) const { return morphisms_[m].src; }
    std::size_t dst(std::size_t m) const { return morphisms_[m].dst; }
    std::size_t identity(std::size_t x) const { return identities_.at(x); }
    const std::vector<std::size_t>& identities() const noexcept { return identities_; }
    /// g o f; throws ShapeError when not composable.
    std::size_t compose(std::size_t g, std::size_t f) const;
    std::size_t inverse(std::size_t m) const { return inverses_[m]; }
    /// Morphisms x -> y in index order.
    const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const { return homs_[x * num_objects() + y]; }
    bool is_identity(std::size_t m) const { return identities_[src(m)] == m; }
    bool is_discrete() const noexcept { return morphisms_.size() == objects_.size(); }

    std::optional<std::size_t> find_object(const std::string& name) const;
    std::optional<std::size_t> find_morphism(const std::string& id) const;
    std::size_t object_index(const std::string& name) const;
    std::size_t morphism_index(const std::string& id) const;

    const std::vector<std::size_t>& table() const noexcept { return table_; }

    friend bool operator==(const FinGroupoid& a, const FinGroupoid& b);

private:
    void validate();

    std::vector<std::string> objects_;
    std::vector<MorphismData> morphisms_;
    std::vector<std::size_t> identities_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverses_;
    std::vector<std::vector<std::size_t>> homs_;
};

using Grpd = std::shared_ptr<const FinGroupoid>;

bool same_groupoid(const Grpd& a, const Grpd& b);

class GroupoidFunctor {
public:
    GroupoidFunctor() = default;
    /// Validates src/dst, identity and composition preservation.
    GroupoidFunctor(Grpd source, Grpd target, std::vector<std::size_t> object_map,
                    std::vector<std::size_t> morphism_map);

    static GroupoidFunctor identity(const Grpd& x);

    const Grpd& source() const noexcept { return source_; }
    const Grpd& target() const noexcept { return target_; }
    std::size_t on_object(std::size_t x) const { return object_map_.at(x); }
    std::size_t on_morphism(std::size_t m) const { return morphism_map_.at(m); }
    const std::vector<std::size_t>& object_map() const noexcept { return object_map_; }
    const std::vector<std::size_t>& morphism_map() const noexcept { return morphism_map_; }

    friend bool operator==(const GroupoidFunctor& a, const GroupoidFunctor& b);

private:
    Grpd source_;
    Grpd target_;
    std::vector<std::size_t> object_map_;
    std::vector<std::size_t> morphism_map_;
};

GroupoidFunctor compose(const GroupoidFunctor& g, const GroupoidFunctor& f);

/// Components alpha_x : F(x) -> G(x), validated natural.
class NaturalTransformation {
public:
    NaturalTransformation(GroupoidFunctor from, GroupoidFunctor to, std::vector<std::size_t> components);

    const GroupoidFunctor& from() const noexcept { return from_; }
    const GroupoidFunctor& to() const noexcept { return to_; }
    std::size_t component(std::size_t x) const { return components_.at(x); }
    const std::vector<std::size_t>& components() const noexcept { return components_; }

private:
    GroupoidFunctor from_;
    GroupoidFunctor to_;
    std::vector<std::size_t> components_;
};

// Constructors of base groupoids.

Grpd delooping(const FiniteGroup& g);
Grpd codiscrete(const std::vector<std::string>& set);
Grpd discrete(const std::vector<std::string>& set);
Grpd terminal();
Grpd empty_groupoid();

struct EGroupoid {
    Grpd groupoid;
    GroupoidFunctor q; // to delooping(G)
};
/// Action groupoid of G acting on itself by left multiplication; q sends g -> g' to g' g^-1.
EGroupoid e_groupoid(const FiniteGroup& g);

struct ActionGroupoid {
    Grpd groupoid;
    GroupoidFunctor projection; // to delooping(G)
};
/// action[g * |W| + w] = g . w. Objects W; morphisms (g,w) : w -> g.w.
ActionGroupoid action_groupoid(const FiniteGroup& g, const std::vector<std::string>& set,
                               const std::vector<std::size_t>& action);

/// Isomorphism E G -> CoDisc(G).
GroupoidFunctor e_to_codiscrete(const FiniteGroup& g, const EGroupoid& eg);

struct Product {
    Grpd groupoid;
    std::vector<GroupoidFunctor> projections;
};
/// Objects and morphisms are tuples in lexicographic order, first factor major.
Product product(const std::vector<Grpd>& factors);
Product product(const Grpd& x, const Grpd& y);

struct Coproduct {
    Grpd groupoid;
    std::vector<GroupoidFunctor> coprojections;
};
/// Object "k:x" for x in the k-th summand.
Coproduct coproduct(const std::vector<Grpd>& summands);

/// Z^Y for discrete Y: the |Y|-fold product, projections are the evaluation functors.
Product exponential(const Grpd& z, const Grpd& y);

/// [f_1, ..., f_k] : X_1 + ... + X_k -> Y.
GroupoidFunctor copair(const Coproduct& source, const std::vector<GroupoidFunctor>& legs);
/// (f_1, ..., f_k) : X -> Y_1 x ... x Y_k.
GroupoidFunctor pair(const Product& target, const std::vector<GroupoidFunctor>& legs);

struct Subgroupoid {
    Grpd groupoid;
    GroupoidFunctor inclusion;
};
/// Full subgroupoid on the given objects (kept in increasing order).
Subgroupoid full_subgroupoid(const Grpd& x, std::vector<std::size_t> objects);

GroupoidFunctor to_terminal(const Grpd& x);
GroupoidFunctor point_at(const Grpd& x, std::size_t object);
/// f x g : X x Y -> X' x Y'.
GroupoidFunctor product_functor(const GroupoidFunctor& f, const GroupoidFunctor& g, const Product& source,
                                const Product& target);

struct Components {
    std::vector<std::vector<std::size_t>> members; // objects of each component, input order
    std::vector<std::size_t> of_object;
};
Components connected_components(const FinGroupoid& x);

struct Skeleton {
    Grpd skeleton;
    GroupoidFunctor inclusion;  // iota : skeleton -> X
    GroupoidFunctor projection; // p : X -> skeleton
    std::vector<std::size_t> basepoints;
    std::vector<std::size_t> connecting; // c_x : basepoint -> x, identity at basepoints
    NaturalTransformation gamma;         // iota o p => id
};
Skeleton skeletize(const Grpd& x);

bool is_fully_faithful(const GroupoidFunctor& f);
bool is_essentially_surjective(const GroupoidFunctor& f);
bool is_equivalence(const GroupoidFunctor& f);
bool is_isofibration(const GroupoidFunctor& f);
bool is_cofibration(const GroupoidFunctor& f);
/// Bijective on objects and on morphisms.
bool is_isomorphism(const GroupoidFunctor& f);

/// A G-action on X: one automorphism functor per group element, validated.
struct GroupoidAction {
    FiniteGroup group;
    Grpd space;
    std::vector<GroupoidFunctor> act;
};
void validate_action(const GroupoidAction& a);

struct OrbitGroupoid {
    Grpd groupoid;
    GroupoidFunctor quotient;
};
/// Requires the action to be free on objects.
OrbitGroupoid orbit_groupoid(const GroupoidAction& a);
/// The functor X/G -> Z through which u : X -> Z factors; u must be constant on orbits.
GroupoidFunctor factor_through(const OrbitGroupoid& q, const GroupoidFunctor& u);
/// The canonical action h |-> h g^-1 on E G.
GroupoidAction canonical_action_on_e(const FiniteGroup& g, const EGroupoid& eg);

struct SetPushoutProduct {
    std::size_t pushout_size = 0;
    std::vector<std::string> elements; // "[x,y']" or "[x',y]" representatives
    std::vector<std::size_t> map;      // into X' x Y', index x' * |Y'| + y'
    std::vector<std::size_t> fiber_sizes;
    std::vector<std::size_t> formula_sizes;
    bool matches_formula = false;
};
/// f : X -> X', g : Y -> Y' as index maps.
SetPushoutProduct set_pushout_product(std::size_t x, std::size_t x_prime, const std::vector<std::size_t>& f,
                                      std::size_t y, std::size_t y_prime, const std::vector<std::size_t>& g);

} // namespace extlin
