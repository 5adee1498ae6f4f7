#pragma once

#include "extlin/chaincx.hpp"
#include "extlin/dglocsys.hpp"
#include "extlin/locsys.hpp"
#include "extlin/rng.hpp"

#include <utility>
#include <vector>

namespace extlin::gen {

/// One of: trivial, Z/2, Z/3, Z/4, Klein, Z/5, Z/6, S3 with order <= max_order.
FiniteGroup group(Rng& rng, std::size_t max_order = 6);

/// Connected components CoDisc(k_i) x BG_i, objects "x0", "x1", ..., morphisms "g:xa->xb".
Grpd groupoid_from_components(const std::vector<std::pair<FiniteGroup, std::size_t>>& components);
Grpd groupoid(Rng& rng, std::size_t max_objects = 3, std::size_t max_order = 6);
/// A groupoid with only identity morphisms on 0..max_objects objects.
Grpd finite_set(Rng& rng, std::size_t max_objects = 4, bool allow_empty = true);

/// All homomorphisms Aut(b) -> Aut(c), each as the image of every element of x.hom(b, b)
/// in the order of that list.
std::vector<std::vector<std::size_t>> automorphism_homs(const FinGroupoid& x, std::size_t b, const FinGroupoid& y,
                                                        std::size_t c);
GroupoidFunctor functor(Rng& rng, const Grpd& x, const Grpd& y);

Matrix invertible(Rng& rng, std::size_t n);
Matrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound = 2);
/// A representation of Aut(b) on K^d: a direct sum of characters and permutation
/// representations pulled back along random homomorphisms, conjugated by a random matrix.
std::vector<Matrix> automorphism_rep(Rng& rng, const FinGroupoid& x, std::size_t b, std::size_t d);
LocalSystem local_system(Rng& rng, const Grpd& x, std::size_t max_dim = 3, std::size_t min_dim = 0);
/// A natural family V -> W over f drawn from the space of all such families.
LocMorphism loc_morphism(Rng& rng, const LocalSystem& v, const LocalSystem& w, const GroupoidFunctor& f);

/// A direct sum of spheres and disks in degrees lo..hi with each degree at most 3-dimensional,
/// conjugated degreewise by random invertible matrices. Only disks when acyclic.
ChainComplex complex(Rng& rng, int lo, int hi, bool acyclic = false);
/// A random element of the space of chain maps V -> W.
ChainMap chain_map(Rng& rng, const ChainComplex& v, const ChainComplex& w);
/// A degreewise surjection X -> Y; X = Y + K twisted by a random chain map K -> Y and
/// conjugated. K is acyclic when requested, so the result is an acyclic fibration.
ChainMap fibration(Rng& rng, const ChainComplex& y, bool acyclic);

/// C (x) K[Delta^k] truncated at level n: level s is one copy of C per monotone map [s] -> [k].
TruncatedSimplicialComplex simplex_tensor(const ChainComplex& c, std::size_t k, std::size_t n);
/// f (x) K[Delta^k] between the corresponding simplicial objects.
SimplicialChainMap simplex_tensor_map(const ChainMap& f, std::size_t k, std::size_t n);

/// L (x) C for a random local system L over x and a random complex C in degrees lo..hi.
DgLocalSystem dg_local_system(Rng& rng, const Grpd& x, int lo = -1, int hi = 1);
/// A random quasi-isomorphism out of or into c.
ChainMap quasi_iso(Rng& rng, const ChainComplex& c);
/// alpha (x) q with alpha a cartesian lift along an equivalence (identity, a projection
/// CoDisc{a,b} x Y -> Y, or a section of it) and q a quasi-isomorphism.
DgLocMorphism dg_weq(Rng& rng);

} // namespace extlin::gen
