#include "extlin/random.hpp"

namespace extlin::gen {

DgLocalSystem dg_local_system(Rng& rng, const Grpd& x, int lo, int hi) {
    return tensor_with(local_system(rng, x, 2, 1), complex(rng, lo, hi));
}

ChainMap quasi_iso(Rng& rng, const ChainComplex& c) {
    if (rng.coin())
        return fibration(rng, c, true);
    return direct_sum_cc({c, complex(rng, 0, 1, true)}).injections[0];
}

DgLocMorphism dg_weq(Rng& rng) {
    const std::size_t kind = rng.below(3);
    const Grpd y = groupoid(rng, kind == 0 ? 2 : 1, 3);
    const Grpd pair = codiscrete({"a", "b"});
    const Product p = product(pair, y);
    GroupoidFunctor f;
    switch (kind) {
    case 0:
        f = GroupoidFunctor::identity(y);
        break;
    case 1:
        f = p.projections[1];
        break;
    default:
        f = extlin::pair(p, {compose(point_at(pair, rng.below(2)), to_terminal(y)), GroupoidFunctor::identity(y)});
        break;
    }
    const LocalSystem l = local_system(rng, f.target(), 2, 1);
    const ChainComplex c = complex(rng, 0, 1);
    return tensor_with_mor(cartesian_lift(f, l), quasi_iso(rng, c));
}

} // namespace extlin::gen
