#include "extlin/errors.hpp"
#include "extlin/locsys.hpp"

namespace extlin {

namespace {

// Data shared by the induced and coinduced constructions: skeleta of both bases and, for
// each source basepoint b_i, the homomorphism Aut(b_i) -> Aut(c_j) given by
// g |-> c_{f b}^-1 f(g) c_{f b}.
struct SkeletalData {
    Skeleton sx;
    Skeleton sy;
    std::vector<std::size_t> target_component; // per source basepoint
    std::vector<std::vector<std::size_t>> hom; // per source basepoint: Y-morphism phi(g) for g in hom(b, b)
    std::vector<std::size_t> position;         // Y-morphism k in hom(c, c) -> its index there
};

SkeletalData skeletal_data(const GroupoidFunctor& f) {
    const FinGroupoid& x = *f.source();
    const FinGroupoid& y = *f.target();
    SkeletalData d{skeletize(f.source()), skeletize(f.target()), {}, {}, {}};
    d.position.assign(y.num_morphisms(), FinGroupoid::none);
    for (auto c : d.sy.basepoints) {
        const auto& h = y.hom(c, c);
        for (std::size_t k = 0; k < h.size(); ++k)
            d.position[h[k]] = k;
    }
    for (auto b : d.sx.basepoints) {
        const std::size_t fb = f.on_object(b);
        d.target_component.push_back(d.sy.projection.on_object(fb));
        const std::size_t c = d.sy.connecting[fb];
        std::vector<std::size_t> phi;
        for (auto g : x.hom(b, b))
            phi.push_back(y.compose(y.inverse(c), y.compose(f.on_morphism(g), c)));
        d.hom.push_back(std::move(phi));
    }
    return d;
}

} // namespace

SkeletalKan pushforward_skeletal(const GroupoidFunctor& f, const LocalSystem& v, const LeftKan& generic) {
    const FinGroupoid& x = *f.source();
    const FinGroupoid& y = *f.target();
    const std::size_t ny = y.num_morphisms();
    SkeletalData d = skeletal_data(f);
    const std::size_t nj = d.sy.basepoints.size();

    // Induced representation at each target basepoint c_j: blocks (i, k), k in Aut(c_j).
    std::vector<std::vector<std::size_t>> offset(d.sx.basepoints.size());
    std::vector<std::size_t> dim(nj, 0);
    for (std::size_t j = 0; j < nj; ++j) {
        const std::size_t c = d.sy.basepoints[j];
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            for (std::size_t k = 0; k < y.hom(c, c).size(); ++k) {
                offset[i].push_back(dim[j]);
                dim[j] += v.fiber(d.sx.basepoints[i]).dim();
            }
        }
    }
    std::vector<Matrix> proj(nj), sect(nj);
    std::vector<VectorSpace> skl_fibers;
    for (std::size_t j = 0; j < nj; ++j) {
        const std::size_t c = d.sy.basepoints[j];
        const auto& hj = y.hom(c, c);
        Matrix rel(dim[j], 0);
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            const std::size_t b = d.sx.basepoints[i];
            const auto& gi = x.hom(b, b);
            const std::size_t n = v.fiber(b).dim();
            for (std::size_t gk = 0; gk < gi.size(); ++gk) {
                if (x.is_identity(gi[gk]))
                    continue;
                for (std::size_t k = 0; k < hj.size(); ++k) {
                    // e_{(i, k phi(g))} v - e_{(i, k)} V_g v
                    Matrix cols(dim[j], n);
                    cols.add_block(offset[i][d.position[y.compose(hj[k], d.hom[i][gk])]], 0, Matrix::identity(n));
                    cols.add_block(offset[i][k], 0, -v.transport(gi[gk]).matrix());
                    rel = hstack(rel, cols);
                }
            }
        }
        LeftNullspace ln = left_nullspace(rel);
        skl_fibers.push_back(VectorSpace::standard(ln.pivots.size(), "ind"));
        sect[j] = Matrix::selection(ln.pivots, dim[j]);
        proj[j] = std::move(ln.basis);
    }
    auto action = [&](std::size_t j, std::size_t h) {
        const std::size_t c = d.sy.basepoints[j];
        const auto& hj = y.hom(c, c);
        Matrix move(dim[j], dim[j]);
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            const std::size_t n = v.fiber(d.sx.basepoints[i]).dim();
            for (std::size_t k = 0; k < hj.size(); ++k)
                move.set_block(offset[i][d.position[y.compose(h, hj[k])]], offset[i][k], Matrix::identity(n));
        }
        return proj[j] * move * sect[j];
    };
    const FinGroupoid& skl = *d.sy.skeleton;
    std::vector<Matrix> skl_transport;
    for (std::size_t s = 0; s < skl.num_morphisms(); ++s)
        skl_transport.push_back(action(skl.src(s), d.sy.inclusion.on_morphism(s)));
    LocalSystem induced = LocalSystem::from_matrices(d.sy.skeleton, skl_fibers, skl_transport);
    LocalSystem value = pullback(d.sy.projection, induced);

    // Theta_y: block (i, k) goes to the generic block (b_i, c_y k c_{f b_i}^-1).
    std::vector<Matrix> theta;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        const std::size_t j = d.sy.projection.on_object(t);
        const std::size_t c = d.sy.basepoints[j];
        const auto& hj = y.hom(c, c);
        Matrix embed(generic.coord_dim[t], dim[j]);
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            const std::size_t b = d.sx.basepoints[i];
            const std::size_t cfb = d.sy.connecting[f.on_object(b)];
            for (std::size_t k = 0; k < hj.size(); ++k) {
                const std::size_t a = y.compose(d.sy.connecting[t], y.compose(hj[k], y.inverse(cfb)));
                embed.set_block(generic.block_offset[b * ny + a], offset[i][k], Matrix::identity(v.fiber(b).dim()));
            }
        }
        theta.push_back(generic.projection[t] * embed * sect[j]);
    }
    LocMorphism comparison =
        LocMorphism::from_matrices(value, generic.value, GroupoidFunctor::identity(f.target()), theta);
    return {std::move(value), std::move(comparison)};
}

SkeletalKan sections_skeletal(const GroupoidFunctor& f, const LocalSystem& v, const RightKan& generic) {
    const FinGroupoid& x = *f.source();
    const FinGroupoid& y = *f.target();
    const std::size_t ny = y.num_morphisms();
    SkeletalData d = skeletal_data(f);
    const std::size_t nj = d.sy.basepoints.size();

    // Coinduced representation at c_j: families v_{(i, k)} with V_g v_{(i,k)} = v_{(i, phi(g) k)}.
    std::vector<std::vector<std::size_t>> offset(d.sx.basepoints.size());
    std::vector<std::size_t> dim(nj, 0);
    for (std::size_t j = 0; j < nj; ++j) {
        const std::size_t c = d.sy.basepoints[j];
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            for (std::size_t k = 0; k < y.hom(c, c).size(); ++k) {
                offset[i].push_back(dim[j]);
                dim[j] += v.fiber(d.sx.basepoints[i]).dim();
            }
        }
    }
    std::vector<Matrix> incl(nj), retr(nj);
    std::vector<VectorSpace> skl_fibers;
    for (std::size_t j = 0; j < nj; ++j) {
        const std::size_t c = d.sy.basepoints[j];
        const auto& hj = y.hom(c, c);
        Matrix con(0, dim[j]);
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            const std::size_t b = d.sx.basepoints[i];
            const auto& gi = x.hom(b, b);
            const std::size_t n = v.fiber(b).dim();
            for (std::size_t gk = 0; gk < gi.size(); ++gk) {
                if (x.is_identity(gi[gk]))
                    continue;
                for (std::size_t k = 0; k < hj.size(); ++k) {
                    Matrix rows(n, dim[j]);
                    rows.add_block(0, offset[i][k], v.transport(gi[gk]).matrix());
                    rows.add_block(0, offset[i][d.position[y.compose(d.hom[i][gk], hj[k])]], -Matrix::identity(n));
                    con = vstack(con, rows);
                }
            }
        }
        Nullspace ns = nullspace(con);
        skl_fibers.push_back(VectorSpace::standard(ns.free_columns.size(), "coind"));
        retr[j] = Matrix::selection(ns.free_columns, dim[j]).transpose();
        incl[j] = std::move(ns.basis);
    }
    auto action = [&](std::size_t j, std::size_t h) {
        const std::size_t c = d.sy.basepoints[j];
        const auto& hj = y.hom(c, c);
        Matrix move(dim[j], dim[j]);
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            const std::size_t n = v.fiber(d.sx.basepoints[i]).dim();
            for (std::size_t k = 0; k < hj.size(); ++k)
                move.set_block(offset[i][k], offset[i][d.position[y.compose(hj[k], h)]], Matrix::identity(n));
        }
        return retr[j] * move * incl[j];
    };
    const FinGroupoid& skl = *d.sy.skeleton;
    std::vector<Matrix> skl_transport;
    for (std::size_t s = 0; s < skl.num_morphisms(); ++s)
        skl_transport.push_back(action(skl.src(s), d.sy.inclusion.on_morphism(s)));
    LocalSystem coinduced = LocalSystem::from_matrices(d.sy.skeleton, skl_fibers, skl_transport);
    LocalSystem value = pullback(d.sy.projection, coinduced);

    // Theta_y restricts a generic family to the blocks (b_i, c_{f b_i} k c_y^-1).
    std::vector<Matrix> theta;
    for (std::size_t t = 0; t < y.num_objects(); ++t) {
        const std::size_t j = d.sy.projection.on_object(t);
        const std::size_t c = d.sy.basepoints[j];
        const auto& hj = y.hom(c, c);
        Matrix restrict(dim[j], generic.coord_dim[t]);
        for (std::size_t i = 0; i < d.sx.basepoints.size(); ++i) {
            if (d.target_component[i] != j)
                continue;
            const std::size_t b = d.sx.basepoints[i];
            const std::size_t cfb = d.sy.connecting[f.on_object(b)];
            for (std::size_t k = 0; k < hj.size(); ++k) {
                const std::size_t a = y.compose(cfb, y.compose(hj[k], y.inverse(d.sy.connecting[t])));
                restrict.set_block(offset[i][k], generic.block_offset[b * ny + a], Matrix::identity(v.fiber(b).dim()));
            }
        }
        theta.push_back(retr[j] * restrict * generic.inclusion[t]);
    }
    LocMorphism comparison =
        LocMorphism::from_matrices(generic.value, value, GroupoidFunctor::identity(f.target()), theta);
    return {std::move(value), std::move(comparison)};
}

} // namespace extlin
