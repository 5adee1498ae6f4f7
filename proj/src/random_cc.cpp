#include "extlin/random.hpp"

namespace extlin::gen {

namespace {

ChainComplex conjugate(const ChainComplex& c, const std::map<int, Matrix>& t, const std::map<int, Matrix>& t_inv) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    for (int n : c.support()) {
        dims[n] = c.dim(n);
        if (c.dim(n - 1) > 0)
            diffs[n] = t.at(n - 1) * c.differential(n).matrix() * t_inv.at(n);
    }
    return ChainComplex::from_matrices(dims, diffs);
}

void random_frame(Rng& rng, const ChainComplex& c, std::map<int, Matrix>& t, std::map<int, Matrix>& t_inv) {
    for (int n : c.support()) {
        t[n] = invertible(rng, c.dim(n));
        t_inv[n] = *inverse(t[n]);
    }
}

std::vector<std::vector<std::size_t>> monotone_maps(std::size_t s, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() == s + 1) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = from; v <= k; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::size_t index_of(const std::vector<std::vector<std::size_t>>& list, const std::vector<std::size_t>& x) {
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == x)
            return i;
    return list.size();
}

ChainComplex copies(const ChainComplex& c, std::size_t count) {
    return direct_sum_cc(std::vector<ChainComplex>(count, c)).complex;
}

} // namespace

ChainComplex complex(Rng& rng, int lo, int hi, bool acyclic) {
    std::vector<ChainComplex> pieces;
    for (int n = lo; n <= hi; ++n) {
        if (!acyclic && rng.coin())
            pieces.push_back(sphere(n));
        if (n > lo && rng.coin())
            pieces.push_back(disk(n));
    }
    ChainComplex sum = direct_sum_cc(pieces).complex;
    std::map<int, Matrix> t, t_inv;
    random_frame(rng, sum, t, t_inv);
    return conjugate(sum, t, t_inv);
}

ChainMap chain_map(Rng& rng, const ChainComplex& v, const ChainComplex& w) {
    ChainComplex h = hom_cc(v, w);
    Nullspace z = nullspace(h.differential(0).matrix());
    Matrix coeffs(z.free_columns.size(), 1);
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        coeffs(i, 0) = Scalar(rng.range(-2, 2));
    return chain_map_from_coordinates(v, w, z.basis * coeffs);
}

ChainMap fibration(Rng& rng, const ChainComplex& y, bool acyclic) {
    const int lo = y.is_zero() ? 0 : y.min_degree() - 1;
    const int hi = y.is_zero() ? 1 : y.max_degree() + 1;
    ChainComplex k = complex(rng, lo, hi, acyclic);
    ChainMap m = chain_map(rng, k, y);
    ChainComplex x = direct_sum_cc({y, k}).complex;
    std::map<int, Matrix> t, t_inv;
    random_frame(rng, x, t, t_inv);
    std::map<int, Matrix> p;
    for (int n : x.support())
        p[n] = hstack(Matrix::identity(y.dim(n)), m.at(n).matrix()) * t_inv.at(n);
    return ChainMap::from_matrices(conjugate(x, t, t_inv), y, p);
}

TruncatedSimplicialComplex simplex_tensor(const ChainComplex& c, std::size_t k, std::size_t n) {
    std::vector<std::vector<std::vector<std::size_t>>> simplices;
    std::vector<ChainComplex> levels;
    for (std::size_t s = 0; s <= n; ++s) {
        simplices.push_back(monotone_maps(s, k));
        levels.push_back(copies(c, simplices[s].size()));
    }
    // The map copy sigma -> copy op(sigma) for an operator op on simplices.
    auto induced = [&](std::size_t from, std::size_t to, auto op) {
        Matrix p(simplices[to].size(), simplices[from].size());
        for (std::size_t a = 0; a < simplices[from].size(); ++a)
            p(index_of(simplices[to], op(simplices[from][a])), a) = Scalar(1);
        std::map<int, Matrix> maps;
        for (int d : c.support())
            maps[d] = kron(p, Matrix::identity(c.dim(d)));
        return ChainMap::from_matrices(levels[from], levels[to], maps);
    };
    std::vector<std::vector<ChainMap>> faces(n + 1), degens(n + 1);
    for (std::size_t s = 0; s <= n; ++s)
        for (std::size_t i = 0; i <= s; ++i) {
            if (s > 0)
                faces[s].push_back(induced(s, s - 1, [i](std::vector<std::size_t> x) {
                    x.erase(x.begin() + static_cast<long>(i));
                    return x;
                }));
            if (s < n)
                degens[s].push_back(induced(s, s + 1, [i](std::vector<std::size_t> x) {
                    x.insert(x.begin() + static_cast<long>(i), x[i]);
                    return x;
                }));
        }
    return TruncatedSimplicialComplex(std::move(levels), std::move(faces), std::move(degens));
}

SimplicialChainMap simplex_tensor_map(const ChainMap& f, std::size_t k, std::size_t n) {
    TruncatedSimplicialComplex dom = simplex_tensor(f.domain(), k, n);
    TruncatedSimplicialComplex cod = simplex_tensor(f.codomain(), k, n);
    std::vector<ChainMap> levels;
    for (std::size_t s = 0; s <= n; ++s) {
        const std::size_t count = monotone_maps(s, k).size();
        std::map<int, Matrix> maps;
        for (int d : f.degrees())
            maps[d] = kron(Matrix::identity(count), f.at(d).matrix());
        levels.push_back(ChainMap::from_matrices(dom.level(s), cod.level(s), maps));
    }
    return {std::move(dom), std::move(cod), std::move(levels)};
}

} // namespace extlin::gen
