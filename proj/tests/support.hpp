#pragma once

#include "extlin/finvect.hpp"
#include "extlin/rng.hpp"

namespace testing_support {

using namespace extlin;

inline Scalar small_scalar(Rng& rng, bool gaussian = false) {
    long re = rng.range(-3, 3);
    if (!gaussian)
        return Scalar(re);
    return Scalar(Rational(re), Rational(rng.range(-2, 2)));
}

/// Sparse-ish small integer matrix so ranks vary.
inline Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, bool gaussian = false) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng.below(3))
                m(i, j) = small_scalar(rng, gaussian);
    return m;
}

inline LinearMap random_map(Rng& rng, const VectorSpace& v, const VectorSpace& w, bool gaussian = false) {
    return LinearMap(v, w, random_matrix(rng, w.dim(), v.dim(), gaussian));
}

/// Rank by a plain elimination over Q(i) written independently of the library kernels.
inline std::size_t oracle_rank(Matrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m(p, j), m(rank, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            Scalar f = m(i, c) / m(rank, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Entry-by-entry dot products.
inline Matrix oracle_product(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Scalar s;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s = s + a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

} // namespace testing_support
