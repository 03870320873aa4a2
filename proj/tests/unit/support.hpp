#pragma once

#include <cmath>
#include <random>

#include "nonmark/dynamics.hpp"
#include "nonmark/types.hpp"

namespace nonmark::testing {

inline BlochVector random_bloch(std::mt19937_64& rng, bool pure = false) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    BlochVector r(normal(rng), normal(rng), normal(rng));
    r.normalize();
    return pure ? r : r * std::cbrt(unit(rng));
}

inline Mat2 random_density(std::mt19937_64& rng) {
    return QubitState::from_bloch(random_bloch(rng)).matrix();
}

inline Mat2 random_matrix(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Mat2 m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return m;
}

inline Mat2 random_hermitian(std::mt19937_64& rng) {
    const Mat2 m = random_matrix(rng);
    return 0.5 * (m + m.adjoint());
}

} // namespace nonmark::testing
