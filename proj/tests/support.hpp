#pragma once
// Random inputs shared by the unit and acceptance tests.

#include <random>

#include "dephcorr/ladder_model.hpp"
#include "dephcorr/linops.hpp"

namespace dephcorr::testing {

inline CMatrix random_complex(std::mt19937_64& rng, Index rows, Index cols)
{
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

/// Unit-trace positive matrix G G^dag / Tr.
inline CMatrix random_density(std::mt19937_64& rng, Index d, Index rank)
{
    const CMatrix g = random_complex(rng, d, rank);
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

/// Schmidt-correlated state of dimension d on the band-limited ladder k = d-1.
inline LadderState random_ladder_state(std::mt19937_64& rng, int d)
{
    InteractionSpec inter;
    inter.kind = InteractionKind::BandLimited;
    inter.gamma = 1.0;
    const Ladder lad = build_ladder(d - 1, inter);
    std::uniform_int_distribution<int> rank(1, d);
    return LadderState{lad, random_density(rng, d, rank(rng))};
}

}  // namespace dephcorr::testing
