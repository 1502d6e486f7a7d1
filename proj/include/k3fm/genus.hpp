#ifndef K3FM_GENUS_HPP
#define K3FM_GENUS_HPP

#include <cstdint>
#include <vector>

#include "k3fm/discforms.hpp"
#include "k3fm/lattices.hpp"

namespace k3fm {

/// One e in [0, t) per isometry class in the genus of Lambda_{d,t}, each the
/// least member of its class, ascending.
///
/// Every lattice in the genus is some Lambda_{e,t} with gcd(2e,t) = gcd(2d,t);
/// Lambda_{e,t} = Lambda_{e+kt,t} via H -> H + kF, so e ranges over [0, t).
/// Genus membership is decided by isometry of discriminant forms.
inline std::vector<std::int64_t> genus_representatives(std::int64_t d, std::int64_t t, const Budget& budget = {})
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    const std::int64_t a = gcd(2 * d, t);
    const FiniteQuadForm A = AdtForm(d, t).form();
    std::vector<std::int64_t> reps;
    for (std::int64_t e = 0; e < t; ++e) {
        if (gcd(2 * e, t) != a)
            continue;
        if (!isometry_between(A, AdtForm(e, t).form(), budget))
            continue;
        bool fresh = true;
        for (auto r : reps)
            if (is_isometric_rank2(r, e, t)) {
                fresh = false;
                break;
            }
        if (fresh)
            reps.push_back(e);
    }
    return reps;
}

} // namespace k3fm

#endif // K3FM_GENUS_HPP
