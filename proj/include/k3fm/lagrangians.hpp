#ifndef K3FM_LAGRANGIANS_HPP
#define K3FM_LAGRANGIANS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "k3fm/arith.hpp"
#include "k3fm/discforms.hpp"
#include "k3fm/error.hpp"
#include "k3fm/lattices.hpp"

namespace k3fm {

// Lagrangian elements: isotropic elements of order t in A_{d,t}.
// Lagrangian subgroups: cyclic isotropic subgroups of order t.
//
// At each prime p | t the p-part of a Lagrangian subgroup is <v>_p or <v'>_p,
// where v = F/t and v' = F'/t; the two coincide unless p | m = gcd(d,t). A
// subgroup is therefore a choice of side at every prime of m.

enum class Side { V, VPrime };

struct LagrangianSubgroup {
    /// (p, side) for each prime p | m, ascending in p.
    std::vector<std::pair<std::int64_t, Side>> selector;
    DFElement generator;

    /// bit i set iff the i-th prime of m selects v'.
    std::uint64_t mask() const
    {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < selector.size(); ++i)
            if (selector[i].second == Side::VPrime)
                r |= std::uint64_t{1} << i;
        return r;
    }

    friend bool operator==(const LagrangianSubgroup& a, const LagrangianSubgroup& b)
    {
        return a.selector == b.selector;
    }

    std::string selector_str() const
    {
        std::string s = "{";
        for (std::size_t i = 0; i < selector.size(); ++i)
            s += (i ? "," : "") + std::to_string(selector[i].first) + ":" +
                 (selector[i].second == Side::V ? "v" : "v'");
        return s + "}";
    }
};

struct LagrangianCounts {
    std::int64_t elements;
    std::int64_t subgroups;

    friend bool operator==(const LagrangianCounts&, const LagrangianCounts&) = default;
};

/// (phi(t) 2^omega(m), 2^omega(m)) with m = gcd(d, t).
inline LagrangianCounts count_lagrangians(std::int64_t d, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    const std::int64_t subgroups = std::int64_t{1} << omega(gcd(d, t));
    return {euler_phi(t) * subgroups, subgroups};
}

struct CanonicalPair {
    DFElement v;
    DFElement vprime;
};

inline CanonicalPair canonical_pair(const AdtForm& A)
{
    const Rational inv_t = make_rational(1, A.t());
    auto rays = isotropic_rays(A.ns());
    return {A.from_vector(inv_t * rays.F), A.from_vector(inv_t * rays.Fprime)};
}

inline bool is_lagrangian_element(const AdtForm& A, const DFElement& x)
{
    return A.form().element_order(x) == A.t() && A.form().is_isotropic(x);
}

/// All Lagrangian elements in lexicographic coordinate order.
inline std::vector<DFElement> enumerate_lagrangian_elements(const AdtForm& A, const Budget& budget = {})
{
    require(A.t() <= budget.element_t, ErrorKind::Capacity,
            "t = " + std::to_string(A.t()) + " exceeds element-enumeration budget t <= " +
                std::to_string(budget.element_t));
    std::vector<DFElement> out;
    const auto& F = A.form();
    F.for_each_element([&](const DFElement& x) {
        if (F.element_order(x) == A.t() && F.is_isotropic(x))
            out.push_back(x);
    });
    return out;
}

namespace detail {

inline std::vector<PrimePower> primes_of_m(const AdtForm& A)
{
    return factorize(A.m());
}

/// p^k exactly dividing t.
inline std::int64_t t_part(std::int64_t t, std::int64_t p)
{
    std::int64_t pk = 1;
    while (t % p == 0) {
        t /= p;
        pk *= p;
    }
    return pk;
}

} // namespace detail

/// Subgroup with the given selector bitmask over the primes of m.
inline LagrangianSubgroup lagrangian_subgroup(const AdtForm& A, std::uint64_t mask)
{
    const auto pair = canonical_pair(A);
    const auto mprimes = detail::primes_of_m(A);
    require(mprimes.size() >= 64 || mask < (std::uint64_t{1} << mprimes.size()), ErrorKind::InvalidParameter,
            "selector mask out of range");
    LagrangianSubgroup L;
    std::int64_t alpha = 0, beta = 0;
    const std::int64_t t = A.t();
    for (const auto& f : factorize(t)) {
        const std::int64_t e = crt_idempotent(t, f.pk);
        auto it = std::find_if(mprimes.begin(), mprimes.end(), [&](const PrimePower& q) { return q.p == f.p; });
        Side side = Side::V;
        if (it != mprimes.end()) {
            auto bit = static_cast<std::size_t>(it - mprimes.begin());
            side = (mask >> bit) & 1 ? Side::VPrime : Side::V;
            L.selector.emplace_back(f.p, side);
        }
        (side == Side::V ? alpha : beta) = mod((side == Side::V ? alpha : beta) + e, t);
    }
    if (t == 1)
        alpha = 1;
    const auto& F = A.form();
    L.generator = F.add(F.scale(pair.v, alpha), F.scale(pair.vprime, beta));
    return L;
}

/// All 2^omega(m) Lagrangian subgroups, ordered by selector mask.
inline std::vector<LagrangianSubgroup> enumerate_lagrangian_subgroups(const AdtForm& A)
{
    const auto k = detail::primes_of_m(A).size();
    std::vector<LagrangianSubgroup> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
        out.push_back(lagrangian_subgroup(A, mask));
    return out;
}

/// The Lagrangian subgroup generated by a Lagrangian element w. Membership at
/// p is tested by orthogonality: a Lagrangian H_p satisfies H_p = H_p^perp.
inline LagrangianSubgroup subgroup_of(const AdtForm& A, const DFElement& w)
{
    const auto& F = A.form();
    F.check(w);
    require(is_lagrangian_element(A, w), ErrorKind::InvalidElement, "element " + w.str() + " is not Lagrangian");
    const auto pair = canonical_pair(A);
    const std::int64_t t = A.t();
    std::uint64_t mask = 0;
    const auto mprimes = detail::primes_of_m(A);
    for (std::size_t i = 0; i < mprimes.size(); ++i) {
        const std::int64_t e = crt_idempotent(t, detail::t_part(t, mprimes[i].p));
        const DFElement wp = F.scale(w, e);
        if (F.b_num(wp, F.scale(pair.v, e)) == 0)
            continue;
        require(F.b_num(wp, F.scale(pair.vprime, e)) == 0, ErrorKind::InvalidElement,
                "element " + w.str() + " lies in neither Lagrangian at p = " + std::to_string(mprimes[i].p));
        mask |= std::uint64_t{1} << i;
    }
    return lagrangian_subgroup(A, mask);
}

/// All elements of the cyclic subgroup <L.generator>, sorted.
inline std::vector<DFElement> subgroup_elements(const AdtForm& A, const LagrangianSubgroup& L)
{
    std::vector<DFElement> out;
    for (std::int64_t k = 0; k < A.t(); ++k)
        out.push_back(A.form().scale(L.generator, k));
    std::sort(out.begin(), out.end());
    return out;
}

/// iota: swap <v>_p and <v'>_p at every prime p | m.
inline LagrangianSubgroup involution(const AdtForm& A, const LagrangianSubgroup& L)
{
    const auto k = L.selector.size();
    const std::uint64_t all = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    return lagrangian_subgroup(A, L.mask() ^ all);
}

/// k * w = k^{-1} w.
inline DFElement units_action(const AdtForm& A, std::int64_t k, const DFElement& w)
{
    require(gcd(k, A.t()) == 1, ErrorKind::InvalidParameter,
            std::to_string(k) + " is not a unit modulo " + std::to_string(A.t()));
    return A.form().scale(w, inv_mod(k, A.t()));
}

// ---------------------------------------------------------------------------
// G_X through its image in O(A)
// ---------------------------------------------------------------------------

/// Cyclic group of even order `order` acting on A through `generator`; its
/// involution g^(order/2) acts as -id.
struct GSpec {
    DFIsometry generator;
    std::int64_t order = 2;

    static GSpec t_general(const FiniteQuadForm& A) { return {DFIsometry::minus_identity(A), 2}; }

    void validate(const FiniteQuadForm& A) const
    {
        require(generator.is_isometry(A), ErrorKind::InvalidIsometry,
                "G generator " + generator.str() + " does not preserve q");
        require(order >= 2 && order % 2 == 0, ErrorKind::InvalidParameter, "|G| must be even");
        require(generator.power(A, order) == DFIsometry::identity(A), ErrorKind::InvalidIsometry,
                "generator order does not divide |G|");
        require(generator.power(A, order / 2) == DFIsometry::minus_identity(A), ErrorKind::InvalidIsometry,
                "G does not contain -id as its involution");
    }

    /// Distinct images g^0, g^1, ... in O(A).
    std::vector<DFIsometry> images(const FiniteQuadForm& A) const
    {
        std::vector<DFIsometry> out{DFIsometry::identity(A)};
        DFIsometry g = generator;
        while (g != out.front()) {
            out.push_back(g);
            g = generator.compose(A, g);
        }
        return out;
    }
};

/// Partition of `items` into G-orbits (orbit of x: {g^i x}). Each orbit is
/// sorted; orbits are sorted by their least element.
inline std::vector<std::vector<DFElement>> g_orbits(const FiniteQuadForm& A, const std::vector<DFElement>& items,
                                                    const GSpec& G)
{
    G.validate(A);
    const auto gs = G.images(A);
    std::set<DFElement> seen;
    std::vector<std::vector<DFElement>> orbits;
    for (const auto& x : items) {
        if (seen.count(x))
            continue;
        std::set<DFElement> orbit;
        for (const auto& g : gs)
            orbit.insert(g.apply(A, x));
        seen.insert(orbit.begin(), orbit.end());
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    std::sort(orbits.begin(), orbits.end());
    return orbits;
}

/// Image of a Lagrangian subgroup under an isometry of A_{d,t}.
inline LagrangianSubgroup apply(const AdtForm& A, const DFIsometry& g, const LagrangianSubgroup& L)
{
    const DFElement img = g.apply(A.form(), L.generator);
    if (!is_lagrangian_element(A, img))
        throw Error(ErrorKind::InvalidIsometry, "isometry maps a Lagrangian generator to a non-Lagrangian element");
    return subgroup_of(A, img);
}

/// G-orbits on Lagrangian subgroups; orbits sorted by selector mask.
inline std::vector<std::vector<LagrangianSubgroup>> g_orbits(const AdtForm& A,
                                                             const std::vector<LagrangianSubgroup>& items,
                                                             const GSpec& G)
{
    G.validate(A.form());
    const auto gs = G.images(A.form());
    std::set<std::uint64_t> seen;
    std::vector<std::vector<LagrangianSubgroup>> orbits;
    for (const auto& L : items) {
        if (seen.count(L.mask()))
            continue;
        std::map<std::uint64_t, LagrangianSubgroup> orbit;
        for (const auto& g : gs) {
            auto img = apply(A, g, L);
            orbit.emplace(img.mask(), img);
        }
        std::vector<LagrangianSubgroup> o;
        for (auto& [mask, M] : orbit) {
            seen.insert(mask);
            o.push_back(M);
        }
        orbits.push_back(std::move(o));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const auto& x, const auto& y) { return x.front().mask() < y.front().mask(); });
    return orbits;
}

struct DoubleQuotient {
    std::int64_t count;
    std::vector<LagrangianSubgroup> representatives;
    std::vector<std::vector<LagrangianSubgroup>> orbits;
};

/// <iota> \ L(A) / G.
inline DoubleQuotient double_quotient(const AdtForm& A, const GSpec& G)
{
    G.validate(A.form());
    const auto gs = G.images(A.form());
    const auto all = enumerate_lagrangian_subgroups(A);
    std::set<std::uint64_t> seen;
    DoubleQuotient dq{0, {}, {}};
    for (const auto& L : all) {
        if (seen.count(L.mask()))
            continue;
        // closure under G and iota (they commute)
        std::map<std::uint64_t, LagrangianSubgroup> orbit;
        for (const auto& start : {L, involution(A, L)})
            for (const auto& g : gs) {
                auto img = apply(A, g, start);
                orbit.emplace(img.mask(), img);
            }
        std::vector<LagrangianSubgroup> o;
        for (auto& [mask, M] : orbit) {
            seen.insert(mask);
            o.push_back(M);
        }
        dq.representatives.push_back(o.front());
        dq.orbits.push_back(std::move(o));
    }
    dq.count = static_cast<std::int64_t>(dq.orbits.size());
    return dq;
}

} // namespace k3fm

#endif // K3FM_LAGRANGIANS_HPP
