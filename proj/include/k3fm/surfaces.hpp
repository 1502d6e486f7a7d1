#ifndef K3FM_SURFACES_HPP
#define K3FM_SURFACES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3fm/arith.hpp"
#include "k3fm/discforms.hpp"
#include "k3fm/error.hpp"
#include "k3fm/genus.hpp"
#include "k3fm/lagrangians.hpp"
#include "k3fm/lattices.hpp"

namespace k3fm {

// ---------------------------------------------------------------------------
// Jacobians J^k
// ---------------------------------------------------------------------------

inline std::int64_t jacobian_index(std::int64_t t, std::int64_t k)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    return t / gcd(t, k);
}

/// J^k(J^l(X)) = J^{kl}(X)
inline std::int64_t jacobian_compose(std::int64_t k, std::int64_t l, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    return mulmod(mod(k, t), mod(l, t), t);
}

/// J^{k+t} = J^k = J^{-k}; least of k, -k mod t.
inline std::int64_t jacobian_class_canonical(std::int64_t k, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    const std::int64_t r = mod(k, t);
    return std::min(r, mod(-r, t));
}

/// Subgroup of (Z/t)*, kept as its sorted element list.
class UnitsSubgroup {
public:
    static UnitsSubgroup generated_by(std::int64_t t, const std::vector<std::int64_t>& gens)
    {
        require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
        std::set<std::int64_t> s{mod(1, t)};
        std::vector<std::int64_t> frontier{mod(1, t)};
        for (auto g : gens)
            require(gcd(g, t) == 1, ErrorKind::InvalidUnitsSubgroup,
                    std::to_string(g) + " is not a unit modulo " + std::to_string(t));
        while (!frontier.empty()) {
            auto x = frontier.back();
            frontier.pop_back();
            for (auto g : gens) {
                auto y = mulmod(x, mod(g, t), t);
                if (s.insert(y).second)
                    frontier.push_back(y);
            }
        }
        UnitsSubgroup B;
        B.t_ = t;
        B.elems_.assign(s.begin(), s.end());
        return B;
    }

    static UnitsSubgroup plus_minus_one(std::int64_t t) { return generated_by(t, {-1}); }

    std::int64_t t() const { return t_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elems_.size()); }
    const std::vector<std::int64_t>& elements() const { return elems_; }
    bool contains(std::int64_t k) const { return std::binary_search(elems_.begin(), elems_.end(), mod(k, t_)); }

    bool is_subgroup_of(const UnitsSubgroup& o) const
    {
        return o.t_ == t_ && std::all_of(elems_.begin(), elems_.end(), [&](auto x) { return o.contains(x); });
    }

    bool is_cyclic() const
    {
        for (auto x : elems_) {
            std::int64_t k = 1, y = x;
            while (y != mod(1, t_)) {
                y = mulmod(y, x, t_);
                ++k;
            }
            if (k == order())
                return true;
        }
        return false;
    }

private:
    std::int64_t t_ = 1;
    std::vector<std::int64_t> elems_;
};

struct CosetClasses {
    std::int64_t count;
    std::vector<std::int64_t> representatives;
};

/// (Z/t)* / B; each coset represented by its least member.
inline CosetClasses coprime_jacobian_classes(std::int64_t t, const UnitsSubgroup& B)
{
    require(t > 2, ErrorKind::OutOfScope, "coprime Jacobian classes need t > 2");
    require(B.t() == t, ErrorKind::InvalidUnitsSubgroup, "B is a subgroup of a different unit group");
    require(B.contains(-1), ErrorKind::InvalidUnitsSubgroup, "B must contain -1");
    std::vector<bool> done(static_cast<std::size_t>(t), false);
    CosetClasses out{0, {}};
    for (std::int64_t k = 1; k < t; ++k) {
        if (gcd(k, t) != 1 || done[static_cast<std::size_t>(k)])
            continue;
        out.representatives.push_back(k);
        for (auto b : B.elements())
            done[static_cast<std::size_t>(mulmod(k, b, t))] = true;
    }
    out.count = static_cast<std::int64_t>(out.representatives.size());
    return out;
}

/// Torsor over a j-special fibre with automorphisms of order h exists iff
/// p = 1 mod 4 (h = 4) or p = 1 mod 3 (h = 6).
inline bool jspecial_torsor_exists(std::int64_t p, int h)
{
    require(p > 2 && is_prime(p), ErrorKind::InvalidParameter, std::to_string(p) + " is not an odd prime");
    require(h == 4 || h == 6, ErrorKind::InvalidParameter, "h must be 4 or 6");
    return h == 4 ? p % 4 == 1 : p % 3 == 1;
}

// ---------------------------------------------------------------------------
// Caldararu classes
// ---------------------------------------------------------------------------

/// (r, D = xH + yF, s)
struct MukaiVector {
    std::int64_t r = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t s = 0;
};

struct CaldararuClass {
    std::int64_t divisibility;
    DFElement element;
};

/// -D / t_v in A_{d,t}, where t_v = gcd(r, s, D.H, D.F) = gcd(r, s, 2dx + ty, tx).
inline CaldararuClass caldararu_class(const AdtForm& A, const MukaiVector& v)
{
    const BigInt d = A.d(), t = A.t();
    const BigInt D2 = 2 * d * v.x * v.x + 2 * t * v.x * v.y;
    require(D2 == 2 * BigInt(v.r) * v.s, ErrorKind::InvalidMukaiVector, "v^2 = D^2 - 2rs must vanish");
    require(std::gcd(std::gcd(v.r, v.s), std::gcd(v.x, v.y)) == 1, ErrorKind::InvalidMukaiVector,
            "Mukai vector is not primitive");
    const BigInt dh = 2 * d * v.x + t * v.y;
    const BigInt df = t * v.x;
    BigInt tv = boost::multiprecision::gcd(boost::multiprecision::gcd(BigInt(v.r), BigInt(v.s)),
                                           boost::multiprecision::gcd(dh, df));
    const std::int64_t div = to_int64(tv);
    RationalVector D{std::vector<Rational>{make_rational(-v.x, div), make_rational(-v.y, div)}};
    return {div, A.from_vector(D)};
}

// ---------------------------------------------------------------------------
// fibrations
// ---------------------------------------------------------------------------

/// Number of elliptic fibrations: 1 iff d = -1 mod t.
inline int fibration_count(std::int64_t d, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    return mod(d + 1, t) == 0 ? 1 : 2;
}

inline bool fibrations_isomorphic(std::int64_t d, std::int64_t t, bool t_general)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    require(t_general, ErrorKind::NotApplicable, "fibration isomorphism criterion needs a T-general surface");
    require(t > 2, ErrorKind::NotApplicable, "fibration isomorphism criterion needs t > 2");
    require(fibration_count(d, t) == 2, ErrorKind::NotApplicable, "d = -1 mod t: only one fibration");
    return mod(d - 1, t) == 0;
}

/// (X, g) = J^{d^-1}(X, f) for the second fibration g when m = 1.
inline std::int64_t second_fibration_jacobian(std::int64_t d, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    require(gcd(d, t) == 1, ErrorKind::NotApplicable, "gcd(d,t) != 1: the fibrations are not Jacobians of each other");
    require(fibration_count(d, t) == 2, ErrorKind::NotApplicable, "d = -1 mod t: only one fibration");
    return inv_mod(d, t);
}

/// J^0 of the two fibrations agree iff gcd(d,t) = 1 (needs d != +-1 mod t).
inline bool jac0_isomorphic(std::int64_t d, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    require(mod(d - 1, t) != 0 && mod(d + 1, t) != 0, ErrorKind::NotApplicable,
            "criterion needs two non-isomorphic fibrations (d != +-1 mod t)");
    return gcd(d, t) == 1;
}

// ---------------------------------------------------------------------------
// G_X and automorphisms
// ---------------------------------------------------------------------------

/// Even orders 2g with phi(2g) | rk.
inline std::vector<std::int64_t> allowed_G_orders(std::int64_t rk)
{
    require(rk >= 1 && rk <= 100000, ErrorKind::InvalidParameter, "rank out of range");
    // phi(n) >= sqrt(n/2)
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; n <= 2 * rk * rk + 2; n += 2)
        if (rk % euler_phi(n) == 0)
            out.push_back(n);
    return out;
}

/// O(Lambda_{d,t}) acting on A_{d,t}.
inline std::vector<DFIsometry> lattice_isometry_image(const AdtForm& A)
{
    std::set<DFIsometry> s;
    for (const auto& g : rank2_automorphisms(A.d(), A.t()))
        s.insert(induced_isometry(A.form(), [&](const RationalVector& x) { return apply(g, x); }));
    return {s.begin(), s.end()};
}

/// O+(NS) acting on A: the identity, plus the fibre swap when it exists and
/// there are no (-2)-curves.
inline std::vector<DFIsometry> positive_isometry_image(const AdtForm& A)
{
    std::set<DFIsometry> s{DFIsometry::identity(A.form())};
    if (fibration_count(A.d(), A.t()) == 2)
        if (auto tau = fibre_swap(A.d(), A.t()))
            s.insert(induced_isometry(A.form(), [&](const RationalVector& x) { return apply(*tau, x); }));
    return {s.begin(), s.end()};
}

struct AutOrders {
    std::int64_t aut;
    std::int64_t aut_fixing_fibre;

    friend bool operator==(const AutOrders&, const AutOrders&) = default;
};

/// |ker(G -> O(A)/O+)| and |ker(G -> O(A))|, G cyclic of order G.order.
inline AutOrders aut_orders(const AdtForm& A, const GSpec& G)
{
    G.validate(A.form());
    const auto plus = positive_isometry_image(A);
    const auto id = DFIsometry::identity(A.form());
    AutOrders r{0, 0};
    DFIsometry g = id;
    for (std::int64_t i = 0; i < G.order; ++i) {
        if (g == id)
            ++r.aut_fixing_fibre;
        if (std::find(plus.begin(), plus.end(), g) != plus.end())
            ++r.aut;
        g = G.generator.compose(A.form(), g);
    }
    return r;
}

// ---------------------------------------------------------------------------
// surface model
// ---------------------------------------------------------------------------

enum class IsotrivialJ { Generic, J0, J1728 };

inline std::string to_string(IsotrivialJ j)
{
    switch (j) {
    case IsotrivialJ::J0:
        return "j0";
    case IsotrivialJ::J1728:
        return "j1728";
    default:
        return "generic";
    }
}

struct SurfaceModel {
    std::int64_t d = 0;
    std::int64_t t = 1;
    GSpec G;
    UnitsSubgroup B;
    UnitsSubgroup Btilde;
    bool t_general = true;
    IsotrivialJ isotrivial_j = IsotrivialJ::Generic;

    static SurfaceModel general(std::int64_t d, std::int64_t t)
    {
        AdtForm A(d, t);
        auto B = UnitsSubgroup::plus_minus_one(t);
        return {d, t, GSpec::t_general(A.form()), B, B, true, IsotrivialJ::Generic};
    }

    void validate() const
    {
        require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
        AdtForm A(d, t);
        G.validate(A.form());
        require(B.t() == t && Btilde.t() == t, ErrorKind::InvalidUnitsSubgroup, "B, B~ must live in (Z/t)*");
        require(B.contains(-1), ErrorKind::InvalidUnitsSubgroup, "B must contain -1");
        require(B.is_subgroup_of(Btilde), ErrorKind::InvalidUnitsSubgroup, "B must be contained in B~");
        if (t > 2) {
            require(B.is_cyclic(), ErrorKind::InvalidUnitsSubgroup, "B must be cyclic");
            const auto n = B.order();
            require(n == 2 || n == 4 || n == 6, ErrorKind::InvalidUnitsSubgroup, "|B| must be 2, 4 or 6");
            require(n != 4 || isotrivial_j == IsotrivialJ::J1728, ErrorKind::InvalidUnitsSubgroup,
                    "|B| = 4 needs an isotrivial j = 1728 fibration");
            require(n != 6 || isotrivial_j == IsotrivialJ::J0, ErrorKind::InvalidUnitsSubgroup,
                    "|B| = 6 needs an isotrivial j = 0 fibration");
        }
        if (t_general)
            require(G.order == 2 && G.generator == DFIsometry::minus_identity(A.form()),
                    ErrorKind::InvalidParameter, "t_general requires G = {+-id}");
    }
};

struct DECounts {
    std::int64_t de;
    std::int64_t de_orbits;

    friend bool operator==(const DECounts&, const DECounts&) = default;
};

/// |DE| = 2^{omega(m)-1} phi(t), orbits 2^omega(m); T-general, t > 2.
inline DECounts de_closed_form(std::int64_t d, std::int64_t t)
{
    require(t > 2, ErrorKind::NotApplicable, "closed form needs t > 2");
    const auto c = count_lagrangians(d, t);
    return {c.elements / 2, c.subgroups};
}

/// (|Lagrangian elements / G|, |Lagrangian subgroups / G|) by orbit enumeration.
inline DECounts de_counts(const SurfaceModel& model, const Budget& budget = {})
{
    model.validate();
    AdtForm A(model.d, model.t);
    const auto els = enumerate_lagrangian_elements(A, budget);
    const auto subs = enumerate_lagrangian_subgroups(A);
    return {static_cast<std::int64_t>(g_orbits(A.form(), els, model.G).size()),
            static_cast<std::int64_t>(g_orbits(A, subs, model.G).size())};
}

// ---------------------------------------------------------------------------
// Fourier-Mukai partners
// ---------------------------------------------------------------------------

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace detail

/// |H \ O(A) / K| for subgroups H, K of O(A) given as element lists.
inline std::int64_t double_coset_count(const FiniteQuadForm& A, const std::vector<DFIsometry>& OA,
                                       const std::vector<DFIsometry>& H, const std::vector<DFIsometry>& K)
{
    std::map<DFIsometry, std::size_t> index;
    for (std::size_t i = 0; i < OA.size(); ++i)
        index.emplace(OA[i], i);
    detail::UnionFind uf(OA.size());
    for (std::size_t i = 0; i < OA.size(); ++i) {
        for (const auto& h : H)
            uf.unite(i, index.at(h.compose(A, OA[i])));
        for (const auto& k : K)
            uf.unite(i, index.at(OA[i].compose(A, k)));
    }
    std::int64_t n = 0;
    for (std::size_t i = 0; i < OA.size(); ++i)
        n += uf.find(i) == i;
    return n;
}

/// Images of G in O(A_e), carried over from A_{d,t} along an isometry psi.
inline std::vector<DFIsometry> transport(const FiniteQuadForm& Ad, const FiniteQuadForm& Ae, const DFIsometry& psi,
                                         const std::vector<DFIsometry>& gs, const Budget& budget)
{
    std::map<DFElement, DFElement> psi_inv;
    for (const auto& x : Ad.elements(budget.form_order))
        psi_inv.emplace(psi.apply(Ae, x), x);
    std::vector<DFIsometry> out;
    for (const auto& g : gs) {
        DFIsometry h;
        for (std::size_t j = 0; j < Ae.rank(); ++j)
            h.images.push_back(psi.apply(Ae, g.apply(Ad, psi_inv.at(Ae.generator(j)))));
        out.push_back(std::move(h));
    }
    return out;
}

/// |FM(X)| = sum over the genus of NS of |O(Lambda) \ O(A_Lambda) / G|.
inline std::int64_t fm_count(std::int64_t d, std::int64_t t, const GSpec& G, const Budget& budget = {})
{
    AdtForm Ad(d, t);
    G.validate(Ad.form());
    const auto gs = G.images(Ad.form());
    std::int64_t total = 0;
    for (auto e : genus_representatives(d, t, budget)) {
        AdtForm Ae(e, t);
        auto psi = isometry_between(Ad.form(), Ae.form(), budget);
        require(psi.has_value(), ErrorKind::InvalidLattice, "genus member without isometric discriminant form");
        const auto Ge = transport(Ad.form(), Ae.form(), *psi, gs, budget);
        const auto OA = isometry_group(Ae.form(), budget);
        total += double_coset_count(Ae.form(), OA, lattice_isometry_image(Ae), Ge);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Hassett-Tschinkel classification
// ---------------------------------------------------------------------------

enum class HTClass { SingleFibrationCovers, TwoFibrationsCover, NonJacobianPartnersExist, Inconclusive };

inline std::string to_string(HTClass c)
{
    switch (c) {
    case HTClass::SingleFibrationCovers:
        return "SingleFibrationCovers";
    case HTClass::TwoFibrationsCover:
        return "TwoFibrationsCover";
    case HTClass::NonJacobianPartnersExist:
        return "NonJacobianPartnersExist";
    default:
        return "Inconclusive";
    }
}

inline HTClass ht_classify(std::int64_t d, std::int64_t t, bool t_general)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    const std::int64_t m = gcd(d, t);
    if (m == 1)
        return HTClass::SingleFibrationCovers;
    const int w = omega(m);
    if (w == 1)
        return HTClass::TwoFibrationsCover;
    if (t_general || w >= 7)
        return HTClass::NonJacobianPartnersExist;
    return HTClass::Inconclusive;
}

} // namespace k3fm

#endif // K3FM_SURFACES_HPP
