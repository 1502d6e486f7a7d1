#ifndef K3FM_DISCFORMS_HPP
#define K3FM_DISCFORMS_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3fm/arith.hpp"
#include "k3fm/error.hpp"
#include "k3fm/lattices.hpp"

// Finite quadratic forms (discriminant forms) q: A -> Q/2Z, b: A x A -> Q/Z.
//
// Convention: everything in this library runs on A_NS = A_{d,t}. The form on
// the transcendental side is A_{d,t}(-1); negating q changes neither
// isotropy, nor orders, nor the isometry group, so callers never need it.

namespace k3fm {

/// Element of a finite abelian group given by residues modulo the generator orders.
struct DFElement {
    std::vector<std::int64_t> coords;

    friend auto operator<=>(const DFElement&, const DFElement&) = default;
    friend bool operator==(const DFElement&, const DFElement&) = default;

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i)
            s += (i ? "," : "") + std::to_string(coords[i]);
        return s + ")";
    }
};

namespace detail {

/// Inverse of a unimodular integer matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& M)
{
    const std::size_t n = M.dim();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = Rational(M(i, j));
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        require(p < n, ErrorKind::InvalidParameter, "matrix is singular");
        std::swap(a[p], a[c]);
        Rational piv = a[c][c];
        for (auto& x : a[c])
            x /= piv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            Rational f = a[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    IntMatrix inv(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            require(is_integral(a[i][n + j]), ErrorKind::InvalidParameter, "matrix is not unimodular");
            inv(i, j) = numerator(a[i][n + j]);
        }
    return inv;
}

} // namespace detail

/// Finite quadratic form on A = (+) Z/n_i. Values of q on generators live in
/// (1/N)Z/2Z and of b in (1/N)Z/Z with N the exponent of A; they are stored as
/// integer numerators over N.
class FiniteQuadForm {
public:
    /// Explicit construction from generator orders and q/b values.
    static FiniteQuadForm from_values(std::vector<std::int64_t> orders, const std::vector<Rational>& q,
                                      const std::vector<std::vector<Rational>>& b)
    {
        FiniteQuadForm A;
        const std::size_t k = orders.size();
        require(q.size() == k && b.size() == k, ErrorKind::InvalidParameter, "q/b tables do not match generator count");
        A.orders_ = std::move(orders);
        A.level_ = 1;
        for (auto n : A.orders_) {
            require(n >= 1, ErrorKind::InvalidParameter, "generator orders must be positive");
            A.level_ = lcm(A.level_, n);
        }
        A.qnum_.resize(k);
        A.bnum_.assign(k, std::vector<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i) {
            const std::int64_t n = A.orders_[i];
            Rational nq = q[i] * n;
            require(is_integral(nq) && numerator(Rational(nq * n)) % 2 == 0, ErrorKind::InvalidParameter,
                    "q value of generator " + std::to_string(i) + " inconsistent with its order");
            A.qnum_[i] = A.to_num(q[i], 2);
            for (std::size_t j = 0; j < k; ++j) {
                require(b[i][j] == b[j][i] || is_integral(b[i][j] - b[j][i]), ErrorKind::InvalidParameter,
                        "b table not symmetric");
                require(is_integral(b[i][j] * n), ErrorKind::InvalidParameter, "b value inconsistent with orders");
                A.bnum_[i][j] = A.to_num(b[i][j], 1);
            }
            require(is_integral(b[i][i] - q[i]), ErrorKind::InvalidParameter, "b(x,x) must equal q(x) mod 1");
        }
        A.check_nondegenerate();
        return A;
    }

    /// Discriminant form L*/L of an even lattice, on SNF generators.
    static FiniteQuadForm from_lattice(const Lattice& L)
    {
        const std::size_t n = L.rank();
        SmithForm snf = smith_normal_form(L.gram());
        IntMatrix Uinv = detail::inverse_unimodular(snf.U);

        FiniteQuadForm A;
        A.lattice_ = L;
        A.level_ = 1;
        std::vector<Rational> q;
        for (std::size_t i = 0; i < n; ++i) {
            require(snf.D(i, i) != 0, ErrorKind::InvalidLattice, "degenerate lattice");
            if (snf.D(i, i) == 1)
                continue;
            std::int64_t ni = to_int64(snf.D(i, i));
            A.orders_.push_back(ni);
            A.level_ = lcm(A.level_, ni);
            std::vector<BigInt> y(n);
            for (std::size_t r = 0; r < n; ++r)
                y[r] = Uinv(r, i);
            A.lifts_.push_back(L.solve(y));
            std::vector<BigInt> row(n);
            for (std::size_t c = 0; c < n; ++c)
                row[c] = snf.U(i, c);
            A.coord_rows_.push_back(row);
        }
        const std::size_t k = A.orders_.size();
        A.qnum_.resize(k);
        A.bnum_.assign(k, std::vector<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i) {
            A.qnum_[i] = A.to_num(L.square(A.lifts_[i]), 2);
            for (std::size_t j = 0; j < k; ++j)
                A.bnum_[i][j] = A.to_num(L.pair(A.lifts_[i], A.lifts_[j]), 1);
        }
        return A;
    }

    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    std::int64_t level() const { return level_; }

    std::int64_t order() const
    {
        __int128 s = 1;
        for (auto n : orders_) {
            s *= n;
            require(s <= std::numeric_limits<std::int64_t>::max(), ErrorKind::Capacity, "group order exceeds 64 bits");
        }
        return static_cast<std::int64_t>(s);
    }

    bool has_lattice() const { return lattice_.has_value(); }
    const Lattice& lattice() const
    {
        require(lattice_.has_value(), ErrorKind::InvalidElement, "form has no underlying lattice");
        return *lattice_;
    }

    Rational q_generator(std::size_t i) const { return make_rational(qnum_[i], level_); }
    Rational b_generator(std::size_t i, std::size_t j) const { return make_rational(bnum_[i][j], level_); }

    // --- elements -----------------------------------------------------------

    DFElement zero() const { return DFElement{std::vector<std::int64_t>(rank(), 0)}; }

    DFElement generator(std::size_t i) const
    {
        DFElement x = zero();
        x.coords[i] = mod(1, orders_[i]);
        return x;
    }

    DFElement element(std::vector<std::int64_t> coords) const
    {
        require(coords.size() == rank(), ErrorKind::InvalidElement, "element has wrong number of coordinates");
        for (std::size_t i = 0; i < rank(); ++i)
            coords[i] = mod(coords[i], orders_[i]);
        return DFElement{std::move(coords)};
    }

    void check(const DFElement& x) const
    {
        require(x.coords.size() == rank(), ErrorKind::InvalidElement, "element belongs to a different form");
        for (std::size_t i = 0; i < rank(); ++i)
            require(x.coords[i] >= 0 && x.coords[i] < orders_[i], ErrorKind::InvalidElement,
                    "element coordinates not reduced");
    }

    DFElement add(const DFElement& x, const DFElement& y) const
    {
        DFElement r = x;
        for (std::size_t i = 0; i < rank(); ++i)
            r.coords[i] = mod(x.coords[i] + y.coords[i], orders_[i]);
        return r;
    }

    DFElement neg(const DFElement& x) const { return scale(x, -1); }

    DFElement scale(const DFElement& x, std::int64_t k) const
    {
        DFElement r = x;
        for (std::size_t i = 0; i < rank(); ++i)
            r.coords[i] = mulmod(x.coords[i], mod(k, orders_[i]), orders_[i]);
        return r;
    }

    /// lcm of the coordinate orders.
    std::int64_t element_order(const DFElement& x) const
    {
        std::int64_t o = 1;
        for (std::size_t i = 0; i < rank(); ++i)
            o = lcm(o, orders_[i] / gcd(x.coords[i], orders_[i]));
        return o;
    }

    /// Numerator of q(x) over N, in [0, 2N).
    std::int64_t q_num(const DFElement& x) const
    {
        const std::int64_t M = 2 * level_;
        __int128 s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            const std::int64_t ci = x.coords[i];
            if (ci == 0)
                continue;
            s += mulmod(mulmod(ci, ci, M), qnum_[i], M);
            for (std::size_t j = i + 1; j < rank(); ++j)
                if (x.coords[j] != 0)
                    s += mulmod(2 * bnum_[i][j], mulmod(ci, x.coords[j], M), M);
            s %= M;
        }
        return static_cast<std::int64_t>(s % M);
    }

    /// Numerator of b(x,y) over N, in [0, N).
    std::int64_t b_num(const DFElement& x, const DFElement& y) const
    {
        const std::int64_t N = level_;
        __int128 s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x.coords[i] == 0)
                continue;
            for (std::size_t j = 0; j < rank(); ++j)
                if (y.coords[j] != 0)
                    s += mulmod(bnum_[i][j], mulmod(x.coords[i], y.coords[j], N), N);
            s %= N;
        }
        return static_cast<std::int64_t>(s % N);
    }

    /// q(x) in [0, 2)
    Rational q(const DFElement& x) const
    {
        check(x);
        return make_rational(q_num(x), level_);
    }

    /// b(x, y) in [0, 1)
    Rational b(const DFElement& x, const DFElement& y) const
    {
        check(x);
        check(y);
        return make_rational(b_num(x, y), level_);
    }

    bool is_isotropic(const DFElement& x) const { return q_num(x) == 0; }

    /// Visits every element in lexicographic coordinate order.
    void for_each_element(const std::function<void(const DFElement&)>& f) const
    {
        DFElement x = zero();
        for (;;) {
            f(x);
            std::size_t i = rank();
            while (i > 0) {
                --i;
                if (++x.coords[i] < orders_[i])
                    break;
                x.coords[i] = 0;
                if (i == 0)
                    return;
            }
            if (rank() == 0)
                return;
        }
    }

    std::vector<DFElement> elements(std::int64_t cap) const
    {
        require(order() <= cap, ErrorKind::Capacity,
                "|A| = " + std::to_string(order()) + " exceeds enumeration budget " + std::to_string(cap));
        std::vector<DFElement> out;
        out.reserve(static_cast<std::size_t>(order()));
        for_each_element([&](const DFElement& x) { out.push_back(x); });
        return out;
    }

    // --- lattice bridge -----------------------------------------------------

    /// Class of a dual-lattice vector x in L*/L.
    DFElement from_vector(const RationalVector& x) const
    {
        const Lattice& L = lattice();
        auto y = L.dual_coordinates(x);
        DFElement e = zero();
        for (std::size_t i = 0; i < rank(); ++i) {
            BigInt z = 0;
            for (std::size_t c = 0; c < y.size(); ++c)
                z += coord_rows_[i][c] * y[c];
            BigInt r = z % orders_[i];
            if (r < 0)
                r += orders_[i];
            e.coords[i] = r.convert_to<std::int64_t>();
        }
        return e;
    }

    /// A rational representative in L* of the class x.
    RationalVector lift(const DFElement& x) const
    {
        const Lattice& L = lattice();
        RationalVector v(std::vector<Rational>(L.rank(), Rational(0)));
        for (std::size_t i = 0; i < rank(); ++i)
            v = v + Rational(x.coords[i]) * lifts_[i];
        return v;
    }

    const std::vector<RationalVector>& generator_lifts() const { return lifts_; }

    // --- constructions ------------------------------------------------------

    /// A(-1)
    FiniteQuadForm negated() const
    {
        FiniteQuadForm A = *this;
        for (auto& x : A.qnum_)
            x = mod(-x, 2 * level_);
        for (auto& row : A.bnum_)
            for (auto& x : row)
                x = mod(-x, level_);
        A.lattice_.reset();
        A.lifts_.clear();
        A.coord_rows_.clear();
        return A;
    }

    /// Orthogonal direct sum; generators of `other` follow those of *this.
    FiniteQuadForm direct_sum(const FiniteQuadForm& other) const
    {
        std::vector<std::int64_t> orders = orders_;
        orders.insert(orders.end(), other.orders_.begin(), other.orders_.end());
        const std::size_t k = orders.size(), k1 = rank();
        std::vector<Rational> q(k);
        std::vector<std::vector<Rational>> b(k, std::vector<Rational>(k, Rational(0)));
        for (std::size_t i = 0; i < k; ++i) {
            const auto& src = i < k1 ? *this : other;
            std::size_t ii = i < k1 ? i : i - k1;
            q[i] = src.q_generator(ii);
            for (std::size_t j = 0; j < k; ++j) {
                if ((i < k1) != (j < k1))
                    continue;
                std::size_t jj = j < k1 ? j : j - k1;
                b[i][j] = src.b_generator(ii, jj);
            }
        }
        return from_values(orders, q, b);
    }

    /// Structural equality (same generators, orders, q and b values).
    bool same_structure(const FiniteQuadForm& o) const
    {
        if (orders_ != o.orders_)
            return false;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (q_generator(i) != o.q_generator(i))
                return false;
            for (std::size_t j = 0; j < rank(); ++j)
                if (b_generator(i, j) != o.b_generator(i, j))
                    return false;
        }
        return true;
    }

private:
    FiniteQuadForm() = default;

    /// Numerator over N of x reduced modulo `modulus`.
    std::int64_t to_num(const Rational& x, std::int64_t modulus) const
    {
        Rational s = reduce_mod(x, modulus) * level_;
        require(is_integral(s), ErrorKind::InvalidParameter, "value " + to_string(x) + " not in (1/N)Z");
        return to_int64(numerator(s));
    }

    void check_nondegenerate() const
    {
        if (order() > 4'000'000)
            return;
        bool ok = true;
        for_each_element([&](const DFElement& x) {
            if (!ok || x == zero())
                return;
            bool radical = true;
            for (std::size_t i = 0; i < rank() && radical; ++i)
                radical = b_num(x, generator(i)) == 0;
            if (radical)
                ok = false;
        });
        require(ok, ErrorKind::InvalidParameter, "bilinear form is degenerate");
    }

    std::vector<std::int64_t> orders_;
    std::int64_t level_ = 1;
    std::vector<std::int64_t> qnum_;
    std::vector<std::vector<std::int64_t>> bnum_;
    std::optional<Lattice> lattice_;
    std::vector<RationalVector> lifts_;
    std::vector<std::vector<BigInt>> coord_rows_;
};

inline FiniteQuadForm from_lattice(const Lattice& L)
{
    return FiniteQuadForm::from_lattice(L);
}

// ---------------------------------------------------------------------------
// isometries
// ---------------------------------------------------------------------------

/// Homomorphism given by the images of the source generators.
struct DFIsometry {
    std::vector<DFElement> images;

    friend auto operator<=>(const DFIsometry&, const DFIsometry&) = default;
    friend bool operator==(const DFIsometry&, const DFIsometry&) = default;

    static DFIsometry identity(const FiniteQuadForm& A)
    {
        DFIsometry g;
        for (std::size_t i = 0; i < A.rank(); ++i)
            g.images.push_back(A.generator(i));
        return g;
    }

    static DFIsometry minus_identity(const FiniteQuadForm& A)
    {
        DFIsometry g;
        for (std::size_t i = 0; i < A.rank(); ++i)
            g.images.push_back(A.neg(A.generator(i)));
        return g;
    }

    /// Image of x under the map into `target`.
    DFElement apply(const FiniteQuadForm& target, const DFElement& x) const
    {
        DFElement r = target.zero();
        for (std::size_t i = 0; i < x.coords.size(); ++i)
            if (x.coords[i] != 0)
                r = target.add(r, target.scale(images[i], x.coords[i]));
        return r;
    }

    /// (this o other)(x) = this(other(x)), both automorphisms of A.
    DFIsometry compose(const FiniteQuadForm& A, const DFIsometry& other) const
    {
        DFIsometry r;
        for (const auto& img : other.images)
            r.images.push_back(apply(A, img));
        return r;
    }

    DFIsometry power(const FiniteQuadForm& A, std::int64_t k) const
    {
        DFIsometry r = identity(A);
        for (std::int64_t i = 0; i < k; ++i)
            r = compose(A, r);
        return r;
    }

    std::int64_t order(const FiniteQuadForm& A) const
    {
        DFIsometry id = identity(A), r = *this;
        std::int64_t k = 1;
        while (r != id) {
            r = compose(A, r);
            ++k;
            require(k <= A.order() * A.order() + 1, ErrorKind::InvalidIsometry, "map is not invertible");
        }
        return k;
    }

    DFIsometry inverse(const FiniteQuadForm& A) const { return power(A, order(A) - 1); }

    /// Well-defined, q-preserving and bijective as a map source -> target.
    bool is_isometry(const FiniteQuadForm& source, const FiniteQuadForm& target) const
    {
        if (images.size() != source.rank() || source.order() != target.order())
            return false;
        for (const auto& img : images) {
            if (img.coords.size() != target.rank())
                return false;
            for (std::size_t i = 0; i < target.rank(); ++i)
                if (img.coords[i] < 0 || img.coords[i] >= target.orders()[i])
                    return false;
        }
        for (std::size_t i = 0; i < source.rank(); ++i) {
            if (target.scale(images[i], source.orders()[i]) != target.zero())
                return false;
            if (target.q(images[i]) != source.q_generator(i))
                return false;
            for (std::size_t j = 0; j < source.rank(); ++j)
                if (target.b(images[i], images[j]) != source.b_generator(i, j))
                    return false;
        }
        // b is nondegenerate on the source, so preserving b forces injectivity.
        return true;
    }

    bool is_isometry(const FiniteQuadForm& A) const { return is_isometry(A, A); }

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < images.size(); ++i)
            s += (i ? "," : "") + images[i].str();
        return s + "]";
    }
};

namespace detail {

/// Backtracking over generator images: image of generator i must be killed
/// by n_i, carry q_i, and pair correctly with earlier images. `visit` returns
/// false to stop.
inline void search_isometries(const FiniteQuadForm& source, const FiniteQuadForm& target, const Budget& budget,
                              const std::function<bool(const DFIsometry&)>& visit)
{
    require(source.order() <= budget.form_order && target.order() <= budget.form_order, ErrorKind::Capacity,
            "|A| = " + std::to_string(std::max(source.order(), target.order())) +
                " exceeds isometry enumeration budget " + std::to_string(budget.form_order));
    if (source.order() != target.order())
        return;
    const auto all = target.elements(budget.form_order);
    const std::size_t k = source.rank();
    std::vector<std::vector<const DFElement*>> candidates(k);
    std::vector<std::int64_t> qnum(all.size());
    for (std::size_t e = 0; e < all.size(); ++e)
        qnum[e] = target.q_num(all[e]);
    for (std::size_t i = 0; i < k; ++i) {
        const Rational qi = source.q_generator(i);
        for (std::size_t e = 0; e < all.size(); ++e) {
            if (target.scale(all[e], source.orders()[i]) != target.zero())
                continue;
            if (make_rational(qnum[e], target.level()) != qi)
                continue;
            candidates[i].push_back(&all[e]);
        }
    }
    DFIsometry cur;
    cur.images.resize(k);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop)
            return;
        if (i == k) {
            if (!visit(cur))
                stop = true;
            return;
        }
        for (const DFElement* h : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = target.b(*h, cur.images[j]) == source.b_generator(i, j);
            if (!ok)
                continue;
            cur.images[i] = *h;
            rec(i + 1);
            if (stop)
                return;
        }
    };
    rec(0);
}

} // namespace detail

/// O(A), sorted by generator images.
inline std::vector<DFIsometry> isometry_group(const FiniteQuadForm& A, const Budget& budget = {})
{
    std::vector<DFIsometry> out;
    detail::search_isometries(A, A, budget, [&](const DFIsometry& g) {
        out.push_back(g);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::optional<DFIsometry> isometry_between(const FiniteQuadForm& A1, const FiniteQuadForm& A2,
                                                  const Budget& budget = {})
{
    std::optional<DFIsometry> found;
    detail::search_isometries(A1, A2, budget, [&](const DFIsometry& g) {
        found = g;
        return false;
    });
    return found;
}

/// Action on A = L*/L of a lattice isometry `g` of L (given on coordinates).
inline DFIsometry induced_isometry(const FiniteQuadForm& A,
                                   const std::function<RationalVector(const RationalVector&)>& g)
{
    DFIsometry r;
    for (const auto& lift : A.generator_lifts())
        r.images.push_back(A.from_vector(g(lift)));
    require(r.is_isometry(A), ErrorKind::InvalidIsometry, "lattice map does not induce an isometry");
    return r;
}

// ---------------------------------------------------------------------------
// primary decomposition
// ---------------------------------------------------------------------------

/// The p-part A^(p) with maps to and from A. Generator j of the part is
/// include_mult[j] * g_{gen_index[j]} in A.
struct PrimaryPart {
    std::int64_t p;
    FiniteQuadForm form;
    std::vector<std::size_t> gen_index;
    std::vector<std::int64_t> include_mult;
    std::vector<std::int64_t> project_mult;

    DFElement project(const FiniteQuadForm& A, const DFElement& x) const
    {
        (void)A;
        DFElement y = form.zero();
        for (std::size_t j = 0; j < gen_index.size(); ++j)
            y.coords[j] = mulmod(x.coords[gen_index[j]], project_mult[j], form.orders()[j]);
        return y;
    }

    DFElement include(const FiniteQuadForm& A, const DFElement& y) const
    {
        DFElement x = A.zero();
        for (std::size_t j = 0; j < gen_index.size(); ++j) {
            std::size_t i = gen_index[j];
            x.coords[i] = mulmod(y.coords[j], include_mult[j], A.orders()[i]);
        }
        return x;
    }
};

inline std::vector<PrimaryPart> primary_decomposition(const FiniteQuadForm& A)
{
    std::vector<PrimaryPart> parts;
    for (const auto& f : factorize(A.order())) {
        std::vector<std::int64_t> orders;
        std::vector<std::size_t> idx;
        std::vector<std::int64_t> inc, proj;
        for (std::size_t i = 0; i < A.rank(); ++i) {
            const std::int64_t n = A.orders()[i];
            std::int64_t pk = 1;
            while (n % (pk * f.p) == 0)
                pk *= f.p;
            if (pk == 1)
                continue;
            const std::int64_t r = n / pk;
            orders.push_back(pk);
            idx.push_back(i);
            inc.push_back(r);
            // c*g_i has p-part e*c*g_i with e = r * (r^{-1} mod pk); in terms
            // of h = r*g_i that is (r^{-1} mod pk) * c * h.
            proj.push_back(inv_mod(r, pk));
        }
        std::vector<Rational> q;
        std::vector<std::vector<Rational>> b(orders.size(), std::vector<Rational>(orders.size()));
        for (std::size_t j = 0; j < orders.size(); ++j) {
            DFElement hj = A.scale(A.generator(idx[j]), inc[j]);
            q.push_back(A.q(hj));
            for (std::size_t l = 0; l < orders.size(); ++l)
                b[j][l] = A.b(hj, A.scale(A.generator(idx[l]), inc[l]));
        }
        parts.push_back({f.p, FiniteQuadForm::from_values(orders, q, b), idx, inc, proj});
    }
    return parts;
}

// ---------------------------------------------------------------------------
// the family A_{d,t}
// ---------------------------------------------------------------------------

/// A_{d,t} = Z/a + Z/b with a = gcd(2d, t), b = t^2/a.
inline std::pair<std::int64_t, std::int64_t> structure_invariants(std::int64_t d, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    std::int64_t a = gcd(2 * d, t);
    return {a, t / a * t};
}

/// q(a F* + b H*) = 2a(bt - ad)/t^2, reduced into [0, 2).
inline Rational q_eval(std::int64_t d, std::int64_t t, std::int64_t a, std::int64_t b)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    BigInt num = BigInt(2) * a * (BigInt(b) * t - BigInt(a) * d);
    return reduce_mod(Rational(num, BigInt(t) * t), 2);
}

/// Discriminant form of Lambda_{d,t} together with the classes of F*, H*.
class AdtForm {
public:
    AdtForm(std::int64_t d, std::int64_t t)
        : ns_(d, t), form_(FiniteQuadForm::from_lattice(ns_.lattice())), dual_(dual_generators(ns_)),
          fstar_(form_.from_vector(dual_.Fstar)), hstar_(form_.from_vector(dual_.Hstar))
    {
    }

    std::int64_t d() const { return ns_.d(); }
    std::int64_t t() const { return ns_.t(); }
    std::int64_t m() const { return ns_.m(); }
    const NSLattice& ns() const { return ns_; }
    const FiniteQuadForm& form() const { return form_; }

    const DFElement& fstar() const { return fstar_; }
    const DFElement& hstar() const { return hstar_; }

    /// a F* + b H*
    DFElement from_fh(std::int64_t a, std::int64_t b) const
    {
        return form_.add(form_.scale(fstar_, a), form_.scale(hstar_, b));
    }

    DFElement from_vector(const RationalVector& x) const { return form_.from_vector(x); }

private:
    NSLattice ns_;
    FiniteQuadForm form_;
    DualGenerators dual_;
    DFElement fstar_;
    DFElement hstar_;
};

} // namespace k3fm

#endif // K3FM_DISCFORMS_HPP
