#ifndef K3FM_LATTICES_HPP
#define K3FM_LATTICES_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3fm/arith.hpp"
#include "k3fm/error.hpp"

namespace k3fm {

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// Dense square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;

    explicit IntMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : dim_(rows.size())
    {
        a_.reserve(dim_ * dim_);
        for (const auto& row : rows) {
            require(row.size() == dim_, ErrorKind::InvalidParameter, "matrix must be square");
            for (long long x : row)
                a_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t dim)
    {
        IntMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t dim() const { return dim_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    IntMatrix transposed() const
    {
        IntMatrix t(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const { return *this == transposed(); }

    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                if (i != j && (*this)(i, j) != 0)
                    return false;
        return true;
    }

    /// Bareiss fraction-free elimination.
    BigInt determinant() const
    {
        if (dim_ == 0)
            return 1;
        IntMatrix m = *this;
        BigInt sign = 1, prev = 1;
        for (std::size_t k = 0; k + 1 < dim_; ++k) {
            if (m(k, k) == 0) {
                std::size_t r = k + 1;
                while (r < dim_ && m(r, k) == 0)
                    ++r;
                if (r == dim_)
                    return 0;
                m.swap_rows(k, r);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < dim_; ++i)
                for (std::size_t j = k + 1; j < dim_; ++j)
                    m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            prev = m(k, k);
        }
        return sign * m(dim_ - 1, dim_ - 1);
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        for (std::size_t c = 0; c < dim_; ++c)
            std::swap((*this)(i, c), (*this)(j, c));
    }

    void swap_cols(std::size_t i, std::size_t j)
    {
        for (std::size_t r = 0; r < dim_; ++r)
            std::swap((*this)(r, i), (*this)(r, j));
    }

    /// row_dst += factor * row_src
    void add_row(std::size_t dst, std::size_t src, const BigInt& factor)
    {
        for (std::size_t c = 0; c < dim_; ++c)
            (*this)(dst, c) += factor * (*this)(src, c);
    }

    void add_col(std::size_t dst, std::size_t src, const BigInt& factor)
    {
        for (std::size_t r = 0; r < dim_; ++r)
            (*this)(r, dst) += factor * (*this)(r, src);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < dim_; ++c)
            (*this)(i, c) = -(*this)(i, c);
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y)
    {
        require(x.dim_ == y.dim_, ErrorKind::InvalidParameter, "dimension mismatch");
        IntMatrix r(x.dim_);
        for (std::size_t i = 0; i < x.dim_; ++i)
            for (std::size_t k = 0; k < x.dim_; ++k) {
                if (x(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < x.dim_; ++j)
                    r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < dim_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < dim_; ++j)
                s += (j ? "," : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t dim_ = 0;
    std::vector<BigInt> a_;
};

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithForm {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;
};

namespace detail {

inline BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

} // namespace detail

/// U * M * V = D with D = diag(d1 | d2 | ...), d_i >= 0, U and V unimodular.
/// Pivot is always the entry of smallest absolute value (ties: first in
/// row-major order), so the output is deterministic.
inline SmithForm smith_normal_form(const IntMatrix& M)
{
    const std::size_t n = M.dim();
    IntMatrix A = M;
    IntMatrix U = IntMatrix::identity(n);
    IntMatrix V = IntMatrix::identity(n);

    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // smallest nonzero entry in the trailing block
            std::optional<std::pair<std::size_t, std::size_t>> piv;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (A(i, j) != 0 && (!piv || detail::babs(A(i, j)) < detail::babs(A(piv->first, piv->second))))
                        piv = std::make_pair(i, j);
            if (!piv)
                break;
            if (piv->first != k) {
                A.swap_rows(k, piv->first);
                U.swap_rows(k, piv->first);
            }
            if (piv->second != k) {
                A.swap_cols(k, piv->second);
                V.swap_cols(k, piv->second);
            }

            bool dirty = false;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (A(i, k) == 0)
                    continue;
                BigInt q = A(i, k) / A(k, k);
                A.add_row(i, k, -q);
                U.add_row(i, k, -q);
                dirty |= A(i, k) != 0;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (A(k, j) == 0)
                    continue;
                BigInt q = A(k, j) / A(k, k);
                A.add_col(j, k, -q);
                V.add_col(j, k, -q);
                dirty |= A(k, j) != 0;
            }
            if (dirty)
                continue;

            // divisibility of the remaining block
            std::optional<std::size_t> bad_row;
            for (std::size_t i = k + 1; i < n && !bad_row; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (A(i, j) % A(k, k) != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            A.add_row(k, *bad_row, 1);
            U.add_row(k, *bad_row, 1);
        }
        if (A(k, k) < 0) {
            A.negate_row(k);
            U.negate_row(k);
        }
    }
    return {A, U, V};
}

// ---------------------------------------------------------------------------
// rational vectors and lattices
// ---------------------------------------------------------------------------

/// Coordinates in L (x) Q with respect to a lattice basis.
struct RationalVector {
    std::vector<Rational> coords;

    RationalVector() = default;
    explicit RationalVector(std::vector<Rational> c) : coords(std::move(c)) {}
    RationalVector(std::initializer_list<Rational> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }

    friend RationalVector operator+(RationalVector a, const RationalVector& b)
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += b[i];
        return a;
    }
    friend RationalVector operator-(RationalVector a, const RationalVector& b)
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] -= b[i];
        return a;
    }
    friend RationalVector operator*(const Rational& s, RationalVector a)
    {
        for (auto& x : a.coords)
            x *= s;
        return a;
    }
    friend bool operator==(const RationalVector&, const RationalVector&) = default;

    bool is_integral() const
    {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return k3fm::is_integral(x); });
    }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < size(); ++i)
            s += (i ? "," : "") + to_string(coords[i]);
        return s + ")";
    }
};

/// Even nondegenerate integral lattice given by its Gram matrix.
class Lattice {
public:
    Lattice(IntMatrix gram, std::vector<std::string> labels = {}) : gram_(std::move(gram)), labels_(std::move(labels))
    {
        require(gram_.dim() > 0, ErrorKind::InvalidLattice, "empty Gram matrix");
        require(gram_.is_symmetric(), ErrorKind::InvalidLattice, "Gram matrix not symmetric");
        for (std::size_t i = 0; i < gram_.dim(); ++i)
            require(gram_(i, i) % 2 == 0, ErrorKind::InvalidLattice, "Gram matrix has odd diagonal (lattice not even)");
        det_ = gram_.determinant();
        require(det_ != 0, ErrorKind::InvalidLattice, "Gram matrix is degenerate");
        if (labels_.empty())
            for (std::size_t i = 0; i < gram_.dim(); ++i)
                labels_.push_back("e" + std::to_string(i + 1));
        require(labels_.size() == gram_.dim(), ErrorKind::InvalidLattice, "label count differs from rank");
    }

    const IntMatrix& gram() const { return gram_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t rank() const { return gram_.dim(); }
    const BigInt& det() const { return det_; }

    Rational pair(const RationalVector& x, const RationalVector& y) const
    {
        check_dim(x);
        check_dim(y);
        Rational s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0)
                continue;
            for (std::size_t j = 0; j < rank(); ++j)
                if (gram_(i, j) != 0)
                    s += x[i] * Rational(gram_(i, j)) * y[j];
        }
        return s;
    }

    Rational square(const RationalVector& x) const { return pair(x, x); }

    RationalVector basis_vector(std::size_t i) const
    {
        RationalVector v(std::vector<Rational>(rank(), Rational(0)));
        v[i] = 1;
        return v;
    }

    /// x lies in L* iff x pairs integrally with every basis vector.
    bool in_dual(const RationalVector& x) const
    {
        for (std::size_t i = 0; i < rank(); ++i)
            if (!is_integral(pair(x, basis_vector(i))))
                return false;
        return true;
    }

    /// Integer vector G x of pairings with the basis; x must lie in L*.
    std::vector<BigInt> dual_coordinates(const RationalVector& x) const
    {
        std::vector<BigInt> y(rank());
        for (std::size_t i = 0; i < rank(); ++i) {
            Rational p = pair(basis_vector(i), x);
            require(is_integral(p), ErrorKind::InvalidElement, "vector " + x.str() + " is not in the dual lattice");
            y[i] = numerator(p);
        }
        return y;
    }

    /// x with G x = y for an integer vector y (Cramer via rational elimination).
    RationalVector solve(const std::vector<BigInt>& y) const
    {
        const std::size_t n = rank();
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                a[i][j] = Rational(gram_(i, j));
            a[i][n] = Rational(y[i]);
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (a[p][c] == 0)
                ++p;
            std::swap(a[p], a[c]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a[r][c] == 0)
                    continue;
                Rational f = a[r][c] / a[c][c];
                for (std::size_t j = c; j <= n; ++j)
                    a[r][j] -= f * a[c][j];
            }
        }
        RationalVector x{std::vector<Rational>(n)};
        for (std::size_t i = 0; i < n; ++i)
            x[i] = a[i][n] / a[i][i];
        return x;
    }

private:
    void check_dim(const RationalVector& x) const
    {
        require(x.size() == rank(), ErrorKind::InvalidElement, "vector dimension differs from lattice rank");
    }

    IntMatrix gram_;
    std::vector<std::string> labels_;
    BigInt det_;
};

// ---------------------------------------------------------------------------
// the rank-2 family Lambda_{d,t} with basis (H, F)
// ---------------------------------------------------------------------------

/// Lambda_{d,t}: Gram [[2d, t], [t, 0]] on the basis (H, F).
class NSLattice {
public:
    NSLattice(std::int64_t d, std::int64_t t) : d_(d), t_(t)
    {
        require(t >= 1, ErrorKind::InvalidParameter, "t must be positive (got " + std::to_string(t) + ")");
        m_ = gcd(d, t);
    }

    std::int64_t d() const { return d_; }
    std::int64_t t() const { return t_; }
    /// gcd(d, t)
    std::int64_t m() const { return m_; }

    IntMatrix gram() const
    {
        IntMatrix g(2);
        g(0, 0) = BigInt(2) * d_;
        g(0, 1) = t_;
        g(1, 0) = t_;
        g(1, 1) = 0;
        return g;
    }

    Lattice lattice() const { return Lattice(gram(), {"H", "F"}); }

    static RationalVector H() { return {Rational(1), Rational(0)}; }
    static RationalVector F() { return {Rational(0), Rational(1)}; }

private:
    std::int64_t d_;
    std::int64_t t_;
    std::int64_t m_;
};

inline NSLattice ns_gram(std::int64_t d, std::int64_t t)
{
    return NSLattice(d, t);
}

struct DualGenerators {
    RationalVector Fstar; // pairs to 1 with F, 0 with H
    RationalVector Hstar; // pairs to 1 with H, 0 with F
};

/// F* = (1/t) H - (2d/t^2) F, H* = (1/t) F.
inline DualGenerators dual_generators(const NSLattice& ns)
{
    const std::int64_t d = ns.d(), t = ns.t();
    RationalVector fstar{make_rational(1, t), Rational(BigInt(-2 * d), BigInt(t) * t)};
    RationalVector hstar{Rational(0), make_rational(1, t)};
    return {fstar, hstar};
}

struct IsotropicRays {
    RationalVector F;
    RationalVector Fprime;
};

/// F and F' = (tH - dF)/gcd(d,t): the two primitive isotropic vectors up to sign.
inline IsotropicRays isotropic_rays(const NSLattice& ns)
{
    const std::int64_t m = ns.m();
    return {NSLattice::F(), RationalVector{make_rational(ns.t(), m), make_rational(-ns.d(), m)}};
}

// ---------------------------------------------------------------------------
// overlattices
// ---------------------------------------------------------------------------

struct Overlattice {
    Lattice lattice;
    /// Rows: basis of the overlattice in coordinates of T's basis.
    std::vector<RationalVector> basis;
    /// [L : T] = |H|
    BigInt index;
};

namespace detail {

/// Row-echelon basis of the integer row span (full column rank assumed).
inline std::vector<std::vector<BigInt>> integer_row_basis(std::vector<std::vector<BigInt>> rows, std::size_t n)
{
    std::size_t pivot = 0;
    for (std::size_t c = 0; c < n && pivot < rows.size(); ++c) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t r = pivot; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (!best || babs(rows[r][c]) < babs(rows[*best][c])))
                    best = r;
            if (!best)
                break;
            std::swap(rows[pivot], rows[*best]);
            bool done = true;
            for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0)
                    continue;
                BigInt q = rows[r][c] / rows[pivot][c];
                for (std::size_t j = 0; j < n; ++j)
                    rows[r][j] -= q * rows[pivot][j];
                done &= rows[r][c] == 0;
            }
            if (done)
                break;
        }
        if (pivot < rows.size() && rows[pivot][c] != 0)
            ++pivot;
    }
    rows.resize(pivot);
    return rows;
}

} // namespace detail

/// Overlattice of T spanned by T and the subgroup of A_T generated by `gens`
/// (rational coordinates in T's basis).
inline Overlattice overlattice(const Lattice& T, const std::vector<RationalVector>& gens)
{
    const std::size_t n = T.rank();
    for (const auto& g : gens) {
        require(g.size() == n, ErrorKind::InvalidElement, "generator dimension differs from lattice rank");
        require(T.in_dual(g), ErrorKind::InvalidElement, "generator " + g.str() + " is not in the dual lattice");
    }
    // The generated subgroup is isotropic iff every generator has even square
    // and all mutual pairings are integral.
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Rational sq = T.square(gens[i]);
        require(is_integral(sq) && numerator(sq) % 2 == 0, ErrorKind::InvalidSubgroup,
                "generator " + gens[i].str() + " is not isotropic (square " + to_string(sq) + ")");
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            require(is_integral(T.pair(gens[i], gens[j])), ErrorKind::InvalidSubgroup,
                    "generators " + gens[i].str() + " and " + gens[j].str() + " pair non-integrally");
    }

    BigInt den = 1;
    for (const auto& g : gens)
        for (const auto& x : g.coords)
            den = boost::multiprecision::lcm(den, denominator(x));

    std::vector<std::vector<BigInt>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<BigInt> r(n);
        r[i] = den;
        rows.push_back(r);
    }
    for (const auto& g : gens) {
        std::vector<BigInt> r(n);
        for (std::size_t j = 0; j < n; ++j)
            r[j] = numerator(g[j] * Rational(den));
        rows.push_back(r);
    }
    auto basis_rows = detail::integer_row_basis(rows, n);

    std::vector<RationalVector> basis;
    IntMatrix B(n);
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector v{std::vector<Rational>(n)};
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = Rational(basis_rows[i][j], den);
            B(i, j) = basis_rows[i][j];
        }
        basis.push_back(v);
    }
    IntMatrix gram(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational p = T.pair(basis[i], basis[j]);
            require(is_integral(p), ErrorKind::InvalidSubgroup, "overlattice not integral");
            gram(i, j) = numerator(p);
        }
    // det(B) / den^n = 1 / [L : T]
    BigInt detB = detail::babs(B.determinant());
    BigInt scale = boost::multiprecision::pow(den, static_cast<unsigned>(n));
    require(scale % detB == 0, ErrorKind::InvalidSubgroup, "overlattice index not integral");
    return {Lattice(gram, T.labels()), basis, scale / detB};
}

// ---------------------------------------------------------------------------
// isometries inside the family
// ---------------------------------------------------------------------------

/// 2x2 integer matrix whose columns are the images of H and F in the target
/// basis (H_e, F_e).
struct Rank2Isometry {
    BigInt hx, hy; // image of H
    BigInt fx, fy; // image of F

    friend bool operator==(const Rank2Isometry&, const Rank2Isometry&) = default;
};

/// All isometries Lambda_{d,t} -> Lambda_{e,t}. An isometry sends F to a
/// primitive isotropic vector, i.e. one of +-F, +-F'; the image h of H is then
/// pinned down by h.f = t and h^2 = 2d:
///   f = sF:  x = s,      y = (d - e) / (s t)
///   f = sF': x = s d/m,  y = (s m - x e) / t          (m = gcd(e, t))
/// and the candidate is accepted only when x, y are integral.
inline std::vector<Rank2Isometry> rank2_isometries(std::int64_t d, std::int64_t e, std::int64_t t)
{
    require(t >= 1, ErrorKind::InvalidParameter, "t must be positive");
    std::vector<Rank2Isometry> out;
    const BigInt D = d, E = e, T = t;
    const BigInt m = gcd(e, t);
    auto accept = [&](const Rank2Isometry& c) {
        // verify P^T G_e P = G_d exactly
        auto dot = [&](const BigInt& a1, const BigInt& a2, const BigInt& b1, const BigInt& b2) {
            return 2 * E * a1 * b1 + T * (a1 * b2 + a2 * b1);
        };
        if (dot(c.hx, c.hy, c.hx, c.hy) == 2 * D && dot(c.hx, c.hy, c.fx, c.fy) == T &&
            dot(c.fx, c.fy, c.fx, c.fy) == 0 && std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    };
    for (int s : {1, -1}) {
        // F -> sF
        if ((D - E) % T == 0)
            accept({BigInt(s), (D - E) / (s * T), BigInt(0), BigInt(s)});
        // F -> sF'
        if ((s * D) % m == 0) {
            BigInt x = s * D / m;
            BigInt num = s * m - x * E;
            if (num % T == 0)
                accept({x, num / T, s * T / m, -s * E / m});
        }
    }
    return out;
}

inline bool is_isometric_rank2(std::int64_t d, std::int64_t e, std::int64_t t)
{
    return !rank2_isometries(d, e, t).empty();
}

/// O(Lambda_{d,t}) as integer matrices on (H, F).
inline std::vector<Rank2Isometry> rank2_automorphisms(std::int64_t d, std::int64_t t)
{
    return rank2_isometries(d, d, t);
}

/// The isometry exchanging F and F' when it exists.
inline std::optional<Rank2Isometry> fibre_swap(std::int64_t d, std::int64_t t)
{
    NSLattice ns(d, t);
    auto rays = isotropic_rays(ns);
    for (const auto& g : rank2_automorphisms(d, t)) {
        // image of F equals F'
        if (Rational(g.fx) == rays.Fprime[0] && Rational(g.fy) == rays.Fprime[1] && !(g.fx == 0 && g.fy == 1))
            return g;
    }
    return std::nullopt;
}

inline RationalVector apply(const Rank2Isometry& g, const RationalVector& x)
{
    return {x[0] * Rational(g.hx) + x[1] * Rational(g.fx), x[0] * Rational(g.hy) + x[1] * Rational(g.fy)};
}

} // namespace k3fm

#endif // K3FM_LATTICES_HPP
