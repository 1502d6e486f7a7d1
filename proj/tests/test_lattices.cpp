#include <gtest/gtest.h>

#include "k3fm/k3fm.hpp"
#include "oracles.hpp"

using namespace k3fm;

namespace {

IntMatrix mul3(const IntMatrix& U, const IntMatrix& M, const IntMatrix& V)
{
    return U * M * V;
}

bool unimodular(const IntMatrix& U)
{
    auto d = U.determinant();
    return d == 1 || d == -1;
}

void expect_snf(const IntMatrix& M)
{
    auto S = smith_normal_form(M);
    EXPECT_EQ(mul3(S.U, M, S.V), S.D) << M.str();
    EXPECT_TRUE(unimodular(S.U));
    EXPECT_TRUE(unimodular(S.V));
    EXPECT_TRUE(S.D.is_diagonal());
    for (std::size_t i = 0; i + 1 < S.D.dim(); ++i) {
        EXPECT_GE(S.D(i, i), 0);
        if (S.D(i, i) != 0)
            EXPECT_EQ(S.D(i + 1, i + 1) % S.D(i, i), 0);
        else
            EXPECT_EQ(S.D(i + 1, i + 1), 0);
    }
}

} // namespace

TEST(SmithNormalForm, Identity)
{
    auto S = smith_normal_form(IntMatrix::identity(2));
    EXPECT_EQ(S.D, IntMatrix::identity(2));
}

TEST(SmithNormalForm, HyperbolicTimesFive)
{
    IntMatrix M{{0, 5}, {5, 0}};
    auto S = smith_normal_form(M);
    EXPECT_EQ(S.D, (IntMatrix{{5, 0}, {0, 5}}));
    expect_snf(M);
}

TEST(SmithNormalForm, Unimodular)
{
    IntMatrix M{{2, 1}, {1, 0}};
    EXPECT_EQ(smith_normal_form(M).D, IntMatrix::identity(2));
    expect_snf(M);
}

TEST(SmithNormalForm, Assorted)
{
    expect_snf(IntMatrix{{6, 4}, {4, 0}});
    expect_snf(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    expect_snf(IntMatrix{{0, 0}, {0, 0}});
    expect_snf(IntMatrix{{0, 3}, {0, 0}});
    expect_snf(IntMatrix{{12, 18, 30}, {8, 20, 4}, {6, 6, 6}});
    for (int d = -4; d <= 6; ++d)
        for (int t = 1; t <= 12; ++t)
            expect_snf(ns_gram(d, t).gram());
}

TEST(NsGram, Examples)
{
    EXPECT_EQ(ns_gram(1, 1).gram(), (IntMatrix{{2, 1}, {1, 0}}));
    EXPECT_EQ(ns_gram(0, 5).lattice().det(), -25);
    EXPECT_EQ(ns_gram(3, 4).gram(), (IntMatrix{{6, 4}, {4, 0}}));
    EXPECT_EQ(ns_gram(3, 4).m(), 1);
    EXPECT_EQ(ns_gram(6, 4).m(), 2);
    EXPECT_EQ(ns_gram(0, 6).m(), 6);
}

TEST(NsGram, DeterminantIsMinusTSquared)
{
    for (int d = -10; d <= 30; ++d)
        for (int t = 1; t <= 30; ++t)
            EXPECT_EQ(ns_gram(d, t).lattice().det(), -t * t);
}

TEST(NsGram, RejectsNonPositiveT)
{
    EXPECT_THROW(ns_gram(1, 0), Error);
    try {
        ns_gram(1, -3);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
    }
}

TEST(LatticeType, Validation)
{
    EXPECT_THROW(Lattice(IntMatrix{{1, 0}, {0, 2}}), Error); // odd
    EXPECT_THROW(Lattice(IntMatrix{{2, 2}, {2, 2}}), Error); // degenerate
    EXPECT_THROW(Lattice(IntMatrix{{2, 1}, {0, 2}}), Error); // not symmetric
    try {
        Lattice(IntMatrix{{1, 0}, {0, 2}});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidLattice);
    }
    Lattice U(IntMatrix{{0, 1}, {1, 0}}, {"e", "f"});
    EXPECT_EQ(U.det(), -1);
    EXPECT_EQ(U.labels()[1], "f");
}

TEST(DualGenerators, PairingIdentities)
{
    for (int d = -5; d <= 12; ++d)
        for (int t = 1; t <= 15; ++t) {
            NSLattice ns(d, t);
            auto L = ns.lattice();
            auto g = dual_generators(ns);
            EXPECT_EQ(L.pair(g.Fstar, NSLattice::F()), 1);
            EXPECT_EQ(L.pair(g.Fstar, NSLattice::H()), 0);
            EXPECT_EQ(L.pair(g.Hstar, NSLattice::H()), 1);
            EXPECT_EQ(L.pair(g.Hstar, NSLattice::F()), 0);
        }
}

TEST(DualGenerators, Examples)
{
    auto g = dual_generators(NSLattice(1, 5));
    EXPECT_EQ(g.Fstar, (RationalVector{make_rational(1, 5), make_rational(-2, 25)}));
    EXPECT_EQ(g.Hstar, (RationalVector{Rational(0), make_rational(1, 5)}));
    auto g0 = dual_generators(NSLattice(0, 3));
    EXPECT_EQ(g0.Fstar, (RationalVector{make_rational(1, 3), Rational(0)}));
}

TEST(IsotropicRays, Examples)
{
    EXPECT_EQ(isotropic_rays(NSLattice(1, 5)).Fprime, (RationalVector{Rational(5), Rational(-1)}));
    EXPECT_EQ(isotropic_rays(NSLattice(0, 7)).Fprime, (RationalVector{Rational(1), Rational(0)}));
    EXPECT_EQ(isotropic_rays(NSLattice(2, 4)).Fprime, (RationalVector{Rational(2), Rational(-1)}));
}

TEST(IsotropicRays, MatchBoxSearch)
{
    for (int d = 0; d <= 8; ++d)
        for (int t = 1; t <= 10; ++t) {
            NSLattice ns(d, t);
            auto rays = isotropic_rays(ns);
            std::set<std::pair<std::int64_t, std::int64_t>> expected;
            for (const auto& v : {rays.F, rays.Fprime}) {
                auto x = static_cast<std::int64_t>(numerator(v[0])), y = static_cast<std::int64_t>(numerator(v[1]));
                EXPECT_TRUE(v.is_integral());
                EXPECT_EQ(ns.lattice().square(v), 0);
                expected.insert({x, y});
                expected.insert({-x, -y});
            }
            auto found = oracle::primitive_isotropic(d, t, 3 * t + d + 2);
            std::set<std::pair<std::int64_t, std::int64_t>> got(found.begin(), found.end());
            EXPECT_EQ(got, expected) << "d=" << d << " t=" << t;
        }
}

TEST(Overlattice, TrivialSubgroup)
{
    auto T = NSLattice(2, 5).lattice();
    auto O = overlattice(T, {});
    EXPECT_EQ(O.index, 1);
    EXPECT_EQ(O.lattice.gram(), T.gram());
}

TEST(Overlattice, HOverTGivesU)
{
    auto T = NSLattice(0, 5).lattice();
    auto O = overlattice(T, {RationalVector{make_rational(1, 5), Rational(0)}});
    EXPECT_EQ(O.index, 5);
    EXPECT_EQ(O.lattice.det(), -1);
    const auto& G = O.lattice.gram();
    EXPECT_TRUE(oracle::gl_equivalent_to_U({G(0, 0).convert_to<std::int64_t>(), G(0, 1).convert_to<std::int64_t>(),
                                            G(1, 0).convert_to<std::int64_t>(), G(1, 1).convert_to<std::int64_t>()},
                                           3));
}

TEST(Overlattice, DeterminantIdentity)
{
    auto T = NSLattice(0, 6).lattice();
    auto O = overlattice(T, {RationalVector{make_rational(1, 6), Rational(0)}});
    EXPECT_EQ(O.lattice.det() * O.index * O.index, T.det());
    EXPECT_EQ(O.lattice.det(), -1);
}

TEST(Overlattice, AllIsotropicSubgroupsOfA0t)
{
    for (int t = 1; t <= 8; ++t) {
        auto T = NSLattice(0, t).lattice();
        for (const auto& H : oracle::isotropic_subgroups_A0(t)) {
            std::vector<RationalVector> gens;
            for (auto [i, j] : H.gens)
                gens.push_back(RationalVector{make_rational(i, t), make_rational(j, t)});
            auto O = overlattice(T, gens);
            EXPECT_EQ(O.index, static_cast<long>(H.elements.size()));
            EXPECT_EQ(O.lattice.det() * O.index * O.index, T.det());
        }
    }
}

TEST(Overlattice, Errors)
{
    auto T = NSLattice(0, 2).lattice();
    // (1/2)(H + F) has square 1: not isotropic
    try {
        overlattice(T, {RationalVector{make_rational(1, 2), make_rational(1, 2)}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidSubgroup);
    }
    // 1/3 H is not in the dual of Lambda_{0,2}
    try {
        overlattice(T, {RationalVector{make_rational(1, 3), Rational(0)}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidElement);
    }
}

TEST(Rank2Isometry, Examples)
{
    EXPECT_TRUE(is_isometric_rank2(4, 4, 9));
    EXPECT_TRUE(is_isometric_rank2(2, 3, 5));
    EXPECT_FALSE(is_isometric_rank2(1, 2, 5));
    EXPECT_TRUE(is_isometric_rank2(3, 3 + 7 * 4, 7));
}

TEST(Rank2Isometry, AgreesWithBoxSearch)
{
    for (int t = 1; t <= 8; ++t)
        for (int d = 0; d < t; ++d)
            for (int e = 0; e < t; ++e)
                EXPECT_EQ(is_isometric_rank2(d, e, t), oracle::lattices_isometric(d, e, t))
                    << d << " " << e << " " << t;
}

TEST(Rank2Isometry, EquivalenceRelation)
{
    for (int t = 1; t <= 12; ++t)
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b) {
                EXPECT_EQ(is_isometric_rank2(a, b, t), is_isometric_rank2(b, a, t));
                if (!is_isometric_rank2(a, b, t))
                    continue;
                for (int c = 0; c < t; ++c)
                    if (is_isometric_rank2(b, c, t))
                        EXPECT_TRUE(is_isometric_rank2(a, c, t));
            }
}

// closed form for m = 1 (not used by the library): e = d or d^-1 mod t
TEST(Rank2Isometry, CoprimeClosedFormObserved)
{
    for (int t = 2; t <= 20; ++t)
        for (int d = 0; d < t; ++d) {
            if (std::gcd(d, t) != 1)
                continue;
            for (int e = 0; e < t; ++e) {
                if (std::gcd(e, t) != 1)
                    continue;
                bool closed = (e - d) % t == 0 || (static_cast<long>(d) * e - 1) % t == 0;
                EXPECT_EQ(is_isometric_rank2(d, e, t), closed) << d << " " << e << " " << t;
            }
        }
}

TEST(Rank2Isometry, AutomorphismsMatchBoxSearch)
{
    for (int t = 1; t <= 9; ++t)
        for (int d = 0; d < t; ++d) {
            auto lib = rank2_automorphisms(d, t);
            auto naive = oracle::lattice_isometries(d, d, t, 2 * (t + d) + 2);
            EXPECT_EQ(lib.size(), naive.size()) << d << " " << t;
        }
}

TEST(Genus, Examples)
{
    EXPECT_EQ(genus_representatives(0, 1), std::vector<std::int64_t>{0});
    EXPECT_EQ(genus_representatives(1, 5), (std::vector<std::int64_t>{1, 4}));
    EXPECT_EQ(genus_representatives(0, 5), std::vector<std::int64_t>{0});
}

TEST(Genus, AgreesWithOracle)
{
    for (int t = 1; t <= 7; ++t)
        for (int d = 0; d < t; ++d)
            EXPECT_EQ(genus_representatives(d, t), oracle::genus(d, t)) << d << " " << t;
}

TEST(Genus, MembersPairwiseDistinctAndInGenus)
{
    for (int t = 1; t <= 16; ++t)
        for (int d = 0; d < t; ++d) {
            auto reps = genus_representatives(d, t);
            ASSERT_FALSE(reps.empty());
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = 0; j < reps.size(); ++j) {
                    EXPECT_TRUE(isometry_between(AdtForm(reps[i], t).form(), AdtForm(reps[j], t).form()));
                    if (i != j)
                        EXPECT_FALSE(is_isometric_rank2(reps[i], reps[j], t));
                }
        }
}
