#include <gtest/gtest.h>

#include "k3fm/k3fm.hpp"
#include "oracles.hpp"

using namespace k3fm;

namespace {

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidParameter;
}

GSpec pm(std::int64_t d, std::int64_t t)
{
    return GSpec::t_general(AdtForm(d, t).form());
}

} // namespace

TEST(Jacobian, Index)
{
    EXPECT_EQ(jacobian_index(5, 2), 5);
    EXPECT_EQ(jacobian_index(6, 4), 3);
    EXPECT_EQ(jacobian_index(9, 9), 1);
    EXPECT_EQ(jacobian_index(9, 0), 1);
    for (int t = 1; t <= 24; ++t)
        for (int k = 0; k < 4 * t; ++k) {
            EXPECT_EQ(jacobian_index(t, k), t / std::gcd(t, k));
            EXPECT_EQ(jacobian_index(t, k), jacobian_index(t, jacobian_class_canonical(k, t)));
        }
}

TEST(Jacobian, Compose)
{
    EXPECT_EQ(jacobian_compose(2, 3, 5), 1);
    EXPECT_EQ(jacobian_compose(1, 4, 7), 4);
    EXPECT_EQ(jacobian_compose(4, 4, 6), 4);
    EXPECT_EQ(jacobian_compose(-1, 2, 7), 5);
}

TEST(Jacobian, Canonical)
{
    EXPECT_EQ(jacobian_class_canonical(7, 5), 2);
    EXPECT_EQ(jacobian_class_canonical(3, 5), 2);
    EXPECT_EQ(jacobian_class_canonical(0, 8), 0);
    for (int t = 1; t <= 24; ++t)
        for (int k = -2 * t; k < 4 * t; ++k) {
            EXPECT_EQ(jacobian_class_canonical(k + t, t), jacobian_class_canonical(k, t));
            EXPECT_EQ(jacobian_class_canonical(-k, t), jacobian_class_canonical(k, t));
        }
}

TEST(Jacobian, CompositionLaws)
{
    for (int t = 1; t <= 16; ++t)
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b) {
                EXPECT_EQ(jacobian_compose(a, b, t), jacobian_compose(b, a, t));
                for (int c = 0; c < t; c += 3)
                    EXPECT_EQ(jacobian_compose(jacobian_compose(a, b, t), c, t),
                              jacobian_compose(a, jacobian_compose(b, c, t), t));
            }
}

TEST(CoprimeClasses, Examples)
{
    EXPECT_EQ(coprime_jacobian_classes(5, UnitsSubgroup::plus_minus_one(5)).count, 2);
    auto B4 = UnitsSubgroup::generated_by(13, {5});
    EXPECT_EQ(B4.order(), 4);
    EXPECT_EQ(coprime_jacobian_classes(13, B4).count, 3);
    auto B6 = UnitsSubgroup::generated_by(7, {3});
    EXPECT_EQ(B6.order(), 6);
    auto c = coprime_jacobian_classes(7, B6);
    EXPECT_EQ(c.count, 1);
    EXPECT_EQ(c.representatives, std::vector<std::int64_t>{1});
}

TEST(CoprimeClasses, CountIsPhiOverB)
{
    for (int t = 3; t <= 40; ++t) {
        auto B = UnitsSubgroup::plus_minus_one(t);
        auto c = coprime_jacobian_classes(t, B);
        EXPECT_EQ(c.count, euler_phi(t) / 2);
        // representatives: least member of each coset
        for (auto r : c.representatives)
            EXPECT_LE(r, t - r);
    }
}

TEST(CoprimeClasses, Errors)
{
    EXPECT_EQ(kind_of([] { coprime_jacobian_classes(2, UnitsSubgroup::plus_minus_one(2)); }), ErrorKind::OutOfScope);
    EXPECT_EQ(kind_of([] { coprime_jacobian_classes(13, UnitsSubgroup::generated_by(13, {3})); }),
              ErrorKind::InvalidUnitsSubgroup);
    EXPECT_EQ(kind_of([] { UnitsSubgroup::generated_by(12, {4}); }), ErrorKind::InvalidUnitsSubgroup);
}

TEST(JSpecial, Examples)
{
    EXPECT_TRUE(jspecial_torsor_exists(13, 4));
    EXPECT_FALSE(jspecial_torsor_exists(7, 4));
    EXPECT_TRUE(jspecial_torsor_exists(7, 6));
    EXPECT_EQ(kind_of([] { jspecial_torsor_exists(2, 4); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { jspecial_torsor_exists(9, 4); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { jspecial_torsor_exists(5, 3); }), ErrorKind::InvalidParameter);
}

TEST(JSpecial, TruthTable)
{
    for (int p = 3; p < 100; p += 2) {
        bool prime = true;
        for (int q = 3; q * q <= p; q += 2)
            prime = prime && p % q != 0;
        if (!prime)
            continue;
        // -1 is a square mod p iff p = 1 mod 4; a primitive cube root of 1 exists iff p = 1 mod 3
        bool minus_one_square = false, cube_root = false;
        for (int x = 1; x < p; ++x) {
            minus_one_square = minus_one_square || (x * x) % p == p - 1;
            cube_root = cube_root || (x != 1 && (x * x * x) % p == 1);
        }
        EXPECT_EQ(jspecial_torsor_exists(p, 4), minus_one_square) << p;
        EXPECT_EQ(jspecial_torsor_exists(p, 6), cube_root) << p;
    }
}

TEST(Caldararu, Examples)
{
    AdtForm A(1, 5);
    auto c = caldararu_class(A, {0, 0, 1, 0});
    EXPECT_EQ(c.divisibility, 5);
    EXPECT_EQ(c.element, A.form().neg(A.hstar()));
    auto f = caldararu_class(A, {1, 0, 0, 0});
    EXPECT_EQ(f.divisibility, 1);
    EXPECT_EQ(f.element, A.form().zero());
    auto g = caldararu_class(A, {0, 0, 1, 1});
    EXPECT_EQ(g.divisibility, 1);
    EXPECT_EQ(g.element, A.form().zero());
}

TEST(Caldararu, Errors)
{
    AdtForm A(1, 5);
    EXPECT_EQ(kind_of([&] { caldararu_class(A, {0, 0, 2, 0}); }), ErrorKind::InvalidMukaiVector);
    EXPECT_EQ(kind_of([&] { caldararu_class(A, {1, 1, 0, 0}); }), ErrorKind::InvalidMukaiVector);
}

TEST(Caldararu, FibreClassGeneratesV)
{
    for (int t = 1; t <= 20; ++t)
        for (int d = 0; d < t; ++d) {
            AdtForm A(d, t);
            auto c = caldararu_class(A, {0, 0, 1, 0});
            EXPECT_EQ(c.divisibility, t);
            EXPECT_EQ(subgroup_of(A, c.element), subgroup_of(A, canonical_pair(A).v));
            // F' gives the class of v'
            const std::int64_t m = std::gcd(d, t);
            auto c2 = caldararu_class(A, {0, t / m, -d / m, 0});
            EXPECT_EQ(c2.element, A.form().neg(canonical_pair(A).vprime));
        }
}

TEST(Caldararu, UnitsActionCarriesFToFPrime)
{
    for (int t = 2; t <= 24; ++t)
        for (int d = 0; d < t; ++d) {
            if (std::gcd(d, t) != 1 || (d + 1) % t == 0)
                continue;
            AdtForm A(d, t);
            const auto w = caldararu_class(A, {0, 0, 1, 0}).element;
            const std::int64_t k = mod(-inv_mod(d, t), t);
            const auto img = units_action(A, k, w);
            const auto vp = canonical_pair(A).vprime;
            EXPECT_TRUE(img == vp || img == A.form().neg(vp)) << d << " " << t;
        }
}

TEST(Fibrations, Count)
{
    EXPECT_EQ(fibration_count(4, 5), 1);
    EXPECT_EQ(fibration_count(1, 5), 2);
    EXPECT_EQ(fibration_count(0, 1), 1);
}

TEST(Fibrations, Isomorphic)
{
    EXPECT_TRUE(fibrations_isomorphic(1, 5, true));
    EXPECT_FALSE(fibrations_isomorphic(2, 5, true));
    EXPECT_FALSE(fibrations_isomorphic(0, 5, true));
    EXPECT_EQ(kind_of([] { fibrations_isomorphic(2, 5, false); }), ErrorKind::NotApplicable);
    EXPECT_EQ(kind_of([] { fibrations_isomorphic(4, 5, true); }), ErrorKind::NotApplicable);
    EXPECT_EQ(kind_of([] { fibrations_isomorphic(0, 2, true); }), ErrorKind::NotApplicable);
}

TEST(Fibrations, SecondFibrationJacobian)
{
    EXPECT_EQ(second_fibration_jacobian(2, 5), 3);
    EXPECT_EQ(second_fibration_jacobian(1, 5), 1);
    EXPECT_EQ(second_fibration_jacobian(3, 7), 5);
    EXPECT_EQ(kind_of([] { second_fibration_jacobian(2, 6); }), ErrorKind::NotApplicable);
    EXPECT_EQ(kind_of([] { second_fibration_jacobian(4, 5); }), ErrorKind::NotApplicable);
}

TEST(Fibrations, Jac0)
{
    EXPECT_TRUE(jac0_isomorphic(2, 5));
    EXPECT_FALSE(jac0_isomorphic(2, 6));
    EXPECT_TRUE(jac0_isomorphic(3, 10));
    EXPECT_EQ(kind_of([] { jac0_isomorphic(1, 5); }), ErrorKind::NotApplicable);
    EXPECT_EQ(kind_of([] { jac0_isomorphic(4, 5); }), ErrorKind::NotApplicable);
}

TEST(GOrders, Allowed)
{
    EXPECT_EQ(allowed_G_orders(20), (std::vector<std::int64_t>{2, 4, 6, 8, 10, 12, 22, 44, 50, 66}));
    EXPECT_EQ(allowed_G_orders(21), std::vector<std::int64_t>{2});
    EXPECT_EQ(allowed_G_orders(1), std::vector<std::int64_t>{2});
    for (std::int64_t rk = 1; rk <= 22; ++rk)
        for (auto n : allowed_G_orders(rk)) {
            EXPECT_EQ(n % 2, 0);
            EXPECT_EQ(rk % euler_phi(n), 0);
        }
}

TEST(AutOrders, Examples)
{
    for (int t = 3; t <= 12; ++t)
        for (int d = 0; d < t; ++d) {
            AdtForm A(d, t);
            EXPECT_EQ(aut_orders(A, GSpec::t_general(A.form())).aut_fixing_fibre, 1);
        }
    for (int d = 0; d < 4; ++d) {
        AdtForm A(d, 1);
        EXPECT_EQ(aut_orders(A, GSpec::t_general(A.form())).aut, 2);
    }
    AdtForm B(0, 2);
    EXPECT_EQ(aut_orders(B, GSpec::t_general(B.form())).aut_fixing_fibre, 2);
}

TEST(AutOrders, PositiveImageInsideLatticeImage)
{
    for (int t = 1; t <= 12; ++t)
        for (int d = 0; d < t; ++d) {
            AdtForm A(d, t);
            auto full = lattice_isometry_image(A);
            auto plus = positive_isometry_image(A);
            for (const auto& g : plus)
                EXPECT_TRUE(std::find(full.begin(), full.end(), g) != full.end());
            EXPECT_LE(plus.size(), 2u);
            if (fibration_count(d, t) == 1)
                EXPECT_EQ(plus.size(), 1u);
        }
}

// The lattice-isometry image used by fm_count, cross-checked against O(A):
// the induced maps of the box-searched isometries all lie in O(A).
TEST(AutOrders, LatticeImageMatchesNaive)
{
    for (int t = 1; t <= 8; ++t)
        for (int d = 0; d < t; ++d) {
            AdtForm A(d, t);
            auto img = lattice_isometry_image(A);
            auto O = isometry_group(A.form());
            std::set<DFIsometry> naive;
            for (const auto& P : oracle::lattice_isometries(d, d, t, 2 * (t + d) + 2)) {
                Rank2Isometry g{P[0], P[1], P[2], P[3]};
                naive.insert(induced_isometry(A.form(), [&](const RationalVector& x) { return apply(g, x); }));
            }
            EXPECT_EQ(std::set<DFIsometry>(img.begin(), img.end()), naive);
            for (const auto& g : img)
                EXPECT_TRUE(std::find(O.begin(), O.end(), g) != O.end());
        }
}

TEST(SurfaceModel, Validation)
{
    auto M = SurfaceModel::general(2, 7);
    EXPECT_NO_THROW(M.validate());
    auto bad = M;
    bad.B = UnitsSubgroup::generated_by(7, {2}); // order 3, no -1
    EXPECT_EQ(kind_of([&] { bad.validate(); }), ErrorKind::InvalidUnitsSubgroup);
    auto b4 = SurfaceModel::general(1, 13);
    b4.B = b4.Btilde = UnitsSubgroup::generated_by(13, {5});
    EXPECT_EQ(kind_of([&] { b4.validate(); }), ErrorKind::InvalidUnitsSubgroup);
    b4.isotrivial_j = IsotrivialJ::J1728;
    EXPECT_NO_THROW(b4.validate());
    auto sub = SurfaceModel::general(1, 13);
    sub.Btilde = UnitsSubgroup::plus_minus_one(13);
    sub.B = UnitsSubgroup::generated_by(13, {5});
    sub.isotrivial_j = IsotrivialJ::J1728;
    EXPECT_EQ(kind_of([&] { sub.validate(); }), ErrorKind::InvalidUnitsSubgroup);
    EXPECT_NO_THROW(SurfaceModel::general(0, 2).validate());
}

TEST(DECounts, Examples)
{
    EXPECT_EQ(de_counts(SurfaceModel::general(1, 5)), (DECounts{2, 1}));
    EXPECT_EQ(de_counts(SurfaceModel::general(0, 5)), (DECounts{4, 2}));
    EXPECT_EQ(de_counts(SurfaceModel::general(6, 6)), (DECounts{4, 4}));
}

TEST(DECounts, ClosedFormForTGeneral)
{
    for (int t = 3; t <= 24; ++t)
        for (int d = 0; d < t; ++d)
            EXPECT_EQ(de_counts(SurfaceModel::general(d, t)), de_closed_form(d, t)) << d << " " << t;
}

TEST(FMCount, Examples)
{
    for (int d = -2; d < 5; ++d)
        EXPECT_EQ(fm_count(d, 1, pm(d, 1)), 1);
    EXPECT_EQ(fm_count(1, 5, pm(1, 5)), 2);
    EXPECT_EQ(fm_count(0, 5, pm(0, 5)), 2);
}

TEST(FMCount, AgreesWithDoubleCosetOracle)
{
    for (auto [d, t] : {std::pair{1, 5}, {0, 5}, {2, 5}, {0, 3}, {1, 4}, {2, 6}, {0, 4}, {3, 7}, {1, 7}})
        EXPECT_EQ(fm_count(d, t, pm(d, t)), oracle::fm_count_pm(d, t)) << d << " " << t;
}

TEST(FMCount, AtLeastOne)
{
    for (int t = 1; t <= 12; ++t)
        for (int d = 0; d < t; ++d)
            EXPECT_GE(fm_count(d, t, pm(d, t)), 1);
}

TEST(HT, DecisionTable)
{
    EXPECT_EQ(ht_classify(1, 5, true), HTClass::SingleFibrationCovers);
    EXPECT_EQ(ht_classify(1, 5, false), HTClass::SingleFibrationCovers);
    EXPECT_EQ(ht_classify(5, 25, false), HTClass::TwoFibrationsCover);
    EXPECT_EQ(ht_classify(6, 6, true), HTClass::NonJacobianPartnersExist);
    EXPECT_EQ(ht_classify(6, 6, false), HTClass::Inconclusive);
    EXPECT_EQ(ht_classify(510510, 510510, false), HTClass::NonJacobianPartnersExist);
    EXPECT_EQ(ht_classify(30030, 30030, false), HTClass::Inconclusive);
}

TEST(HT, Invariances)
{
    for (int t = 2; t <= 30; ++t)
        for (int d = 0; d < t; ++d)
            for (bool g : {true, false}) {
                EXPECT_EQ(ht_classify(d, t, g), ht_classify(d + 3 * t, t, g));
                if (std::gcd(d, t) == 1)
                    EXPECT_EQ(ht_classify(d, t, g), ht_classify(inv_mod(d, t), t, g));
            }
}

TEST(HT, CoprimeMeansSingleDoubleCoset)
{
    for (int t = 3; t <= 20; ++t)
        for (int d = 0; d < t; ++d)
            if (std::gcd(d, t) == 1) {
                AdtForm A(d, t);
                EXPECT_EQ(double_quotient(A, GSpec::t_general(A.form())).count, 1);
                // orbit of the fibre class under the units, modulo +-1
                const auto w = caldararu_class(A, {0, 0, 1, 0}).element;
                std::set<std::set<DFElement>> classes;
                for (int k = 1; k < t; ++k)
                    if (std::gcd(k, t) == 1) {
                        auto x = units_action(A, k, w);
                        classes.insert({x, A.form().neg(x)});
                    }
                EXPECT_EQ(static_cast<std::int64_t>(classes.size()),
                          coprime_jacobian_classes(t, UnitsSubgroup::plus_minus_one(t)).count);
            }
}
