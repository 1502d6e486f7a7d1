// Walk through one surface: NS = Lambda_{6,6}, G = {+-id}.
#include <iostream>

#include "k3fm/k3fm.hpp"

using namespace k3fm;

static std::string str(const DFElement& x)
{
    std::string s = "(";
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        s += (i ? "," : "") + std::to_string(x.coords[i]);
    return s + ")";
}

int main()
{
    const std::int64_t d = 6, t = 6;
    AdtForm A(d, t);
    const auto& F = A.form();

    std::cout << "A_{6,6} has order " << F.order() << ", invariants";
    for (auto n : F.orders())
        std::cout << " " << n;
    std::cout << "\n";

    auto c = count_lagrangians(d, t);
    std::cout << "Lagrangian elements " << c.elements << ", subgroups " << c.subgroups << "\n";

    auto pr = canonical_pair(A);
    std::cout << "v = " << str(pr.v) << ", v' = " << str(pr.vprime) << "\n";
    for (const auto& L : enumerate_lagrangian_subgroups(A))
        std::cout << "  " << L.selector_str() << " -> iota -> " << involution(A, L).selector_str() << "\n";

    // the fibre class F as a Mukai vector (0, F, 0)
    auto w = caldararu_class(A, {0, 0, 1, 0});
    std::cout << "Caldararu class of (0,F,0): " << str(w.element) << " (divisibility " << w.divisibility
              << ")\n";

    auto model = SurfaceModel::general(d, t);
    auto de = de_counts(model);
    std::cout << "DE " << de.de << " in " << de.de_orbits << " orbits, double quotient "
              << double_quotient(A, model.G).count << "\n";
    std::cout << "FM partners " << fm_count(d, t, model.G) << "\n";
    std::cout << "class " << to_string(ht_classify(d, t, true)) << " (T-general), "
              << to_string(ht_classify(d, t, false)) << " otherwise\n";
}
