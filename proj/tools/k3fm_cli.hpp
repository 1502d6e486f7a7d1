#ifndef K3FM_TOOLS_CLI_HPP
#define K3FM_TOOLS_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3fm/k3fm.hpp"

namespace k3fm::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { Ok = 0, VerifyMismatch = 1, InvalidInput = 2, CapacityExceeded = 3 };

struct Params {
    std::int64_t d = 0, t = 1, k = 0, l = 0;
    std::int64_t e = 0, a = 0, b = 0;
    std::int64_t g_order = 0;
    std::string g_gen;
    std::int64_t b_order = 0;
    std::string b_gen;
    std::int64_t p = 0, h = 0, rank = 0;
    std::int64_t r = 0, x = 0, y = 0, s = 0;
    std::string gens;
    std::int64_t mask = -1;
    std::int64_t t_min = 1, t_max = 0, d_min = 0, d_max = -1;
    bool json = false, jsonl = false, list = false, count = false, verify = false, formula_only = false;
    bool t_general = false, isometries = false;
    // jac modes
    bool index = false, compose = false, canonical = false, classes = false, second = false, jac0 = false,
         jspecial = false, fibrations = false, g_orders = false;
    std::string out_file;
};

namespace detail {

inline Json coords(const DFElement& x)
{
    return Json(x.coords);
}

inline std::string rat(const Rational& x)
{
    return to_string(x);
}

inline Json selector_json(const LagrangianSubgroup& L)
{
    Json s = Json::object();
    for (const auto& [p, side] : L.selector)
        s[std::to_string(p)] = side == Side::V ? "v" : "v'";
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

inline std::int64_t parse_int(const std::string& s)
{
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(!s.empty() && used == s.size(), ErrorKind::InvalidParameter, "not an integer: '" + s + "'");
    return v;
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(parse_int(s));
    auto den = parse_int(s.substr(slash + 1));
    require(den != 0, ErrorKind::InvalidParameter, "zero denominator in '" + s + "'");
    return make_rational(parse_int(s.substr(0, slash)), den);
}

inline std::vector<std::int64_t> parse_ints(const std::string& s)
{
    std::vector<std::int64_t> out;
    for (const auto& part : split(s, ','))
        out.push_back(parse_int(part));
    return out;
}

/// G from --g-order / --g-gen; +-id when neither is given.
inline GSpec make_g(const Params& P, const AdtForm& A)
{
    if (P.g_gen.empty()) {
        require(P.g_order == 0 || P.g_order == 2, ErrorKind::InvalidParameter,
                "--g-order other than 2 needs --g-gen");
        return GSpec::t_general(A.form());
    }
    require(P.g_order > 0, ErrorKind::InvalidParameter, "--g-gen needs --g-order");
    const auto vals = parse_ints(P.g_gen);
    const auto k = A.form().rank();
    require(vals.size() == k * k, ErrorKind::InvalidParameter,
            "--g-gen needs " + std::to_string(k * k) + " residues (images of the " + std::to_string(k) +
                " generators of A)");
    GSpec G;
    G.order = P.g_order;
    for (std::size_t i = 0; i < k; ++i) {
        DFElement img;
        for (std::size_t j = 0; j < k; ++j)
            img.coords.push_back(mod(vals[i * k + j], A.form().orders()[j]));
        G.generator.images.push_back(img);
    }
    G.validate(A.form());
    return G;
}

inline bool is_t_general(const GSpec& G, const AdtForm& A)
{
    return G.order == 2 && G.generator == DFIsometry::minus_identity(A.form());
}

/// B from --b-gen or --b-order; {+-1} otherwise.
inline UnitsSubgroup make_b(const Params& P)
{
    if (!P.b_gen.empty())
        return UnitsSubgroup::generated_by(P.t, parse_ints(P.b_gen));
    if (P.b_order > 0) {
        // least generator of a cyclic subgroup of that order containing -1
        for (std::int64_t g = 1; g < std::max<std::int64_t>(P.t, 2); ++g) {
            if (gcd(g, P.t) != 1)
                continue;
            auto B = UnitsSubgroup::generated_by(P.t, {g});
            if (B.order() == P.b_order && B.contains(-1))
                return B;
        }
        throw Error(ErrorKind::InvalidUnitsSubgroup,
                    "no cyclic subgroup of order " + std::to_string(P.b_order) + " containing -1 in (Z/" +
                        std::to_string(P.t) + ")*");
    }
    return UnitsSubgroup::plus_minus_one(P.t);
}

} // namespace detail

// ---------------------------------------------------------------------------
// subcommands; each returns a JSON object and its table rendering
// ---------------------------------------------------------------------------

struct Result {
    Json json;
    std::string table;
    int code = Ok;
};

inline Result cmd_disc(const Params& P, const Budget& budget)
{
    AdtForm A(P.d, P.t);
    const auto& F = A.form();
    auto [sa, sb] = structure_invariants(P.d, P.t);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["orders"] = F.orders();
    j["order"] = F.order();
    j["structure"] = {sa, sb};
    Json q = Json::array(), bm = Json::array();
    for (std::size_t i = 0; i < F.rank(); ++i) {
        q.push_back(detail::rat(F.q_generator(i)));
        Json row = Json::array();
        for (std::size_t k = 0; k < F.rank(); ++k)
            row.push_back(detail::rat(F.b_generator(i, k)));
        bm.push_back(row);
    }
    j["q_generators"] = q;
    j["b_generators"] = bm;
    j["fstar"] = detail::coords(A.fstar());
    j["hstar"] = detail::coords(A.hstar());
    Json parts = Json::array();
    for (const auto& part : primary_decomposition(F))
        parts.push_back({{"p", part.p}, {"orders", part.form.orders()}});
    j["primary_parts"] = parts;
    std::ostringstream tab;
    tab << "orders=";
    for (std::size_t i = 0; i < F.rank(); ++i)
        tab << (i ? "," : "") << F.orders()[i];
    tab << " F*=" << A.fstar().str() << " H*=" << A.hstar().str() << "\n";
    if (P.a != 0 || P.b != 0) {
        const auto qv = q_eval(P.d, P.t, P.a, P.b);
        j["q_eval"] = {{"a", P.a}, {"b", P.b}, {"q", detail::rat(qv)}};
        tab << "q(" << P.a << "F*+" << P.b << "H*)=" << detail::rat(qv) << "\n";
    }
    if (P.isometries) {
        const auto O = isometry_group(F, budget);
        j["isometry_group_order"] = static_cast<std::int64_t>(O.size());
        tab << "|O(A)|=" << O.size() << "\n";
    }
    if (P.list) {
        Json els = Json::array();
        for (const auto& x : F.elements(budget.form_order)) {
            els.push_back({{"x", detail::coords(x)}, {"order", F.element_order(x)}, {"q", detail::rat(F.q(x))}});
            tab << x.str() << " order=" << F.element_order(x) << " q=" << detail::rat(F.q(x)) << "\n";
        }
        j["elements"] = els;
    }
    return {j, tab.str()};
}

inline Result cmd_lagr(const Params& P, const Budget& budget)
{
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    const std::int64_t m = gcd(P.d, P.t);
    j["m"] = m;
    j["omega_m"] = omega(m);
    std::ostringstream tab;
    if (P.list) {
        AdtForm A(P.d, P.t);
        Json els = Json::array(), subs = Json::array();
        for (const auto& x : enumerate_lagrangian_elements(A, budget)) {
            els.push_back(detail::coords(x));
            tab << "element " << x.str() << "\n";
        }
        for (const auto& L : enumerate_lagrangian_subgroups(A)) {
            subs.push_back({{"mask", L.mask()}, {"selector", detail::selector_json(L)},
                            {"generator", detail::coords(L.generator)}});
            tab << "subgroup " << L.selector_str() << " generator=" << L.generator.str() << "\n";
        }
        j["elements"] = els;
        j["subgroups"] = subs;
        return {j, tab.str()};
    }
    const auto c = count_lagrangians(P.d, P.t);
    j["lagr_elements"] = c.elements;
    j["lagr_subgroups"] = c.subgroups;
    tab << "elements=" << c.elements << " subgroups=" << c.subgroups << "\n";
    return {j, tab.str()};
}

inline Result cmd_pair(const Params& P, const Budget&)
{
    AdtForm A(P.d, P.t);
    auto pr = canonical_pair(A);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["v"] = detail::coords(pr.v);
    j["vprime"] = detail::coords(pr.vprime);
    const bool same = subgroup_of(A, pr.v) == subgroup_of(A, pr.vprime);
    j["same_subgroup"] = same;
    std::ostringstream tab;
    tab << "v=" << pr.v.str() << " v'=" << pr.vprime.str() << " same_subgroup=" << (same ? "true" : "false") << "\n";
    if (P.k != 0) {
        auto w = units_action(A, P.k, pr.v);
        j["k"] = P.k;
        j["units_action_v"] = detail::coords(w);
        tab << P.k << "*v=" << w.str() << "\n";
    }
    return {j, tab.str()};
}

inline Result cmd_involution(const Params& P, const Budget&)
{
    AdtForm A(P.d, P.t);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    Json subs = Json::array();
    std::ostringstream tab;
    for (const auto& L : enumerate_lagrangian_subgroups(A)) {
        if (P.mask >= 0 && L.mask() != static_cast<std::uint64_t>(P.mask))
            continue;
        auto I = involution(A, L);
        subs.push_back({{"mask", L.mask()}, {"selector", detail::selector_json(L)},
                        {"generator", detail::coords(L.generator)}, {"iota_mask", I.mask()},
                        {"iota_generator", detail::coords(I.generator)}});
        tab << L.selector_str() << " -> " << I.selector_str() << "\n";
    }
    require(P.mask < 0 || !subs.empty(), ErrorKind::InvalidSubgroup, "no subgroup with that selector mask");
    j["subgroups"] = subs;
    return {j, tab.str()};
}

inline Result cmd_genus(const Params& P, const Budget& budget, bool e_given)
{
    const auto reps = genus_representatives(P.d, P.t, budget);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["representatives"] = reps;
    std::ostringstream tab;
    for (std::size_t i = 0; i < reps.size(); ++i)
        tab << (i ? " " : "") << reps[i];
    tab << "\n";
    if (e_given) {
        const bool iso = is_isometric_rank2(P.d, P.e, P.t);
        j["e"] = P.e;
        j["isometric"] = iso;
        tab << "isometric(" << P.d << "," << P.e << ")=" << (iso ? "true" : "false") << "\n";
    }
    return {j, tab.str()};
}

inline Result cmd_fm(const Params& P, const Budget& budget)
{
    AdtForm A(P.d, P.t);
    const auto G = detail::make_g(P, A);
    const auto n = fm_count(P.d, P.t, G, budget);
    const auto aut = aut_orders(A, G);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["g_order"] = G.order;
    j["fm"] = n;
    j["aut"] = aut.aut;
    j["aut_fixing_fibre"] = aut.aut_fixing_fibre;
    std::ostringstream tab;
    tab << "fm=" << n << " aut=" << aut.aut << " aut_fixing_fibre=" << aut.aut_fixing_fibre << "\n";
    return {j, tab.str()};
}

/// de, de_orbits as reported by `de` and `sweep`.
inline DECounts de_values(std::int64_t d, std::int64_t t, const GSpec& G, bool t_general, bool formula_only,
                          const Budget& budget)
{
    if (formula_only && t > 2) {
        require(t_general, ErrorKind::InvalidParameter, "--formula-only needs a T-general G");
        return de_closed_form(d, t);
    }
    SurfaceModel model = SurfaceModel::general(d, t);
    model.G = G;
    model.t_general = t_general;
    return de_counts(model, budget);
}

inline Result cmd_de(const Params& P, const Budget& budget)
{
    AdtForm A(P.d, P.t);
    const auto G = detail::make_g(P, A);
    const bool tg = detail::is_t_general(G, A);
    const auto de = de_values(P.d, P.t, G, tg, P.formula_only, budget);
    const auto dq = double_quotient(A, G);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["g_order"] = G.order;
    j["de"] = de.de;
    j["de_orbits"] = de.de_orbits;
    j["double_quotient"] = dq.count;
    std::ostringstream tab;
    tab << "de=" << de.de << " de_orbits=" << de.de_orbits << " double_quotient=" << dq.count << "\n";
    return {j, tab.str()};
}

inline Result cmd_ht(const Params& P, const Budget&)
{
    const auto c = ht_classify(P.d, P.t, P.t_general);
    const std::int64_t m = gcd(P.d, P.t);
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["m"] = m;
    j["omega_m"] = omega(m);
    j["t_general"] = P.t_general;
    j["ht_class"] = to_string(c);
    return {j, to_string(c) + "\n"};
}

inline Result cmd_jac(const Params& P, const Budget&, bool k_given)
{
    Json j;
    std::ostringstream tab;
    auto need_k = [&] { require(k_given, ErrorKind::InvalidParameter, "this mode needs --k"); };
    if (P.compose) {
        need_k();
        const auto r = jacobian_compose(P.k, P.l, P.t);
        j = {{"t", P.t}, {"k", P.k}, {"l", P.l}, {"composite", r}};
        tab << r << "\n";
    } else if (P.canonical) {
        need_k();
        const auto r = jacobian_class_canonical(P.k, P.t);
        j = {{"t", P.t}, {"k", P.k}, {"canonical", r}};
        tab << r << "\n";
    } else if (P.classes) {
        const auto B = detail::make_b(P);
        const auto c = coprime_jacobian_classes(P.t, B);
        j = {{"t", P.t}, {"b", B.elements()}, {"count", c.count}, {"representatives", c.representatives}};
        tab << "count=" << c.count << " representatives=";
        for (std::size_t i = 0; i < c.representatives.size(); ++i)
            tab << (i ? "," : "") << c.representatives[i];
        tab << "\n";
    } else if (P.second) {
        const auto r = second_fibration_jacobian(P.d, P.t);
        j = {{"d", P.d}, {"t", P.t}, {"jacobian", r}};
        tab << r << "\n";
    } else if (P.jac0) {
        const bool r = jac0_isomorphic(P.d, P.t);
        j = {{"d", P.d}, {"t", P.t}, {"jac0_isomorphic", r}};
        tab << (r ? "true" : "false") << "\n";
    } else if (P.jspecial) {
        const bool r = jspecial_torsor_exists(P.p, static_cast<int>(P.h));
        j = {{"p", P.p}, {"h", P.h}, {"exists", r}};
        tab << (r ? "true" : "false") << "\n";
    } else if (P.fibrations) {
        const int n = fibration_count(P.d, P.t);
        j = {{"d", P.d}, {"t", P.t}, {"fibration_count", n}};
        tab << "fibrations=" << n;
        if (P.t_general) {
            const bool iso = fibrations_isomorphic(P.d, P.t, true);
            j["isomorphic"] = iso;
            tab << " isomorphic=" << (iso ? "true" : "false");
        }
        tab << "\n";
    } else if (P.g_orders) {
        const auto orders = allowed_G_orders(P.rank);
        j = {{"rank", P.rank}, {"g_orders", orders}};
        for (std::size_t i = 0; i < orders.size(); ++i)
            tab << (i ? " " : "") << orders[i];
        tab << "\n";
    } else {
        need_k();
        const auto r = jacobian_index(P.t, P.k);
        j = {{"t", P.t}, {"k", P.k}, {"index", r}};
        tab << r << "\n";
    }
    return {j, tab.str()};
}

inline Result cmd_overlattice(const Params& P, const Budget&)
{
    NSLattice ns(P.d, P.t);
    std::vector<RationalVector> gens;
    for (const auto& g : detail::split(P.gens, ';')) {
        if (g.empty())
            continue;
        RationalVector v;
        for (const auto& c : detail::split(g, ','))
            v.coords.push_back(detail::parse_rational(c));
        require(v.size() == 2, ErrorKind::InvalidElement, "generator '" + g + "' needs two coordinates (H,F)");
        gens.push_back(v);
    }
    auto O = overlattice(ns.lattice(), gens);
    const auto& G = O.lattice.gram();
    Json gram = Json::array();
    std::ostringstream tab;
    for (std::size_t i = 0; i < G.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < G.dim(); ++k)
            row.push_back(to_int64(G(i, k)));
        gram.push_back(row);
    }
    Json basis = Json::array();
    for (const auto& v : O.basis) {
        Json row = Json::array();
        for (const auto& c : v.coords)
            row.push_back(detail::rat(c));
        basis.push_back(row);
    }
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["gram"] = gram;
    j["basis"] = basis;
    j["index"] = to_int64(O.index);
    j["det"] = to_int64(O.lattice.det());
    tab << "gram=" << G.str() << " index=" << O.index.str() << " det=" << O.lattice.det().str() << "\n";
    return {j, tab.str()};
}

inline Result cmd_caldararu(const Params& P, const Budget&)
{
    AdtForm A(P.d, P.t);
    auto c = caldararu_class(A, {P.r, P.x, P.y, P.s});
    Json j;
    j["d"] = P.d;
    j["t"] = P.t;
    j["r"] = P.r;
    j["x"] = P.x;
    j["y"] = P.y;
    j["s"] = P.s;
    j["divisibility"] = c.divisibility;
    j["class"] = detail::coords(c.element);
    std::ostringstream tab;
    tab << "divisibility=" << c.divisibility << " class=" << c.element.str() << "\n";
    return {j, tab.str()};
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepRow {
    std::int64_t d, t, m;
    int omega_m;
    std::int64_t lagr_elements, lagr_subgroups, de, de_orbits;
    std::optional<std::int64_t> fm;
    std::string ht_class;
    std::vector<std::string> mismatches;

    Json json() const
    {
        Json j;
        j["d"] = d;
        j["t"] = t;
        j["m"] = m;
        j["omega_m"] = omega_m;
        j["lagr_elements"] = lagr_elements;
        j["lagr_subgroups"] = lagr_subgroups;
        j["de"] = de;
        j["de_orbits"] = de_orbits;
        j["fm"] = fm ? Json(*fm) : Json(nullptr);
        j["ht_class"] = ht_class;
        return j;
    }

    std::string csv() const
    {
        std::ostringstream o;
        o << d << "," << t << "," << m << "," << omega_m << "," << lagr_elements << "," << lagr_subgroups << ","
          << de << "," << de_orbits << "," << (fm ? std::to_string(*fm) : "") << "," << ht_class;
        return o.str();
    }

    static std::string csv_header()
    {
        return "d,t,m,omega_m,lagr_elements,lagr_subgroups,de,de_orbits,fm,ht_class";
    }
};

/// One cell with G = {+-id}.
inline SweepRow sweep_row(std::int64_t d, std::int64_t t, bool formula_only, bool verify, const Budget& budget)
{
    SweepRow r{};
    r.d = d;
    r.t = t;
    r.m = gcd(d, t);
    r.omega_m = omega(r.m);
    const auto c = count_lagrangians(d, t);
    r.lagr_elements = c.elements;
    r.lagr_subgroups = c.subgroups;
    r.ht_class = to_string(ht_classify(d, t, true));
    if (formula_only && t > 2) {
        const auto de = de_closed_form(d, t);
        r.de = de.de;
        r.de_orbits = de.de_orbits;
    } else {
        AdtForm A(d, t);
        const auto de = de_values(d, t, GSpec::t_general(A.form()), true, false, budget);
        r.de = de.de;
        r.de_orbits = de.de_orbits;
    }
    if (!formula_only) {
        AdtForm A(d, t);
        r.fm = fm_count(d, t, GSpec::t_general(A.form()), budget);
    }
    if (verify) {
        AdtForm A(d, t);
        const auto els = enumerate_lagrangian_elements(A, budget);
        if (static_cast<std::int64_t>(els.size()) != r.lagr_elements)
            r.mismatches.push_back("lagr_elements: enumeration " + std::to_string(els.size()));
        // subgroups generated by the enumerated elements, counted directly
        std::set<std::vector<DFElement>> groups;
        for (const auto& w : els) {
            std::vector<DFElement> g;
            for (std::int64_t k = 0; k < t; ++k)
                g.push_back(A.form().scale(w, k));
            std::sort(g.begin(), g.end());
            groups.insert(g);
        }
        if (static_cast<std::int64_t>(groups.size()) != r.lagr_subgroups)
            r.mismatches.push_back("lagr_subgroups: enumeration " + std::to_string(groups.size()));
        if (t > 2) {
            const auto cf = de_closed_form(d, t);
            if (cf.de != r.de || cf.de_orbits != r.de_orbits)
                r.mismatches.push_back("de: closed form " + std::to_string(cf.de) + "," + std::to_string(cf.de_orbits));
        }
        if (r.fm && *r.fm < 1)
            r.mismatches.push_back("fm < 1");
        if (r.m == 1 && double_quotient(A, GSpec::t_general(A.form())).count != 1)
            r.mismatches.push_back("double quotient != 1 with m = 1");
    }
    return r;
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> sweep_cells(const Params& P, bool d_given)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    require(P.t_min >= 1 || P.t_max < P.t_min, ErrorKind::InvalidParameter, "t must be positive");
    for (std::int64_t t = P.t_min; t <= P.t_max; ++t) {
        const std::int64_t lo = d_given ? P.d_min : 0;
        const std::int64_t hi = d_given ? P.d_max : t - 1;
        for (std::int64_t d = lo; d <= hi; ++d)
            cells.emplace_back(d, t);
    }
    return cells;
}

inline std::vector<SweepRow> run_sweep(const std::vector<std::pair<std::int64_t, std::int64_t>>& cells,
                                       bool formula_only, bool verify, const Budget& budget)
{
    std::vector<SweepRow> rows(cells.size());
    std::vector<std::optional<Error>> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < cells.size();) {
            try {
                rows[i] = sweep_row(cells[i].first, cells[i].second, formula_only, verify, budget);
            } catch (const Error& e) {
                errors[i] = e;
            }
        }
    };
    const auto n = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < std::min(n, cells.size()); ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    for (const auto& e : errors)
        if (e)
            throw *e;
    return rows;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

/// Parses `args` (without the program name), runs, writes to out/err.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Params P;
    CLI::App app{"Lattice and discriminant-form calculator for rank-2 elliptic K3 surfaces", "k3fm"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_dt = [&](CLI::App* s) {
        s->add_option("--d", P.d, "degree parameter d (H^2 = 2d)");
        s->add_option("--t", P.t, "multisection index t")->required();
    };
    auto add_json = [&](CLI::App* s) { s->add_flag("--json", P.json, "JSON output"); };
    auto add_g = [&](CLI::App* s) {
        auto* go = s->add_option("--g-order", P.g_order, "|G|, even");
        auto* gg = s->add_option("--g-gen", P.g_gen, "images of the generators of A, comma separated residues");
        auto* tg = s->add_flag("--t-general", P.t_general, "G = {+-id}");
        tg->excludes(gg);
        tg->excludes(go);
    };

    auto* disc = app.add_subcommand("disc", "discriminant form A_{d,t}");
    add_dt(disc);
    add_json(disc);
    disc->add_option("--a", P.a, "q_eval coefficient of F*");
    disc->add_option("--b", P.b, "q_eval coefficient of H*");
    disc->add_flag("--isometries", P.isometries, "order of O(A)");
    disc->add_flag("--list", P.list, "list all elements");

    auto* lagr = app.add_subcommand("lagr", "Lagrangian elements and subgroups");
    add_dt(lagr);
    add_json(lagr);
    auto* lc = lagr->add_flag("--count", P.count, "closed-form counts (default)");
    lagr->add_flag("--list", P.list, "enumerate")->excludes(lc);

    auto* pair = app.add_subcommand("pair", "canonical pair v, v'");
    add_dt(pair);
    add_json(pair);
    pair->add_option("--k", P.k, "also apply the units action k*v = k^-1 v");

    auto* inv = app.add_subcommand("involution", "the involution iota on Lagrangian subgroups");
    add_dt(inv);
    add_json(inv);
    inv->add_option("--mask", P.mask, "only the subgroup with this selector mask");

    auto* genus = app.add_subcommand("genus", "isometry classes in the genus of Lambda_{d,t}");
    add_dt(genus);
    add_json(genus);
    auto* gen_e = genus->add_option("--e", P.e, "also test Lambda_{d,t} = Lambda_{e,t}");

    auto* fm = app.add_subcommand("fm", "Fourier-Mukai partner count");
    add_dt(fm);
    add_json(fm);
    add_g(fm);

    auto* de = app.add_subcommand("de", "derived elliptic structures");
    add_dt(de);
    add_json(de);
    add_g(de);
    de->add_flag("--formula-only", P.formula_only, "closed form (T-general, t > 2)");

    auto* ht = app.add_subcommand("ht", "Hassett-Tschinkel class");
    add_dt(ht);
    add_json(ht);
    ht->add_flag("--t-general", P.t_general, "G = {+-id}");

    auto* jac = app.add_subcommand("jac", "Jacobian calculus and surface predicates");
    jac->set_help_flag("--help", "Print this help message and exit"); // -h would clash with --h
    jac->add_option("--d", P.d, "degree parameter d");
    jac->add_option("--t", P.t, "multisection index t");
    add_json(jac);
    auto* jk = jac->add_option("--k", P.k, "Jacobian degree k");
    jac->add_option("--l", P.l, "second degree for --compose");
    jac->add_option("--p", P.p, "odd prime for --jspecial");
    jac->add_option("--h", P.h, "4 or 6 for --jspecial");
    jac->add_option("--rank", P.rank, "transcendental rank for --g-orders");
    auto* bo = jac->add_option("--b-order", P.b_order, "|B| for --classes");
    jac->add_option("--b-gen", P.b_gen, "generators of B for --classes, comma separated")->excludes(bo);
    jac->add_flag("--t-general", P.t_general, "T-general surface (for --fibrations)");
    std::vector<CLI::Option*> modes{
        jac->add_flag("--index", P.index, "t / gcd(t,k) (default)"),
        jac->add_flag("--compose", P.compose, "k l mod t"),
        jac->add_flag("--canonical", P.canonical, "canonical class of J^k"),
        jac->add_flag("--classes", P.classes, "coprime Jacobians modulo B"),
        jac->add_flag("--second-fibration", P.second, "k with (X,g) = J^k(X,f)"),
        jac->add_flag("--jac0", P.jac0, "zeroth Jacobians of the two fibrations agree"),
        jac->add_flag("--jspecial", P.jspecial, "j-special torsor exists"),
        jac->add_flag("--fibrations", P.fibrations, "number of fibrations (and isomorphism with --t-general)"),
        jac->add_flag("--g-orders", P.g_orders, "allowed |G_X| for a transcendental rank"),
    };
    for (auto* a : modes)
        for (auto* b : modes)
            if (a != b)
                a->excludes(b);

    auto* ov = app.add_subcommand("overlattice", "overlattice of Lambda_{d,t} from an isotropic subgroup");
    add_dt(ov);
    add_json(ov);
    ov->add_option("--gens", P.gens, "generators in (H,F) coordinates, e.g. \"1/5,0;0,1/5\"");

    auto* cal = app.add_subcommand("caldararu", "Caldararu class of a Mukai vector (r, xH + yF, s)");
    add_dt(cal);
    add_json(cal);
    cal->add_option("--r", P.r, "rank");
    cal->add_option("--x", P.x, "H coefficient of D");
    cal->add_option("--y", P.y, "F coefficient of D");
    cal->add_option("--s", P.s, "s");

    auto* sw = app.add_subcommand("sweep", "table over a (d,t) grid with G = {+-id}");
    auto* sd = sw->add_option("--d", P.d, "single d");
    auto* st = sw->add_option("--t", P.t, "single t");
    auto* tmin = sw->add_option("--t-min", P.t_min, "least t");
    auto* tmax = sw->add_option("--t-max", P.t_max, "largest t");
    auto* dmin = sw->add_option("--d-min", P.d_min, "least d (default 0)");
    auto* dmax = sw->add_option("--d-max", P.d_max, "largest d (default t-1)");
    st->excludes(tmin);
    st->excludes(tmax);
    sd->excludes(dmin);
    sd->excludes(dmax);
    auto* swj = sw->add_flag("--json", P.json, "one JSON array");
    sw->add_flag("--jsonl", P.jsonl, "JSON lines")->excludes(swj);
    sw->add_flag("--verify", P.verify, "cross-check each cell against brute force");
    sw->add_flag("--formula-only", P.formula_only, "closed forms only, no enumeration");
    sw->add_option("--out", P.out_file, "write output to FILE");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: invalid-parameter: " << e.what() << "\n";
        return InvalidInput;
    }

    const Budget budget = Budget::from_env();
    try {
        Result res;
        if (*disc)
            res = cmd_disc(P, budget);
        else if (*lagr)
            res = cmd_lagr(P, budget);
        else if (*pair)
            res = cmd_pair(P, budget);
        else if (*inv)
            res = cmd_involution(P, budget);
        else if (*genus)
            res = cmd_genus(P, budget, gen_e->count() > 0);
        else if (*fm)
            res = cmd_fm(P, budget);
        else if (*de)
            res = cmd_de(P, budget);
        else if (*ht)
            res = cmd_ht(P, budget);
        else if (*jac)
            res = cmd_jac(P, budget, jk->count() > 0);
        else if (*ov)
            res = cmd_overlattice(P, budget);
        else if (*cal)
            res = cmd_caldararu(P, budget);
        else if (*sw) {
            Params Q = P;
            if (st->count())
                Q.t_min = Q.t_max = P.t;
            if (sd->count())
                Q.d_min = Q.d_max = P.d;
            const bool d_given = sd->count() || dmin->count() || dmax->count();
            if (d_given && !sd->count() && !dmax->count())
                throw Error(ErrorKind::InvalidParameter, "--d-min needs --d-max");
            const auto rows = run_sweep(sweep_cells(Q, d_given), P.formula_only, P.verify, budget);
            std::ostringstream o;
            int code = Ok;
            if (P.json) {
                Json arr = Json::array();
                for (const auto& r : rows)
                    arr.push_back(r.json());
                o << arr.dump() << "\n";
            } else if (P.jsonl) {
                for (const auto& r : rows)
                    o << r.json().dump() << "\n";
            } else {
                o << SweepRow::csv_header() << "\n";
                for (const auto& r : rows)
                    o << r.csv() << "\n";
            }
            for (const auto& r : rows)
                for (const auto& m : r.mismatches) {
                    err << "verify mismatch at d=" << r.d << " t=" << r.t << ": " << m << "\n";
                    code = VerifyMismatch;
                }
            if (!P.out_file.empty()) {
                std::ofstream f(P.out_file);
                require(static_cast<bool>(f), ErrorKind::InvalidParameter, "cannot open " + P.out_file);
                f << o.str();
            } else {
                out << o.str();
            }
            return code;
        }
        out << (P.json ? res.json.dump() + "\n" : res.table);
        return res.code;
    } catch (const Error& e) {
        err << "error: " << e.what();
        if (e.kind() == ErrorKind::Capacity)
            err << " (raise with K3FM_BUDGET=<form_order>,<element_t>)";
        err << "\n";
        return e.kind() == ErrorKind::Capacity ? CapacityExceeded : InvalidInput;
    }
}

} // namespace k3fm::cli

#endif // K3FM_TOOLS_CLI_HPP
