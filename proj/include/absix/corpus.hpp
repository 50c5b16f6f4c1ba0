/**
 * Built-in atlases. Each one is written out by hand from the classical
 * description of the compactification; all of them pass validate_atlas.
 *
 * Conventions: a stratum of dimension e isomorphic to P^e has basis l^j in
 * degree 2j with pairing 1; for blow-ups the exceptional class e restricts
 * to -l on the exceptional divisor.
 */

#ifndef ABSIX_CORPUS_HPP
#define ABSIX_CORPUS_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atlas.hpp"
#include "errors.hpp"
#include "hodge.hpp"
#include "qmat.hpp"

namespace absix {

using CorpusParams = std::map<std::string, int>;

struct CorpusEntry
{
    std::string name;
    std::string params;       ///< accepted parameters with defaults, e.g. "n=1"
    std::string description;  ///< one line: what the atlas models
};

namespace detail {

inline PureObject tate_power(int j, std::size_t n)
{
    return PureObject(2 * j, std::vector<HodgeType>(n, HodgeType{j, j}));
}

inline void put(StratumData& s, int k, PureObject v, Matrix pairing)
{
    if (!v.is_zero())
        s.cohomology[k] = std::move(v);
    s.pairings[k] = std::move(pairing);
}

/// P^e with its standard basis.
inline StratumData projective(int e)
{
    StratumData s;
    for (int j = 0; j <= e; ++j)
        put(s, 2 * j, tate_power(j, 1), Matrix{{1}});
    return s;
}

inline StratumData point() { return projective(0); }

/// P^1 x P^1 with basis (f1, f2) of H^2, f1 . f2 = 1.
inline StratumData p1xp1()
{
    StratumData s;
    put(s, 0, tate_power(0, 1), Matrix{{1}});
    put(s, 2, tate_power(1, 2), Matrix{{0, 1}, {1, 0}});
    put(s, 4, tate_power(2, 1), Matrix{{1}});
    return s;
}

/// A genus-one curve: H^1 of type (1,0) + (0,1) with the symplectic pairing.
inline StratumData elliptic_curve()
{
    StratumData s;
    put(s, 0, tate_power(0, 1), Matrix{{1}});
    put(s, 1, PureObject(1, {{1, 0}, {0, 1}}), Matrix{{0, 1}, {-1, 0}});
    put(s, 2, tate_power(1, 1), Matrix{{1}});
    return s;
}

inline int param(const CorpusParams& p, const std::string& key, int fallback)
{
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

inline void only_params(const std::string& name, const CorpusParams& p, const std::vector<std::string>& allowed)
{
    for (const auto& [k, v] : p)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw UnknownCorpusItem(name + ": unknown parameter '" + k + "'");
}

inline void at_least(const std::string& name, const std::string& key, int value, int bound)
{
    if (value < bound)
        throw UnknownCorpusItem(name + ": parameter " + key + " must be at least " + std::to_string(bound));
}

/// P^n with a hyperplane removed, so X = A^n.
inline StratumAtlas pn_minus_hyperplane(int n)
{
    StratumAtlas a;
    a.dimension = n;
    a.components = {"H"};
    a.strata[{}] = projective(n);
    a.strata[{0}] = projective(n - 1);
    auto& r = a.restrictions[{{}, {0}}];
    for (int j = 0; j <= n - 1; ++j)
        r[2 * j] = Matrix{{1}};
    return a;
}

/// d = 1: P^1 minus k points. d >= 2: P^d minus k points, compactified by
/// blowing the points up, so the boundary is k disjoint copies of P^{d-1}.
inline StratumAtlas points_in_proper(int d, int k)
{
    StratumAtlas a;
    a.dimension = d;
    const std::size_t kk = static_cast<std::size_t>(k);
    for (int i = 1; i <= k; ++i)
        a.components.push_back((d == 1 ? "p" : "E") + std::to_string(i));
    if (d == 1)
    {
        a.strata[{}] = projective(1);
        for (std::size_t i = 0; i < kk; ++i)
        {
            a.strata[{i}] = point();
            a.restrictions[{{}, {i}}][0] = Matrix{{1}};
        }
        return a;
    }

    // H^{2j}(Y) for 0 < j < d has basis h^j, e_1^j, ..., e_k^j with
    // h^j . h^{d-j} = 1 and e_i^j . e_i^{d-j} = e_i^d = (-1)^{d-1}.
    StratumData y;
    put(y, 0, tate_power(0, 1), Matrix{{1}});
    put(y, 2 * d, tate_power(d, 1), Matrix{{1}});
    const Scalar sign = d % 2 ? 1 : -1;
    for (int j = 1; j <= d - 1; ++j)
    {
        Matrix q = Matrix::identity(kk + 1);
        for (std::size_t i = 1; i <= kk; ++i)
            q(i, i) = sign;
        put(y, 2 * j, tate_power(j, kk + 1), q);
    }
    a.strata[{}] = std::move(y);
    for (std::size_t i = 0; i < kk; ++i)
    {
        a.strata[{i}] = projective(d - 1);
        auto& r = a.restrictions[{{}, {i}}];
        r[0] = Matrix{{1}};
        for (int j = 1; j <= d - 1; ++j)
        {
            Matrix m(1, kk + 1);
            m(0, i + 1) = j % 2 ? -1 : 1;
            r[2 * j] = m;
        }
    }
    return a;
}

/// P^3 minus a line, compactified by blowing the line up: Y = Bl_L P^3
/// and Z = E = P^1 x P^1. Bases: H^2(Y) = (h, e), H^4(Y) = (h^2, he) with
/// h^3 = 1, h^2 e = 0, h e^2 = -1; H^2(E) = (a, b) with h|E = a and
/// e|E = a - b.
inline StratumAtlas low_dim_Z()
{
    StratumAtlas a;
    a.dimension = 3;
    a.components = {"E"};
    StratumData y;
    put(y, 0, tate_power(0, 1), Matrix{{1}});
    put(y, 2, tate_power(1, 2), Matrix{{1, 0}, {0, -1}});
    put(y, 4, tate_power(2, 2), Matrix{{1, 0}, {0, -1}});
    put(y, 6, tate_power(3, 1), Matrix{{1}});
    a.strata[{}] = std::move(y);
    a.strata[{0}] = p1xp1();
    auto& r = a.restrictions[{{}, {0}}];
    r[0] = Matrix{{1}};
    r[2] = Matrix{{1, 1}, {0, -1}};
    r[4] = Matrix{{0, -1}};
    return a;
}

/// P^2 minus a smooth cubic curve.
inline StratumAtlas smooth_divisor_ample()
{
    StratumAtlas a;
    a.dimension = 2;
    a.components = {"E"};
    a.strata[{}] = projective(2);
    a.strata[{0}] = elliptic_curve();
    auto& r = a.restrictions[{{}, {0}}];
    r[0] = Matrix{{1}};
    r[1] = Matrix(2, 0);
    r[2] = Matrix{{3}};
    return a;
}

/// P^1 x P^1 minus the ruling line {0} x P^1, whose class is f1.
inline StratumAtlas middle_dim_Z_selfint_zero()
{
    StratumAtlas a;
    a.dimension = 2;
    a.components = {"Z"};
    a.strata[{}] = p1xp1();
    a.strata[{0}] = projective(1);
    auto& r = a.restrictions[{{}, {0}}];
    r[0] = Matrix{{1}};
    r[2] = Matrix{{0, 1}};
    a.selfIntersections = std::map<std::string, Scalar>{{"Z", 0}};
    return a;
}

/// P^1 x P^1 minus the diagonal, whose class is f1 + f2.
inline StratumAtlas middle_dim_Z_selfint_nonzero()
{
    StratumAtlas a;
    a.dimension = 2;
    a.components = {"Z"};
    a.strata[{}] = p1xp1();
    a.strata[{0}] = projective(1);
    auto& r = a.restrictions[{{}, {0}}];
    r[0] = Matrix{{1}};
    r[2] = Matrix{{1, 1}};
    a.selfIntersections = std::map<std::string, Scalar>{{"Z", 2}};
    return a;
}

/// Minimal resolution of an A2 surface singularity inside P^2 blown up
/// three times: two (-2)-curves C1 = e1 - e2 and C2 = e2 - e3 meeting in a
/// point. H^2(Y) has basis (h, e1, e2, e3) with form diag(1, -1, -1, -1).
inline StratumAtlas surface_resolution()
{
    StratumAtlas a;
    a.dimension = 2;
    a.components = {"C1", "C2"};
    StratumData y;
    put(y, 0, tate_power(0, 1), Matrix{{1}});
    put(y, 2, tate_power(1, 4), Matrix{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});
    put(y, 4, tate_power(2, 1), Matrix{{1}});
    a.strata[{}] = std::move(y);
    a.strata[{0}] = projective(1);
    a.strata[{1}] = projective(1);
    a.strata[{0, 1}] = point();
    a.restrictions[{{}, {0}}] = {{0, Matrix{{1}}}, {2, Matrix{{0, -1, 1, 0}}}};
    a.restrictions[{{}, {1}}] = {{0, Matrix{{1}}}, {2, Matrix{{0, 0, -1, 1}}}};
    a.restrictions[{{0}, {0, 1}}] = {{0, Matrix{{1}}}};
    a.restrictions[{{1}, {0, 1}}] = {{0, Matrix{{1}}}};
    a.selfIntersections = std::map<std::string, Scalar>{{"C1", -2}, {"C2", -2}};
    return a;
}

/// G_m x A^1 inside P^1 x P^1: boundary lines A = {0} x P^1,
/// B = {inf} x P^1 (class f1 each) and C = P^1 x {inf} (class f2).
inline StratumAtlas gm_times_a1()
{
    StratumAtlas a;
    a.dimension = 2;
    a.components = {"A", "B", "C"};
    a.strata[{}] = p1xp1();
    for (std::size_t i = 0; i < 3; ++i)
        a.strata[{i}] = projective(1);
    a.strata[{0, 2}] = point();
    a.strata[{1, 2}] = point();
    a.restrictions[{{}, {0}}] = {{0, Matrix{{1}}}, {2, Matrix{{0, 1}}}};
    a.restrictions[{{}, {1}}] = {{0, Matrix{{1}}}, {2, Matrix{{0, 1}}}};
    a.restrictions[{{}, {2}}] = {{0, Matrix{{1}}}, {2, Matrix{{1, 0}}}};
    for (const auto& [from, to] : std::vector<std::pair<Subset, Subset>>{
             {{0}, {0, 2}}, {{2}, {0, 2}}, {{1}, {1, 2}}, {{2}, {1, 2}}})
        a.restrictions[{from, to}] = {{0, Matrix{{1}}}};
    a.selfIntersections = std::map<std::string, Scalar>{{"A", 0}, {"B", 0}, {"C", 0}};
    return a;
}

/// A genus-one curve minus one point.
inline StratumAtlas elliptic_minus_point()
{
    StratumAtlas a;
    a.dimension = 1;
    a.components = {"o"};
    a.strata[{}] = elliptic_curve();
    a.strata[{0}] = point();
    a.restrictions[{{}, {0}}] = {{0, Matrix{{1}}}};
    return a;
}

/// P^1 x P^1 with empty boundary.
inline StratumAtlas proper_p1xp1()
{
    StratumAtlas a;
    a.dimension = 2;
    a.strata[{}] = p1xp1();
    return a;
}

struct Builder
{
    CorpusEntry entry;
    std::function<StratumAtlas(const CorpusParams&)> make;
};

inline const std::vector<Builder>& builders()
{
    static const std::vector<Builder> list = [] {
        std::vector<Builder> b;
        auto fixed = [](const std::string& name, StratumAtlas (*f)()) {
            return [name, f](const CorpusParams& p) {
                only_params(name, p, {});
                return f();
            };
        };
        b.push_back({{"pn_minus_hyperplane", "n=1", "affine space A^n = P^n minus a hyperplane"},
                     [](const CorpusParams& p) {
                         only_params("pn_minus_hyperplane", p, {"n"});
                         const int n = param(p, "n", 1);
                         at_least("pn_minus_hyperplane", "n", n, 1);
                         return pn_minus_hyperplane(n);
                     }});
        b.push_back({{"points_in_proper", "d=1,k=2",
                      "P^d minus k points (blown up when d >= 2): finitely many points removed from a proper variety"},
                     [](const CorpusParams& p) {
                         only_params("points_in_proper", p, {"d", "k"});
                         const int d = param(p, "d", 1), k = param(p, "k", 2);
                         at_least("points_in_proper", "d", d, 1);
                         at_least("points_in_proper", "k", k, 1);
                         return points_in_proper(d, k);
                     }});
        b.push_back({{"low_dim_Z", "", "P^3 minus a line (dim Z < codim Z), boundary = exceptional divisor of Bl_L P^3"},
                     fixed("low_dim_Z", low_dim_Z)});
        b.push_back({{"smooth_divisor_ample", "", "P^2 minus a smooth cubic: smooth divisor with ample normal bundle"},
                     fixed("smooth_divisor_ample", smooth_divisor_ample)});
        b.push_back({{"middle_dim_Z_selfint_zero", "", "P^1 x P^1 minus a ruling line: middle-dimensional Z with Z.Z = 0"},
                     fixed("middle_dim_Z_selfint_zero", middle_dim_Z_selfint_zero)});
        b.push_back({{"middle_dim_Z_selfint_nonzero", "", "P^1 x P^1 minus the diagonal: middle-dimensional Z with Z.Z = 2"},
                     fixed("middle_dim_Z_selfint_nonzero", middle_dim_Z_selfint_nonzero)});
        b.push_back({{"surface_resolution", "", "complement of an A2 singularity: resolution by two (-2)-curves"},
                     fixed("surface_resolution", surface_resolution)});
        b.push_back({{"gm_times_a1", "", "G_m x A^1 inside P^1 x P^1, three boundary lines"},
                     fixed("gm_times_a1", gm_times_a1)});
        b.push_back({{"elliptic_minus_point", "", "genus-one curve minus a point"},
                     fixed("elliptic_minus_point", elliptic_minus_point)});
        b.push_back({{"proper_p1xp1", "", "P^1 x P^1 with empty boundary"}, fixed("proper_p1xp1", proper_p1xp1)});
        return b;
    }();
    return list;
}

/// Short names resolving to a builder with fixed parameters.
inline const std::map<std::string, std::pair<std::string, CorpusParams>>& aliases()
{
    static const std::map<std::string, std::pair<std::string, CorpusParams>> m{
        {"a1", {"pn_minus_hyperplane", {{"n", 1}}}},
        {"a2", {"pn_minus_hyperplane", {{"n", 2}}}},
        {"a3", {"pn_minus_hyperplane", {{"n", 3}}}},
        {"an", {"pn_minus_hyperplane", {}}},
        {"p1p1_minus_ruling", {"middle_dim_Z_selfint_zero", {}}},
        {"p1p1_minus_diagonal", {"middle_dim_Z_selfint_nonzero", {}}},
    };
    return m;
}

}   // namespace detail

/// The catalogue, in a fixed order.
inline std::vector<CorpusEntry> corpus_list()
{
    std::vector<CorpusEntry> out;
    for (const auto& b : detail::builders())
        out.push_back(b.entry);
    return out;
}

inline std::map<std::string, std::string> corpus_aliases()
{
    std::map<std::string, std::string> out;
    for (const auto& [alias, target] : detail::aliases())
    {
        std::string params;
        for (const auto& [k, v] : target.second)
            params += (params.empty() ? "" : ",") + k + "=" + std::to_string(v);
        out[alias] = target.first + (params.empty() ? "" : ":" + params);
    }
    return out;
}

/// Builds a named atlas. Throws UnknownCorpusItem for unknown names or
/// parameters.
inline StratumAtlas builtin(const std::string& name, const CorpusParams& params = {})
{
    std::string target = name;
    CorpusParams p = params;
    if (auto it = detail::aliases().find(name); it != detail::aliases().end())
    {
        target = it->second.first;
        for (const auto& [k, v] : it->second.second)
        {
            if (params.count(k) && params.at(k) != v)
                throw UnknownCorpusItem(name + ": parameter " + k + " is fixed to " + std::to_string(v));
            p[k] = v;
        }
    }
    for (const auto& b : detail::builders())
        if (b.entry.name == target)
            return b.make(p);
    throw UnknownCorpusItem("no corpus item named '" + name + "'");
}

/// Parses "name" or "name:k=v,k=v".
inline std::pair<std::string, CorpusParams> parse_corpus_ref(const std::string& ref)
{
    const auto colon = ref.find(':');
    std::pair<std::string, CorpusParams> out{ref.substr(0, colon), {}};
    if (colon == std::string::npos)
        return out;
    std::string rest = ref.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size())
    {
        const auto comma = rest.find(',', start);
        const std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("corpus parameter '" + item + "' is not of the form key=value");
        try
        {
            std::size_t used = 0;
            const std::string value = item.substr(eq + 1);
            const int v = std::stoi(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
            out.second[item.substr(0, eq)] = v;
        }
        catch (const std::logic_error&)
        {
            throw ParseError("corpus parameter '" + item + "' needs an integer value");
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}   // namespace absix

#endif
