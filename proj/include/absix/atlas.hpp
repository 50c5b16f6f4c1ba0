/**
 * Combinatorial input: a smooth proper Y of complex dimension d with a
 * normal-crossing boundary Z = Z_1 u ... u Z_r. For every declared subset S
 * of components the stratum D_S = intersection of the Z_i, i in S (D_empty =
 * Y) is described by its cohomology (pure, one object per degree), its
 * Poincare pairings, and the pullbacks to the strata one step deeper.
 *
 * Validation certifies the axioms the algorithms rely on; it does not
 * certify that the data comes from an actual variety.
 */

#ifndef ABSIX_ATLAS_HPP
#define ABSIX_ATLAS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hodge.hpp"
#include "qmat.hpp"

namespace absix {

/// Sorted component indices. The empty subset stands for Y itself.
using Subset = std::vector<std::size_t>;

struct StratumData
{
    std::map<int, PureObject> cohomology;   ///< degree k -> H^k, pure of weight k
    std::map<int, Matrix> pairings;         ///< degree k -> H^k x H^{2e-k} pairing

    PureObject h(int k) const
    {
        auto it = cohomology.find(k);
        return it == cohomology.end() ? PureObject(k) : it->second;
    }

    /// The declared pairing in degree k, or an all-zero matrix of the
    /// expected shape when missing.
    Matrix pairing(int k, int stratum_dim) const
    {
        auto it = pairings.find(k);
        if (it != pairings.end())
            return it->second;
        return Matrix(h(k).dim(), h(2 * stratum_dim - k).dim());
    }

    long euler_characteristic() const
    {
        long chi = 0;
        for (const auto& [k, v] : cohomology)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(v.dim());
        return chi;
    }

    friend bool operator==(const StratumData& a, const StratumData& b)
    {
        auto nonzero = [](const std::map<int, PureObject>& m) {
            std::map<int, PureObject> r;
            for (const auto& [k, v] : m)
                if (!v.is_zero())
                    r.emplace(k, v);
            return r;
        };
        auto nonempty = [](const std::map<int, Matrix>& m) {
            std::map<int, Matrix> r;
            for (const auto& [k, v] : m)
                if (v.rows() && v.cols() && !v.is_zero())
                    r.emplace(k, v);
            return r;
        };
        return nonzero(a.cohomology) == nonzero(b.cohomology) &&
               nonempty(a.pairings) == nonempty(b.pairings);
    }
};

using RestrictionKey = std::pair<Subset, Subset>;

struct StratumAtlas
{
    int dimension = 0;
    std::vector<std::string> components;
    std::map<Subset, StratumData> strata;
    std::map<RestrictionKey, std::map<int, Matrix>> restrictions;
    /// Optional extension: Z_i . Z_i for surfaces, keyed by component name.
    std::optional<std::map<std::string, Scalar>> selfIntersections;

    int stratum_dim(const Subset& s) const { return dimension - static_cast<int>(s.size()); }

    const StratumData* stratum(const Subset& s) const
    {
        auto it = strata.find(s);
        return it == strata.end() ? nullptr : &it->second;
    }

    const StratumData& ambient() const { return strata.at(Subset{}); }

    /// Pullback H^k(D_from) -> H^k(D_to); zero of the right shape when not
    /// declared.
    Matrix restriction(const Subset& from, const Subset& to, int k) const
    {
        auto it = restrictions.find({from, to});
        if (it != restrictions.end())
        {
            auto jt = it->second.find(k);
            if (jt != it->second.end())
                return jt->second;
        }
        const auto* f = stratum(from);
        const auto* t = stratum(to);
        return Matrix(t ? t->h(k).dim() : 0, f ? f->h(k).dim() : 0);
    }

    /// Declared subsets of the given size, in lexicographic order.
    std::vector<Subset> subsets_of_size(std::size_t m) const
    {
        std::vector<Subset> out;
        for (const auto& [s, data] : strata)
            if (s.size() == m)
                out.push_back(s);
        return out;
    }

    std::size_t depth() const
    {
        std::size_t m = 0;
        for (const auto& [s, data] : strata)
            m = std::max(m, s.size());
        return m;
    }

    std::string subset_name(const Subset& s) const
    {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + (s[i] < components.size() ? components[s[i]] : "?");
        return out + "}";
    }

    std::optional<std::size_t> component_index(const std::string& name) const
    {
        auto it = std::find(components.begin(), components.end(), name);
        if (it == components.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - components.begin());
    }

    friend bool operator==(const StratumAtlas& a, const StratumAtlas& b)
    {
        auto nonempty = [](const std::map<RestrictionKey, std::map<int, Matrix>>& m) {
            std::map<RestrictionKey, std::map<int, Matrix>> r;
            for (const auto& [key, mats] : m)
                for (const auto& [k, v] : mats)
                    if (v.rows() && v.cols() && !v.is_zero())
                        r[key].emplace(k, v);
            return r;
        };
        return a.dimension == b.dimension && a.components == b.components &&
               a.strata == b.strata && nonempty(a.restrictions) == nonempty(b.restrictions) &&
               a.selfIntersections == b.selfIntersections;
    }
};

struct Finding
{
    std::string code;
    std::string where;
    std::string message;

    std::string str() const { return code + ": " + where + ": " + message; }
};

struct ValidationReport
{
    std::vector<Finding> findings;

    bool valid() const noexcept { return findings.empty(); }

    bool has(const std::string& code) const
    {
        return std::any_of(findings.begin(), findings.end(),
                           [&](const Finding& f) { return f.code == code; });
    }
};

namespace detail {

inline Subset with(Subset s, std::size_t i)
{
    s.insert(std::upper_bound(s.begin(), s.end(), i), i);
    return s;
}

inline Subset without(Subset s, std::size_t i)
{
    s.erase(std::find(s.begin(), s.end(), i));
    return s;
}

inline Matrix ones(std::size_t n)
{
    Matrix m(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        m(i, 0) = 1;
    return m;
}

}   // namespace detail

/// Z_i . Z_i computed from the atlas of a surface: the degree of the
/// restriction to Z_i of the Gysin image of its fundamental class.
inline Scalar derived_self_intersection(const StratumAtlas& a, std::size_t i)
{
    const Subset z{i};
    const auto& zd = a.strata.at(z);
    const auto& y = a.ambient();
    const Matrix r = a.restriction({}, z, 2);
    const Matrix gysin = adjoint_pushforward(r, zd.pairing(0, 1), y.pairing(2, 2));
    const Matrix unit = detail::ones(zd.h(0).dim());
    const Matrix deg = unit.transpose() * zd.pairing(0, 1) * r * gysin * unit;
    return deg(0, 0);
}

/// Every violated invariant, one finding each. Never throws.
inline ValidationReport validate_atlas(const StratumAtlas& a)
{
    ValidationReport rep;
    auto flag = [&](std::string code, std::string where, std::string msg) {
        rep.findings.push_back({std::move(code), std::move(where), std::move(msg)});
    };

    if (a.dimension < 0)
        flag("DimensionOutOfRange", "atlas", "negative dimension");
    {
        std::set<std::string> names;
        for (const auto& c : a.components)
            if (c.empty() || !names.insert(c).second)
                flag("DuplicateComponent", "components", "component name '" + c + "' repeated or empty");
    }
    if (!a.stratum({}))
        flag("MissingSubset", "{}", "the ambient variety (empty subset) is not declared");

    for (const auto& [s, data] : a.strata)
    {
        const std::string where = a.subset_name(s);
        bool indices_ok = std::is_sorted(s.begin(), s.end()) &&
                          std::adjacent_find(s.begin(), s.end()) == s.end();
        for (auto i : s)
            indices_ok = indices_ok && i < a.components.size();
        if (!indices_ok)
        {
            flag("UnknownComponent", where, "subset refers to unknown or repeated components");
            continue;
        }
        const int e = a.stratum_dim(s);
        if (e < 0)
        {
            flag("DimensionOutOfRange", where, "more components than the dimension allows");
            continue;
        }
        for (auto i : s)
            if (!a.stratum(detail::without(s, i)))
                flag("MissingSubset", a.subset_name(detail::without(s, i)),
                     "subset of declared stratum " + where + " is missing");

        for (const auto& [k, v] : data.cohomology)
        {
            if (v.is_zero())
                continue;
            if (k < 0 || k > 2 * e)
                flag("DegreeOutOfRange", where, "H^" + std::to_string(k) + " outside [0, " +
                                                    std::to_string(2 * e) + "]");
            if (v.weight() != k)
                flag("WeightMismatch", where, "H^" + std::to_string(k) + " has weight " +
                                                  std::to_string(v.weight()));
            const auto h = hodge_numbers(v);
            for (const auto& [t, n] : h)
            {
                auto it = h.find({t.q, t.p});
                if (it == h.end() || it->second != n)
                {
                    flag("HodgeAsymmetry", where, "h^" + t.str() + " != h^(q,p) in degree " +
                                                      std::to_string(k));
                    break;
                }
            }
            const auto hd = hodge_numbers(data.h(2 * e - k));
            for (const auto& [t, n] : h)
            {
                auto it = hd.find({e - t.p, e - t.q});
                if (it == hd.end() || it->second != n)
                {
                    flag("PoincareDualityMismatch", where,
                         "h^" + t.str() + " in degree " + std::to_string(k) +
                             " does not match the dual degree");
                    break;
                }
            }
        }
        const PureObject h0 = data.h(0);
        if (h0.is_zero())
            flag("EmptyStratum", where, "H^0 is zero; empty strata must be omitted");
        for (const auto& t : h0.slots())
            if (t != HodgeType{0, 0})
            {
                flag("UnitTypeMismatch", where, "H^0 slot " + t.str() + " is not (0,0)");
                break;
            }

        for (const auto& [k, q] : data.pairings)
            if ((k < 0 || k > 2 * e) && q.rows() * q.cols() != 0)
                flag("DegreeOutOfRange", where, "pairing in degree " + std::to_string(k));
        for (int k = 0; k <= 2 * e; ++k)
        {
            const auto hk = data.h(k), hc = data.h(2 * e - k);
            const std::string deg = " in degree " + std::to_string(k);
            auto it = data.pairings.find(k);
            if (it == data.pairings.end())
            {
                if (hk.dim() || hc.dim())
                    flag("PairingMissing", where, "no pairing" + deg);
                continue;
            }
            const Matrix& q = it->second;
            if (q.rows() != hk.dim() || q.cols() != hc.dim())
            {
                flag("PairingShape", where, "pairing" + deg + " has shape " + q.shape());
                continue;
            }
            if (q.rows() != q.cols() || rank(q) != q.rows())
                flag("PairingNotPerfect", where, "pairing" + deg + " is singular");
            bool typed = true;
            for (std::size_t i = 0; i < q.rows() && typed; ++i)
                for (std::size_t j = 0; j < q.cols() && typed; ++j)
                    if (q(i, j) != 0 && (hk.slots()[i].p + hc.slots()[j].p != e ||
                                         hk.slots()[i].q + hc.slots()[j].q != e))
                        typed = false;
            if (!typed)
                flag("PairingTypeMismatch", where, "pairing" + deg + " pairs non-dual types");
            auto jt = data.pairings.find(2 * e - k);
            if (jt != data.pairings.end() && jt->second.rows() == q.cols() &&
                jt->second.cols() == q.rows())
            {
                const Matrix expect = (k % 2 == 0 ? Scalar(1) : Scalar(-1)) * q.transpose();
                if (!(jt->second == expect))
                    flag("PairingAsymmetric", where,
                         "pairings in degrees " + std::to_string(k) + " and " +
                             std::to_string(2 * e - k) + " are not graded-symmetric");
            }
        }
    }

    bool restrictions_ok = true;
    for (const auto& [key, mats] : a.restrictions)
    {
        const auto& [from, to] = key;
        const std::string where = a.subset_name(from) + "->" + a.subset_name(to);
        if (!a.stratum(from) || !a.stratum(to))
        {
            flag("RestrictionUnknownStratum", where, "restriction between undeclared strata");
            restrictions_ok = false;
            continue;
        }
        if (to.size() != from.size() + 1 || !std::includes(to.begin(), to.end(), from.begin(), from.end()))
        {
            flag("RestrictionNotCovering", where, "target must add exactly one component");
            restrictions_ok = false;
            continue;
        }
        const auto& fd = *a.stratum(from);
        const auto& td = *a.stratum(to);
        for (const auto& [k, r] : mats)
        {
            const auto hs = fd.h(k), ht = td.h(k);
            const std::string deg = " in degree " + std::to_string(k);
            if (r.rows() != ht.dim() || r.cols() != hs.dim())
            {
                flag("RestrictionShape", where, "matrix" + deg + " has shape " + r.shape());
                restrictions_ok = false;
                continue;
            }
            bool typed = true;
            for (std::size_t i = 0; i < r.rows() && typed; ++i)
                for (std::size_t j = 0; j < r.cols() && typed; ++j)
                    if (r(i, j) != 0 && ht.slots()[i] != hs.slots()[j])
                        typed = false;
            if (!typed)
            {
                flag("RestrictionTypeMismatch", where, "matrix" + deg + " does not preserve (p,q)");
                restrictions_ok = false;
            }
        }
        const Matrix r0 = a.restriction(from, to, 0);
        if (r0.cols() == fd.h(0).dim() && r0.rows() == td.h(0).dim() &&
            !(r0 * detail::ones(r0.cols()) == detail::ones(r0.rows())))
            flag("UnitNotPreserved", where, "fundamental class does not restrict to the fundamental class");
    }

    for (const auto& [s, data] : a.strata)
        for (std::size_t i = 0; i < a.components.size(); ++i)
        {
            if (std::binary_search(s.begin(), s.end(), i))
                continue;
            const Subset t = detail::with(s, i);
            if (a.stratum(t) && !a.restrictions.count({s, t}))
            {
                flag("RestrictionMissing", a.subset_name(s) + "->" + a.subset_name(t),
                     "no restriction declared between adjacent strata");
                restrictions_ok = false;
            }
        }

    if (restrictions_ok)
        for (const auto& [s, data] : a.strata)
            for (std::size_t i = 0; i < a.components.size(); ++i)
                for (std::size_t j = i + 1; j < a.components.size(); ++j)
                {
                    if (std::binary_search(s.begin(), s.end(), i) ||
                        std::binary_search(s.begin(), s.end(), j))
                        continue;
                    const Subset si = detail::with(s, i), sj = detail::with(s, j);
                    const Subset sij = detail::with(si, j);
                    if (!a.stratum(sij))
                        continue;
                    for (int k = 0; k <= 2 * a.stratum_dim(sij); ++k)
                        if (!(a.restriction(si, sij, k) * a.restriction(s, si, k) ==
                              a.restriction(sj, sij, k) * a.restriction(s, sj, k)))
                            flag("SquareIncompatible", a.subset_name(s) + "->" + a.subset_name(sij),
                                 "the two restriction paths disagree in degree " + std::to_string(k));
                }

    if (a.selfIntersections)
    {
        for (const auto& [name, value] : *a.selfIntersections)
        {
            const auto idx = a.component_index(name);
            if (!idx)
                flag("UnknownComponent", "selfIntersections", "no component named '" + name + "'");
            else if (rep.findings.empty() && a.dimension == 2 && a.stratum({*idx}) &&
                     derived_self_intersection(a, *idx) != value)
                flag("SelfIntersectionInconsistent", name,
                     "declared " + format_scalar(value) + ", atlas data gives " +
                         format_scalar(derived_self_intersection(a, *idx)));
        }
    }
    return rep;
}

/// Throws InvalidAtlas carrying the first finding.
inline void require_valid(const StratumAtlas& a)
{
    const auto rep = validate_atlas(a);
    if (!rep.valid())
        throw InvalidAtlas(rep.findings.front().str() +
                           (rep.findings.size() > 1
                                ? " (+" + std::to_string(rep.findings.size() - 1) + " more)"
                                : ""));
}

}   // namespace absix

#endif
