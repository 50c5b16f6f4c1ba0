/**
 * Weight complexes of a normal-crossing compactification.
 *
 * The Gysin complex in degree n has spot m = sum over |S| = m of
 * H^{n-2m}(D_S)(-m), all pure of weight n, with differential toward smaller
 * m. Its homology at spot m is Gr^W_n H^{n-m}(X). Compact supports are
 * obtained by duality; the restriction complex is only used for its spot-0
 * kernel and for cross-checks.
 */

#ifndef ABSIX_WSS_HPP
#define ABSIX_WSS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "atlas.hpp"
#include "hodge.hpp"
#include "qmat.hpp"

namespace absix {

enum class ComplexFlavor
{
    gysin,
    restriction,
};

struct WeightComplex
{
    int degree = 0;
    ComplexFlavor flavor = ComplexFlavor::gysin;
    std::map<int, PureObject> spots;
    std::map<int, PureMorphism> differentials;   ///< keyed by the source spot
    std::map<int, std::vector<Subset>> summands; ///< strata contributing to each spot, in slot order

    PureObject spot(int m) const
    {
        auto it = spots.find(m);
        return it == spots.end() ? PureObject(degree) : it->second;
    }

    int next(int m) const { return flavor == ComplexFlavor::gysin ? m - 1 : m + 1; }
    int previous(int m) const { return flavor == ComplexFlavor::gysin ? m + 1 : m - 1; }

    /// Differential leaving spot m; zero when not stored.
    PureMorphism differential(int m) const
    {
        auto it = differentials.find(m);
        return it == differentials.end() ? PureMorphism::zero(spot(m), spot(next(m))) : it->second;
    }

    bool is_zero() const
    {
        for (const auto& [m, s] : spots)
            if (!s.is_zero())
                return false;
        return true;
    }

    bool d_squared_zero() const
    {
        for (const auto& [m, s] : spots)
            if (!differential(next(m)).after(differential(m)).is_zero())
                return false;
        return true;
    }

    /// Homology at spot m, reported through its (p,q) counts.
    PureObject homology(int m) const
    {
        const PureMorphism out = differential(m);
        const PureMorphism in = differential(previous(m));
        HodgeNumbers h;
        for (const auto& t : spot(m).types())
        {
            const std::size_t n = spot(m).count(t) - rank(out.block(t)) - rank(in.block(t));
            if (n)
                h[t] = n;
        }
        return PureObject::from_numbers(degree, h);
    }
};

namespace detail {

/// Sum of a family of pure objects of one weight; the zero object of that
/// weight when all parts vanish.
inline PureObject sum_of(int weight, const std::vector<PureObject>& parts)
{
    PureObject out(weight);
    for (const auto& p : parts)
        out = direct_sum(out, p);
    return out.is_zero() ? PureObject(weight) : out;
}

inline std::vector<std::size_t> offsets(const std::vector<PureObject>& parts)
{
    std::vector<std::size_t> off{0};
    for (const auto& p : parts)
        off.push_back(off.back() + p.dim());
    return off;
}

inline std::size_t position(const std::vector<Subset>& list, const Subset& s)
{
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), s) - list.begin());
}

/// Gysin map H^k(D_S) -> H^{k+2}(D_T) for T = S minus one component, as the
/// adjoint of the restriction in the complementary degree.
inline Matrix gysin_block(const StratumAtlas& a, const Subset& s, const Subset& t, int k)
{
    const auto& sd = a.strata.at(s);
    const auto& td = a.strata.at(t);
    const int es = a.stratum_dim(s), et = a.stratum_dim(t);
    const std::size_t rows = td.h(k + 2).dim(), cols = sd.h(k).dim();
    if (!rows || !cols)
        return Matrix(rows, cols);
    const int b = 2 * es - k;
    return adjoint_pushforward(a.restriction(t, s, b), sd.pairing(k, es), td.pairing(k + 2, et));
}

inline WeightComplex gysin_complex_impl(const StratumAtlas& a, int n)
{
    WeightComplex c;
    c.degree = n;
    c.flavor = ComplexFlavor::gysin;
    if (n < 0 || n > 2 * a.dimension)
        return c;
    std::map<int, std::vector<PureObject>> parts;
    for (std::size_t m = 0; m <= a.depth(); ++m)
    {
        const int mm = static_cast<int>(m);
        auto subsets = a.subsets_of_size(m);
        for (const auto& s : subsets)
            parts[mm].push_back(tate_twist(a.strata.at(s).h(n - 2 * mm), -mm));
        c.summands[mm] = std::move(subsets);
        c.spots[mm] = sum_of(n, parts[mm]);
    }
    for (std::size_t m = 1; m <= a.depth(); ++m)
    {
        const int mm = static_cast<int>(m);
        const auto so = offsets(parts[mm]);
        const auto to = offsets(parts[mm - 1]);
        Matrix d(c.spots[mm - 1].dim(), c.spots[mm].dim());
        const auto& src = c.summands[mm];
        const auto& tgt = c.summands[mm - 1];
        for (std::size_t si = 0; si < src.size(); ++si)
            for (std::size_t k = 0; k < src[si].size(); ++k)
            {
                const Subset t = without(src[si], src[si][k]);
                const std::size_t ti = position(tgt, t);
                if (ti == tgt.size())
                    continue;
                Matrix g = gysin_block(a, src[si], t, n - 2 * mm);
                if (k % 2)
                    g = -g;
                d.set_block(to[ti], so[si], g);
            }
        c.differentials[mm] = PureMorphism::from_dense(c.spots[mm], c.spots[mm - 1], d);
    }
    return c;
}

inline WeightComplex restriction_complex_impl(const StratumAtlas& a, int n)
{
    WeightComplex c;
    c.degree = n;
    c.flavor = ComplexFlavor::restriction;
    if (n < 0 || n > 2 * a.dimension)
        return c;
    std::map<int, std::vector<PureObject>> parts;
    for (std::size_t m = 0; m <= a.depth(); ++m)
    {
        const int mm = static_cast<int>(m);
        auto subsets = a.subsets_of_size(m);
        for (const auto& s : subsets)
            parts[mm].push_back(a.strata.at(s).h(n));
        c.summands[mm] = std::move(subsets);
        c.spots[mm] = sum_of(n, parts[mm]);
    }
    for (std::size_t m = 0; m < a.depth(); ++m)
    {
        const int mm = static_cast<int>(m);
        const auto so = offsets(parts[mm]);
        const auto to = offsets(parts[mm + 1]);
        Matrix d(c.spots[mm + 1].dim(), c.spots[mm].dim());
        const auto& src = c.summands[mm];
        const auto& tgt = c.summands[mm + 1];
        for (std::size_t ti = 0; ti < tgt.size(); ++ti)
            for (std::size_t k = 0; k < tgt[ti].size(); ++k)
            {
                const Subset s = without(tgt[ti], tgt[ti][k]);
                const std::size_t si = position(src, s);
                if (si == src.size())
                    continue;
                Matrix r = a.restriction(s, tgt[ti], n);
                if (k % 2)
                    r = -r;
                d.set_block(to[ti], so[si], r);
            }
        c.differentials[mm] = PureMorphism::from_dense(c.spots[mm], c.spots[mm + 1], d);
    }
    return c;
}

inline CohomologyTable grW_impl(const StratumAtlas& a)
{
    CohomologyTable t;
    t.kind = TableKind::plain;
    std::map<int, MixedGraded> by_degree;
    for (int w = 0; w <= 2 * a.dimension; ++w)
    {
        const WeightComplex c = gysin_complex_impl(a, w);
        for (const auto& [m, s] : c.spots)
        {
            PureObject h = c.homology(m);
            if (!h.is_zero())
                by_degree[w - m].set(w, std::move(h));
        }
    }
    for (auto& [n, g] : by_degree)
        t.set(n, std::move(g));
    return t;
}

/// Gr^W_w H^n_c := Gr^W_{2d-w} H^{2d-n}, dualized and twisted by Q(-d).
inline CohomologyTable dual_table(const CohomologyTable& plain, int d)
{
    CohomologyTable t;
    t.kind = TableKind::compactSupport;
    for (const auto& [n, g] : plain.byDegree)
    {
        MixedGraded out;
        for (const auto& [w, piece] : g.pieces())
            out.set(2 * d - w, tate_twist(dual(piece), -d));
        t.set(2 * d - n, std::move(out));
    }
    return t;
}

}   // namespace detail

/// Gysin complex in degree n; the zero complex outside [0, 2d].
inline WeightComplex gysin_complex(const StratumAtlas& a, int n)
{
    require_valid(a);
    return detail::gysin_complex_impl(a, n);
}

/// Restriction complex: spot m = sum over |S| = m of H^n(D_S), signed
/// pullbacks toward larger m.
inline WeightComplex restriction_complex(const StratumAtlas& a, int n)
{
    require_valid(a);
    return detail::restriction_complex_impl(a, n);
}

/// Gr^W H^*(X): Gr^W_w H^{w-m} is the homology of the weight-w Gysin complex
/// at spot m.
inline CohomologyTable grW(const StratumAtlas& a)
{
    require_valid(a);
    return detail::grW_impl(a);
}

/// Gr^W H^*_c(X), by duality from grW.
inline CohomologyTable grW_c(const StratumAtlas& a)
{
    require_valid(a);
    return detail::dual_table(detail::grW_impl(a), a.dimension);
}

/// H^*(Y) as a plain table.
inline CohomologyTable ambient_cohomology(const StratumAtlas& a)
{
    require_valid(a);
    CohomologyTable t;
    t.kind = TableKind::plain;
    for (const auto& [k, v] : a.ambient().cohomology)
        if (!v.is_zero())
            t.set(k, MixedGraded::pure(v));
    return t;
}

/// u_n written through H^n(Y): u = p o j with j the inclusion of
/// Gr_n H^n_c = ker(H^n(Y) -> sum H^n(Z_i)) and p the projection onto
/// Gr_n H^n = coker(sum H^{n-2}(Z_i)(-1) -> H^n(Y)).
struct UFactorization
{
    PureObject hY;
    PureMorphism j;
    PureMorphism p;
    PureMorphism u;
};

namespace detail {

inline UFactorization u_factorization_impl(const StratumAtlas& a, int n)
{
    const WeightComplex r = restriction_complex_impl(a, n);
    const WeightComplex g = gysin_complex_impl(a, n);
    UFactorization f;
    f.hY = r.spot(0);
    const PureMorphism res = r.differential(0);
    const PureMorphism gys = g.differential(1);
    HodgeNumbers hs, ht;
    std::map<HodgeType, Matrix> jb, pb;
    for (const auto& t : f.hY.types())
    {
        Matrix k = kernel_basis(res.block(t));
        Matrix p = cokernel_projection(gys.block(t));
        if (k.cols())
            hs[t] = k.cols();
        if (p.rows())
            ht[t] = p.rows();
        jb.emplace(t, std::move(k));
        pb.emplace(t, std::move(p));
    }
    const PureObject source = PureObject::from_numbers(n, hs);
    const PureObject target = PureObject::from_numbers(n, ht);
    f.j = PureMorphism(source, f.hY, std::move(jb));
    f.p = PureMorphism(f.hY, target, std::move(pb));
    f.u = f.p.after(f.j);
    return f;
}

}   // namespace detail

inline UFactorization u_factorization(const StratumAtlas& a, int n)
{
    require_valid(a);
    return detail::u_factorization_impl(a, n);
}

/// u_n : Gr_n H^n_c(X) -> Gr_n H^n(X).
inline PureMorphism u_map(const StratumAtlas& a, int n)
{
    return u_factorization(a, n).u;
}

/// Sum over n of (-1)^n dim H^n(X), read from a plain table.
inline long euler_characteristic(const CohomologyTable& t)
{
    long chi = 0;
    for (const auto& [n, g] : t.byDegree)
        chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(g.dim());
    return chi;
}

/// Inclusion-exclusion over the strata: sum over S of (-1)^|S| chi(D_S).
inline long stratified_euler_characteristic(const StratumAtlas& a)
{
    long chi = 0;
    for (const auto& [s, data] : a.strata)
        chi += (s.size() % 2 == 0 ? 1 : -1) * data.euler_characteristic();
    return chi;
}

/// Weight bounds by table kind: plain in [n, 2n], compact support in
/// [max(0, 2n-2d), n], absolute IC exactly n.
inline bool respects_weight_bounds(const CohomologyTable& t, int d)
{
    for (const auto& [n, g] : t.byDegree)
        for (int w : g.weights())
        {
            switch (t.kind)
            {
                case TableKind::plain:
                    if (w < n || w > 2 * n || w > n + d)
                        return false;
                    break;
                case TableKind::compactSupport:
                    if (w > n || w < std::max(0, 2 * n - 2 * d))
                        return false;
                    break;
                case TableKind::absoluteIC:
                    if (w != n)
                        return false;
                    break;
                default:
                    break;
            }
        }
    return true;
}

}   // namespace absix

#endif
