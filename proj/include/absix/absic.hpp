/**
 * Absolute intersection cohomology: H^n_{!*}(X) = CH(u_n), together with
 * the chosen factorization Gr_n H^n_c -> H^n_{!*} -> Gr_n H^n, interior
 * cohomology, and the weight-graded boundary cohomology.
 */

#ifndef ABSIX_ABSIC_HPP
#define ABSIX_ABSIC_HPP

#include <map>

#include "atlas.hpp"
#include "factor.hpp"
#include "hodge.hpp"
#include "wss.hpp"

namespace absix {

struct AbsicResult
{
    CohomologyTable table;                        ///< kind absoluteIC
    std::map<int, ChDecomposition> factorizations; ///< i_n = iCH, pi_n = piCH
    std::map<int, PureMorphism> u;
    std::map<int, PureObject> interior;           ///< H^n_! = im(u_n)

    const PureMorphism& i(int n) const { return factorizations.at(n).iCH; }
    const PureMorphism& pi(int n) const { return factorizations.at(n).piCH; }
};

namespace detail {

inline AbsicResult absolute_ic_impl(const StratumAtlas& a)
{
    AbsicResult r;
    r.table.kind = TableKind::absoluteIC;
    for (int n = 0; n <= 2 * a.dimension; ++n)
    {
        PureMorphism u = u_factorization_impl(a, n).u;
        ChDecomposition dec = ch_factorization(u);
        if (!dec.total.is_zero())
            r.table.set(n, MixedGraded::pure(dec.total));
        r.interior.emplace(n, dec.imagePart);
        r.factorizations.emplace(n, std::move(dec));
        r.u.emplace(n, std::move(u));
    }
    return r;
}

inline CohomologyTable boundary_cohomology_impl(const StratumAtlas& a)
{
    const CohomologyTable h = grW_impl(a);
    const CohomologyTable hc = dual_table(h, a.dimension);
    std::map<int, PureMorphism> u;
    for (int n = 0; n <= 2 * a.dimension; ++n)
        u.emplace(n, u_factorization_impl(a, n).u);
    auto u_at = [&](int n) {
        auto it = u.find(n);
        return it == u.end() ? PureMorphism() : it->second;
    };

    CohomologyTable t;
    t.kind = TableKind::boundary;
    for (int n = -1; n <= 2 * a.dimension; ++n)
    {
        std::map<int, HodgeNumbers> by_weight;
        const PureMorphism un = u_at(n);
        for (const auto& [ty, b] : un.blocks())
            if (const std::size_t c = b.rows() - rank(b))
                by_weight[n][ty] += c;
        const PureMorphism un1 = u_at(n + 1);
        for (const auto& [ty, b] : un1.blocks())
            if (const std::size_t k = b.cols() - rank(b))
                by_weight[n + 1][ty] += k;
        for (const auto& [w, piece] : h.at(n).pieces())
            if (w > n)
                for (const auto& [ty, c] : hodge_numbers(piece))
                    by_weight[w][ty] += c;
        for (const auto& [w, piece] : hc.at(n + 1).pieces())
            if (w <= n)
                for (const auto& [ty, c] : hodge_numbers(piece))
                    by_weight[w][ty] += c;
        MixedGraded g;
        for (const auto& [w, numbers] : by_weight)
            g.set(w, PureObject::from_numbers(w, numbers));
        t.set(n, std::move(g));
    }
    return t;
}

}   // namespace detail

inline AbsicResult absolute_ic(const StratumAtlas& a)
{
    require_valid(a);
    return detail::absolute_ic_impl(a);
}

/// Gr^W of boundary cohomology, read off the long exact sequence
/// ... -> H^n_c -> H^n -> dH^n -> H^{n+1}_c -> ... one weight at a time.
inline CohomologyTable boundary_cohomology(const StratumAtlas& a)
{
    require_valid(a);
    return detail::boundary_cohomology_impl(a);
}

/// Hodge-number containment, degree by degree.
inline bool direct_factor_check(const CohomologyTable& sub, const CohomologyTable& ambient)
{
    for (const auto& [n, g] : sub.byDegree)
    {
        const HodgeNumbers big = ambient.at(n).hodge_numbers();
        for (const auto& [t, c] : g.hodge_numbers())
        {
            auto it = big.find(t);
            if (it == big.end() || it->second < c)
                return false;
        }
    }
    return true;
}

}   // namespace absix

#endif
