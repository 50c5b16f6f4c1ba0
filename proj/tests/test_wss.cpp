#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace absix;

namespace {

std::vector<StratumAtlas> corpus_and_random()
{
    std::vector<StratumAtlas> out;
    for (const auto& e : corpus_list())
        out.push_back(builtin(e.name));
    for (int n = 2; n <= 3; ++n)
        out.push_back(builtin("pn_minus_hyperplane", {{"n", n}}));
    out.push_back(builtin("points_in_proper", {{"d", 2}, {"k", 2}}));
    out.push_back(builtin("points_in_proper", {{"d", 3}, {"k", 1}}));
    for (auto& a : oracle::random_atlases(40, 51))
        out.push_back(std::move(a));
    return out;
}

/// Block-diagonal matrix of the pairings H^k(D_S) x H^{2e_S-k}(D_S) over the
/// strata of one spot, with k = w - 2m.
Matrix spot_pairing(const StratumAtlas& a, const std::vector<Subset>& subsets, int k_of_m, std::size_t m)
{
    std::size_t rows = 0, cols = 0;
    std::vector<Matrix> blocks;
    for (const auto& s : subsets)
    {
        const int e = a.stratum_dim(s);
        blocks.push_back(a.strata.at(s).pairing(k_of_m - 2 * static_cast<int>(m), e));
        rows += blocks.back().rows();
        cols += blocks.back().cols();
    }
    Matrix p(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks)
    {
        p.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return p;
}

MixedGraded pure_tate(int m)
{
    return MixedGraded::pure(PureObject::tate(m));
}

}   // namespace

TEST_CASE("gysin_complex examples", "[wss]")
{
    const StratumAtlas a1 = builtin("a1");
    const WeightComplex g = gysin_complex(a1, 2);
    CHECK(g.spot(0) == PureObject::tate(-1));
    CHECK(g.spot(1) == PureObject::tate(-1));
    CHECK(g.differential(1).rank() == 1);
    CHECK(g.differential(1).to_dense() == Matrix{{1}});

    const WeightComplex proper = gysin_complex(builtin("proper_p1xp1"), 2);
    for (const auto& [m, s] : proper.spots)
        CHECK((m == 0 || s.is_zero()));
    CHECK(proper.spot(0).dim() == 2);

    CHECK(gysin_complex(a1, -1).is_zero());
    CHECK(gysin_complex(a1, 3).is_zero());
}

TEST_CASE("restriction_complex examples", "[wss]")
{
    const WeightComplex r = restriction_complex(builtin("a1"), 0);
    CHECK(r.differential(0).rank() == 1);
    CHECK(r.differential(0).to_dense() == Matrix{{1}});

    const WeightComplex d = restriction_complex(builtin("p1p1_minus_diagonal"), 2);
    CHECK(d.differential(0).to_dense() == Matrix{{1, 1}});

    const WeightComplex proper = restriction_complex(builtin("proper_p1xp1"), 2);
    for (const auto& [m, s] : proper.spots)
        CHECK((m == 0 || s.is_zero()));
}

TEST_CASE("grW examples", "[wss]")
{
    const CohomologyTable a1 = grW(builtin("a1"));
    CHECK(a1.byDegree.size() == 1);
    CHECK(a1.at(0).hodge_numbers() == HodgeNumbers{{{0, 0}, 1}});

    const CohomologyTable g = grW(builtin("gm_times_a1"));
    CHECK(g.byDegree.size() == 2);
    CHECK(g.at(0).hodge_numbers() == HodgeNumbers{{{0, 0}, 1}});
    CHECK(g.at(1).weights() == std::set<int>{2});
    CHECK(g.at(1).hodge_numbers() == HodgeNumbers{{{1, 1}, 1}});

    const StratumAtlas p = builtin("proper_p1xp1");
    CHECK(grW(p).same_numbers(ambient_cohomology(p)));
    CHECK(grW(builtin("elliptic_minus_point")).at(1).hodge_numbers() ==
          HodgeNumbers{{{1, 0}, 1}, {{0, 1}, 1}});
}

TEST_CASE("grW_c examples", "[wss]")
{
    const CohomologyTable a1 = grW_c(builtin("a1"));
    CHECK(a1.kind == TableKind::compactSupport);
    CHECK(a1.byDegree.size() == 1);
    CHECK(a1.at(2).hodge_numbers() == pure_tate(-1).hodge_numbers());

    for (int n = 1; n <= 3; ++n)
    {
        const CohomologyTable an = grW_c(builtin("pn_minus_hyperplane", {{"n", n}}));
        CHECK(an.byDegree.size() == 1);
        CHECK(an.at(2 * n).hodge_numbers() == pure_tate(-n).hodge_numbers());
    }
    const StratumAtlas p = builtin("proper_p1xp1");
    CHECK(grW_c(p).same_numbers(grW(p)));
}

TEST_CASE("u_map examples", "[wss]")
{
    const StratumAtlas p = builtin("proper_p1xp1");
    for (int n = 0; n <= 4; ++n)
    {
        const PureMorphism u = u_map(p, n);
        CHECK(u.source() == p.ambient().h(n));
        CHECK(u.target().dim() == p.ambient().h(n).dim());
        CHECK(u.rank() == u.source().dim());
        CHECK(u.rank() == u.target().dim());
    }

    const PureMorphism u0 = u_map(builtin("a1"), 0);
    CHECK(u0.source().is_zero());
    CHECK(u0.target() == PureObject::tate(0));

    const UFactorization f = u_factorization(builtin("p1p1_minus_diagonal"), 2);
    CHECK(f.j.source().dim() == 1);
    CHECK(f.p.target().dim() == 1);
    CHECK(f.u.rank() == 1);
    // ker [[1,1]] is spanned by (1,-1), the Gysin image of the diagonal by (1,1).
    CHECK((Matrix{{1, 1}} * f.j.to_dense()).is_zero());
    CHECK((f.p.to_dense() * Matrix{{1}, {1}}).is_zero());
}

TEST_CASE("weight complexes: d o d = 0 and duality", "[wss][property]")
{
    for (const auto& a : corpus_and_random())
    {
        const int d = a.dimension;
        for (int w = 0; w <= 2 * d; ++w)
        {
            const WeightComplex g = gysin_complex(a, w);
            const WeightComplex r = restriction_complex(a, 2 * d - w);
            CHECK(g.d_squared_zero());
            CHECK(r.d_squared_zero());
            // G_m^T P_{m-1} = P_m R_{m-1}
            for (const auto& [m, spot] : g.spots)
            {
                if (m == 0)
                    continue;
                const auto mm = static_cast<std::size_t>(m);
                const Matrix gm = g.differential(m).to_dense();
                const Matrix rm = r.differential(m - 1).to_dense();
                const Matrix p_lo = spot_pairing(a, g.summands.at(m - 1), w, mm - 1);
                const Matrix p_hi = spot_pairing(a, g.summands.at(m), w, mm);
                CHECK(gm.transpose() * p_lo == p_hi * rm);
            }
        }
    }
}

TEST_CASE("grW against the oracle, grW_c by reflection", "[wss][property]")
{
    for (const auto& a : corpus_and_random())
    {
        const int d = a.dimension;
        const CohomologyTable h = grW(a);
        const CohomologyTable hc = grW_c(a);
        CHECK(oracle::counts_of(h) == oracle::grw_counts(a));
        CHECK(oracle::counts_of(hc) == oracle::reflect(oracle::counts_of(h), d));
        for (const auto& [n, g] : h.byDegree)
            for (const auto& [w, piece] : g.pieces())
            {
                const auto dual_piece = hc.at(2 * d - n).gr(2 * d - w);
                CHECK(hodge_numbers(dual_piece) == hodge_numbers(tate_twist(dual(piece), -d)));
            }
        // Weight n of H^n_c also equals the kernel of the restriction into the boundary.
        for (int n = 0; n <= 2 * d; ++n)
        {
            const auto counts = oracle::u_counts(a, n);
            HodgeNumbers src;
            for (const auto& [t, c] : counts.source)
                if (c)
                    src[t] = c;
            CHECK(hodge_numbers(hc.at(n).gr(n)) == src);
            CHECK(hodge_numbers(u_factorization(a, n).j.source()) == src);
        }
        CHECK(euler_characteristic(h) == stratified_euler_characteristic(a));
        CHECK(respects_weight_bounds(h, d));
        CHECK(respects_weight_bounds(hc, d));
    }
}

TEST_CASE("empty boundary gives isomorphisms u_n", "[wss]")
{
    for (const char* name : {"proper_p1xp1"})
    {
        const StratumAtlas a = builtin(name);
        for (int n = 0; n <= 2 * a.dimension; ++n)
        {
            const PureMorphism u = u_map(a, n);
            CHECK(u.injective());
            CHECK(u.surjective());
        }
    }
}

TEST_CASE("weight bounds reject out-of-range tables", "[wss]")
{
    CohomologyTable t;
    t.set(1, MixedGraded::pure(PureObject::tate(0)));
    CHECK_FALSE(respects_weight_bounds(t, 1));
    t.kind = TableKind::compactSupport;
    CHECK(respects_weight_bounds(t, 1));
    t.kind = TableKind::absoluteIC;
    CHECK_FALSE(respects_weight_bounds(t, 1));
}

TEST_CASE("invalid atlases are refused", "[wss]")
{
    StratumAtlas a = builtin("a1");
    a.strata[{}].pairings[0] = Matrix{{0}};
    CHECK_THROWS_AS(grW(a), InvalidAtlas);
    CHECK_THROWS_AS(gysin_complex(a, 0), InvalidAtlas);
    CHECK_THROWS_AS(u_map(a, 0), InvalidAtlas);
}
