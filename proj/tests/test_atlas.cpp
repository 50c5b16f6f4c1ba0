#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace absix;

namespace {

std::vector<std::string> all_corpus_names()
{
    std::vector<std::string> names;
    for (const auto& e : corpus_list())
        names.push_back(e.name);
    for (const auto& [alias, target] : corpus_aliases())
        names.push_back(alias);
    return names;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}   // namespace

TEST_CASE("validate_atlas examples", "[atlas]")
{
    const StratumAtlas p2 = builtin("pn_minus_hyperplane", {{"n", 2}});
    CHECK(validate_atlas(p2).valid());

    StratumAtlas singular = p2;
    singular.strata[{}].pairings[2] = Matrix{{0}};
    const auto rep = validate_atlas(singular);
    CHECK(rep.has("PairingNotPerfect"));
    CHECK_THROWS_AS(require_valid(singular), InvalidAtlas);
}

TEST_CASE("square compatibility is checked", "[atlas]")
{
    // Y = P^3, Z_0, Z_1 two planes, Z_01 a line. H^2 restrictions are all [[1]].
    auto proj = [](int e) {
        StratumData s;
        for (int j = 0; j <= e; ++j)
        {
            s.cohomology[2 * j] = PureObject(2 * j, {{j, j}});
            s.pairings[2 * j] = Matrix{{1}};
        }
        return s;
    };
    StratumAtlas a;
    a.dimension = 3;
    a.components = {"H1", "H2"};
    a.strata[{}] = proj(3);
    a.strata[{0}] = proj(2);
    a.strata[{1}] = proj(2);
    a.strata[{0, 1}] = proj(1);
    for (const auto& key : std::vector<RestrictionKey>{{{}, {0}}, {{}, {1}}, {{0}, {0, 1}}, {{1}, {0, 1}}})
        for (int k = 0; k <= 4; k += 2)
            if (a.strata.at(key.second).h(k).dim())
                a.restrictions[key][k] = Matrix{{1}};
    REQUIRE(validate_atlas(a).valid());
    a.restrictions[{{0}, {0, 1}}][2] = Matrix{{2}};
    const auto rep = validate_atlas(a);
    CHECK(rep.has("SquareIncompatible"));
    CHECK_FALSE(rep.has("PairingNotPerfect"));
}

TEST_CASE("validation finds each kind of defect", "[atlas]")
{
    const StratumAtlas base = builtin("middle_dim_Z_selfint_nonzero");
    REQUIRE(validate_atlas(base).valid());

    auto expect = [&](const std::string& code, auto mutate) {
        StratumAtlas a = base;
        mutate(a);
        const auto rep = validate_atlas(a);
        INFO(code);
        for (const auto& f : rep.findings)
            UNSCOPED_INFO(f.str());
        CHECK(rep.has(code));
    };
    expect("MissingSubset", [](StratumAtlas& a) { a.strata.erase(Subset{}); });
    expect("DuplicateComponent", [](StratumAtlas& a) { a.components.push_back(a.components[0]); });
    expect("UnknownComponent", [](StratumAtlas& a) { a.strata[{5}] = a.strata.at({0}); });
    expect("DimensionOutOfRange", [](StratumAtlas& a) { a.dimension = -1; });
    expect("DegreeOutOfRange", [](StratumAtlas& a) { a.strata[{0}].cohomology[4] = PureObject::tate(-2); });
    expect("HodgeAsymmetry", [](StratumAtlas& a) {
        a.strata[{}].cohomology[2] = PureObject(2, {{2, 0}, {1, 1}});
        a.strata[{}].pairings[2] = Matrix{{0, 1}, {1, 0}};
    });
    expect("PoincareDualityMismatch", [](StratumAtlas& a) {
        a.strata[{}].cohomology[4] = PureObject(4, {{2, 2}, {2, 2}});
    });
    expect("EmptyStratum", [](StratumAtlas& a) { a.strata[{0}].cohomology.erase(0); });
    expect("UnitTypeMismatch", [](StratumAtlas& a) {
        a.strata[{0}].cohomology[0] = PureObject(0, {{1, -1}});
    });
    expect("PairingMissing", [](StratumAtlas& a) { a.strata[{}].pairings.erase(2); });
    expect("PairingShape", [](StratumAtlas& a) { a.strata[{}].pairings[2] = Matrix{{1}}; });
    expect("PairingTypeMismatch", [](StratumAtlas& a) {
        a.strata[{}].cohomology[1] = PureObject(1, {{1, 0}, {0, 1}});
        a.strata[{}].cohomology[3] = PureObject(3, {{2, 1}, {1, 2}});
        a.strata[{}].pairings[1] = Matrix{{1, 0}, {0, 1}};
        a.strata[{}].pairings[3] = Matrix{{-1, 0}, {0, -1}};
    });
    expect("PairingAsymmetric", [](StratumAtlas& a) { a.strata[{}].pairings[2] = Matrix{{0, 1}, {2, 0}}; });
    expect("RestrictionUnknownStratum", [](StratumAtlas& a) { a.restrictions[{{0}, {0, 1}}][0] = Matrix{{1}}; });
    expect("RestrictionNotCovering", [](StratumAtlas& a) { a.restrictions[{{0}, {}}][0] = Matrix{{1}}; });
    expect("RestrictionShape", [](StratumAtlas& a) { a.restrictions[{{}, {0}}][2] = Matrix{{1, 1, 1}}; });
    expect("RestrictionTypeMismatch", [](StratumAtlas& a) {
        a.strata[{}].cohomology[2] = PureObject(2, {{1, 1}, {2, 0}, {0, 2}});
        a.strata[{}].pairings[2] = Matrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
        a.restrictions[{{}, {0}}][2] = Matrix{{1, 1, 0}};
    });
    expect("UnitNotPreserved", [](StratumAtlas& a) { a.restrictions[{{}, {0}}][0] = Matrix{{2}}; });
    expect("RestrictionMissing", [](StratumAtlas& a) { a.restrictions.clear(); });
    expect("SelfIntersectionInconsistent", [](StratumAtlas& a) {
        a.selfIntersections = std::map<std::string, Scalar>{{a.components[0], 5}};
    });
    expect("UnknownComponent", [](StratumAtlas& a) {
        a.selfIntersections = std::map<std::string, Scalar>{{"nope", 0}};
    });
}

TEST_CASE("derived self-intersections", "[atlas]")
{
    CHECK(derived_self_intersection(builtin("middle_dim_Z_selfint_zero"), 0) == 0);
    CHECK(derived_self_intersection(builtin("middle_dim_Z_selfint_nonzero"), 0) == 2);
    const StratumAtlas a2 = builtin("surface_resolution");
    CHECK(derived_self_intersection(a2, 0) == -2);
    CHECK(derived_self_intersection(a2, 1) == -2);
}

TEST_CASE("builtin examples", "[atlas]")
{
    const StratumAtlas a1 = builtin("pn_minus_hyperplane", {{"n", 1}});
    CHECK(a1.dimension == 1);
    CHECK(a1.components.size() == 1);
    CHECK(a1.ambient().h(2).dim() == 1);

    const StratumAtlas g = builtin("gm_times_a1");
    CHECK(g.dimension == 2);
    CHECK(g.components.size() == 3);
    CHECK(g.subsets_of_size(2).size() == 2);
    std::size_t points = 0;
    for (const auto& s : g.subsets_of_size(2))
        points += g.strata.at(s).h(0).dim();
    CHECK(points == 2);

    const StratumAtlas diag = builtin("p1p1_minus_diagonal");
    CHECK(diag.restriction({}, {0}, 2) == Matrix{{1, 1}});

    CHECK(builtin("a2") == builtin("pn_minus_hyperplane", {{"n", 2}}));
    CHECK_THROWS_AS(builtin("no_such_thing"), UnknownCorpusItem);
    CHECK_THROWS_AS(builtin("pn_minus_hyperplane", {{"m", 2}}), UnknownCorpusItem);
    CHECK_THROWS_AS(builtin("pn_minus_hyperplane", {{"n", 0}}), UnknownCorpusItem);
    CHECK_THROWS_AS(builtin("a1", {{"n", 2}}), UnknownCorpusItem);
}

TEST_CASE("corpus references", "[atlas]")
{
    const auto [name, params] = parse_corpus_ref("points_in_proper:d=2,k=3");
    CHECK(name == "points_in_proper");
    CHECK(params == CorpusParams{{"d", 2}, {"k", 3}});
    CHECK(parse_corpus_ref("a1").second.empty());
    CHECK_THROWS_AS(parse_corpus_ref("an:n"), ParseError);
    CHECK_THROWS_AS(parse_corpus_ref("an:n=x"), ParseError);
}

TEST_CASE("every corpus atlas is valid and round-trips", "[atlas]")
{
    CHECK(corpus_list().size() >= 8);
    std::vector<StratumAtlas> atlases;
    for (const auto& name : all_corpus_names())
        atlases.push_back(builtin(name));
    for (int d = 1; d <= 3; ++d)
        for (int k = 1; k <= 3; ++k)
            atlases.push_back(builtin("points_in_proper", {{"d", d}, {"k", k}}));
    for (int n = 1; n <= 4; ++n)
        atlases.push_back(builtin("pn_minus_hyperplane", {{"n", n}}));
    for (const auto& a : atlases)
    {
        const auto rep = validate_atlas(a);
        for (const auto& f : rep.findings)
            UNSCOPED_INFO(f.str());
        CHECK(rep.valid());
        const StratumAtlas back = load_atlas_text(dump_atlas(a).dump());
        CHECK(back == a);
        CHECK(atlas_hash(back) == atlas_hash(a));
        CHECK(dump_atlas(back).dump() == dump_atlas(a).dump());
    }
}

TEST_CASE("load_atlas examples", "[atlas]")
{
    const StratumAtlas a1 = load_atlas_file(std::string(ABSIX_CORPUS_DIR) + "/a1.atlas.json");
    CHECK(a1.dimension == 1);
    CHECK(a1.components.size() == 1);
    CHECK(a1 == builtin("a1"));

    const StratumAtlas proper = load_atlas_text(R"({
        "dimension": 1, "components": [],
        "strata": [{"subset": [], "cohomology": [[[0,0]], [], [[1,1]]],
                    "pairings": [[["1"]], [], [["1"]]]}]
    })");
    CHECK(proper.components.empty());
    CHECK(validate_atlas(proper).valid());
    CHECK(grW(proper).same_numbers(ambient_cohomology(proper)));

    const std::string text = read_file(std::string(ABSIX_CORPUS_DIR) + "/a1.atlas.json");
    CHECK_THROWS_AS(load_atlas_text(text.substr(0, text.size() / 2)), ParseError);
    CHECK_THROWS_AS(load_atlas_file("/nonexistent/atlas.json"), ParseError);
}

TEST_CASE("load_atlas reports locations", "[atlas]")
{
    auto message = [](const std::string& doc) -> std::string {
        try
        {
            load_atlas_text(doc);
        }
        catch (const ParseError& e)
        {
            return e.what();
        }
        return "";
    };
    CHECK_THAT(message(R"({"dimension": 1, "components": [], "strata": [], "extra": 1})"),
               Catch::Matchers::ContainsSubstring("extra"));
    CHECK_THAT(message(R"({"dimension": "one", "components": [], "strata": []})"),
               Catch::Matchers::ContainsSubstring("/dimension"));
    CHECK_THAT(message(R"({"dimension": 1, "components": [],
                           "strata": [{"subset": [], "cohomology": [[[1,1]]]}]})"),
               Catch::Matchers::ContainsSubstring("/strata/0/cohomology/0"));
    CHECK_THAT(message(R"({"dimension": 1, "components": [],
                           "strata": [{"subset": [], "cohomology": [[[0,0]]], "pairings": [[["x"]]]}]})"),
               Catch::Matchers::ContainsSubstring("/strata/0/pairings/0"));
    CHECK_THAT(message(R"({"dimension": 1, "components": ["a"],
                           "strata": [{"subset": ["b"], "cohomology": []}]})"),
               Catch::Matchers::ContainsSubstring("/strata/0/subset"));
    CHECK_FALSE(message(R"({"dimension": 1})").empty());
}

TEST_CASE("random synthetic atlases are valid", "[atlas][property]")
{
    for (const auto& a : oracle::random_atlases(100, 41))
    {
        const auto rep = validate_atlas(a);
        for (const auto& f : rep.findings)
            UNSCOPED_INFO(f.str());
        CHECK(rep.valid());
        CHECK(load_atlas_text(dump_atlas(a).dump()) == a);
    }
}
