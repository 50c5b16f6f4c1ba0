#include <catch_amalgamated.hpp>

#include <regex>
#include <sstream>

#include "oracles.hpp"

using namespace absix;

namespace {

using Cells = std::map<std::tuple<std::string, int, int, int, int>, std::size_t>;   // table, n, w, p, q

std::vector<std::string> split(const std::string& s, const std::string& sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
        if (at == std::string::npos)
            return out;
        start = at + sep.size();
    }
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(' ');
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(' ') - b + 1);
}

Cells cells_from_json(const nlohmann::ordered_json& j)
{
    Cells out;
    for (const auto& [name, t] : j["tables"].items())
        for (const auto& d : t["degrees"])
            for (const auto& w : d["weights"])
                for (const auto& h : w["hodge"])
                    out[{name, d["degree"].get<int>(), w["weight"].get<int>(), h["p"].get<int>(),
                         h["q"].get<int>()}] = h["dim"].get<std::size_t>();
    return out;
}

/// Reads the degree x weight grids back out of the text report. Table blocks
/// are identified by their titles.
Cells cells_from_text(const std::string& text, const Report& r)
{
    std::map<std::string, std::string> by_title;
    for (const auto& t : r.tables)
        by_title[t.title] = t.name;
    Cells out;
    std::istringstream in(text);
    std::string line, current;
    std::vector<int> weights;
    const std::regex cell_re(R"(\((-?\d+),(-?\d+)\)=(\d+))");
    while (std::getline(in, line))
    {
        if (line.empty())
        {
            current.clear();
            continue;
        }
        const auto bracket = line.find("  [");
        if (bracket != std::string::npos && by_title.count(line.substr(0, bracket)))
        {
            current = by_title[line.substr(0, bracket)];
            weights.clear();
            continue;
        }
        if (current.empty())
            continue;
        const auto cols = split(line, " | ");
        if (trim(cols[0]) == "n")
        {
            for (std::size_t i = 1; i < cols.size(); ++i)
                weights.push_back(std::stoi(trim(cols[i]).substr(2)));
            continue;
        }
        const int n = std::stoi(trim(cols[0]));
        for (std::size_t i = 1; i < cols.size(); ++i)
        {
            const std::string c = cols[i];
            for (std::sregex_iterator it(c.begin(), c.end(), cell_re), end; it != end; ++it)
                out[{current, n, weights[i - 1], std::stoi((*it)[1]), std::stoi((*it)[2])}] =
                    std::stoul((*it)[3]);
        }
    }
    return out;
}

std::vector<std::string> report_atlases()
{
    std::vector<std::string> names;
    for (const auto& e : corpus_list())
        names.push_back(e.name);
    names.push_back("a2");
    return names;
}

}   // namespace

TEST_CASE("text and JSON reports agree on every number", "[report]")
{
    for (const auto& name : report_atlases())
    {
        INFO(name);
        const Report r = build_report(builtin(name), name, ReportPart::all);
        const auto j = report_json(r);
        const std::string text = report_text(r);
        const Cells from_json = cells_from_json(j);
        CHECK_FALSE(from_json.empty());
        CHECK(cells_from_text(text, r) == from_json);

        for (const auto& u : j["u"])
        {
            const std::string expect = "n=" + std::to_string(u["degree"].get<int>()) + "  " +
                                       std::to_string(u["source"].get<std::size_t>()) + " -> " +
                                       std::to_string(u["target"].get<std::size_t>()) + "  rank " +
                                       std::to_string(u["rank"].get<std::size_t>());
            CHECK_THAT(text, Catch::Matchers::ContainsSubstring(expect));
        }
        if (j.contains("criteria"))
        {
            const bool verdict = j["criteria"]["verdict"].get<bool>();
            CHECK_THAT(text, Catch::Matchers::ContainsSubstring(std::string("verdict: ") +
                                                                 (verdict ? "true" : "false")));
        }
        if (j.contains("comparison"))
        {
            const bool mp = j["comparison"]["matchesPlus"].get<bool>();
            CHECK_THAT(text, Catch::Matchers::ContainsSubstring(std::string("matchesPlus: ") +
                                                                 (mp ? "true" : "false")));
        }
        if (j.contains("intersectionMatrixRank"))
            CHECK_THAT(text, Catch::Matchers::ContainsSubstring(
                                 "intersection matrix rank: " +
                                 std::to_string(j["intersectionMatrixRank"].get<std::size_t>())));
    }
}

TEST_CASE("JSON report schema", "[report]")
{
    const StratumAtlas a2 = builtin("a2");
    const Report r = build_report(a2, "a2", ReportPart::absic);
    const auto j = report_json(r);
    CHECK(j["schema"] == 1);
    CHECK(j["provenance"]["engine"] == engine_version);
    CHECK(j["provenance"]["atlasHash"] == atlas_hash(a2));
    CHECK(j["provenance"]["atlasHash"].get<std::string>().size() == 16);
    REQUIRE(j["tables"].contains("absoluteIC"));
    const auto& degrees = j["tables"]["absoluteIC"]["degrees"];
    REQUIRE(degrees.size() == 5);
    for (const auto& d : degrees)
    {
        const int n = d["degree"].get<int>();
        if (n == 0 || n == 4)
        {
            REQUIRE(d["weights"].size() == 1);
            CHECK(d["weights"][0]["weight"] == n);
            CHECK(d["weights"][0]["hodge"][0]["p"] == n / 2);
            CHECK(d["weights"][0]["hodge"][0]["q"] == n / 2);
            CHECK(d["weights"][0]["hodge"][0]["dim"] == 1);
        }
        else
            CHECK(d["dim"] == 0);
    }
    CHECK_FALSE(j.contains("criteria"));
}

TEST_CASE("reports restricted to one degree", "[report]")
{
    const Report r = build_report(builtin("gm_times_a1"), "gm_times_a1", ReportPart::cohomology, 1);
    const auto j = report_json(r);
    for (const auto& [name, t] : j["tables"].items())
    {
        REQUIRE(t["degrees"].size() == 1);
        CHECK(t["degrees"][0]["degree"] == 1);
    }
    CHECK(j["tables"]["cohomology"]["degrees"][0]["weights"][0]["weight"] == 2);
}

TEST_CASE("criteria text names the failing degree", "[report]")
{
    const Report r = build_report(builtin("gm_times_a1"), "gm_times_a1", ReportPart::criteria);
    const std::string text = report_text(r);
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("verdict: false"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("failing degrees: 1"));
    REQUIRE(r.dichotomy);
    CHECK(r.dichotomy->mismatchDegrees == std::vector<int>{1, 3});
}

TEST_CASE("reports are deterministic", "[report]")
{
    for (const auto& name : report_atlases())
    {
        const Report a = build_report(builtin(name), name, ReportPart::all);
        const Report b = build_report(load_atlas_text(dump_atlas(builtin(name)).dump()), name, ReportPart::all);
        CHECK(report_json(a).dump(2) == report_json(b).dump(2));
        CHECK(report_text(a) == report_text(b));
    }
}

TEST_CASE("report parts", "[report]")
{
    CHECK(parse_report_part("boundary") == ReportPart::boundary);
    CHECK_FALSE(parse_report_part("everything"));
    const Report b = build_report(builtin("a1"), "a1", ReportPart::boundary);
    REQUIRE(b.tables.size() == 1);
    CHECK(b.tables[0].name == "boundary");
    const Report p = build_report(builtin("a1"), "a1", ReportPart::ihplus);
    REQUIRE(p.tables.size() == 1);
    CHECK(p.tables[0].name == "onePointIC");
    StratumAtlas bad = builtin("a1");
    bad.restrictions.clear();
    CHECK_THROWS_AS(build_report(bad, "bad", ReportPart::all), InvalidAtlas);
}
