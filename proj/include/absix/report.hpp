/**
 * Report assembly and rendering (JSON schema 1 and aligned text tables).
 */

#ifndef ABSIX_REPORT_HPP
#define ABSIX_REPORT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "absic.hpp"
#include "atlas.hpp"
#include "atlas_io.hpp"
#include "hodge.hpp"
#include "plus.hpp"
#include "wss.hpp"

namespace absix {

inline constexpr const char* engine_version = "absix 1.0.0";

enum class ReportPart
{
    cohomology,
    absic,
    boundary,
    ihplus,
    criteria,
    all,
};

inline std::optional<ReportPart> parse_report_part(const std::string& s)
{
    static const std::map<std::string, ReportPart> names{
        {"cohomology", ReportPart::cohomology}, {"absic", ReportPart::absic},
        {"boundary", ReportPart::boundary},     {"ihplus", ReportPart::ihplus},
        {"criteria", ReportPart::criteria},     {"all", ReportPart::all},
    };
    auto it = names.find(s);
    if (it == names.end())
        return std::nullopt;
    return it->second;
}

struct NamedTable
{
    std::string name;    ///< JSON key
    std::string title;   ///< text heading
    CohomologyTable table;
};

struct USummary
{
    int degree = 0;
    std::size_t source = 0;
    std::size_t target = 0;
    std::size_t rank = 0;
};

struct Report
{
    std::string atlasName;
    std::string atlasHash;
    int dimension = 0;
    std::optional<int> degree;   ///< restrict tables to one degree
    std::vector<NamedTable> tables;
    std::vector<USummary> u;
    std::optional<CriteriaReport> criteria;
    std::optional<DichotomyResult> dichotomy;
    std::optional<std::size_t> intersectionRank;
    std::optional<ComparisonReport> comparison;
};

/// Runs the requested computations. The atlas must be valid.
inline Report build_report(const StratumAtlas& a, const std::string& name, ReportPart what,
                           std::optional<int> degree = std::nullopt)
{
    require_valid(a);
    Report r;
    r.atlasName = name;
    r.atlasHash = atlas_hash(a);
    r.dimension = a.dimension;
    r.degree = degree;
    const bool all = what == ReportPart::all;

    if (all || what == ReportPart::cohomology)
    {
        r.tables.push_back({"cohomology", "Gr^W H^n(X)", grW(a)});
        r.tables.push_back({"compactSupport", "Gr^W H^n_c(X)", grW_c(a)});
        r.tables.push_back({"ambient", "H^n(Y)", ambient_cohomology(a)});
    }
    if (all || what == ReportPart::absic)
    {
        const AbsicResult ic = absolute_ic(a);
        r.tables.push_back({"absoluteIC", "H^n_{!*}(X)", ic.table});
        for (const auto& [n, u] : ic.u)
            r.u.push_back({n, u.source().dim(), u.target().dim(), u.rank()});
    }
    if (all || what == ReportPart::boundary)
        r.tables.push_back({"boundary", "Gr^W dH^n(X)", boundary_cohomology(a)});
    if (all || what == ReportPart::ihplus || what == ReportPart::criteria)
    {
        // ih_one_point needs X connected; the comparison is skipped otherwise.
        if (grW(a).at(0).dim() == 1)
        {
            r.comparison = compare_candidates(a);
            if (what != ReportPart::criteria)
                r.tables.push_back({"onePointIC", "IH^n(X^+)", r.comparison->ihPlus});
        }
    }
    if (all || what == ReportPart::criteria)
    {
        r.criteria = weight_criteria(a);
        if (!r.criteria->verdict && r.comparison)
            r.dichotomy = plus_dichotomy(a);
        if (a.dimension == 2 && a.selfIntersections)
            r.intersectionRank = intersection_matrix_rank(a);
    }
    return r;
}

namespace detail {

inline std::vector<int> report_degrees(const Report& r)
{
    std::vector<int> out;
    if (r.degree)
        out.push_back(*r.degree);
    else
        for (int n = 0; n <= 2 * r.dimension; ++n)
            out.push_back(n);
    return out;
}

/// "(p,q)=d" cells of one graded piece, in (p,q) order.
inline std::string cell(const PureObject& piece)
{
    std::string out;
    for (const auto& [t, n] : hodge_numbers(piece))
        out += (out.empty() ? "" : " ") + t.str() + "=" + std::to_string(n);
    return out;
}

inline nlohmann::ordered_json table_json(const CohomologyTable& t, const std::vector<int>& degrees)
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(t.kind);
    nlohmann::ordered_json ds = nlohmann::ordered_json::array();
    for (int n : degrees)
    {
        const MixedGraded g = t.at(n);
        nlohmann::ordered_json dj;
        dj["degree"] = n;
        dj["dim"] = g.dim();
        nlohmann::ordered_json ws = nlohmann::ordered_json::array();
        for (const auto& [w, piece] : g.pieces())
        {
            nlohmann::ordered_json wj;
            wj["weight"] = w;
            nlohmann::ordered_json hs = nlohmann::ordered_json::array();
            for (const auto& [ty, c] : hodge_numbers(piece))
                hs.push_back({{"p", ty.p}, {"q", ty.q}, {"dim", c}});
            wj["hodge"] = std::move(hs);
            ws.push_back(std::move(wj));
        }
        dj["weights"] = std::move(ws);
        ds.push_back(std::move(dj));
    }
    j["degrees"] = std::move(ds);
    return j;
}

inline nlohmann::ordered_json degree_flags(const std::map<int, bool>& m)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [n, ok] : m)
        j.push_back({{"degree", n}, {"holds", ok}});
    return j;
}

}   // namespace detail

inline nlohmann::ordered_json report_json(const Report& r)
{
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["atlasName"] = r.atlasName;
    j["provenance"] = {{"engine", engine_version}, {"atlasHash", r.atlasHash}};
    j["dimension"] = r.dimension;
    const auto degrees = detail::report_degrees(r);
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& t : r.tables)
        tables[t.name] = detail::table_json(t.table, degrees);
    j["tables"] = std::move(tables);
    if (!r.u.empty())
    {
        nlohmann::ordered_json us = nlohmann::ordered_json::array();
        for (const auto& u : r.u)
            if (!r.degree || *r.degree == u.degree)
                us.push_back({{"degree", u.degree}, {"source", u.source}, {"target", u.target}, {"rank", u.rank}});
        j["u"] = std::move(us);
    }
    if (r.criteria)
    {
        const auto& c = *r.criteria;
        nlohmann::ordered_json cj;
        cj["cond2"] = {{"holds", c.cond2}, {"degrees", detail::degree_flags(c.cond2ByDegree)}};
        cj["cond3"] = {{"holds", c.cond3}, {"degrees", detail::degree_flags(c.cond3ByDegree)}};
        cj["cond6"] = c.cond6;
        cj["cond7"] = c.cond7;
        nlohmann::ordered_json inj = nlohmann::ordered_json::array();
        for (const auto& x : c.injectivityRange)
            inj.push_back({{"degree", x.degree}, {"holds", x.holds}});
        cj["injectivity"] = {{"mode", c.injectivityMode}, {"degrees", std::move(inj)}};
        cj["verdict"] = c.verdict;
        j["criteria"] = std::move(cj);
    }
    if (r.dichotomy)
    {
        const auto& d = *r.dichotomy;
        j["dichotomy"] = {{"mode", d.mode},        {"c", d.c},
                          {"connectingRank", d.connectingRank},
                          {"horn", d.horn},        {"hornI", d.hornI},
                          {"hornII", d.hornII},    {"exactlyOne", d.exactlyOne},
                          {"mismatchDegrees", d.mismatchDegrees}};
    }
    if (r.intersectionRank)
        j["intersectionMatrixRank"] = *r.intersectionRank;
    if (r.comparison)
        j["comparison"] = {{"matchesPlus", r.comparison->matchesPlus}, {"matchesY", r.comparison->matchesY}};
    return j;
}

/// Degree x weight grid of "(p,q)=d" cells, columns padded to equal width.
inline std::string render_table(const NamedTable& t, const std::vector<int>& degrees)
{
    std::set<int> weights;
    for (int n : degrees)
        for (int w : t.table.at(n).weights())
            weights.insert(w);
    std::vector<std::string> header{"n"};
    for (int w : weights)
        header.push_back("w=" + std::to_string(w));
    std::vector<std::vector<std::string>> rows;
    for (int n : degrees)
    {
        std::vector<std::string> row{std::to_string(n)};
        const MixedGraded g = t.table.at(n);
        for (int w : weights)
        {
            const std::string c = detail::cell(g.gr(w));
            row.push_back(c.empty() ? "." : c);
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        width[i] = header[i].size();
        for (const auto& row : rows)
            width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream os;
    os << t.title << "  [" << to_string(t.table.kind) << "]\n";
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            std::string c = cells[i];
            c.resize(width[i], ' ');
            s += (i ? " | " : "  ") + c;
        }
        while (!s.empty() && s.back() == ' ')
            s.pop_back();
        os << s << "\n";
    };
    line(header);
    for (const auto& row : rows)
        line(row);
    return os.str();
}

inline std::string report_text(const Report& r)
{
    std::ostringstream os;
    os << "atlas " << r.atlasName << "  (d = " << r.dimension << ", hash " << r.atlasHash << ")\n";
    const auto degrees = detail::report_degrees(r);
    for (const auto& t : r.tables)
        os << "\n" << render_table(t, degrees);
    if (!r.u.empty())
    {
        os << "\nu_n : Gr_n H^n_c -> Gr_n H^n\n";
        for (const auto& u : r.u)
            if (!r.degree || *r.degree == u.degree)
                os << "  n=" << u.degree << "  " << u.source << " -> " << u.target << "  rank " << u.rank << "\n";
    }
    auto failing = [](const std::map<int, bool>& m) {
        std::string s;
        for (const auto& [n, ok] : m)
            if (!ok)
                s += (s.empty() ? "" : ",") + std::to_string(n);
        return s.empty() ? std::string() : "  failing degrees: " + s;
    };
    if (r.criteria)
    {
        const auto& c = *r.criteria;
        os << "\ncriteria\n";
        os << "  cond2 (dH^n of weights <= n, n <= d-1): " << std::boolalpha << c.cond2 << failing(c.cond2ByDegree) << "\n";
        os << "  cond3 (dH^n of weights >= n+1, n >= d): " << c.cond3 << failing(c.cond3ByDegree) << "\n";
        os << "  cond6 (H^n pure, n <= d-1): " << c.cond6 << "\n";
        os << "  cond7 (H^n_c pure, n >= d+1): " << c.cond7 << "\n";
        os << "  injectivity (" << c.injectivityMode << "):";
        if (c.injectivityRange.empty())
            os << " empty range";
        for (const auto& x : c.injectivityRange)
            os << " n=" << x.degree << (x.holds ? " holds" : " fails");
        os << "\n  verdict: " << c.verdict << "\n";
    }
    if (r.dichotomy)
    {
        const auto& d = *r.dichotomy;
        os << "\ndichotomy (" << d.mode << ")\n";
        if (d.horn)
            os << "  connecting rank " << d.connectingRank << ", predicted horn " << d.horn << "\n";
        os << "  hornI: " << std::boolalpha << d.hornI << "  hornII: " << d.hornII
           << "  exactly one: " << d.exactlyOne << "\n";
        os << "  dimension mismatch in degrees:";
        for (int n : d.mismatchDegrees)
            os << " " << n;
        os << "\n";
    }
    if (r.intersectionRank)
        os << "\nintersection matrix rank: " << *r.intersectionRank << "\n";
    if (r.comparison)
        os << "\ncomparison\n  matchesPlus: " << std::boolalpha << r.comparison->matchesPlus
           << "\n  matchesY: " << r.comparison->matchesY << "\n";
    return os.str();
}

}   // namespace absix

#endif
