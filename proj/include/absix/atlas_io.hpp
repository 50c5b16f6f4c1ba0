/**
 * JSON form of a StratumAtlas.
 *
 *   { "dimension": 1,
 *     "components": ["p"],
 *     "strata": [ { "subset": [], "cohomology": [[[0,0]], [], [[1,1]]],
 *                   "pairings": [[["1"]], [], [["1"]]] }, ... ],
 *     "restrictions": [ { "from": [], "to": ["p"], "matrices": [[["1"]]] } ],
 *     "selfIntersections": { "p": "0" } }
 *
 * Arrays indexed by degree start at degree 0. A matrix is a list of rows of
 * rational strings; a matrix with no rows takes its column count from the
 * surrounding cohomology. Loading does not validate.
 */

#ifndef ABSIX_ATLAS_IO_HPP
#define ABSIX_ATLAS_IO_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "atlas.hpp"
#include "errors.hpp"
#include "hodge.hpp"
#include "qmat.hpp"

namespace absix {

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline void expect_fields(const json& j, const std::string& where, const std::set<std::string>& required,
                          const std::set<std::string>& optional = {})
{
    if (!j.is_object())
        throw ParseError(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!required.count(key) && !optional.count(key))
            throw ParseError(where + ": unknown field '" + key + "'");
    for (const auto& key : required)
        if (!j.contains(key))
            throw ParseError(where + ": missing field '" + key + "'");
}

inline const json& array_at(const json& j, const std::string& key, const std::string& where)
{
    const json& v = j.at(key);
    if (!v.is_array())
        throw ParseError(where + "/" + key + ": expected an array");
    return v;
}

inline Scalar scalar_from(const json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Scalar(j.get<long long>());
    if (!j.is_string())
        throw ParseError(where + ": expected a rational string");
    try
    {
        return parse_scalar(j.get<std::string>());
    }
    catch (const ParseError& e)
    {
        throw ParseError(where + ": " + e.what());
    }
}

inline Matrix matrix_from(const json& j, std::size_t expected_cols, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected a matrix (array of rows)");
    if (j.empty())
        return Matrix(0, expected_cols);
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        const std::string row_where = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError(row_where + ": ragged or malformed row");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = scalar_from(j[i][c], row_where + "/" + std::to_string(c));
    }
    return m;
}

inline Subset subset_from(const json& j, const StratumAtlas& a, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array of component names");
    Subset s;
    for (const auto& name : j)
    {
        if (!name.is_string())
            throw ParseError(where + ": component names must be strings");
        const auto idx = a.component_index(name.get<std::string>());
        if (!idx)
            throw ParseError(where + ": unknown component '" + name.get<std::string>() + "'");
        s.push_back(*idx);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ParseError(where + ": repeated component");
    return s;
}

inline ordered_json matrix_to(const Matrix& m)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(format_scalar(m(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json subset_to(const Subset& s, const StratumAtlas& a)
{
    ordered_json out = ordered_json::array();
    for (auto i : s)
        out.push_back(a.components.at(i));
    return out;
}

inline int top_degree(const StratumData& s)
{
    int top = -1;
    for (const auto& [k, v] : s.cohomology)
        if (!v.is_zero())
            top = std::max(top, k);
    for (const auto& [k, m] : s.pairings)
        if (m.rows() || m.cols())
            top = std::max(top, k);
    return top;
}

}   // namespace detail

/// Parses an atlas document. Throws ParseError naming the offending location.
inline StratumAtlas load_atlas(const nlohmann::json& doc)
{
    using detail::json;
    StratumAtlas a;
    try
    {
        detail::expect_fields(doc, "", {"dimension", "components", "strata"},
                              {"restrictions", "selfIntersections"});
        if (!doc["dimension"].is_number_integer())
            throw ParseError("/dimension: expected an integer");
        a.dimension = doc["dimension"].get<int>();
        for (const auto& c : detail::array_at(doc, "components", ""))
        {
            if (!c.is_string())
                throw ParseError("/components: names must be strings");
            a.components.push_back(c.get<std::string>());
        }

        const json& strata = detail::array_at(doc, "strata", "");
        for (std::size_t i = 0; i < strata.size(); ++i)
        {
            const std::string where = "/strata/" + std::to_string(i);
            const json& sj = strata[i];
            detail::expect_fields(sj, where, {"subset", "cohomology"}, {"pairings"});
            const Subset s = detail::subset_from(sj["subset"], a, where + "/subset");
            if (a.strata.count(s))
                throw ParseError(where + ": subset declared twice");
            StratumData data;
            const json& coh = detail::array_at(sj, "cohomology", where);
            for (std::size_t k = 0; k < coh.size(); ++k)
            {
                const std::string kw = where + "/cohomology/" + std::to_string(k);
                if (!coh[k].is_array())
                    throw ParseError(kw + ": expected a list of [p,q] labels");
                std::vector<HodgeType> slots;
                for (const auto& pq : coh[k])
                {
                    if (!pq.is_array() || pq.size() != 2 || !pq[0].is_number_integer() ||
                        !pq[1].is_number_integer())
                        throw ParseError(kw + ": slot labels are [p,q] integer pairs");
                    slots.push_back({pq[0].get<int>(), pq[1].get<int>()});
                }
                try
                {
                    PureObject v(static_cast<int>(k), std::move(slots));
                    if (!v.is_zero())
                        data.cohomology.emplace(static_cast<int>(k), std::move(v));
                }
                catch (const WeightMismatch& e)
                {
                    throw ParseError(kw + ": " + e.what());
                }
            }
            if (sj.contains("pairings"))
            {
                const json& pj = detail::array_at(sj, "pairings", where);
                const int e = a.dimension - static_cast<int>(s.size());
                for (std::size_t k = 0; k < pj.size(); ++k)
                {
                    const int kk = static_cast<int>(k);
                    Matrix m = detail::matrix_from(pj[k], data.h(2 * e - kk).dim(),
                                                   where + "/pairings/" + std::to_string(k));
                    if (m.rows() || m.cols())
                        data.pairings.emplace(kk, std::move(m));
                }
            }
            a.strata.emplace(s, std::move(data));
        }

        if (doc.contains("restrictions"))
        {
            const json& rs = detail::array_at(doc, "restrictions", "");
            for (std::size_t i = 0; i < rs.size(); ++i)
            {
                const std::string where = "/restrictions/" + std::to_string(i);
                const json& rj = rs[i];
                detail::expect_fields(rj, where, {"from", "to", "matrices"});
                const Subset from = detail::subset_from(rj["from"], a, where + "/from");
                const Subset to = detail::subset_from(rj["to"], a, where + "/to");
                if (a.restrictions.count({from, to}))
                    throw ParseError(where + ": restriction declared twice");
                const auto* fd = a.stratum(from);
                auto& mats = a.restrictions[{from, to}];
                const json& mj = detail::array_at(rj, "matrices", where);
                for (std::size_t k = 0; k < mj.size(); ++k)
                {
                    const int kk = static_cast<int>(k);
                    Matrix m = detail::matrix_from(mj[k], fd ? fd->h(kk).dim() : 0,
                                                   where + "/matrices/" + std::to_string(k));
                    mats.emplace(kk, std::move(m));
                }
            }
        }

        if (doc.contains("selfIntersections"))
        {
            const json& sj = doc["selfIntersections"];
            if (!sj.is_object())
                throw ParseError("/selfIntersections: expected an object");
            std::map<std::string, Scalar> values;
            for (const auto& [name, value] : sj.items())
                values.emplace(name, detail::scalar_from(value, "/selfIntersections/" + name));
            a.selfIntersections = std::move(values);
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ParseError(std::string("malformed atlas: ") + e.what());
    }
    return a;
}

inline StratumAtlas load_atlas_text(const std::string& text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ParseError("byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return load_atlas(doc);
}

/// Reads and parses a file. A missing or unreadable file is a ParseError
/// too; callers that care about the difference check the stream first.
inline StratumAtlas load_atlas_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_atlas_text(ss.str());
}

/// Canonical document: strata in subset order, restrictions in key order,
/// every degree from 0 to the top degree of the stratum written out.
inline nlohmann::ordered_json dump_atlas(const StratumAtlas& a)
{
    using detail::ordered_json;
    ordered_json doc;
    doc["dimension"] = a.dimension;
    doc["components"] = a.components;
    ordered_json strata = ordered_json::array();
    for (const auto& [s, data] : a.strata)
    {
        ordered_json sj;
        sj["subset"] = detail::subset_to(s, a);
        const int top = detail::top_degree(data);
        ordered_json coh = ordered_json::array(), pairings = ordered_json::array();
        const int e = a.stratum_dim(s);
        for (int k = 0; k <= top; ++k)
        {
            ordered_json slots = ordered_json::array();
            for (const auto& t : data.h(k).slots())
                slots.push_back({t.p, t.q});
            coh.push_back(std::move(slots));
            auto it = data.pairings.find(k);
            pairings.push_back(detail::matrix_to(it == data.pairings.end()
                                                     ? Matrix(data.h(k).dim(), data.h(2 * e - k).dim())
                                                     : it->second));
        }
        sj["cohomology"] = std::move(coh);
        sj["pairings"] = std::move(pairings);
        strata.push_back(std::move(sj));
    }
    doc["strata"] = std::move(strata);
    ordered_json rs = ordered_json::array();
    for (const auto& [key, mats] : a.restrictions)
    {
        ordered_json rj;
        rj["from"] = detail::subset_to(key.first, a);
        rj["to"] = detail::subset_to(key.second, a);
        int top = -1;
        for (const auto& [k, m] : mats)
            if (m.rows() || m.cols())
                top = std::max(top, k);
        ordered_json mj = ordered_json::array();
        for (int k = 0; k <= top; ++k)
            mj.push_back(detail::matrix_to(a.restriction(key.first, key.second, k)));
        rj["matrices"] = std::move(mj);
        rs.push_back(std::move(rj));
    }
    doc["restrictions"] = std::move(rs);
    if (a.selfIntersections)
    {
        ordered_json si = ordered_json::object();
        for (const auto& [name, v] : *a.selfIntersections)
            si[name] = format_scalar(v);
        doc["selfIntersections"] = std::move(si);
    }
    return doc;
}

/// 64-bit FNV-1a of the compact canonical dump, as 16 hex digits.
inline std::string atlas_hash(const StratumAtlas& a)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : dump_atlas(a).dump())
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << h;
    return ss.str();
}

}   // namespace absix

#endif
