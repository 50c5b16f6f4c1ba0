/**
 * Pure and weight-graded Hodge structures, modelled by their (p,q) labels.
 *
 * A mixed Hodge structure is stored only through its associated weight
 * graded: a finite family of pure objects indexed by weight. Morphisms of
 * pure objects respect the bigrading, so they are stored as one exact
 * matrix per (p,q) type.
 */

#ifndef ABSIX_HODGE_HPP
#define ABSIX_HODGE_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qmat.hpp"

namespace absix {

struct HodgeType
{
    int p = 0;
    int q = 0;

    int weight() const noexcept { return p + q; }

    friend auto operator<=>(const HodgeType&, const HodgeType&) = default;

    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

using HodgeNumbers = std::map<HodgeType, std::size_t>;

/// Pure polarizable Hodge structure of a fixed weight: an ordered basis, each
/// vector labelled by its (p,q) type. The empty object is the zero object
/// and is weight-compatible with everything.
class PureObject
{
  public:
    PureObject() = default;

    explicit PureObject(int weight, std::vector<HodgeType> slots = {})
        : weight_(weight), slots_(std::move(slots))
    {
        for (const auto& t : slots_)
            if (t.weight() != weight_)
                throw WeightMismatch("slot " + t.str() + " in object of weight " +
                                     std::to_string(weight_));
    }

    /// Slots grouped by type in lexicographic order.
    static PureObject from_numbers(int weight, const HodgeNumbers& h)
    {
        std::vector<HodgeType> slots;
        for (const auto& [t, n] : h)
            slots.insert(slots.end(), n, t);
        return PureObject(weight, std::move(slots));
    }

    /// Tate object Q(m): one slot of type (-m,-m).
    static PureObject tate(int m) { return PureObject(-2 * m, {{-m, -m}}); }

    int weight() const noexcept { return weight_; }
    const std::vector<HodgeType>& slots() const& noexcept { return slots_; }
    std::vector<HodgeType> slots() && { return std::move(slots_); }
    std::size_t dim() const noexcept { return slots_.size(); }
    bool is_zero() const noexcept { return slots_.empty(); }

    /// Positions of the slots of type t, in slot order.
    std::vector<std::size_t> indices(const HodgeType& t) const
    {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i] == t)
                idx.push_back(i);
        return idx;
    }

    std::size_t count(const HodgeType& t) const
    {
        std::size_t n = 0;
        for (const auto& s : slots_)
            n += (s == t);
        return n;
    }

    std::set<HodgeType> types() const { return {slots_.begin(), slots_.end()}; }

    friend bool operator==(const PureObject& a, const PureObject& b)
    {
        if (a.is_zero() && b.is_zero())
            return true;
        return a.weight_ == b.weight_ && a.slots_ == b.slots_;
    }

  private:
    int weight_ = 0;
    std::vector<HodgeType> slots_;
};

inline HodgeNumbers hodge_numbers(const PureObject& v)
{
    HodgeNumbers h;
    for (const auto& t : v.slots())
        ++h[t];
    return h;
}

/// Twist by Q(m): weight drops by 2m and every slot moves by (-m,-m).
inline PureObject tate_twist(const PureObject& v, int m)
{
    std::vector<HodgeType> slots;
    slots.reserve(v.dim());
    for (const auto& t : v.slots())
        slots.push_back({t.p - m, t.q - m});
    return PureObject(v.weight() - 2 * m, std::move(slots));
}

inline PureObject dual(const PureObject& v)
{
    std::vector<HodgeType> slots;
    slots.reserve(v.dim());
    for (const auto& t : v.slots())
        slots.push_back({-t.p, -t.q});
    return PureObject(-v.weight(), std::move(slots));
}

inline PureObject direct_sum(const PureObject& a, const PureObject& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.weight() != b.weight())
        throw WeightMismatch("direct sum of weights " + std::to_string(a.weight()) + " and " +
                             std::to_string(b.weight()));
    auto slots = a.slots();
    slots.insert(slots.end(), b.slots().begin(), b.slots().end());
    return PureObject(a.weight(), std::move(slots));
}

/// Morphism of pure objects of equal weight, one block per (p,q) type.
/// The block for t has shape target.count(t) x source.count(t); every type
/// present on either side has a (possibly zero-sized) block.
class PureMorphism
{
  public:
    PureMorphism() = default;

    PureMorphism(PureObject source, PureObject target, std::map<HodgeType, Matrix> blocks)
        : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks))
    {
        if (!source_.is_zero() && !target_.is_zero() && source_.weight() != target_.weight())
            throw WeightMismatch("morphism between weights " + std::to_string(source_.weight()) +
                                 " and " + std::to_string(target_.weight()));
        for (const auto& t : all_types())
        {
            auto it = blocks_.find(t);
            const std::size_t r = target_.count(t), c = source_.count(t);
            if (it == blocks_.end())
                blocks_.emplace(t, Matrix(r, c));
            else if (it->second.rows() != r || it->second.cols() != c)
                throw DimensionError("block " + t.str() + " has shape " + it->second.shape() +
                                     ", expected " + std::to_string(r) + "x" + std::to_string(c));
        }
        for (const auto& [t, m] : blocks_)
            if (!source_.count(t) && !target_.count(t) && (m.rows() || m.cols()))
                throw DimensionError("block " + t.str() + " for a type absent on both sides");
    }

    static PureMorphism zero(const PureObject& s, const PureObject& t) { return {s, t, {}}; }

    static PureMorphism identity(const PureObject& s)
    {
        std::map<HodgeType, Matrix> blocks;
        for (const auto& t : s.types())
            blocks.emplace(t, Matrix::identity(s.count(t)));
        return {s, s, std::move(blocks)};
    }

    /// Split a dense matrix (target.dim() x source.dim()) into type blocks.
    /// Entries linking different types must vanish.
    static PureMorphism from_dense(const PureObject& s, const PureObject& t, const Matrix& m)
    {
        if (m.rows() != t.dim() || m.cols() != s.dim())
            throw DimensionError("dense morphism has shape " + m.shape() + ", expected " +
                                 std::to_string(t.dim()) + "x" + std::to_string(s.dim()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0 && t.slots()[i] != s.slots()[j])
                    throw HodgeTypeMismatch("entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") maps type " +
                                            s.slots()[j].str() + " to " + t.slots()[i].str());
        std::map<HodgeType, Matrix> blocks;
        std::set<HodgeType> types = s.types();
        types.merge(t.types());
        for (const auto& ty : types)
            blocks.emplace(ty, m.select_rows(t.indices(ty)).select_cols(s.indices(ty)));
        return {s, t, std::move(blocks)};
    }

    const PureObject& source() const noexcept { return source_; }
    const PureObject& target() const noexcept { return target_; }
    const std::map<HodgeType, Matrix>& blocks() const& noexcept { return blocks_; }
    std::map<HodgeType, Matrix> blocks() && { return std::move(blocks_); }

    /// Block for type t; a zero block of the right shape when t is absent.
    Matrix block(const HodgeType& t) const { return block_or_zero(t); }

    int weight() const noexcept { return source_.is_zero() ? target_.weight() : source_.weight(); }

    Matrix to_dense() const
    {
        Matrix m(target_.dim(), source_.dim());
        for (const auto& [t, b] : blocks_)
        {
            const auto ri = target_.indices(t);
            const auto ci = source_.indices(t);
            for (std::size_t i = 0; i < ri.size(); ++i)
                for (std::size_t j = 0; j < ci.size(); ++j)
                    m(ri[i], ci[j]) = b(i, j);
        }
        return m;
    }

    std::size_t rank() const
    {
        std::size_t r = 0;
        for (const auto& [t, b] : blocks_)
            r += absix::rank(b);
        return r;
    }

    bool injective() const { return rank() == source_.dim(); }
    bool surjective() const { return rank() == target_.dim(); }
    bool is_zero() const
    {
        for (const auto& [t, b] : blocks_)
            if (!b.is_zero())
                return false;
        return true;
    }

    std::set<HodgeType> all_types() const
    {
        auto types = source_.types();
        types.merge(target_.types());
        return types;
    }

    /// Composition: (*this) after `first`.
    PureMorphism after(const PureMorphism& first) const
    {
        if (!(first.target_ == source_))
            throw DimensionError("composition of morphisms with mismatched objects");
        std::map<HodgeType, Matrix> blocks;
        auto types = first.source_.types();
        types.merge(target_.types());
        for (const auto& t : types)
            blocks.emplace(t, block_or_zero(t) * first.block_or_zero(t));
        return {first.source_, target_, std::move(blocks)};
    }

    friend bool operator==(const PureMorphism& a, const PureMorphism& b)
    {
        if (!(a.source_ == b.source_) || !(a.target_ == b.target_))
            return false;
        for (const auto& t : a.all_types())
            if (!(a.block_or_zero(t) == b.block_or_zero(t)))
                return false;
        return true;
    }

  private:
    Matrix block_or_zero(const HodgeType& t) const
    {
        auto it = blocks_.find(t);
        if (it != blocks_.end())
            return it->second;
        return Matrix(target_.count(t), source_.count(t));
    }

    PureObject source_;
    PureObject target_;
    std::map<HodgeType, Matrix> blocks_;
};

/// Associated graded of a mixed Hodge structure. Only nonzero pieces are
/// stored.
class MixedGraded
{
  public:
    MixedGraded() = default;

    void set(int weight, PureObject piece)
    {
        if (piece.is_zero())
        {
            pieces_.erase(weight);
            return;
        }
        if (piece.weight() != weight)
            throw WeightMismatch("piece of weight " + std::to_string(piece.weight()) +
                                 " stored under key " + std::to_string(weight));
        pieces_[weight] = std::move(piece);
    }

    static MixedGraded pure(PureObject piece)
    {
        MixedGraded g;
        const int w = piece.weight();
        g.set(w, std::move(piece));
        return g;
    }

    /// Gr^W_w; the zero object of weight w when absent.
    PureObject gr(int weight) const
    {
        auto it = pieces_.find(weight);
        return it == pieces_.end() ? PureObject(weight) : it->second;
    }

    const std::map<int, PureObject>& pieces() const& noexcept { return pieces_; }
    std::map<int, PureObject> pieces() && { return std::move(pieces_); }

    std::set<int> weights() const
    {
        std::set<int> w;
        for (const auto& [k, v] : pieces_)
            w.insert(k);
        return w;
    }

    std::size_t dim() const
    {
        std::size_t n = 0;
        for (const auto& [w, v] : pieces_)
            n += v.dim();
        return n;
    }

    /// dim W_w.
    std::size_t filtration_dim(int weight) const
    {
        std::size_t n = 0;
        for (const auto& [w, v] : pieces_)
            if (w <= weight)
                n += v.dim();
        return n;
    }

    bool is_zero() const noexcept { return pieces_.empty(); }
    bool is_pure_of_weight(int w) const { return pieces_.empty() || (pieces_.size() == 1 && pieces_.begin()->first == w); }

    /// Hodge numbers per weight; the (p,q) label already fixes the weight.
    HodgeNumbers hodge_numbers() const
    {
        HodgeNumbers h;
        for (const auto& [w, v] : pieces_)
            for (const auto& [t, n] : absix::hodge_numbers(v))
                h[t] += n;
        return h;
    }

    friend bool operator==(const MixedGraded& a, const MixedGraded& b) { return a.hodge_numbers() == b.hodge_numbers(); }

  private:
    std::map<int, PureObject> pieces_;
};

enum class TableKind
{
    plain,
    compactSupport,
    boundary,
    absoluteIC,
    onePointIC,
};

inline const char* to_string(TableKind k)
{
    switch (k)
    {
        case TableKind::plain: return "plain";
        case TableKind::compactSupport: return "compactSupport";
        case TableKind::boundary: return "boundary";
        case TableKind::absoluteIC: return "absoluteIC";
        case TableKind::onePointIC: return "onePointIC";
    }
    return "?";
}

/// Degree-indexed family of weight-graded objects.
struct CohomologyTable
{
    TableKind kind = TableKind::plain;
    std::map<int, MixedGraded> byDegree;

    void set(int degree, MixedGraded g)
    {
        if (g.is_zero())
            byDegree.erase(degree);
        else
            byDegree[degree] = std::move(g);
    }

    MixedGraded at(int degree) const
    {
        auto it = byDegree.find(degree);
        return it == byDegree.end() ? MixedGraded{} : it->second;
    }

    /// Degree-wise equality of Hodge numbers (weights are carried by (p,q)).
    bool same_numbers(const CohomologyTable& other) const
    {
        std::set<int> degrees;
        for (const auto& [n, g] : byDegree)
            degrees.insert(n);
        for (const auto& [n, g] : other.byDegree)
            degrees.insert(n);
        for (int n : degrees)
            if (at(n).hodge_numbers() != other.at(n).hodge_numbers())
                return false;
        return true;
    }

    std::vector<std::size_t> dims(int from, int to) const
    {
        std::vector<std::size_t> d;
        for (int n = from; n <= to; ++n)
            d.push_back(at(n).dim());
        return d;
    }
};

/// Weights carrying a nonzero graded piece in degree n.
inline std::set<int> weight_support(const CohomologyTable& t, int n)
{
    return t.at(n).weights();
}

}   // namespace absix

#endif
