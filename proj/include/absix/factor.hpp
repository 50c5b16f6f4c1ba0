/**
 * Factorization calculus in the semisimple category of pure Hodge
 * structures of a fixed weight.
 *
 * For v : S -> T the object CH(v) = ker(v) + im(v) + coker(v) carries a
 * canonical-up-to-choice factorization S -> CH(v) -> T into a mono followed
 * by an epi, and every other mono/epi factorization S -> H -> T contains it
 * as a direct summand compatibly with both maps. All choices of splittings
 * are made by pivot order, so results are reproducible.
 */

#ifndef ABSIX_FACTOR_HPP
#define ABSIX_FACTOR_HPP

#include <map>

#include "hodge.hpp"
#include "qmat.hpp"

namespace absix {

/// CH(v) with its factorization. The slots of `total` are the kernel slots,
/// then the image slots, then the cokernel slots.
struct ChDecomposition
{
    PureObject kernelPart;
    PureObject imagePart;
    PureObject cokernelPart;
    PureObject total;
    PureMorphism iCH;    ///< source(v) -> total, injective
    PureMorphism piCH;   ///< total -> target(v), surjective

    /// Inclusion of the kernel summand into `total`.
    PureMorphism kernel_inclusion() const { return summand_map(0, true); }

    /// Projection of `total` onto the cokernel summand.
    PureMorphism cokernel_projection() const { return summand_map(2, false); }

  private:
    PureMorphism summand_map(int which, bool inclusion) const
    {
        const PureObject& part = which == 0 ? kernelPart : cokernelPart;
        std::map<HodgeType, Matrix> blocks;
        for (const auto& t : total.types())
        {
            const std::size_t k = kernelPart.count(t), r = imagePart.count(t),
                              c = cokernelPart.count(t);
            const std::size_t offset = which == 0 ? 0 : k + r;
            const std::size_t n = which == 0 ? k : c;
            Matrix m(n, k + r + c);
            for (std::size_t i = 0; i < n; ++i)
                m(i, offset + i) = 1;
            blocks.emplace(t, inclusion ? m.transpose() : m);
        }
        return inclusion ? PureMorphism(part, total, std::move(blocks))
                         : PureMorphism(total, part, std::move(blocks));
    }
};

/// Only the object CH(v): per type, dim source + dim target - rank.
inline PureObject ch_object(const PureMorphism& v)
{
    HodgeNumbers h;
    for (const auto& [t, b] : v.blocks())
    {
        const std::size_t n = b.rows() + b.cols() - rank(b);
        if (n)
            h[t] = n;
    }
    return PureObject::from_numbers(v.weight(), h);
}

/// i = (s, q, 0) and pi = 0 + inclusion + t, built blockwise, with s a left
/// inverse of ker(v) -> S and t a right inverse of T -> coker(v).
inline ChDecomposition ch_factorization(const PureMorphism& v)
{
    const int w = v.weight();
    HodgeNumbers hk, hi, hc;
    struct Parts
    {
        Matrix s, q, image, t;
    };
    std::map<HodgeType, Parts> parts;
    for (const auto& [ty, b] : v.blocks())
    {
        const Matrix ker = kernel_basis(b);
        const Matrix img = image_basis(b);
        const Matrix cok = absix::cokernel_projection(b);
        Parts p{left_inverse(ker), *solve(img, b), img, right_inverse(cok)};
        if (ker.cols())
            hk[ty] = ker.cols();
        if (img.cols())
            hi[ty] = img.cols();
        if (cok.rows())
            hc[ty] = cok.rows();
        parts.emplace(ty, std::move(p));
    }

    ChDecomposition dec;
    dec.kernelPart = PureObject::from_numbers(w, hk);
    dec.imagePart = PureObject::from_numbers(w, hi);
    dec.cokernelPart = PureObject::from_numbers(w, hc);
    dec.total = direct_sum(direct_sum(dec.kernelPart, dec.imagePart), dec.cokernelPart);
    if (dec.total.is_zero())
        dec.total = PureObject(w);

    std::map<HodgeType, Matrix> iblocks, pblocks;
    for (const auto& [ty, p] : parts)
    {
        const std::size_t s = v.source().count(ty), t = v.target().count(ty);
        const std::size_t k = p.s.rows(), r = p.image.cols(), c = p.t.cols();
        Matrix i(k + r + c, s);
        i.set_block(0, 0, p.s);
        i.set_block(k, 0, p.q);
        Matrix pi(t, k + r + c);
        pi.set_block(0, k, p.image);
        pi.set_block(0, k + r, p.t);
        iblocks.emplace(ty, std::move(i));
        pblocks.emplace(ty, std::move(pi));
    }
    dec.iCH = PureMorphism(v.source(), dec.total, std::move(iblocks));
    dec.piCH = PureMorphism(dec.total, v.target(), std::move(pblocks));
    return dec;
}

/// Result of embedding CH(v) into another factorization S -j-> H -p-> T.
struct VersalEmbedding
{
    PureMorphism iota;    ///< CH(v) -> H, with iota o iCH = j and p o iota = piCH
    PureMorphism q;       ///< H -> CH(v), with q o j = iCH and piCH o q = p
    PureObject hPrime;    ///< complement: H = CH(v) + hPrime
};

/// Embeds the chosen CH(v) factorization `dec` into the mono/epi
/// factorization (j, p) of v, following the complement construction: pick
/// H' complementary to j(ker v) inside ker p, H'' complementary to
/// im(j) + H' inside H, and identify the T-part of H with ker of the
/// resulting retraction onto ker p.
inline VersalEmbedding versal_embed(const PureMorphism& v, const PureObject& h,
                                    const PureMorphism& j, const PureMorphism& p,
                                    const ChDecomposition& dec)
{
    if (!(j.source() == v.source()) || !(j.target() == h) || !(p.source() == h) ||
        !(p.target() == v.target()))
        throw PreconditionViolated("versal_embed: objects of j, p and v do not line up");
    if (!(dec.iCH.source() == v.source()) || !(dec.piCH.target() == v.target()))
        throw PreconditionViolated("versal_embed: decomposition belongs to another morphism");
    if (!j.injective())
        throw PreconditionViolated("versal_embed: j is not injective");
    if (!p.surjective())
        throw PreconditionViolated("versal_embed: p is not surjective");
    if (!(p.after(j) == v))
        throw PreconditionViolated("versal_embed: p o j differs from v");

    const int w = v.weight();
    std::map<HodgeType, Matrix> iota_blocks, q_blocks;
    HodgeNumbers hprime;
    auto types = h.types();
    types.merge(dec.total.types());
    types.merge(v.all_types());
    for (const auto& ty : types)
    {
        const std::size_t k = dec.kernelPart.count(ty);
        const std::size_t hd = h.count(ty);
        const Matrix vt = v.block(ty);
        const Matrix jt = j.block(ty);
        const Matrix pt = p.block(ty);
        const Matrix icht = dec.iCH.block(ty);
        const Matrix picht = dec.piCH.block(ty);
        const std::size_t rc = dec.total.count(ty) - k;

        // Retraction S -> ker(v) from the chosen factorization, and the
        // matching basis of ker(v) (the one on which it is the identity).
        const Matrix s_ch = icht.block(0, 0, k, icht.cols());
        const Matrix kb = kernel_basis(vt);
        const auto normalize = inverse(s_ch * kb);
        if (kb.cols() != k || !normalize)
            throw PreconditionViolated("versal_embed: decomposition kernel part does not match ker(v)");
        const Matrix kv = kb * *normalize;
        const Matrix jk = jt * kv;

        const Matrix kp = kernel_basis(pt);
        const auto coords = solve(kp, jk);
        if (!coords)
            throw PreconditionViolated("versal_embed: j(ker v) is not inside ker p");
        const Matrix hp = kp * complement_basis(*coords, kp.cols());
        const Matrix jh = Matrix::hstack(jt, hp);
        const Matrix basis = Matrix::hstack(jh, complement_basis(jh, hd));
        const auto basis_inv = inverse(basis);
        if (!basis_inv)
            throw PreconditionViolated("versal_embed: im(j) meets the complement of j(ker v) in ker p");

        // Retraction H -> ker(p): j(x) -> j(k(s(x))), identity on H', zero on H''.
        Matrix image_of_basis(hd, hd);
        image_of_basis.set_block(0, 0, jk * s_ch);
        image_of_basis.set_block(0, jt.cols(), hp);
        const Matrix s_h = image_of_basis * *basis_inv;

        const Matrix n = kernel_basis(s_h);
        const auto pn_inv = inverse(pt * n);
        const Matrix pich_rest = picht.block(0, k, picht.rows(), rc);
        const auto pich_rest_inv = inverse(pich_rest);
        if (!pn_inv || !pich_rest_inv)
            throw PreconditionViolated("versal_embed: T-parts are not isomorphic");
        const Matrix lift = n * *pn_inv;

        Matrix iota(hd, k + rc);
        iota.set_block(0, 0, jk);
        iota.set_block(0, k, lift * pich_rest);

        const Matrix kerp_basis = Matrix::hstack(jk, hp);
        const Matrix kerp_coords = *solve(kerp_basis, s_h);
        Matrix q(k + rc, hd);
        q.set_block(0, 0, kerp_coords.block(0, 0, k, hd));
        q.set_block(k, 0, *pich_rest_inv * pt);

        if (hp.cols())
            hprime[ty] = hp.cols();
        iota_blocks.emplace(ty, std::move(iota));
        q_blocks.emplace(ty, std::move(q));
    }
    return {PureMorphism(dec.total, h, std::move(iota_blocks)),
            PureMorphism(h, dec.total, std::move(q_blocks)), PureObject::from_numbers(w, hprime)};
}

/// Kernel of the idempotent e = [[a, b], [0, d]] as the image of
/// [[id_ker(a), -b], [0, id_ker(d)]] applied to ker(a) + ker(d).
inline Matrix idempotent_kernel(const Matrix& a, const Matrix& b, const Matrix& d)
{
    if (a.rows() != a.cols() || d.rows() != d.cols() || b.rows() != a.rows() ||
        b.cols() != d.rows())
        throw DimensionError("idempotent_kernel: blocks " + a.shape() + ", " + b.shape() + ", " +
                             d.shape() + " do not form a square block matrix");
    if (!(a * a == a))
        throw NotIdempotent("A^2 != A");
    if (!(d * d == d))
        throw NotIdempotent("D^2 != D");
    if (!(a * b + b * d == b))
        throw NotIdempotent("AB + BD != B");

    const Matrix ka = kernel_basis(a);
    const Matrix kd = kernel_basis(d);
    Matrix k(a.rows() + d.rows(), ka.cols() + kd.cols());
    k.set_block(0, 0, ka);
    k.set_block(0, ka.cols(), -(b * kd));
    k.set_block(a.rows(), ka.cols(), kd);
    return k;
}

}   // namespace absix

#endif
