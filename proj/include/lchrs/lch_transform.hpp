#pragma once

#include "lchrs/gf2m.hpp"

#include <bit>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace lchrs {

//! Coefficient vector of a polynomial under a fixed polynomial basis. The tag
//! keeps LCH-basis and monomial-basis vectors from being mixed up.
template <class BasisTag>
struct BasisPoly {
    std::vector<FieldElement> coeffs;

    BasisPoly() : coeffs(1, 0) {}
    explicit BasisPoly(std::vector<FieldElement> c) : coeffs(std::move(c))
    {
        if (coeffs.empty())
            coeffs.push_back(0);
    }
    BasisPoly(std::initializer_list<FieldElement> c) : BasisPoly(std::vector<FieldElement>(c)) {}

    std::size_t size() const noexcept { return coeffs.size(); }
    FieldElement operator[](std::size_t i) const { return coeffs[i]; }
    FieldElement& operator[](std::size_t i) { return coeffs[i]; }

    bool is_zero() const noexcept
    {
        for (FieldElement c : coeffs)
            if (c != 0)
                return false;
        return true;
    }

    //! Index of the highest nonzero coefficient, or -1 for the zero polynomial.
    //! For both bases the i-th basis polynomial has degree exactly i.
    long degree() const noexcept
    {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != 0)
                return static_cast<long>(i);
        return -1;
    }

    BasisPoly trimmed() const
    {
        return BasisPoly(std::vector<FieldElement>(
            coeffs.begin(), coeffs.begin() + std::max<long>(degree() + 1, 1)));
    }

    BasisPoly padded(std::size_t length) const
    {
        BasisPoly out = *this;
        if (out.coeffs.size() < length)
            out.coeffs.resize(length, 0);
        return out;
    }

    friend bool operator==(const BasisPoly&, const BasisPoly&) = default;
};

struct LchBasisTag {};
struct MonomialBasisTag {};

//! Coefficients under the LCH basis Xbar_0, Xbar_1, ...
using LchPoly = BasisPoly<LchBasisTag>;
//! Coefficients under 1, x, x^2, ...
using MonoPoly = BasisPoly<MonomialBasisTag>;

//! The LCH polynomial basis over a field, with its additive FFT pair and the
//! monomial <-> LCH change of basis.
//!
//! Xbar_i(x) = prod_j (s_j(x) / s_j(v_j))^{i_j}. The normalized subspace
//! polynomials are GF(2)-linear, so their values on the whole field are
//! tabulated once; transform twiddles are table lookups and cost no products.
class LchBasis {
public:
    explicit LchBasis(std::shared_ptr<const Field> field) : field_(std::move(field))
    {
        require(field_ != nullptr, ErrorCode::InvalidParameter, "null field");
        const unsigned m = field_->m();
        const std::size_t q = field_->size();
        nsub_.assign(static_cast<std::size_t>(m) * q, 0);
        for (unsigned j = 0; j < m; ++j) {
            const FieldElement inv_norm = field_->inv(field_->subspace_norm(j));
            FieldElement* row = &nsub_[j * q];
            std::vector<FieldElement> on_basis(m);
            for (unsigned l = 0; l < m; ++l) {
                OpCounter scratch;
                on_basis[l] =
                    field_->mul(field_->subspace_eval(j, field_->basis()[l], scratch), inv_norm);
            }
            row[0] = 0;
            for (std::size_t i = 1; i < q; ++i)
                row[i] = static_cast<FieldElement>(
                    row[i & (i - 1)] ^ on_basis[static_cast<unsigned>(std::countr_zero(i))]);
        }
        p_.assign(q, 1);
        for (std::size_t i = 1; i < q; ++i) {
            const unsigned low = static_cast<unsigned>(std::countr_zero(i));
            p_[i] = field_->mul(p_[i & (i - 1)], field_->subspace_norm(low));
        }
    }

    const Field& field() const noexcept { return *field_; }
    std::shared_ptr<const Field> field_ptr() const noexcept { return field_; }

    //! p_i = prod_j s_j(v_j)^{i_j}.
    FieldElement normalizer(std::size_t i) const
    {
        require(i < p_.size(), ErrorCode::IndexOutOfRange, "basis index outside the field");
        return p_[i];
    }

    //! s_j(x) / s_j(v_j) for j < m.
    FieldElement normalized_subspace(unsigned j, FieldElement x) const
    {
        require(j < field_->m(), ErrorCode::IndexOutOfRange, "subspace level must be < m");
        return nsub_[j * field_->size() + field_->omega_index(x)];
    }

    FieldElement xbar_eval(std::size_t i, FieldElement x, OpCounter& ctr) const
    {
        require(i < field_->size(), ErrorCode::IndexOutOfRange, "basis index outside the field");
        FieldElement acc = 1;
        bool first = true;
        for (unsigned j = 0; i >> j; ++j) {
            if (((i >> j) & 1u) == 0)
                continue;
            const FieldElement factor = normalized_subspace(j, x);
            acc = first ? factor : field_->mul(acc, factor, ctr);
            first = false;
        }
        return acc;
    }

    //! f(x) for an LCH coefficient vector of any length, folding one basis
    //! bit at a time: size()-1 products.
    FieldElement evaluate(const LchPoly& f, FieldElement x, OpCounter& ctr) const
    {
        std::vector<FieldElement> a = f.coeffs;
        std::size_t len = a.size();
        require(len <= field_->size(), ErrorCode::LengthMismatch, "polynomial longer than the field");
        for (unsigned j = static_cast<unsigned>(std::bit_width(len - 1)); j-- > 0;) {
            const std::size_t half = std::size_t{1} << j;
            const FieldElement tw = normalized_subspace(j, x);
            for (std::size_t i = 0; i + half < len; ++i)
                a[i] = Field::add(a[i], field_->mul(tw, a[i + half], ctr), ctr);
            len = std::min(len, half);
        }
        return a[0];
    }

    //! Values (f(omega_0 + beta), ..., f(omega_{2^k-1} + beta)) of an LCH
    //! polynomial with 2^k coefficients. (k/2) * 2^k products.
    std::vector<FieldElement> fft(std::span<const FieldElement> f, unsigned k, FieldElement beta,
                                  OpCounter& ctr) const
    {
        check_transform_args(f.size(), k, beta);
        std::vector<FieldElement> a(f.begin(), f.end());
        for (unsigned j = k; j-- > 0;) {
            const std::size_t half = std::size_t{1} << j;
            const FieldElement beta_tw = normalized_subspace(j, beta);
            for (std::size_t start = 0; start < a.size(); start += 2 * half) {
                // The block covering omega_start + beta + span(v_0..v_j).
                const FieldElement tw = static_cast<FieldElement>(beta_tw ^ nsub_at(j, start));
                for (std::size_t i = start; i < start + half; ++i) {
                    const FieldElement hi = a[i + half];
                    a[i] = Field::add(a[i], field_->mul(hi, tw, ctr), ctr);
                    a[i + half] = Field::add(a[i], hi, ctr);
                }
            }
        }
        return a;
    }

    std::vector<FieldElement> fft(const LchPoly& f, unsigned k, FieldElement beta,
                                  OpCounter& ctr) const
    {
        return fft(std::span<const FieldElement>(f.coeffs), k, beta, ctr);
    }

    //! Interpolates 2^k values d_i = f(omega_i + beta).
    LchPoly ifft(std::span<const FieldElement> d, unsigned k, FieldElement beta,
                 OpCounter& ctr) const
    {
        check_transform_args(d.size(), k, beta);
        std::vector<FieldElement> a(d.begin(), d.end());
        for (unsigned j = 0; j < k; ++j) {
            const std::size_t half = std::size_t{1} << j;
            const FieldElement beta_tw = normalized_subspace(j, beta);
            for (std::size_t start = 0; start < a.size(); start += 2 * half) {
                const FieldElement tw = static_cast<FieldElement>(beta_tw ^ nsub_at(j, start));
                for (std::size_t i = start; i < start + half; ++i) {
                    const FieldElement hi = Field::add(a[i], a[i + half], ctr);
                    a[i] = Field::add(a[i], field_->mul(tw, hi, ctr), ctr);
                    a[i + half] = hi;
                }
            }
        }
        return LchPoly(std::move(a));
    }

    //! Interpolates 2^k + 1 values at omega_0 + beta, ..., omega_{2^k} + beta
    //! into 2^k + 1 LCH coefficients.
    LchPoly extended_ifft(std::span<const FieldElement> d, unsigned k, FieldElement beta,
                          OpCounter& ctr) const
    {
        require(k < field_->m(), ErrorCode::LengthMismatch, "extended transform needs k < m");
        const std::size_t h = std::size_t{1} << k;
        require(d.size() == h + 1, ErrorCode::LengthMismatch, "extended transform needs 2^k+1 values");
        LchPoly f = ifft(d.first(h), k, beta, ctr);
        const FieldElement extra_point = Field::add(field_->omega(h), beta);
        const FieldElement delta = Field::add(d[h], evaluate(f, extra_point, ctr), ctr);
        // delta * (Xbar_{2^k}(x) - Xbar_{2^k}(beta)) vanishes on the first 2^k points.
        f.coeffs.push_back(delta);
        f[0] = Field::add(f[0], field_->mul(normalized_subspace(k, beta), delta, ctr), ctr);
        return f;
    }

    //! Monomial coefficients of Xbar_i.
    MonoPoly xbar_monomial(std::size_t i) const
    {
        ensure_conversion(i + 1);
        std::lock_guard lock(mutex_);
        return MonoPoly(mono_of_xbar_[i]);
    }

    //! Rewrites monomial coefficients in the LCH basis: out = p * T with T
    //! lower triangular (row i expands x^i). Entries of T equal to 0 or 1
    //! cost no product, so a length-(e+1) vector costs at most (e^2+3e)/2.
    LchPoly mono_to_lch(const MonoPoly& p, OpCounter& ctr) const
    {
        ensure_conversion(p.size());
        std::lock_guard lock(mutex_);
        return LchPoly(apply_lower(p.coeffs, xbar_of_mono_, ctr));
    }

    LchPoly mono_to_lch(const MonoPoly& p) const
    {
        OpCounter scratch;
        return mono_to_lch(p, scratch);
    }

    MonoPoly lch_to_mono(const LchPoly& f, OpCounter& ctr) const
    {
        ensure_conversion(f.size());
        std::lock_guard lock(mutex_);
        return MonoPoly(apply_lower(f.coeffs, mono_of_xbar_, ctr));
    }

    MonoPoly lch_to_mono(const LchPoly& f) const
    {
        OpCounter scratch;
        return lch_to_mono(f, scratch);
    }

private:
    FieldElement nsub_at(unsigned j, std::size_t index) const noexcept
    {
        return nsub_[j * field_->size() + index];
    }

    void check_transform_args(std::size_t len, unsigned k, FieldElement beta) const
    {
        require(k <= field_->m(), ErrorCode::LengthMismatch, "transform size exceeds the field");
        require(len == (std::size_t{1} << k), ErrorCode::LengthMismatch,
                "transform input length must be 2^k");
        require(field_->contains(beta), ErrorCode::IndexOutOfRange, "shift outside the field");
    }

    // out[j] = sum_{i >= j} v[i] * rows[i][j]
    std::vector<FieldElement> apply_lower(const std::vector<FieldElement>& v,
                                          const std::vector<std::vector<FieldElement>>& rows,
                                          OpCounter& ctr) const
    {
        std::vector<FieldElement> out(v.size(), 0);
        for (std::size_t j = 0; j < v.size(); ++j) {
            bool empty = true;
            for (std::size_t i = j; i < v.size(); ++i) {
                const FieldElement entry = rows[i][j];
                if (entry == 0)
                    continue;
                const FieldElement term = entry == 1 ? v[i] : field_->mul(v[i], entry, ctr);
                out[j] = empty ? term : Field::add(out[j], term, ctr);
                empty = false;
            }
        }
        return out;
    }

    MonoPoly poly_mul(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) const
    {
        std::vector<FieldElement> out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0)
                for (std::size_t j = 0; j < b.size(); ++j)
                    out[i + j] ^= field_->mul(a[i], b[j]);
        return MonoPoly(std::move(out));
    }

    // Grows the cached change-of-basis matrices to cover `size` coefficients.
    void ensure_conversion(std::size_t size) const
    {
        require(size <= field_->size(), ErrorCode::LengthMismatch, "polynomial longer than the field");
        std::lock_guard lock(mutex_);
        if (mono_of_xbar_.size() >= size)
            return;
        const Field& f = *field_;
        // Monomial forms of s_j(x)/s_j(v_j) for every level the new rows need.
        while ((std::size_t{1} << nsub_mono_.size()) < size) {
            const unsigned j = static_cast<unsigned>(nsub_mono_.size());
            std::vector<FieldElement> sj{0, 1};
            for (unsigned l = 0; l < j; ++l) {
                std::vector<FieldElement> shifted = sj;
                shifted[0] ^= f.subspace_norm(l);
                sj = poly_mul(sj, shifted).coeffs;
            }
            const FieldElement inv_norm = f.inv(f.subspace_norm(j));
            for (FieldElement& c : sj)
                c = f.mul(c, inv_norm);
            nsub_mono_.push_back(std::move(sj));
        }
        for (std::size_t i = mono_of_xbar_.size(); i < size; ++i) {
            std::vector<FieldElement> row{1};
            for (unsigned j = 0; i >> j; ++j)
                if ((i >> j) & 1u)
                    row = poly_mul(row, nsub_mono_[j]).coeffs;
            row.resize(i + 1, 0);
            mono_of_xbar_.push_back(row);

            // x^i = (Xbar_i - sum_{j<i} row[j] x^j) / row[i]
            const FieldElement lead_inv = f.inv(row[i]);
            std::vector<FieldElement> expansion(i + 1, 0);
            expansion[i] = 1;
            for (std::size_t j = 0; j < i; ++j) {
                if (row[j] == 0)
                    continue;
                for (std::size_t l = 0; l <= j; ++l)
                    expansion[l] ^= f.mul(row[j], xbar_of_mono_[j][l]);
            }
            for (FieldElement& c : expansion)
                c = f.mul(c, lead_inv);
            xbar_of_mono_.push_back(std::move(expansion));
        }
    }

    std::shared_ptr<const Field> field_;
    std::vector<FieldElement> nsub_;
    std::vector<FieldElement> p_;

    mutable std::mutex mutex_;
    mutable std::vector<std::vector<FieldElement>> nsub_mono_;
    mutable std::vector<std::vector<FieldElement>> mono_of_xbar_;
    mutable std::vector<std::vector<FieldElement>> xbar_of_mono_;
};

} // namespace lchrs
