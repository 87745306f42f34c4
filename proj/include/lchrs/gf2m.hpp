#pragma once

#include "lchrs/error.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lchrs {

//! An element of GF(2^m), m <= 16, as its coordinate bits over the field basis.
using FieldElement = std::uint16_t;

//! Tally of field operations performed by one invocation.
//!
//! Only variable-by-variable products are charged to `mul`. Products with a
//! structural 0 or 1 (fixed entries of an update matrix, the leading 1 of a
//! monic polynomial) are never issued, so they never show up here.
struct OpCounter {
    std::uint64_t mul = 0;
    std::uint64_t add = 0;
    std::uint64_t inv = 0;

    OpCounter& operator+=(const OpCounter& other) noexcept
    {
        mul += other.mul;
        add += other.add;
        inv += other.inv;
        return *this;
    }

    friend OpCounter operator+(OpCounter a, const OpCounter& b) noexcept { return a += b; }
    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

namespace detail {

constexpr unsigned poly_degree(std::uint32_t p) noexcept
{
    return p == 0 ? 0 : 31u - static_cast<unsigned>(std::countl_zero(p));
}

// Remainder of a(x) modulo b(x) over GF(2).
constexpr std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) noexcept
{
    const unsigned db = poly_degree(b);
    while (a != 0 && poly_degree(a) >= db)
        a ^= b << (poly_degree(a) - db);
    return a;
}

} // namespace detail

//! True when `poly` (bit i = coefficient of x^i) is irreducible over GF(2).
//! Trial division by every polynomial of degree 1..deg/2.
constexpr bool is_irreducible(std::uint32_t poly) noexcept
{
    const unsigned deg = detail::poly_degree(poly);
    if (deg == 0 || (poly & 1u) == 0)
        return deg == 1;
    for (std::uint32_t d = 2; detail::poly_degree(d) <= deg / 2; ++d)
        if (detail::poly_mod(poly, d) == 0)
            return false;
    return true;
}

//! Reduction polynomial used when none is given: x^8+x^4+x^3+x^2+1 for m=8,
//! x^7+x+1 for m=7, a primitive trinomial/pentanomial otherwise.
constexpr std::uint32_t default_reduction_poly(unsigned m)
{
    constexpr std::uint32_t table[17] = {0,      0,      0x7,    0xB,    0x13,   0x25,
                                         0x43,   0x83,   0x11D,  0x211,  0x409,  0x805,
                                         0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};
    if (m < 2 || m > 16)
        throw Error(ErrorCode::InvalidParameter, "extension degree must be in [2, 16]");
    return table[m];
}

//! Arithmetic context for GF(2^m): log/antilog tables, the enumeration
//! basis v_0..v_{m-1}, the index map i -> omega_i and the subspace norms.
//!
//! Immutable after construction; safe to share between threads.
class Field {
public:
    explicit Field(unsigned m) : Field(m, default_reduction_poly(m)) {}

    Field(unsigned m, std::uint32_t reduction_poly,
          std::optional<std::vector<FieldElement>> basis = std::nullopt)
        : m_(m), poly_(reduction_poly)
    {
        require(m >= 2 && m <= 16, ErrorCode::InvalidParameter,
                "extension degree must be in [2, 16]");
        require(detail::poly_degree(reduction_poly) == m, ErrorCode::InvalidParameter,
                "reduction polynomial degree differs from m");
        require(is_irreducible(reduction_poly), ErrorCode::InvalidParameter,
                "reduction polynomial is reducible");
        build_tables();
        if (basis) {
            require(basis->size() == m, ErrorCode::InvalidParameter, "basis must have m elements");
            require(linearly_independent(*basis), ErrorCode::InvalidParameter,
                    "basis elements are linearly dependent");
            basis_ = *basis;
        } else {
            basis_.resize(m);
            for (unsigned j = 0; j < m; ++j)
                basis_[j] = static_cast<FieldElement>(1u << j);
        }
        build_enumeration();
        build_subspace_norms();
    }

    unsigned m() const noexcept { return m_; }
    std::size_t size() const noexcept { return std::size_t{1} << m_; }
    std::uint32_t reduction_poly() const noexcept { return poly_; }
    std::span<const FieldElement> basis() const noexcept { return basis_; }

    bool contains(std::uint32_t value) const noexcept { return value < size(); }

    static constexpr FieldElement add(FieldElement a, FieldElement b) noexcept
    {
        return static_cast<FieldElement>(a ^ b);
    }

    static FieldElement add(FieldElement a, FieldElement b, OpCounter& ctr) noexcept
    {
        ++ctr.add;
        return add(a, b);
    }

    FieldElement mul(FieldElement a, FieldElement b) const noexcept
    {
        if (a == 0 || b == 0)
            return 0;
        return exp_[log_[a] + log_[b]];
    }

    FieldElement mul(FieldElement a, FieldElement b, OpCounter& ctr) const noexcept
    {
        ++ctr.mul;
        return mul(a, b);
    }

    FieldElement inv(FieldElement a) const
    {
        if (a == 0)
            throw Error(ErrorCode::ZeroInversion, "inverse of zero");
        return exp_[order() - log_[a]];
    }

    FieldElement inv(FieldElement a, OpCounter& ctr) const
    {
        ++ctr.inv;
        return inv(a);
    }

    FieldElement pow(FieldElement a, std::uint64_t e) const noexcept
    {
        if (e == 0)
            return 1;
        if (a == 0)
            return 0;
        return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order())) % order()];
    }

    //! omega_i = sum of v_j over the set bits j of i.
    FieldElement omega(std::size_t i) const
    {
        if (i >= size())
            throw Error(ErrorCode::IndexOutOfRange, "omega index outside the field");
        return omega_[i];
    }

    std::size_t omega_index(FieldElement x) const
    {
        if (!contains(x))
            throw Error(ErrorCode::IndexOutOfRange, "element outside the field");
        return omega_index_[x];
    }

    //! s_j(v_j), nonzero for every j < m.
    FieldElement subspace_norm(unsigned j) const { return subspace_norms_.at(j); }

    //! s_j(x) = prod_{i < 2^j} (x - omega_i), through the linearized recurrence
    //! s_{j+1}(x) = s_j(x) * (s_j(x) + s_j(v_j)). Costs j products.
    FieldElement subspace_eval(unsigned j, FieldElement x, OpCounter& ctr) const
    {
        require(j <= m_, ErrorCode::IndexOutOfRange, "subspace level exceeds m");
        FieldElement y = x;
        for (unsigned i = 0; i < j; ++i)
            y = mul(y, add(y, subspace_norms_[i], ctr), ctr);
        return y;
    }

    //! Carry-less product reduced modulo the field polynomial. Table-free; used
    //! to build the tables and as an independent reference.
    FieldElement clmul(FieldElement a, FieldElement b) const noexcept
    {
        std::uint32_t acc = 0;
        std::uint32_t x = a;
        for (std::uint32_t y = b; y != 0; y >>= 1) {
            if (y & 1u)
                acc ^= x;
            x <<= 1;
            if (x & (1u << m_))
                x ^= poly_;
        }
        return static_cast<FieldElement>(acc);
    }

private:
    std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(size() - 1); }

    void build_tables()
    {
        const std::uint32_t q1 = order();
        // x is primitive for the default polynomials; any irreducible
        // polynomial is accepted, so search for a generator.
        for (std::uint32_t g = 2; g < size(); ++g) {
            std::uint32_t x = 1;
            std::uint32_t period = 0;
            do {
                x = clmul(static_cast<FieldElement>(x), static_cast<FieldElement>(g));
                ++period;
            } while (x != 1);
            if (period == q1) {
                generator_ = static_cast<FieldElement>(g);
                break;
            }
        }
        exp_.assign(2 * static_cast<std::size_t>(q1), 0);
        log_.assign(size(), 0);
        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < q1; ++i) {
            exp_[i] = exp_[i + q1] = static_cast<FieldElement>(x);
            log_[x] = i;
            x = clmul(static_cast<FieldElement>(x), generator_);
        }
    }

    bool linearly_independent(const std::vector<FieldElement>& vs) const
    {
        std::vector<FieldElement> rows;
        for (FieldElement v : vs) {
            if (!contains(v))
                return false;
            for (FieldElement r : rows)
                v = std::min<FieldElement>(v, static_cast<FieldElement>(v ^ r));
            if (v == 0)
                return false;
            rows.push_back(v);
            std::sort(rows.begin(), rows.end(), std::greater<>());
        }
        return true;
    }

    void build_enumeration()
    {
        omega_.assign(size(), 0);
        omega_index_.assign(size(), 0);
        for (std::size_t i = 1; i < size(); ++i) {
            const unsigned low = static_cast<unsigned>(std::countr_zero(i));
            omega_[i] = static_cast<FieldElement>(omega_[i & (i - 1)] ^ basis_[low]);
        }
        for (std::size_t i = 0; i < size(); ++i)
            omega_index_[omega_[i]] = static_cast<std::uint32_t>(i);
    }

    void build_subspace_norms()
    {
        // values[l] holds s_j(v_l) while j advances.
        std::vector<FieldElement> values(basis_.begin(), basis_.end());
        subspace_norms_.resize(m_);
        for (unsigned j = 0; j < m_; ++j) {
            subspace_norms_[j] = values[j];
            for (unsigned l = 0; l < m_; ++l)
                values[l] = mul(values[l], add(values[l], subspace_norms_[j]));
        }
    }

    unsigned m_;
    std::uint32_t poly_;
    FieldElement generator_ = 2;
    std::vector<FieldElement> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<FieldElement> basis_;
    std::vector<FieldElement> omega_;
    std::vector<std::uint32_t> omega_index_;
    std::vector<FieldElement> subspace_norms_;
};

} // namespace lchrs
