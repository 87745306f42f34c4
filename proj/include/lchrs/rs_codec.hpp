#pragma once

#include "lchrs/lch_transform.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace lchrs {

//! Shape of an (n = 2^m, k = 2^m - 2^mu) code with t = 2^(mu-1).
struct CodeParams {
    unsigned m = 8;
    unsigned mu = 5;
    //! Even number of SI-FDMA syndromes minus one; 0 selects t.
    unsigned t0 = 0;
    //! When set, the transmitted word drops n - shortened_length data symbols
    //! that are pinned to zero.
    std::optional<std::size_t> shortened_length;

    std::size_t n() const noexcept { return std::size_t{1} << m; }
    std::size_t redundancy() const noexcept { return std::size_t{1} << mu; }
    std::size_t k() const noexcept { return n() - redundancy(); }
    std::size_t t() const noexcept { return redundancy() / 2; }
    std::size_t block_count() const noexcept { return std::size_t{1} << (m - mu); }
    unsigned effective_t0() const noexcept { return t0 == 0 ? static_cast<unsigned>(t()) : t0; }

    void validate() const
    {
        require(m >= 2 && m <= 16, ErrorCode::InvalidParameter, "m must be in [2, 16]");
        require(mu >= 2 && mu < m, ErrorCode::InvalidParameter, "mu must satisfy 2 <= mu < m");
        const unsigned t0v = effective_t0();
        if (t0v % 2 != 0)
            throw Error(ErrorCode::OddT0, "t0 must be even");
        require(t0v + 2 <= 2 * t(), ErrorCode::InvalidParameter, "t0 must be at most 2t-2");
        if (shortened_length) {
            require(*shortened_length > redundancy() && *shortened_length <= n(),
                    ErrorCode::InvalidParameter, "shortened length must exceed n-k and be <= n");
        }
    }

    std::size_t transmitted_length() const noexcept { return shortened_length.value_or(n()); }
    std::size_t data_length() const noexcept { return transmitted_length() - redundancy(); }
};

//! Immutable code context shared by encoder, solvers and decoders.
class Code {
public:
    explicit Code(CodeParams params)
        : Code(params, std::make_shared<const Field>(params.m))
    {
    }

    Code(CodeParams params, std::shared_ptr<const Field> field) : params_(params)
    {
        params_.validate();
        require(field != nullptr && field->m() == params_.m, ErrorCode::InvalidParameter,
                "field degree differs from m");
        if (params_.t0 == 0)
            params_.t0 = static_cast<unsigned>(params_.t());
        basis_ = std::make_shared<const LchBasis>(std::move(field));
    }

    const CodeParams& params() const noexcept { return params_; }
    const Field& field() const noexcept { return basis_->field(); }
    const LchBasis& basis() const noexcept { return *basis_; }

    std::size_t n() const noexcept { return params_.n(); }
    std::size_t k() const noexcept { return params_.k(); }
    std::size_t t() const noexcept { return params_.t(); }
    unsigned mu() const noexcept { return params_.mu; }
    unsigned t0() const noexcept { return params_.t0; }

    //! Shift of block b: omega_{b * 2^mu}.
    FieldElement block_shift(std::size_t b) const { return field().omega(b << params_.mu); }

private:
    CodeParams params_;
    std::shared_ptr<const LchBasis> basis_;
};

struct ErrorEntry {
    std::size_t index;
    FieldElement value;

    friend bool operator==(const ErrorEntry&, const ErrorEntry&) = default;
};

//! Sparse error vector, entries sorted by index.
struct ErrorPattern {
    std::vector<ErrorEntry> entries;

    std::size_t weight() const noexcept { return entries.size(); }

    void normalize()
    {
        std::sort(entries.begin(), entries.end(),
                  [](const ErrorEntry& a, const ErrorEntry& b) { return a.index < b.index; });
    }

    friend bool operator==(const ErrorPattern&, const ErrorPattern&) = default;
};

using Codeword = std::vector<FieldElement>;

namespace detail {

inline void check_word(const Code& code, std::span<const FieldElement> word)
{
    require(word.size() == code.n(), ErrorCode::LengthMismatch, "word length must be n");
    for (FieldElement s : word)
        require(code.field().contains(s), ErrorCode::MalformedInput, "symbol outside the field");
}

} // namespace detail

//! Systematic encoding: data fills blocks F_2.. in order, block F_1 gets
//! FFT(sum_b IFFT(F_b, mu, omega_{(b-1) 2^mu}), mu, omega_0).
inline Codeword encode_systematic(const Code& code, std::span<const FieldElement> data,
                                  OpCounter& ctr)
{
    require(data.size() == code.k(), ErrorCode::LengthMismatch, "data length must be k");
    const std::size_t T = code.params().redundancy();
    const unsigned mu = code.mu();
    const LchBasis& basis = code.basis();
    Codeword word(code.n(), 0);
    std::copy(data.begin(), data.end(), word.begin() + static_cast<std::ptrdiff_t>(T));
    detail::check_word(code, word);

    std::vector<FieldElement> acc(T, 0);
    for (std::size_t b = 1; b < code.params().block_count(); ++b) {
        const LchPoly part =
            basis.ifft(std::span(word).subspan(b * T, T), mu, code.block_shift(b), ctr);
        for (std::size_t i = 0; i < T; ++i)
            acc[i] = b == 1 ? part[i] : Field::add(acc[i], part[i], ctr);
    }
    const std::vector<FieldElement> parity = basis.fft(std::span<const FieldElement>(acc), mu, 0, ctr);
    std::copy(parity.begin(), parity.end(), word.begin());
    return word;
}

inline Codeword encode_systematic(const Code& code, std::span<const FieldElement> data)
{
    OpCounter scratch;
    return encode_systematic(code, data, scratch);
}

//! received = codeword + pattern. Indices below 2t are rejected unless
//! `allow_low_positions` is set.
inline Codeword corrupt(const Code& code, std::span<const FieldElement> codeword,
                        const ErrorPattern& pattern, bool allow_low_positions = false)
{
    detail::check_word(code, codeword);
    Codeword out(codeword.begin(), codeword.end());
    std::vector<bool> seen(code.n(), false);
    for (const ErrorEntry& e : pattern.entries) {
        require(e.index < code.n(), ErrorCode::IndexOutOfRange, "error index outside the word");
        if (!allow_low_positions && e.index < 2 * code.t())
            throw Error(ErrorCode::IndexViolation, "error index below 2t");
        require(e.value != 0 && code.field().contains(e.value), ErrorCode::MalformedInput,
                "error value must be a nonzero field element");
        require(!seen[e.index], ErrorCode::MalformedInput, "duplicate error index");
        seen[e.index] = true;
        out[e.index] = Field::add(out[e.index], e.value);
    }
    return out;
}

//! S_i = sum_j word_j * omega_j^i for i < count, i.e. the first `count` rows
//! of the Vandermonde parity-check matrix applied to the word.
inline std::vector<FieldElement> vandermonde_syndromes(const Code& code,
                                                       std::span<const FieldElement> word,
                                                       std::size_t count, OpCounter& ctr)
{
    require(word.size() == code.n(), ErrorCode::LengthMismatch, "word length must be n");
    if (count > code.n() - code.k())
        throw Error(ErrorCode::CountOutOfRange, "at most n-k power syndromes exist");
    const Field& field = code.field();
    std::vector<FieldElement> weighted(word.begin(), word.end());
    std::vector<FieldElement> out(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0)
            for (std::size_t j = 0; j < weighted.size(); ++j)
                weighted[j] = field.mul(weighted[j], field.omega(j), ctr);
        FieldElement acc = weighted[0];
        for (std::size_t j = 1; j < weighted.size(); ++j)
            acc = Field::add(acc, weighted[j], ctr);
        out[i] = acc;
    }
    return out;
}

//! H * word^T == 0 for the (n-k) x n Vandermonde parity-check matrix.
inline bool parity_check(const Code& code, std::span<const FieldElement> word)
{
    OpCounter scratch;
    const auto s = vandermonde_syndromes(code, word, code.n() - code.k(), scratch);
    return std::all_of(s.begin(), s.end(), [](FieldElement v) { return v == 0; });
}

//! Drops the pinned-zero data positions [2t, 2t + n - n') of a full word.
inline std::vector<FieldElement> shorten(const Code& code, std::span<const FieldElement> word)
{
    detail::check_word(code, word);
    const std::size_t removed = code.n() - code.params().transmitted_length();
    const std::size_t T = code.params().redundancy();
    for (std::size_t i = T; i < T + removed; ++i)
        require(word[i] == 0, ErrorCode::MalformedInput, "shortened positions must be zero");
    std::vector<FieldElement> out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(T));
    out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(T + removed), word.end());
    return out;
}

//! Inverse of shorten: reinserts the pinned zeros.
inline Codeword unshorten(const Code& code, std::span<const FieldElement> short_word)
{
    require(short_word.size() == code.params().transmitted_length(), ErrorCode::LengthMismatch,
            "shortened word length mismatch");
    const std::size_t removed = code.n() - short_word.size();
    const std::size_t T = code.params().redundancy();
    Codeword out(short_word.begin(), short_word.begin() + static_cast<std::ptrdiff_t>(T));
    out.insert(out.end(), removed, 0);
    out.insert(out.end(), short_word.begin() + static_cast<std::ptrdiff_t>(T), short_word.end());
    return out;
}

//! Encodes data_length() symbols of a possibly shortened code.
inline std::vector<FieldElement> encode_shortened(const Code& code,
                                                  std::span<const FieldElement> data)
{
    require(data.size() == code.params().data_length(), ErrorCode::LengthMismatch,
            "data length must be n' - (n - k)");
    std::vector<FieldElement> full(code.k() - data.size(), 0);
    full.insert(full.end(), data.begin(), data.end());
    return shorten(code, encode_systematic(code, full));
}

//! Deterministic generator for corruption and test instances: mt19937_64
//! with rejection sampling, so a seed maps to the same draws everywhere.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    //! Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 engine_;
};

//! `count` distinct positions drawn uniformly from [lo, n) with uniform
//! nonzero values (partial Fisher-Yates).
inline ErrorPattern random_error_pattern(const Code& code, std::size_t count, SeededRng& rng,
                                         std::size_t lo)
{
    require(lo <= code.n() && count <= code.n() - lo, ErrorCode::InvalidParameter,
            "not enough positions for the requested error count");
    std::vector<std::size_t> pool(code.n() - lo);
    for (std::size_t i = 0; i < pool.size(); ++i)
        pool[i] = lo + i;
    ErrorPattern pattern;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        const auto value = static_cast<FieldElement>(rng.in_range(1, code.n() - 1));
        pattern.entries.push_back({pool[i], value});
    }
    pattern.normalize();
    return pattern;
}

inline ErrorPattern random_error_pattern(const Code& code, std::size_t count, SeededRng& rng)
{
    return random_error_pattern(code, count, rng, 2 * code.t());
}

inline std::vector<FieldElement> random_symbols(const Code& code, std::size_t count,
                                                SeededRng& rng)
{
    std::vector<FieldElement> out(count);
    for (FieldElement& s : out)
        s = static_cast<FieldElement>(rng.below(code.n()));
    return out;
}

} // namespace lchrs
