#pragma once

#include "lchrs/key_solvers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace lchrs {

//! s(x) in LCH coefficients (length 2^mu) and s(omega_0..omega_{2^mu - 1}).
struct SyndromeBundle {
    LchPoly s_lch;
    std::vector<FieldElement> s_evals;

    bool is_zero() const { return s_lch.is_zero(); }
};

//! Interpolates every 2^mu block with its own shift, sums the results and
//! normalizes by p_{n - 2^mu}; the FFT of that sum gives the syndromes.
inline SyndromeBundle syndrome_bundle(const Code& code, std::span<const FieldElement> received,
                                      OpCounter& ctr)
{
    detail::check_word(code, received);
    const std::size_t T = code.params().redundancy();
    const unsigned mu = code.mu();
    const LchBasis& basis = code.basis();
    const Field& f = code.field();

    std::vector<FieldElement> acc(T, 0);
    for (std::size_t b = 0; b < code.params().block_count(); ++b) {
        const LchPoly part = basis.ifft(received.subspan(b * T, T), mu, code.block_shift(b), ctr);
        for (std::size_t i = 0; i < T; ++i)
            acc[i] = b == 0 ? part[i] : Field::add(acc[i], part[i], ctr);
    }
    const FieldElement scale = f.inv(basis.normalizer(code.k()), ctr);
    for (FieldElement& c : acc)
        c = f.mul(c, scale, ctr);

    SyndromeBundle out;
    out.s_lch = LchPoly(std::move(acc));
    out.s_evals = basis.fft(out.s_lch, mu, 0, ctr);
    return out;
}

inline SyndromeBundle syndrome_bundle(const Code& code, std::span<const FieldElement> received)
{
    OpCounter scratch;
    return syndrome_bundle(code, received, scratch);
}

//! S_i = sum_j r_j omega_j^i, i < count, straight from the parity-check matrix.
inline std::vector<FieldElement> power_syndromes(const Code& code,
                                                 std::span<const FieldElement> received,
                                                 std::size_t count, OpCounter& ctr)
{
    return vandermonde_syndromes(code, received, count, ctr);
}

namespace detail {

// Solves for X in X * A = P over the field (A square, invertible), by
// Gauss-Jordan on the transposed system.
inline std::vector<std::vector<FieldElement>>
right_divide(const Field& f, std::vector<std::vector<FieldElement>> A,
             std::vector<std::vector<FieldElement>> P)
{
    // Work with columns as rows: X A = P  <=>  A^T X^T = P^T.
    const std::size_t n = A.size();
    std::vector<std::vector<FieldElement>> M(n, std::vector<FieldElement>(n));
    std::vector<std::vector<FieldElement>> Y(n, std::vector<FieldElement>(P.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = A[j][i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < P.size(); ++r)
            Y[i][r] = P[r][i];
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col] == 0)
            ++piv;
        require(piv < n, ErrorCode::DegenerateInput, "singular syndrome basis");
        std::swap(M[piv], M[col]);
        std::swap(Y[piv], Y[col]);
        const FieldElement inv = f.inv(M[col][col]);
        for (auto& v : M[col])
            v = f.mul(v, inv);
        for (auto& v : Y[col])
            v = f.mul(v, inv);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col] == 0)
                continue;
            const FieldElement c = M[row][col];
            for (std::size_t j = 0; j < n; ++j)
                M[row][j] ^= f.mul(c, M[col][j]);
            for (std::size_t j = 0; j < Y[row].size(); ++j)
                Y[row][j] ^= f.mul(c, Y[col][j]);
        }
    }
    std::vector<std::vector<FieldElement>> X(P.size(), std::vector<FieldElement>(n));
    for (std::size_t r = 0; r < P.size(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            X[r][i] = Y[i][r];
    return X;
}

} // namespace detail

//! The fixed linear map taking s_lch to the power syndromes S_0..S_{2^mu-1}.
//!
//! Both vectors vanish exactly on codewords, so one is an invertible linear
//! image of the other. The map is triangular: S_i only involves s_lch[j]
//! with j >= 2^mu - 1 - i, so 2e syndromes cost at most e(2e+1) products
//! instead of the n(2e-1) that the direct sum takes.
class PowerSyndromeMap {
public:
    explicit PowerSyndromeMap(const Code& code)
    {
        const std::size_t T = code.params().redundancy();
        const LchBasis& basis = code.basis();
        const Field& f = code.field();
        // Words whose syndrome polynomials span the whole space: the
        // evaluations of Xbar_{k+j}, j < 2^mu.
        std::vector<std::vector<FieldElement>> U(T), P(T, std::vector<FieldElement>(T));
        OpCounter scratch;
        for (std::size_t j = 0; j < T; ++j) {
            std::vector<FieldElement> word(code.n());
            for (std::size_t x = 0; x < code.n(); ++x)
                word[x] = basis.xbar_eval(code.k() + j, f.omega(x), scratch);
            U[j] = syndrome_bundle(code, word).s_lch.coeffs;
            const auto S = vandermonde_syndromes(code, word, T, scratch);
            for (std::size_t i = 0; i < T; ++i)
                P[i][j] = S[i];
        }
        // rows_[i] . U_j = P[i][j] for every j, i.e. rows_ * U^T = P.
        std::vector<std::vector<FieldElement>> Ut(T, std::vector<FieldElement>(T));
        for (std::size_t a = 0; a < T; ++a)
            for (std::size_t b = 0; b < T; ++b)
                Ut[a][b] = U[b][a];
        rows_ = detail::right_divide(f, std::move(Ut), std::move(P));
    }

    std::size_t size() const noexcept { return rows_.size(); }
    FieldElement entry(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }

    //! First `count` power syndromes. Entries 0 and 1 of the map cost nothing.
    std::vector<FieldElement> apply(const Field& f, const LchPoly& s_lch, std::size_t count,
                                    OpCounter& ctr) const
    {
        if (count > rows_.size())
            throw Error(ErrorCode::CountOutOfRange, "at most n-k power syndromes exist");
        require(s_lch.size() == rows_.size(), ErrorCode::LengthMismatch,
                "syndrome polynomial length must be n-k");
        std::vector<FieldElement> out(count, 0);
        for (std::size_t i = 0; i < count; ++i) {
            bool empty = true;
            for (std::size_t j = 0; j < rows_[i].size(); ++j) {
                const FieldElement a = rows_[i][j];
                if (a == 0)
                    continue;
                const FieldElement term = a == 1 ? s_lch[j] : f.mul(a, s_lch[j], ctr);
                out[i] = empty ? term : Field::add(out[i], term, ctr);
                empty = false;
            }
        }
        return out;
    }

private:
    std::vector<std::vector<FieldElement>> rows_;
};

//! Shared per-(field, mu) instance; built on first use.
inline const PowerSyndromeMap& power_syndrome_map(const Code& code)
{
    using Key = std::tuple<unsigned, std::uint32_t, std::vector<FieldElement>, unsigned>;
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<PowerSyndromeMap>> cache;
    const Field& f = code.field();
    Key key{f.m(), f.reduction_poly(),
            std::vector<FieldElement>(f.basis().begin(), f.basis().end()), code.mu()};
    std::lock_guard lock(mutex);
    auto& slot = cache[key];
    if (!slot)
        slot = std::make_unique<PowerSyndromeMap>(code);
    return *slot;
}

inline std::vector<FieldElement> power_syndromes_from_lch(const Code& code, const LchPoly& s_lch,
                                                          std::size_t count, OpCounter& ctr)
{
    return power_syndrome_map(code).apply(code.field(), s_lch, count, ctr);
}

//! Indices i with poly(omega_i) = 0, from 2^(m - block_log) shifted FFTs of
//! size 2^block_log.
inline std::vector<std::size_t> chien_block_search(const Code& code, const LchPoly& poly,
                                                   unsigned block_log, OpCounter& ctr)
{
    const Field& f = code.field();
    require(block_log <= f.m(), ErrorCode::InvalidParameter, "block size exceeds the field");
    const std::size_t len = std::size_t{1} << block_log;
    require(poly.size() <= len, ErrorCode::LengthMismatch, "polynomial longer than the block");
    const LchPoly padded = poly.padded(len);
    std::vector<std::size_t> roots;
    for (std::size_t start = 0; start < f.size(); start += len) {
        const auto values = code.basis().fft(padded, block_log, f.omega(start), ctr);
        for (std::size_t i = 0; i < len; ++i)
            if (values[i] == 0)
                roots.push_back(start + i);
    }
    return roots;
}

//! Characteristic-2 derivative: only odd powers survive, dropping one degree.
inline MonoPoly formal_derivative(const MonoPoly& p)
{
    if (p.size() <= 1)
        return MonoPoly{0};
    std::vector<FieldElement> out(p.size() - 1, 0);
    for (std::size_t i = 1; i < p.size(); i += 2)
        out[i - 1] = p[i];
    return MonoPoly(std::move(out));
}

namespace detail {

inline FieldElement horner(const Field& f, const MonoPoly& p, FieldElement x, OpCounter& ctr)
{
    std::size_t top = p.size();
    FieldElement acc = p[top - 1];
    for (std::size_t i = top - 1; i-- > 0;)
        acc = Field::add(f.mul(acc, x, ctr), p[i], ctr);
    return acc;
}

} // namespace detail

//! Error values z(w) / (s_mu(w) lambda'(w)) at w = omega_root. Any common
//! scalar on z and lambda cancels.
inline std::vector<ErrorEntry> forney_values(const Code& code, const LchPoly& z_lch,
                                             const MonoPoly& lambda_mono,
                                             std::span<const std::size_t> roots, OpCounter& ctr)
{
    require(!roots.empty(), ErrorCode::InvalidParameter, "no roots to evaluate");
    const Field& f = code.field();
    const LchBasis& basis = code.basis();
    const MonoPoly deriv = formal_derivative(lambda_mono).trimmed();
    const FieldElement norm_mu = f.subspace_norm(code.mu());
    std::vector<ErrorEntry> out;
    out.reserve(roots.size());
    for (std::size_t idx : roots) {
        const FieldElement x = f.omega(idx);
        const FieldElement zv = basis.evaluate(z_lch, x, ctr);
        const FieldElement dv = detail::horner(f, deriv, x, ctr);
        const FieldElement smu = f.mul(basis.normalized_subspace(code.mu(), x), norm_mu, ctr);
        const FieldElement denom = f.mul(smu, dv, ctr);
        if (denom == 0)
            throw Error(ErrorCode::ZeroDenominator, "Forney denominator vanishes");
        out.push_back({idx, f.mul(zv, f.inv(denom, ctr), ctr)});
    }
    return out;
}

enum class DecodeTag { First, Second, SecondFellBackToFirst };

constexpr std::string_view to_string(DecodeTag tag) noexcept
{
    switch (tag) {
    case DecodeTag::First: return "first";
    case DecodeTag::Second: return "second";
    case DecodeTag::SecondFellBackToFirst: return "second_fell_back_to_first";
    }
    return "unknown";
}

struct DecodeResult {
    Codeword codeword;
    ErrorPattern error_pattern;
    DecodeTag tag = DecodeTag::First;
    //! Operations spent by this call alone.
    OpCounter counters;
    //! Iterations of the key-equation solver that produced the locator.
    std::size_t solver_steps = 0;
};

namespace detail {

inline DecodeResult repair(const Code& code, std::span<const FieldElement> received,
                           std::vector<ErrorEntry> errors, DecodeTag tag)
{
    DecodeResult res;
    res.tag = tag;
    res.codeword.assign(received.begin(), received.end());
    res.error_pattern.entries = std::move(errors);
    res.error_pattern.normalize();
    for (const ErrorEntry& e : res.error_pattern.entries) {
        if (e.value == 0)
            throw Error(ErrorCode::Undecodable, "Forney: zero error magnitude at a located position");
        res.codeword[e.index] = Field::add(res.codeword[e.index], e.value);
    }
    // Uncounted: a check on the output, not part of either algorithm.
    if (!syndrome_bundle(code, res.codeword).is_zero())
        throw Error(ErrorCode::Undecodable, "verification: repaired word is not a codeword");
    return res;
}

// Everything after the solver in the first decoder.
inline DecodeResult first_tail(const Code& code, std::span<const FieldElement> received,
                               const SyndromeBundle& bundle, const IfdmaResult& solved,
                               DecodeTag tag, OpCounter& ctr)
{
    const Field& f = code.field();
    const LchBasis& basis = code.basis();
    const std::size_t t = code.t();
    const unsigned mu = code.mu();

    std::vector<FieldElement> zv(t + 1);
    for (std::size_t i = 0; i <= t; ++i)
        zv[i] = f.mul(bundle.s_evals[i], solved.evals[i], ctr);
    const LchPoly lambda_full = basis.extended_ifft(solved.evals, mu - 1, 0, ctr);
    const LchPoly z_lch = basis.extended_ifft(zv, mu - 1, 0, ctr);

    if (lambda_full.degree() != static_cast<long>(solved.error_count))
        throw Error(ErrorCode::Undecodable, "interpolation: locator degree differs from the error count");
    const LchPoly lambda_lch = lambda_full.trimmed();
    const MonoPoly lambda_mono = basis.lch_to_mono(lambda_lch, ctr);

    const auto roots = chien_block_search(code, lambda_full, mu, ctr);
    if (roots.size() != solved.error_count)
        throw Error(ErrorCode::Undecodable, "Chien search: locator root count differs from the error count");
    std::vector<ErrorEntry> errors;
    try {
        errors = forney_values(code, z_lch, lambda_mono, roots, ctr);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::ZeroDenominator)
            throw Error(ErrorCode::Undecodable, "Forney: error located inside the parity subspace");
        throw;
    }
    DecodeResult res = repair(code, received, std::move(errors), tag);
    res.solver_steps = solved.steps;
    return res;
}

inline DecodeResult clean_result(std::span<const FieldElement> received, DecodeTag tag)
{
    DecodeResult res;
    res.tag = tag;
    res.codeword.assign(received.begin(), received.end());
    return res;
}

} // namespace detail

//! Syndromes, I-FDMA, extended IFFT for lambda and z, Chien search, Forney.
inline DecodeResult decode_first(const Code& code, std::span<const FieldElement> received,
                                 OpCounter& ctr)
{
    OpCounter local;
    const SyndromeBundle bundle = syndrome_bundle(code, received, local);
    DecodeResult res;
    if (bundle.is_zero()) {
        res = detail::clean_result(received, DecodeTag::First);
    } else {
        const IfdmaResult solved = ifdma_solve(code, bundle.s_evals, local);
        res = detail::first_tail(code, received, bundle, solved, DecodeTag::First, local);
    }
    res.counters = local;
    ctr += local;
    return res;
}

inline DecodeResult decode_first(const Code& code, std::span<const FieldElement> received)
{
    OpCounter scratch;
    return decode_first(code, received, scratch);
}

namespace detail {

// Steps after SI-FDMA reported e errors. Throws on any inconsistency.
inline DecodeResult second_tail(const Code& code, std::span<const FieldElement> received,
                                const SyndromeBundle& bundle, std::size_t e, OpCounter& ctr)
{
    const Field& f = code.field();
    const LchBasis& basis = code.basis();
    const unsigned s = static_cast<unsigned>(std::bit_width(e));
    const std::size_t R = std::size_t{1} << s;

    const auto S = power_syndromes_from_lch(code, bundle.s_lch, 2 * e, ctr);
    const MonoPoly sigma = s_esbm(e, S, f, ctr);
    const LchPoly sigma_lch = basis.mono_to_lch(sigma, ctr);
    const auto recip = chien_block_search(code, sigma_lch, s, ctr);
    if (recip.size() != e)
        throw Error(ErrorCode::InconsistentCount, "Chien search: sigma root count differs from e");

    std::vector<std::size_t> positions;
    positions.reserve(e);
    for (std::size_t i : recip)
        positions.push_back(f.omega_index(f.inv(f.omega(i), ctr)));
    std::sort(positions.begin(), positions.end());

    // lambda(x) = prod (x + omega_j), kept monic so the leading 1 is never multiplied.
    std::vector<FieldElement> lambda{f.omega(positions[0]), 1};
    for (std::size_t j = 1; j < positions.size(); ++j) {
        const FieldElement c = f.omega(positions[j]);
        std::vector<FieldElement> next(lambda.size() + 1, 0);
        next.back() = 1;
        next[lambda.size() - 1] = Field::add(lambda[lambda.size() - 2], c, ctr);
        for (std::size_t k = lambda.size() - 1; k-- > 0;) {
            const FieldElement prod = f.mul(c, lambda[k], ctr);
            next[k] = k == 0 ? prod : Field::add(lambda[k - 1], prod, ctr);
        }
        lambda = std::move(next);
    }
    const MonoPoly lambda_mono(lambda);
    const LchPoly lambda_lch = basis.mono_to_lch(lambda_mono, ctr).padded(R);

    const auto lambda_vals = basis.fft(lambda_lch, s, 0, ctr);
    std::vector<FieldElement> zv(R);
    for (std::size_t i = 0; i < R; ++i)
        zv[i] = f.mul(bundle.s_evals[i], lambda_vals[i], ctr);
    const LchPoly z_lch = basis.ifft(zv, s, 0, ctr);

    auto errors = forney_values(code, z_lch, lambda_mono, positions, ctr);
    DecodeResult res = repair(code, received, std::move(errors), DecodeTag::Second);
    res.solver_steps = 2 * e;
    return res;
}

} // namespace detail

//! SI-FDMA for the error count, then power syndromes, S-ESBM, Chien search
//! on sigma, and Forney on a size-R transform. When SI-FDMA has no answer,
//! or its answer does not survive the later steps, the first decoder's
//! solver resumes from the SI-FDMA triangle.
inline DecodeResult decode_second(const Code& code, std::span<const FieldElement> received,
                                  OpCounter& ctr)
{
    OpCounter local;
    const SyndromeBundle bundle = syndrome_bundle(code, received, local);
    DecodeResult res;
    if (bundle.is_zero()) {
        res = detail::clean_result(received, DecodeTag::Second);
        res.counters = local;
        ctr += local;
        return res;
    }
    const unsigned t0 = code.t0();
    const SiResult si = si_fdma(
        code, std::span<const FieldElement>(bundle.s_evals).first(std::size_t{t0} + 1), t0, local);

    bool done = false;
    if (si.error_count && *si.error_count > 0) {
        try {
            res = detail::second_tail(code, received, bundle, *si.error_count, local);
            done = true;
        } catch (const Error& err) {
            switch (err.code()) {
            case ErrorCode::InconsistentCount:
            case ErrorCode::DegenerateInput:
            case ErrorCode::ZeroDenominator:
            case ErrorCode::ZeroInversion:
            case ErrorCode::Undecodable:
                break;
            default:
                throw;
            }
        }
    }
    if (!done) {
        const IfdmaResult solved = ifdma_solve(code, bundle.s_evals, local, &si.triangle);
        res = detail::first_tail(code, received, bundle, solved,
                                 DecodeTag::SecondFellBackToFirst, local);
    }
    res.counters = local;
    ctr += local;
    return res;
}

inline DecodeResult decode_second(const Code& code, std::span<const FieldElement> received)
{
    OpCounter scratch;
    return decode_second(code, received, scratch);
}

} // namespace lchrs
