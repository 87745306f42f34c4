#pragma once

#include "lchrs/rs_codec.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lchrs {

//! Which shape of the 2x2 update matrix a step used. Hold keeps the row
//! pairing ((g, d), (0, x + w_r)); Swap exchanges it ((g, d), (x + w_r, 0)).
enum class StepKind { Hold, Swap };

//! One completed iteration of an MA-family solver: the pivot pair and the
//! degree counters after the update.
struct StepRecord {
    std::size_t r;
    StepKind kind;
    FieldElement d_r;
    FieldElement g_r;
    unsigned R0;
    unsigned R1;
};

enum class MaMode { Full2t, TPlusE, TwoE };

namespace detail {

inline bool hold_branch(FieldElement d_r, FieldElement g_r, unsigned R0, unsigned R1)
{
    return d_r == 0 || (R0 > R1 && g_r != 0);
}

inline void advance_counters(StepKind kind, unsigned& R0, unsigned& R1)
{
    if (kind == StepKind::Hold) {
        R1 += 2;
    } else {
        const unsigned old0 = R0;
        R0 = R1;
        R1 = old0 + 2;
    }
}

// Applies Psi_r(omega_i) to the pair (a, b) in place:
//   a' = g_r a + d_r b,   b' = (omega_i + omega_r) * (Hold ? b : a)
// 3 products and 2 sums, whatever the values.
inline void apply_step(const Field& f, StepKind kind, FieldElement d_r, FieldElement g_r,
                       FieldElement omega_r, std::size_t i, FieldElement& a, FieldElement& b,
                       OpCounter& ctr)
{
    const FieldElement diff = Field::add(f.omega(i), omega_r, ctr);
    const FieldElement na = Field::add(f.mul(g_r, a, ctr), f.mul(d_r, b, ctr), ctr);
    b = f.mul(diff, kind == StepKind::Hold ? b : a, ctr);
    a = na;
}

inline bool all_zero(std::span<const FieldElement> v, std::size_t from)
{
    for (std::size_t i = from; i < v.size(); ++i)
        if (v[i] != 0)
            return false;
    return true;
}

// (x + c) * p over monomials.
inline std::vector<FieldElement> times_linear(const Field& f, const std::vector<FieldElement>& p,
                                              FieldElement c, OpCounter& ctr)
{
    std::vector<FieldElement> out(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + 1] = Field::add(out[i + 1], p[i]);
        out[i] = Field::add(out[i], f.mul(c, p[i], ctr), ctr);
    }
    return out;
}

inline std::vector<FieldElement> lin_comb(const Field& f, FieldElement a,
                                          const std::vector<FieldElement>& p, FieldElement b,
                                          const std::vector<FieldElement>& q, OpCounter& ctr)
{
    std::vector<FieldElement> out(std::max(p.size(), q.size()), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = f.mul(a, p[i], ctr);
    for (std::size_t i = 0; i < q.size(); ++i)
        out[i] = Field::add(out[i], f.mul(b, q[i], ctr), ctr);
    return out;
}

inline void check_syndrome_count(std::size_t got, std::size_t want)
{
    if (got != want)
        throw Error(ErrorCode::MalformedInput, "unexpected number of syndromes");
}

} // namespace detail

struct MaResult {
    MonoPoly lambda;
    MonoPoly z;
    std::size_t steps = 0;
    unsigned R0 = 0;
    unsigned R1 = 1;
};

//! Modular approach with the full polynomial matrix (w n; v m). Slow and
//! explicit; serves as the reference the evaluation-domain solvers are
//! checked against.
inline MaResult ma_reference_solve(const Code& code, std::span<const FieldElement> syndromes,
                                   MaMode mode, OpCounter& ctr,
                                   std::vector<StepRecord>* trace = nullptr)
{
    const std::size_t two_t = 2 * code.t();
    detail::check_syndrome_count(syndromes.size(), two_t);
    const Field& f = code.field();
    std::vector<FieldElement> d(syndromes.begin(), syndromes.end());
    std::vector<FieldElement> g(two_t, 1);
    std::vector<FieldElement> w{1}, n{0}, v{0}, m{1};
    unsigned R0 = 0, R1 = 1;
    std::size_t steps = 0;

    const bool stop_now = mode == MaMode::TwoE && detail::all_zero(d, 0);
    for (std::size_t r = 0; r < two_t && !stop_now; ++r) {
        const FieldElement d_r = d[r];
        const FieldElement g_r = g[r];
        const StepKind kind =
            detail::hold_branch(d_r, g_r, R0, R1) ? StepKind::Hold : StepKind::Swap;
        detail::advance_counters(kind, R0, R1);
        const FieldElement omega_r = f.omega(r);
        for (std::size_t i = r + 1; i < two_t; ++i)
            detail::apply_step(f, kind, d_r, g_r, omega_r, i, d[i], g[i], ctr);

        auto nw = detail::lin_comb(f, g_r, w, d_r, v, ctr);
        auto nn = detail::lin_comb(f, g_r, n, d_r, m, ctr);
        v = detail::times_linear(f, kind == StepKind::Hold ? v : w, omega_r, ctr);
        m = detail::times_linear(f, kind == StepKind::Hold ? m : n, omega_r, ctr);
        w = std::move(nw);
        n = std::move(nn);
        steps = r + 1;
        if (trace)
            trace->push_back({r, kind, d_r, g_r, R0, R1});

        if (mode == MaMode::TwoE && detail::all_zero(d, r + 1))
            break;
        if (mode == MaMode::TPlusE && R1 == two_t + 1)
            break;
    }

    MaResult out;
    out.steps = steps;
    out.R0 = R0;
    out.R1 = R1;
    if (mode != MaMode::Full2t || R0 < R1) {
        out.lambda = MonoPoly(std::move(w)).trimmed();
        out.z = MonoPoly(std::move(n)).trimmed();
    } else {
        out.lambda = MonoPoly(std::move(v)).trimmed();
        out.z = MonoPoly(std::move(m)).trimmed();
    }
    return out;
}

//! What a t0-SI-FDMA run leaves behind: enough to let I-FDMA pick up
//! without recomputing any of the rows 0..t0.
struct SiTriangle {
    unsigned t0 = 0;
    //! Iterations completed.
    std::size_t steps = 0;
    //! d_i, g_i for i = 0..t0 after the last completed iteration; row i < steps
    //! holds its value from iteration i (its diagonal entry).
    std::vector<FieldElement> d;
    std::vector<FieldElement> g;
    std::vector<StepRecord> history;
    unsigned R0 = 0;
    unsigned R1 = 1;
};

struct SiResult {
    std::optional<std::size_t> error_count;
    SiTriangle triangle;
};

//! Error-count probe on s(omega_0..omega_t0).
inline SiResult si_fdma(const Code& code, std::span<const FieldElement> syndromes, unsigned t0,
                        OpCounter& ctr)
{
    if (t0 % 2 != 0)
        throw Error(ErrorCode::OddT0, "t0 must be even");
    require(t0 < 2 * code.t(), ErrorCode::InvalidParameter, "t0 must be below 2t");
    detail::check_syndrome_count(syndromes.size(), std::size_t{t0} + 1);
    const Field& f = code.field();

    SiResult out;
    SiTriangle& tri = out.triangle;
    tri.t0 = t0;
    tri.d.assign(syndromes.begin(), syndromes.end());
    tri.g.assign(syndromes.size(), 1);
    if (detail::all_zero(tri.d, 0)) {
        out.error_count = 0;
        return out;
    }
    for (std::size_t r = 0; r <= t0; ++r) {
        const FieldElement d_r = tri.d[r];
        const FieldElement g_r = tri.g[r];
        const StepKind kind =
            detail::hold_branch(d_r, g_r, tri.R0, tri.R1) ? StepKind::Hold : StepKind::Swap;
        detail::advance_counters(kind, tri.R0, tri.R1);
        const FieldElement omega_r = f.omega(r);
        for (std::size_t i = r + 1; i <= t0; ++i)
            detail::apply_step(f, kind, d_r, g_r, omega_r, i, tri.d[i], tri.g[i], ctr);
        tri.history.push_back({r, kind, d_r, g_r, tri.R0, tri.R1});
        tri.steps = r + 1;
        // The last iteration has an empty tail, which proves nothing.
        if (r + 1 <= t0 && detail::all_zero(tri.d, r + 1)) {
            if (tri.R0 % 2 == 0)
                out.error_count = tri.R0 / 2;
            break;
        }
    }
    return out;
}

struct IfdmaResult {
    //! w(omega_0..omega_t): a nonzero multiple of the error locator's values.
    std::vector<FieldElement> evals;
    std::size_t steps = 0;
    std::size_t error_count = 0;
    unsigned R0 = 0;
    unsigned R1 = 1;
};

//! Evaluation-domain MA on s(omega_0..omega_{2t-1}) that keeps only
//! W_i = w(omega_i), V_i = v(omega_i) for i = 0..t and stops at the first
//! all-zero discrepancy tail.
//!
//! With `resume`, the iterations already done by si_fdma are replayed only
//! on the rows it did not cover, so SI-FDMA plus the resumed run costs the
//! same as a standalone run.
inline IfdmaResult ifdma_solve(const Code& code, std::span<const FieldElement> syndromes,
                               OpCounter& ctr, const SiTriangle* resume = nullptr,
                               std::vector<StepRecord>* trace = nullptr)
{
    const std::size_t t = code.t();
    const std::size_t two_t = 2 * t;
    detail::check_syndrome_count(syndromes.size(), two_t);
    const Field& f = code.field();

    std::vector<FieldElement> d(syndromes.begin(), syndromes.end());
    std::vector<FieldElement> g(two_t, 1);
    std::vector<FieldElement> W(t + 1, 1), V(t + 1, 0);
    unsigned R0 = 0, R1 = 1;
    std::size_t r0 = 0;

    // A zero tail ends the run with w as the locator and R0 = 2e; the forced
    // stop after 2t steps takes whichever row has the smaller counter.
    auto finish = [&](std::size_t steps, bool zero_tail) {
        const bool use_w = zero_tail || R0 < R1;
        const unsigned Rl = use_w ? R0 : R1;
        if (Rl % 2 != 0 || Rl > two_t)
            throw Error(ErrorCode::Undecodable, "I-FDMA: key equation has no solution within t errors");
        IfdmaResult res;
        res.evals = use_w ? W : V;
        res.steps = steps;
        res.error_count = Rl / 2;
        res.R0 = R0;
        res.R1 = R1;
        return res;
    };

    if (detail::all_zero(d, 0))
        return finish(0, true);

    if (resume != nullptr && resume->steps > 0) {
        const SiTriangle& tri = *resume;
        require(tri.t0 + 1 <= two_t && tri.d.size() == tri.t0 + 1 && tri.g.size() == tri.t0 + 1 &&
                    tri.history.size() == tri.steps,
                ErrorCode::MalformedInput, "triangle shape does not match the code");
        const std::size_t first_new = std::size_t{tri.t0} + 1;
        for (const StepRecord& s : tri.history) {
            const FieldElement omega_r = f.omega(s.r);
            for (std::size_t i = std::max(s.r + 1, first_new); i < two_t; ++i)
                detail::apply_step(f, s.kind, s.d_r, s.g_r, omega_r, i, d[i], g[i], ctr);
            for (std::size_t i = 0; i <= t; ++i)
                detail::apply_step(f, s.kind, s.d_r, s.g_r, omega_r, i, W[i], V[i], ctr);
            if (trace)
                trace->push_back(s);
        }
        std::copy(tri.d.begin(), tri.d.end(), d.begin());
        std::copy(tri.g.begin(), tri.g.end(), g.begin());
        R0 = tri.R0;
        R1 = tri.R1;
        r0 = tri.steps;
        // SI-FDMA never saw a zero tail before its last step, and its tail
        // is part of ours, so only the last replayed step can end the run.
        if (detail::all_zero(d, r0) || r0 == two_t)
            return finish(r0, r0 < two_t);
    }

    for (std::size_t r = r0; r < two_t; ++r) {
        const FieldElement d_r = d[r];
        const FieldElement g_r = g[r];
        const StepKind kind =
            detail::hold_branch(d_r, g_r, R0, R1) ? StepKind::Hold : StepKind::Swap;
        detail::advance_counters(kind, R0, R1);
        const FieldElement omega_r = f.omega(r);
        for (std::size_t i = r + 1; i < two_t; ++i)
            detail::apply_step(f, kind, d_r, g_r, omega_r, i, d[i], g[i], ctr);
        for (std::size_t i = 0; i <= t; ++i)
            detail::apply_step(f, kind, d_r, g_r, omega_r, i, W[i], V[i], ctr);
        if (trace)
            trace->push_back({r, kind, d_r, g_r, R0, R1});
        if (r + 1 < two_t && detail::all_zero(d, r + 1))
            return finish(r + 1, true);
    }
    return finish(two_t, false);
}

//! Berlekamp-Massey on 2e power syndromes when e is known. Returns
//! sigma = 1 + sigma_1 x + ... + sigma_e x^e.
//!
//! Products with B[0] = 1 and with the initial D = 1 are structural and not
//! issued. At r = 1 after a length change at r = 0 the update collapses to
//! sigma_1 = S_1 / S_0, one product instead of two.
inline MonoPoly s_esbm(std::size_t e, std::span<const FieldElement> S, const Field& f,
                       OpCounter& ctr)
{
    require(e >= 1, ErrorCode::InvalidParameter, "error count must be positive");
    require(S.size() == 2 * e, ErrorCode::MalformedInput, "S-ESBM needs exactly 2e syndromes");

    std::vector<FieldElement> lambda{1};
    std::vector<FieldElement> B{1};
    std::size_t L = 0;
    std::size_t shift = 1;
    bool D_is_one = true;
    FieldElement D_inv = 1;
    bool changed_at_zero = false;

    auto add_scaled_B = [&](FieldElement coef) {
        if (lambda.size() < B.size() + shift)
            lambda.resize(B.size() + shift, 0);
        for (std::size_t i = 0; i < B.size(); ++i) {
            const FieldElement term = i == 0 ? coef : f.mul(coef, B[i], ctr);
            lambda[i + shift] = Field::add(lambda[i + shift], term, ctr);
        }
    };

    for (std::size_t r = 0; r < 2 * e; ++r) {
        if (r == 1 && changed_at_zero && L == 1) {
            // lambda = 1 + S_0 x, D = S_0, B = 1: the corrected coefficient is
            // S_1 / S_0 and the discrepancy vanishes exactly when it equals S_0.
            const FieldElement next = f.mul(S[1], D_inv, ctr);
            lambda[1] = next;
            ++shift;
            continue;
        }

        FieldElement d = S[r];
        for (std::size_t i = 1; i <= L && i < lambda.size(); ++i)
            d = Field::add(d, f.mul(lambda[i], S[r - i], ctr), ctr);

        if (d == 0) {
            ++shift;
            continue;
        }
        const FieldElement coef = D_is_one ? d : f.mul(d, D_inv, ctr);
        if (2 * L > r) {
            add_scaled_B(coef);
            ++shift;
        } else {
            std::vector<FieldElement> previous = lambda;
            add_scaled_B(coef);
            L = r + 1 - L;
            B = std::move(previous);
            D_is_one = false;
            D_inv = f.inv(d, ctr);
            shift = 1;
            changed_at_zero = r == 0;
        }
    }

    if (L > e)
        throw Error(ErrorCode::DegenerateInput, "syndromes need a longer recurrence than e");
    for (std::size_t i = e + 1; i < lambda.size(); ++i)
        if (lambda[i] != 0)
            throw Error(ErrorCode::DegenerateInput, "connection polynomial exceeds degree e");
    lambda.resize(e + 1, 0);
    return MonoPoly(std::move(lambda));
}

} // namespace lchrs
