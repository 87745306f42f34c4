#pragma once

#include "lchrs/decoder.hpp"

#include <array>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lchrs {

enum class CountLabel {
    FdmaFormula,
    EfdmaFormula,
    IfdmaFormula,
    IfdmaMeasured,
    SesbmMeasured,
    DecodeFirstMeasured,
    DecodeSecondMeasured,
};

constexpr std::string_view to_string(CountLabel label) noexcept
{
    switch (label) {
    case CountLabel::FdmaFormula: return "fdma_formula";
    case CountLabel::EfdmaFormula: return "efdma_formula";
    case CountLabel::IfdmaFormula: return "ifdma_formula";
    case CountLabel::IfdmaMeasured: return "ifdma_measured";
    case CountLabel::SesbmMeasured: return "sesbm_measured";
    case CountLabel::DecodeFirstMeasured: return "decode_first_measured";
    case CountLabel::DecodeSecondMeasured: return "decode_second_measured";
    }
    return "unknown";
}

struct CountRow {
    std::size_t e = 0;
    std::size_t t = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    CountLabel label = CountLabel::IfdmaFormula;
    std::uint64_t mul = 0;
    std::uint64_t add = 0;
    std::uint64_t inv = 0;
    //! (baseline.mul - mul) / baseline.mul * 100 against the row's comparison
    //! baseline, when there is one.
    std::optional<double> improvement_pct;
};

struct MulAdd {
    std::uint64_t mul;
    std::uint64_t add;

    friend bool operator==(const MulAdd&, const MulAdd&) = default;
};

struct FormulaCounts {
    MulAdd fdma;
    MulAdd efdma;
    MulAdd ifdma;
};

//! Closed-form counts for locating e errors with capability t.
inline FormulaCounts formula_counts(std::uint64_t t, std::uint64_t e)
{
    require(e >= 1 && e <= t, ErrorCode::InvalidParameter, "formulas need 1 <= e <= t");
    FormulaCounts out;
    out.fdma = {12 * t * t + 3 * t, 8 * t * t + 2 * t};
    // Both halves are even for every integer e, t.
    out.efdma = {(7 * t * t + 26 * e * t + 3 * (e + t) - 9 * e * e) / 2,
                 (5 * t * t + 16 * e * t - 5 * e * e + 3 * e + t) / 2};
    out.ifdma = {18 * e * t - 6 * e * e + 3 * e, 12 * e * t - 4 * e * e + 2 * e};
    return out;
}

inline double improvement_pct(std::uint64_t baseline, std::uint64_t value)
{
    return (static_cast<double>(baseline) - static_cast<double>(value)) /
           static_cast<double>(baseline) * 100.0;
}

namespace detail {

inline CountRow make_row(const Code& code, std::size_t e, CountLabel label, std::uint64_t mul,
                         std::uint64_t add, std::uint64_t inv = 0)
{
    CountRow row;
    row.e = e;
    row.t = code.t();
    row.n = code.n();
    row.k = code.k();
    row.label = label;
    row.mul = mul;
    row.add = add;
    row.inv = inv;
    return row;
}

// A random received word with exactly e errors inside [2t, n).
struct Instance {
    Codeword codeword;
    ErrorPattern pattern;
    Codeword received;
};

inline Instance random_instance(const Code& code, std::size_t e, SeededRng& rng)
{
    Instance inst;
    inst.codeword = encode_systematic(code, random_symbols(code, code.k(), rng));
    inst.pattern = random_error_pattern(code, e, rng);
    inst.received = corrupt(code, inst.codeword, inst.pattern);
    return inst;
}

} // namespace detail

//! Formula rows for one e: FDMA, eFDMA, and I-FDMA with its improvement
//! over eFDMA.
inline std::vector<CountRow> formula_rows(const Code& code, std::size_t e)
{
    const FormulaCounts fc = formula_counts(code.t(), e);
    std::vector<CountRow> rows;
    rows.push_back(detail::make_row(code, e, CountLabel::FdmaFormula, fc.fdma.mul, fc.fdma.add));
    rows.push_back(detail::make_row(code, e, CountLabel::EfdmaFormula, fc.efdma.mul, fc.efdma.add));
    CountRow ifdma = detail::make_row(code, e, CountLabel::IfdmaFormula, fc.ifdma.mul, fc.ifdma.add);
    ifdma.improvement_pct = improvement_pct(fc.efdma.mul, fc.ifdma.mul);
    rows.push_back(ifdma);
    return rows;
}

//! Runs I-FDMA and S-ESBM on `trials` random e-error instances.
//!
//! I-FDMA must spend the same on every trial (CountMismatch otherwise).
//! S-ESBM skips work on zero discrepancies, which depend on the data, so its
//! row reports the largest count seen.
inline std::vector<CountRow> measure_solver(const Code& code, std::size_t e, std::size_t trials,
                                            std::uint64_t seed = 1)
{
    require(e >= 1 && e <= code.t(), ErrorCode::InvalidParameter, "need 1 <= e <= t");
    require(trials >= 1, ErrorCode::InvalidParameter, "need at least one trial");
    SeededRng rng(seed);
    std::optional<OpCounter> ifdma;
    OpCounter sesbm_max;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto inst = detail::random_instance(code, e, rng);
        const SyndromeBundle bundle = syndrome_bundle(code, inst.received);
        OpCounter c;
        ifdma_solve(code, bundle.s_evals, c);
        if (ifdma && !(*ifdma == c))
            throw Error(ErrorCode::CountMismatch, "I-FDMA counts differ between trials");
        ifdma = c;

        OpCounter unused;
        const auto S = power_syndromes(code, inst.received, 2 * e, unused);
        OpCounter cs;
        s_esbm(e, S, code.field(), cs);
        if (cs.mul > sesbm_max.mul)
            sesbm_max = cs;
    }
    std::vector<CountRow> rows;
    CountRow measured =
        detail::make_row(code, e, CountLabel::IfdmaMeasured, ifdma->mul, ifdma->add, ifdma->inv);
    measured.improvement_pct = improvement_pct(formula_counts(code.t(), e).efdma.mul, ifdma->mul);
    rows.push_back(measured);
    rows.push_back(detail::make_row(code, e, CountLabel::SesbmMeasured, sesbm_max.mul,
                                    sesbm_max.add, sesbm_max.inv));
    return rows;
}

//! Largest per-decode counts of both pipelines over `trials` instances; the
//! second decoder's row carries its improvement over the first.
inline std::vector<CountRow> measure_decoders(const Code& code, std::size_t e, std::size_t trials,
                                              std::uint64_t seed = 1)
{
    require(e >= 1 && e <= code.t(), ErrorCode::InvalidParameter, "need 1 <= e <= t");
    require(trials >= 1, ErrorCode::InvalidParameter, "need at least one trial");
    SeededRng rng(seed);
    OpCounter first_max, second_max;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto inst = detail::random_instance(code, e, rng);
        const DecodeResult a = decode_first(code, inst.received);
        const DecodeResult b = decode_second(code, inst.received);
        if (a.counters.mul > first_max.mul)
            first_max = a.counters;
        if (b.counters.mul > second_max.mul)
            second_max = b.counters;
    }
    std::vector<CountRow> rows;
    rows.push_back(detail::make_row(code, e, CountLabel::DecodeFirstMeasured, first_max.mul,
                                    first_max.add, first_max.inv));
    CountRow second = detail::make_row(code, e, CountLabel::DecodeSecondMeasured, second_max.mul,
                                       second_max.add, second_max.inv);
    second.improvement_pct = improvement_pct(first_max.mul, second_max.mul);
    rows.push_back(second);
    return rows;
}

enum class ReportFormat { Csv, Markdown };

inline std::string format_pct(const std::optional<double>& pct)
{
    if (!pct)
        return "";
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << *pct;
    return os.str();
}

//! Columns e, label, mul, add, improvement_pct in that order. The markdown
//! form also shows the inversion count, which the CSV leaves out. The
//! improvement column is dropped when no row has a baseline.
inline std::string emit_report(const std::vector<CountRow>& rows, ReportFormat format)
{
    require(!rows.empty(), ErrorCode::InvalidParameter, "nothing to report");
    bool any_pct = false;
    for (const auto& r : rows)
        any_pct = any_pct || r.improvement_pct.has_value();

    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        os << "e,label,mul,add" << (any_pct ? ",improvement_pct" : "") << '\n';
        for (const auto& r : rows) {
            os << r.e << ',' << to_string(r.label) << ',' << r.mul << ',' << r.add;
            if (any_pct)
                os << ',' << format_pct(r.improvement_pct);
            os << '\n';
        }
        return os.str();
    }
    os << "| e | label | mul | add | inv |" << (any_pct ? " improvement (%) |" : "") << '\n';
    os << "|---|---|---|---|---|" << (any_pct ? "---|" : "") << '\n';
    for (const auto& r : rows) {
        os << "| " << r.e << " | " << to_string(r.label) << " | " << r.mul << " | " << r.add
           << " | " << r.inv << " |";
        if (any_pct)
            os << ' ' << format_pct(r.improvement_pct) << " |";
        os << '\n';
    }
    return os.str();
}

//! Published multiplication counts, indexed by e - 1.
namespace reference {

//! Key-equation solvers at (256,224).
inline constexpr std::array<std::uint64_t, 10> solver_efdma_256{1125, 1321, 1508, 1686, 1855,
                                                                2015, 2166, 2308, 2441, 2565};
inline constexpr std::array<std::uint64_t, 10> solver_ifdma_256{285,  558,  819,  1068, 1305,
                                                                1530, 1743, 1944, 2133, 2310};
//! Whole decoders at (256,224) and (128,96).
inline constexpr std::array<std::uint64_t, 10> decoder_efdma_256{2010, 2352, 2549, 2935, 3130,
                                                                 3316, 3493, 4125, 4324, 4514};
inline constexpr std::array<std::uint64_t, 10> decoder_first_256{1170, 1589, 1860, 2317, 2580,
                                                                 2831, 3070, 3761, 4016, 4259};
inline constexpr std::array<std::uint64_t, 8> decoder_second_256{769,  1057, 1193, 1591,
                                                                 1707, 1928, 2117, 2931};
inline constexpr std::array<std::uint64_t, 8> decoder_first_128{786,  1141, 1412, 1805,
                                                                2068, 2319, 2558, 3185};
inline constexpr std::array<std::uint64_t, 8> decoder_second_128{449,  673,  809,  1143,
                                                                 1259, 1480, 1669, 2419};

} // namespace reference

//! Measured decoder totals next to the published ones for (256,224) or
//! (128,96); other shapes have no published numbers and yield "".
inline std::string emit_decoder_comparison(const Code& code,
                                           const std::vector<CountRow>& decoder_rows)
{
    std::span<const std::uint64_t> first, second;
    if (code.n() == 256 && code.k() == 224) {
        first = reference::decoder_first_256;
        second = reference::decoder_second_256;
    } else if (code.n() == 128 && code.k() == 96) {
        first = reference::decoder_first_128;
        second = reference::decoder_second_128;
    } else {
        return "";
    }
    std::ostringstream os;
    os << "| e | first (measured) | first (published) | second (measured) | second (published) "
          "|\n|---|---|---|---|---|\n";
    for (std::size_t e = 1; e <= 8; ++e) {
        std::optional<std::uint64_t> mf, ms;
        for (const auto& r : decoder_rows) {
            if (r.e != e)
                continue;
            if (r.label == CountLabel::DecodeFirstMeasured)
                mf = r.mul;
            if (r.label == CountLabel::DecodeSecondMeasured)
                ms = r.mul;
        }
        if (!mf && !ms)
            continue;
        os << "| " << e << " | " << (mf ? std::to_string(*mf) : "") << " | " << first[e - 1]
           << " | " << (ms ? std::to_string(*ms) : "") << " | " << second[e - 1] << " |\n";
    }
    return os.str();
}

} // namespace lchrs
