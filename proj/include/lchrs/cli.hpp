#pragma once

#include "lchrs/opcount_bench.hpp"
#include "lchrs/symbol_file.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace lchrs::cli {

enum ExitCode : int { Ok = 0, UsageOrIo = 1, Undecodable = 2 };

namespace detail {

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline std::string read_all(const std::string& path, std::istream& in)
{
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

inline void write_all(const std::string& path, std::ostream& out, const std::string& bytes)
{
    if (path == "-") {
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw std::runtime_error("cannot write " + path);
}

inline Code code_for(unsigned m, unsigned mu, unsigned t0 = 0)
{
    CodeParams p;
    p.m = m;
    p.mu = mu;
    p.t0 = t0;
    return Code(p);
}

inline Code code_for(const SymbolFile& file, unsigned t0 = 0)
{
    Code code = code_for(file.m, file.mu, t0);
    if (file.symbols.size() != code.n())
        throw Error(ErrorCode::LengthMismatch, "codeword length must be 2^m");
    return code;
}

// Data symbols from either a symbol file or raw bytes, zero-padded to k.
inline std::vector<FieldElement> data_symbols(const Code& code, const std::string& bytes)
{
    std::vector<FieldElement> data;
    if (looks_like_symbol_file(bytes)) {
        SymbolFile file = parse_symbol_file(bytes);
        if (file.m != code.params().m)
            throw Error(ErrorCode::MalformedInput, "input m differs from --m");
        data = std::move(file.symbols);
    } else {
        const std::size_t width = symbol_width(code.params().m);
        if (bytes.size() % width != 0)
            throw Error(ErrorCode::MalformedInput, "raw input is not a whole number of symbols");
        for (std::size_t i = 0; i < bytes.size(); i += width) {
            unsigned v = static_cast<unsigned char>(bytes[i]);
            if (width == 2)
                v |= static_cast<unsigned>(static_cast<unsigned char>(bytes[i + 1])) << 8;
            if (!code.field().contains(v))
                throw Error(ErrorCode::MalformedInput, "raw input symbol outside the field");
            data.push_back(static_cast<FieldElement>(v));
        }
    }
    if (data.size() > code.k())
        throw Error(ErrorCode::LengthMismatch, "input longer than k symbols");
    data.resize(code.k(), 0);
    return data;
}

inline int cmd_encode(Streams io, unsigned m, unsigned mu, const std::string& in_path,
                      const std::string& out_path)
{
    const Code code = code_for(m, mu);
    const auto data = data_symbols(code, read_all(in_path, io.in));
    SymbolFile file{m, mu, encode_systematic(code, data)};
    write_all(out_path, io.out, format_symbol_file(file));
    return Ok;
}

inline int cmd_corrupt(Streams io, const std::string& in_path, const std::string& out_path,
                       std::optional<std::size_t> errors, const std::string& pattern_path,
                       std::uint64_t seed, bool unsafe)
{
    SymbolFile file = parse_symbol_file(read_all(in_path, io.in));
    const Code code = code_for(file);
    ErrorPattern pattern;
    if (!pattern_path.empty()) {
        std::istringstream none;
        pattern = parse_pattern(read_all(pattern_path, none));
    } else {
        SeededRng rng(seed);
        const std::size_t lo = unsafe ? 0 : 2 * code.t();
        if (*errors > code.n() - lo)
            throw Error(ErrorCode::InvalidParameter, "more errors than available positions");
        pattern = random_error_pattern(code, *errors, rng, lo);
    }
    file.symbols = corrupt(code, file.symbols, pattern, unsafe);
    write_all(out_path, io.out, format_symbol_file(file));
    return Ok;
}

inline int cmd_decode(Streams io, const std::string& algo, unsigned t0,
                      const std::string& in_path, const std::string& out_path, bool emit_counts)
{
    SymbolFile file = parse_symbol_file(read_all(in_path, io.in));
    const Code code = code_for(file, t0);
    DecodeResult res;
    try {
        res = algo == "second" ? decode_second(code, file.symbols) : decode_first(code, file.symbols);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::Undecodable)
            throw;
        io.err << "undecodable (" << algo << " decoder) " << err.what() << '\n';
        return Undecodable;
    }
    file.symbols = res.codeword;
    write_all(out_path, io.out, format_symbol_file(file));
    if (emit_counts) {
        CountRow row;
        row.e = res.error_pattern.weight();
        row.t = code.t();
        row.n = code.n();
        row.k = code.k();
        row.label =
            algo == "second" ? CountLabel::DecodeSecondMeasured : CountLabel::DecodeFirstMeasured;
        row.mul = res.counters.mul;
        row.add = res.counters.add;
        row.inv = res.counters.inv;
        // Counts never share a stream with the codeword.
        std::ostream& dest = out_path == "-" ? io.err : io.out;
        dest << emit_report({row}, ReportFormat::Csv);
    }
    return Ok;
}

inline int cmd_bench(Streams io, unsigned m, unsigned mu, std::size_t e_max,
                     const std::string& format, std::size_t trials, std::uint64_t seed)
{
    const Code code = code_for(m, mu);
    const std::size_t top = std::min(e_max, code.t());
    std::vector<CountRow> rows, decoder_rows;
    for (std::size_t e = 1; e <= top; ++e) {
        for (auto& r : formula_rows(code, e))
            rows.push_back(r);
        for (auto& r : measure_solver(code, e, trials, seed + e))
            rows.push_back(r);
        for (auto& r : measure_decoders(code, e, trials, seed + e))
            decoder_rows.push_back(r);
    }
    rows.insert(rows.end(), decoder_rows.begin(), decoder_rows.end());
    const ReportFormat fmt = format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv;
    io.out << emit_report(rows, fmt);
    if (fmt == ReportFormat::Markdown) {
        const std::string cmp = emit_decoder_comparison(code, decoder_rows);
        if (!cmp.empty())
            io.out << "\nDecoder totals, measured and published (not expected to match):\n\n"
                   << cmp;
    }
    return Ok;
}

// Exhaustive (16,8) sweep plus count identities; prints one line per check.
inline int cmd_selftest(Streams io)
{
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        io.out << (ok ? "ok   " : "FAIL ") << name << '\n';
        failures += ok ? 0 : 1;
    };

    {
        const Code code = code_for(4, 3);
        SeededRng rng(2024);
        const std::size_t lo = 2 * code.t();
        const std::size_t slots = code.n() - lo;
        std::size_t instances = 0, bad = 0;
        for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > code.t())
                continue;
            const auto cw = encode_systematic(code, random_symbols(code, code.k(), rng));
            ErrorPattern pattern;
            for (std::size_t b = 0; b < slots; ++b)
                if (mask & (1u << b))
                    pattern.entries.push_back(
                        {lo + b, static_cast<FieldElement>(rng.in_range(1, code.n() - 1))});
            const auto rx = corrupt(code, cw, pattern);
            ++instances;
            try {
                const auto a = decode_first(code, rx);
                const auto b = decode_second(code, rx);
                if (a.codeword != cw || b.codeword != cw || !(a.error_pattern == pattern) ||
                    !(b.error_pattern == pattern))
                    ++bad;
            } catch (const Error&) {
                ++bad;
            }
        }
        report("(16,8) exhaustive position sweep, " + std::to_string(instances) + " patterns",
               bad == 0);
    }

    for (auto [m, mu] : {std::pair{8u, 5u}, std::pair{7u, 5u}}) {
        const Code code = code_for(m, mu);
        bool ok = true;
        for (std::size_t e = 1; e <= code.t(); ++e) {
            const auto rows = measure_solver(code, e, 2, 77 + e);
            const auto fc = formula_counts(code.t(), e);
            ok = ok && rows[0].mul == fc.ifdma.mul && rows[0].add == fc.ifdma.add &&
                 rows[1].mul <= 2 * e * e - 1;
        }
        report("(" + std::to_string(code.n()) + "," + std::to_string(code.k()) +
                   ") I-FDMA counts match the closed forms, S-ESBM within 2e^2-1",
               ok);
    }
    io.out << (failures == 0 ? "selftest passed\n" : "selftest failed\n");
    return failures == 0 ? Ok : UsageOrIo;
}

} // namespace detail

//! Entry point shared by the executable and the tests; args[0] is the
//! program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err)
{
    detail::Streams io{in, out, err};
    CLI::App app{"Reed-Solomon codec over GF(2^m) with additive-FFT decoders"};
    app.require_subcommand(1);

    unsigned m = 8, mu = 5, t0 = 0;
    std::string in_path = "-", out_path = "-", pattern_path, algo = "first", format = "csv";
    std::optional<std::size_t> errors;
    std::uint64_t seed = 0;
    bool unsafe = false, emit_counts = false;
    std::size_t e_max = 10, trials = 3;

    auto* enc = app.add_subcommand("encode", "systematically encode k data symbols");
    enc->add_option("--m", m, "field degree")->capture_default_str();
    enc->add_option("--mu", mu, "log2 of the redundancy n-k")->capture_default_str();
    enc->add_option("--in", in_path, "symbol file or raw bytes, '-' for stdin");
    enc->add_option("--out", out_path, "output symbol file, '-' for stdout");

    auto* cor = app.add_subcommand("corrupt", "inject errors into a codeword");
    auto* errs = cor->add_option("--errors", errors, "number of random errors");
    auto* pat = cor->add_option("--pattern", pattern_path, "file of '<index> <hex>' lines");
    errs->excludes(pat);
    pat->excludes(errs);
    cor->add_option("--seed", seed, "seed for positions and values");
    cor->add_option("--in", in_path);
    cor->add_option("--out", out_path);
    cor->add_flag("--unsafe-positions", unsafe, "allow indices below 2t");

    auto* dec = app.add_subcommand("decode", "repair a received word");
    dec->add_option("--algo", algo, "first or second")
        ->check(CLI::IsMember({"first", "second"}))
        ->capture_default_str();
    dec->add_option("--t0", t0, "even SI-FDMA length (default t)");
    dec->add_option("--in", in_path);
    dec->add_option("--out", out_path);
    dec->add_flag("--emit-counts", emit_counts, "write the operation counts as CSV");

    auto* bench = app.add_subcommand("bench-tables", "operation-count tables");
    bench->add_option("--m", m)->capture_default_str();
    bench->add_option("--mu", mu)->capture_default_str();
    bench->add_option("--e-max", e_max)->capture_default_str();
    bench->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    bench->add_option("--trials", trials, "random instances per e")->capture_default_str();
    bench->add_option("--seed", seed);

    auto* self = app.add_subcommand("selftest", "exhaustive small-code sweep and count checks");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : UsageOrIo;
    }

    try {
        if (enc->parsed())
            return detail::cmd_encode(io, m, mu, in_path, out_path);
        if (cor->parsed()) {
            if (!errors && pattern_path.empty()) {
                err << "corrupt: one of --errors or --pattern is required\n";
                return UsageOrIo;
            }
            return detail::cmd_corrupt(io, in_path, out_path, errors, pattern_path, seed, unsafe);
        }
        if (dec->parsed())
            return detail::cmd_decode(io, algo, t0, in_path, out_path, emit_counts);
        if (bench->parsed())
            return detail::cmd_bench(io, m, mu, e_max, format, std::max<std::size_t>(trials, 1),
                                     seed);
        if (self->parsed())
            return detail::cmd_selftest(io);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageOrIo;
    }
    return UsageOrIo;
}

} // namespace lchrs::cli
