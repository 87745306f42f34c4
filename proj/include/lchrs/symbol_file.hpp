#pragma once

#include "lchrs/rs_codec.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lchrs {

//! "RSFD1 m=<m> mu=<mu> len=<count>\n" followed by the symbols: one byte each
//! for m <= 8, two bytes little-endian each above that.
struct SymbolFile {
    unsigned m = 8;
    unsigned mu = 5;
    std::vector<FieldElement> symbols;

    friend bool operator==(const SymbolFile&, const SymbolFile&) = default;
};

inline constexpr std::string_view symbol_file_magic = "RSFD1 ";

inline bool looks_like_symbol_file(std::string_view bytes)
{
    return bytes.substr(0, symbol_file_magic.size()) == symbol_file_magic;
}

inline std::size_t symbol_width(unsigned m) { return m <= 8 ? 1 : 2; }

inline std::string format_symbol_file(const SymbolFile& file)
{
    std::string out = "RSFD1 m=" + std::to_string(file.m) + " mu=" + std::to_string(file.mu) +
                      " len=" + std::to_string(file.symbols.size()) + "\n";
    for (FieldElement s : file.symbols) {
        out.push_back(static_cast<char>(s & 0xFF));
        if (symbol_width(file.m) == 2)
            out.push_back(static_cast<char>(s >> 8));
    }
    return out;
}

namespace detail {

inline unsigned parse_field(std::string_view token, std::string_view key)
{
    if (token.substr(0, key.size()) != key)
        throw Error(ErrorCode::MalformedInput, "symbol file header is malformed");
    token.remove_prefix(key.size());
    unsigned long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        throw Error(ErrorCode::MalformedInput, "symbol file header is malformed");
    return static_cast<unsigned>(value);
}

} // namespace detail

inline SymbolFile parse_symbol_file(std::string_view bytes)
{
    if (!looks_like_symbol_file(bytes))
        throw Error(ErrorCode::MalformedInput, "missing symbol file header");
    const std::size_t eol = bytes.find('\n');
    if (eol == std::string_view::npos)
        throw Error(ErrorCode::MalformedInput, "unterminated symbol file header");
    std::istringstream header{std::string(bytes.substr(0, eol))};
    std::string magic, m_tok, mu_tok, len_tok, extra;
    header >> magic >> m_tok >> mu_tok >> len_tok;
    if (!header || (header >> extra))
        throw Error(ErrorCode::MalformedInput, "symbol file header is malformed");

    SymbolFile file;
    file.m = detail::parse_field(m_tok, "m=");
    file.mu = detail::parse_field(mu_tok, "mu=");
    const std::size_t len = detail::parse_field(len_tok, "len=");
    if (file.m < 2 || file.m > 16)
        throw Error(ErrorCode::MalformedInput, "symbol file m outside [2, 16]");

    const std::string_view body = bytes.substr(eol + 1);
    const std::size_t width = symbol_width(file.m);
    if (body.size() != len * width)
        throw Error(ErrorCode::MalformedInput, "symbol file body length differs from len");
    file.symbols.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        unsigned v = static_cast<unsigned char>(body[i * width]);
        if (width == 2)
            v |= static_cast<unsigned>(static_cast<unsigned char>(body[i * width + 1])) << 8;
        if (v >= (1u << file.m))
            throw Error(ErrorCode::MalformedInput, "symbol outside the field");
        file.symbols[i] = static_cast<FieldElement>(v);
    }
    return file;
}

//! One "<index> <value-hex>" per line; blank lines and '#' comments skipped.
inline ErrorPattern parse_pattern(std::string_view text)
{
    ErrorPattern pattern;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::string idx_tok, val_tok, extra;
        if (!(ls >> idx_tok))
            continue;
        if (!(ls >> val_tok) || (ls >> extra))
            throw Error(ErrorCode::MalformedInput, "pattern line must be '<index> <hex>'");
        std::size_t index = 0;
        unsigned value = 0;
        auto r1 = std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), index);
        std::string_view hex = val_tok;
        if (hex.substr(0, 2) == "0x" || hex.substr(0, 2) == "0X")
            hex.remove_prefix(2);
        auto r2 = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
        if (r1.ec != std::errc() || r1.ptr != idx_tok.data() + idx_tok.size() ||
            r2.ec != std::errc() || r2.ptr != hex.data() + hex.size() || hex.empty())
            throw Error(ErrorCode::MalformedInput, "pattern line must be '<index> <hex>'");
        if (value == 0 || value > 0xFFFF)
            throw Error(ErrorCode::MalformedInput, "pattern values must be nonzero field elements");
        for (const auto& e : pattern.entries)
            if (e.index == index)
                throw Error(ErrorCode::MalformedInput, "duplicate pattern index");
        pattern.entries.push_back({index, static_cast<FieldElement>(value)});
    }
    pattern.normalize();
    return pattern;
}

inline std::string format_pattern(const ErrorPattern& pattern)
{
    std::ostringstream os;
    for (const auto& e : pattern.entries)
        os << e.index << ' ' << std::hex << e.value << std::dec << '\n';
    return os.str();
}

} // namespace lchrs
