// Encodes a random message for the (256,224) code, injects errors, and
// repairs the word with both decoders, printing what each one spent.

#include "lchrs/lchrs.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace lchrs;
    const std::size_t errors = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 6;

    const Code code{CodeParams{}};
    if (errors > code.t()) {
        std::cerr << "at most " << code.t() << " errors are correctable\n";
        return 1;
    }
    SeededRng rng(42);
    const Codeword sent = encode_systematic(code, random_symbols(code, code.k(), rng));
    const ErrorPattern pattern = random_error_pattern(code, errors, rng);
    const Codeword received = corrupt(code, sent, pattern);

    std::cout << "injected:";
    for (const auto& e : pattern.entries)
        std::cout << ' ' << e.index << ':' << e.value;
    std::cout << '\n';

    for (bool second : {false, true}) {
        const DecodeResult r = second ? decode_second(code, received) : decode_first(code, received);
        std::cout << to_string(r.tag) << ": " << (r.codeword == sent ? "recovered" : "WRONG")
                  << ", " << r.counters.mul << " mul, " << r.counters.add << " add, "
                  << r.counters.inv << " inv\n";
    }
}
