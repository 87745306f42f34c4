#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace lchrs;

namespace {

std::shared_ptr<const Field> field_ptr(unsigned m) { return std::make_shared<const Field>(m); }

std::vector<FieldElement> random_vec(std::size_t len, std::size_t q, std::mt19937& g)
{
    std::vector<FieldElement> v(len);
    for (auto& x : v)
        x = static_cast<FieldElement>(g() % q);
    return v;
}

} // namespace

TEST(BasisPoly, DegreeAndTrim)
{
    LchPoly zero;
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero.degree(), -1);
    LchPoly p{3, 0, 5, 0, 0};
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.trimmed(), (LchPoly{3, 0, 5}));
    EXPECT_EQ(p.trimmed().padded(5), p);
}

TEST(LchBasis, BasisMatchesProductDefinition)
{
    for (unsigned m : {4u, 8u}) {
        const LchBasis b(field_ptr(m));
        const oracle::Gf g(b.field());
        OpCounter c;
        for (std::size_t i = 0; i < b.field().size(); i += (m == 8 ? 7 : 1))
            for (std::size_t x = 0; x < b.field().size(); x += (m == 8 ? 11 : 1))
                ASSERT_EQ(b.xbar_eval(i, FieldElement(x), c), g.xbar(i, FieldElement(x)))
                    << i << ' ' << x;
        for (unsigned j = 0; j < m; ++j)
            EXPECT_EQ(b.xbar_eval(std::size_t{1} << j, g.basis[j], c), 1);
    }
}

TEST(LchBasis, NonstandardBasis)
{
    const auto f = std::make_shared<const Field>(4, 0x13, std::vector<FieldElement>{3, 5, 9, 1});
    const LchBasis b(f);
    const oracle::Gf g(*f);
    OpCounter c;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t x = 0; x < 16; ++x)
            ASSERT_EQ(b.xbar_eval(i, FieldElement(x), c), g.xbar(i, FieldElement(x)));
    std::mt19937 gen(3);
    const auto coeffs = random_vec(16, 16, gen);
    const auto vals = b.fft(coeffs, 4, 0, c);
    for (std::size_t i = 0; i < 16; ++i)
        EXPECT_EQ(vals[i], g.lch_eval(coeffs, g.omega(i)));
}

TEST(LchBasis, FftMatchesNaiveEvaluation)
{
    for (unsigned m : {4u, 8u}) {
        const LchBasis b(field_ptr(m));
        const oracle::Gf g(b.field());
        std::mt19937 gen(11 + m);
        for (unsigned k = 0; k <= 4; ++k) {
            const std::size_t h = std::size_t{1} << k;
            for (FieldElement beta : {FieldElement(0), b.field().omega(h % b.field().size()), FieldElement(b.field().size() - 1)}) {
                const auto coeffs = random_vec(h, b.field().size(), gen);
                OpCounter c;
                const auto vals = b.fft(coeffs, k, beta, c);
                for (std::size_t i = 0; i < h; ++i)
                    ASSERT_EQ(vals[i], g.lch_eval(coeffs, g.omega(i) ^ beta))
                        << m << ' ' << k << ' ' << beta << ' ' << i;
            }
        }
    }
}

TEST(LchBasis, InverseUndoesForward)
{
    const LchBasis b(field_ptr(8));
    std::mt19937 gen(5);
    for (unsigned k = 0; k <= 6; ++k)
        for (int trial = 0; trial < 100; ++trial) {
            const auto coeffs = random_vec(std::size_t{1} << k, 256, gen);
            const FieldElement beta = static_cast<FieldElement>((gen() % 4) << k);
            OpCounter c;
            const auto vals = b.fft(coeffs, k, beta, c);
            ASSERT_EQ(b.ifft(vals, k, beta, c).coeffs, coeffs);
        }
}

TEST(LchBasis, TransformCosts)
{
    const LchBasis b(field_ptr(8));
    std::vector<FieldElement> v(32, 7);
    for (unsigned k : {1u, 3u, 5u}) {
        std::vector<FieldElement> in(std::size_t{1} << k, 9);
        OpCounter f, i;
        b.fft(in, k, 0, f);
        b.ifft(in, k, 0, i);
        const std::uint64_t expected = (std::uint64_t{k} << k) / 2;
        EXPECT_EQ(f.mul, expected);
        EXPECT_EQ(i.mul, expected);
        EXPECT_EQ(f.add, 2 * expected);
    }
    OpCounter c;
    EXPECT_THROW(b.fft(v, 4, 0, c), Error);
}

TEST(LchBasis, ExtendedInterpolation)
{
    for (unsigned m : {4u, 8u}) {
        const LchBasis b(field_ptr(m));
        const oracle::Gf g(b.field());
        std::mt19937 gen(21);
        for (unsigned k = 0; k < std::min(m, 5u); ++k) {
            const std::size_t h = std::size_t{1} << k;
            for (FieldElement beta : {FieldElement(0), FieldElement(2 * h % b.field().size())}) {
                const auto coeffs = random_vec(h + 1, b.field().size(), gen);
                std::vector<FieldElement> vals(h + 1);
                for (std::size_t i = 0; i <= h; ++i)
                    vals[i] = g.lch_eval(coeffs, g.omega(i) ^ beta);
                OpCounter c;
                EXPECT_EQ(b.extended_ifft(vals, k, beta, c).coeffs, coeffs) << m << ' ' << k;
            }
        }
    }
}

TEST(LchBasis, EvaluateAnyLength)
{
    const LchBasis b(field_ptr(8));
    const oracle::Gf g(b.field());
    std::mt19937 gen(8);
    for (std::size_t len : {1, 2, 3, 9, 17, 33}) {
        const LchPoly p(random_vec(len, 256, gen));
        for (FieldElement x : {0, 1, 77, 200}) {
            OpCounter c;
            EXPECT_EQ(b.evaluate(p, x, c), g.lch_eval(p.coeffs, x));
            EXPECT_EQ(c.mul, len - 1);
        }
    }
}

TEST(LchBasis, MonomialConversionAgreesPointwise)
{
    for (unsigned m : {4u, 8u}) {
        const LchBasis b(field_ptr(m));
        const oracle::Gf g(b.field());
        std::mt19937 gen(4);
        for (std::size_t len : {1, 2, 5, 16}) {
            const MonoPoly p(random_vec(len, b.field().size(), gen));
            const LchPoly f = b.mono_to_lch(p);
            ASSERT_EQ(f.size(), len);
            for (std::size_t x = 0; x < b.field().size(); x += 3)
                ASSERT_EQ(g.lch_eval(f.coeffs, FieldElement(x)), g.mono_eval(p.coeffs, FieldElement(x)));
            EXPECT_EQ(b.lch_to_mono(f), p);
        }
        for (std::size_t i = 0; i < 9; ++i) {
            const MonoPoly xm = b.xbar_monomial(i);
            EXPECT_EQ(xm.degree(), static_cast<long>(i));
            for (std::size_t x = 0; x < b.field().size(); x += 5)
                EXPECT_EQ(g.mono_eval(xm.coeffs, FieldElement(x)), g.xbar(i, FieldElement(x)));
        }
    }
}

TEST(LchBasis, ConversionSkipsStructuralEntries)
{
    const LchBasis b(field_ptr(8));
    OpCounter c;
    // 1 and x are Xbar_0 and a scalar multiple of Xbar_1: only x costs a product.
    b.mono_to_lch(MonoPoly{5, 9}, c);
    EXPECT_LE(c.mul, 1u);
    OpCounter big;
    b.mono_to_lch(MonoPoly(std::vector<FieldElement>(9, 3)), big);
    EXPECT_LE(big.mul, (8u * 8u + 3u * 8u) / 2u);
}
