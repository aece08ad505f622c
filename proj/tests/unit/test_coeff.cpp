#include <gtest/gtest.h>

#include <map>
#include <random>

#include "qpb/scalar.hpp"

using namespace qpb;

namespace {

// Dense Laurent polynomials in q only, multiplied by convolution.
using Laurent = std::map<int, mpq_class>;

Laurent lmul(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b) out[i + j] += x * y;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Scalar from_laurent(const Laurent& l) {
    Scalar s;
    for (auto& [e, c] : l) s += Scalar(c) * Scalar::q(e);
    return s;
}

Laurent to_laurent(const Scalar& s) {
    Laurent out;
    for (auto& [m, c] : s.terms()) {
        EXPECT_TRUE(m.g.empty());
        out[m.q] = c;
    }
    return out;
}

Scalar random_scalar(std::mt19937_64& rng, bool phases) {
    std::uniform_int_distribution<int> e(-3, 3), c(-4, 4), len(0, 3);
    Scalar s;
    int terms = len(rng);
    for (int t = 0; t < terms; ++t) {
        Scalar m = Scalar(c(rng)) * Scalar::q(e(rng));
        if (phases) m *= Scalar::g(1, 2, e(rng)) * Scalar::g(2, 3, e(rng));
        s += m;
    }
    return s;
}

mpq_class phase_value(std::uint16_t code) {
    // distinct small rationals per symbol
    return mpq_class(phase_j(code) + 2, phase_k(code) + 5);
}

}  // namespace

TEST(Coeff, AdditiveInverse) {
    Scalar a = Scalar::q(-1) - Scalar::q(1);
    Scalar b = Scalar::q(1) - Scalar::q(-1);
    EXPECT_TRUE((a + b).is_zero());
}

TEST(Coeff, PhaseUnit) {
    EXPECT_TRUE((Scalar::g(1, 2) * Scalar::g(1, 2, -1)).is_one());
    EXPECT_EQ(Scalar::g(2, 1), Scalar::g(1, 2, -1));
    EXPECT_TRUE(Scalar::g(3, 3).is_one());
}

TEST(Coeff, ProductMatchesConvolution) {
    Scalar a = Scalar::q(-1) - Scalar::q(1);
    Laurent la{{-1, 1}, {1, -1}}, lq{{1, 1}};
    EXPECT_EQ(a * Scalar::q(1), from_laurent(lmul(la, lq)));
    EXPECT_EQ(a * Scalar::q(1), Scalar(1) - Scalar::q(2));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Scalar x = random_scalar(rng, false), y = random_scalar(rng, false);
        EXPECT_EQ(to_laurent(x * y), lmul(to_laurent(x), to_laurent(y)));
    }
}

TEST(Coeff, Specialize) {
    EXPECT_TRUE((Scalar::q(-1) - Scalar::q(1)).specialize(1, false).is_zero());
    EXPECT_EQ(Scalar::q(2).specialize(2, false), Scalar(4));
    Scalar s = (Scalar::q(-1) - Scalar::q(1)) * Scalar::g(1, 2);
    EXPECT_TRUE(s.specialize(1, true).is_zero());
    // phases survive when not sent to one
    EXPECT_EQ(Scalar::g(1, 2).specialize(3, false), Scalar::g(1, 2));
    EXPECT_THROW(Scalar::q(1).specialize(0, false), std::exception);
}

TEST(Coeff, RingAxiomsOnSamples) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Scalar a = random_scalar(rng, true), b = random_scalar(rng, true), c = random_scalar(rng, true);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(Coeff, EvaluationIsHomomorphism) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Scalar a = random_scalar(rng, true), b = random_scalar(rng, true);
        mpq_class qv(3, 2);
        EXPECT_EQ((a * b).evaluate(qv, phase_value), a.evaluate(qv, phase_value) * b.evaluate(qv, phase_value));
        EXPECT_EQ((a + b).evaluate(qv, phase_value), a.evaluate(qv, phase_value) + b.evaluate(qv, phase_value));
        Scalar sa = a.specialize(qv, true), sb = b.specialize(qv, true);
        EXPECT_EQ((a * b).specialize(qv, true), sa * sb);
        EXPECT_TRUE(sa.is_rational());
    }
}

TEST(Coeff, MonomialInverse) {
    Scalar m = Scalar(mpq_class(-2, 3)) * Scalar::q(4) * Scalar::g(1, 3, 2);
    EXPECT_TRUE((m * m.inverse()).is_one());
    EXPECT_THROW((Scalar::q(1) + Scalar(1)).inverse(), std::domain_error);
    EXPECT_EQ(m.pow(-2), m.inverse() * m.inverse());
}

TEST(Coeff, SubstitutePhases) {
    Scalar s = Scalar::g(1, 2, 3) + Scalar::q(1);
    Scalar t = s.substitute_phases([](std::uint16_t) { return Scalar::q(1); });
    EXPECT_EQ(t, Scalar::q(3) + Scalar::q(1));
}

TEST(Coeff, Printing) {
    EXPECT_EQ((Scalar::q(-1) - Scalar::q(1)).str(), "q^-1 - q");
    EXPECT_EQ(Scalar(0).str(), "0");
}
