#include <gtest/gtest.h>

#include <random>

#include "qpb/algebras.hpp"
#include "qpb/bundle.hpp"
#include "qpb/grammar.hpp"

using namespace qpb;

namespace {

Descriptor matrices(int n) {
    Descriptor d;
    d.name = "M";
    d.n = n;
    d.families = {Family::A};
    return d;
}

NcPoly random_poly(std::mt19937_64& rng, const std::vector<Letter>& letters) {
    std::uniform_int_distribution<int> len(0, 3), pick(0, int(letters.size()) - 1), c(-3, 3), e(-2, 2), terms(1, 4);
    NcPoly p;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        Word w;
        int l = len(rng);
        for (int k = 0; k < l; ++k) w.push_back(letters[pick(rng)]);
        p.add(w, Scalar(c(rng)) * Scalar::q(e(rng)) * Scalar::g(1, 2, e(rng)));
    }
    return p;
}

}  // namespace

TEST(FreeAlg, DeterminantInput) {
    NcPoly p = parse("a[1,1]*a[2,2] - q^-1*a[1,2]*a[2,1]", matrices(2));
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.coeff({a_(1, 1), a_(2, 2)}), Scalar(1));
    EXPECT_EQ(p.coeff({a_(1, 2), a_(2, 1)}), -Scalar::q(-1));
    // same as the minor built from the permutation sum
    EXPECT_EQ(p, qminor_free(matrices(2), {1, 2}, {1, 2}));
}

TEST(FreeAlg, Errors) {
    EXPECT_THROW(parse("", matrices(2)), ParseError);
    EXPECT_THROW(parse("a[3,1]", matrices(2)), ParseError);
    EXPECT_THROW(parse("a[1,1]*", matrices(2)), ParseError);
    EXPECT_THROW(parse("(a[1,1]", matrices(2)), ParseError);
    EXPECT_THROW(parse("x[1]", matrices(2)), ParseError);
    const Descriptor& P = cached(AlgebraFamily::P, 2)->pres().descriptor();
    EXPECT_THROW(parse("p[2,1]", P), ParseError);
    EXPECT_NO_THROW(parse("p[1,1]^-1*p[1,2]", P));
}

TEST(FreeAlg, TwoDigitIndices) {
    NcPoly p = parse("a[10,2]*a[1,10]", matrices(10));
    ASSERT_EQ(p.size(), 1u);
    Word w = p.terms().begin()->first;
    EXPECT_EQ(w, (Word{a_(10, 2), a_(1, 10)}));
    EXPECT_EQ(format(p), "a[10,2]*a[1,10]");
}

TEST(FreeAlg, Arithmetic) {
    Descriptor d = matrices(2);
    NcPoly x = parse("(a[1,1] + q*a[1,2])*(a[1,1] - a[2,1])", d);
    NcPoly y = parse("a[1,1]*a[1,1] - a[1,1]*a[2,1] + q*a[1,2]*a[1,1] - q*a[1,2]*a[2,1]", d);
    EXPECT_EQ(x, y);
    EXPECT_EQ(parse("a[1,1]^3", d), parse("a[1,1]*a[1,1]*a[1,1]", d));
    EXPECT_EQ(parse("2/3*g[1,2]^-1*a[2,2]", d), NcPoly(Word{a_(2, 2)}, Scalar(mpq_class(2, 3)) * Scalar::g(1, 2, -1)));
    EXPECT_TRUE(parse("a[1,1] - a[1,1]", d).is_zero());
}

TEST(FreeAlg, RoundTrip) {
    Descriptor d = matrices(2);
    std::vector<Letter> letters{a_(1, 1), a_(1, 2), a_(2, 1), a_(2, 2)};
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        NcPoly p = random_poly(rng, letters);
        EXPECT_EQ(parse(format(p), d), p) << format(p);
    }
    Descriptor loc = d;
    loc.families.insert(Family::InvD);
    loc.inverted = {1, 2};
    std::vector<Letter> more{a_(1, 1), dinv_(1), dinv_(2), a_(2, 1)};
    for (int i = 0; i < 100; ++i) {
        NcPoly p = random_poly(rng, more);
        EXPECT_EQ(parse(format(p), loc), p) << format(p);
    }
}

TEST(FreeAlg, InverseLettersHaveNegativeDegree) {
    EXPECT_EQ(word_degree({dinv_(1), a_(2, 1)}), 0);
    EXPECT_EQ(word_degree({pinv_(), pinv_(), p_(1, 2)}), -1);
    EXPECT_EQ(word_degree({a_(1, 1), a_(2, 2)}), 2);
}

TEST(FreeAlg, TensorProducts) {
    Word a{a_(1, 1)}, b{a_(1, 2)}, t{p_(1, 1)}, ti{pinv_()}, p{p_(1, 2)};
    TensorPoly at = TensorPoly::pure({NcPoly(a), NcPoly(t)});
    TensorPoly one = TensorPoly::pure({NcPoly(Scalar(1)), NcPoly(Scalar(1))});
    EXPECT_EQ(tensor_mul(at, one), at);
    EXPECT_EQ(tensor_mul(one, at), at);

    TensorPoly bp = TensorPoly::pure({NcPoly(b), NcPoly(p)});
    TensorPoly expect(2);
    expect.add({{a_(1, 1), a_(1, 2)}, {p_(1, 1), p_(1, 2)}}, 1);
    EXPECT_EQ(tensor_mul(at, bp), expect);

    // (b (x) t^-1 + a (x) p)^2 expands to four terms
    TensorPoly x(2);
    x.add({b, ti}, 1);
    x.add({a, p}, 1);
    TensorPoly sq = tensor_mul(x, x);
    TensorPoly hand(2);
    hand.add({{a_(1, 2), a_(1, 2)}, {pinv_(), pinv_()}}, 1);
    hand.add({{a_(1, 2), a_(1, 1)}, {pinv_(), p_(1, 2)}}, 1);
    hand.add({{a_(1, 1), a_(1, 2)}, {p_(1, 2), pinv_()}}, 1);
    hand.add({{a_(1, 1), a_(1, 1)}, {p_(1, 2), p_(1, 2)}}, 1);
    EXPECT_EQ(sq.terms().size(), 4u);
    EXPECT_EQ(sq, hand);

    EXPECT_THROW(tensor_mul(x, TensorPoly(3)), std::exception);
}

TEST(FreeAlg, TensorAssociativeOnSamples) {
    std::vector<Letter> letters{a_(1, 1), a_(1, 2), a_(2, 1)};
    std::mt19937_64 rng(9);
    auto rand_tensor = [&] {
        TensorPoly t(2);
        for (int i = 0; i < 2; ++i) t += TensorPoly::pure({random_poly(rng, letters), random_poly(rng, letters)});
        return t;
    };
    for (int i = 0; i < 50; ++i) {
        TensorPoly x = rand_tensor(), y = rand_tensor(), z = rand_tensor();
        EXPECT_EQ(tensor_mul(tensor_mul(x, y), z), tensor_mul(x, tensor_mul(y, z)));
    }
}
