#include "doctest.h"

#include "btlab/field.hpp"
#include "btlab/rng.hpp"

using namespace btlab;
using namespace btlab::field;

namespace {

Element random_element(const FieldSpec& spec, Rng& rng, bool allow_zero = false) {
    if (allow_zero && rng.below(10) == 0) return Element::zero(spec);
    int v = static_cast<int>(rng.below(7)) - 3;
    int len = 1 + static_cast<int>(rng.below(spec.precision - 1));
    std::vector<int> d(len);
    d[0] = 1 + rng.digit(spec.p - 1);
    for (int i = 1; i < len; ++i) d[i] = rng.digit(spec.p);
    if (d.back() == 0) d.back() = 1;
    return Element::from_digits(spec, v, d, v + spec.precision);
}

}  // namespace

TEST_CASE("field spec validation") {
    CHECK_THROWS_AS(FieldSpec(Kind::Padic, 2, 32), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(Kind::LaurentSeries, 2, 32), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(Kind::Padic, 9, 32), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(Kind::Padic, 5, 3), std::invalid_argument);
    CHECK_NOTHROW(FieldSpec(Kind::Padic, 5, 4));
    CHECK_NOTHROW(FieldSpec(Kind::LaurentSeries, 3, 32));
}

TEST_CASE("addition examples") {
    FieldSpec q5(Kind::Padic, 5);
    auto two = Element::from_integer(q5, 2);
    auto three = Element::from_integer(q5, 3);
    auto sum = add(two, three);
    CHECK(sum.val() == 1);
    CHECK(sum.digits() == std::vector<int>{1});

    auto x = Element::from_digits(q5, -2, {3, 1, 4}, 30);
    CHECK(eq_at_prec(add(x, Element::zero(q5)), x));

    FieldSpec f3(Kind::LaurentSeries, 3);
    auto t = Element::uniformizer_pow(f3, 1);
    auto t2 = Element::uniformizer_pow(f3, 2);
    auto lhs = add(add(t, t2), neg(t));
    CHECK(lhs.val() == 2);
    CHECK(eq_at_prec(lhs, t2));
}

TEST_CASE("full cancellation yields zero at the min precision") {
    FieldSpec q5(Kind::Padic, 5);
    auto x = Element::from_digits(q5, -1, {2, 3}, 10);
    auto z = add(x, neg(x));
    CHECK(z.is_zero());
    CHECK(z.known_prec() == 10);
}

TEST_CASE("multiplication and inversion examples") {
    FieldSpec q5(Kind::Padic, 5);
    auto five = Element::from_integer(q5, 5);
    auto fifth = inv(five);
    CHECK(fifth.val() == -1);
    auto one = mul(five, fifth);
    CHECK(one.val() == 0);
    CHECK(eq_at_prec(one, Element::from_integer(q5, 1)));

    FieldSpec f3(Kind::LaurentSeries, 3);
    auto x = add(Element::uniformizer_pow(f3, 1), Element::uniformizer_pow(f3, 2));  // t + t^2
    auto y = inv(x);
    CHECK(y.val() == -1);
    // t^-1 (1 - t + t^2 - ...) has alternating digits 1, 2, 1, 2, ...
    for (int i = 0; i < 8; ++i) CHECK(y.digits()[i] == (i % 2 == 0 ? 1 : 2));
    CHECK(eq_at_prec(mul(y, x), Element::from_integer(f3, 1)));

    auto z = mul(Element::zero(q5), Element::uniformizer_pow(q5, 2));
    CHECK(z.is_zero());
    CHECK(z.known_prec() == q5.precision + 2);

    CHECK_THROWS_AS(inv(Element::zero(q5)), DivisionByZero);
}

TEST_CASE("valuation examples") {
    FieldSpec q5(Kind::Padic, 5);
    CHECK(valuation(Element::from_integer(q5, 50)) == 2);
    CHECK(valuation(Element::from_integer(q5, 1)) == 0);
    CHECK(!valuation(Element::zero(q5)).has_value());

    FieldSpec f3(Kind::LaurentSeries, 3);
    auto x = add(Element::uniformizer_pow(f3, 3), Element::uniformizer_pow(f3, 5));
    CHECK(valuation(x) == 3);
}

TEST_CASE("constant term lift") {
    FieldSpec f3(Kind::LaurentSeries, 3);
    auto two_plus_t = add(Element::from_integer(f3, 2), Element::uniformizer_pow(f3, 1));
    CHECK(eq_at_prec(constant_term_lift(two_plus_t), Element::from_integer(f3, 2)));
    CHECK(eq_at_prec(constant_term_lift(Element::from_integer(f3, 1)), Element::from_integer(f3, 1)));
    auto sparse = add(Element::from_integer(f3, 2), Element::uniformizer_pow(f3, 7));
    CHECK(eq_at_prec(constant_term_lift(sparse), Element::from_integer(f3, 2)));

    FieldSpec q5(Kind::Padic, 5);
    CHECK_THROWS_AS(constant_term_lift(Element::from_integer(q5, 2)), WrongField);
    CHECK_THROWS_AS(constant_term_lift(Element::uniformizer_pow(f3, 1)), NotAUnit);
}

TEST_CASE("field axioms at precision") {
    for (auto spec : {FieldSpec(Kind::Padic, 5), FieldSpec(Kind::LaurentSeries, 3)}) {
        Rng rng(42);
        for (int trial = 0; trial < 200; ++trial) {
            auto a = random_element(spec, rng);
            auto b = random_element(spec, rng);
            auto c = random_element(spec, rng);
            CHECK(eq_at_prec(add(add(a, b), c), add(a, add(b, c))));
            CHECK(eq_at_prec(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
            CHECK(eq_at_prec(mul(a, b), mul(b, a)));
            CHECK(eq_at_prec(mul(a, inv(a)), Element::from_integer(spec, 1)));
        }
    }
}

TEST_CASE("valuation laws") {
    for (auto spec : {FieldSpec(Kind::Padic, 7), FieldSpec(Kind::LaurentSeries, 5)}) {
        Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            auto a = random_element(spec, rng);
            auto b = random_element(spec, rng);
            CHECK(mul(a, b).val() == a.val() + b.val());
            auto s = add(a, b);
            if (!s.is_zero()) {
                CHECK(s.val() >= std::min(a.val(), b.val()));
                if (a.val() != b.val()) CHECK(s.val() == std::min(a.val(), b.val()));
            }
        }
    }
}

TEST_CASE("precision monotonicity") {
    for (auto spec : {FieldSpec(Kind::Padic, 5), FieldSpec(Kind::LaurentSeries, 3)}) {
        Rng rng(99);
        for (int trial = 0; trial < 200; ++trial) {
            auto a = random_element(spec, rng, true);
            auto b = random_element(spec, rng, true);
            CHECK(add(a, b).known_prec() <= std::min(a.known_prec(), b.known_prec()));
            if (!a.is_zero() && !b.is_zero()) {
                CHECK(mul(a, b).relative_prec() <= std::min(a.relative_prec(), b.relative_prec()));
            }
        }
    }
}

TEST_CASE("canonical encoding round trip") {
    for (auto spec : {FieldSpec(Kind::Padic, 5), FieldSpec(Kind::LaurentSeries, 3)}) {
        Rng rng(1);
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_element(spec, rng, true);
            auto back = Element::decode(spec, a.encode());
            CHECK(back.structurally_equal(a));
            CHECK(back.encode() == a.encode());
        }
    }
    FieldSpec q5(Kind::Padic, 5);
    CHECK(Element::zero_at(q5, 12).encode() == "v:inf;d:;prec:12");
    CHECK(Element::from_integer(q5, 5).encode() == "v:1;d:1;prec:33");
    CHECK_THROWS_AS(Element::decode(q5, "v:0;d:1,0;prec:9"), ParseError);
    CHECK_THROWS_AS(Element::decode(q5, "v:0;d:;prec:9"), ParseError);
    CHECK_THROWS_AS(Element::decode(q5, "garbage"), ParseError);
}

TEST_CASE("negation complements over the whole window") {
    FieldSpec q5(Kind::Padic, 5, 4);
    auto minus_one = neg(Element::from_integer(q5, 1));
    CHECK(minus_one.digits() == std::vector<int>{4, 4, 4, 4});
    CHECK(eq_at_prec(add(minus_one, Element::from_integer(q5, 1)), Element::zero(q5)));
}
