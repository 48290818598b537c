#include "doctest.h"

#include <map>

#include "btlab/psl2.hpp"
#include "btlab/stats.hpp"

using namespace btlab;
using namespace btlab::psl2;
using field::Element;
using field::FieldSpec;
using field::Kind;

namespace {

// Independent oracle for the adjoint trace: conjugate the sl_2 basis
// (e, h, f) by the matrix with raw 2x2 arithmetic and read off the diagonal
// of the resulting 3x3 matrix. No shortcut through trace(g)^2 - 1.
using Raw = std::array<Element, 4>;

Raw raw_mul(const Raw& g, const Raw& h) {
    using field::add;
    using field::mul;
    return {add(mul(g[0], h[0]), mul(g[1], h[2])), add(mul(g[0], h[1]), mul(g[1], h[3])),
            add(mul(g[2], h[0]), mul(g[3], h[2])), add(mul(g[2], h[1]), mul(g[3], h[3]))};
}

Element adjoint_trace_oracle(const ProjectiveMatrix& g) {
    const FieldSpec& spec = g.spec();
    auto zero = Element::zero_at(spec, 2 * spec.precision);
    auto one = Element::from_integer(spec, 1);
    Raw rg{g.a(), g.b(), g.c(), g.d()};
    Raw rginv{g.d(), field::neg(g.b()), field::neg(g.c()), g.a()};
    Raw basis_e{zero, one, zero, zero};
    Raw basis_h{one, zero, zero, field::neg(one)};
    Raw basis_f{zero, zero, one, zero};
    auto ad = [&](const Raw& x) { return raw_mul(raw_mul(rg, x), rginv); };
    // e-coordinate is the (1,2) entry, h-coordinate the (1,1), f-coordinate the (2,1)
    auto d1 = ad(basis_e)[1];
    auto d2 = ad(basis_h)[0];
    auto d3 = ad(basis_f)[2];
    return field::add(field::add(d1, d2), d3);
}

ProjectiveMatrix random_mixed(const FieldSpec& spec, Rng& rng) {
    switch (rng.below(3)) {
        case 0: return sample_compact(spec, rng);
        case 1: return sample_hyperbolic(spec, rng);
        default: return sample_elliptic(spec, rng);
    }
}

}  // namespace

TEST_CASE("compose and invert") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        auto g = random_mixed(q5, rng);
        CHECK(eq_at_prec(compose(g, invert(g)), ProjectiveMatrix::identity(q5)));
        CHECK(eq_at_prec(compose(ProjectiveMatrix::identity(q5), g), g));
    }
    auto d1 = ProjectiveMatrix::diag_pi(q5, 1);
    CHECK(eq_at_prec(compose(d1, d1), ProjectiveMatrix::diag_pi(q5, 2)));
}

TEST_CASE("trace examples") {
    FieldSpec q5(Kind::Padic, 5);
    CHECK(field::eq_at_prec(trace(ProjectiveMatrix::identity(q5)), Element::from_integer(q5, 2)));

    auto t = trace(ProjectiveMatrix::diag_pi(q5, 1));
    CHECK(t.val() == -1);
    auto expected = field::add(Element::uniformizer_pow(q5, 1), Element::uniformizer_pow(q5, -1));
    CHECK(field::eq_at_prec(t, expected));

    auto rot = ProjectiveMatrix::from_integers(q5, 0, 1, -1, 0);
    CHECK(trace(rot).is_zero());
}

TEST_CASE("adjoint trace matches the explicit 3x3 oracle") {
    FieldSpec q5(Kind::Padic, 5);
    CHECK(field::eq_at_prec(trace_adjoint(ProjectiveMatrix::identity(q5)),
                            Element::from_integer(q5, 3)));

    auto d = ProjectiveMatrix::diag_pi(q5, 1);
    CHECK(field::eq_at_prec(trace_adjoint(d), adjoint_trace_oracle(d)));

    for (auto spec : {FieldSpec(Kind::Padic, 5), FieldSpec(Kind::LaurentSeries, 3)}) {
        Rng rng(17);
        for (int i = 0; i < 100; ++i) {
            auto g = random_mixed(spec, rng);
            CHECK(field::eq_at_prec(trace_adjoint(g), adjoint_trace_oracle(g)));
        }
    }
}

TEST_CASE("classification by trace valuation") {
    FieldSpec q5(Kind::Padic, 5);
    CHECK(classify(ProjectiveMatrix::from_integers(q5, 1, 1, 0, 1)).is_elliptic());
    auto cls = classify(ProjectiveMatrix::diag_pi(q5, 1));
    CHECK(cls.is_hyperbolic());
    CHECK(cls.translation_length == 2);
    CHECK(classify(ProjectiveMatrix::from_integers(q5, 0, 1, -1, 0)).is_elliptic());
}

TEST_CASE("classification refuses an undeterminable trace valuation") {
    FieldSpec q5(Kind::Padic, 5, 8);
    auto a = Element::uniformizer_pow(q5, -q5.precision);
    auto one = Element::from_integer(q5, 1);
    auto c = field::neg(field::add(one, field::mul(a, a)));
    ProjectiveMatrix g(a, one, c, field::neg(a));
    CHECK(trace(g).is_zero());
    CHECK(trace(g).known_prec() <= 0);
    CHECK_THROWS_AS(classify(g), PrecisionExhausted);
}

TEST_CASE("sign canonicalization") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        auto g = random_mixed(q5, rng);
        ProjectiveMatrix m(field::neg(g.a()), field::neg(g.b()), field::neg(g.c()),
                           field::neg(g.d()));
        CHECK(m.encode() == g.encode());
    }
    CHECK(ProjectiveMatrix::from_integers(q5, -1, 0, 0, -1).encode() ==
          ProjectiveMatrix::identity(q5).encode());
}

TEST_CASE("matrix encoding round trip") {
    for (auto spec : {FieldSpec(Kind::Padic, 5), FieldSpec(Kind::LaurentSeries, 3)}) {
        Rng rng(23);
        for (int i = 0; i < 30; ++i) {
            auto g = random_mixed(spec, rng);
            auto back = ProjectiveMatrix::decode(spec, g.encode());
            CHECK(back.encode() == g.encode());
            CHECK(eq_at_prec(back, g));
        }
    }
    FieldSpec q5(Kind::Padic, 5);
    CHECK_THROWS_AS(ProjectiveMatrix::decode(q5, "v:0;d:1;prec:32"), ParseError);
}

TEST_CASE("compact sampler is elliptic and uniform mod pi") {
    FieldSpec q3(Kind::Padic, 3);
    Rng rng(2024);
    std::map<int, std::int64_t> cells;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        auto g = sample_compact(q3, rng);
        CHECK(classify(g).is_elliptic());
        cells[mod_pi_code(g)] += 1;
    }
    CHECK(cells.size() == 12);  // |PSL2(F_3)|
    std::vector<std::int64_t> counts;
    for (auto& [code, n] : cells) counts.push_back(n);
    const double stat = stats::chi_square_uniform(counts);
    CHECK(stats::chi_square_pvalue(stat, static_cast<int>(counts.size()) - 1) > 0.01);
}

TEST_CASE("hyperbolic and elliptic samplers") {
    for (auto spec : {FieldSpec(Kind::Padic, 5), FieldSpec(Kind::LaurentSeries, 3)}) {
        Rng rng(5);
        for (int i = 0; i < 40; ++i) {
            auto h = sample_hyperbolic(spec, rng);
            CHECK(classify(h).is_hyperbolic());
            auto e = sample_elliptic(spec, rng);
            CHECK(classify(e).is_elliptic());
        }
        auto g = sample_hyperbolic_of_length(spec, rng, 3);
        CHECK(classify(g).translation_length == 6);
    }
}

TEST_CASE("conjugation invariance and power law") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(77);
    for (int i = 0; i < 30; ++i) {
        auto g = random_mixed(q5, rng);
        auto h = random_mixed(q5, rng);
        auto conj = compose(compose(h, g), invert(h));
        CHECK(classify(conj).type == classify(g).type);
        CHECK(classify(conj).translation_length == classify(g).translation_length);
        CHECK(field::eq_at_prec(trace_adjoint(conj), trace_adjoint(g)));
    }
    for (int i = 0; i < 10; ++i) {
        auto g = sample_hyperbolic(q5, rng, 0.5, 2);
        auto power = g;
        for (int n = 2; n <= 5; ++n) {
            power = compose(power, g);
            CHECK(classify(power).translation_length == n * classify(g).translation_length);
        }
        auto e = sample_compact(q5, rng);
        auto epow = e;
        for (int n = 2; n <= 5; ++n) {
            epow = compose(epow, e);
            CHECK(classify(epow).is_elliptic());
        }
    }
}

TEST_CASE("rotation sampler reduces to a fixed-point-free element") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        auto g = sample_compact_rotation(q5, rng);
        CHECK(classify(g).is_elliptic());
        const int t = field::add(g.a(), g.d()).digit_at(0);
        const int disc = ((t * t - 4) % 5 + 5) % 5;
        CHECK((disc == 2 || disc == 3));  // nonsquares mod 5
    }
}

TEST_CASE("conjugate by diag power stays in the group") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(9);
    auto g = sample_compact(q5, rng);
    for (int s : {1, 2, 3}) {
        auto c = conjugate_by_diag_pow(g, s);
        CHECK(classify(c).is_elliptic());
        CHECK(field::eq_at_prec(trace(c), trace(g)));
    }
}
