#include "doctest.h"

#include "btlab/bttree.hpp"
#include "btlab/nielsen.hpp"
#include "btlab/treeaut.hpp"

using namespace btlab;
using namespace btlab::nielsen;
using field::Element;
using field::FieldSpec;
using field::Kind;
using psl2::ProjectiveMatrix;

namespace {

using Tuple = MarkedTuple<ProjectiveMatrix>;

auto psl2_classify = [](const ProjectiveMatrix& g) { return psl2::classify(g); };

// Common-fixed-vertex probe at a fixed scan radius.
auto make_probe(int radius) {
    return [radius](const Tuple& t) {
        auto fixed = bttree::fixed_set_in_ball(t.entries.front(), radius);
        for (std::size_t i = 1; i < t.entries.size() && !fixed.empty(); ++i) {
            std::vector<bttree::LatticeVertex> next;
            for (const auto& v : fixed)
                if (bttree::act(t.entries[i], v) == v) next.push_back(v);
            fixed = std::move(next);
        }
        return !fixed.empty();
    };
}

}  // namespace

TEST_CASE("move application matches the defining formulas") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(1);
    auto a = psl2::sample_compact(q5, rng);
    auto b = psl2::sample_compact(q5, rng);
    auto c = psl2::sample_compact(q5, rng);
    Tuple t({a, b, c});

    auto r = apply(NielsenMove::r_plus(1, 2), t);
    CHECK(psl2::eq_at_prec(r.entries[0], a));
    CHECK(psl2::eq_at_prec(r.entries[1], psl2::compose(b, a)));
    CHECK(psl2::eq_at_prec(r.entries[2], c));

    auto l = apply(NielsenMove::l_minus(3, 2), t);
    CHECK(psl2::eq_at_prec(l.entries[1], psl2::compose(psl2::invert(c), b)));

    auto s = apply(NielsenMove::swap(1, 2), t);
    CHECK(psl2::eq_at_prec(s.entries[0], b));
    CHECK(psl2::eq_at_prec(s.entries[1], a));
    CHECK(psl2::eq_at_prec(s.entries[2], c));

    CHECK_THROWS_AS(apply(NielsenMove::r_plus(1, 4), t), IndexOutOfRange);
    CHECK_THROWS_AS(apply(NielsenMove::r_plus(0, 2), t), IndexOutOfRange);
}

TEST_CASE("every generator is undone by its inverse move") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(2);
    Tuple t({psl2::sample_elliptic(q5, rng), psl2::sample_hyperbolic(q5, rng),
             psl2::sample_compact(q5, rng)});
    for (const auto& m : generators(3)) {
        auto back = apply(m.inverse(), apply(m, t));
        for (int i = 0; i < 3; ++i) CHECK(psl2::eq_at_prec(back.entries[i], t.entries[i]));
    }
}

TEST_CASE("word text form round trips") {
    auto w = parse_word("R+ 1 2,T 1 3,L- 2 1");
    CHECK(w.size() == 3);
    CHECK(format_word(w) == "R+ 1 2,T 1 3,L- 2 1");
    CHECK(parse_word("").empty());
    CHECK_THROWS_AS(parse_move("Q 1 2"), ParseError);
    CHECK_THROWS_AS(parse_move("T 2 1"), ParseError);
    CHECK_THROWS_AS(parse_move("R+ 1"), ParseError);
    CHECK_THROWS_AS(parse_move("R+ 1 1"), ParseError);
}

TEST_CASE("commutator trace is invariant under every generator") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(3);

    auto g = psl2::sample_compact(q5, rng);
    Tuple idpair({g, ProjectiveMatrix::identity(q5)});
    CHECK(field::eq_at_prec(orbit_invariant_commutator_trace(idpair),
                            Element::from_integer(q5, 2)));

    for (int trial = 0; trial < 60; ++trial) {
        Tuple t({psl2::sample_compact(q5, rng), psl2::sample_compact(q5, rng)});
        auto before = orbit_invariant_commutator_trace(t);
        for (const auto& m : generators(2)) {
            auto after = orbit_invariant_commutator_trace(apply(m, t));
            CHECK(field::eq_at_prec(before, after));
        }
    }

    auto diag = ProjectiveMatrix::diag_pi(q5, 1);
    auto uni = ProjectiveMatrix::from_integers(q5, 1, 1, 0, 1);
    Tuple t({diag, uni});
    auto before = orbit_invariant_commutator_trace(t);
    auto after = orbit_invariant_commutator_trace(apply(NielsenMove::r_plus(1, 2), t));
    CHECK(field::eq_at_prec(before, after));

    Tuple triple({diag, uni, diag});
    CHECK_THROWS_AS(orbit_invariant_commutator_trace(triple), WrongArity);
}

TEST_CASE("reduction finds the single swap for a (hyperbolic, elliptic) pair") {
    FieldSpec q5(Kind::Padic, 5);
    auto h = ProjectiveMatrix::diag_pi(q5, 1);
    auto e = ProjectiveMatrix::from_integers(q5, 1, 1, 0, 1);

    Tuple already({e, h});
    CHECK(reduce_to_elliptic(already, psl2_classify, 1000).empty());

    Tuple t({h, e});
    auto word = reduce_to_elliptic(t, psl2_classify, 1000);
    REQUIRE(word.size() == 1);
    CHECK(word[0] == NielsenMove::swap(1, 2));
}

TEST_CASE("reduction postcondition on built tuples") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto e = psl2::sample_elliptic(q5, rng, 1);
        auto h = psl2::sample_hyperbolic(q5, rng, 0.5, 2);
        auto e2 = psl2::sample_elliptic(q5, rng, 1);
        Tuple t({psl2::compose(e, h), h, e2});
        auto word = reduce_to_elliptic(t, psl2_classify, 5000);
        auto reduced = apply_word(word, t);
        CHECK(psl2::classify(reduced.entries.front()).is_elliptic());
    }
}

TEST_CASE("reduction reports failure on a plausibly free tuple") {
    FieldSpec q5(Kind::Padic, 5);
    // two hyperbolics with far-apart axes: ping-pong dynamics, no elliptic in reach
    auto a = ProjectiveMatrix::diag_pi(q5, 2);
    auto b = psl2::conjugate_by_diag_pow(ProjectiveMatrix::from_integers(q5, 1, 1, 1, 2), 0);
    Tuple t({psl2::compose(a, b), psl2::compose(b, a)});
    CHECK_THROWS_AS(reduce_to_elliptic(t, psl2_classify, 300), ReductionFailed);
}

TEST_CASE("normalization strategies") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(10);
    auto probe = make_probe(6);

    auto e = psl2::sample_elliptic(q5, rng, 1);
    auto h = psl2::sample_hyperbolic(q5, rng, 0.5, 2);
    auto u = psl2::sample_compact(q5, rng);

    Tuple in_o({e, h, u});
    CHECK(normalize_to_O(in_o, psl2_classify, probe).empty());
    CHECK(membership_O(in_o, 1, 2, psl2_classify));

    Tuple swap_case({e, u, u, h});
    auto w = normalize_to_O(swap_case, psl2_classify, probe);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == NielsenMove::swap(2, 4));
    CHECK(membership_O(apply_word(w, swap_case), 1, 2, psl2_classify));

    CHECK_THROWS_AS(normalize_to_O(Tuple({h, e}), psl2_classify, probe), std::invalid_argument);
}

TEST_CASE("normalization uses the product step on all-elliptic tuples") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(12);
    auto probe = make_probe(6);
    int product_words = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto x1 = psl2::sample_compact_rotation(q5, rng);
        auto x2 = psl2::compose(psl2::compose(psl2::sample_conjugator(q5, rng, 2),
                                              psl2::sample_compact(q5, rng)),
                                psl2::invert(psl2::sample_conjugator(q5, rng, 0)));
        auto x3 = psl2::sample_elliptic(q5, rng, 2);
        Tuple t({x1, x2, x3});
        if (!psl2::classify(t.entries[1]).is_elliptic() || !psl2::classify(t.entries[2]).is_elliptic())
            continue;  // only the all-elliptic branch is under test
        try {
            auto w = normalize_to_O(t, psl2_classify, probe);
            auto moved = apply_word(w, t);
            CHECK(membership_O(moved, 1, 2, psl2_classify));
            if (!w.empty() && w[0].kind == MoveKind::RPlus) {
                ++product_words;
                // Serre step soundness: the scanned product really is hyperbolic
                auto prod = psl2::compose(t.entries[w[0].j - 1], t.entries[0]);
                CHECK(psl2::classify(prod).is_hyperbolic());
            }
        } catch (const CommonFixedVertex&) {
            CHECK(probe(t));
        }
    }
    CHECK(product_words > 0);
}

TEST_CASE("common fixed vertex and missing witness are distinguished") {
    FieldSpec q5(Kind::Padic, 5);
    Rng rng(14);
    // all entries in PSL2(O) fix the base vertex
    Tuple t({psl2::sample_compact(q5, rng), psl2::sample_compact(q5, rng),
             psl2::sample_compact(q5, rng)});
    bool all_elliptic_products = true;
    for (int i = 2; i <= 3 && all_elliptic_products; ++i)
        all_elliptic_products =
            psl2::classify(psl2::compose(t.entries[i - 1], t.entries[0])).is_elliptic();
    if (all_elliptic_products) {
        CHECK_THROWS_AS(normalize_to_O(t, psl2_classify, make_probe(4)), CommonFixedVertex);
        auto no_probe = [](const Tuple&) { return false; };
        CHECK_THROWS_AS(normalize_to_O(t, psl2_classify, no_probe), NoWitness);
    }
}

TEST_CASE("reduction works for tree portraits as well") {
    auto ctx = treeaut::make_context(2, 16);
    Rng rng(15);
    auto classify = [](const treeaut::TreePortrait& g) { return treeaut::classify_portrait(g); };
    auto h = treeaut::sample_hyperbolic_portrait(ctx, rng, 10, 1);
    auto e = treeaut::sample_elliptic_portrait(ctx, rng, 10, 1);
    MarkedTuple<treeaut::TreePortrait> t({h, e});
    auto word = reduce_to_elliptic(t, classify, 500);
    auto reduced = apply_word(word, t);
    CHECK(classify(reduced.entries.front()).is_elliptic());
}
