#include "btlab/psl2.hpp"

#include <sstream>

namespace btlab::psl2 {

namespace {

using Raw = std::array<Element, 4>;

Element exact_zero(const FieldSpec& spec) { return Element::zero_at(spec, 2 * spec.precision); }

Raw raw_mul(const Raw& g, const Raw& h) {
    using field::add;
    using field::mul;
    return {add(mul(g[0], h[0]), mul(g[1], h[2])), add(mul(g[0], h[1]), mul(g[1], h[3])),
            add(mul(g[2], h[0]), mul(g[3], h[2])), add(mul(g[2], h[1]), mul(g[3], h[3]))};
}

Raw raw_inv(const Raw& g) {
    // adjugate of a determinant-1 matrix
    return {g[3], field::neg(g[1]), field::neg(g[2]), g[0]};
}

Element raw_trace(const Raw& g) { return field::add(g[0], g[3]); }

bool entries_eq(const std::array<Element, 4>& x, const std::array<Element, 4>& y) {
    for (int i = 0; i < 4; ++i)
        if (!field::eq_at_prec(x[i], y[i])) return false;
    return true;
}

Element uniform_integral(const FieldSpec& spec, Rng& rng) {
    std::vector<int> d(spec.precision);
    for (auto& x : d) x = rng.digit(spec.p);
    return Element::from_digits(spec, 0, std::move(d), spec.precision);
}

}  // namespace

ProjectiveMatrix::ProjectiveMatrix(Element a, Element b, Element c, Element d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    const FieldSpec& spec = e_[0].spec();
    for (const auto& x : e_)
        if (x.spec() != spec) throw WrongField("matrix entries from different fields");
    auto det = field::sub(field::add(field::mul(e_[0], e_[3]), field::neg(field::mul(e_[1], e_[2]))),
                          Element::from_integer(spec, 1));
    if (!det.is_zero()) throw std::invalid_argument("matrix determinant is not 1 at the tracked precision");
    canonicalize();
}

void ProjectiveMatrix::canonicalize() {
    int pivot = -1;
    int best_v = 0;
    for (int i = 0; i < 4; ++i) {
        if (e_[i].is_zero()) continue;
        if (pivot == -1 || e_[i].val() < best_v) {
            pivot = i;
            best_v = e_[i].val();
        }
    }
    if (pivot == -1) throw PrecisionExhausted("all matrix entries are zero at precision");
    const int p = e_[0].spec().p;
    if (e_[pivot].digits()[0] > (p - 1) / 2)
        for (auto& x : e_) x = field::neg(x);
}

ProjectiveMatrix ProjectiveMatrix::identity(const FieldSpec& spec) {
    return from_integers(spec, 1, 0, 0, 1);
}

ProjectiveMatrix ProjectiveMatrix::from_integers(const FieldSpec& spec, long long a, long long b,
                                                 long long c, long long d) {
    auto lift = [&](long long n) {
        return n == 0 ? exact_zero(spec) : Element::from_integer(spec, n);
    };
    return ProjectiveMatrix(lift(a), lift(b), lift(c), lift(d));
}

ProjectiveMatrix ProjectiveMatrix::diag_pi(const FieldSpec& spec, int m) {
    auto z = Element::zero_at(spec, 2 * spec.precision + std::abs(m));
    return ProjectiveMatrix(Element::uniformizer_pow(spec, m), z, z,
                            Element::uniformizer_pow(spec, -m));
}

std::string ProjectiveMatrix::encode() const {
    return e_[0].encode() + "|" + e_[1].encode() + "|" + e_[2].encode() + "|" + e_[3].encode();
}

ProjectiveMatrix ProjectiveMatrix::decode(const FieldSpec& spec, const std::string& text) {
    std::array<std::string, 4> parts;
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t bar = i == 3 ? text.size() : text.find('|', pos);
        if (bar == std::string::npos) throw ParseError("matrix needs 4 '|'-separated entries");
        parts[i] = text.substr(pos, bar - pos);
        pos = bar + 1;
    }
    try {
        return ProjectiveMatrix(Element::decode(spec, parts[0]), Element::decode(spec, parts[1]),
                                Element::decode(spec, parts[2]), Element::decode(spec, parts[3]));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

ProjectiveMatrix compose(const ProjectiveMatrix& g, const ProjectiveMatrix& h) {
    if (g.spec() != h.spec()) throw WrongField("composing matrices over different fields");
    auto r = raw_mul({g.a(), g.b(), g.c(), g.d()}, {h.a(), h.b(), h.c(), h.d()});
    return ProjectiveMatrix(r[0], r[1], r[2], r[3]);
}

ProjectiveMatrix invert(const ProjectiveMatrix& g) {
    auto r = raw_inv({g.a(), g.b(), g.c(), g.d()});
    return ProjectiveMatrix(r[0], r[1], r[2], r[3]);
}

ProjectiveMatrix conjugate_by_diag_pow(const ProjectiveMatrix& g, int s) {
    return ProjectiveMatrix(g.a(), field::shift(g.b(), s), field::shift(g.c(), -s), g.d());
}

bool eq_at_prec(const ProjectiveMatrix& g, const ProjectiveMatrix& h) {
    std::array<Element, 4> x{g.a(), g.b(), g.c(), g.d()};
    std::array<Element, 4> y{h.a(), h.b(), h.c(), h.d()};
    if (entries_eq(x, y)) return true;
    std::array<Element, 4> yn{field::neg(h.a()), field::neg(h.b()), field::neg(h.c()),
                              field::neg(h.d())};
    return entries_eq(x, yn);
}

Element trace(const ProjectiveMatrix& g) { return field::add(g.a(), g.d()); }

Element trace_adjoint(const ProjectiveMatrix& g) {
    auto t = trace(g);
    return field::sub(field::mul(t, t), Element::from_integer(g.spec(), 1));
}

Element commutator_trace(const ProjectiveMatrix& a, const ProjectiveMatrix& b) {
    Raw ra{a.a(), a.b(), a.c(), a.d()};
    Raw rb{b.a(), b.b(), b.c(), b.d()};
    return raw_trace(raw_mul(raw_mul(ra, rb), raw_mul(raw_inv(ra), raw_inv(rb))));
}

IsometryClass classify(const ProjectiveMatrix& g) {
    auto t = trace(g);
    if (t.is_zero()) {
        if (t.known_prec() > 0) return IsometryClass::elliptic();
        throw PrecisionExhausted("trace is zero at nonpositive precision; valuation sign unknown");
    }
    const int v = t.val();
    if (v >= 0) return IsometryClass::elliptic();
    return IsometryClass::hyperbolic(-2L * v);
}

int mod_pi_code(const ProjectiveMatrix& g) {
    const int p = g.spec().p;
    std::array<int, 4> r{};
    const std::array<const Element*, 4> entries{&g.a(), &g.b(), &g.c(), &g.d()};
    for (int i = 0; i < 4; ++i) {
        const Element& x = *entries[i];
        if (!x.is_zero() && x.val() < 0) throw NotAUnit("matrix is not integral");
        r[i] = x.digit_at(0);
    }
    for (int i = 0; i < 4; ++i) {
        if (r[i] == 0) continue;
        if (r[i] > (p - 1) / 2)
            for (auto& x : r) x = (p - x) % p;
        break;
    }
    return ((r[0] * p + r[1]) * p + r[2]) * p + r[3];
}

ProjectiveMatrix sample_compact(const FieldSpec& spec, Rng& rng) {
    const int n = spec.precision;
    while (true) {
        auto a = uniform_integral(spec, rng);
        auto b = uniform_integral(spec, rng);
        const bool a_unit = !a.is_zero() && a.val() == 0;
        const bool b_unit = !b.is_zero() && b.val() == 0;
        if (!a_unit && !b_unit) continue;  // row not unimodular
        Element c0 = Element::zero_at(spec, n);
        Element d0 = Element::zero_at(spec, n);
        if (a_unit)
            d0 = field::inv(a);
        else
            c0 = field::neg(field::inv(b));
        auto s = uniform_integral(spec, rng);
        auto c = field::truncate_prec(field::add(c0, field::mul(s, a)), n);
        auto d = field::truncate_prec(field::add(d0, field::mul(s, b)), n);
        return ProjectiveMatrix(a, b, c, d);
    }
}

ProjectiveMatrix sample_compact_rotation(const FieldSpec& spec, Rng& rng) {
    const int p = spec.p;
    std::vector<bool> is_square(p, false);
    for (int x = 0; x < p; ++x) is_square[x * x % p] = true;
    while (true) {
        auto g = sample_compact(spec, rng);
        const int t = field::add(g.a(), g.d()).digit_at(0);
        const int disc = ((t * t - 4) % p + p) % p;
        if (!is_square[disc]) return g;  // no eigenvector over F_p
    }
}

ProjectiveMatrix sample_conjugator(const FieldSpec& spec, Rng& rng, int jmax) {
    const int j = static_cast<int>(rng.below(jmax + 1));
    auto h = compose(sample_compact(spec, rng), ProjectiveMatrix::diag_pi(spec, j));
    return compose(h, sample_compact(spec, rng));
}

ProjectiveMatrix sample_hyperbolic_of_length(const FieldSpec& spec, Rng& rng, int m) {
    while (true) {
        auto g = compose(compose(sample_compact(spec, rng), ProjectiveMatrix::diag_pi(spec, m)),
                         sample_compact(spec, rng));
        auto cls = classify(g);
        if (cls.is_hyperbolic() && cls.translation_length == 2L * m) return g;
    }
}

ProjectiveMatrix sample_hyperbolic(const FieldSpec& spec, Rng& rng, double length_prob,
                                   int length_cap) {
    return sample_hyperbolic_of_length(spec, rng, rng.geometric(length_prob, length_cap));
}

ProjectiveMatrix sample_elliptic(const FieldSpec& spec, Rng& rng, int jmax) {
    auto h = sample_conjugator(spec, rng, jmax);
    auto u = sample_compact(spec, rng);
    return compose(compose(h, u), invert(h));
}

}  // namespace btlab::psl2
