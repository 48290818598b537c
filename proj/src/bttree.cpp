#include "btlab/bttree.hpp"

#include <algorithm>
#include <climits>
#include <unordered_set>

namespace btlab::bttree {

namespace {

// Digits of b are exact data of the vertex; give them headroom for arithmetic.
Element inflate(const Element& b, int target_prec) {
    if (b.is_zero()) return Element::zero_at(b.spec(), target_prec);
    return Element::from_digits(b.spec(), b.val(), b.digits(), target_prec);
}

// Exact relabeling of a vertex residue to modulus pi^m: keep digits below m.
// Raising the modulus is deliberate (appending a known-zero digit), so this
// is not a precision statement like truncate_prec.
Element residue_mod(const Element& b, int m) {
    if (b.is_zero()) return Element::zero_at(b.spec(), m);
    const int keep = std::min<int>(static_cast<int>(b.digits().size()), m - b.val());
    if (keep <= 0) return Element::zero_at(b.spec(), m);
    std::vector<int> d(b.digits().begin(), b.digits().begin() + keep);
    return Element::from_digits(b.spec(), b.val(), std::move(d), m);
}

int certified_val(const Element& x, const char* what) {
    if (x.is_zero()) throw PrecisionExhausted(std::string(what) + " is zero at precision");
    return x.val();
}

}  // namespace

LatticeVertex LatticeVertex::base(const FieldSpec& spec) {
    return LatticeVertex(0, Element::zero_at(spec, 0));
}

LatticeVertex LatticeVertex::make(int m, const Element& b_reduced) {
    if (b_reduced.known_prec() < m)
        throw PrecisionExhausted("vertex residue not known modulo pi^m");
    return LatticeVertex(m, residue_mod(b_reduced, m));
}

LatticeVertex LatticeVertex::child(int digit) const {
    const FieldSpec& s = spec();
    if (digit < 0 || digit >= s.p) throw IndexOutOfRange("child digit");
    if (digit == 0) return LatticeVertex(m_ + 1, residue_mod(b_, m_ + 1));
    std::vector<int> d;
    int v = m_;
    if (!b_.is_zero()) {
        v = b_.val();
        d = b_.digits();
        d.resize(m_ - v, 0);
    }
    d.push_back(digit);
    return LatticeVertex(m_ + 1, Element::from_digits(s, v, std::move(d), m_ + 1));
}

LatticeVertex LatticeVertex::parent() const {
    return LatticeVertex(m_ - 1, residue_mod(b_, m_ - 1));
}

std::vector<LatticeVertex> LatticeVertex::neighbors() const {
    std::vector<LatticeVertex> out;
    out.reserve(spec().p + 1);
    for (int j = 0; j < spec().p; ++j) out.push_back(child(j));
    out.push_back(parent());
    return out;
}

std::string LatticeVertex::encode() const { return "m:" + std::to_string(m_) + ";b:" + b_.encode(); }

LatticeVertex LatticeVertex::decode(const FieldSpec& spec, const std::string& text) {
    if (text.compare(0, 2, "m:") != 0) throw ParseError("vertex must start with 'm:'");
    std::size_t semi = text.find(";b:", 2);
    if (semi == std::string::npos) throw ParseError("vertex needs a ';b:' part");
    int m = 0;
    try {
        m = std::stoi(text.substr(2, semi - 2));
    } catch (const std::exception&) {
        throw ParseError("bad vertex exponent");
    }
    auto b = Element::decode(spec, text.substr(semi + 3));
    if (b.known_prec() != m) throw ParseError("vertex b must be a residue modulo pi^m");
    if (!b.is_zero() && b.val() + static_cast<int>(b.digits().size()) > m)
        throw ParseError("vertex b not reduced modulo pi^m");
    return LatticeVertex(m, b);
}

LatticeVertex act(const psl2::ProjectiveMatrix& g, const LatticeVertex& v) {
    if (g.spec() != v.spec()) throw WrongField("matrix and vertex over different fields");
    const FieldSpec& spec = g.spec();
    auto b = inflate(v.b(), v.m() + spec.precision);
    // columns of g * ((pi^m, 0), (b, 1))
    auto x1 = field::shift(g.a(), v.m());
    auto y1 = field::shift(g.c(), v.m());
    auto x2 = field::add(field::mul(g.a(), b), g.b());
    auto y2 = field::add(field::mul(g.c(), b), g.d());
    // pivot on the bottom-row entry of smaller valuation
    bool swap;
    if (y1.is_zero() && y2.is_zero())
        throw PrecisionExhausted("column reduction cannot determine a leading valuation");
    if (y2.is_zero())
        swap = y2.known_prec() > y1.val()
                   ? true
                   : throw PrecisionExhausted("column reduction cannot determine a leading valuation");
    else if (y1.is_zero())
        swap = y1.known_prec() > y2.val()
                   ? false
                   : throw PrecisionExhausted("column reduction cannot determine a leading valuation");
    else
        swap = y1.val() < y2.val();
    if (swap) {
        std::swap(x1, x2);
        std::swap(y1, y2);
    }
    // det considerations give the image exponent directly: the reduced form
    // ((pi^m', b'), (0, 1)) has m' = m - 2 v(y2) and b' = x2/y2 mod pi^m'.
    const int vy = certified_val(y2, "pivot");
    const int m_out = v.m() - 2 * vy;
    auto b0 = field::div(x2, y2);
    if (b0.known_prec() < m_out)
        throw PrecisionExhausted("image vertex class undeterminable at tracked precision");
    return LatticeVertex::make(m_out, b0);
}

long dist(const LatticeVertex& u, const LatticeVertex& v) {
    if (u.spec() != v.spec()) throw WrongField("vertices over different fields");
    const int guard = std::min(u.m(), v.m());
    const int head = std::max(u.m(), v.m()) + u.spec().precision;
    auto diff = field::sub(inflate(u.b(), head), inflate(v.b(), head));
    int mu = guard;
    if (!diff.is_zero()) mu = std::min(mu, diff.val());
    return static_cast<long>(u.m()) + v.m() - 2L * mu;
}

int max_radius(const FieldSpec& spec) { return spec.precision - 2; }

std::vector<LatticeVertex> ball(const LatticeVertex& center, int radius) {
    if (radius < 0) throw IndexOutOfRange("negative radius");
    if (radius > max_radius(center.spec()))
        throw RadiusTooLarge("radius " + std::to_string(radius) + " exceeds max " +
                             std::to_string(max_radius(center.spec())));
    std::vector<LatticeVertex> verts{center};
    std::unordered_set<std::string> seen{center.encode()};
    std::size_t layer_begin = 0;
    for (int r = 0; r < radius; ++r) {
        const std::size_t layer_end = verts.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (auto& nb : verts[i].neighbors())
                if (seen.insert(nb.encode()).second) verts.push_back(nb);
        }
        layer_begin = layer_end;
    }
    return verts;
}

long min_displacement(const psl2::ProjectiveMatrix& g, const std::vector<LatticeVertex>& verts,
                      bool parallel) {
    long best = LONG_MAX;
    if (parallel) {
#pragma omp parallel for reduction(min : best) schedule(static)
        for (std::size_t i = 0; i < verts.size(); ++i) {
            long d = dist(verts[i], act(g, verts[i]));
            best = std::min(best, d);
        }
    } else {
        for (const auto& v : verts) best = std::min(best, dist(v, act(g, v)));
    }
    return best;
}

namespace {

IsometryClass oracle_impl(const psl2::ProjectiveMatrix& g, bool parallel) {
    const FieldSpec& spec = g.spec();
    auto verts = std::vector<LatticeVertex>{LatticeVertex::base(spec)};
    std::unordered_set<std::string> seen{verts[0].encode()};
    std::size_t layer_begin = 0;
    long f = min_displacement(g, verts, parallel);
    for (int r = 0; f != 0; ++r) {
        if (r >= max_radius(spec))
            throw RadiusTooLarge("displacement not stabilized within max radius " +
                                 std::to_string(max_radius(spec)));
        const std::size_t layer_end = verts.size();
        std::vector<LatticeVertex> fresh;
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            for (auto& nb : verts[i].neighbors())
                if (seen.insert(nb.encode()).second) fresh.push_back(nb);
        }
        layer_begin = layer_end;
        const long f_next = std::min(f, min_displacement(g, fresh, parallel));
        for (auto& v : fresh) verts.push_back(std::move(v));
        if (f_next == f) break;  // d(x,gx) = l + 2 d(x, Min g): a plateau is the minimum
        f = f_next;
    }
    return f == 0 ? IsometryClass::elliptic() : IsometryClass::hyperbolic(f);
}

}  // namespace

IsometryClass displacement_oracle(const psl2::ProjectiveMatrix& g) { return oracle_impl(g, false); }

IsometryClass displacement_oracle_parallel(const psl2::ProjectiveMatrix& g) {
    return oracle_impl(g, true);
}

std::vector<LatticeVertex> fixed_set_in_ball(const psl2::ProjectiveMatrix& g, int radius) {
    std::vector<LatticeVertex> out;
    for (const auto& v : ball(LatticeVertex::base(g.spec()), radius))
        if (act(g, v) == v) out.push_back(v);
    return out;
}

}  // namespace btlab::bttree
