#include "btlab/field.hpp"

#include <algorithm>
#include <sstream>

namespace btlab::field {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int mod_inverse(int a, int p) {
    // extended Euclid on (a, p), p prime
    int t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        int q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    return t < 0 ? t + p : t;
}

// Digit-window helpers. A window is a dense digit vector of fixed length
// representing a unit part (or a partial sum) modulo pi^len relative to some
// base exponent. Padic windows carry, Laurent windows are coefficientwise.

void win_carry(std::vector<long long>& w, int p) {
    long long carry = 0;
    for (auto& d : w) {
        d += carry;
        carry = d / p;
        d -= carry * p;
        if (d < 0) {
            d += p;
            carry -= 1;
        }
    }
}

std::vector<long long> win_mul(const std::vector<long long>& a, const std::vector<long long>& b,
                               std::size_t len, Kind kind, int p) {
    std::vector<long long> out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    }
    if (kind == Kind::Padic)
        win_carry(out, p);
    else
        for (auto& d : out) d %= p;
    return out;
}

}  // namespace

FieldSpec::FieldSpec(Kind kind_, int p_, int precision_) : kind(kind_), p(p_), precision(precision_) {
    if (!is_prime(p) || p < 3)
        throw std::invalid_argument("residue characteristic must be an odd prime, got " + std::to_string(p));
    if (precision < 4)
        throw std::invalid_argument("precision must be at least 4, got " + std::to_string(precision));
}

Element::Element(const FieldSpec& spec, bool zero, int v, std::vector<int> digits, int known_prec)
    : spec_(spec), zero_(zero), v_(v), digits_(std::move(digits)), known_prec_(known_prec) {}

Element Element::zero(const FieldSpec& spec) { return zero_at(spec, spec.precision); }

Element Element::zero_at(const FieldSpec& spec, int known_prec) {
    return Element(spec, true, 0, {}, known_prec);
}

Element Element::from_digits(const FieldSpec& spec, int v, std::vector<int> digits, int known_prec) {
    // canonicalize: strip leading/trailing zeros, validate ranges
    std::size_t first = 0;
    while (first < digits.size() && digits[first] == 0) ++first;
    if (first == digits.size()) return zero_at(spec, known_prec);
    std::size_t last = digits.size();
    while (last > first && digits[last - 1] == 0) --last;
    std::vector<int> d(digits.begin() + first, digits.begin() + last);
    int vv = v + static_cast<int>(first);
    for (int x : d)
        if (x < 0 || x >= spec.p) throw std::invalid_argument("digit out of range");
    if (vv + static_cast<int>(d.size()) > known_prec)
        throw std::invalid_argument("digits extend beyond known precision");
    return Element(spec, false, vv, std::move(d), known_prec);
}

Element Element::from_integer(const FieldSpec& spec, long long n) {
    if (n == 0) return zero(spec);
    if (spec.kind == Kind::LaurentSeries) {
        long long r = n % spec.p;
        if (r < 0) r += spec.p;
        if (r == 0) return zero(spec);
        return Element(spec, false, 0, {static_cast<int>(r)}, spec.precision);
    }
    bool negate = n < 0;
    unsigned long long u = negate ? -static_cast<unsigned long long>(n) : n;
    int v = 0;
    while (u % spec.p == 0) {
        u /= spec.p;
        ++v;
    }
    std::vector<int> d;
    while (u != 0 && static_cast<int>(d.size()) < spec.precision) {
        d.push_back(static_cast<int>(u % spec.p));
        u /= spec.p;
    }
    Element e(spec, false, v, std::move(d), v + spec.precision);
    return negate ? neg(e) : e;
}

Element Element::uniformizer_pow(const FieldSpec& spec, int m) {
    return Element(spec, false, m, {1}, m + spec.precision);
}

int Element::val() const {
    if (zero_) throw PrecisionExhausted("valuation of zero-at-precision element");
    return v_;
}

int Element::digit_at(int exponent) const {
    if (zero_) return 0;
    if (exponent < v_ || exponent >= v_ + static_cast<int>(digits_.size())) return 0;
    return digits_[exponent - v_];
}

Element truncate_prec(const Element& a, int known_prec) {
    if (a.zero_) return Element::zero_at(a.spec_, std::min(a.known_prec_, known_prec));
    if (known_prec >= a.known_prec_) return a;
    if (a.v_ >= known_prec) return Element::zero_at(a.spec_, known_prec);
    std::vector<int> d(a.digits_.begin(),
                       a.digits_.begin() + std::min<std::size_t>(a.digits_.size(), known_prec - a.v_));
    return Element::from_digits(a.spec_, a.v_, std::move(d), known_prec);
}

Element shift(const Element& a, int s) {
    if (a.zero_) return Element::zero_at(a.spec_, a.known_prec_ + s);
    return Element(a.spec_, false, a.v_ + s, a.digits_, a.known_prec_ + s);
}

Element add(const Element& a, const Element& b) {
    if (a.spec_ != b.spec_) throw WrongField("operands from different fields");
    const int hi = std::min(a.known_prec_, b.known_prec_);
    if (a.zero_ && b.zero_) return Element::zero_at(a.spec_, hi);
    if (a.zero_) return truncate_prec(b, hi);
    if (b.zero_) return truncate_prec(a, hi);
    const int lo = std::min(a.v_, b.v_);
    const int p = a.spec_.p;
    std::vector<int> out(hi - lo, 0);
    long long carry = 0;
    for (int e = lo; e < hi; ++e) {
        long long s = a.digit_at(e) + b.digit_at(e) + carry;
        if (a.spec_.kind == Kind::Padic) {
            carry = s / p;
            s -= carry * p;
        } else {
            s %= p;
        }
        out[e - lo] = static_cast<int>(s);
    }
    // a carry past `hi` lands outside the known window and is dropped
    return Element::from_digits(a.spec_, lo, std::move(out), hi);
}

Element neg(const Element& a) {
    if (a.zero_) return a;
    const int p = a.spec_.p;
    if (a.spec_.kind == Kind::LaurentSeries) {
        std::vector<int> d(a.digits_);
        for (auto& x : d) x = (p - x) % p;
        return Element(a.spec_, false, a.v_, std::move(d), a.known_prec_);
    }
    // -x = complement over the whole known window: first digit p - d0,
    // later digits p - 1 - d
    const int len = a.known_prec_ - a.v_;
    std::vector<int> d(len);
    d[0] = p - a.digits_[0];
    for (int i = 1; i < len; ++i) d[i] = p - 1 - a.digit_at(a.v_ + i);
    return Element::from_digits(a.spec_, a.v_, std::move(d), a.known_prec_);
}

Element sub(const Element& a, const Element& b) { return add(a, neg(b)); }

Element mul(const Element& a, const Element& b) {
    if (a.spec_ != b.spec_) throw WrongField("operands from different fields");
    if (a.zero_ && b.zero_) return Element::zero_at(a.spec_, a.known_prec_ + b.known_prec_);
    if (a.zero_) return Element::zero_at(a.spec_, a.known_prec_ + b.v_);
    if (b.zero_) return Element::zero_at(a.spec_, b.known_prec_ + a.v_);
    const int rel = std::min(a.relative_prec(), b.relative_prec());
    if (rel <= 0) throw PrecisionExhausted("no relative precision left in product");
    std::vector<long long> wa(a.digits_.begin(), a.digits_.end());
    std::vector<long long> wb(b.digits_.begin(), b.digits_.end());
    auto prod = win_mul(wa, wb, rel, a.spec_.kind, a.spec_.p);
    std::vector<int> d(prod.begin(), prod.end());
    return Element::from_digits(a.spec_, a.v_ + b.v_, std::move(d), a.v_ + b.v_ + rel);
}

Element inv(const Element& a) {
    if (a.zero_) throw DivisionByZero();
    const int rel = a.relative_prec();
    const int p = a.spec_.p;
    std::vector<long long> u(a.digits_.begin(), a.digits_.end());
    u.resize(rel, 0);
    // Newton iteration w <- w(2 - uw), doubling the number of correct digits
    std::vector<long long> w{mod_inverse(static_cast<int>(u[0]), p)};
    int good = 1;
    while (good < rel) {
        good = std::min(2 * good, rel);
        auto uw = win_mul(u, w, good, a.spec_.kind, p);
        std::vector<long long> corr(good, 0);
        corr[0] = 2 - uw[0];
        for (int i = 1; i < good; ++i) corr[i] = -uw[i];
        if (a.spec_.kind == Kind::Padic)
            win_carry(corr, p);
        else
            for (auto& x : corr) x = ((x % p) + p) % p;
        w = win_mul(w, corr, good, a.spec_.kind, p);
    }
    std::vector<int> d(w.begin(), w.end());
    return Element::from_digits(a.spec_, -a.v_, std::move(d), -a.v_ + rel);
}

Element div(const Element& a, const Element& b) { return mul(a, inv(b)); }

std::optional<int> valuation(const Element& a) {
    if (a.is_zero()) return std::nullopt;
    return a.val();
}

Element constant_term_lift(const Element& a) {
    if (a.spec().kind != Kind::LaurentSeries) throw WrongField("constant term lift needs F_p((t))");
    if (a.is_zero() || a.val() != 0) throw NotAUnit("constant term lift needs valuation 0");
    return Element::from_integer(a.spec(), a.digits()[0]);
}

bool eq_at_prec(const Element& a, const Element& b) { return sub(a, b).is_zero(); }

std::string Element::encode() const {
    std::ostringstream os;
    if (zero_) {
        os << "v:inf;d:;prec:" << known_prec_;
        return os.str();
    }
    os << "v:" << v_ << ";d:";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) os << ',';
        os << digits_[i];
    }
    os << ";prec:" << known_prec_;
    return os.str();
}

Element Element::decode(const FieldSpec& spec, const std::string& text) {
    auto expect = [&](const std::string& s, std::size_t& pos, const std::string& tag) {
        if (text.compare(pos, tag.size(), tag) != 0) throw ParseError("expected '" + tag + "' in element '" + s + "'");
        pos += tag.size();
    };
    std::size_t pos = 0;
    expect(text, pos, "v:");
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos) throw ParseError("malformed element '" + text + "'");
    std::string vstr = text.substr(pos, semi - pos);
    pos = semi + 1;
    expect(text, pos, "d:");
    semi = text.find(';', pos);
    if (semi == std::string::npos) throw ParseError("malformed element '" + text + "'");
    std::string dstr = text.substr(pos, semi - pos);
    pos = semi + 1;
    expect(text, pos, "prec:");
    int prec = 0;
    try {
        prec = std::stoi(text.substr(pos));
    } catch (const std::exception&) {
        throw ParseError("bad precision in element '" + text + "'");
    }
    if (vstr == "inf") {
        if (!dstr.empty()) throw ParseError("zero element must have no digits");
        return zero_at(spec, prec);
    }
    int v = 0;
    try {
        v = std::stoi(vstr);
    } catch (const std::exception&) {
        throw ParseError("bad valuation in element '" + text + "'");
    }
    std::vector<int> digits;
    std::istringstream ds(dstr);
    std::string tok;
    while (std::getline(ds, tok, ',')) {
        try {
            digits.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ParseError("bad digit '" + tok + "'");
        }
    }
    if (digits.empty()) throw ParseError("nonzero element needs at least one digit");
    if (digits.front() == 0 || digits.back() == 0) throw ParseError("element encoding not canonical");
    try {
        return from_digits(spec, v, std::move(digits), prec);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

}  // namespace btlab::field
