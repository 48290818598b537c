#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btlab/errors.hpp"

namespace btlab::field {

enum class Kind { Padic, LaurentSeries };

// K is either Q_p or F_p((t)), residue field F_p with p an odd prime.
// `precision` is the number N of tracked digits relative to the leading one.
struct FieldSpec {
    Kind kind;
    int p;
    int precision;

    FieldSpec(Kind kind_, int p_, int precision_ = 32);

    bool operator==(const FieldSpec& o) const {
        return kind == o.kind && p == o.p && precision == o.precision;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string uniformizer_name() const { return kind == Kind::Padic ? std::to_string(p) : "t"; }
};

// Truncated-precision element of K. Canonical form:
//   zero:    no digits, known only to be 0 modulo pi^known_prec;
//   nonzero: digits d0..d{L-1} (little-endian in pi, d0 != 0, d{L-1} != 0)
//            at exponents v..v+L-1, with every digit in [v, known_prec)
//            listed (absent digits in that window are exactly 0).
// Two equal elements always have identical canonical encodings.
class Element {
  public:
    static Element zero(const FieldSpec& spec);                 // 0 mod pi^N
    static Element zero_at(const FieldSpec& spec, int known_prec);
    static Element from_integer(const FieldSpec& spec, long long n);
    static Element uniformizer_pow(const FieldSpec& spec, int m);
    static Element from_digits(const FieldSpec& spec, int v, std::vector<int> digits,
                               int known_prec);

    const FieldSpec& spec() const { return spec_; }
    bool is_zero() const { return zero_; }
    int known_prec() const { return known_prec_; }
    // Valuation of the leading digit; nonzero elements only.
    int val() const;
    int relative_prec() const { return known_prec_ - val(); }
    const std::vector<int>& digits() const { return digits_; }
    int digit_at(int exponent) const;

    bool structurally_equal(const Element& o) const {
        return zero_ == o.zero_ && v_ == o.v_ && known_prec_ == o.known_prec_ &&
               digits_ == o.digits_ && spec_ == o.spec_;
    }

    std::string encode() const;
    static Element decode(const FieldSpec& spec, const std::string& text);

  private:
    Element(const FieldSpec& spec, bool zero, int v, std::vector<int> digits, int known_prec);

    FieldSpec spec_;
    bool zero_;
    int v_;
    std::vector<int> digits_;
    int known_prec_;

    friend Element add(const Element&, const Element&);
    friend Element neg(const Element&);
    friend Element mul(const Element&, const Element&);
    friend Element inv(const Element&);
    friend Element truncate_prec(const Element&, int);
    friend Element shift(const Element&, int);
};

Element add(const Element& a, const Element& b);
Element neg(const Element& a);
Element sub(const Element& a, const Element& b);
Element mul(const Element& a, const Element& b);
Element inv(const Element& a);          // throws DivisionByZero on 0
Element div(const Element& a, const Element& b);

// Valuation relative to the uniformizer; nullopt is the +infinity sentinel for
// zero (whose known_prec bounds what "zero" means).
std::optional<int> valuation(const Element& a);

// Coefficient of t^0 viewed as the constant F_p -> K; Laurent units only.
Element constant_term_lift(const Element& a);

// Drop all digits at exponents >= known_prec (lossy reduction of knowledge).
Element truncate_prec(const Element& a, int known_prec);
// Exact multiplication by pi^s.
Element shift(const Element& a, int s);

// Values equal modulo pi^min(known_prec); the equality every arithmetic
// identity in this library is tested against.
bool eq_at_prec(const Element& a, const Element& b);

}  // namespace btlab::field
