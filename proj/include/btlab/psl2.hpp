#pragma once

#include <array>
#include <string>

#include "btlab/field.hpp"
#include "btlab/isometry.hpp"
#include "btlab/rng.hpp"

namespace btlab::psl2 {

using field::Element;
using field::FieldSpec;

// Element of PSL_2(K): a determinant-1 matrix identified with its negative.
// The stored representative is canonical: among the entries of minimal
// valuation (scanning a, b, c, d), the first one has its leading digit in
// {1, ..., (p-1)/2}, so equal group elements encode identically.
class ProjectiveMatrix {
  public:
    ProjectiveMatrix(Element a, Element b, Element c, Element d);

    static ProjectiveMatrix identity(const FieldSpec& spec);
    static ProjectiveMatrix from_integers(const FieldSpec& spec, long long a, long long b,
                                          long long c, long long d);
    // diag(pi^m, pi^-m)
    static ProjectiveMatrix diag_pi(const FieldSpec& spec, int m);

    const Element& a() const { return e_[0]; }
    const Element& b() const { return e_[1]; }
    const Element& c() const { return e_[2]; }
    const Element& d() const { return e_[3]; }
    const FieldSpec& spec() const { return e_[0].spec(); }

    std::string encode() const;
    static ProjectiveMatrix decode(const FieldSpec& spec, const std::string& text);

  private:
    std::array<Element, 4> e_;
    void canonicalize();
};

ProjectiveMatrix compose(const ProjectiveMatrix& g, const ProjectiveMatrix& h);
ProjectiveMatrix invert(const ProjectiveMatrix& g);
// t g t^-1 for t = diag(pi^s, 1); moves the fixed data of g a distance s down
// the standard apartment while staying inside PSL_2.
ProjectiveMatrix conjugate_by_diag_pow(const ProjectiveMatrix& g, int s);

bool eq_at_prec(const ProjectiveMatrix& g, const ProjectiveMatrix& h);

// Trace of the canonical representative (well defined up to sign).
Element trace(const ProjectiveMatrix& g);
// Trace of Ad(g) on sl_2; equals trace(g)^2 - 1 and is sign independent.
Element trace_adjoint(const ProjectiveMatrix& g);
// Trace of the honest SL_2 commutator a b a^-1 b^-1; independent of the sign
// choices in the lifts, so it is a genuine function on PSL_2 pairs.
Element commutator_trace(const ProjectiveMatrix& a, const ProjectiveMatrix& b);

// Elliptic iff v(trace) >= 0, hyperbolic with l = -2 v(trace) otherwise.
// The bttree displacement oracle independently checks this rule.
IsometryClass classify(const ProjectiveMatrix& g);

// Entries reduced mod pi, sign-canonicalized, packed in base p; integral
// matrices only. Used to compare empirical samples against PSL_2(F_p).
int mod_pi_code(const ProjectiveMatrix& g);

// Haar-uniform on PSL_2(O) truncated at precision N: uniform unimodular row
// (a, b), then a uniform solution of ad - bc = 1 modulo pi^N.
ProjectiveMatrix sample_compact(const FieldSpec& spec, Rng& rng);
// Compact sample whose reduction mod pi has irreducible characteristic
// polynomial; such an element fixes exactly the base vertex.
ProjectiveMatrix sample_compact_rotation(const FieldSpec& spec, Rng& rng);
// Short hyperbolic-times-compact word k1 diag(pi^j, pi^-j) k2 with j uniform
// in [0, jmax]; used to conjugate samples away from the base vertex.
ProjectiveMatrix sample_conjugator(const FieldSpec& spec, Rng& rng, int jmax);
// k1 diag(pi^m, pi^-m) k2 resampled until classify reports l = 2m, with m
// geometric(length_prob) capped at length_cap.
ProjectiveMatrix sample_hyperbolic(const FieldSpec& spec, Rng& rng, double length_prob = 0.5,
                                   int length_cap = 4);
ProjectiveMatrix sample_hyperbolic_of_length(const FieldSpec& spec, Rng& rng, int m);
// Conjugate of a compact sample; always elliptic.
ProjectiveMatrix sample_elliptic(const FieldSpec& spec, Rng& rng, int jmax = 2);

inline std::string nielsen_key(const ProjectiveMatrix& g) { return g.encode(); }

}  // namespace btlab::psl2
