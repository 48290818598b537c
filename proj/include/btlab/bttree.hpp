#pragma once

#include <string>
#include <vector>

#include "btlab/field.hpp"
#include "btlab/isometry.hpp"
#include "btlab/psl2.hpp"

namespace btlab::bttree {

using field::Element;
using field::FieldSpec;

// Vertex of the Bruhat-Tits tree of PSL_2(K): the homothety class of an
// O-lattice in K^2. Each class contains exactly one lattice whose projection
// to the second coordinate is O and whose intersection with the first axis is
// pi^m O; the class is stored as that pair (m, b) with b the off-axis column
// reduced modulo pi^m. m ranges over all of Z: the classes pi^-n O + O need
// m = -n, so the canonical exponent cannot be normalized to be >= 0.
class LatticeVertex {
  public:
    static LatticeVertex base(const FieldSpec& spec);
    static LatticeVertex make(int m, const Element& b_reduced);

    int m() const { return m_; }
    const Element& b() const { return b_; }
    const FieldSpec& spec() const { return b_.spec(); }

    // Tree structure in closed form: children append one digit at exponent m,
    // the parent forgets the digit at exponent m-1.
    LatticeVertex child(int digit) const;
    LatticeVertex parent() const;
    // Children by digit value, then the parent: q+1 neighbors, canonical order.
    std::vector<LatticeVertex> neighbors() const;

    bool operator==(const LatticeVertex& o) const { return m_ == o.m_ && b_.structurally_equal(o.b_); }
    bool operator!=(const LatticeVertex& o) const { return !(*this == o); }

    std::string encode() const;
    static LatticeVertex decode(const FieldSpec& spec, const std::string& text);

  private:
    LatticeVertex(int m, Element b) : m_(m), b_(std::move(b)) {}
    int m_;
    Element b_;  // known_prec pinned to m; digits live below exponent m
};

// Image of a vertex under the lattice action; exact column reduction.
LatticeVertex act(const psl2::ProjectiveMatrix& g, const LatticeVertex& v);

// Combinatorial distance: difference of the invariant-factor valuations of
// the change-of-basis matrix, here in closed form from the canonical data.
long dist(const LatticeVertex& u, const LatticeVertex& v);

int max_radius(const FieldSpec& spec);  // N - 2

// Ball in canonical BFS order; refuses radius > max_radius.
std::vector<LatticeVertex> ball(const LatticeVertex& center, int radius);

// Literal minimization of d(x, gx) with the radius-expansion stopping rule:
// once min over ball(R+1) equals min over ball(R) the minimum is global.
IsometryClass displacement_oracle(const psl2::ProjectiveMatrix& g);
IsometryClass displacement_oracle_parallel(const psl2::ProjectiveMatrix& g);

// Vertices of the fixed subtree X(g) inside ball(base, radius); elliptic g.
std::vector<LatticeVertex> fixed_set_in_ball(const psl2::ProjectiveMatrix& g, int radius);

// Minimum displacement over an explicit vertex set; the scan kernel behind the
// oracle, exposed serial and OpenMP-parallel for the benchmark.
long min_displacement(const psl2::ProjectiveMatrix& g, const std::vector<LatticeVertex>& verts,
                      bool parallel);

}  // namespace btlab::bttree
