#pragma once

#include <memory>
#include <string>
#include <vector>

#include "btlab/errors.hpp"
#include "btlab/isometry.hpp"
#include "btlab/rng.hpp"

namespace btlab::treeaut {

// The (q+1)-regular tree in proper edge-coloring coordinates: vertices are
// words over {0..q} with no two consecutive equal letters, the empty word is
// the base vertex, and the edge of color c at a vertex w leads to the parent
// when c equals the last letter of w and to the child w+c otherwise.
//
// A TreeContext holds the indexed ball of radius `atlas_depth` (canonical BFS
// order) that portraits address into.
class TreeContext {
  public:
    TreeContext(int q, int atlas_depth);

    int q() const { return q_; }
    int atlas_depth() const { return atlas_depth_; }
    std::size_t ball_size(int radius) const;
    std::size_t size() const { return parent_.size(); }

    int length(std::int32_t idx) const { return len_[idx]; }
    std::int32_t parent(std::int32_t idx) const { return parent_[idx]; }
    int last_letter(std::int32_t idx) const { return letter_[idx]; }
    std::int32_t child(std::int32_t idx, int letter) const;
    std::int32_t neighbor(std::int32_t idx, int letter) const;
    long distance(std::int32_t a, std::int32_t b) const;

    std::string word_of(std::int32_t idx) const;  // "-" for the base vertex
    std::int32_t index_of(const std::string& word) const;

  private:
    int q_;
    int atlas_depth_;
    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> first_child_;
    std::vector<std::uint8_t> letter_;
    std::vector<std::uint8_t> len_;
    std::vector<std::size_t> layer_start_;
};

using Ctx = std::shared_ptr<const TreeContext>;

Ctx make_context(int q, int atlas_depth);

// Finite-depth truncation of a tree automorphism: the image of every vertex
// in ball(depth). d0 is the displacement of the base vertex; the portrait is
// in Aut^0 exactly when d0 is even.
struct TreePortrait {
    Ctx ctx;
    int depth;
    int d0;
    std::vector<std::int32_t> img;

    std::string serialize() const;
};

TreePortrait identity_portrait(const Ctx& ctx, int depth);
// g after h; usable depth min(depth(h), depth(g) - d0(h)).
TreePortrait compose(const TreePortrait& g, const TreePortrait& h);
TreePortrait invert(const TreePortrait& g);

TreePortrait deserialize_portrait(const Ctx& ctx, const std::string& text);

bool adjacency_preserved(const TreePortrait& g);
bool in_aut0(const TreePortrait& g);

// Radius-expansion classification, as for the lattice tree.
IsometryClass classify_portrait(const TreePortrait& g);

// Vertices of ball(radius) fixed by g.
std::vector<std::int32_t> fixed_vertices(const TreePortrait& g, int radius);

// Haar-uniform truncation of a base-vertex stabilizer: an independent uniform
// local color bijection at every vertex of ball(depth - 1). With
// `derangement_at_root` the permutation at the base vertex is resampled until
// it is fixed-point free, so the sample fixes exactly the base vertex.
TreePortrait sample_stabilizer(const Ctx& ctx, Rng& rng, int depth,
                               bool derangement_at_root = false);

// The canonical automorphism carrying the base vertex to `target` that keeps
// every local color map as close to the identity as the coloring allows.
// For targets on the alternating (0,1)-axis this is the translation by
// length(target) along that axis.
TreePortrait transport_portrait(const Ctx& ctx, int depth, std::int32_t target);

// Translation by 2m along the alternating axis.
TreePortrait shift_portrait(const Ctx& ctx, int depth, int m);

// stabilizer * shift(2m) * stabilizer conditioned on classify = 2m.
TreePortrait sample_hyperbolic_portrait(const Ctx& ctx, Rng& rng, int depth, int m);
TreePortrait sample_hyperbolic_portrait(const Ctx& ctx, Rng& rng, int depth, double length_prob,
                                        int length_cap);
// Conjugated stabilizer sample centered within distance jmax of the base.
TreePortrait sample_elliptic_portrait(const Ctx& ctx, Rng& rng, int depth, int jmax = 2);

inline std::string nielsen_key(const TreePortrait& g) {
    std::string key = std::to_string(g.depth) + ":";
    key.reserve(key.size() + g.img.size() * sizeof(std::int32_t));
    key.append(reinterpret_cast<const char*>(g.img.data()), g.img.size() * sizeof(std::int32_t));
    return key;
}

}  // namespace btlab::treeaut
