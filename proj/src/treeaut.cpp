#include "btlab/treeaut.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace btlab::treeaut {

TreeContext::TreeContext(int q, int atlas_depth) : q_(q), atlas_depth_(atlas_depth) {
    if (q < 2 || q > 9) throw std::invalid_argument("tree degree q must be in [2, 9]");
    if (atlas_depth < 1) throw std::invalid_argument("atlas depth must be positive");
    std::size_t total = 1, sphere = static_cast<std::size_t>(q) + 1;
    layer_start_.push_back(0);
    for (int r = 1; r <= atlas_depth; ++r) {
        layer_start_.push_back(total);
        total += sphere;
        sphere *= q;
        if (total > (std::size_t{1} << 26))
            throw std::invalid_argument("atlas would exceed the memory budget");
    }
    layer_start_.push_back(total);
    parent_.assign(total, -1);
    first_child_.assign(total, -1);
    letter_.assign(total, 0);
    len_.assign(total, 0);
    std::size_t next = 1;
    for (std::size_t idx = 0; idx < layer_start_[atlas_depth]; ++idx) {
        first_child_[idx] = static_cast<std::int32_t>(next);
        for (int c = 0; c <= q; ++c) {
            if (idx != 0 && c == letter_[idx]) continue;
            parent_[next] = static_cast<std::int32_t>(idx);
            letter_[next] = static_cast<std::uint8_t>(c);
            len_[next] = static_cast<std::uint8_t>(len_[idx] + 1);
            ++next;
        }
    }
}

std::size_t TreeContext::ball_size(int radius) const {
    if (radius < 0 || radius > atlas_depth_) throw IndexOutOfRange("ball radius vs atlas depth");
    return layer_start_[radius + 1];
}

std::int32_t TreeContext::child(std::int32_t idx, int letter) const {
    if (letter < 0 || letter > q_) throw IndexOutOfRange("letter");
    if (idx != 0 && letter == letter_[idx]) throw IndexOutOfRange("letter equals parent color");
    if (first_child_[idx] < 0) throw IndexOutOfRange("vertex beyond the atlas depth");
    const int slot = idx == 0 ? letter : (letter < letter_[idx] ? letter : letter - 1);
    return first_child_[idx] + slot;
}

std::int32_t TreeContext::neighbor(std::int32_t idx, int letter) const {
    if (idx != 0 && letter == letter_[idx]) return parent_[idx];
    return child(idx, letter);
}

long TreeContext::distance(std::int32_t a, std::int32_t b) const {
    long d = 0;
    while (len_[a] > len_[b]) {
        a = parent_[a];
        ++d;
    }
    while (len_[b] > len_[a]) {
        b = parent_[b];
        ++d;
    }
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
        d += 2;
    }
    return d;
}

std::string TreeContext::word_of(std::int32_t idx) const {
    if (idx == 0) return "-";
    std::string out;
    while (idx != 0) {
        out.push_back(static_cast<char>('0' + letter_[idx]));
        idx = parent_[idx];
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::int32_t TreeContext::index_of(const std::string& word) const {
    if (word == "-" || word.empty()) return 0;
    std::int32_t cur = 0;
    for (char ch : word) {
        if (ch < '0' || ch > '0' + q_) throw ParseError("bad letter in word '" + word + "'");
        cur = child(cur, ch - '0');
    }
    return cur;
}

Ctx make_context(int q, int atlas_depth) { return std::make_shared<TreeContext>(q, atlas_depth); }

namespace {

void require_same_ctx(const TreePortrait& a, const TreePortrait& b) {
    if (a.ctx != b.ctx) throw std::invalid_argument("portraits from different tree contexts");
}

void require_atlas(const Ctx& ctx, int depth, int d0) {
    if (depth < 1) throw DepthExhausted("portrait depth must be at least 1");
    if (depth + d0 > ctx->atlas_depth())
        throw DepthExhausted("portrait images exceed the atlas depth");
}

}  // namespace

TreePortrait identity_portrait(const Ctx& ctx, int depth) {
    require_atlas(ctx, depth, 0);
    TreePortrait p{ctx, depth, 0, {}};
    p.img.resize(ctx->ball_size(depth));
    for (std::size_t i = 0; i < p.img.size(); ++i) p.img[i] = static_cast<std::int32_t>(i);
    return p;
}

TreePortrait compose(const TreePortrait& g, const TreePortrait& h) {
    require_same_ctx(g, h);
    const int depth = std::min(h.depth, g.depth - h.d0);
    if (depth < 1) throw DepthExhausted("composition has no usable depth");
    TreePortrait out{g.ctx, depth, 0, {}};
    out.img.resize(g.ctx->ball_size(depth));
    for (std::size_t i = 0; i < out.img.size(); ++i) out.img[i] = g.img[h.img[i]];
    out.d0 = g.ctx->length(out.img[0]);
    return out;
}

TreePortrait invert(const TreePortrait& g) {
    const int depth = g.depth - g.d0;
    if (depth < 1) throw DepthExhausted("inverse has no usable depth");
    const auto& ctx = *g.ctx;
    TreePortrait out{g.ctx, depth, g.d0, {}};
    out.img.assign(ctx.ball_size(depth), -1);
    const std::size_t cutoff = ctx.ball_size(depth);
    for (std::size_t i = 0; i < g.img.size(); ++i) {
        const std::int32_t u = g.img[i];
        if (static_cast<std::size_t>(u) < cutoff) out.img[u] = static_cast<std::int32_t>(i);
    }
    for (auto x : out.img)
        if (x < 0) throw DepthExhausted("portrait image does not cover the inverse ball");
    out.d0 = ctx.length(out.img[0]);
    return out;
}

bool adjacency_preserved(const TreePortrait& g) {
    const auto& ctx = *g.ctx;
    const std::size_t n = g.img.size();
    std::vector<std::int32_t> sorted(g.img);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 1; i < n; ++i)
        if (ctx.distance(g.img[i], g.img[ctx.parent(static_cast<std::int32_t>(i))]) != 1)
            return false;
    return true;
}

bool in_aut0(const TreePortrait& g) { return g.d0 % 2 == 0; }

IsometryClass classify_portrait(const TreePortrait& g) {
    const auto& ctx = *g.ctx;
    long f = ctx.distance(0, g.img[0]);
    if (f == 0) return IsometryClass::elliptic();
    for (int r = 1; r <= g.depth; ++r) {
        long f_next = f;
        for (std::size_t i = ctx.ball_size(r - 1); i < ctx.ball_size(r); ++i)
            f_next = std::min(f_next, ctx.distance(static_cast<std::int32_t>(i), g.img[i]));
        if (f_next == 0) return IsometryClass::elliptic();
        if (f_next == f) return IsometryClass::hyperbolic(f);
        f = f_next;
    }
    throw DepthExhausted("displacement did not stabilize within the portrait depth");
}

std::vector<std::int32_t> fixed_vertices(const TreePortrait& g, int radius) {
    if (radius > g.depth) throw DepthExhausted("fixed-vertex radius exceeds portrait depth");
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < g.ctx->ball_size(radius); ++i)
        if (g.img[i] == static_cast<std::int32_t>(i)) out.push_back(static_cast<std::int32_t>(i));
    return out;
}

namespace {

std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
    return perm;
}

bool has_fixed_point(const std::vector<int>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] == static_cast<int>(i)) return true;
    return false;
}

}  // namespace

TreePortrait sample_stabilizer(const Ctx& ctxp, Rng& rng, int depth, bool derangement_at_root) {
    require_atlas(ctxp, depth, 0);
    const auto& ctx = *ctxp;
    const int q = ctx.q();
    TreePortrait out{ctxp, depth, 0, {}};
    out.img.assign(ctx.ball_size(depth), -1);
    out.img[0] = 0;
    auto root_perm = random_permutation(rng, q + 1);
    while (derangement_at_root && has_fixed_point(root_perm))
        root_perm = random_permutation(rng, q + 1);
    for (int c = 0; c <= q; ++c) out.img[ctx.child(0, c)] = ctx.child(0, root_perm[c]);
    // at every deeper vertex an independent uniform bijection of child colors
    for (std::size_t w = 1; w < ctx.ball_size(depth - 1); ++w) {
        const auto iw = static_cast<std::int32_t>(w);
        const std::int32_t im = out.img[w];
        auto perm = random_permutation(rng, q);
        int slot = 0;
        for (int c = 0; c <= q; ++c) {
            if (c == ctx.last_letter(iw)) continue;
            int target_slot = perm[slot++];
            int target_letter = 0;
            for (int t = 0, seen = 0; t <= q; ++t) {
                if (t == ctx.last_letter(im)) continue;
                if (seen++ == target_slot) {
                    target_letter = t;
                    break;
                }
            }
            out.img[ctx.child(iw, c)] = ctx.child(im, target_letter);
        }
    }
    return out;
}

TreePortrait transport_portrait(const Ctx& ctxp, int depth, std::int32_t target) {
    const auto& ctx = *ctxp;
    require_atlas(ctxp, depth, ctx.length(target));
    TreePortrait out{ctxp, depth, ctx.length(target), {}};
    out.img.assign(ctx.ball_size(depth), -1);
    out.img[0] = target;
    // used[w]: color of the edge between img[w] and img[parent(w)] (-1 at the base)
    std::vector<int> used(ctx.ball_size(depth), -1);
    for (std::size_t w = 0; w < ctx.ball_size(depth - 1); ++w) {
        const auto iw = static_cast<std::int32_t>(w);
        const std::int32_t im = out.img[w];
        const int excl_dom = w == 0 ? -1 : ctx.last_letter(iw);
        const int excl_img = used[w];
        for (int c = 0; c <= ctx.q(); ++c) {
            if (c == excl_dom) continue;
            // keep colors where the coloring allows; swap in the leftover color
            const int f = c == excl_img ? excl_dom : c;
            const std::int32_t x = ctx.child(iw, c);
            out.img[x] = ctx.neighbor(im, f);
            used[x] = f;
        }
    }
    return out;
}

TreePortrait shift_portrait(const Ctx& ctx, int depth, int m) {
    std::string axis;
    for (int i = 0; i < m; ++i) axis += "01";
    return transport_portrait(ctx, depth, ctx->index_of(axis));
}

TreePortrait sample_hyperbolic_portrait(const Ctx& ctx, Rng& rng, int depth, int m) {
    auto shift = shift_portrait(ctx, depth, m);
    while (true) {
        auto k1 = sample_stabilizer(ctx, rng, depth + 2 * m);
        auto k2 = sample_stabilizer(ctx, rng, depth);
        auto g = compose(compose(k1, shift), k2);
        auto cls = classify_portrait(g);
        if (cls.is_hyperbolic() && cls.translation_length == 2L * m) return g;
    }
}

TreePortrait sample_hyperbolic_portrait(const Ctx& ctx, Rng& rng, int depth, double length_prob,
                                        int length_cap) {
    return sample_hyperbolic_portrait(ctx, rng, depth, rng.geometric(length_prob, length_cap));
}

TreePortrait sample_elliptic_portrait(const Ctx& ctx, Rng& rng, int depth, int jmax) {
    const int j = static_cast<int>(rng.below(jmax + 1));
    if (j == 0) return sample_stabilizer(ctx, rng, depth);
    // random reduced word of length j as the new center
    std::int32_t target = 0;
    for (int step = 0; step < j; ++step) {
        int letter;
        do {
            letter = static_cast<int>(rng.below(ctx->q() + 1));
        } while (target != 0 && letter == ctx->last_letter(target));
        target = ctx->child(target, letter);
    }
    auto t = transport_portrait(ctx, depth + j, target);
    auto u = sample_stabilizer(ctx, rng, depth + j);
    return compose(compose(t, u), invert(t));
}

std::string TreePortrait::serialize() const {
    std::ostringstream os;
    os << "q:" << ctx->q() << ";depth:" << depth << "\n";
    for (std::size_t i = 0; i < img.size(); ++i)
        os << ctx->word_of(static_cast<std::int32_t>(i)) << " -> " << ctx->word_of(img[i]) << "\n";
    return os.str();
}

TreePortrait deserialize_portrait(const Ctx& ctx, const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw ParseError("empty portrait");
    int q = 0, depth = 0;
    if (std::sscanf(header.c_str(), "q:%d;depth:%d", &q, &depth) != 2)
        throw ParseError("bad portrait header '" + header + "'");
    if (q != ctx->q()) throw ParseError("portrait degree does not match the context");
    require_atlas(ctx, depth, 0);
    TreePortrait out{ctx, depth, 0, {}};
    out.img.assign(ctx->ball_size(depth), -1);
    std::string line;
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto arrow = line.find(" -> ");
        if (arrow == std::string::npos) throw ParseError("bad portrait line '" + line + "'");
        const auto src = ctx->index_of(line.substr(0, arrow));
        const auto dst = ctx->index_of(line.substr(arrow + 4));
        if (static_cast<std::size_t>(src) >= out.img.size())
            throw ParseError("portrait line outside the declared ball");
        out.img[src] = dst;
        ++count;
    }
    if (count != out.img.size()) throw ParseError("portrait table incomplete");
    out.d0 = ctx->length(out.img[0]);
    if (!adjacency_preserved(out)) throw ParseError("portrait is not adjacency preserving");
    return out;
}

}  // namespace btlab::treeaut
