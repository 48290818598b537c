#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "btlab/errors.hpp"
#include "btlab/field.hpp"
#include "btlab/isometry.hpp"
#include "btlab/psl2.hpp"

namespace btlab::nielsen {

// A marked k-tuple of group elements (a marked homomorphism F_k -> A). The
// element type G must provide compose(g, h), invert(g) and nielsen_key(g)
// (a canonical string for visited-state hashing), found by ADL.
template <class G>
struct MarkedTuple {
    std::vector<G> entries;

    explicit MarkedTuple(std::vector<G> e) : entries(std::move(e)) {
        if (entries.empty()) throw WrongArity("marked tuple needs at least one entry");
    }
    int k() const { return static_cast<int>(entries.size()); }
};

enum class MoveKind { RPlus, RMinus, LPlus, LMinus, Swap };

// One Nielsen generator of Aut(F_k) acting on marked tuples:
//   R+-(i,j): x_j <- x_j x_i^(+-1),  L+-(i,j): x_j <- x_i^(+-1) x_j,
//   T(i,j):   swap x_i and x_j (stored with i < j).
// Indices are 1-based, matching the text form.
struct NielsenMove {
    MoveKind kind;
    int i;
    int j;

    static NielsenMove r_plus(int i, int j) { return {MoveKind::RPlus, i, j}; }
    static NielsenMove r_minus(int i, int j) { return {MoveKind::RMinus, i, j}; }
    static NielsenMove l_plus(int i, int j) { return {MoveKind::LPlus, i, j}; }
    static NielsenMove l_minus(int i, int j) { return {MoveKind::LMinus, i, j}; }
    static NielsenMove swap(int i, int j) { return {MoveKind::Swap, std::min(i, j), std::max(i, j)}; }

    NielsenMove inverse() const {
        switch (kind) {
            case MoveKind::RPlus: return {MoveKind::RMinus, i, j};
            case MoveKind::RMinus: return {MoveKind::RPlus, i, j};
            case MoveKind::LPlus: return {MoveKind::LMinus, i, j};
            case MoveKind::LMinus: return {MoveKind::LPlus, i, j};
            case MoveKind::Swap: return *this;
        }
        throw std::logic_error("unreachable");
    }

    bool operator==(const NielsenMove& o) const { return kind == o.kind && i == o.i && j == o.j; }
    auto ordering_key() const { return std::tuple(static_cast<int>(kind), i, j); }
};

using NielsenWord = std::vector<NielsenMove>;

inline bool word_less(const NielsenWord& a, const NielsenWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].ordering_key() != b[t].ordering_key()) return a[t].ordering_key() < b[t].ordering_key();
    }
    return false;
}

std::string format_move(const NielsenMove& m);
std::string format_word(const NielsenWord& w);
NielsenMove parse_move(const std::string& text);
NielsenWord parse_word(const std::string& text);

// All generators for arity k in the canonical order R+ < R- < L+ < L- < T,
// then by (i, j).
std::vector<NielsenMove> generators(int k);

template <class G>
MarkedTuple<G> apply(const NielsenMove& m, const MarkedTuple<G>& t) {
    const int k = t.k();
    if (m.i < 1 || m.i > k || m.j < 1 || m.j > k || m.i == m.j)
        throw IndexOutOfRange("move indices for arity " + std::to_string(k));
    MarkedTuple<G> out(t);
    auto& e = out.entries;
    switch (m.kind) {
        case MoveKind::RPlus: e[m.j - 1] = compose(e[m.j - 1], e[m.i - 1]); break;
        case MoveKind::RMinus: e[m.j - 1] = compose(e[m.j - 1], invert(e[m.i - 1])); break;
        case MoveKind::LPlus: e[m.j - 1] = compose(e[m.i - 1], e[m.j - 1]); break;
        case MoveKind::LMinus: e[m.j - 1] = compose(invert(e[m.i - 1]), e[m.j - 1]); break;
        case MoveKind::Swap: std::swap(e[m.i - 1], e[m.j - 1]); break;
    }
    return out;
}

template <class G>
MarkedTuple<G> apply_word(const NielsenWord& w, const MarkedTuple<G>& t) {
    MarkedTuple<G> cur(t);
    for (const auto& m : w) cur = apply(m, cur);
    return cur;
}

template <class G>
std::string tuple_key(const MarkedTuple<G>& t) {
    std::string key;
    for (const auto& g : t.entries) {
        key += nielsen_key(g);
        key.push_back('/');
    }
    return key;
}

// tr([a, b]): constant along Nielsen orbits.
field::Element orbit_invariant_commutator_trace(const MarkedTuple<psl2::ProjectiveMatrix>& t);

// Search for a word making the first entry elliptic (the reduction the
// Weidmann alternative guarantees for non-free actions, which comes with no
// algorithm; this is a best-first search ranked by (min entry length,
// total entry length) and capped by an expansion budget). Returns the
// lexicographically least word among the minimal-length successes found.
template <class G, class Classify>
NielsenWord reduce_to_elliptic(const MarkedTuple<G>& t, Classify&& classify, long long budget) {
    auto first_elliptic = [&](const MarkedTuple<G>& tup) {
        return classify(tup.entries.front()).is_elliptic();
    };
    if (first_elliptic(t)) return {};

    struct Item {
        long min_l;
        long sum_l;
        NielsenWord word;
        MarkedTuple<G> tuple;
    };
    auto item_after = [](const Item& a, const Item& b) {
        if (a.min_l != b.min_l) return a.min_l > b.min_l;
        if (a.sum_l != b.sum_l) return a.sum_l > b.sum_l;
        return word_less(b.word, a.word);
    };
    auto potential = [&](const MarkedTuple<G>& tup, Item& item) {
        item.min_l = LONG_MAX;
        item.sum_l = 0;
        for (const auto& g : tup.entries) {
            const long l = classify(g).translation_length;
            item.min_l = std::min(item.min_l, l);
            item.sum_l += l;
        }
    };

    const auto moves = generators(t.k());
    std::priority_queue<Item, std::vector<Item>, decltype(item_after)> open(item_after);
    std::unordered_map<std::string, std::size_t> seen;
    {
        Item root{0, 0, {}, t};
        potential(t, root);
        seen[tuple_key(t)] = 0;
        open.push(std::move(root));
    }
    std::optional<NielsenWord> best;
    long long expansions = 0;
    while (!open.empty()) {
        Item cur = open.top();
        open.pop();
        if (best && cur.word.size() + 1 > best->size()) continue;
        if (expansions++ >= budget) break;
        for (const auto& m : moves) {
            auto child = apply(m, cur.tuple);
            NielsenWord word = cur.word;
            word.push_back(m);
            if (first_elliptic(child)) {
                if (!best || word_less(word, *best)) best = word;
                continue;
            }
            if (best && word.size() + 1 > best->size()) continue;
            auto key = tuple_key(child);
            auto it = seen.find(key);
            if (it != seen.end() && it->second <= word.size()) continue;
            seen[key] = word.size();
            Item next{0, 0, std::move(word), std::move(child)};
            potential(next.tuple, next);
            open.push(std::move(next));
        }
    }
    if (best) return *best;
    throw ReductionFailed(budget);
}

// Move an elliptic-first tuple into O_{1,2} (first entry elliptic, second
// hyperbolic): either swap in an already-hyperbolic entry, or find i with
// x_i x_1 hyperbolic and use T(i,2) R+(1,i). `has_common_fixed_vertex` is the
// semi-decision consulted before giving up.
template <class G, class Classify, class Probe>
NielsenWord normalize_to_O(const MarkedTuple<G>& t, Classify&& classify, Probe&& has_common_fixed_vertex) {
    if (!classify(t.entries.front()).is_elliptic())
        throw std::invalid_argument("normalize_to_O needs an elliptic first entry");
    const int k = t.k();
    for (int i = 2; i <= k; ++i) {
        if (classify(t.entries[i - 1]).is_hyperbolic())
            return i == 2 ? NielsenWord{} : NielsenWord{NielsenMove::swap(2, i)};
    }
    for (int i = 2; i <= k; ++i) {
        auto prod = compose(t.entries[i - 1], t.entries.front());
        if (classify(prod).is_hyperbolic()) {
            if (i == 2) return {NielsenMove::r_plus(1, 2)};
            return {NielsenMove::r_plus(1, i), NielsenMove::swap(2, i)};
        }
    }
    if (has_common_fixed_vertex(t))
        throw CommonFixedVertex("every entry fixes a common vertex at the scan radius");
    throw NoWitness("no hyperbolic entry or product x_i x_1 within the scan radius");
}

template <class G, class Classify>
bool membership_O(const MarkedTuple<G>& t, int i, int j, Classify&& classify) {
    const int k = t.k();
    if (i < 1 || i > k || j < 1 || j > k || i == j) throw IndexOutOfRange("membership indices");
    return classify(t.entries[i - 1]).is_elliptic() && classify(t.entries[j - 1]).is_hyperbolic();
}

}  // namespace btlab::nielsen
