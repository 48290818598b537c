#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "btlab/errors.hpp"
#include "btlab/nielsen.hpp"

namespace btlab::prg {

enum class GroupKind { SL2, PSL2 };

struct GroupSpec {
    GroupKind kind;
    int p;  // odd prime <= 13
};

// SL_2(F_p) or PSL_2(F_p) with every element materialized in a canonical
// order; PSL_2 representatives use the same sign rule as over the local
// fields. Elements are dense indices into the multiplication table.
class FiniteGroup {
  public:
    explicit FiniteGroup(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    int order() const { return static_cast<int>(codes_.size()); }
    int identity() const { return identity_; }
    int mul(int x, int y) const { return mult_[static_cast<std::size_t>(x) * order() + y]; }
    int inv(int x) const { return inv_[x]; }
    std::array<int, 4> entries(int idx) const;
    // Canonical index of a determinant-1 matrix; throws on det != 1.
    int index_of(int a, int b, int c, int d) const;
    // tr(x y x^-1 y^-1) as a residue; computed on the raw entries so the
    // PSL_2 sign canonicalization cannot disturb it.
    int commutator_trace(int x, int y) const;
    std::string encode(int idx) const;

  private:
    GroupSpec spec_;
    int identity_ = 0;
    std::vector<std::uint16_t> codes_;
    std::vector<std::int32_t> code_to_idx_;
    std::vector<std::uint16_t> mult_;
    std::vector<std::uint16_t> inv_;

    std::uint16_t canonical_code(int a, int b, int c, int d) const;
};

// Group element carrying its group, so marked tuples over finite groups plug
// into the generic Nielsen machinery.
struct Element {
    const FiniteGroup* group;
    int idx;
};

inline Element compose(const Element& a, const Element& b) {
    return {a.group, a.group->mul(a.idx, b.idx)};
}
inline Element invert(const Element& a) { return {a.group, a.group->inv(a.idx)}; }
inline std::string nielsen_key(const Element& a) { return std::to_string(a.idx); }

int orbit_invariant_commutator_trace(const nielsen::MarkedTuple<Element>& t);

// Memoized subgroup-closure machine: subgroups are interned by their element
// bitset, and extending a subgroup by one element is computed once.
class ClosureMachine {
  public:
    explicit ClosureMachine(const FiniteGroup& g);

    int trivial_id() const { return trivial_; }
    int extend(int subgroup_id, int element);
    bool is_full(int subgroup_id) const;
    std::uint64_t subgroup_order(int subgroup_id) const;
    int subgroup_of(const std::vector<int>& tuple);

  private:
    const FiniteGroup& group_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> member_bits_;
    std::vector<std::vector<int>> gens_;
    std::vector<std::uint64_t> sizes_;
    std::unordered_map<std::string, int> intern_;
    std::vector<std::vector<std::int32_t>> step_;
    int trivial_ = 0;
    int full_ = -1;

    int intern(std::vector<std::uint64_t> bits, std::vector<int> gens, std::uint64_t size);
};

bool is_generating(ClosureMachine& machine, const std::vector<int>& tuple);

struct OrbitRow {
    std::uint64_t seed;   // least tuple key in the orbit
    std::uint64_t size;
    bool generating;
    int trace_class;      // k = 2 commutator-trace residue, -1 otherwise
};

struct TupleOrbitReport {
    GroupSpec spec;
    int k = 0;
    std::uint64_t total_tuples = 0;
    std::uint64_t generating_tuples = 0;
    std::uint64_t generating_orbits = 0;
    std::uint64_t nongenerating_orbits = 0;
    std::vector<OrbitRow> rows;  // generating orbits, by ascending seed

    std::string to_text() const;
    std::string to_csv() const;
};

struct CensusOptions {
    bool parallel = true;
    bool allow_large = false;  // required beyond 2^28 tuples
};

// Orbit enumeration of all k-tuples under the Nielsen generators, reported
// for the generating ones. BFS floods orbit by orbit over a shared visited
// bitset; the parallel path shards each frontier over OpenMP threads and is
// report-identical to the serial one.
TupleOrbitReport orbit_census(const FiniteGroup& g, int k, const CensusOptions& opts = {});

}  // namespace btlab::prg
