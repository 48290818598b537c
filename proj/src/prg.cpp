#include "btlab/prg.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace btlab::prg {

namespace {

constexpr std::uint64_t kGuardTuples = std::uint64_t{1} << 28;
constexpr std::uint64_t kHardCapTuples = std::uint64_t{1} << 34;

int mod_inverse(int a, int p) {
    int t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

bool small_prime(int p) { return p == 3 || p == 5 || p == 7 || p == 11 || p == 13; }

}  // namespace

std::uint16_t FiniteGroup::canonical_code(int a, int b, int c, int d) const {
    const int p = spec_.p;
    int e[4] = {a % p, b % p, c % p, d % p};
    for (auto& x : e)
        if (x < 0) x += p;
    if (spec_.kind == GroupKind::PSL2) {
        for (int i = 0; i < 4; ++i) {
            if (e[i] == 0) continue;
            if (e[i] > (p - 1) / 2)
                for (auto& x : e) x = (p - x) % p;
            break;
        }
    }
    return static_cast<std::uint16_t>(e[0] | (e[1] << 4) | (e[2] << 8) | (e[3] << 12));
}

FiniteGroup::FiniteGroup(GroupSpec spec) : spec_(spec) {
    const int p = spec_.p;
    if (!small_prime(p)) throw std::invalid_argument("finite group prime must be an odd prime <= 13");
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int d = 0; d < p; ++d)
                    if (((a * d - b * c - 1) % p + p) % p == 0)
                        codes_.push_back(canonical_code(a, b, c, d));
    std::sort(codes_.begin(), codes_.end());
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
    const std::uint64_t expect = static_cast<std::uint64_t>(p) * (p * p - 1) /
                                 (spec_.kind == GroupKind::PSL2 ? 2 : 1);
    if (codes_.size() != expect) throw std::logic_error("group enumeration size mismatch");

    code_to_idx_.assign(1 << 16, -1);
    for (std::size_t i = 0; i < codes_.size(); ++i) code_to_idx_[codes_[i]] = static_cast<std::int32_t>(i);
    identity_ = code_to_idx_[canonical_code(1, 0, 0, 1)];

    const int n = order();
    mult_.resize(static_cast<std::size_t>(n) * n);
    inv_.resize(n);
    for (int x = 0; x < n; ++x) {
        auto ex = entries(x);
        inv_[x] = static_cast<std::uint16_t>(code_to_idx_[canonical_code(ex[3], -ex[1], -ex[2], ex[0])]);
        for (int y = 0; y < n; ++y) {
            auto ey = entries(y);
            const int a = ex[0] * ey[0] + ex[1] * ey[2];
            const int b = ex[0] * ey[1] + ex[1] * ey[3];
            const int c = ex[2] * ey[0] + ex[3] * ey[2];
            const int d = ex[2] * ey[1] + ex[3] * ey[3];
            mult_[static_cast<std::size_t>(x) * n + y] =
                static_cast<std::uint16_t>(code_to_idx_[canonical_code(a, b, c, d)]);
        }
    }
}

std::array<int, 4> FiniteGroup::entries(int idx) const {
    const std::uint16_t code = codes_[idx];
    return {code & 15, (code >> 4) & 15, (code >> 8) & 15, (code >> 12) & 15};
}

int FiniteGroup::index_of(int a, int b, int c, int d) const {
    const int p = spec_.p;
    const int det = ((a * d - b * c) % p + p) % p;
    if (det != 1) throw std::invalid_argument("matrix determinant is not 1 mod p");
    return code_to_idx_[canonical_code(a, b, c, d)];
}

int FiniteGroup::commutator_trace(int x, int y) const {
    const int p = spec_.p;
    auto mulm = [&](std::array<int, 4> u, std::array<int, 4> v) {
        return std::array<int, 4>{(u[0] * v[0] + u[1] * v[2]) % p, (u[0] * v[1] + u[1] * v[3]) % p,
                                  (u[2] * v[0] + u[3] * v[2]) % p, (u[2] * v[1] + u[3] * v[3]) % p};
    };
    auto ex = entries(x), ey = entries(y);
    std::array<int, 4> xi{ex[3], (p - ex[1]) % p, (p - ex[2]) % p, ex[0]};
    std::array<int, 4> yi{ey[3], (p - ey[1]) % p, (p - ey[2]) % p, ey[0]};
    auto comm = mulm(mulm(ex, ey), mulm(xi, yi));
    return (comm[0] + comm[3]) % p;
}

std::string FiniteGroup::encode(int idx) const {
    auto e = entries(idx);
    return std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + "," +
           std::to_string(e[3]);
}

int orbit_invariant_commutator_trace(const nielsen::MarkedTuple<Element>& t) {
    if (t.k() != 2) throw WrongArity("commutator trace is defined for pairs");
    return t.entries[0].group->commutator_trace(t.entries[0].idx, t.entries[1].idx);
}

ClosureMachine::ClosureMachine(const FiniteGroup& g)
    : group_(g), words_((g.order() + 63) / 64) {
    std::vector<std::uint64_t> bits(words_, 0);
    bits[g.identity() / 64] |= std::uint64_t{1} << (g.identity() % 64);
    trivial_ = intern(std::move(bits), {}, 1);
}

int ClosureMachine::intern(std::vector<std::uint64_t> bits, std::vector<int> gens, std::uint64_t size) {
    std::string key(reinterpret_cast<const char*>(bits.data()), words_ * sizeof(std::uint64_t));
    auto it = intern_.find(key);
    if (it != intern_.end()) return it->second;
    const int id = static_cast<int>(member_bits_.size());
    member_bits_.push_back(std::move(bits));
    gens_.push_back(std::move(gens));
    sizes_.push_back(size);
    step_.emplace_back(group_.order(), -1);
    intern_.emplace(std::move(key), id);
    if (size == static_cast<std::uint64_t>(group_.order())) full_ = id;
    return id;
}

int ClosureMachine::extend(int subgroup_id, int element) {
    if (step_[subgroup_id][element] >= 0) return step_[subgroup_id][element];
    const auto& base = member_bits_[subgroup_id];
    int result;
    if (base[element / 64] >> (element % 64) & 1) {
        result = subgroup_id;
    } else {
        // closure of <base gens, element> by BFS over the generator set
        std::vector<int> gens = gens_[subgroup_id];
        gens.push_back(element);
        std::vector<std::uint64_t> bits(words_, 0);
        std::vector<int> queue{group_.identity()};
        bits[group_.identity() / 64] |= std::uint64_t{1} << (group_.identity() % 64);
        std::uint64_t size = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int x = queue[head];
            for (int s : gens) {
                const int y = group_.mul(x, s);
                auto& word = bits[y / 64];
                const std::uint64_t mask = std::uint64_t{1} << (y % 64);
                if (!(word & mask)) {
                    word |= mask;
                    ++size;
                    queue.push_back(y);
                }
            }
        }
        result = intern(std::move(bits), std::move(gens), size);
    }
    // intern may have grown step_, so index afresh
    step_[subgroup_id][element] = result;
    return result;
}

bool ClosureMachine::is_full(int subgroup_id) const { return subgroup_id == full_; }

std::uint64_t ClosureMachine::subgroup_order(int subgroup_id) const { return sizes_[subgroup_id]; }

int ClosureMachine::subgroup_of(const std::vector<int>& tuple) {
    int id = trivial_;
    for (int e : tuple) id = extend(id, e);
    return id;
}

bool is_generating(ClosureMachine& machine, const std::vector<int>& tuple) {
    return machine.is_full(machine.subgroup_of(tuple));
}

namespace {

struct MoveTableEntry {
    int kind;  // 0: x_j <- x_j * x_i, 1: x_j <- x_j * x_i^-1, 2: x_j <- x_i * x_j,
               // 3: x_j <- x_i^-1 * x_j, 4: swap
    int i;
    int j;
};

std::vector<MoveTableEntry> index_moves(int k) {
    std::vector<MoveTableEntry> out;
    for (int kind = 0; kind < 4; ++kind)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) out.push_back({kind, i, j});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) out.push_back({4, i, j});
    return out;
}

class VisitedBits {
  public:
    explicit VisitedBits(std::uint64_t n) : bits_((n + 63) / 64, 0) {}

    bool test_and_set(std::uint64_t key) {
        auto& word = bits_[key >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (key & 63);
        if (word & mask) return false;
        word |= mask;
        return true;
    }

    bool test_and_set_atomic(std::uint64_t key) {
        const std::uint64_t mask = std::uint64_t{1} << (key & 63);
        std::uint64_t prev = __atomic_fetch_or(&bits_[key >> 6], mask, __ATOMIC_RELAXED);
        return !(prev & mask);
    }

    bool test(std::uint64_t key) const { return bits_[key >> 6] >> (key & 63) & 1; }

  private:
    std::vector<std::uint64_t> bits_;
};

}  // namespace

TupleOrbitReport orbit_census(const FiniteGroup& g, int k, const CensusOptions& opts) {
    if (k < 2 || k > 4) throw WrongArity("census supports 2 <= k <= 4");
    const std::uint64_t n = g.order();
    std::uint64_t total = 1;
    for (int t = 0; t < k; ++t) {
        if (total > kHardCapTuples / n)
            throw BudgetExceeded("census needs " + std::to_string(n) + "^" + std::to_string(k) +
                                 " tuples, beyond the hard cap of 2^34");
        total *= n;
    }
    if (total > kGuardTuples && !opts.allow_large)
        throw BudgetExceeded("census needs " + std::to_string(total) + " tuples (> 2^28 = " +
                             std::to_string(kGuardTuples) + "); pass allow_large to proceed");

    std::vector<std::uint64_t> stride(k, 1);
    for (int t = 1; t < k; ++t) stride[t] = stride[t - 1] * n;
    const auto moves = index_moves(k);

    VisitedBits visited(total);
    ClosureMachine machine(g);
    TupleOrbitReport report;
    report.spec = g.spec();
    report.k = k;
    report.total_tuples = total;

    std::vector<std::uint64_t> frontier, next;
    std::vector<int> digits(k);
    const auto decode = [&](std::uint64_t key, std::vector<int>& out) {
        for (int t = 0; t < k; ++t) {
            out[t] = static_cast<int>(key % n);
            key /= n;
        }
    };
    const auto expand_into = [&](std::uint64_t key, std::vector<int>& dg, auto&& claim,
                                 std::vector<std::uint64_t>& sink) {
        decode(key, dg);
        for (const auto& mv : moves) {
            std::uint64_t nk;
            if (mv.kind == 4) {
                nk = key + (static_cast<std::uint64_t>(dg[mv.j]) - dg[mv.i]) * stride[mv.i] +
                     (static_cast<std::uint64_t>(dg[mv.i]) - dg[mv.j]) * stride[mv.j];
            } else {
                int rep;
                switch (mv.kind) {
                    case 0: rep = g.mul(dg[mv.j], dg[mv.i]); break;
                    case 1: rep = g.mul(dg[mv.j], g.inv(dg[mv.i])); break;
                    case 2: rep = g.mul(dg[mv.i], dg[mv.j]); break;
                    default: rep = g.mul(g.inv(dg[mv.i]), dg[mv.j]); break;
                }
                nk = key + (static_cast<std::uint64_t>(rep) - dg[mv.j]) * stride[mv.j];
            }
            if (claim(nk)) sink.push_back(nk);
        }
    };

    for (std::uint64_t seed = 0; seed < total; ++seed) {
        if (visited.test(seed)) continue;
        visited.test_and_set(seed);
        std::uint64_t orbit_size = 0;
        frontier.assign(1, seed);
        while (!frontier.empty()) {
            orbit_size += frontier.size();
            next.clear();
            if (opts.parallel && frontier.size() >= 1024) {
#ifdef _OPENMP
#pragma omp parallel
                {
                    std::vector<std::uint64_t> local;
                    std::vector<int> dg(k);
                    auto claim = [&](std::uint64_t nk) { return visited.test_and_set_atomic(nk); };
#pragma omp for schedule(static) nowait
                    for (std::size_t f = 0; f < frontier.size(); ++f)
                        expand_into(frontier[f], dg, claim, local);
#pragma omp critical
                    next.insert(next.end(), local.begin(), local.end());
                }
#else
                auto claim = [&](std::uint64_t nk) { return visited.test_and_set(nk); };
                for (auto key : frontier) expand_into(key, digits, claim, next);
#endif
            } else {
                auto claim = [&](std::uint64_t nk) { return visited.test_and_set(nk); };
                for (auto key : frontier) expand_into(key, digits, claim, next);
            }
            frontier.swap(next);
        }
        decode(seed, digits);
        const bool generating = is_generating(machine, digits);
        if (generating) {
            OrbitRow row{seed, orbit_size, true, -1};
            if (k == 2) row.trace_class = g.commutator_trace(digits[0], digits[1]);
            report.rows.push_back(row);
            report.generating_orbits += 1;
            report.generating_tuples += orbit_size;
        } else {
            report.nongenerating_orbits += 1;
        }
    }
    return report;
}

std::string TupleOrbitReport::to_text() const {
    std::ostringstream os;
    os << (spec.kind == GroupKind::PSL2 ? "PSL2" : "SL2") << "(F_" << spec.p << "), k=" << k << "\n";
    os << "tuples: " << total_tuples << ", generating: " << generating_tuples << "\n";
    os << "orbits on generating tuples: " << generating_orbits
       << ", other orbits: " << nongenerating_orbits << "\n";
    for (const auto& row : rows) {
        os << "  orbit seed=" << row.seed << " size=" << row.size;
        if (row.trace_class >= 0) os << " commutator_trace=" << row.trace_class;
        os << "\n";
    }
    return os.str();
}

std::string TupleOrbitReport::to_csv() const {
    std::ostringstream os;
    os << "seed,size,generating,trace_class\n";
    for (const auto& row : rows)
        os << row.seed << "," << row.size << "," << (row.generating ? 1 : 0) << "," << row.trace_class
           << "\n";
    return os.str();
}

}  // namespace btlab::prg
