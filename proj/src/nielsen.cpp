#include "btlab/nielsen.hpp"

namespace btlab::nielsen {

std::string format_move(const NielsenMove& m) {
    std::string head;
    switch (m.kind) {
        case MoveKind::RPlus: head = "R+"; break;
        case MoveKind::RMinus: head = "R-"; break;
        case MoveKind::LPlus: head = "L+"; break;
        case MoveKind::LMinus: head = "L-"; break;
        case MoveKind::Swap: head = "T"; break;
    }
    return head + " " + std::to_string(m.i) + " " + std::to_string(m.j);
}

std::string format_word(const NielsenWord& w) {
    std::string out;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t) out += ",";
        out += format_move(w[t]);
    }
    return out;
}

NielsenMove parse_move(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    int i = 0, j = 0;
    if (!(is >> head >> i >> j)) throw ParseError("bad move '" + text + "'");
    std::string rest;
    if (is >> rest) throw ParseError("trailing tokens in move '" + text + "'");
    if (i < 1 || j < 1 || i == j) throw ParseError("bad move indices in '" + text + "'");
    if (head == "R+") return NielsenMove::r_plus(i, j);
    if (head == "R-") return NielsenMove::r_minus(i, j);
    if (head == "L+") return NielsenMove::l_plus(i, j);
    if (head == "L-") return NielsenMove::l_minus(i, j);
    if (head == "T") {
        if (i > j) throw ParseError("swap indices must satisfy i < j in '" + text + "'");
        return NielsenMove::swap(i, j);
    }
    throw ParseError("unknown move '" + head + "'");
}

NielsenWord parse_word(const std::string& text) {
    NielsenWord out;
    if (text.empty()) return out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(parse_move(tok));
    return out;
}

std::vector<NielsenMove> generators(int k) {
    if (k < 2) throw WrongArity("Nielsen generators need arity at least 2");
    std::vector<NielsenMove> out;
    for (auto kind : {MoveKind::RPlus, MoveKind::RMinus, MoveKind::LPlus, MoveKind::LMinus}) {
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j)
                if (i != j) out.push_back({kind, i, j});
    }
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) out.push_back(NielsenMove::swap(i, j));
    return out;
}

field::Element orbit_invariant_commutator_trace(const MarkedTuple<psl2::ProjectiveMatrix>& t) {
    if (t.k() != 2) throw WrongArity("commutator trace is defined for pairs");
    return psl2::commutator_trace(t.entries[0], t.entries[1]);
}

}  // namespace btlab::nielsen
