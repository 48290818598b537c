#pragma once

namespace btlab {

// Dynamical type of a tree isometry: elliptic elements fix a vertex,
// hyperbolic elements translate along an axis by an even length (the two
// groups in play contain no inversions).
struct IsometryClass {
    enum class Type { Elliptic, Hyperbolic };

    Type type;
    long translation_length;

    static IsometryClass elliptic() { return {Type::Elliptic, 0}; }
    static IsometryClass hyperbolic(long len) { return {Type::Hyperbolic, len}; }

    bool is_elliptic() const { return type == Type::Elliptic; }
    bool is_hyperbolic() const { return type == Type::Hyperbolic; }

    bool operator==(const IsometryClass& o) const {
        return type == o.type && translation_length == o.translation_length;
    }
    bool operator!=(const IsometryClass& o) const { return !(*this == o); }
};

}  // namespace btlab
