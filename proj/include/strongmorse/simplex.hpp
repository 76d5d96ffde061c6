#ifndef STRONGMORSE_SIMPLEX_HPP
#define STRONGMORSE_SIMPLEX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace smorse {

/// Dense vertex id inside one complex (0..n-1).
using Vertex = std::uint32_t;

/// Original vertex label as read from input.
using Label = std::int64_t;

/// A non-empty set of vertices, kept sorted and duplicate-free.
///
/// Simplices order first by dimension and then lexicographically, so a
/// sorted container of simplices is grouped by dimension.
class Simplex {
public:
    Simplex() = default;
    Simplex(std::initializer_list<Vertex> vertices);
    explicit Simplex(std::vector<Vertex> vertices);

    /// Trusts the caller that `vertices` is strictly increasing.
    static Simplex from_sorted(std::vector<Vertex> vertices);

    int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const noexcept { return vertices_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    auto begin() const noexcept { return vertices_.begin(); }
    auto end() const noexcept { return vertices_.end(); }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }
    Vertex back() const { return vertices_.back(); }

    bool contains(Vertex v) const noexcept;
    bool is_face_of(const Simplex& other) const noexcept;

    /// This simplex without `v` (unchanged when v is absent).
    Simplex without(Vertex v) const;
    /// This simplex with `v` added (unchanged when v is present).
    Simplex with(Vertex v) const;

    /// Codimension-1 faces; face i omits the i-th vertex.
    std::vector<Simplex> boundary() const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept;

private:
    std::vector<Vertex> vertices_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

/// The simplicial retraction r_a induced by collapsing v onto a:
/// simplices avoiding v are fixed, otherwise v is replaced by a.
Simplex retract_simplex(const Simplex& simplex, Vertex v, Vertex a);

} // namespace smorse

#endif
