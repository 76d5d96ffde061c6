#include "strongmorse/simplex.hpp"

#include <algorithm>

#include "strongmorse/error.hpp"

namespace smorse {

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::vector<Vertex>(vertices))
{
}

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices))
{
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw Error(ErrorCode::DuplicateVertexInFacet, "simplex lists a vertex twice");
}

Simplex Simplex::from_sorted(std::vector<Vertex> vertices)
{
    Simplex s;
    s.vertices_ = std::move(vertices);
    return s;
}

bool Simplex::contains(Vertex v) const noexcept
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const noexcept
{
    return std::includes(other.vertices_.begin(), other.vertices_.end(),
                         vertices_.begin(), vertices_.end());
}

Simplex Simplex::without(Vertex v) const
{
    std::vector<Vertex> out;
    out.reserve(vertices_.size());
    for (Vertex w : vertices_)
        if (w != v)
            out.push_back(w);
    return from_sorted(std::move(out));
}

Simplex Simplex::with(Vertex v) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it != vertices_.end() && *it == v)
        return *this;
    std::vector<Vertex> out(vertices_.begin(), it);
    out.push_back(v);
    out.insert(out.end(), it, vertices_.end());
    return from_sorted(std::move(out));
}

std::vector<Simplex> Simplex::boundary() const
{
    std::vector<Simplex> faces;
    if (vertices_.size() < 2)
        return faces;
    faces.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        std::vector<Vertex> f;
        f.reserve(vertices_.size() - 1);
        for (std::size_t j = 0; j < vertices_.size(); ++j)
            if (j != i)
                f.push_back(vertices_[j]);
        faces.push_back(from_sorted(std::move(f)));
    }
    return faces;
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept
{
    if (auto c = a.vertices_.size() <=> b.vertices_.size(); c != 0)
        return c;
    return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(),
                                                  b.vertices_.begin(), b.vertices_.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    // FNV-1a over the vertex ids.
    std::uint64_t h = 1469598103934665603ULL;
    for (Vertex v : s) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ s.size());
}

Simplex retract_simplex(const Simplex& simplex, Vertex v, Vertex a)
{
    if (v == a)
        throw Error(ErrorCode::InvalidArgument, "retraction needs distinct vertices");
    if (!simplex.contains(v))
        return simplex;
    return simplex.without(v).with(a);
}

} // namespace smorse
