#ifndef STRONGMORSE_WORKING_COMPLEX_HPP
#define STRONGMORSE_WORKING_COMPLEX_HPP

#include <vector>

#include "strongmorse/complex.hpp"

namespace smorse::detail {

/// Mutable view of a subcomplex of K used by the reduction engines.
///
/// Simplices keep their index in K and are only ever deleted. Callers must
/// delete simplices so that the live set stays a subcomplex (cofaces
/// before faces).
class WorkingComplex {
public:
    explicit WorkingComplex(const SimplicialComplex& k);

    const SimplicialComplex& complex() const noexcept { return *k_; }

    bool alive(std::size_t i) const { return alive_[i] != 0; }
    bool vertex_alive(Vertex v) const { return alive_[v] != 0; }
    std::size_t live_count() const noexcept { return live_; }
    std::size_t live_cofaces(std::size_t i) const { return live_cofaces_[i]; }

    const std::vector<std::size_t>& faces(std::size_t i) const { return faces_[i]; }
    const std::vector<std::size_t>& cofaces(std::size_t i) const { return cofaces_[i]; }

    std::vector<Vertex> live_vertices() const;
    std::vector<std::size_t> live_simplices() const;
    /// Live simplices containing v, by increasing index.
    std::vector<std::size_t> live_star(Vertex v) const;

    /// Live vertices a ≠ v contained in every live maximal simplex through v.
    std::vector<Vertex> dominators(Vertex v) const;

    /// Deletes a live simplex that has no live cofaces.
    void erase(std::size_t i);
    /// Deletes the open star of v.
    void erase_star(Vertex v);

    SimplicialComplex snapshot() const;

private:
    const SimplicialComplex* k_;
    std::vector<char> alive_;
    std::size_t live_ = 0;
    std::vector<std::size_t> live_cofaces_;
    std::vector<std::vector<std::size_t>> faces_;
    std::vector<std::vector<std::size_t>> cofaces_;
    std::vector<std::vector<std::size_t>> star_;
};

} // namespace smorse::detail

#endif
