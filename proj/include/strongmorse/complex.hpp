#ifndef STRONGMORSE_COMPLEX_HPP
#define STRONGMORSE_COMPLEX_HPP

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "strongmorse/simplex.hpp"

namespace smorse {

/// A finite abstract simplicial complex.
///
/// Vertices are dense ids 0..n-1; `label(v)` recovers the label the vertex
/// was read with. Labels are kept in increasing order, so id order and
/// label order agree. Every subcomplex produced by the operations below
/// renumbers its vertices densely but keeps their labels.
///
/// All simplices are enumerated eagerly at construction in (dim, lex)
/// order; `simplices()[i]` has index i. Instances are immutable.
class SimplicialComplex {
public:
    /// The empty complex.
    SimplicialComplex() = default;

    /// Builds the downward closure of `facets`; non-maximal input facets
    /// are absorbed. Throws EmptyFacet / DuplicateVertexInFacet.
    static SimplicialComplex from_facets(const std::vector<std::vector<Label>>& facets);

    /// Downward closure of `generators`, which use vertex ids of `labels`.
    /// Vertices not touched by any generator are dropped and the rest are
    /// renumbered densely.
    static SimplicialComplex from_generators(std::span<const Label> labels,
                                             const std::vector<Simplex>& generators);

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    /// -1 for the empty complex.
    int dimension() const noexcept { return static_cast<int>(dim_offsets_.size()) - 2; }
    bool empty() const noexcept { return simplices_.empty(); }
    /// Total number of simplices.
    std::size_t size() const noexcept { return simplices_.size(); }

    const std::vector<Simplex>& facets() const noexcept { return facets_; }
    const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
    std::span<const Simplex> simplices_of_dim(int d) const;

    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_.contains(s); }

    const std::vector<Label>& labels() const noexcept { return labels_; }
    Label label(Vertex v) const;
    std::optional<Vertex> vertex_of(Label label) const;
    /// Throws UnknownVertex.
    Vertex require_vertex(Label label) const;
    std::vector<Label> to_labels(const Simplex& s) const;
    /// Throws UnknownVertex.
    Simplex from_labels(std::span<const Label> labels) const;
    std::vector<std::vector<Label>> facet_labels() const;

    std::vector<std::size_t> f_vector() const;
    long long euler_characteristic() const;

    /// Same labels and same facets.
    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

private:
    void build(std::vector<Simplex> generators);

    std::vector<Label> labels_;
    std::vector<Simplex> facets_;
    std::vector<Simplex> simplices_;
    std::vector<std::size_t> dim_offsets_;
    std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
};

/// Simplices of K containing v (in K's ids). Throws UnknownVertex.
std::vector<Simplex> open_star(const SimplicialComplex& k, Vertex v);

/// Subcomplex of simplices σ with v ∉ σ and σ ∪ {v} ∈ K.
SimplicialComplex link(const SimplicialComplex& k, Vertex v);

/// v * lk(v, K).
SimplicialComplex closed_star(const SimplicialComplex& k, Vertex v);

/// Vertices contained in every facet. A point is its own apex; the empty
/// complex has none.
std::vector<Vertex> cone_apexes(const SimplicialComplex& k);

/// Vertices a ≠ v such that every facet containing v also contains a,
/// i.e. lk(v, K) is a cone with apex a.
std::vector<Vertex> dominating_vertices(const SimplicialComplex& k, Vertex v);

/// K ∖ v: simplices disjoint from v.
SimplicialComplex remove_vertex(const SimplicialComplex& k, Vertex v);

/// Simplices of K with all vertices in `w`.
SimplicialComplex full_subcomplex(const SimplicialComplex& k, std::span<const Vertex> w);

/// The unique simplex properly containing σ, if there is exactly one.
/// Throws UnknownSimplex.
std::optional<Simplex> free_face(const SimplicialComplex& k, const Simplex& sigma);

/// a * K with a fresh apex labelled `apex_label`.
SimplicialComplex cone(const SimplicialComplex& k, Label apex_label);

} // namespace smorse

#endif
