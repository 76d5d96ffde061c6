#ifndef STRONGMORSE_STRONG_MORSE_HPP
#define STRONGMORSE_STRONG_MORSE_HPP

#include <optional>
#include <vector>

#include "strongmorse/complex.hpp"
#include "strongmorse/matching.hpp"

namespace smorse {

/// A real value per vertex id (the function g on V(K)).
struct VertexFunction {
    std::vector<double> values;

    double operator()(Vertex v) const { return values.at(v); }
    friend bool operator==(const VertexFunction&, const VertexFunction&) = default;
};

/// g(v) = label(v), convenient for complexes labelled 0..n-1.
VertexFunction identity_on_labels(const SimplicialComplex& k);

/// Open star of v inside the sublevel complex K_{g(v)}, in K's ids.
std::vector<Simplex> descending_star(const SimplicialComplex& k, const VertexFunction& g, Vertex v);

/// Link of v inside K_{g(v)}.
SimplicialComplex descending_link(const SimplicialComplex& k, const VertexFunction& g, Vertex v);

struct VertexTag {
    bool strong_critical = true;
    /// Dominating vertex for descending dominated vertices.
    std::optional<Vertex> witness;

    friend bool operator==(const VertexTag&, const VertexTag&) = default;
};

struct VertexClassification {
    std::vector<VertexTag> tags;

    std::vector<Vertex> strong_critical() const;
    friend bool operator==(const VertexClassification&, const VertexClassification&) = default;
};

/// A vertex is descending dominated when some a with g(a) < g(v) dominates
/// it in K_{g(v)}; otherwise it is strong critical.
///
/// The witness is the dominating vertex with the largest g-value below
/// g(v), ties going to the smallest id. Every simplex of the sublevel star
/// of v is then paired along the edge to the witness, which for a
/// function ordering the vertices one after another is the last
/// dominating vertex to enter the filtration.
VertexClassification classify_vertices(const SimplicialComplex& k, const VertexFunction& g);

struct VertexFunctionMatching {
    Matching matching;
    std::vector<Simplex> critical;
};

/// Acyclic matching induced by g.
///
/// Each simplex σ is assigned to its top vertex: the vertex of σ with the
/// largest g-value, ties going to the larger id. If the top vertex is
/// strong critical σ is critical; otherwise σ is paired with σ ± a where
/// a is the top vertex's witness. For injective g the critical simplices
/// are exactly the descending stars of the strong critical vertices.
VertexFunctionMatching matching_from_vertex_function(const SimplicialComplex& k,
                                                     const VertexFunction& g);

} // namespace smorse

#endif
