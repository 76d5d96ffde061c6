#ifndef STRONGMORSE_MATCHING_HPP
#define STRONGMORSE_MATCHING_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strongmorse/complex.hpp"
#include "strongmorse/simplex.hpp"

namespace smorse {

/// One matched pair σ ≺ τ with dim τ = dim σ + 1.
struct MatchedPair {
    Simplex lower;
    Simplex upper;

    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
    friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

/// A set of matched pairs, kept in canonical (sorted) order.
///
/// Construction does not check anything; `validate_matching` reports
/// whether the pairs form an acyclic matching on a given complex.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<MatchedPair> pairs);

    const std::vector<MatchedPair>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

    /// Union of two matchings (no validity check).
    Matching merged(const Matching& other) const;

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<MatchedPair> pairs_;
};

struct MatchingReport {
    bool members_in_complex = true;
    bool disjoint = true;
    bool codimension_one = true;
    bool acyclic = true;
    /// Human-readable description of the first violation found.
    std::optional<std::string> violation;
    /// For cyclic matchings: the simplices of one directed cycle, in order.
    std::vector<Simplex> witness_cycle;

    bool valid() const noexcept
    {
        return members_in_complex && disjoint && codimension_one && acyclic;
    }
};

/// Checks membership, disjointness, the codimension-1 condition and
/// acyclicity. Acyclicity is cycle detection on the Hasse diagram with
/// matched edges pointing up and all other cover edges pointing down.
MatchingReport validate_matching(const SimplicialComplex& k, const Matching& m);

/// Pairs and critical simplices of a collapse sequence, replayed from K.
/// Throws IllegalCollapseStep when a step's lower simplex is not free.
Matching matching_from_collapse_sequence(const SimplicialComplex& k,
                                         std::span<const MatchedPair> steps);

/// A real value per simplex, aligned with `K.simplices()`.
struct DiscreteMorseFunction {
    std::vector<double> values;
};

bool is_discrete_morse(const SimplicialComplex& k, const DiscreteMorseFunction& f);

/// Simplices σ with M(σ) = ∅. Throws InvalidMorseFunction.
std::vector<Simplex> critical_simplices(const SimplicialComplex& k, const DiscreteMorseFunction& f);

/// Gradient pairs of f. Throws InvalidMorseFunction.
Matching matching_from_morse(const SimplicialComplex& k, const DiscreteMorseFunction& f);

/// Integer-valued discrete Morse function from the rank of each class in
/// a linear extension of the localization poset. Throws
/// MatchingNotAcyclic (or InvalidMatching for malformed pairs).
DiscreteMorseFunction morse_from_matching(const SimplicialComplex& k, const Matching& m);

/// Simplices of K not covered by any pair of `m`.
std::vector<Simplex> unmatched_simplices(const SimplicialComplex& k, const Matching& m);

} // namespace smorse

#endif
