#ifndef STRONGMORSE_POSET_HPP
#define STRONGMORSE_POSET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "strongmorse/complex.hpp"
#include "strongmorse/matching.hpp"

namespace smorse {

/// Payload of one poset element: the simplices it stands for (one for a
/// face-poset element, two for a matched class, none for abstract posets)
/// and an optional dimension grade.
struct PosetElement {
    std::vector<Simplex> members;
    std::optional<int> grade;

    friend bool operator==(const PosetElement&, const PosetElement&) = default;
};

/// A finite poset given by its elements and cover relations.
///
/// Built from any generating relation; the strict order is its transitive
/// closure and the covers are its transitive reduction. Construction
/// throws CyclicRelation when the closure is not antisymmetric.
class FinitePoset {
public:
    using Index = std::uint32_t;

    FinitePoset() = default;
    /// `relations` holds pairs (x, y) meaning x < y.
    FinitePoset(std::vector<PosetElement> elements,
                std::span<const std::pair<Index, Index>> relations);

    std::size_t size() const noexcept { return elements_.size(); }
    const PosetElement& element(Index i) const { return elements_.at(i); }
    const std::vector<PosetElement>& elements() const noexcept { return elements_; }
    std::optional<int> grade(Index i) const { return elements_.at(i).grade; }

    const std::vector<Index>& upper_covers(Index i) const { return up_.at(i); }
    const std::vector<Index>& lower_covers(Index i) const { return down_.at(i); }
    /// All cover pairs (x, y), x ⋖ y, sorted.
    std::vector<std::pair<Index, Index>> covers() const;

    /// Strict order x < y.
    bool less(Index x, Index y) const { return above_.at(x).test(y); }
    bool leq(Index x, Index y) const { return x == y || less(x, y); }
    /// Elements strictly above x.
    const boost::dynamic_bitset<>& strictly_above(Index x) const { return above_.at(x); }

    std::vector<Index> minimal_elements() const;
    std::vector<Index> maximal_elements() const;

    /// Index of the element whose only member is `s`.
    std::optional<Index> find_singleton(const Simplex& s) const;

    friend bool operator==(const FinitePoset& a, const FinitePoset& b)
    {
        return a.elements_ == b.elements_ && a.up_ == b.up_;
    }

private:
    std::vector<PosetElement> elements_;
    std::vector<std::vector<Index>> up_;
    std::vector<std::vector<Index>> down_;
    std::vector<boost::dynamic_bitset<>> above_;
};

/// Simplices of K ordered by inclusion, in K's simplex order, graded by
/// dimension.
FinitePoset face_poset(const SimplicialComplex& k);

/// Quotient of a face poset identifying matched pairs.
struct Localization {
    FinitePoset poset;
    /// Element of the source poset -> class in `poset`.
    std::vector<FinitePoset::Index> class_of;
};

/// Projects the covers of `x` onto matched classes and closes
/// transitively. Throws MatchingNotAcyclic when the projection is not
/// antisymmetric, InvalidMatching when a pair is not a cover of `x` or
/// pairs overlap.
Localization localization(const FinitePoset& x, const Matching& m);

/// The subposet of the localization induced by the classes of `critical`,
/// with the order restricted from the localization's full order.
/// Throws CriticalSimplexWasMatched / UnknownSimplex.
FinitePoset critical_subposet(const Localization& loc, const FinitePoset& x,
                              std::span<const Simplex> critical);

/// Face poset, localization and critical subposet in one call.
FinitePoset critical_poset(const SimplicialComplex& k, const Matching& m,
                           std::span<const Simplex> critical);

/// Simplicial complex of the chains of P; vertex i is labelled i.
SimplicialComplex order_complex(const FinitePoset& p);

struct ThinnessReport {
    bool thin = true;
    /// First interval [x, y] with grade difference 2 whose interior does
    /// not have exactly two elements; x is empty for the added bottom.
    std::optional<std::pair<std::optional<FinitePoset::Index>, FinitePoset::Index>> violation;
    std::size_t interior_size = 0;
};

/// Thinness of P with a bottom element adjoined. Throws NotGraded when an
/// element lacks a grade, a cover skips a grade, or a minimal element
/// has non-zero grade.
ThinnessReport is_thin_with_bottom(const FinitePoset& p);

inline constexpr std::size_t kIsomorphismSizeLimit = 256;

/// Order isomorphism by colour refinement and backtracking. Grades and
/// members are ignored. Throws SizeLimitExceeded above `limit` elements.
bool are_isomorphic(const FinitePoset& p, const FinitePoset& q,
                    std::size_t limit = kIsomorphismSizeLimit);

} // namespace smorse

#endif
