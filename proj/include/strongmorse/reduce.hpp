#ifndef STRONGMORSE_REDUCE_HPP
#define STRONGMORSE_REDUCE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "strongmorse/complex.hpp"
#include "strongmorse/matching.hpp"
#include "strongmorse/poset.hpp"
#include "strongmorse/strong_morse.hpp"

namespace smorse {

/// Seeded random stream with a platform-independent shuffle.
///
/// Only the engine (mt19937_64) comes from the standard library; index
/// sampling and shuffling are done here so identical seeds give
/// identical streams with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream for one iteration of a multi-run experiment.
    static Rng for_iteration(std::uint64_t master_seed, std::uint64_t iteration);
    static std::uint64_t iteration_seed(std::uint64_t master_seed, std::uint64_t iteration);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n > 0.
    std::size_t uniform_index(std::size_t n);

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[uniform_index(i)]);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// v was dominated by `witness` in the current complex and its star was
/// collapsed onto the witness.
struct StrongCollapseStep {
    Vertex vertex;
    Vertex witness;
    friend bool operator==(const StrongCollapseStep&, const StrongCollapseStep&) = default;
};

/// v was removed without a dominating vertex; its current star (the
/// descending star) became critical.
struct CriticalRemovalStep {
    Vertex vertex;
    std::vector<Simplex> descending_star;
    friend bool operator==(const CriticalRemovalStep&, const CriticalRemovalStep&) = default;
};

/// Elementary collapse of a free face into its unique coface.
struct WeakCollapseStep {
    Simplex free_face;
    Simplex coface;
    friend bool operator==(const WeakCollapseStep&, const WeakCollapseStep&) = default;
};

using ReductionStep = std::variant<StrongCollapseStep, CriticalRemovalStep, WeakCollapseStep>;

/// Ordered record of a reduction. Vertices and simplices use the ids of
/// the input complex.
///
/// Every simplex of the input ends up either in exactly one matched pair
/// or in `critical_set`; for subcomplex cores the critical set is the core
/// itself.
struct ReductionTrace {
    std::vector<ReductionStep> steps;
    Matching matching;
    std::vector<Simplex> critical_set;
    std::optional<VertexFunction> implied_g;

    friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

enum class CoreKind { StrongCore, WeakCore, StrongInternalCore, Combined };

std::string_view to_string(CoreKind kind);
/// Accepts the CLI method names (strong-core, weak-core, strong-internal,
/// weak-then-strong). Throws InvalidArgument.
CoreKind core_kind_from_string(std::string_view name);

struct CoreResult {
    CoreKind kind = CoreKind::StrongCore;
    /// Set for strong and weak cores.
    std::optional<SimplicialComplex> core_complex;
    /// Set for strong internal and combined cores.
    std::optional<FinitePoset> critical_poset;
    ReductionTrace trace;
    std::size_t input_size = 0;
    std::size_t output_size = 0;
    /// Size of the minimal weak core reached by the first combined stage.
    std::optional<std::size_t> intermediate_size;
    double wall_time_seconds = 0.0;
};

/// Removes uniformly random dominated vertices (each collapsed onto a
/// uniformly random dominating vertex) until none is left.
CoreResult minimal_strong_core(const SimplicialComplex& k, Rng& rng);

/// Performs uniformly random elementary collapses until no free face is
/// left.
CoreResult minimal_weak_core(const SimplicialComplex& k, Rng& rng);

/// Randomized strong Morse reduction.
///
/// Each round shuffles the current vertices and looks for the first one
/// dominated by another current vertex a; its star is paired as
/// (σ, σ ∪ {a}) for a ∉ σ and deleted. When no vertex is dominated the
/// first shuffled vertex is deleted and its star becomes critical.
ReductionTrace strong_morse_reduction(const SimplicialComplex& k, Rng& rng);

/// strong_morse_reduction followed by the critical poset on the face
/// poset of K.
CoreResult strong_internal_core(const SimplicialComplex& k, Rng& rng);

/// The strong internal core core_g(K) of a fixed vertex function: vertices
/// are processed in decreasing (g, id) order using the witnesses of
/// classify_vertices.
CoreResult strong_internal_core(const SimplicialComplex& k, const VertexFunction& g);

/// Random minimal weak core, then a random strong internal core of it. The
/// matching is the union of both stages and the critical poset is taken
/// on the face poset of K.
CoreResult combined_reduction(const SimplicialComplex& k, Rng& rng);

CoreResult reduce(const SimplicialComplex& k, CoreKind kind, Rng& rng);

/// g(v_i) = n - i + 1 for the i-th removed vertex (1-based) of a trace
/// with n vertex removals, 0 on vertices never removed. Throws
/// UnsupportedTrace for traces with weak collapses.
VertexFunction vertex_function_from_trace(const SimplicialComplex& k, const ReductionTrace& trace);

/// Re-executes the steps of `trace` on K, checking each step is legal
/// (domination, freeness, star contents), and rebuilds the result.
/// Throws IllegalCollapseStep.
CoreResult replay(const SimplicialComplex& k, CoreKind kind, std::span<const ReductionStep> steps);

} // namespace smorse

#endif
