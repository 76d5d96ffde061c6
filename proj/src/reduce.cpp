#include "strongmorse/reduce.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <string>

#include "strongmorse/error.hpp"
#include "working_complex.hpp"

namespace smorse {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t Rng::iteration_seed(std::uint64_t master_seed, std::uint64_t iteration)
{
    return splitmix64(splitmix64(master_seed) ^ (iteration * 0xD1B54A32D192ED03ULL));
}

Rng Rng::for_iteration(std::uint64_t master_seed, std::uint64_t iteration)
{
    return Rng(iteration_seed(master_seed, iteration));
}

std::size_t Rng::uniform_index(std::size_t n)
{
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "uniform_index over an empty range");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

std::string_view to_string(CoreKind kind)
{
    switch (kind) {
    case CoreKind::StrongCore: return "strong-core";
    case CoreKind::WeakCore: return "weak-core";
    case CoreKind::StrongInternalCore: return "strong-internal";
    case CoreKind::Combined: return "weak-then-strong";
    }
    return "unknown";
}

CoreKind core_kind_from_string(std::string_view name)
{
    for (auto kind : {CoreKind::StrongCore, CoreKind::WeakCore, CoreKind::StrongInternalCore,
                      CoreKind::Combined})
        if (to_string(kind) == name)
            return kind;
    throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

namespace {

using detail::WorkingComplex;

/// Applies reduction steps to a working copy of K and accumulates the
/// matching, the critical set and the step log.
class Executor {
public:
    explicit Executor(const SimplicialComplex& k) : k_(k), w_(k) {}

    WorkingComplex& state() { return w_; }

    void strong_collapse(Vertex v, Vertex a, bool check)
    {
        if (check) {
            if (v >= k_.vertex_count() || a >= k_.vertex_count() || !w_.vertex_alive(v) ||
                !w_.vertex_alive(a))
                throw illegal("strong collapse names a vertex that is not present");
            auto doms = w_.dominators(v);
            if (!std::binary_search(doms.begin(), doms.end(), a))
                throw illegal("vertex " + std::to_string(k_.label(v)) + " is not dominated by " +
                              std::to_string(k_.label(a)));
        }
        for (std::size_t i : w_.live_star(v)) {
            const auto& s = k_.simplices()[i];
            if (!s.contains(a))
                pairs_.push_back({s, s.with(a)});
        }
        w_.erase_star(v);
        steps_.push_back(StrongCollapseStep{v, a});
    }

    void critical_removal(Vertex v, const std::vector<Simplex>* expected)
    {
        if (expected && (v >= k_.vertex_count() || !w_.vertex_alive(v)))
            throw illegal("critical removal names a vertex that is not present");
        std::vector<Simplex> star;
        for (std::size_t i : w_.live_star(v))
            star.push_back(k_.simplices()[i]);
        if (expected && *expected != star)
            throw illegal("descending star of " + std::to_string(k_.label(v)) +
                          " differs from the recorded one");
        critical_.insert(critical_.end(), star.begin(), star.end());
        w_.erase_star(v);
        steps_.push_back(CriticalRemovalStep{v, std::move(star)});
    }

    void weak_collapse(std::size_t lo, std::size_t hi, bool check)
    {
        if (check) {
            const auto& co = w_.cofaces(lo);
            if (!w_.alive(lo) || !w_.alive(hi) || std::find(co.begin(), co.end(), hi) == co.end() ||
                w_.live_cofaces(lo) != 1)
                throw illegal("not an elementary collapse of the current complex");
        }
        w_.erase(hi);
        w_.erase(lo);
        pairs_.push_back({k_.simplices()[lo], k_.simplices()[hi]});
        steps_.push_back(WeakCollapseStep{k_.simplices()[lo], k_.simplices()[hi]});
    }

    /// Trace whose critical set is the given list, or every live simplex.
    ReductionTrace finish(bool remaining_are_critical)
    {
        ReductionTrace t;
        t.steps = std::move(steps_);
        t.matching = Matching(std::move(pairs_));
        t.critical_set = std::move(critical_);
        if (remaining_are_critical)
            for (std::size_t i : w_.live_simplices())
                t.critical_set.push_back(k_.simplices()[i]);
        std::sort(t.critical_set.begin(), t.critical_set.end());
        return t;
    }

private:
    Error illegal(const std::string& what) const
    {
        return Error(ErrorCode::IllegalCollapseStep,
                     "step " + std::to_string(steps_.size()) + ": " + what);
    }

    const SimplicialComplex& k_;
    WorkingComplex w_;
    std::vector<MatchedPair> pairs_;
    std::vector<Simplex> critical_;
    std::vector<ReductionStep> steps_;
};

/// Live simplices with exactly one live coface, sampled uniformly.
class FreeFaceSet {
public:
    explicit FreeFaceSet(const WorkingComplex& w) : pos_(w.complex().size(), npos)
    {
        for (std::size_t i : w.live_simplices())
            refresh(w, i);
    }

    bool empty() const noexcept { return items_.empty(); }
    std::size_t pick(Rng& rng) const { return items_[rng.uniform_index(items_.size())]; }

    void refresh(const WorkingComplex& w, std::size_t i)
    {
        const bool free = w.alive(i) && w.live_cofaces(i) == 1;
        if (free && pos_[i] == npos) {
            pos_[i] = items_.size();
            items_.push_back(i);
        } else if (!free && pos_[i] != npos) {
            std::size_t last = items_.back();
            items_[pos_[i]] = last;
            pos_[last] = pos_[i];
            items_.pop_back();
            pos_[i] = npos;
        }
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> items_;
    std::vector<std::size_t> pos_;
};

void run_weak_collapses(Executor& ex, Rng& rng)
{
    auto& w = ex.state();
    FreeFaceSet free(w);
    while (!free.empty()) {
        std::size_t lo = free.pick(rng);
        std::size_t hi = 0;
        for (std::size_t c : w.cofaces(lo))
            if (w.alive(c))
                hi = c;
        ex.weak_collapse(lo, hi, false);
        for (std::size_t x : {lo, hi})
            free.refresh(w, x);
        for (std::size_t x : {lo, hi})
            for (std::size_t f : w.faces(x))
                free.refresh(w, f);
    }
}

void run_strong_morse(Executor& ex, Rng& rng)
{
    auto& w = ex.state();
    for (;;) {
        auto order = w.live_vertices();
        if (order.empty())
            return;
        rng.shuffle(std::span<Vertex>(order));
        bool collapsed = false;
        for (Vertex v : order) {
            auto doms = w.dominators(v);
            if (doms.empty())
                continue;
            ex.strong_collapse(v, doms[rng.uniform_index(doms.size())], false);
            collapsed = true;
            break;
        }
        if (!collapsed)
            ex.critical_removal(order.front(), nullptr);
    }
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void attach_poset(const SimplicialComplex& k, CoreResult& r)
{
    try {
        r.critical_poset = critical_poset(k, r.trace.matching, r.trace.critical_set);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MatchingNotAcyclic)
            throw Error(ErrorCode::MatchingNotAcyclic,
                        "internal consistency failure: reduction produced a cyclic matching");
        throw;
    }
    r.output_size = r.trace.critical_set.size();
}

} // namespace

CoreResult minimal_strong_core(const SimplicialComplex& k, Rng& rng)
{
    const auto start = std::chrono::steady_clock::now();
    Executor ex(k);
    auto& w = ex.state();
    for (;;) {
        std::vector<std::pair<Vertex, std::vector<Vertex>>> dominated;
        for (Vertex v : w.live_vertices())
            if (auto doms = w.dominators(v); !doms.empty())
                dominated.emplace_back(v, std::move(doms));
        if (dominated.empty())
            break;
        const auto& [v, doms] = dominated[rng.uniform_index(dominated.size())];
        ex.strong_collapse(v, doms[rng.uniform_index(doms.size())], false);
    }
    CoreResult r;
    r.kind = CoreKind::StrongCore;
    r.core_complex = w.snapshot();
    r.trace = ex.finish(true);
    r.trace.implied_g = vertex_function_from_trace(k, r.trace);
    r.input_size = k.size();
    r.output_size = r.core_complex->size();
    r.wall_time_seconds = seconds_since(start);
    return r;
}

CoreResult minimal_weak_core(const SimplicialComplex& k, Rng& rng)
{
    const auto start = std::chrono::steady_clock::now();
    Executor ex(k);
    run_weak_collapses(ex, rng);
    CoreResult r;
    r.kind = CoreKind::WeakCore;
    r.core_complex = ex.state().snapshot();
    r.trace = ex.finish(true);
    r.input_size = k.size();
    r.output_size = r.core_complex->size();
    r.wall_time_seconds = seconds_since(start);
    return r;
}

ReductionTrace strong_morse_reduction(const SimplicialComplex& k, Rng& rng)
{
    Executor ex(k);
    run_strong_morse(ex, rng);
    auto trace = ex.finish(false);
    trace.implied_g = vertex_function_from_trace(k, trace);
    return trace;
}

CoreResult strong_internal_core(const SimplicialComplex& k, Rng& rng)
{
    const auto start = std::chrono::steady_clock::now();
    CoreResult r;
    r.kind = CoreKind::StrongInternalCore;
    r.trace = strong_morse_reduction(k, rng);
    r.input_size = k.size();
    attach_poset(k, r);
    r.wall_time_seconds = seconds_since(start);
    return r;
}

CoreResult strong_internal_core(const SimplicialComplex& k, const VertexFunction& g)
{
    const auto start = std::chrono::steady_clock::now();
    const auto cls = classify_vertices(k, g);
    std::vector<Vertex> order(k.vertex_count());
    for (Vertex v = 0; v < order.size(); ++v)
        order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return g(a) > g(b) || (g(a) == g(b) && a > b);
    });

    Executor ex(k);
    for (Vertex v : order) {
        const auto& tag = cls.tags[v];
        if (tag.strong_critical)
            ex.critical_removal(v, nullptr);
        else
            ex.strong_collapse(v, *tag.witness, true);
    }
    CoreResult r;
    r.kind = CoreKind::StrongInternalCore;
    r.trace = ex.finish(false);
    r.trace.implied_g = g;
    r.input_size = k.size();
    attach_poset(k, r);
    r.wall_time_seconds = seconds_since(start);
    return r;
}

CoreResult combined_reduction(const SimplicialComplex& k, Rng& rng)
{
    const auto start = std::chrono::steady_clock::now();
    Executor ex(k);
    run_weak_collapses(ex, rng);
    const std::size_t weak_size = ex.state().live_count();
    run_strong_morse(ex, rng);

    CoreResult r;
    r.kind = CoreKind::Combined;
    r.trace = ex.finish(false);
    r.input_size = k.size();
    r.intermediate_size = weak_size;

    // Rebuild the weak-stage matching from its collapse sequence and merge
    // it with the strong-stage pairs before validating the union.
    std::vector<MatchedPair> collapses;
    for (const auto& step : r.trace.steps)
        if (const auto* w = std::get_if<WeakCollapseStep>(&step))
            collapses.push_back({w->free_face, w->coface});
    std::vector<MatchedPair> strong_pairs;
    std::set<MatchedPair> weak_set(collapses.begin(), collapses.end());
    for (const auto& p : r.trace.matching.pairs())
        if (!weak_set.count(p))
            strong_pairs.push_back(p);
    r.trace.matching =
        matching_from_collapse_sequence(k, collapses).merged(Matching(std::move(strong_pairs)));
    if (!validate_matching(k, r.trace.matching).valid())
        throw Error(ErrorCode::MatchingNotAcyclic,
                    "internal consistency failure: combined matching is not acyclic");
    attach_poset(k, r);
    r.wall_time_seconds = seconds_since(start);
    return r;
}

CoreResult reduce(const SimplicialComplex& k, CoreKind kind, Rng& rng)
{
    switch (kind) {
    case CoreKind::StrongCore: return minimal_strong_core(k, rng);
    case CoreKind::WeakCore: return minimal_weak_core(k, rng);
    case CoreKind::StrongInternalCore: return strong_internal_core(k, rng);
    case CoreKind::Combined: return combined_reduction(k, rng);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown core kind");
}

VertexFunction vertex_function_from_trace(const SimplicialComplex& k, const ReductionTrace& trace)
{
    std::vector<Vertex> removed;
    for (const auto& step : trace.steps) {
        if (const auto* s = std::get_if<StrongCollapseStep>(&step))
            removed.push_back(s->vertex);
        else if (const auto* c = std::get_if<CriticalRemovalStep>(&step))
            removed.push_back(c->vertex);
        else
            throw Error(ErrorCode::UnsupportedTrace,
                        "vertex functions exist only for vertex-removal traces");
    }
    VertexFunction g;
    g.values.assign(k.vertex_count(), 0.0);
    const std::size_t n = removed.size();
    for (std::size_t i = 0; i < n; ++i)
        g.values.at(removed[i]) = static_cast<double>(n - i);
    return g;
}

CoreResult replay(const SimplicialComplex& k, CoreKind kind, std::span<const ReductionStep> steps)
{
    const auto start = std::chrono::steady_clock::now();
    Executor ex(k);
    std::size_t after_weak = k.size();
    for (const auto& step : steps) {
        if (const auto* s = std::get_if<StrongCollapseStep>(&step)) {
            ex.strong_collapse(s->vertex, s->witness, true);
        } else if (const auto* c = std::get_if<CriticalRemovalStep>(&step)) {
            ex.critical_removal(c->vertex, &c->descending_star);
        } else {
            const auto& w = std::get<WeakCollapseStep>(step);
            auto lo = k.index_of(w.free_face);
            auto hi = k.index_of(w.coface);
            if (!lo || !hi)
                throw Error(ErrorCode::IllegalCollapseStep, "weak collapse names unknown simplices");
            ex.weak_collapse(*lo, *hi, true);
            after_weak = ex.state().live_count();
        }
    }

    CoreResult r;
    r.kind = kind;
    r.input_size = k.size();
    const bool subcomplex_core = kind == CoreKind::StrongCore || kind == CoreKind::WeakCore;
    if (subcomplex_core) {
        r.core_complex = ex.state().snapshot();
        r.trace = ex.finish(true);
        r.output_size = r.core_complex->size();
        if (kind == CoreKind::StrongCore)
            r.trace.implied_g = vertex_function_from_trace(k, r.trace);
    } else {
        if (ex.state().live_count() != 0)
            throw Error(ErrorCode::IllegalCollapseStep,
                        "trace leaves simplices unprocessed for an internal core");
        r.trace = ex.finish(false);
        if (kind == CoreKind::StrongInternalCore)
            r.trace.implied_g = vertex_function_from_trace(k, r.trace);
        if (kind == CoreKind::Combined)
            r.intermediate_size = after_weak;
        attach_poset(k, r);
    }
    r.wall_time_seconds = seconds_since(start);
    return r;
}

} // namespace smorse
