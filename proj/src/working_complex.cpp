#include "working_complex.hpp"

#include <algorithm>
#include <optional>

namespace smorse::detail {

WorkingComplex::WorkingComplex(const SimplicialComplex& k)
    : k_(&k), alive_(k.size(), 1), live_(k.size()), live_cofaces_(k.size(), 0),
      faces_(k.size()), cofaces_(k.size()), star_(k.vertex_count())
{
    for (std::size_t i = 0; i < k.size(); ++i) {
        const auto& s = k.simplices()[i];
        for (Vertex v : s)
            star_[v].push_back(i);
        for (const auto& f : s.boundary()) {
            std::size_t j = *k.index_of(f);
            faces_[i].push_back(j);
            cofaces_[j].push_back(i);
        }
    }
    for (std::size_t i = 0; i < k.size(); ++i)
        live_cofaces_[i] = cofaces_[i].size();
}

std::vector<Vertex> WorkingComplex::live_vertices() const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < k_->vertex_count(); ++v)
        if (alive_[v])
            out.push_back(v);
    return out;
}

std::vector<std::size_t> WorkingComplex::live_simplices() const
{
    std::vector<std::size_t> out;
    out.reserve(live_);
    for (std::size_t i = 0; i < alive_.size(); ++i)
        if (alive_[i])
            out.push_back(i);
    return out;
}

std::vector<std::size_t> WorkingComplex::live_star(Vertex v) const
{
    std::vector<std::size_t> out;
    for (std::size_t i : star_[v])
        if (alive_[i])
            out.push_back(i);
    return out;
}

std::vector<Vertex> WorkingComplex::dominators(Vertex v) const
{
    std::optional<std::vector<Vertex>> common;
    for (std::size_t i : star_[v]) {
        if (!alive_[i] || live_cofaces_[i] != 0)
            continue;
        const auto& s = k_->simplices()[i];
        if (!common) {
            common.emplace(s.begin(), s.end());
        } else {
            std::vector<Vertex> next;
            std::set_intersection(common->begin(), common->end(), s.begin(), s.end(),
                                  std::back_inserter(next));
            *common = std::move(next);
        }
        if (common->size() <= 1)
            break;
    }
    std::vector<Vertex> out;
    for (Vertex a : common.value_or(std::vector<Vertex>{}))
        if (a != v)
            out.push_back(a);
    return out;
}

void WorkingComplex::erase(std::size_t i)
{
    alive_[i] = 0;
    --live_;
    for (std::size_t f : faces_[i])
        --live_cofaces_[f];
}

void WorkingComplex::erase_star(Vertex v)
{
    // Star indices increase with dimension; delete from the top down.
    const auto& star = star_[v];
    for (auto it = star.rbegin(); it != star.rend(); ++it)
        if (alive_[*it])
            erase(*it);
}

SimplicialComplex WorkingComplex::snapshot() const
{
    std::vector<Simplex> gens;
    for (std::size_t i = 0; i < alive_.size(); ++i)
        if (alive_[i] && live_cofaces_[i] == 0)
            gens.push_back(k_->simplices()[i]);
    return SimplicialComplex::from_generators(k_->labels(), gens);
}

} // namespace smorse::detail
