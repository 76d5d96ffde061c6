#include "strongmorse/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "strongmorse/error.hpp"
#include "strongmorse/poset.hpp"

namespace smorse {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<long long>>& rows)
{
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    IntegerMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n)
            throw Error(ErrorCode::InvalidArgument, "ragged dense matrix");
        for (std::size_t c = 0; c < n; ++c)
            if (rows[r][c] != 0)
                m.columns_[c].emplace_back(r, BigInt(rows[r][c]));
    }
    return m;
}

BigInt IntegerMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    return it != col.end() && it->first == r ? it->second : BigInt(0);
}

void IntegerMatrix::set(std::size_t r, std::size_t c, const BigInt& value)
{
    if (r >= rows_)
        throw Error(ErrorCode::InvalidArgument, "row out of range");
    auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    const bool present = it != col.end() && it->first == r;
    if (value == 0) {
        if (present)
            col.erase(it);
    } else if (present) {
        it->second = value;
    } else {
        col.insert(it, Entry{r, value});
    }
}

bool IntegerMatrix::is_zero() const
{
    return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
}

std::size_t IntegerMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::InvalidArgument, "matrix shapes do not agree");
    IntegerMatrix out(a.rows(), b.cols());
    std::vector<BigInt> acc(a.rows());
    std::vector<char> touched(a.rows(), 0);
    for (std::size_t c = 0; c < b.cols(); ++c) {
        std::vector<std::size_t> rows;
        for (const auto& [k, bv] : b.column(c))
            for (const auto& [r, av] : a.column(k)) {
                if (!touched[r]) {
                    touched[r] = 1;
                    acc[r] = 0;
                    rows.push_back(r);
                }
                acc[r] += av * bv;
            }
        std::sort(rows.begin(), rows.end());
        for (std::size_t r : rows) {
            if (acc[r] != 0)
                out.columns_[c].emplace_back(r, acc[r]);
            touched[r] = 0;
        }
    }
    return out;
}

std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& k)
{
    std::vector<BoundaryMatrix> out;
    for (int d = 1; d <= k.dimension(); ++d) {
        const auto lower = k.simplices_of_dim(d - 1);
        const auto upper = k.simplices_of_dim(d);
        const std::size_t lower_offset = *k.index_of(lower.front());
        BoundaryMatrix bm{d, IntegerMatrix(lower.size(), upper.size())};
        for (std::size_t c = 0; c < upper.size(); ++c) {
            const auto faces = upper[c].boundary();
            std::vector<IntegerMatrix::Entry> col;
            for (std::size_t i = 0; i < faces.size(); ++i)
                col.emplace_back(*k.index_of(faces[i]) - lower_offset, BigInt(i % 2 == 0 ? 1 : -1));
            std::sort(col.begin(), col.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            for (auto& [r, v] : col)
                bm.matrix.set(r, c, v);
        }
        out.push_back(std::move(bm));
    }
    return out;
}

namespace {

using Column = IntegerMatrix::Column;

/// col_target += factor * col_source, keeping rows sorted and dropping zeros.
Column axpy(const Column& target, const BigInt& factor, const Column& source)
{
    Column out;
    out.reserve(target.size() + source.size());
    auto t = target.begin();
    auto s = source.begin();
    while (t != target.end() || s != source.end()) {
        if (s == source.end() || (t != target.end() && t->first < s->first)) {
            out.push_back(*t++);
        } else if (t == target.end() || s->first < t->first) {
            out.emplace_back(s->first, factor * s->second);
            ++s;
        } else {
            BigInt v = t->second + factor * s->second;
            if (v != 0)
                out.emplace_back(t->first, std::move(v));
            ++t;
            ++s;
        }
    }
    return out;
}

/// Eliminates unit pivots while the matrix is sparse. Each pivot removes
/// one row and one column and contributes an invariant factor 1.
std::size_t eliminate_unit_pivots(std::vector<Column>& cols, std::vector<char>& col_alive,
                                  std::vector<char>& row_alive, std::size_t nrows)
{
    std::vector<std::set<std::size_t>> row_cols(nrows);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& e : cols[c])
            row_cols[e.first].insert(c);

    std::size_t units = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::size_t> order;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (col_alive[c] && !cols[c].empty())
                order.push_back(c);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return cols[a].size() < cols[b].size();
        });
        for (std::size_t c : order) {
            if (!col_alive[c])
                continue;
            std::size_t best_row = nrows;
            BigInt pivot;
            for (const auto& [r, v] : cols[c])
                if (abs(v) == 1 &&
                    (best_row == nrows || row_cols[r].size() < row_cols[best_row].size())) {
                    best_row = r;
                    pivot = v;
                }
            if (best_row == nrows)
                continue;
            const std::size_t r = best_row;
            std::vector<std::size_t> others(row_cols[r].begin(), row_cols[r].end());
            for (std::size_t j : others) {
                if (j == c)
                    continue;
                BigInt a_rj;
                for (const auto& e : cols[j])
                    if (e.first == r)
                        a_rj = e.second;
                for (const auto& e : cols[j])
                    row_cols[e.first].erase(j);
                cols[j] = axpy(cols[j], -a_rj * pivot, cols[c]);
                for (const auto& e : cols[j])
                    row_cols[e.first].insert(j);
            }
            for (const auto& e : cols[c])
                row_cols[e.first].erase(c);
            cols[c].clear();
            col_alive[c] = 0;
            row_alive[r] = 0;
            ++units;
            progress = true;
        }
    }
    return units;
}

/// Diagonalizes a dense matrix with smallest-magnitude pivots and returns
/// the absolute values of the non-zero diagonal entries.
std::vector<BigInt> dense_diagonal(std::vector<std::vector<BigInt>> a)
{
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a.front().size();
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Move the smallest non-zero entry of the remaining block to (t, t).
        std::size_t pr = m, pc = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pr == m || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == m)
            break;
        for (;;) {
            std::swap(a[t], a[pr]);
            for (std::size_t i = 0; i < m; ++i)
                std::swap(a[i][t], a[i][pc]);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0)
                    continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < n; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0)
                    continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                    clean = false;
            }
            if (clean)
                break;
            // A remainder survived; it is smaller than the pivot.
            pr = t;
            pc = t;
            for (std::size_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0 && abs(a[i][t]) < abs(a[pr][pc])) {
                    pr = i;
                    pc = t;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0 && abs(a[t][j]) < abs(a[pr][pc])) {
                    pr = t;
                    pc = j;
                }
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

/// Turns a diagonal into the divisibility chain: diag(a, b) is equivalent
/// to diag(gcd(a, b), lcm(a, b)).
void normalize_chain(std::vector<BigInt>& d)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0)
                continue;
            BigInt g = gcd(d[i], d[j]);
            BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    std::sort(d.begin(), d.end());
}

} // namespace

std::vector<BigInt> smith_normal_form(const IntegerMatrix& m)
{
    std::vector<Column> cols(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols[c] = m.column(c);
    std::vector<char> col_alive(m.cols(), 1);
    std::vector<char> row_alive(m.rows(), 1);
    const std::size_t units = eliminate_unit_pivots(cols, col_alive, row_alive, m.rows());

    std::vector<std::size_t> row_map(m.rows(), 0);
    std::size_t live_rows = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (row_alive[r])
            row_map[r] = live_rows++;
    std::vector<std::vector<BigInt>> dense;
    std::vector<std::size_t> live_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (col_alive[c] && !cols[c].empty())
            live_cols.push_back(c);
    if (!live_cols.empty()) {
        dense.assign(live_rows, std::vector<BigInt>(live_cols.size()));
        for (std::size_t j = 0; j < live_cols.size(); ++j)
            for (const auto& [r, v] : cols[live_cols[j]])
                dense[row_map[r]][j] = v;
    }

    std::vector<BigInt> factors(units, BigInt(1));
    auto rest = dense_diagonal(std::move(dense));
    factors.insert(factors.end(), rest.begin(), rest.end());
    normalize_chain(factors);
    return factors;
}

std::size_t bareiss_rank(const IntegerMatrix& m)
{
    std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            a[r][c] = v;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::string to_string(const HomologyProfile& h)
{
    std::ostringstream out;
    out << "betti (";
    for (std::size_t i = 0; i < h.betti.size(); ++i)
        out << (i ? "," : "") << h.betti[i];
    out << ")";
    for (std::size_t d = 0; d < h.torsion.size(); ++d)
        for (const auto& t : h.torsion[d])
            out << " Z/" << t << " in H" << d;
    return out.str();
}

namespace {

HomologyProfile trimmed(HomologyProfile h)
{
    while (!h.betti.empty() && h.betti.back() == 0 && h.torsion.back().empty()) {
        h.betti.pop_back();
        h.torsion.pop_back();
    }
    return h;
}

} // namespace

bool same_homology(const HomologyProfile& a, const HomologyProfile& b)
{
    return trimmed(a) == trimmed(b);
}

HomologyProfile homology(const SimplicialComplex& k)
{
    HomologyProfile h;
    const int dim = k.dimension();
    if (dim < 0)
        return h;
    const auto f = k.f_vector();
    const auto boundaries = boundary_matrices(k);
    // rank[d] = rank of ∂_d, with ∂_0 = ∂_{dim+1} = 0.
    std::vector<std::size_t> rank(dim + 2, 0);
    std::vector<std::vector<BigInt>> factors(dim + 2);
    for (const auto& b : boundaries) {
        factors[b.dimension] = smith_normal_form(b.matrix);
        rank[b.dimension] = factors[b.dimension].size();
    }
    h.betti.resize(dim + 1);
    h.torsion.resize(dim + 1);
    for (int d = 0; d <= dim; ++d) {
        h.betti[d] = f[d] - rank[d] - rank[d + 1];
        for (const auto& x : factors[d + 1])
            if (x > 1)
                h.torsion[d].push_back(x);
    }
    return h;
}

bool VerificationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string VerificationReport::failures() const
{
    std::string out;
    for (const auto& c : checks)
        if (!c.passed)
            out += (out.empty() ? "" : ", ") + c.name;
    return out;
}

namespace {

std::vector<std::size_t> counts_by_dim(const std::vector<Simplex>& cells)
{
    std::vector<std::size_t> out;
    for (const auto& s : cells) {
        const auto d = static_cast<std::size_t>(s.dim());
        if (out.size() <= d)
            out.resize(d + 1, 0);
        ++out[d];
    }
    return out;
}

long long alternating_sum(const std::vector<std::size_t>& counts)
{
    long long chi = 0;
    for (std::size_t d = 0; d < counts.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[d]);
    return chi;
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

VerificationCheck thinness_check(const FinitePoset& p)
{
    VerificationCheck c{"thinness", false, ""};
    try {
        auto t = is_thin_with_bottom(p);
        c.passed = t.thin;
        if (!t.thin)
            c.detail = "an interval of length 2 has " + std::to_string(t.interior_size) +
                       " interior elements";
    } catch (const Error& e) {
        c.detail = e.what();
    }
    return c;
}

} // namespace

VerificationReport verify_reduction(const SimplicialComplex& k, const CoreResult& result)
{
    VerificationReport rep;
    rep.input_homology = homology(k);
    const long long chi = k.euler_characteristic();

    if (result.core_complex) {
        const auto& core = *result.core_complex;
        const long long core_chi = core.euler_characteristic();
        rep.checks.push_back({"euler", core_chi == chi,
                              "core " + std::to_string(core_chi) + ", input " + std::to_string(chi)});
        rep.output_homology = homology(core);
        rep.checks.push_back({"homology", same_homology(rep.output_homology, rep.input_homology),
                              "core " + to_string(rep.output_homology) + ", input " +
                                  to_string(rep.input_homology)});
        rep.checks.push_back(thinness_check(face_poset(core)));
        const std::size_t expected = k.size() - 2 * result.trace.matching.size();
        rep.checks.push_back({"cell_counts", core.size() == expected && result.output_size == expected,
                              "core " + std::to_string(core.size()) + ", |K| - 2|M| = " +
                                  std::to_string(expected)});
        return rep;
    }

    if (!result.critical_poset) {
        rep.checks.push_back({"output", false, "result has neither a core nor a critical poset"});
        return rep;
    }
    const auto& p = *result.critical_poset;

    std::vector<std::size_t> poset_counts;
    for (const auto& e : p.elements()) {
        const auto d = static_cast<std::size_t>(e.grade.value_or(0));
        if (poset_counts.size() <= d)
            poset_counts.resize(d + 1, 0);
        ++poset_counts[d];
    }
    const long long crit_chi = alternating_sum(poset_counts);
    rep.checks.push_back({"euler", crit_chi == chi,
                          "cells " + std::to_string(crit_chi) + ", input " + std::to_string(chi)});

    if (p.size() == 0) {
        rep.checks.push_back({"homology", k.empty(), "empty critical poset"});
    } else {
        rep.output_homology = homology(order_complex(p));
        rep.checks.push_back({"homology", same_homology(rep.output_homology, rep.input_homology),
                              "cells " + to_string(rep.output_homology) + ", input " +
                                  to_string(rep.input_homology)});
    }
    rep.checks.push_back(thinness_check(p));

    std::vector<Simplex> stars;
    for (const auto& step : result.trace.steps)
        if (const auto* c = std::get_if<CriticalRemovalStep>(&step))
            stars.insert(stars.end(), c->descending_star.begin(), c->descending_star.end());
    const auto star_counts = counts_by_dim(stars);
    rep.checks.push_back({"cell_counts",
                          star_counts == poset_counts &&
                              2 * result.trace.matching.size() + p.size() == k.size(),
                          "cells " + join(poset_counts) + ", descending stars " + join(star_counts)});
    return rep;
}

} // namespace smorse
