#ifndef STRONGMORSE_HOMOLOGY_HPP
#define STRONGMORSE_HOMOLOGY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "strongmorse/complex.hpp"
#include "strongmorse/reduce.hpp"

namespace smorse {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse integer matrix stored by columns; each column is sorted by row
/// and holds no explicit zeros.
class IntegerMatrix {
public:
    using Entry = std::pair<std::size_t, BigInt>;
    using Column = std::vector<Entry>;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);
    static IntegerMatrix from_dense(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    const Column& column(std::size_t c) const { return columns_.at(c); }

    BigInt at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const BigInt& value);

    bool is_zero() const;
    std::size_t nonzeros() const;

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// ∂_d: rows are the (d-1)-simplices and columns the d-simplices of K, both
/// in K's simplex order.
struct BoundaryMatrix {
    int dimension = 0;
    IntegerMatrix matrix;
};

/// ∂_1 .. ∂_dim(K). The face omitting the i-th vertex gets sign (-1)^i.
std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& k);

/// Non-zero invariant factors d_1 | d_2 | ... (all positive). Their count
/// is the rank.
std::vector<BigInt> smith_normal_form(const IntegerMatrix& m);

/// Rank over the rationals by fraction-free elimination. Independent of
/// smith_normal_form; used as a cross-check.
std::size_t bareiss_rank(const IntegerMatrix& m);

struct HomologyProfile {
    std::vector<std::size_t> betti;
    /// Torsion coefficients (> 1) of H_d, ascending.
    std::vector<std::vector<BigInt>> torsion;

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

std::string to_string(const HomologyProfile& h);

/// Equality after dropping trailing dimensions with zero Betti number and
/// no torsion, so a point and a contractible 3-complex compare equal.
bool same_homology(const HomologyProfile& a, const HomologyProfile& b);

/// Integral simplicial homology, dimensions 0 .. dim(K).
HomologyProfile homology(const SimplicialComplex& k);

struct VerificationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    HomologyProfile input_homology;
    HomologyProfile output_homology;

    bool passed() const;
    /// Names of the failed checks joined with ", ".
    std::string failures() const;
};

/// Checks a reduction result against K:
///  euler        χ of the output cells equals χ(K);
///  homology     homology of the core (or of the order complex of the
///               critical poset) equals homology(K);
///  thinness     the output face poset is thin with a bottom adjoined;
///  cell_counts  output cells match the trace (descending stars of the
///               critical removals, or |K| - 2|M| for subcomplex cores).
VerificationReport verify_reduction(const SimplicialComplex& k, const CoreResult& result);

} // namespace smorse

#endif
