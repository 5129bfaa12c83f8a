#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tzeig {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/**
 * Dense order-m tensor with every mode of size n.
 *
 * Entries are stored row-major: the first index varies slowest and the last
 * index fastest, so T[i1, ..., im] lives at ((i1 * n + i2) * n + ...) + im.
 * Indices are 0-based. Instances are immutable once built.
 */
class CubicTensor {
public:
    CubicTensor(int order, int dim, std::vector<double> entries);

    int order() const noexcept { return order_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const double> entries() const noexcept { return entries_; }

    double operator()(std::span<const int> index) const;
    double operator()(std::initializer_list<int> index) const;

    std::size_t offset(std::span<const int> index) const;

    /// True when every entry is unchanged by all permutations of its index.
    bool is_symmetric(double tol = 0.0) const;

    friend bool operator==(const CubicTensor&, const CubicTensor&) = default;

private:
    int order_;
    int dim_;
    std::vector<double> entries_;
};

/// Nonnegative tensor whose first-mode fibers each sum to one.
class TransitionTensor {
public:
    explicit TransitionTensor(CubicTensor base, double tol = 1e-12);

    const CubicTensor& base() const noexcept { return base_; }
    int order() const noexcept { return base_.order(); }
    int dim() const noexcept { return base_.dim(); }

private:
    CubicTensor base_;
};

/// n^m, throwing if it does not fit in memory indexing.
std::size_t tensor_size(int order, int dim);

/// y = T x^{m-1}: contract every mode except the first against x.
Vector apply(const CubicTensor& t, const Vector& x);

/// Y = T[x]^{m-2}: contract every mode except the first two against x.
Matrix collapse(const CubicTensor& t, const Vector& x);

/// x' T x^{m-1}.
double rayleigh(const CubicTensor& t, const Vector& x);

// Generators ---------------------------------------------------------------

CubicTensor make_diagonal(const Vector& diag, int order);

/// 3x3x3 symmetric test tensor of Kolda and Mayo (Example 3.6).
CubicTensor make_kolda_mayo();

enum class AlternatingForm {
    /// T[i1..im] = sum_r (-1)^{i_r} / i_r with 1-based indices.
    PerIndex,
    /// T[i1..im] = sum_{r=1}^{m} (-1)^r / r, the same value everywhere.
    Constant,
};

CubicTensor make_alternating(int order, int dim, AlternatingForm form = AlternatingForm::PerIndex);

TransitionTensor make_random_transition(int dim, int order, std::uint64_t seed);

/// Gaussian entries averaged over all index permutations.
CubicTensor make_random_symmetric(int order, int dim, std::uint64_t seed);

/// Gaussian entries, no structure.
CubicTensor make_random(int order, int dim, std::uint64_t seed);

}  // namespace tzeig
