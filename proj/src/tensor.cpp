#include "tzeig/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tzeig/error.hpp"
#include "tzeig/rng.hpp"

namespace tzeig {

namespace {

// Contract the last mode of a row-major block of `rows * n` values against x.
std::vector<double> contract_last(const std::vector<double>& block, const Vector& x) {
    const auto n = static_cast<std::size_t>(x.size());
    const std::size_t rows = block.size() / n;
    std::vector<double> out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = block.data() + r * n;
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * x[static_cast<Eigen::Index>(k)];
        out[r] = acc;
    }
    return out;
}

// Contract trailing modes until `keep` modes remain.
std::vector<double> contract_down_to(const CubicTensor& t, const Vector& x, int keep) {
    if (x.size() != t.dim()) {
        throw InvalidArgument("vector length " + std::to_string(x.size()) +
                              " does not match tensor dimension " + std::to_string(t.dim()));
    }
    std::vector<double> block(t.entries().begin(), t.entries().end());
    for (int mode = t.order(); mode > keep; --mode) block = contract_last(block, x);
    return block;
}

// Next multi-index in row-major order; false after the last one.
bool next_index(std::vector<int>& idx, int n) {
    for (auto pos = static_cast<int>(idx.size()) - 1; pos >= 0; --pos) {
        if (++idx[pos] < n) return true;
        idx[pos] = 0;
    }
    return false;
}

}  // namespace

std::size_t tensor_size(int order, int dim) {
    if (order < 1 || dim < 1) throw InvalidArgument("order and dim must be positive");
    std::size_t total = 1;
    for (int r = 0; r < order; ++r) {
        if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim)) {
            throw InvalidArgument("tensor too large");
        }
        total *= static_cast<std::size_t>(dim);
    }
    return total;
}

CubicTensor::CubicTensor(int order, int dim, std::vector<double> entries)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
    if (order < 3) throw InvalidArgument("tensor order must be at least 3, got " + std::to_string(order));
    if (dim < 1) throw InvalidArgument("tensor dimension must be at least 1");
    const std::size_t expected = tensor_size(order, dim);
    if (entries_.size() != expected) {
        throw InvalidArgument("expected " + std::to_string(expected) + " entries, got " +
                              std::to_string(entries_.size()));
    }
    for (double v : entries_) {
        if (!std::isfinite(v)) throw InvalidArgument("tensor entries must be finite");
    }
}

std::size_t CubicTensor::offset(std::span<const int> index) const {
    if (static_cast<int>(index.size()) != order_) throw InvalidArgument("index arity does not match tensor order");
    std::size_t off = 0;
    for (int i : index) {
        if (i < 0 || i >= dim_) throw InvalidArgument("tensor index out of range");
        off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
}

double CubicTensor::operator()(std::span<const int> index) const { return entries_[offset(index)]; }

double CubicTensor::operator()(std::initializer_list<int> index) const {
    return (*this)(std::span<const int>(index.begin(), index.size()));
}

bool CubicTensor::is_symmetric(double tol) const {
    std::vector<int> idx(static_cast<std::size_t>(order_), 0);
    std::vector<int> sorted;
    do {
        sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::abs((*this)(idx) - (*this)(sorted)) > tol) return false;
    } while (next_index(idx, dim_));
    return true;
}

TransitionTensor::TransitionTensor(CubicTensor base, double tol) : base_(std::move(base)) {
    const auto n = static_cast<std::size_t>(base_.dim());
    const auto data = base_.entries();
    const std::size_t fibers = data.size() / n;
    for (double v : data) {
        if (v < 0.0) throw InvalidArgument("transition tensor entries must be nonnegative");
    }
    // Fiber over the first index for fixed (i2..im) is strided by `fibers`.
    for (std::size_t f = 0; f < fibers; ++f) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += data[i * fibers + f];
        if (std::abs(sum - 1.0) > tol) {
            throw InvalidArgument("transition tensor fiber " + std::to_string(f) + " sums to " +
                                  std::to_string(sum));
        }
    }
}

Vector apply(const CubicTensor& t, const Vector& x) {
    auto y = contract_down_to(t, x, 1);
    return Eigen::Map<const Vector>(y.data(), static_cast<Eigen::Index>(y.size()));
}

Matrix collapse(const CubicTensor& t, const Vector& x) {
    auto y = contract_down_to(t, x, 2);
    const Eigen::Index n = t.dim();
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(y.data(), n, n);
}

double rayleigh(const CubicTensor& t, const Vector& x) {
    if (x.size() == 0 || x.isZero(0.0)) throw InvalidArgument("rayleigh quotient of the zero vector");
    return x.dot(apply(t, x));
}

Vector random_unit_vector(int n, Rng& rng) {
    std::normal_distribution<double> normal;
    Vector v(n);
    do {
        for (auto& c : v) c = normal(rng);
    } while (v.norm() == 0.0);
    return v / v.norm();
}

CubicTensor make_diagonal(const Vector& diag, int order) {
    const auto n = static_cast<int>(diag.size());
    std::vector<double> entries(tensor_size(order, n), 0.0);
    std::size_t stride = 0;
    for (int r = 0; r < order; ++r) stride = stride * static_cast<std::size_t>(n) + 1;
    for (int i = 0; i < n; ++i) entries[static_cast<std::size_t>(i) * stride] = diag[i];
    return CubicTensor(order, n, std::move(entries));
}

CubicTensor make_kolda_mayo() {
    // Slices T(:,:,k), each written row by row.
    constexpr std::array<std::array<double, 9>, 3> slices{{
        {-0.1281, 0.0516, -0.0954, 0.0516, -0.1958, -0.179, -0.0954, -0.179, -0.2676},
        {0.0516, -0.1958, -0.179, -0.1958, 0.3251, 0.2513, -0.179, 0.2513, 0.1773},
        {-0.0954, -0.179, -0.2676, -0.179, 0.2513, 0.1773, -0.2676, 0.1773, 0.0338},
    }};
    std::vector<double> entries(27);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) entries[static_cast<std::size_t>((i * 3 + j) * 3 + k)] = slices[k][i * 3 + j];
    return CubicTensor(3, 3, std::move(entries));
}

CubicTensor make_alternating(int order, int dim, AlternatingForm form) {
    if (order < 3) throw InvalidArgument("order must be at least 3");
    std::vector<double> entries(tensor_size(order, dim));
    if (form == AlternatingForm::Constant) {
        double c = 0.0;
        for (int r = 1; r <= order; ++r) c += (r % 2 == 0 ? 1.0 : -1.0) / r;
        std::fill(entries.begin(), entries.end(), c);
        return CubicTensor(order, dim, std::move(entries));
    }
    std::vector<double> term(static_cast<std::size_t>(dim));
    for (int i = 1; i <= dim; ++i) term[static_cast<std::size_t>(i - 1)] = (i % 2 == 0 ? 1.0 : -1.0) / i;
    std::vector<int> idx(static_cast<std::size_t>(order), 0);
    std::size_t off = 0;
    do {
        double v = 0.0;
        for (int i : idx) v += term[static_cast<std::size_t>(i)];
        entries[off++] = v;
    } while (next_index(idx, dim));
    return CubicTensor(order, dim, std::move(entries));
}

TransitionTensor make_random_transition(int dim, int order, std::uint64_t seed) {
    auto rng = make_rng(seed, 0x7261);
    // (0, 1]: strictly positive entries keep the chain irreducible.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t total = tensor_size(order, dim);
    std::vector<double> entries(total);
    for (auto& v : entries) v = 1.0 - unif(rng);
    const auto n = static_cast<std::size_t>(dim);
    const std::size_t fibers = total / n;
    for (std::size_t f = 0; f < fibers; ++f) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += entries[i * fibers + f];
        for (std::size_t i = 0; i < n; ++i) entries[i * fibers + f] /= sum;
    }
    return TransitionTensor(CubicTensor(order, dim, std::move(entries)));
}

CubicTensor make_random(int order, int dim, std::uint64_t seed) {
    auto rng = make_rng(seed, 0x7261'6e64);
    std::normal_distribution<double> normal;
    std::vector<double> entries(tensor_size(order, dim));
    for (auto& v : entries) v = normal(rng);
    return CubicTensor(order, dim, std::move(entries));
}

CubicTensor make_random_symmetric(int order, int dim, std::uint64_t seed) {
    const CubicTensor raw = make_random(order, dim, seed);
    std::vector<double> entries(raw.size());
    std::vector<int> idx(static_cast<std::size_t>(order), 0);
    std::vector<int> perm(static_cast<std::size_t>(order));
    std::vector<int> permuted(static_cast<std::size_t>(order));
    std::size_t off = 0;
    do {
        std::iota(perm.begin(), perm.end(), 0);
        double sum = 0.0;
        int count = 0;
        do {
            for (std::size_t r = 0; r < perm.size(); ++r) permuted[r] = idx[static_cast<std::size_t>(perm[r])];
            sum += raw(permuted);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        entries[off++] = sum / count;
    } while (next_index(idx, dim));
    // Averaging in different orders leaves ulp-level asymmetry; copy the
    // sorted-index representative so the result is exactly symmetric.
    CubicTensor averaged(order, dim, std::move(entries));
    std::vector<double> exact(averaged.size());
    std::fill(idx.begin(), idx.end(), 0);
    off = 0;
    do {
        permuted = idx;
        std::sort(permuted.begin(), permuted.end());
        exact[off++] = averaged(permuted);
    } while (next_index(idx, dim));
    return CubicTensor(order, dim, std::move(exact));
}

}  // namespace tzeig
