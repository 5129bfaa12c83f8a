#pragma once

#include <string>
#include <vector>

#include "tzeig/tensor.hpp"

namespace tzeig {

/// Which eigenvector of a matrix the map picks.
enum class Selector {
    LargestMagnitude,
    SmallestMagnitude,
    LargestAlgebraic,
    SmallestAlgebraic,
    ClosestToVector,
    Perron,
};

/**
 * Declarative description of an eigenvector map.
 *
 * Rank selectors order eigenvalues by their real part (or its absolute
 * value) and pick the k-th, 1-based. ClosestToVector picks the eigenvector
 * with the smallest angle to a stored unit vector. Perron is
 * LargestAlgebraic(1) rescaled to a nonnegative vector of unit 1-norm.
 */
class EigenMapSpec {
public:
    static EigenMapSpec largest_magnitude(int k = 1) { return {Selector::LargestMagnitude, k}; }
    static EigenMapSpec smallest_magnitude(int k = 1) { return {Selector::SmallestMagnitude, k}; }
    static EigenMapSpec largest_algebraic(int k = 1) { return {Selector::LargestAlgebraic, k}; }
    static EigenMapSpec smallest_algebraic(int k = 1) { return {Selector::SmallestAlgebraic, k}; }
    static EigenMapSpec closest_to(const Vector& v);
    static EigenMapSpec perron() { return {Selector::Perron, 1}; }

    Selector selector() const noexcept { return selector_; }
    int rank() const noexcept { return rank_; }
    const Vector& target() const noexcept { return target_; }

    /// CLI form: lm:k, sm:k, la:k, sa:k, perron, closest:<label>.
    std::string to_string() const;

private:
    EigenMapSpec(Selector s, int k);

    Selector selector_;
    int rank_;
    Vector target_;
    std::string label_;

    friend EigenMapSpec parse_map_spec(const std::string&, int);
};

/// Parse `lm:k`, `sm:k`, `la:k`, `sa:k`, `perron` or `closest:<path>`.
/// `closest:e<i>` (1-based) is accepted as the standard basis vector when the
/// dimension is supplied.
EigenMapSpec parse_map_spec(const std::string& text, int dim = 0);

/// All eigenpairs of a real matrix, reduced to real vectors.
struct EigenPairSet {
    std::vector<double> values;           ///< real parts
    std::vector<Vector> vectors;          ///< unit 2-norm, sign-canonical
    std::vector<bool> complex_flags;      ///< eigenvalue had a nonzero imaginary part

    std::size_t size() const noexcept { return values.size(); }
};

/// Outcome of a selection, with tie diagnostics.
struct Selection {
    Vector vector;
    double value = 0.0;
    bool tie = false;
};

inline constexpr double kSignThreshold = 1e-12;
inline constexpr double kTieRelTol = 1e-8;
inline constexpr double kPerronNegTol = 1e-8;

/// Flip v so its first entry with magnitude above 1e-12 is positive.
Vector sign_canonicalize(const Vector& v);

/// Exactly symmetric input goes through the self-adjoint solver; anything
/// else through the real Schur route.
EigenPairSet eig_all(const Matrix& m);

/// Pick one eigenvector. `current` is the iterate used to break ties.
Selection select_eigenvector(const EigenMapSpec& spec, const EigenPairSet& eigs, const Vector& current);

inline Vector select(const EigenMapSpec& spec, const EigenPairSet& eigs, const Vector& current) {
    return select_eigenvector(spec, eigs, current).vector;
}

}  // namespace tzeig
