#include "tzeig/eigenmap.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "tzeig/error.hpp"
#include "tzeig/tensor_io.hpp"

namespace tzeig {

EigenMapSpec::EigenMapSpec(Selector s, int k) : selector_(s), rank_(k) {
    if (k < 1) throw InvalidArgument("eigenvector rank must be >= 1, got " + std::to_string(k));
}

EigenMapSpec EigenMapSpec::closest_to(const Vector& v) {
    const double norm = v.norm();
    if (v.size() == 0 || !(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("closest-vector target must be finite and nonzero");
    }
    EigenMapSpec spec(Selector::ClosestToVector, 1);
    spec.target_ = v / norm;
    return spec;
}

std::string EigenMapSpec::to_string() const {
    const auto k = std::to_string(rank_);
    switch (selector_) {
        case Selector::LargestMagnitude: return "lm:" + k;
        case Selector::SmallestMagnitude: return "sm:" + k;
        case Selector::LargestAlgebraic: return "la:" + k;
        case Selector::SmallestAlgebraic: return "sa:" + k;
        case Selector::Perron: return "perron";
        case Selector::ClosestToVector: {
            if (!label_.empty()) return "closest:" + label_;
            std::string s = "closest:";
            for (Eigen::Index i = 0; i < target_.size(); ++i) {
                if (i) s += ';';
                s += std::to_string(target_[i]);
            }
            return s;
        }
    }
    return "?";
}

EigenMapSpec parse_map_spec(const std::string& text, int dim) {
    if (text == "perron") return EigenMapSpec::perron();
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InvalidArgument("bad map spec '" + text + "'");
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    if (head == "closest") {
        if (tail.empty()) throw InvalidArgument("closest: needs a vector file");
        EigenMapSpec spec = EigenMapSpec::perron();
        if (dim > 0 && tail.size() > 1 && tail[0] == 'e' &&
            std::all_of(tail.begin() + 1, tail.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            const int i = std::stoi(tail.substr(1));
            if (i < 1 || i > dim) throw InvalidArgument("basis index out of range in '" + text + "'");
            spec = EigenMapSpec::closest_to(Vector::Unit(dim, i - 1));
        } else {
            try {
                spec = EigenMapSpec::closest_to(read_vector(std::filesystem::path(tail)));
            } catch (const ParseError& e) {
                throw InvalidArgument(std::string("closest: ") + e.what());
            }
        }
        spec.label_ = tail;
        return spec;
    }
    int k = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw InvalidArgument("bad rank in map spec '" + text + "'");
    }
    if (head == "lm") return EigenMapSpec::largest_magnitude(k);
    if (head == "sm") return EigenMapSpec::smallest_magnitude(k);
    if (head == "la") return EigenMapSpec::largest_algebraic(k);
    if (head == "sa") return EigenMapSpec::smallest_algebraic(k);
    throw InvalidArgument("unknown selector '" + head + "'");
}

Vector sign_canonicalize(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > kSignThreshold) return v[i] < 0.0 ? Vector(-v) : v;
    }
    return v;
}

EigenPairSet eig_all(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("eig_all needs a square matrix");
    if (!m.allFinite()) throw InvalidArgument("eig_all needs a finite matrix");
    const Eigen::Index n = m.rows();
    EigenPairSet out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors.reserve(static_cast<std::size_t>(n));
    out.complex_flags.reserve(static_cast<std::size_t>(n));

    if (m == m.transpose()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolver failed", n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            Vector v = es.eigenvectors().col(i);
            out.values.push_back(es.eigenvalues()[i]);
            out.vectors.push_back(sign_canonicalize(v / v.norm()));
            out.complex_flags.push_back(false);
        }
        return out;
    }

    Eigen::EigenSolver<Matrix> es(m, true);
    if (es.info() != Eigen::Success) throw SolverError("real Schur eigensolver failed", n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::complex<double> lambda = es.eigenvalues()[i];
        Eigen::VectorXcd v = es.eigenvectors().col(i);
        // Rotate the phase so the largest component is real and positive,
        // which keeps the real part away from zero.
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        const std::complex<double> pivot = v[big];
        if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
        Vector re = v.real();
        const double norm = re.norm();
        if (!(norm > 0.0)) throw SolverError("eigenvector with vanishing real part", n, n);
        out.values.push_back(lambda.real());
        out.vectors.push_back(sign_canonicalize(re / norm));
        out.complex_flags.push_back(lambda.imag() != 0.0);
    }
    return out;
}

namespace {

bool is_rank_selector(Selector s) {
    return s == Selector::LargestMagnitude || s == Selector::SmallestMagnitude ||
           s == Selector::LargestAlgebraic || s == Selector::SmallestAlgebraic;
}

Selection rank_select(Selector s, int k, const EigenPairSet& eigs, const Vector& current) {
    const auto n = eigs.size();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw InvalidArgument("eigenvector rank " + std::to_string(k) + " out of range for " + std::to_string(n) +
                              " eigenpairs");
    }
    const bool magnitude = s == Selector::LargestMagnitude || s == Selector::SmallestMagnitude;
    const bool largest = s == Selector::LargestMagnitude || s == Selector::LargestAlgebraic;
    std::vector<double> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = magnitude ? std::abs(eigs.values[i]) : eigs.values[i];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return largest ? key[a] > key[b] : key[a] < key[b];
    });
    const std::size_t pick = order[static_cast<std::size_t>(k - 1)];
    const double tol = kTieRelTol * std::max(1.0, std::abs(key[pick]));

    // Tied candidates, dropping duplicates (conjugate pairs share a real part).
    std::vector<std::size_t> tied;
    for (std::size_t i : order) {
        if (std::abs(key[i] - key[pick]) > tol) continue;
        const bool duplicate = std::any_of(tied.begin(), tied.end(), [&](std::size_t j) {
            return std::abs(eigs.vectors[i].dot(eigs.vectors[j])) >= 1.0 - 1e-12;
        });
        if (!duplicate) tied.push_back(i);
    }

    Selection sel;
    sel.vector = eigs.vectors[pick];
    sel.value = eigs.values[pick];
    if (tied.size() < 2) return sel;

    // Every unit vector in the tied eigenspace is a candidate; the one with
    // the largest |<v, current>| is the normalized projection of current.
    sel.tie = true;
    const double cn = current.norm();
    if (current.size() != sel.vector.size() || !(cn > 0.0)) return sel;
    const Vector u = current / cn;
    Matrix basis(u.size(), static_cast<Eigen::Index>(tied.size()));
    for (std::size_t c = 0; c < tied.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = eigs.vectors[tied[c]];
    Eigen::ColPivHouseholderQR<Matrix> qr(basis);
    qr.setThreshold(1e-10);
    const Matrix q = Matrix(qr.householderQ()).leftCols(qr.rank());
    const Vector proj = q * (q.transpose() * u);
    const double pn = proj.norm();
    if (pn > 1e-12) {
        sel.vector = sign_canonicalize(proj / pn);
        return sel;
    }
    // current is orthogonal to the eigenspace: fall back to the best basis vector.
    double best_overlap = -1.0;
    for (std::size_t i : tied) {
        const double overlap = std::abs(u.dot(eigs.vectors[i]));
        if (overlap > best_overlap) {
            best_overlap = overlap;
            sel.vector = eigs.vectors[i];
            sel.value = eigs.values[i];
        }
    }
    return sel;
}

}  // namespace

Selection select_eigenvector(const EigenMapSpec& spec, const EigenPairSet& eigs, const Vector& current) {
    if (eigs.size() == 0) throw InvalidArgument("no eigenpairs to select from");
    const Selector s = spec.selector();
    if (is_rank_selector(s)) return rank_select(s, spec.rank(), eigs, current);

    if (s == Selector::ClosestToVector) {
        const Vector& target = spec.target();
        if (target.size() != static_cast<Eigen::Index>(eigs.vectors.front().size())) {
            throw InvalidArgument("closest-vector target has the wrong length");
        }
        std::size_t best = 0;
        double best_overlap = -1.0;
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            const double overlap = std::abs(target.dot(eigs.vectors[i]));
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best = i;
            }
        }
        return {eigs.vectors[best], eigs.values[best], false};
    }

    // Perron
    Selection sel = rank_select(Selector::LargestAlgebraic, 1, eigs, current);
    Vector v = sel.vector;
    if (v.sum() < 0.0) v = -v;
    if (v.minCoeff() < -kPerronNegTol) {
        throw DegeneracyError("top eigenvector has mixed signs; no Perron vector (min entry " +
                              std::to_string(v.minCoeff()) + ")");
    }
    v = v.cwiseMax(0.0);
    const double total = v.sum();
    if (!(total > 0.0)) throw DegeneracyError("Perron vector sums to zero");
    sel.vector = v / total;
    return sel;
}

}  // namespace tzeig
