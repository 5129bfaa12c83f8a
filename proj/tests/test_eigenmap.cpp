#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "tzeig/eigenmap.hpp"
#include "tzeig/error.hpp"
#include "tzeig/rng.hpp"

using namespace tzeig;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

Matrix diag(std::initializer_list<double> d) { return vec(d).asDiagonal(); }

Matrix random_symmetric(int n, std::uint64_t seed) {
    auto rng = make_rng(seed, 7);
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    return (a + a.transpose()) / 2.0;
}

}  // namespace

TEST_CASE("sign canonicalization") {
    CHECK(sign_canonicalize(vec({-0.6, 0.8})) == vec({0.6, -0.8}));
    CHECK(sign_canonicalize(vec({0, -1})) == vec({0, 1}));
    CHECK(sign_canonicalize(vec({1e-13, -1})) == vec({-1e-13, 1}));
    CHECK(sign_canonicalize(vec({0.6, -0.8})) == vec({0.6, -0.8}));
}

TEST_CASE("map spec parsing") {
    CHECK(parse_map_spec("sa:2").selector() == Selector::SmallestAlgebraic);
    CHECK(parse_map_spec("sa:2").rank() == 2);
    CHECK(parse_map_spec("lm:1").to_string() == "lm:1");
    CHECK(parse_map_spec("perron").selector() == Selector::Perron);
    CHECK(parse_map_spec("closest:e3", 3).target() == vec({0, 0, 1}));
    CHECK_THROWS_AS(parse_map_spec("xx:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_map_spec("lm:0"), InvalidArgument);
    CHECK_THROWS_AS(parse_map_spec("lm:1x"), InvalidArgument);
    CHECK_THROWS_AS(parse_map_spec("lm"), InvalidArgument);
    CHECK_THROWS_AS(parse_map_spec("closest:e4", 3), InvalidArgument);
    CHECK_THROWS_AS(parse_map_spec("closest:/nonexistent/vec.txt"), Error);

    const std::string path = "tzeig_test_target.txt";
    {
        std::ofstream f(path);
        f << "0 3 4\n";
    }
    const EigenMapSpec spec = parse_map_spec("closest:" + path);
    CHECK((spec.target() - vec({0, 0.6, 0.8})).norm() < 1e-15);
    std::remove(path.c_str());
}

TEST_CASE("eig_all on the small diagonal matrix") {
    const double eps = 1e-3;
    const EigenPairSet e = eig_all(diag({5 * eps / 2, eps, 1 - eps}));
    REQUIRE(e.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        // each value pairs with the matching basis vector
        Eigen::Index k = 0;
        e.vectors[i].cwiseAbs().maxCoeff(&k);
        CHECK(e.vectors[i] == Vector::Unit(3, k));
        CHECK(e.values[i] == doctest::Approx(vec({5 * eps / 2, eps, 1 - eps})[k]));
    }
}

TEST_CASE("eig_all on the identity") {
    const EigenPairSet e = eig_all(Matrix::Identity(4, 4));
    Matrix v(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(e.values[i] == 1.0);
        v.col(static_cast<Eigen::Index>(i)) = e.vectors[i];
    }
    CHECK((v.transpose() * v - Matrix::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("eig_all matches a Jacobi oracle on symmetric matrices") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);
        const Matrix a = random_symmetric(n, seed);
        const auto [ref_values, ref_vectors] = oracle::jacobi_eigen(a);
        // oracle sanity
        CHECK((a * ref_vectors - ref_vectors * ref_values.asDiagonal()).norm() < 1e-10);

        const EigenPairSet e = eig_all(a);
        std::vector<std::size_t> order(e.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return e.values[x] < e.values[y]; });
        for (int i = 0; i < n; ++i) {
            const std::size_t j = order[static_cast<std::size_t>(i)];
            CHECK(std::abs(e.values[j] - ref_values[i]) <= 1e-10);
            const Vector ref = sign_canonicalize(ref_vectors.col(i).normalized());
            CHECK((e.vectors[j] - ref).norm() <= 1e-10);
            CHECK_FALSE(e.complex_flags[j]);
        }
    }
}

TEST_CASE("eig_all on nonsymmetric matrices") {
    SUBCASE("real spectrum reconstructs A v = lambda v") {
        Matrix a(3, 3);
        a << 2, 1, 0, 0, 3, 1, 0, 0, -1;
        const EigenPairSet e = eig_all(a);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK((a * e.vectors[i] - e.values[i] * e.vectors[i]).norm() < 1e-12);
            CHECK(e.vectors[i].norm() == doctest::Approx(1.0));
            CHECK_FALSE(e.complex_flags[i]);
        }
    }
    SUBCASE("rotation block is flagged complex") {
        Matrix a(3, 3);
        a << 0, -1, 0, 1, 0, 0, 0, 0, 2;
        const EigenPairSet e = eig_all(a);
        int flagged = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            flagged += e.complex_flags[i] ? 1 : 0;
            CHECK(e.vectors[i].allFinite());
            CHECK(e.vectors[i].norm() == doctest::Approx(1.0));
        }
        CHECK(flagged == 2);
    }
    CHECK_THROWS_AS(eig_all(Matrix::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("selection examples") {
    const double eps = 1e-3;
    const Matrix m = diag({5 * eps / 2, eps, 1 - eps});
    const Vector x0 = vec({eps / 2, eps / 2, 1 - eps});
    const EigenPairSet e = eig_all(m);
    CHECK(select(EigenMapSpec::smallest_algebraic(1), e, x0) == vec({0, 1, 0}));
    CHECK(select(EigenMapSpec::closest_to(vec({0, 0, 1})), e, x0) == vec({0, 0, 1}));
    CHECK(select(EigenMapSpec::largest_algebraic(1), e, x0) == vec({0, 0, 1}));
    CHECK(select(EigenMapSpec::smallest_algebraic(2), e, x0) == vec({1, 0, 0}));

    const EigenPairSet d = eig_all(diag({-4, 3}));
    CHECK(select(EigenMapSpec::largest_magnitude(1), d, vec({1, 1})) == vec({1, 0}));
    CHECK(select(EigenMapSpec::smallest_magnitude(1), d, vec({1, 1})) == vec({0, 1}));
    CHECK(select(EigenMapSpec::largest_algebraic(1), d, vec({1, 1})) == vec({0, 1}));
    CHECK(select(EigenMapSpec::smallest_algebraic(1), d, vec({1, 1})) == vec({1, 0}));

    for (double scale : {1.0, 7.0, 1e-4}) {
        const Matrix w = scale * diag({1, 5, 9});
        CHECK(select(EigenMapSpec::closest_to(vec({0, 0, 1})), eig_all(w), vec({1, 1, 1})) == vec({0, 0, 1}));
    }
}

TEST_CASE("selection errors") {
    const EigenPairSet e = eig_all(diag({1, 2}));
    CHECK_THROWS_AS(select(EigenMapSpec::largest_algebraic(3), e, vec({1, 0})), InvalidArgument);
    CHECK_THROWS_AS(select(EigenMapSpec::closest_to(vec({1, 0, 0})), e, vec({1, 0})), InvalidArgument);

    Matrix mixed(2, 2);
    mixed << 0, 1, 1, 0;  // top eigenvector (1,1)/sqrt2 is fine
    CHECK(select(EigenMapSpec::perron(), eig_all(mixed), vec({1, 0})).isApprox(vec({0.5, 0.5})));
    mixed << 1, -0.5, -0.5, 1;  // top eigenvector (1,-1)/sqrt2
    CHECK_THROWS_AS(select(EigenMapSpec::perron(), eig_all(mixed), vec({1, 0})), DegeneracyError);
}

TEST_CASE("Perron vector of a column-stochastic matrix") {
    Matrix p(3, 3);
    p << 0.5, 0.2, 0.3, 0.25, 0.5, 0.3, 0.25, 0.3, 0.4;
    const Vector v = select(EigenMapSpec::perron(), eig_all(p), Vector::Ones(3));
    CHECK(v.sum() == doctest::Approx(1.0));
    CHECK(v.minCoeff() >= 0.0);
    CHECK((p * v - v).norm() < 1e-12);
    CHECK((v - oracle::stationary_by_power(p)).norm() < 1e-10);
}

TEST_CASE("selection is equivariant under positive scaling") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix a = random_symmetric(5, seed + 50);
        const Vector cur = Vector::Ones(5);
        for (const char* s : {"lm:1", "sm:1", "la:2", "sa:3"}) {
            const EigenMapSpec spec = parse_map_spec(s);
            const Vector v1 = select(spec, eig_all(a), cur);
            const Vector v2 = select(spec, eig_all(3.5 * a), cur);
            CHECK((v1 - v2).norm() < 1e-10);
        }
    }
}

TEST_CASE("ties are broken by projecting the current iterate") {
    const EigenPairSet e = eig_all(diag({2, 2, 1}));
    const Vector cur = vec({0.3, 0.4, 0.866});
    const Selection s = select_eigenvector(EigenMapSpec::largest_algebraic(1), e, cur);
    CHECK(s.tie);
    CHECK(s.value == doctest::Approx(2.0));
    CHECK((s.vector - vec({0.6, 0.8, 0})).norm() < 1e-12);

    // A tie at a value other than the picked one does not count.
    const Selection u = select_eigenvector(EigenMapSpec::smallest_algebraic(1), e, cur);
    CHECK_FALSE(u.tie);
    CHECK(u.vector == vec({0, 0, 1}));

    // Magnitude ties across sign.
    const Selection w = select_eigenvector(EigenMapSpec::largest_magnitude(1), eig_all(diag({-3, 3, 1})), cur);
    CHECK(w.tie);
    CHECK(w.vector.norm() == doctest::Approx(1.0));
}
