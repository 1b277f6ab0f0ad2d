#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linrec/rigidity.hpp"

using namespace linrec;

namespace {

const RigidityOperator& op() {
    static const RigidityOperator instance;
    return instance;
}

// n-fold application of the defining formula, the slow oracle.
SparseVector iterate_T(const RigidityOperator& o, SparseVector x, std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) x = o.apply_T(x, o.config().k_max).vec;
    return x;
}

SparseVector random_vector(std::mt19937_64& rng, int max_index, int support) {
    std::uniform_int_distribution<int> idx(1, max_index);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    SparseVector x;
    for (int i = 0; i < support; ++i) x.set(idx(rng), {val(rng), val(rng)});
    return x;
}

}  // namespace

TEST_CASE("construction invariants") {
    const auto& o = op();
    CHECK(o.m_exact(1) == 1);
    CHECK(o.m_exact(2) == 1);
    for (int k = 2; k < o.config().k_max; ++k) {
        if (o.m_exact(k + 1) != 0) {
            CHECK(o.m_exact(k + 1) % o.m_exact(k) == 0);  // divisibility chain
            CHECK((k < 3 || o.m_exact(k + 1) > o.m_exact(k)));
        }
        CHECK(o.m_approx(k + 1) >= o.m_approx(k));
    }
    // tail quantity strictly decreasing and small at depth
    for (int j = 3; j < o.config().j_max; ++j) CHECK(o.c_tail(j + 1) < o.c_tail(j));
    CHECK(o.c_tail(o.config().j_max) < 1e-6);

    const double znorm = norm(o.z(), o.space());
    CHECK(znorm == doctest::Approx(1.0));
    for (int k = 3; k <= o.config().k_max; ++k) {
        CHECK(std::abs(eval_functional(o.w_star(k), o.z())) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(o.w_norm(k) >= 1.0 / znorm - kAlgebraicTol);
        CHECK(std::abs(o.lambda(k)) == doctest::Approx(1.0));
    }
    CHECK(o.lambda_sum_bound() < std::numeric_limits<double>::infinity());
    CHECK(o.lambda_sum_bound() > 0.0);
}

TEST_CASE("projection onto the first two coordinates") {
    SparseVector x;
    x.set(1, {1.0, 0.0});
    x.set(7, {5.0, 0.0});
    CHECK(op().project_P(x) == SparseVector::basis(1));
    CHECK(op().project_P(SparseVector{}).empty());
    x.set(2, {3.0, 0.0});
    x.set(3, {1.0, 0.0});
    const SparseVector p = op().project_P(x);
    CHECK(p.at(1) == Scalar{1.0, 0.0});
    CHECK(p.at(2) == Scalar{3.0, 0.0});
    CHECK(p.max_index() == 2);
}

TEST_CASE("geometric sum closed form basics") {
    const auto& o = op();
    for (int k = 3; k <= o.config().k_max; ++k)
        CHECK(std::abs(o.lambda_kn(k, 1) - Scalar{1.0, 0.0}) <= kDerivedTol);
    // explicit small case: m_3 = 2, lambda_3 = -1, partial sums alternate 1, 0
    CHECK(o.m_exact(3) == 2);
    CHECK(std::abs(o.lambda_kn(3, 2)) <= kAlgebraicTol);
    CHECK(std::abs(o.lambda_kn(3, 5) - Scalar{1.0, 0.0}) <= kAlgebraicTol);
    // against direct summation at moderate k
    for (int k = 5; k <= 9; ++k) {
        for (const std::uint64_t n : {2u, 17u, 123u}) {
            std::complex<double> acc{0.0, 0.0};
            for (std::uint64_t j = 0; j < n; ++j) acc += std::pow(o.lambda(k), static_cast<double>(j));
            CHECK(std::abs(o.lambda_kn(k, n) - acc) <= 1e-8 * (1.0 + std::abs(acc)));
        }
    }
}

TEST_CASE("geometric sum inequalities on the generated range") {
    const auto& o = op();
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        for (int k = 3; k <= o.config().k_max; ++k)
            CHECK(std::abs(o.lambda_kn(k, n)) <= static_cast<double>(n) + kDerivedTol);
        int k = 3;
        while (2.0L * static_cast<long double>(n) > o.m_approx(k)) ++k;
        CHECK(std::abs(o.lambda_kn(k, n)) >=
              (2.0 / std::numbers::pi) * static_cast<double>(n) - 1e-6);
    }
    for (int n = 3; n <= o.config().j_max; ++n)
        for (int k = 3; k <= n; ++k) CHECK(std::abs(o.lambda_kn(k, o.m_exact(n))) <= kDerivedTol);
}

TEST_CASE("closed-form power equals the iterated oracle") {
    const auto& o = op();
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const SparseVector x = random_vector(rng, o.config().k_max, 6);
        const std::uint64_t n = 1 + (rng() % 48);
        const SparseVector y = iterate_T(o, x, n);
        for (int k = 1; k <= o.config().k_max; ++k) {
            const Scalar expect = y.at(k);
            const Scalar got = o.power_coeff(x, n, k);
            CHECK(std::abs(got - expect) <= 1e-9 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("semigroup property of the closed form") {
    const auto& o = op();
    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        const SparseVector x = random_vector(rng, o.config().k_max, 5);
        const std::uint64_t n = 1 + (rng() % 20);
        const std::uint64_t m = 1 + (rng() % 20);
        SparseVector mid;
        for (int k = 1; k <= o.config().k_max; ++k) mid.set(k, o.power_coeff(x, m, k));
        for (int k = 1; k <= o.config().k_max; ++k) {
            const Scalar lhs = o.power_coeff(x, n + m, k);
            const Scalar rhs = o.power_coeff(mid, n, k);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("single application and tail bound") {
    const auto& o = op();
    const auto r = o.apply_T(SparseVector::basis(7), o.config().k_max);
    CHECK(std::abs(r.vec.at(7) - o.lambda(7)) <= kAlgebraicTol);
    CHECK(r.vec.support_size() == 1);  // P x = 0 kills the perturbation
    CHECK(r.tail_bound == 0.0);

    const auto rz = o.apply_T(o.z(), o.config().k_max);
    CHECK(rz.tail_bound > 0.0);
    CHECK(rz.tail_bound < 1e-6);
    for (int k = 3; k <= o.config().k_max; ++k) {
        const Scalar expect = eval_functional(o.w_star(k), o.z()) /
                              static_cast<double>(o.m_approx(k - 1));
        CHECK(std::abs(rz.vec.at(k) - expect) <= kDerivedTol);
    }
    CHECK_THROWS_AS(o.apply_T(SparseVector::basis(7), 5), std::invalid_argument);

    // a lower truncation must account for the dropped generated coordinates
    const auto r2 = o.apply_T(o.z(), 4);
    CHECK(r2.tail_bound > rz.tail_bound);
}

TEST_CASE("kernel-class membership and base points") {
    const auto& o = op();
    for (int n = 3; n < 3 + o.config().n_part; ++n) {
        const SparseVector x = o.x0_base(n);
        CHECK(norm(x, o.space()) == doctest::Approx(1.0));
        const auto cls = o.x0_class(x);
        REQUIRE(cls.has_value());
        CHECK(std::abs(eval_functional(o.wtilde(*cls), o.project_P(x))) <= kAlgebraicTol);
    }
    CHECK_FALSE(o.x0_class(o.z()).has_value());
    CHECK(o.x0_class(SparseVector::basis(9)).has_value());  // Px = 0 is in every class
}

TEST_CASE("recurrence certificates") {
    const auto& o = op();
    for (int n = 3; n < 3 + o.config().n_part; ++n) {
        SparseVector x = o.x0_base(n);
        x.set(5, {0.3, -0.2});  // tail support does not leave the kernel set
        for (const double eps : {1e-2, 1e-4}) {
            const auto cert = o.recurrence_certificate(x, eps);
            CHECK(cert.bracket < eps);
            CHECK(cert.bound < eps);
            CHECK(o.class_of(cert.k_j) == n);
            CHECK(cert.k_j - 1 >= x.max_index());
            // doubling eps keeps the same certificate
            const auto cert2 = o.recurrence_certificate(x, 2.0 * cert.bound);
            CHECK(cert2.k_j <= cert.k_j);
        }
    }
    CHECK_THROWS_AS(o.recurrence_certificate(o.z(), 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(o.recurrence_certificate(o.x0_base(3), 1e-30), certificate_error);
    try {
        o.recurrence_certificate(o.x0_base(3), 1e-30);
    } catch (const certificate_error& e) {
        CHECK(e.achieved_minimum > 0.0);
        CHECK(e.achieved_minimum < 1e-6);
    }
}

TEST_CASE("arithmetic progression witnesses") {
    const auto& o = op();
    const SparseVector x = o.x0_base(4);
    const auto w = o.ap_witness(x, 1e-3, 5);
    CHECK(w.brackets.size() == 5);
    for (const double b : w.brackets) CHECK(b < 1e-3);
    REQUIRE(w.returns.times.size() == 5);
    CHECK(longest_ap(w.returns) >= 5);
    // the progression step is the certified time
    CHECK(w.returns.times[1] - w.returns.times[0] == w.cert.time);
    // length one reduces to the plain certificate
    const auto w1 = o.ap_witness(x, 1e-3, 1);
    CHECK(w1.cert.k_j <= w.cert.k_j);
}

TEST_CASE("orbit distance trace brackets") {
    const auto& o = op();
    const auto rows = o.orbit_distance_trace(o.z(), 64);
    REQUIRE(rows.size() == 64);
    for (const auto& r : rows) {
        CHECK(r.lower <= r.upper + kAlgebraicTol);
        CHECK(r.lower >= 0.0);
    }
    const auto zero_rows = o.orbit_distance_trace(SparseVector{}, 8);
    for (const auto& r : zero_rows) {
        CHECK(r.lower == 0.0);
        CHECK(r.upper == 0.0);
    }
}

TEST_CASE("non-recurrence floor") {
    const auto& o = op();
    const double target = 1.0 / std::numbers::pi - 0.02;
    const auto fr = o.nonrecurrence_floor(o.z(), 20000);
    CHECK(fr.floor >= target);
    CHECK(fr.proof_floor > 0.0);
    CHECK(fr.floor + kAlgebraicTol >= fr.proof_floor);  // the proof chain is the weaker bound

    SparseVector x = o.z();
    x.set(20, {0.005, 0.0});
    const auto fr2 = o.nonrecurrence_floor(x, 20000);
    CHECK(fr2.floor >= fr.floor - 2.0 * 0.005 - kAlgebraicTol);  // diagonal term budget

    CHECK_THROWS_AS(o.nonrecurrence_floor(SparseVector::basis(1), 100), std::invalid_argument);
}
