#include <catch_amalgamated.hpp>

#include <mpfr.h>

#include "rabi/eigensolve.hpp"
#include "rabi/special_functions.hpp"

using namespace rabi;

namespace {

// Arbitrary-precision oracle: L_n(x) = sum_k (-1)^k C(n,k) x^k / k! at 256 bits.
double laguerre_series_mpfr(int n, double x) {
    mpfr_t term, acc, xk, fact;
    mpfr_inits2(256, term, acc, xk, fact, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(acc, 0.0, MPFR_RNDN);
    for (int k = 0; k <= n; ++k) {
        mpfr_set_d(xk, x, MPFR_RNDN);
        mpfr_pow_ui(xk, xk, k, MPFR_RNDN);
        // C(n,k) / k!
        mpfr_set_ui(fact, 1, MPFR_RNDN);
        for (int j = 0; j < k; ++j) {
            mpfr_mul_ui(fact, fact, n - j, MPFR_RNDN);
            mpfr_div_ui(fact, fact, j + 1, MPFR_RNDN);
        }
        mpfr_set_ui(term, 1, MPFR_RNDN);
        for (int j = 2; j <= k; ++j) mpfr_div_ui(xk, xk, j, MPFR_RNDN);
        mpfr_mul(term, fact, xk, MPFR_RNDN);
        if (k % 2 == 1) mpfr_neg(term, term, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    const double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clears(term, acc, xk, fact, static_cast<mpfr_ptr>(nullptr));
    return out;
}

// Truncated 1F1(-n, 1; z) sum (terminates at k = n).
double hyp1f1_neg_n_series(int n, double z) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        double poch = 1.0; // (-n)_k
        for (int j = 0; j < k; ++j) poch *= -(n - j);
        double denom = 1.0; // (1)_k k!
        for (int j = 1; j <= k; ++j) denom *= static_cast<double>(j) * j;
        acc += poch / denom * std::pow(z, k);
    }
    return acc;
}

} // namespace

TEST_CASE("Laguerre closed forms") {
    CHECK(laguerre(0, 3.7) == 1.0);
    CHECK(laguerre(1, 3.7) == Catch::Approx(1.0 - 3.7));
    CHECK(laguerre(2, 4.0) == Catch::Approx(1.0 - 2.0 * 4.0 + 16.0 / 2.0)); // = 1
    CHECK(assoc_laguerre(1, 2, 0.5) == Catch::Approx(3.0 - 0.5));
    CHECK_THROWS_AS(laguerre(-1, 0.0), DomainError);
}

TEST_CASE("Laguerre recurrence matches the arbitrary-precision series") {
    // the quasi-degeneracy boundary needs L_12 out at 4 alpha^2 ~ 51
    const double x = 4.0 * 3.584 * 3.584;
    const double oracle = laguerre_series_mpfr(12, x);
    CHECK(std::abs(laguerre(12, x) - oracle) <= 1e-10 * std::abs(oracle));
    for (int n : {3, 7, 20}) {
        for (double xv : {0.3, 4.0, 17.5, 60.0}) {
            const double ref = laguerre_series_mpfr(n, xv);
            CHECK(std::abs(laguerre(n, xv) - ref) <=
                  1e-10 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("Kummer reduction to Laguerre") {
    CHECK(kummer_1f1_neg_n(0, 2.5) == 1.0);
    CHECK(kummer_1f1_neg_n(1, 4.0) == Catch::Approx(-3.0));
    const double direct = hyp1f1_neg_n_series(7, 10.0);
    CHECK(kummer_1f1_neg_n(7, 10.0) == Catch::Approx(direct).epsilon(1e-10));
}

TEST_CASE("displacement elements") {
    SECTION("vacuum overlap") {
        for (double a : {0.3, 1.0, 2.5})
            CHECK(displacement_element(0, 0, a) == Catch::Approx(std::exp(-a * a / 2)));
    }
    SECTION("column unitarity") {
        for (double a : {0.5, 1.5, 3.0}) {
            const int m_top = static_cast<int>(a * a + 10.0 * a + 20.0);
            for (int n = 0; n <= 5; ++n) {
                double sum = 0.0;
                for (int m = 0; m <= m_top; ++m) {
                    const double d = displacement_element(m, n, a);
                    sum += d * d;
                }
                CHECK(sum == Catch::Approx(1.0).margin(1e-10));
            }
        }
    }
    SECTION("transpose symmetry") {
        for (int m : {0, 2, 7}) {
            for (int n : {1, 3, 6}) {
                const double lhs = displacement_element(m, n, 1.3);
                const double sign = ((m - n) % 2 == 0) ? 1.0 : -1.0;
                CHECK(lhs == Catch::Approx(sign * displacement_element(n, m, 1.3)).margin(1e-14));
            }
        }
    }
    SECTION("matches the matrix exponential of alpha(a† - a)") {
        const double alpha = 1.5;
        const int inner = 40, outer = 80; // outer margin keeps truncation away from the block
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(outer, outer);
        for (int n = 0; n + 1 < outer; ++n) {
            gen(n + 1, n) = alpha * std::sqrt(n + 1.0);
            gen(n, n + 1) = -alpha * std::sqrt(n + 1.0);
        }
        const Eigen::MatrixXd d = expm_antisymmetric(gen);
        for (int m = 0; m < inner; ++m)
            for (int n = 0; n < inner; ++n)
                REQUIRE(std::abs(d(m, n) - displacement_element(m, n, alpha)) <= 1e-8);
    }
    SECTION("negative displacement flips odd transfers") {
        CHECK(displacement_element(1, 0, -0.7) ==
              Catch::Approx(-displacement_element(1, 0, 0.7)));
        CHECK(displacement_element(2, 0, -0.7) ==
              Catch::Approx(displacement_element(2, 0, 0.7)));
    }
}
