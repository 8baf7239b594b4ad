#include <random>

#include "doctest.h"
#include "minkcurve/vec3.hpp"

using namespace mink;

namespace {

// Independent construction of the cross product from its defining identity
// g(x X y, z) = det3(x, y, z): solving over the basis gives the components
// directly (the x0 equation carries the metric's minus sign).
Vec3 oracle_cross(const Vec3& x, const Vec3& y) {
    const Vec3 e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
    return {-det3(x, y, e0), det3(x, y, e1), det3(x, y, e2)};
}

Vec3 random_vec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    return {d(rng), d(rng), d(rng)};
}

} // namespace

TEST_CASE("metric on basis and null vectors") {
    CHECK(metric_g(Vec3{1, 0, 0}, Vec3{1, 0, 0}) == -1.0);
    CHECK(metric_g(Vec3{0, 1, 0}, Vec3{0, 1, 0}) == 1.0);
    CHECK(metric_g(Vec3{1, 1, 0}, Vec3{1, 1, 0}) == 0.0);
}

TEST_CASE("metric symmetry on random vectors") {
    std::mt19937_64 rng(1u);
    for (int i = 0; i < 200; ++i) {
        const Vec3 x = random_vec(rng), y = random_vec(rng);
        CHECK(metric_g(x, y) == doctest::Approx(metric_g(y, x)).epsilon(1e-15));
    }
}

TEST_CASE("causal classification") {
    CHECK(causal_class({1, 1, 0}, 2.0) == CausalClass::Lightlike);
    CHECK(causal_class({1, 0, 0}, 1.0) == CausalClass::Timelike);
    CHECK(causal_class({0, 3, 4}, 25.0) == CausalClass::Spacelike);
    // the zero vector counts as lightlike
    CHECK(causal_class({0, 0, 0}, 0.0) == CausalClass::Lightlike);
    CHECK_THROWS_AS(causal_class({1, 0, 0}, -1.0), Error);
}

TEST_CASE("det3 basics") {
    const Vec3 e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
    CHECK(det3(e0, e1, e2) == 1.0);
    CHECK(det3(e0, e0, e2) == 0.0);
    CHECK(det3(Vec3{2, 0, 0}, Vec3{0, 3, 0}, Vec3{0, 0, 4}) == 24.0);
}

TEST_CASE("det3 sign flips under row swaps") {
    std::mt19937_64 rng(2u);
    for (int i = 0; i < 100; ++i) {
        const Vec3 a = random_vec(rng), b = random_vec(rng), c = random_vec(rng);
        const double d = det3(a, b, c);
        CHECK(det3(b, a, c) == doctest::Approx(-d).epsilon(1e-14));
        CHECK(det3(a, c, b) == doctest::Approx(-d).epsilon(1e-14));
        CHECK(det3(c, b, a) == doctest::Approx(-d).epsilon(1e-14));
    }
}

TEST_CASE("lorentz cross on basis vectors matches the brute-force solve") {
    const Vec3 e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};

    const Vec3 c12 = lorentz_cross(e1, e2);
    const Vec3 want12 = oracle_cross(e1, e2);
    CHECK(c12.x0 == want12.x0);
    CHECK(c12.x0 == -1.0);
    CHECK(c12.x1 == 0.0);
    CHECK(c12.x2 == 0.0);

    const Vec3 c01 = lorentz_cross(e0, e1);
    const Vec3 want01 = oracle_cross(e0, e1);
    CHECK(c01.x0 == want01.x0);
    CHECK(c01.x1 == want01.x1);
    CHECK(c01.x2 == want01.x2);
    CHECK(c01.x2 == 1.0);

    const Vec3 self = lorentz_cross(e1, e1);
    CHECK(self.x0 == 0.0);
    CHECK(self.x1 == 0.0);
    CHECK(self.x2 == 0.0);
}

TEST_CASE("cross product defining identity and orthogonality") {
    std::mt19937_64 rng(3u);
    for (int i = 0; i < 200; ++i) {
        const Vec3 x = random_vec(rng), y = random_vec(rng), z = random_vec(rng);
        const Vec3 c = lorentz_cross(x, y);
        const double scale =
            std::max(1.0, euclid_norm(x) * euclid_norm(y) * euclid_norm(z));
        CHECK(std::abs(metric_g(c, z) - det3(x, y, z)) <= 1e-12 * scale);
        CHECK(std::abs(metric_g(c, x)) <= 1e-12 * scale);
        CHECK(std::abs(metric_g(c, y)) <= 1e-12 * scale);
    }
}

TEST_CASE("sign type never holds zero") {
    CHECK(Sign::of(-3.5).value() == -1);
    CHECK(Sign::of(0.25).value() == 1);
    CHECK((Sign::minus() * Sign::minus()).value() == 1);
    CHECK_THROWS_AS(Sign::of(0.0), Error);
}
