#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pdmlab/catalog.hpp"
#include "pdmlab/errors.hpp"
#include "pdmlab/transforms.hpp"

using namespace pdmlab;

namespace {

// Cell-centred grid over [-half, half]^2, staying off the axes so that every
// family (including the ray one) is well defined at each node.
std::vector<Point2> box_grid(double half, int n) {
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double u = (i + 0.5) / n * 2.0 - 1.0;
            const double v = (j + 0.5) / n * 2.0 - 1.0;
            pts.push_back({half * u, half * v});
        }
    return pts;
}

double uniform(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

} // namespace

TEST_CASE("radial map hand value") {
    const auto m = MassFunction::inverse_quadratic(+1.0, 0.1);
    const auto ts = TransformSpec::radial(m);
    const Vec2 x{1.0, 0.5};
    const double sm = std::sqrt(1.0 / 1.125);
    const Point2 q = point_map(ts, x);
    CHECK(q.x1 == doctest::Approx(1.0 * sm).epsilon(1e-15));
    CHECK(q.x2 == doctest::Approx(0.5 * sm).epsilon(1e-15));
    // f = 1 - s b r^2 m / 2 = 1 - 0.1 * 1.25 / 1.125 / 2
    CHECK(f_factor(ts, x) == doctest::Approx(1.0 - 0.5 * 0.1 * 1.25 / 1.125).epsilon(1e-14));
    CHECK((inverse_point_map(ts, q) - x).norm() < 1e-14);
}

TEST_CASE("round trips over random in-domain points") {
    std::mt19937_64 gen(20240917ULL);
    const auto mp = MassFunction::inverse_quadratic(+1.0, 0.1);
    const auto mm = MassFunction::inverse_quadratic(-1.0, 0.25);
    const auto ms = MassFunction::inverse_quadratic(+1.0, 0.1, {-0.5, 0.0});

    const TransformSpec specs[] = {
        TransformSpec::radial(mp),
        TransformSpec::radial(mm),
        TransformSpec::shifted_radial(ms),
        TransformSpec::offset_radial(mp, {0.5, 0.5}),
        TransformSpec::identity(),
    };
    for (const auto& ts : specs) {
        // sigma = -1 stays inside beta r^2 <= 0.5 (around the mass centre).
        const double cap = ts.mass.sigma < 0.0 && ts.mass.beta > 0.0
                               ? std::sqrt(0.5 / ts.mass.beta) / std::sqrt(2.0)
                               : 2.0;
        for (int k = 0; k < 500; ++k) {
            const Vec2 x = ts.mass.center
                         + Vec2{uniform(gen, -cap, cap), uniform(gen, -cap, cap)};
            const Point2 q = point_map(ts, x);
            CHECK((inverse_point_map(ts, q) - x).norm() <= 1e-12);
        }
    }
}

TEST_CASE("ray family has no inverse") {
    const auto m = MassFunction::inverse_quadratic(-1.0, 0.25);
    const auto ts = TransformSpec::constant_ratio(m, 2.0);
    CHECK_THROWS_AS(inverse_point_map(ts, {0.5, 0.5}), UnsupportedError);
}

TEST_CASE("radial inverse rejects points outside the image") {
    const auto m = MassFunction::inverse_quadratic(+1.0, 0.1);
    const auto ts = TransformSpec::radial(m);
    // The plane maps onto beta |q|^2 < 1; |q| = sqrt(10) sits on the rim.
    CHECK_THROWS_AS(inverse_point_map(ts, {std::sqrt(10.0), 0.0}), DomainError);
    CHECK_THROWS_AS(inverse_point_map(ts, {4.0, 0.0}), DomainError);
}

TEST_CASE("defining identity holds for every catalog transform") {
    for (const auto& name : catalog_names()) {
        const auto entry = catalog_build(name, catalog_defaults(name));
        const auto& ts = entry.transform;
        const double cap = ts.mass.sigma < 0.0 && ts.mass.beta > 0.0
                               ? std::sqrt(0.5 / ts.mass.beta) / std::sqrt(2.0)
                               : 1.5;
        const auto grid = box_grid(cap, 20);
        std::vector<Point2> shifted;
        shifted.reserve(grid.size());
        for (auto p : grid)
            shifted.push_back(p + ts.mass.center);
        CHECK(invariance_residual(ts, shifted) <= 1e-12);
    }
}

TEST_CASE("a mismatched time factor is caught by the identity") {
    // Negative control: replacing f by 1 must leave a visible defect,
    // otherwise the invariance check could not fail at all.
    const auto m = MassFunction::inverse_quadratic(+1.0, 0.1);
    const auto ts = TransformSpec::radial(m);
    const auto grid = box_grid(1.5, 10);
    const double res = invariance_residual(ts, grid, [](Vec2) { return 1.0; });
    CHECK(res >= 1e-2);
}

TEST_CASE("velocity map scales by sqrt of the mass") {
    const auto m = MassFunction::inverse_quadratic(+1.0, 0.1);
    const auto ts = TransformSpec::radial(m);
    const Vec2 x{1.0, 0.5};
    const Vec2 v{0.4, -0.2};
    const Vec2 qt = velocity_map(ts, x, v);
    CHECK((qt - v * std::sqrt(m.value(x))).norm() == 0.0);
}

TEST_CASE("zero deformation collapses the radial families to the identity") {
    const auto flat = MassFunction::inverse_quadratic(+1.0, 0.0);
    const TransformSpec specs[] = {
        TransformSpec::radial(flat),
        TransformSpec::shifted_radial(flat), // centre defaults to the origin
        TransformSpec::offset_radial(flat, {0.0, 0.0}),
    };
    for (const auto& ts : specs)
        for (auto p : box_grid(2.0, 7)) {
            CHECK((point_map(ts, p) - p).norm() == 0.0);
            CHECK(f_factor(ts, p) == 1.0);
        }
}

TEST_CASE("zero deformation with an offset is a pure translation") {
    const auto flat = MassFunction::inverse_quadratic(+1.0, 0.0);
    const Vec2 eta{0.5, 0.5};
    const auto ts = TransformSpec::offset_radial(flat, eta);
    for (auto p : box_grid(2.0, 5))
        CHECK((point_map(ts, p) - (p - eta)).norm() == 0.0);
}

TEST_CASE("rescaled time increases along a deformed run") {
    const auto entry = catalog_build("ml1", catalog_defaults("ml1"));
    IntegratorConfig cfg;
    cfg.samples = 301;
    const auto tr = integrate(make_accel(entry.pdm), entry.initial, 3.0 * entry.period, cfg);
    const auto tau = tau_of_t(entry.transform, tr);
    REQUIRE(tau.size() == tr.size());
    CHECK(tau.front() == 0.0);
    for (std::size_t i = 1; i < tau.size(); ++i)
        REQUIRE(tau[i] > tau[i - 1]);
    // f < 1 strictly inside the deformed region: tau runs slower than t.
    CHECK(tau.back() < tr.t.back());
    CHECK(tau.back() > 0.9 * tr.t.back());
}

TEST_CASE("a negative time factor is refused") {
    // The ray family with sigma = +1 has f = -s xi b r m / 2 < 0 away from
    // the origin; the reparametrisation would run backwards.
    const auto m = MassFunction::inverse_quadratic(+1.0, 0.25);
    const auto ts = TransformSpec::constant_ratio(m, 2.0);
    Trajectory tr;
    for (int i = 0; i <= 10; ++i) {
        tr.t.push_back(0.1 * i);
        tr.x.push_back({1.0, 0.5});
        tr.v.push_back({0.0, 0.0});
    }
    CHECK_THROWS_AS(tau_of_t(ts, tr), MonotonicityError);
}

TEST_CASE("mapping a trajectory keeps sizes and endpoints") {
    const auto entry = catalog_build("ml1", catalog_defaults("ml1"));
    IntegratorConfig cfg;
    cfg.samples = 101;
    const auto tr = integrate(make_accel(entry.pdm), entry.initial, entry.period, cfg);
    const auto mp = map_trajectory(entry.transform, tr);
    REQUIRE(mp.size() == tr.size());
    CHECK(mp.t.front() == tr.t.front());
    CHECK(mp.tau.front() == 0.0);
    for (std::size_t i = 0; i < mp.size(); ++i)
        CHECK((mp.q[i] - point_map(entry.transform, tr.x[i])).norm() == 0.0);
}
