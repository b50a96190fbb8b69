#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "edchrom/errors.hpp"
#include "edchrom/implicit_stage.hpp"
#include "edchrom/isotherm.hpp"
#include "edchrom/spatial.hpp"

using namespace edchrom;

namespace {

Eigen::MatrixXd dense_from(const BlockTridiagonal& bt) {
    const int n = bt.n, m = bt.m;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * m, n * m);
    for (int k = 0; k < m; ++k) {
        const double* blk = bt.block_at(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(k * n + i, k * n + j) = blk[i * n + j];
        if (k > 0)
            for (int i = 0; i < n; ++i) a(k * n + i, (k - 1) * n + i) = bt.off;
        if (k + 1 < m)
            for (int i = 0; i < n; ++i) a(k * n + i, (k + 1) * n + i) = bt.off;
    }
    return a;
}

} // namespace

TEST_CASE("stage residual worked example") {
    // Single component, a = b = 1, eps = 1/2; three cells at c = 1 so
    // W(c) = 1.5 everywhere and the diffusion term vanishes on the constant
    // profile. With G = (1.4, 1.5, 1.4) the residual is (0.1, 0, 0.1).
    LangmuirParams p({1.0}, {1.0}, 0.5);
    Field c(1, 3), g(1, 3), f(1, 3);
    c.fill(1.0);
    g(0, 0) = 1.4;
    g(0, 1) = 1.5;
    g(0, 2) = 1.4;
    stage_residual(c, g, p, 0.1, f);
    CHECK(f(0, 0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(f(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f(0, 2) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("stage Jacobian worked example") {
    // dW/dc = 1.25 at c = 1; theta = 0.1 adds s_k * theta on the diagonal
    // (s = 1 at the boundary cells, 2 inside) and -theta off-diagonal.
    LangmuirParams p({1.0}, {1.0}, 0.5);
    Field c(1, 3);
    c.fill(1.0);
    BlockTridiagonal jac(1, 3);
    stage_jacobian(c, p, 0.1, jac);
    CHECK(*jac.block_at(0) == doctest::Approx(1.35).epsilon(1e-14));
    CHECK(*jac.block_at(1) == doctest::Approx(1.45).epsilon(1e-14));
    CHECK(*jac.block_at(2) == doctest::Approx(1.35).epsilon(1e-14));
    CHECK(jac.off == doctest::Approx(-0.1).epsilon(1e-15));
}

TEST_CASE("stage Jacobian matches finite differences of the residual") {
    LangmuirParams p({1.0, 2.0}, {1.0, 0.6}, 0.5);
    const int n = 2, m = 5;
    const double theta = 0.07;
    Field c(n, m), g(n, m);
    for (int j = 0; j < m; ++j) {
        c(0, j) = 0.3 + 0.1 * j;
        c(1, j) = 0.8 - 0.05 * j;
    }
    g.fill(0.0);

    BlockTridiagonal jac(n, m);
    stage_jacobian(c, p, theta, jac);
    const Eigen::MatrixXd a = dense_from(jac);

    const double h = 1e-6;
    Field fp(n, m), fm(n, m);
    for (int kc = 0; kc < m; ++kc)
        for (int ic = 0; ic < n; ++ic) {
            c(ic, kc) += h;
            stage_residual(c, g, p, theta, fp);
            c(ic, kc) -= 2.0 * h;
            stage_residual(c, g, p, theta, fm);
            c(ic, kc) += h;
            for (int kr = 0; kr < m; ++kr)
                for (int ir = 0; ir < n; ++ir) {
                    const double fd = (fp(ir, kr) - fm(ir, kr)) / (2.0 * h);
                    CHECK(a(kr * n + ir, kc * n + ic) == doctest::Approx(fd).epsilon(1e-6));
                }
        }
}

TEST_CASE("block solve: identity blocks pass the rhs through") {
    const int n = 2, m = 4;
    BlockTridiagonal bt(n, m);
    for (int k = 0; k < m; ++k) {
        double* blk = bt.block_at(k);
        blk[0] = blk[3] = 1.0;
        blk[1] = blk[2] = 0.0;
    }
    bt.off = 0.0;
    std::vector<double> x{1.0, -2.0, 3.0, 4.0, -5.0, 6.0, 0.5, 0.0};
    const auto expect = x;
    bt.solve(x);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(x[i] == doctest::Approx(expect[i]).epsilon(1e-14));
}

TEST_CASE("block solve matches a dense solver on random dominant systems") {
    std::mt19937 rng(9001);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int m = 5 + static_cast<int>(rng() % 20);
        BlockTridiagonal bt(n, m);
        bt.off = 0.3 * u(rng);
        for (int k = 0; k < m; ++k) {
            double* blk = bt.block_at(k);
            for (int i = 0; i < n * n; ++i) blk[i] = u(rng);
            // Diagonal dominance over the row including both neighbors.
            for (int i = 0; i < n; ++i) blk[i * n + i] += n + 2.0;
        }
        std::vector<double> rhs(static_cast<std::size_t>(n) * m);
        for (double& v : rhs) v = u(rng);

        const Eigen::MatrixXd a = dense_from(bt);
        Eigen::VectorXd b(n * m);
        for (int i = 0; i < n * m; ++i) b(i) = rhs[i];
        const Eigen::VectorXd ref = a.partialPivLu().solve(b);

        std::vector<double> x = rhs;
        bt.solve(x);
        for (int i = 0; i < n * m; ++i)
            CHECK(std::abs(x[i] - ref(i)) <= 1e-10 * std::max(1.0, std::abs(ref(i))));
    }
}

TEST_CASE("dense per-cell solve matches Eigen") {
    std::mt19937 rng(9002);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 5);
        std::vector<double> a(static_cast<std::size_t>(n) * n), b(n);
        Eigen::MatrixXd ae(n, n);
        Eigen::VectorXd be(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a[i * n + j] = u(rng) + (i == j ? 3.0 : 0.0);
                ae(i, j) = a[i * n + j];
            }
            b[i] = u(rng);
            be(i) = b[i];
        }
        const Eigen::VectorXd ref = ae.partialPivLu().solve(be);
        solve_small_dense(n, a.data(), b.data());
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(b[i] - ref(i)) <= 1e-11 * std::max(1.0, std::abs(ref(i))));
    }
}

TEST_CASE("singular block raises a solver error naming the cell") {
    BlockTridiagonal bt(2, 3);
    for (int k = 0; k < 3; ++k) {
        double* blk = bt.block_at(k);
        blk[0] = blk[3] = (k == 1) ? 0.0 : 1.0;  // middle block singular
        blk[1] = blk[2] = 0.0;
    }
    bt.off = 0.0;
    std::vector<double> x(6, 1.0);
    CHECK_THROWS_AS(bt.solve(x), SolverError);

    std::vector<double> a(4, 0.0), b(2, 1.0);
    CHECK_THROWS_AS(solve_small_dense(2, a.data(), b.data()), SolverError);
}

TEST_CASE("stage rhs combines state and convective slope") {
    Field w(2, 3), conv(2, 3), g(2, 3);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i) {
            w(i, j) = i + 0.1 * j;
            conv(i, j) = 0.5 * i - 0.2 * j;
        }
    const double dt = 0.04;
    build_stage_rhs(w, dt, conv, g);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i)
            CHECK(g(i, j) == doctest::Approx(w(i, j) + 0.5 * dt * conv(i, j)).epsilon(1e-15));
}

TEST_CASE("theta = 0 decouples: two Newton iterations from a nearby guess") {
    LangmuirParams p({1.0, 2.0}, {1.0, 1.0}, 0.5);
    const int m = 8;
    Field c_true(2, m), g(2, m), c(2, m);
    std::vector<double> col(2);
    for (int j = 0; j < m; ++j) {
        col[0] = 0.4 + 0.05 * j;
        col[1] = 0.9 - 0.06 * j;
        c_true(0, j) = col[0];
        c_true(1, j) = col[1];
        const auto w = to_conserved(col, p);
        g(0, j) = w[0];
        g(1, j) = w[1];
        // Guess within ~1e-3, as after one small explicit half-step.
        c(0, j) = col[0] * (1.0 + 1e-3);
        c(1, j) = col[1] * (1.0 - 1e-3);
    }
    const auto res = newton_solve_stage(c, g, p, 0.0);
    CHECK(res.iterations <= 2);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < 2; ++i)
            CHECK(c(i, j) == doctest::Approx(c_true(i, j)).epsilon(1e-11));
}

TEST_CASE("manufactured stage problem: solution, residual history, polish") {
    LangmuirParams p({1.0, 2.5}, {1.2, 0.7}, 0.4);
    const int m = 30;
    const double theta = 0.4;
    Field c_true(2, m);
    for (int j = 0; j < m; ++j) {
        const double z = (j + 0.5) / m;
        c_true(0, j) = 0.5 + 0.4 * std::sin(6.0 * z);
        c_true(1, j) = 0.3 + 0.25 * std::cos(4.0 * z);
    }
    // G = W(c_true) - theta A c_true makes c_true the exact stage solution.
    Field g(2, m), lap(2, m);
    apply_diffusion(c_true, 1.0, lap);
    std::vector<double> col(2);
    for (int j = 0; j < m; ++j) {
        col[0] = c_true(0, j);
        col[1] = c_true(1, j);
        const auto w = to_conserved(col, p);
        for (int i = 0; i < 2; ++i) g(i, j) = w[i] - theta * lap(i, j);
    }

    Field c(2, m);
    c.fill(0.4);  // flat guess, far from the solution
    std::vector<double> history;
    const auto res = newton_solve_stage(c, g, p, theta, 1e-12, 25, &history);
    CHECK(res.iterations >= 2);
    CHECK(res.iterations <= 10);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(c(i, j) - c_true(i, j)) <= 1e-10);

    // Residual strictly decreasing after the first iteration.
    REQUIRE(history.size() >= 2);
    for (std::size_t k = 1; k + 1 < history.size(); ++k) CHECK(history[k + 1] < history[k]);

    // An exact guess is returned untouched (no polish from a cold pass).
    Field c_exact = c_true;
    const auto res0 = newton_solve_stage(c_exact, g, p, theta);
    CHECK(res0.iterations == 0);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < 2; ++i) CHECK(c_exact(i, j) == c_true(i, j));
}

TEST_CASE("iteration cap raises a solver error") {
    LangmuirParams p({1.0}, {1.0}, 0.5);
    Field c(1, 5), g(1, 5);
    c.fill(5.0);
    g.fill(9.0);
    CHECK_THROWS_AS((void)newton_solve_stage(c, g, p, 0.3, 1e-12, 1), SolverError);
}
