#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hre/baselines.hpp"
#include "hre/errors.hpp"
#include "hre/pcm.hpp"
#include "random_problems.hpp"

using hre::PCMatrix;

namespace {

void check_normalized_positive(const hre::PriorityVector& p) {
    double sum = 0.0;
    for (double w : p.weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("eigenvector and geometric-mean weights of a consistent matrix") {
    const PCMatrix m = PCMatrix::from_weights(std::vector<double>{1.0, 2.0, 4.0});
    for (const auto& p : {hre::evm(m), hre::gmm(m)}) {
        CHECK(p.weights[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
        CHECK(p.weights[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
        CHECK(p.weights[2] == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    }
}

TEST_CASE("2x2 matrices have the closed-form answer (3/4, 1/4)") {
    PCMatrix m(2);
    m.set_pair(0, 1, 3.0);
    for (const auto& p : {hre::evm(m), hre::gmm(m)}) {
        CHECK(p.weights[0] == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(p.weights[1] == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("indifference gives uniform weights") {
    PCMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) m.set_cell(i, j, 1.0);
    for (const auto& p :
         {hre::evm(m), hre::gmm(m), hre::harker_evm(m), hre::incomplete_gmm(m)})
        for (double w : p.weights) CHECK(w == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("complete-only baselines refuse gaps") {
    PCMatrix m(3);
    m.set_pair(0, 1, 2.0);
    m.set_pair(1, 2, 2.0);
    CHECK_THROWS_AS(hre::evm(m), hre::MissingEntriesError);
    CHECK_THROWS_AS(hre::gmm(m), hre::MissingEntriesError);
}

TEST_CASE("incomplete variants match their complete counterparts on full input") {
    testgen::Rng rng(51);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = 3 + rep % 6;
        const PCMatrix m = testgen::random_reciprocal_complete(rng, n);

        // Harker's matrix is the comparison matrix itself when nothing is
        // missing, so the two eigenvector routes share every operation.
        const hre::PriorityVector ev = hre::evm(m);
        const hre::PriorityVector hv = hre::harker_evm(m);
        for (std::size_t i = 0; i < n; ++i) CHECK(ev.weights[i] == hv.weights[i]);

        const hre::PriorityVector gm = hre::gmm(m);
        const hre::PriorityVector ig = hre::incomplete_gmm(m);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(ig.weights[i] == doctest::Approx(gm.weights[i]).epsilon(1e-9));
    }
}

TEST_CASE("consistent incomplete data reproduces the generating weights") {
    testgen::Rng rng(52);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = 3 + rep % 7;
        const std::vector<double> w = testgen::random_weights(rng, n);
        const PCMatrix m =
            testgen::consistent_on_pattern(w, testgen::spanning_tree_pattern(rng, n, 0.3));
        double total = 0.0;
        for (double x : w) total += x;
        for (const auto& p : {hre::harker_evm(m), hre::incomplete_gmm(m)})
            for (std::size_t i = 0; i < n; ++i)
                CHECK(p.weights[i] == doctest::Approx(w[i] / total).epsilon(1e-9));
    }
}

TEST_CASE("a single comparison fixes the 2x2 incomplete ratio") {
    PCMatrix m(2);
    m.set_pair(0, 1, 4.0);
    const hre::PriorityVector p = hre::incomplete_gmm(m);
    CHECK(p.weights[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(p.weights[1] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("incomplete baselines gate on connectivity") {
    PCMatrix split(4);
    split.set_pair(0, 1, 2.0);
    split.set_pair(2, 3, 2.0);
    CHECK_THROWS_AS(hre::harker_evm(split), hre::NotIrreducibleError);
    CHECK_THROWS_AS(hre::incomplete_gmm(split), hre::NotIrreducibleError);
}

TEST_CASE("all four baselines return normalized positive vectors") {
    testgen::Rng rng(53);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 3 + rep % 6;
        const PCMatrix full = testgen::random_reciprocal_complete(rng, n);
        check_normalized_positive(hre::evm(full));
        check_normalized_positive(hre::gmm(full));

        const PCMatrix sparse = testgen::random_reciprocal_on_pattern(
            rng, testgen::spanning_tree_pattern(rng, n, 0.4), n);
        check_normalized_positive(hre::harker_evm(sparse));
        check_normalized_positive(hre::incomplete_gmm(sparse));
    }
}

TEST_CASE("baseline weights are equivariant under relabeling") {
    testgen::Rng rng(54);
    const std::size_t n = 6;
    const PCMatrix m = testgen::random_reciprocal_complete(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    PCMatrix pm(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) pm.set_cell(perm[i], perm[j], m.value(i, j));

    using Baseline = hre::PriorityVector (*)(const PCMatrix&);
    for (const Baseline method :
         {Baseline(hre::evm), Baseline(hre::gmm), Baseline(hre::harker_evm),
          Baseline(hre::incomplete_gmm)}) {
        const hre::PriorityVector base = method(m);
        const hre::PriorityVector permuted = method(pm);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(permuted.weights[perm[i]] ==
                  doctest::Approx(base.weights[i]).epsilon(1e-9));
    }
}
