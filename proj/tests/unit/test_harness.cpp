#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace projpair;
using namespace testutil;
using Catch::Approx;

TEST_CASE("build_pair realizes the requested block structure") {
    // Identical rank-1 projections.
    PairSpec same{BlockDims{1, 0, 0, 1, 0, 0}, RealVector{RealVector(0)}, 17};
    const ProjectionPair pair_same = build_pair(same);
    REQUIRE(operator_norm(pair_same.p.matrix - pair_same.q.matrix) <= 1e-12);
    REQUIRE(pair_same.p.matrix.trace().real() == Approx(1.0).margin(1e-10));

    // Unitarily equivalent to fixture C: the interior spectrum comes back.
    PairSpec like_c{BlockDims{0, 0, 0, 0, 1, 1},
                    RealVector{(RealVector(1) << 0.25).finished()}, 18};
    const HalmosDecomposition dec = decompose(build_pair(like_c));
    REQUIRE(dec.dims == BlockDims{0, 0, 0, 0, 1, 1});
    REQUIRE(dec.q0_eigs(0) == Approx(0.25).margin(1e-9));

    // Orthogonal-range blocks force distance one.
    PairSpec crossed{BlockDims{0, 1, 1, 0, 0, 0}, RealVector{RealVector(0)}, 19};
    REQUIRE(norm_distance(build_pair(crossed)) == Approx(1.0).margin(1e-8));
}

TEST_CASE("build_pair rejects malformed specs") {
    REQUIRE_THROWS_AS(
        build_pair(PairSpec{BlockDims{0, 0, 0, 0, 1, 2}, RealVector{RealVector(0)}, 0}),
        UsageError);
    REQUIRE_THROWS_AS(
        build_pair(PairSpec{BlockDims{0, 0, 0, 0, 1, 1},
                            RealVector{(RealVector(1) << 1.0 - 1e-12).finished()}, 0}),
        UsageError);
    REQUIRE_THROWS_AS(
        build_pair(PairSpec{BlockDims{0, 0, 0, 0, 2, 2},
                            RealVector{(RealVector(1) << 0.5).finished()}, 0}),
        UsageError);
    REQUIRE_THROWS_AS(
        build_pair(PairSpec{BlockDims{0, 0, 0, 0, 1, 1}, Q0Uniform{1, 0.9, 0.2}, 0}),
        UsageError);
}

TEST_CASE("generator and decomposer are mutually inverse over 200 specs") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Prng pick(seed, 333);
        BlockDims dims;
        dims.d1 = static_cast<Index>(pick.uniform() * 3);
        dims.d2 = static_cast<Index>(pick.uniform() * 3);
        dims.d3 = static_cast<Index>(pick.uniform() * 3);
        dims.d4 = static_cast<Index>(pick.uniform() * 3);
        dims.d5 = 1 + static_cast<Index>(pick.uniform() * 4);
        dims.d6 = dims.d5;
        RealVector q0(dims.d5);
        for (Index i = 0; i < dims.d5; ++i) q0(i) = 0.05 + 0.9 * pick.uniform();
        std::sort(q0.begin(), q0.end());
        PairSpec spec{dims, q0, seed};
        const ProjectionPair pair = build_pair(spec);
        REQUIRE(pair.dimension() <= 24);
        const HalmosDecomposition dec = decompose(pair);
        REQUIRE(dec.dims == dims);
        REQUIRE((dec.q0_eigs - q0).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("build_pair is deterministic in the seed") {
    PairSpec spec{BlockDims{1, 1, 1, 1, 2, 2}, Q0Uniform{2, 0.1, 0.9}, 64};
    const ProjectionPair a = build_pair(spec);
    const ProjectionPair b = build_pair(spec);
    REQUIRE(max_abs_diff(a.p.matrix, b.p.matrix) == 0.0);
    REQUIRE(max_abs_diff(a.q.matrix, b.q.matrix) == 0.0);
}

TEST_CASE("random_pair_dense respects rank arithmetic") {
    // Rank-1 subspaces of C^2 are generically in generic position.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const HalmosDecomposition dec = decompose(random_pair_dense(2, 1, 1, seed));
        REQUIRE(dec.dims.d5 == 1);
    }

    // Zero rank: P = 0 and the dims are forced exactly.
    const ProjectionPair zero = random_pair_dense(5, 0, 2, 3);
    REQUIRE(operator_norm(zero.p.matrix) == 0.0);
    REQUIRE(decompose(zero).dims == BlockDims{0, 0, 2, 3, 0, 0});

    // Unequal ranks force d2 - d3 = rank_p - rank_q.
    const HalmosDecomposition dec = decompose(random_pair_dense(4, 3, 1, 11));
    REQUIRE(dec.dims.d2 - dec.dims.d3 == 2);
    REQUIRE(dec.dims.d1 == 0);

    REQUIRE_THROWS_AS(random_pair_dense(3, 4, 1, 0), UsageError);
}

TEST_CASE("verify_intertwining reports the stated residuals") {
    // Fixture B with the swap, checked by hand above the library.
    ComplexMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    const VerifyReport full =
        verify_intertwining(fixture_b(), swap, IntertwinerKind::Full, 1e-9);
    REQUIRE(full.passed);
    REQUIRE(full.residual_out <= 1e-15);
    REQUIRE(full.residual_inn <= 1e-15);
    REQUIRE(full.norm_pq == Approx(1.0).margin(1e-12));

    // The identity is not an outer intertwiner of fixture C: the defect is
    // exactly ||P - Q||.
    const VerifyReport bad = verify_intertwining(
        fixture_c(), ComplexMatrix::Identity(2, 2), IntertwinerKind::Outer, 1e-9);
    REQUIRE_FALSE(bad.passed);
    REQUIRE(bad.residual_out == Approx(kSqrt3 / 2.0).epsilon(1e-12));

    // Constructed full intertwiners pass.
    PairSpec spec{BlockDims{1, 1, 1, 0, 2, 2}, Q0Uniform{2, 0.2, 0.8}, 23};
    const ProjectionPair pair = build_pair(spec);
    const ComplexMatrix u = full_intertwiner(decompose(pair), {}, 5);
    REQUIRE(verify_intertwining(pair, u, IntertwinerKind::Full, 1e-9).passed);

    REQUIRE_THROWS_AS(verify_intertwining(fixture_b(), ComplexMatrix::Identity(3, 3),
                                          IntertwinerKind::Full, 1e-9),
                      UsageError);
}

TEST_CASE("verify_intertwining requires unitarity") {
    // 0 commutes with everything but is no intertwiner.
    const VerifyReport rep = verify_intertwining(
        fixture_a(), ComplexMatrix::Zero(2, 2), IntertwinerKind::Full, 1e-9);
    REQUIRE(rep.residual_out == 0.0);
    REQUIRE(rep.residual_inn == 0.0);
    REQUIRE_FALSE(rep.passed);
}

TEST_CASE("brute-force distance dominates the closed-form extremal norm") {
    const HalmosDecomposition dec = decompose(fixture_c());
    const double extremal = extremal_norm(dec);

    // One trial is the deterministic candidate, already optimal.
    const double one = brute_force_min_distance(dec, 1, 0);
    REQUIRE(one >= extremal - 1e-9);
    REQUIRE(one == Approx(1.0).margin(1e-10));

    const double many = brute_force_min_distance(dec, 2000, 0);
    REQUIRE(many >= extremal - 1e-9);
    REQUIRE(std::abs(many - 1.0) <= 0.05);

    REQUIRE_THROWS_AS(brute_force_min_distance(dec, 0, 0), UsageError);
    REQUIRE_THROWS_AS(brute_force_min_distance(decompose(fixture_d()), 5, 0),
                      ScopeError);
}

TEST_CASE("brute-force distance is deterministic in the seed") {
    PairSpec spec{BlockDims{0, 0, 0, 0, 2, 2}, Q0Uniform{2, 0.1, 0.9}, 61};
    const HalmosDecomposition dec = decompose(build_pair(spec));
    const double a = brute_force_min_distance(dec, 50, 77);
    const double b = brute_force_min_distance(dec, 50, 77);
    REQUIRE(a == b);
}

TEST_CASE("distance-one pairs have trivial blocks; close pairs conjugate") {
    // Kato's condition, finite-dimensionally: ||P - Q|| < 1 iff d2 = d3 = 0,
    // and then the constructed two-sided intertwiner conjugates P to Q both
    // ways.
    const std::uint64_t seed = GENERATE(range(std::uint64_t(0), std::uint64_t(8)));
    const Index n = 6;
    const Index rank = 2 + static_cast<Index>(seed % 3);
    const ProjectionPair pair = random_pair_dense(n, rank, rank, 500 + seed);
    const HalmosDecomposition dec = decompose(pair);
    const double dist = norm_distance(pair);
    if (dec.dims.d2 + dec.dims.d3 > 0) {
        REQUIRE(dist == Approx(1.0).margin(1e-8));
    } else {
        REQUIRE(dist < 1.0 - 1e-8);
        const ComplexMatrix u = full_intertwiner(dec, {}, seed);
        REQUIRE(operator_norm(u * pair.p.matrix * u.adjoint() - pair.q.matrix) <= 1e-9);
        REQUIRE(operator_norm(u * pair.q.matrix * u.adjoint() - pair.p.matrix) <= 1e-9);
    }
}

TEST_CASE("haar unitaries are unitary and seed-stable") {
    Prng rng(123, 9);
    const ComplexMatrix u = haar_unitary(8, rng);
    REQUIRE(unitarity_defect(u) <= 1e-12);
    Prng rng2(123, 9);
    REQUIRE(max_abs_diff(u, haar_unitary(8, rng2)) == 0.0);
    Prng rng3(124, 9);
    REQUIRE(max_abs_diff(u, haar_unitary(8, rng3)) > 1e-3);
}
