#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace projpair;
using namespace testutil;
using Catch::Approx;

TEST_CASE("hermitian_eig on diagonal input sorts ascending") {
    ComplexMatrix h(2, 2);
    h << 3, 0, 0, 1;
    EigenSystem es = hermitian_eig(HermitianMatrix(h));
    REQUIRE(es.eigenvalues(0) == Approx(1.0).margin(1e-14));
    REQUIRE(es.eigenvalues(1) == Approx(3.0).margin(1e-14));
    // Eigenvectors are a permutation of the identity columns.
    REQUIRE(std::abs(es.vectors(1, 0)) == Approx(1.0).margin(1e-14));
    REQUIRE(std::abs(es.vectors(0, 1)) == Approx(1.0).margin(1e-14));
    REQUIRE(std::abs(es.vectors(0, 0)) == Approx(0.0).margin(1e-14));
}

TEST_CASE("hermitian_eig on the symmetric swap") {
    ComplexMatrix h(2, 2);
    h << 0, 1, 1, 0;
    EigenSystem es = hermitian_eig(HermitianMatrix(h));
    REQUIRE(es.eigenvalues(0) == Approx(-1.0).margin(1e-14));
    REQUIRE(es.eigenvalues(1) == Approx(1.0).margin(1e-14));
}

TEST_CASE("hermitian_eig on a rank-1 projection") {
    const ComplexMatrix q = fixture_c_q();
    // Oracle: trace 1 and determinant 0 force the spectrum {0, 1}.
    REQUIRE((q(0, 0) + q(1, 1)).real() == Approx(1.0));
    REQUIRE((q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0)).real() == Approx(0.0).margin(1e-15));
    EigenSystem es = hermitian_eig(HermitianMatrix(q));
    REQUIRE(es.eigenvalues(0) == Approx(0.0).margin(1e-14));
    REQUIRE(es.eigenvalues(1) == Approx(1.0).margin(1e-14));
}

TEST_CASE("hermitian_eig reconstruction and orthonormality on random input") {
    const Index n = GENERATE(Index(1), Index(2), Index(7), Index(16), Index(32));
    const ComplexMatrix h = random_hermitian(n, 1000 + static_cast<std::uint64_t>(n));
    EigenSystem es = hermitian_eig(HermitianMatrix(h));
    const ComplexMatrix rebuilt =
        es.vectors * es.eigenvalues.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    const double scale = operator_norm(h);
    REQUIRE(operator_norm(h - rebuilt) <= 1e-11 * static_cast<double>(n) * scale);
    REQUIRE(unitarity_defect(es.vectors) <= 1e-11 * static_cast<double>(n));
    for (Index i = 1; i < n; ++i) REQUIRE(es.eigenvalues(i - 1) <= es.eigenvalues(i));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    REQUIRE_THROWS_AS(HermitianMatrix(m), ValidationError);
    REQUIRE_THROWS_AS(HermitianMatrix(ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("operator_norm basics") {
    REQUIRE(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
    REQUIRE(operator_norm(ComplexMatrix::Identity(5, 5)) == Approx(1.0));
    REQUIRE(operator_norm(ComplexMatrix(0, 0)) == 0.0);
}

TEST_CASE("operator_norm of the fixture-C difference") {
    const ProjectionPair pair = fixture_c();
    const ComplexMatrix diff = pair.p.matrix - pair.q.matrix;
    // Oracle: characteristic polynomial of the 2x2 difference.
    const auto [lo, hi] = charpoly_eigs_2x2(diff);
    const double expected = std::max(std::abs(lo), std::abs(hi));
    REQUIRE(expected == Approx(kSqrt3 / 2.0).epsilon(1e-13));
    REQUIRE(operator_norm(diff) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("operator_norm is adjoint-invariant") {
    const Index n = GENERATE(Index(2), Index(5), Index(9));
    Prng rng(77, static_cast<std::uint64_t>(n));
    const ComplexMatrix m = gaussian_matrix(n, n + 1, rng);
    REQUIRE(std::abs(operator_norm(m) - operator_norm(ComplexMatrix(m.adjoint()))) <=
            1e-12);
}

TEST_CASE("psd_sqrt of diagonal matrices is the elementwise root") {
    ComplexMatrix h(2, 2);
    h << 4, 0, 0, 9;
    const ComplexMatrix r = psd_sqrt(HermitianMatrix(h)).matrix();
    REQUIRE(r(0, 0).real() == Approx(2.0).margin(1e-14));
    REQUIRE(r(1, 1).real() == Approx(3.0).margin(1e-14));
    REQUIRE(std::abs(r(0, 1)) <= 1e-14);

    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    REQUIRE(max_abs_diff(psd_sqrt(HermitianMatrix(id)).matrix(), id) <= 1e-14);
}

TEST_CASE("psd_sqrt fixes projections") {
    // A projection is idempotent, so it is its own positive square root.
    const ComplexMatrix q = fixture_c_q();
    REQUIRE(max_abs_diff(psd_sqrt(HermitianMatrix(q)).matrix(), q) <= 1e-14);
}

TEST_CASE("psd_sqrt residual contract on random Gram matrices") {
    const Index n = GENERATE(Index(3), Index(8), Index(20));
    Prng rng(5, static_cast<std::uint64_t>(n));
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    const ComplexMatrix h = g * g.adjoint();
    const ComplexMatrix r = psd_sqrt(HermitianMatrix(h)).matrix();
    REQUIRE(operator_norm(r * r - h) <=
            1e-10 * static_cast<double>(n) * operator_norm(h));
    EigenSystem es = hermitian_eig(HermitianMatrix(r));
    REQUIRE(es.eigenvalues(0) >= -1e-12);
}

TEST_CASE("psd_sqrt clamps roundoff negatives and rejects real ones") {
    ComplexMatrix tiny(2, 2);
    tiny << -1e-14, 0, 0, 1;
    const ComplexMatrix r = psd_sqrt(HermitianMatrix(tiny)).matrix();
    REQUIRE(r(0, 0).real() == 0.0);

    ComplexMatrix bad(2, 2);
    bad << -1, 0, 0, 1;
    REQUIRE_THROWS_AS(psd_sqrt(HermitianMatrix(bad)), ValidationError);
}

TEST_CASE("unitarity_defect basics") {
    REQUIRE(unitarity_defect(ComplexMatrix::Identity(3, 3)) == 0.0);
    REQUIRE(unitarity_defect(2.0 * ComplexMatrix::Identity(3, 3)) == Approx(3.0));
}

TEST_CASE("unitarity_defect of the fixture-C base symmetry") {
    const HalmosDecomposition dec = decompose(fixture_c());
    const ComplexMatrix w0 = base_symmetry(dec);
    // Oracle: explicit 2x2 multiplication of W0^H W0.
    ComplexMatrix gram(2, 2);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            gram(i, j) = std::conj(w0(0, i)) * w0(0, j) + std::conj(w0(1, i)) * w0(1, j);
    REQUIRE(max_abs_diff(gram, ComplexMatrix::Identity(2, 2)) <= 1e-15);
    REQUIRE(unitarity_defect(w0) <= 1e-12);
}

TEST_CASE("unitarity_defect measures the appropriate Gram matrix for frames") {
    Prng rng(31, 0);
    const ComplexMatrix tall = haar_frame(6, 2, rng);
    REQUIRE(unitarity_defect(tall) <= 1e-13);                       // isometry
    REQUIRE(unitarity_defect(ComplexMatrix(tall.adjoint())) <= 1e-13); // co-isometry
    // A tall frame is never a co-isometry; the square case sees that.
    ComplexMatrix padded = ComplexMatrix::Zero(6, 6);
    padded.leftCols(2) = tall;
    REQUIRE(unitarity_defect(padded) >= 0.9);
}
