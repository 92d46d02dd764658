// Walkthrough: decompose a hand-picked pair, build the canonical objects,
// and print the residuals of every identity they satisfy.

#include <iostream>

#include "projpair/projpair.hpp"

using namespace projpair;

int main() {
    // P projects onto span(e1); Q onto the line at angle pi/3 to it.
    const double s3 = std::sqrt(3.0);
    ComplexMatrix p(2, 2), q(2, 2);
    p << 1, 0, 0, 0;
    q << 0.25, s3 / 4.0, s3 / 4.0, 0.75;

    const ProjectionPair pair = make_projection_pair(p, q);
    const HalmosDecomposition dec = decompose(pair);

    std::cout << "block dims:";
    for (const Index d : dec.dims.as_array()) std::cout << ' ' << d;
    std::cout << "\ninterior spectrum: " << dec.q0_eigs.transpose() << '\n';
    std::cout << "principal angle: " << principal_angles(dec).interior(0)
              << " rad (pi/3)\n\n";

    const ComplexMatrix w0 = base_symmetry(dec);
    const ProjectionPair part = generic_part(dec);
    std::cout << "W0 =\n" << w0.real() << '\n';
    std::cout << "||W0 P - Q W0|| = "
              << operator_norm(w0 * part.p.matrix - part.q.matrix * w0) << '\n';
    std::cout << "||W0^2 - I||    = "
              << operator_norm(w0 * w0 - ComplexMatrix::Identity(2, 2)) << "\n\n";

    const ComplexMatrix u = full_intertwiner(dec);
    std::cout << "full intertwiner residuals: "
              << operator_norm(u * p - q * u) << " (UP - QU), "
              << operator_norm(p * u - u * q) << " (PU - UQ)\n\n";

    const ComplexMatrix s = direct_rotation_generic(dec);
    const RotationCertificate cert = verify_direct_rotation(part, s, 1e-10);
    std::cout << "direct rotation =\n" << s.real() << '\n';
    std::cout << "certificate: intertwine " << cert.residual_intertwine << ", square "
              << cert.residual_square << ", min Re " << cert.min_real_part << '\n';
    std::cout << "extremal distance: " << extremal_norm(dec) << " = ||S - I|| = "
              << operator_norm(s - ComplexMatrix::Identity(2, 2)) << '\n';
    return 0;
}
