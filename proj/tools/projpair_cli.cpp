// Command-line front end: decompose / intertwine / rotate / verify / angles /
// extremal / gen over JSON matrix files. Output is one `<subcommand> key =
// value` line per fact, stable for scripting.
//
// Exit codes: 0 success, 1 usage or I/O, 2 existence or scope failure,
// 3 input validation failure, 4 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projpair/projpair.hpp"

namespace {

using namespace projpair;

std::string fmt(double x) { return io::format_double(x); }

ProjectionPair load_pair(const std::string& p_path, const std::string& q_path,
                         double tol) {
    return make_projection_pair(io::read_matrix(p_path), io::read_matrix(q_path), tol);
}

void print_dims(const std::string& prefix, const BlockDims& dims) {
    std::cout << prefix << " dims =";
    for (const Index d : dims.as_array()) std::cout << ' ' << d;
    std::cout << '\n';
}

void print_q0(const std::string& prefix, const RealVector& q0) {
    std::cout << prefix << " q0_eigenvalues =";
    for (Index i = 0; i < q0.size(); ++i) std::cout << ' ' << fmt(q0(i));
    std::cout << '\n';
}

struct CommonOpts {
    std::string p_path, q_path;
    double tol = 1e-8;
    double split_threshold = default_split_threshold;

    void attach(CLI::App* cmd) {
        cmd->add_option("--p", p_path, "JSON file with projection P")->required();
        cmd->add_option("--q", q_path, "JSON file with projection Q")->required();
        cmd->add_option("--tol", tol, "residual tolerance");
        cmd->add_option("--split-threshold", split_threshold,
                        "spectral window around 0 and 1 assigned to the trivial blocks");
    }

    ProjectionPair pair() const { return load_pair(p_path, q_path, tol); }

    HalmosDecomposition dec(const ProjectionPair& pair) const {
        return decompose(pair, tol, split_threshold);
    }
};

IntertwinerParams load_params(const std::string& path) {
    const nlohmann::json j = io::parse_file(path);
    if (!j.is_object())
        throw UsageError("params file: expected a JSON object");
    IntertwinerParams params;
    auto grab = [&](const char* key, std::optional<ComplexMatrix>& slot) {
        if (j.contains(key)) slot = io::matrix_from_json(j.at(key));
    };
    grab("u1", params.u1);
    grab("c2", params.c2);
    grab("c3", params.c3);
    grab("u4", params.u4);
    grab("u0", params.u0);
    grab("s0", params.s0);
    return params;
}

int run_decompose(const CommonOpts& opts, const std::string& out_path) {
    const ProjectionPair pair = opts.pair();
    const HalmosDecomposition dec = opts.dec(pair);
    const ProjectionPair rec = reconstruct(dec);
    const double round_trip = operator_norm(rec.p.matrix - pair.p.matrix) +
                              operator_norm(rec.q.matrix - pair.q.matrix);
    print_dims("decompose", dec.dims);
    print_q0("decompose", dec.q0_eigs);
    std::cout << "decompose norm_pq = " << fmt(norm_distance(pair)) << '\n';
    std::cout << "decompose round_trip_residual = " << fmt(round_trip) << '\n';
    std::cout << "decompose basis_unitarity = " << fmt(unitarity_defect(dec.basis))
              << '\n';
    if (!out_path.empty()) {
        io::write_decomposition(out_path, dec, round_trip);
        std::cout << "decompose wrote = " << out_path << '\n';
    }
    return 0;
}

int run_intertwine(const CommonOpts& opts, const std::string& mode,
                   const std::string& params_path, bool selfadjoint,
                   std::uint64_t seed, const std::string& out_path) {
    const ProjectionPair pair = opts.pair();
    const HalmosDecomposition dec = opts.dec(pair);

    IntertwinerParams params;
    if (!params_path.empty()) params = load_params(params_path);

    if (selfadjoint && mode != "full")
        throw UsageError("intertwine: --selfadjoint applies to --mode full");

    ComplexMatrix u;
    IntertwinerKind kind = IntertwinerKind::Full;
    if (mode == "full") {
        if (selfadjoint) {
            if (dec.dims.d5 > 0 && !params.u0)
                params.u0 = sample_commutant_unitary(dec, seed, true);
            if (!params.c2) {
                Prng rng(seed, 1);
                params.c2 = haar_unitary(dec.dims.d2, rng);
            }
            if (!params.c3) params.c3 = params.c2->adjoint();
        }
        u = full_intertwiner(dec, params, seed);
    } else {
        kind = (mode == "outer") ? IntertwinerKind::Outer : IntertwinerKind::Inner;
        if (!dec.generic())
            throw ScopeError("intertwine: modes outer/inner are defined for pairs in "
                             "generic position; extract the generic part first");
        const Index d5 = dec.dims.d5;
        if (d5 == 0)
            throw ScopeError("intertwine: the pair has no generic part (d5 = 0)");
        ComplexMatrix u0, s0;
        if (params.u0) {
            u0 = *params.u0;
        } else {
            Prng rng(seed, 4);
            u0 = haar_unitary(d5, rng);
        }
        if (params.s0) {
            s0 = *params.s0;
        } else {
            Prng rng(seed, 5);
            s0 = haar_unitary(d5, rng);
        }
        const ComplexMatrix canonical = (kind == IntertwinerKind::Outer)
                                            ? outer_intertwiner(dec, u0, s0)
                                            : inner_intertwiner(dec, u0, s0);
        u = dec.basis * canonical * dec.basis.adjoint();
    }

    const VerifyReport report = verify_intertwining(pair, u, kind, opts.tol);
    std::cout << "intertwine mode = " << to_string(kind) << '\n';
    std::cout << "intertwine residual_out = " << fmt(report.residual_out) << '\n';
    std::cout << "intertwine residual_inn = " << fmt(report.residual_inn) << '\n';
    std::cout << "intertwine unitarity = " << fmt(report.unitarity) << '\n';
    std::cout << "intertwine selfadjoint_defect = "
              << fmt(operator_norm(u - u.adjoint())) << '\n';
    std::cout << "intertwine passed = " << (report.passed ? "true" : "false") << '\n';
    if (!out_path.empty()) {
        io::write_matrix(out_path, u);
        std::cout << "intertwine wrote = " << out_path << '\n';
    }
    if (!report.passed)
        throw NumericalError("intertwine: constructed operator missed tolerance",
                             std::max(report.residual_out, report.residual_inn));
    return 0;
}

int run_rotate(const CommonOpts& opts, const std::string& c_path, std::uint64_t seed,
               const std::string& out_path) {
    const ProjectionPair pair = opts.pair();
    const HalmosDecomposition dec = opts.dec(pair);
    std::optional<ComplexMatrix> c;
    if (!c_path.empty()) c = io::read_matrix(c_path);
    const ComplexMatrix s = direct_rotation(dec, c, seed);
    const RotationCertificate cert = verify_direct_rotation(pair, s, opts.tol);
    std::cout << "rotate residual_intertwine = " << fmt(cert.residual_intertwine) << '\n';
    std::cout << "rotate residual_square = " << fmt(cert.residual_square) << '\n';
    std::cout << "rotate min_real_part = " << fmt(cert.min_real_part) << '\n';
    std::cout << "rotate passed = " << (cert.passed ? "true" : "false") << '\n';
    if (!out_path.empty()) {
        io::write_matrix(out_path, s);
        std::cout << "rotate wrote = " << out_path << '\n';
    }
    if (!cert.passed)
        throw NumericalError("rotate: certificate failed",
                             std::max(cert.residual_intertwine, cert.residual_square));
    return 0;
}

int run_verify(const CommonOpts& opts, const std::string& u_path,
               const std::string& mode, bool round_trip) {
    const ProjectionPair pair = opts.pair();
    if (round_trip) {
        const HalmosDecomposition dec = opts.dec(pair);
        const ProjectionPair rec = reconstruct(dec);
        const double residual = operator_norm(rec.p.matrix - pair.p.matrix) +
                                operator_norm(rec.q.matrix - pair.q.matrix);
        std::cout << "verify round_trip_residual = " << fmt(residual) << '\n';
        const bool ok = residual <= opts.tol * static_cast<double>(pair.dimension());
        std::cout << "verify passed = " << (ok ? "true" : "false") << '\n';
        if (!ok) throw NumericalError("verify: round-trip residual too large", residual);
        return 0;
    }
    if (u_path.empty())
        throw UsageError("verify: provide --u or --round-trip");
    IntertwinerKind kind = IntertwinerKind::Full;
    if (mode == "outer") kind = IntertwinerKind::Outer;
    else if (mode == "inner") kind = IntertwinerKind::Inner;
    else if (mode != "full") throw UsageError("verify: unknown mode " + mode);
    const ComplexMatrix u = io::read_matrix(u_path);
    const VerifyReport report = verify_intertwining(pair, u, kind, opts.tol);
    std::cout << "verify mode = " << to_string(kind) << '\n';
    std::cout << "verify residual_out = " << fmt(report.residual_out) << '\n';
    std::cout << "verify residual_inn = " << fmt(report.residual_inn) << '\n';
    std::cout << "verify unitarity = " << fmt(report.unitarity) << '\n';
    std::cout << "verify norm_pq = " << fmt(report.norm_pq) << '\n';
    std::cout << "verify passed = " << (report.passed ? "true" : "false") << '\n';
    if (!report.passed)
        throw NumericalError("verify: identities not satisfied within tol",
                             std::max({report.residual_out, report.residual_inn,
                                       report.unitarity}));
    return 0;
}

int run_angles(const CommonOpts& opts) {
    const HalmosDecomposition dec = opts.dec(opts.pair());
    const PrincipalAngles pa = principal_angles(dec);
    std::cout << "angles zero_count = " << pa.zero_count << '\n';
    std::cout << "angles right_count = " << pa.right_count << '\n';
    std::cout << "angles interior =";
    for (Index i = 0; i < pa.interior.size(); ++i) std::cout << ' ' << fmt(pa.interior(i));
    std::cout << '\n';
    std::cout << "angles all =";
    for (Index i = 0; i < pa.angles.size(); ++i) std::cout << ' ' << fmt(pa.angles(i));
    std::cout << '\n';
    return 0;
}

int run_extremal(const CommonOpts& opts) {
    const HalmosDecomposition dec = opts.dec(opts.pair());
    const double formula = extremal_norm(dec);
    const ComplexMatrix s = direct_rotation_generic(dec);
    const double direct =
        operator_norm(s - ComplexMatrix::Identity(s.rows(), s.cols()));
    std::cout << "extremal norm = " << fmt(formula) << '\n';
    std::cout << "extremal rotation_distance = " << fmt(direct) << '\n';
    std::cout << "extremal agreement = " << fmt(std::abs(formula - direct)) << '\n';
    return 0;
}

int run_gen(const std::vector<Index>& dims_in, const std::string& q0_csv,
            Index q0_count, const std::string& q0_interval, std::uint64_t seed,
            const std::string& out_p, const std::string& out_q) {
    if (dims_in.size() != 6)
        throw UsageError("gen: --dims needs exactly six values d1..d6");
    PairSpec spec;
    spec.dims = BlockDims{dims_in[0], dims_in[1], dims_in[2],
                          dims_in[3], dims_in[4], dims_in[5]};
    spec.seed = seed;
    if (!q0_csv.empty()) {
        std::vector<double> values;
        std::size_t pos = 0;
        while (pos < q0_csv.size()) {
            std::size_t next = q0_csv.find(',', pos);
            if (next == std::string::npos) next = q0_csv.size();
            try {
                values.push_back(std::stod(q0_csv.substr(pos, next - pos)));
            } catch (const std::exception&) {
                throw UsageError("gen: cannot parse --q0 value near '" +
                                 q0_csv.substr(pos, next - pos) + "'");
            }
            pos = next + 1;
        }
        RealVector v(static_cast<Index>(values.size()));
        for (Index i = 0; i < v.size(); ++i) v(i) = values[static_cast<std::size_t>(i)];
        spec.q0_spec = v;
    } else {
        Q0Uniform uniform;
        uniform.count = q0_count >= 0 ? q0_count : spec.dims.d5;
        if (!q0_interval.empty()) {
            const auto comma = q0_interval.find(',');
            if (comma == std::string::npos)
                throw UsageError("gen: --q0-interval needs lo,hi");
            try {
                uniform.lo = std::stod(q0_interval.substr(0, comma));
                uniform.hi = std::stod(q0_interval.substr(comma + 1));
            } catch (const std::exception&) {
                throw UsageError("gen: cannot parse --q0-interval");
            }
        }
        spec.q0_spec = uniform;
    }
    const ProjectionPair pair = build_pair(spec);
    io::write_matrix(out_p, pair.p.matrix);
    io::write_matrix(out_q, pair.q.matrix);
    std::cout << "gen n = " << pair.dimension() << '\n';
    std::cout << "gen wrote_p = " << out_p << '\n';
    std::cout << "gen wrote_q = " << out_q << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical two-projection geometry: six-subspace decomposition, "
                 "intertwining unitaries, direct rotations"};
    app.require_subcommand(1);

    CommonOpts dec_opts, int_opts, rot_opts, ver_opts, ang_opts, ext_opts;

    auto* cmd_decompose = app.add_subcommand("decompose", "canonical decomposition");
    dec_opts.attach(cmd_decompose);
    std::string dec_out;
    cmd_decompose->add_option("-o,--out", dec_out, "write decomposition JSON here");

    auto* cmd_intertwine =
        app.add_subcommand("intertwine", "construct an intertwining unitary");
    int_opts.attach(cmd_intertwine);
    std::string int_mode = "full", int_params, int_out;
    bool int_selfadjoint = false;
    std::uint64_t int_seed = 0;
    cmd_intertwine->add_option("--mode", int_mode, "outer | inner | full")
        ->check(CLI::IsMember({"outer", "inner", "full"}));
    cmd_intertwine->add_option("--params", int_params, "JSON file with parameter blocks");
    cmd_intertwine->add_flag("--selfadjoint", int_selfadjoint,
                             "draw a self-adjoint member (mode full)");
    cmd_intertwine->add_option("--seed", int_seed, "seed for defaulted parameters");
    cmd_intertwine->add_option("-o,--out", int_out, "write the unitary here");

    auto* cmd_rotate = app.add_subcommand("rotate", "construct the direct rotation");
    rot_opts.attach(cmd_rotate);
    std::string rot_c, rot_out;
    std::uint64_t rot_seed = 0;
    cmd_rotate->add_option("--c", rot_c, "JSON file with the H3->H2 unitary C");
    cmd_rotate->add_option("--seed", rot_seed, "seed for the defaulted C");
    cmd_rotate->add_option("-o,--out", rot_out, "write the rotation here");

    auto* cmd_verify = app.add_subcommand("verify", "check intertwining identities");
    ver_opts.attach(cmd_verify);
    std::string ver_u, ver_mode = "full";
    bool ver_round_trip = false;
    cmd_verify->add_option("--u", ver_u, "JSON file with the candidate unitary");
    cmd_verify->add_option("--mode", ver_mode, "outer | inner | full")
        ->check(CLI::IsMember({"outer", "inner", "full"}));
    cmd_verify->add_flag("--round-trip", ver_round_trip,
                         "decompose, reconstruct and report the residual");

    auto* cmd_angles = app.add_subcommand("angles", "principal angles");
    ang_opts.attach(cmd_angles);

    auto* cmd_extremal =
        app.add_subcommand("extremal", "extremal distance to the conjugating orbit");
    ext_opts.attach(cmd_extremal);

    auto* cmd_gen = app.add_subcommand("gen", "generate a structured pair");
    std::vector<Index> gen_dims;
    std::string gen_q0, gen_interval, gen_out_p = "gen_p.json", gen_out_q = "gen_q.json";
    Index gen_count = -1;
    std::uint64_t gen_seed = 0;
    cmd_gen->add_option("--dims", gen_dims, "six block sizes d1..d6")
        ->expected(6)
        ->required();
    cmd_gen->add_option("--q0", gen_q0, "comma-separated interior eigenvalues");
    cmd_gen->add_option("--q0-count", gen_count, "sample this many interior eigenvalues");
    cmd_gen->add_option("--q0-interval", gen_interval, "sampling interval lo,hi");
    cmd_gen->add_option("--seed", gen_seed, "seed");
    cmd_gen->add_option("--out-p", gen_out_p, "output file for P");
    cmd_gen->add_option("--out-q", gen_out_q, "output file for Q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_decompose->parsed()) return run_decompose(dec_opts, dec_out);
        if (cmd_intertwine->parsed())
            return run_intertwine(int_opts, int_mode, int_params, int_selfadjoint,
                                  int_seed, int_out);
        if (cmd_rotate->parsed()) return run_rotate(rot_opts, rot_c, rot_seed, rot_out);
        if (cmd_verify->parsed())
            return run_verify(ver_opts, ver_u, ver_mode, ver_round_trip);
        if (cmd_angles->parsed()) return run_angles(ang_opts);
        if (cmd_extremal->parsed()) return run_extremal(ext_opts);
        if (cmd_gen->parsed())
            return run_gen(gen_dims, gen_q0, gen_count, gen_interval, gen_seed,
                           gen_out_p, gen_out_q);
        throw UsageError("no subcommand given");
    } catch (const ExistenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ScopeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << " (residual " << fmt(e.residual) << ")\n";
        return 4;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
