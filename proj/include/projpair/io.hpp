#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "projpair/decomposition.hpp"

namespace projpair::io {

/// Shortest decimal with 17 significant digits; strtod recovers the exact
/// bit pattern on the way back in.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_matrix_json(std::ostream& out, const ComplexMatrix& m) {
    out << "{\"rows\":" << m.rows() << ",\"cols\":" << m.cols() << ",\"data\":[";
    for (Index i = 0; i < m.rows(); ++i) {
        if (i > 0) out << ',';
        out << '[';
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << '[' << format_double(m(i, j).real()) << ','
                << format_double(m(i, j).imag()) << ']';
        }
        out << ']';
    }
    out << "]}";
}

inline std::string matrix_to_json(const ComplexMatrix& m) {
    std::ostringstream out;
    write_matrix_json(out, m);
    return out.str();
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) try {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw UsageError("matrix file: expected object with rows, cols, data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw UsageError("matrix file: rows/cols must be integers");
    const Index rows = j["rows"].get<Index>();
    const Index cols = j["cols"].get<Index>();
    if (rows < 0 || cols < 0)
        throw UsageError("matrix file: negative dimensions");
    const auto& data = j["data"];
    if (!data.is_array() || static_cast<Index>(data.size()) != rows)
        throw UsageError("matrix file: data has wrong number of rows");
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = data[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw UsageError("matrix file: ragged data in row " + std::to_string(i));
        for (Index j2 = 0; j2 < cols; ++j2) {
            const auto& entry = row[static_cast<std::size_t>(j2)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw UsageError("matrix file: entry (" + std::to_string(i) + "," +
                                 std::to_string(j2) + ") is not a [re, im] pair");
            m(i, j2) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    if (!is_finite(m))
        throw UsageError("matrix file: non-finite entries");
    return m;
} catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("matrix file: ") + e.what());
}

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("parse error in " + path + ": " + e.what());
    }
}

inline ComplexMatrix read_matrix(const std::string& path) {
    return matrix_from_json(parse_file(path));
}

inline void write_matrix(const std::string& path, const ComplexMatrix& m) {
    if (!is_finite(m))
        throw UsageError("refusing to write non-finite matrix to " + path);
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot open file for writing: " + path);
    write_matrix_json(out, m);
    out << '\n';
    if (!out)
        throw UsageError("write failed: " + path);
}

inline void write_decomposition(std::ostream& out, const HalmosDecomposition& dec,
                                double round_trip_residual) {
    out << "{\"dims\":[";
    const auto dims = dec.dims.as_array();
    for (std::size_t i = 0; i < dims.size(); ++i)
        out << (i ? "," : "") << dims[i];
    out << "],\"q0_eigenvalues\":[";
    for (Index i = 0; i < dec.q0_eigs.size(); ++i)
        out << (i ? "," : "") << format_double(dec.q0_eigs(i));
    out << "],\"basis\":";
    write_matrix_json(out, dec.basis);
    out << ",\"d_unitary\":";
    write_matrix_json(out, dec.d_unitary);
    out << ",\"tolerances\":{\"tol\":" << format_double(dec.tol_used)
        << ",\"split_threshold\":" << format_double(dec.split_threshold) << "}"
        << ",\"residuals\":{\"round_trip\":" << format_double(round_trip_residual)
        << ",\"basis_unitarity\":" << format_double(unitarity_defect(dec.basis))
        << ",\"d_unitarity\":" << format_double(unitarity_defect(dec.d_unitary)) << "}}";
}

inline void write_decomposition(const std::string& path, const HalmosDecomposition& dec,
                                double round_trip_residual) {
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot open file for writing: " + path);
    write_decomposition(out, dec, round_trip_residual);
    out << '\n';
    if (!out)
        throw UsageError("write failed: " + path);
}

inline HalmosDecomposition read_decomposition(const std::string& path) {
    const nlohmann::json j = parse_file(path);
    if (!j.is_object() || !j.contains("dims") || !j.contains("q0_eigenvalues") ||
        !j.contains("basis") || !j.contains("d_unitary") || !j.contains("tolerances"))
        throw UsageError("decomposition file: missing required fields");

    HalmosDecomposition dec;
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 6)
        throw UsageError("decomposition file: dims must have 6 entries");
    dec.dims = BlockDims{dims[0].get<Index>(), dims[1].get<Index>(), dims[2].get<Index>(),
                         dims[3].get<Index>(), dims[4].get<Index>(), dims[5].get<Index>()};

    const auto& q0 = j["q0_eigenvalues"];
    if (!q0.is_array())
        throw UsageError("decomposition file: q0_eigenvalues must be an array");
    dec.q0_eigs = RealVector(static_cast<Index>(q0.size()));
    for (Index i = 0; i < dec.q0_eigs.size(); ++i)
        dec.q0_eigs(i) = q0[static_cast<std::size_t>(i)].get<double>();

    dec.basis = matrix_from_json(j["basis"]);
    dec.d_unitary = matrix_from_json(j["d_unitary"]);
    dec.tol_used = j["tolerances"].value("tol", 0.0);
    dec.split_threshold = j["tolerances"].value("split_threshold", default_split_threshold);

    // Re-check the invariants the in-memory type guarantees.
    if (dec.dims.d5 != dec.dims.d6)
        throw ValidationError("decomposition file: d5 != d6");
    if (dec.dims.total() != dec.basis.rows() || dec.basis.rows() != dec.basis.cols())
        throw ValidationError("decomposition file: dims do not match basis size");
    if (dec.q0_eigs.size() != dec.dims.d5)
        throw ValidationError("decomposition file: q0 spectrum size does not match d5");
    for (Index i = 0; i < dec.q0_eigs.size(); ++i) {
        const double v = dec.q0_eigs(i);
        if (!(v > dec.split_threshold && v < 1.0 - dec.split_threshold))
            throw ValidationError("decomposition file: q0 eigenvalue outside split window");
        if (i > 0 && dec.q0_eigs(i) < dec.q0_eigs(i - 1))
            throw ValidationError("decomposition file: q0 eigenvalues not ascending");
    }
    if (unitarity_defect(dec.basis) > dec.tol_used)
        throw ValidationError("decomposition file: basis is not unitary within tol");
    if (unitarity_defect(dec.d_unitary) > 10.0 * dec.tol_used)
        throw ValidationError("decomposition file: d_unitary fails unitarity");
    return dec;
}

} // namespace projpair::io
