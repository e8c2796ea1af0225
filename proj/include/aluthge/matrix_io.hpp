#ifndef ALUTHGE_MATRIX_IO_HPP
#define ALUTHGE_MATRIX_IO_HPP

// Matrix documents: {"rows": r, "cols": c, "data": [[re, im], ...]} in
// row-major order. A bundle is an object of such documents under names
// ("A", "B", "X"). Doubles are printed in shortest round-trip form, so
// write-then-read is bit-exact.

#include "aluthge/linalg_core.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace aluthge {

using Json = nlohmann::json;

class FormatError : public Error {
public:
    using Error::Error;
};

inline Json matrix_to_json(const ComplexMatrix& m) {
    if (!m.allFinite()) throw FormatError("cannot serialize a matrix with non-finite entries");
    Json data = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const Json& doc, const std::string& where = "matrix") {
    if (!doc.is_object()) throw FormatError(where + ": expected an object");
    auto dim = [&](const char* key) -> Index {
        if (!doc.contains(key)) throw FormatError(where + ": missing field \"" + key + "\"");
        const Json& v = doc.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw FormatError(where + ": field \"" + key + "\" must be a positive integer");
        return static_cast<Index>(v.get<long long>());
    };
    const Index rows = dim("rows");
    const Index cols = dim("cols");
    if (!doc.contains("data") || !doc.at("data").is_array())
        throw FormatError(where + ": field \"data\" must be an array");
    const Json& data = doc.at("data");
    if (static_cast<Index>(data.size()) != rows * cols)
        throw FormatError(where + ": field \"data\" has " + std::to_string(data.size()) +
                          " entries, expected rows*cols = " + std::to_string(rows * cols));
    ComplexMatrix m(rows, cols);
    for (Index k = 0; k < rows * cols; ++k) {
        const Json& e = data[static_cast<std::size_t>(k)];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw FormatError(where + ": field \"data\"[" + std::to_string(k) + "] must be [re, im]");
        const Complex z(e[0].get<double>(), e[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw FormatError(where + ": field \"data\"[" + std::to_string(k) + "] is not finite");
        m(k / cols, k % cols) = z;
    }
    return m;
}

using MatrixBundle = std::map<std::string, ComplexMatrix>;

inline Json bundle_to_json(const MatrixBundle& b) {
    Json out = Json::object();
    for (const auto& [name, m] : b) out[name] = matrix_to_json(m);
    return out;
}

/// Accepts a single matrix document (returned under "A") or a bundle.
inline MatrixBundle bundle_from_json(const Json& doc) {
    if (!doc.is_object()) throw FormatError("document: expected an object");
    if (doc.contains("rows")) return {{"A", matrix_from_json(doc, "A")}};
    MatrixBundle out;
    for (const auto& [name, v] : doc.items()) out.emplace(name, matrix_from_json(v, name));
    return out;
}

inline Json parse_document(std::istream& in) {
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed document: ") + e.what());
    }
}

inline Json read_document(const std::string& path) {
    if (path == "-") return parse_document(std::cin);
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return parse_document(in);
}

inline ComplexMatrix read_matrix(std::istream& in) { return matrix_from_json(parse_document(in)); }

inline void write_matrix(std::ostream& out, const ComplexMatrix& m) { out << matrix_to_json(m).dump() << '\n'; }

inline void write_document(const Json& doc, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace aluthge

#endif  // ALUTHGE_MATRIX_IO_HPP
