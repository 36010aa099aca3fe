#include "entlab/matrix_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entlab/format.hpp"

namespace entlab {

std::string matrix_to_json(const ComplexMatrix& m) {
    std::ostringstream os;
    const int n = m.dim();
    os << "{\"dim\": " << n << ", \"re\": [";
    for (int r = 0; r < n; ++r) {
        os << (r ? ", [" : "[");
        for (int c = 0; c < n; ++c) os << (c ? ", " : "") << fmt12(m(r, c).real());
        os << "]";
    }
    os << "], \"im\": [";
    for (int r = 0; r < n; ++r) {
        os << (r ? ", [" : "[");
        for (int c = 0; c < n; ++c) os << (c ? ", " : "") << fmt12(m(r, c).imag());
        os << "]";
    }
    os << "]}";
    return os.str();
}

ComplexMatrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("matrix JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
        throw DomainError("matrix JSON must be an object with dim, re, im");
    }
    const int n = j.at("dim").get<int>();
    if (n != 2 && n != 4) throw DomainError("matrix JSON: dim must be 2 or 4");
    ComplexMatrix m(n);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != n ||
        static_cast<int>(im.size()) != n) {
        throw DomainError("matrix JSON: re/im must be dim x dim arrays");
    }
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(re[r].size()) != n || static_cast<int>(im[r].size()) != n) {
            throw DomainError("matrix JSON: re/im must be dim x dim arrays");
        }
        for (int c = 0; c < n; ++c) {
            m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
        }
    }
    if (!m.finite()) throw DomainError("matrix JSON: entries must be finite");
    return m;
}

ComplexMatrix matrix_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open matrix file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return matrix_from_json(ss.str());
}

} // namespace entlab
