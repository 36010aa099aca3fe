#ifndef ENTLAB_MATRIX_JSON_HPP
#define ENTLAB_MATRIX_JSON_HPP

#include <string>

#include "entlab/linalg.hpp"

namespace entlab {

/// Matrix wire format: {"dim": n, "re": [[...]], "im": [[...]]} with
/// row-major real and imaginary parts.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);
ComplexMatrix matrix_from_json_file(const std::string& path);

} // namespace entlab

#endif
