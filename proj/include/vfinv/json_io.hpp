#pragma once

#include <json.hpp>

#include "vfinv/equivalence.hpp"

namespace vfinv {

using Json = nlohmann::ordered_json;

// File formats (expressions use the parse() grammar; y<i> aliases x<i>):
//   equation:       {"n": 2, "coeffs": ["x2", "x1"]}
//   transformation: {"n": 2, "psi": ["2*y1", "y2"], "domains": [[1,2],[1,2]]}
// domains is optional and defaults to [1,2] on every axis.
Equation equation_from_json(const Json& j);
Json equation_to_json(const Equation& eq);
PointTransformation transformation_from_json(const Json& j);

Json operator_to_json(const DiffOperator& op);
Json matrix_to_json(const SymbolicMatrix& m);
Json invariant_set_to_json(const InvariantSet& set);
Json signature_to_json(const std::vector<SignatureEntry>& sig);

Json load_json_file(const std::string& path);

}  // namespace vfinv
