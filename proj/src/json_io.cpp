#include "vfinv/json_io.hpp"

#include <fstream>

namespace vfinv {

namespace {

int read_dim(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw DomainError("expected an object with an integer field \"n\"");
  return j["n"].get<int>();
}

std::vector<ExprPtr> read_expr_list(const Json& j, const char* field, int n) {
  if (!j.contains(field) || !j[field].is_array())
    throw DomainError(std::string("expected an array field \"") + field + "\"");
  std::vector<ExprPtr> out;
  for (const Json& item : j[field]) {
    if (!item.is_string()) throw DomainError(std::string(field) + " entries must be strings");
    out.push_back(parse(item.get<std::string>(), n));
  }
  return out;
}

}  // namespace

Equation equation_from_json(const Json& j) {
  int n = read_dim(j);
  check_dim(n);
  return make_equation(n, read_expr_list(j, "coeffs", n));
}

Json equation_to_json(const Equation& eq) {
  Json j;
  j["n"] = eq.n;
  Json arr = Json::array();
  for (const ExprPtr& c : eq.coeffs) arr.push_back(to_string(c));
  j["coeffs"] = arr;
  return j;
}

PointTransformation transformation_from_json(const Json& j) {
  int n = read_dim(j);
  check_dim(n);
  std::vector<ExprPtr> psi = read_expr_list(j, "psi", n);
  std::vector<std::pair<double, double>> domain;
  if (j.contains("domains")) {
    if (!j["domains"].is_array()) throw DomainError("\"domains\" must be an array of [lo, hi] pairs");
    for (const Json& item : j["domains"]) {
      if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
        throw DomainError("\"domains\" entries must be [lo, hi] number pairs");
      domain.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
  }
  return make_transformation(n, std::move(psi), std::move(domain));
}

Json operator_to_json(const DiffOperator& op) {
  Json j;
  j["n"] = op.dim();
  Json terms = Json::array();
  for (const auto& [target, coeff] : op.terms()) {
    Json t;
    t["target"] = target.name();
    t["coefficient"] = to_string(coeff);
    terms.push_back(t);
  }
  j["terms"] = terms;
  j["text"] = op.str();
  j["latex"] = op.latex();
  return j;
}

Json matrix_to_json(const SymbolicMatrix& m) {
  Json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  Json cols = Json::array();
  for (const Var& v : m.col_labels) cols.push_back(v.name());
  j["columns"] = cols;
  Json entries = Json::array();
  for (const auto& row : m.entry) {
    Json r = Json::array();
    for (const ExprPtr& e : row) r.push_back(to_string(e));
    entries.push_back(r);
  }
  j["entries"] = entries;
  return j;
}

Json invariant_set_to_json(const InvariantSet& set) {
  Json j;
  j["n"] = set.n;
  j["order"] = set.order;
  j["count"] = set.invariants.size();
  j["fundamental_subset_only"] = set.fundamental_subset_only;
  if (set.fundamental_subset_only) j["conjectured_total"] = set.conjectured_total;
  Json arr = Json::array();
  for (const Invariant& inv : set.invariants) {
    Json item;
    item["name"] = inv.name();
    item["latex_name"] = inv.latex_name();
    item["expr"] = to_string(inv.expr);
    item["latex"] = to_latex(inv.expr);
    arr.push_back(item);
  }
  j["invariants"] = arr;
  return j;
}

Json signature_to_json(const std::vector<SignatureEntry>& sig) {
  Json arr = Json::array();
  for (const SignatureEntry& e : sig) {
    Json item;
    item["family"] = std::string(1, e.family);
    item["i"] = e.i;
    item["j"] = e.j;
    item["value"] = to_string(e.value);
    item["vanishes"] = e.vanish.zero;
    item["probabilistic"] = e.vanish.probabilistic;
    arr.push_back(item);
  }
  return arr;
}

Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open file: " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace vfinv
