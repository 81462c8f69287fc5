#include "sglab/json_io.hpp"

#include <fstream>

namespace sglab {

nlohmann::json operator_to_json(const DenseOperator& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

DenseOperator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
    throw ShapeError("operator_from_json", "json", "expected {dim, re, im}");
  const auto dim = j.at("dim").get<long>();
  if (dim < 1) throw ShapeError("operator_from_json", "dim", "dim must be >= 1");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  const auto count = static_cast<std::size_t>(dim * dim);
  if (re.size() != count || (has_im && j.at("im").size() != count))
    throw ShapeError("operator_from_json", "re/im", "entry count must equal dim^2");

  DenseOperator m(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long k = 0; k < dim; ++k) {
      const auto idx = static_cast<std::size_t>(i * dim + k);
      m(i, k) = Complex(re.at(idx).get<double>(),
                        has_im ? j.at("im").at(idx).get<double>() : 0.0);
    }
  require_operator(m, "operator_from_json");
  return m;
}

DenseOperator load_operator(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("load_operator", path.string(), "cannot open matrix fixture");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ShapeError("load_operator", path.string(), e.what());
  }
  return operator_from_json(j);
}

}  // namespace sglab
