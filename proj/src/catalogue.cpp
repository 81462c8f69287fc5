#include "sglab/catalogue.hpp"

#include <charconv>
#include <cmath>

#include "sglab/csv.hpp"
#include "sglab/error.hpp"

namespace sglab {

double CatalogueFunction::operator()(double t) const {
  switch (kind) {
    case Kind::Const: return c;
    case Kind::Linear: return c * t;
    case Kind::Sin: return c * std::sin(t);
    case Kind::Poly: return c * t * t;
  }
  return 0.0;
}

double CatalogueFunction::exact_integral(double a, double b) const {
  switch (kind) {
    case Kind::Const: return c * (b - a);
    case Kind::Linear: return 0.5 * c * (b * b - a * a);
    case Kind::Sin: return c * (std::cos(a) - std::cos(b));
    case Kind::Poly: return c * (b * b * b - a * a * a) / 3.0;
  }
  return 0.0;
}

std::string CatalogueFunction::label() const {
  const char* name = "const";
  switch (kind) {
    case Kind::Const: name = "const"; break;
    case Kind::Linear: name = "linear"; break;
    case Kind::Sin: name = "sin"; break;
    case Kind::Poly: name = "poly"; break;
  }
  return std::string(name) + ":" + format_double(c);
}

CatalogueFunction CatalogueFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ShapeError("CatalogueFunction::parse", spec, "expected kind:c");
  const auto name = spec.substr(0, colon);
  const auto number = spec.substr(colon + 1);

  CatalogueFunction f;
  if (name == "const") f.kind = Kind::Const;
  else if (name == "linear") f.kind = Kind::Linear;
  else if (name == "sin") f.kind = Kind::Sin;
  else if (name == "poly") f.kind = Kind::Poly;
  else throw ShapeError("CatalogueFunction::parse", spec, "unknown catalogue kind");

  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), f.c);
  if (ec != std::errc() || ptr != number.data() + number.size() || !std::isfinite(f.c))
    throw ShapeError("CatalogueFunction::parse", spec, "coefficient is not a finite number");
  return f;
}

}  // namespace sglab
