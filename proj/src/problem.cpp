#include "jring/problem.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace jring {

ProblemInput::ProblemInput(FieldSpec field, std::vector<MultiPoly> polys, std::vector<std::string> var_names)
    : field_(field), polys_(std::move(polys)), names_(std::move(var_names)) {
  if (polys_.empty()) throw Error("at least one polynomial is required");
  n_ = polys_.front().nvars();
  if (n_ < 1) throw Error("at least one variable is required");
  if (names_.empty())
    for (int i = 0; i < n_; ++i) names_.push_back("x" + std::to_string(i + 1));
  if (static_cast<int>(names_.size()) != n_) throw Error("variable name count does not match polynomials");
  for (std::size_t j = 0; j < polys_.size(); ++j) {
    const auto& f = polys_[j];
    std::string label = "polynomial " + std::to_string(j + 1);
    if (f.field() != field_) throw Error(label + " is over a different field");
    if (f.nvars() != n_) throw Error(label + " has a different number of variables");
    if (f.is_zero()) throw Error(label + " is zero");
    auto d = f.homogeneous_degree();
    if (!d) throw Error(label + " is not homogeneous");
    if (*d < 1) throw Error(label + " has degree 0");
    degrees_.push_back(*d);
  }
}

bool ProblemInput::degree_product_vanishes() const {
  Scalar prod(field_, 1);
  for (int d : degrees_) prod *= Scalar(field_, static_cast<long>(d));
  return prod.is_zero();
}

std::string ProblemInput::canonical_text() const {
  std::ostringstream os;
  os << "field " << (field_.is_rationals() ? std::string("Q") : "F " + std::to_string(field_.modulus())) << "\n";
  os << "vars";
  for (const auto& v : names_) os << " " << v;
  os << "\n";
  for (const auto& f : polys_) os << "poly " << f.to_string(names_) << "\n";
  return os.str();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ProblemInput::hash() const { return fnv1a_hex(canonical_text()); }

}  // namespace jring
