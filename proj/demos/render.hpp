#pragma once

// Minimal plain-text rendering shared by the demo programs.

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <bops/bops.hpp>

namespace demo {

template <class S>
std::string poly_text(const bops::BivarPoly<S>& p) {
  using T = bops::ScalarTraits<S>;
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first, x-leading terms before y-leading ones
  std::vector<std::pair<bops::Monomial, S>> ordered(p.terms().begin(), p.terms().end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const int da = a.first.i + a.first.j, db = b.first.i + b.first.j;
    if (da != db) return da > db;
    return a.first.j < b.first.j;
  });
  for (const auto& [m, c] : ordered) {
    std::string mono;
    if (m.i > 0) mono += "x" + (m.i > 1 ? "^" + std::to_string(m.i) : "");
    if (m.j > 0) mono += std::string(m.i > 0 ? "*" : "") + "y" +
                         (m.j > 1 ? "^" + std::to_string(m.j) : "");
    std::string cs = T::str(c);
    const bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    if (mono.empty())
      os << cs;
    else if (cs == "1")
      os << mono;
    else
      os << cs << "*" << mono;
    first = false;
  }
  return os.str();
}

template <class S>
void print_vector(const bops::PolyVector<S>& v, const std::string& name) {
  std::cout << name << " (degree " << v.degree() << "):\n";
  for (const auto& p : v.entries()) std::cout << "  " << poly_text(p) << "\n";
}

template <class S>
void print_matrix(const bops::Matrix<S>& m, const std::string& name) {
  std::cout << name << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::cout << (j ? "  " : " ") << bops::ScalarTraits<S>::str(m(i, j));
    std::cout << " ]\n";
  }
}

}  // namespace demo
