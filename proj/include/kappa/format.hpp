#pragma once

#include "kappa/series.hpp"

#include <string>

namespace kappa {

/// Canonical text in the expression syntax: "P0^2*N", "-i*P1 # N",
/// "(1/2+1/3*i)*P0 # 1". Output parses back to the same value.
std::string format_monomial(const LiePresentation& pres, const PbwMonomial& m);
std::string format_element(const AlgebraElement& a);
std::string format_tensor(const TensorElement& t);
std::string format_key(const LiePresentation& pres, const TensorElement::Key& key, int legs);

/// "c0 + L*(c1) + L^2*(c2) + O(L^3)", zero orders omitted.
std::string format_series(const AlgebraSeries& s);
std::string format_series(const TensorSeries& s);

}  // namespace kappa
