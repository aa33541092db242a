#pragma once

#include <string>

#include "nchydro/poly.hpp"

namespace nchydro {

// Expression grammar (whitespace-insensitive):
//   expr   :=  [+|-] term  ((+|-) term)*
//   term   :=  factor (* factor)*
//   factor :=  ( expr ) | number | i | sK [^ INT]
// Numbers are integers, rationals p/q, decimals, or scientific literals; the
// exact mode converts decimal forms to rationals without rounding.
// Generators are written s1..sn (1-based).
template <class S>
NcPoly<S> parse_poly(const std::string& text, int n);

// A field is a parenthesized comma-separated tuple of n expressions.
template <class S>
VectorField<S> parse_field(const std::string& text, int n);

// A scalar is a constant expression (e.g. "1/100", "0.5", "1/2+1/3*i").
template <class S>
S parse_scalar(const std::string& text);

// Canonical scalar text: exact values as p/q (+ r/t*i part when complex),
// float values with 17 significant digits.
std::string format_scalar(const GaussianRational& s);
std::string format_scalar(const Complexd& s);

template <class S>
std::string format_poly(const NcPoly<S>& p);

template <class S>
std::string format_field(const VectorField<S>& v);

// Tensor-square elements print as sums of "L (x) R" elementary tensors.
template <class S>
std::string format_bitensor(const BiTensor<S>& t);

}  // namespace nchydro
