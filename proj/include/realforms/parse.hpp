#pragma once

#include <string>

#include "realforms/quad_form.hpp"
#include "realforms/quaternion.hpp"

namespace realforms {

// Textual input format shared with the CLI.
//
//   towers     Q | quadext(<tower>, <expr>) | euclid(<tower>[, <k>]) | laurent(<tower>)
//   elements   expressions over integers, p/q, t, sqrt(...), + - * / ^
//   forms      form(<tower>; e1, e2, ...)
//   algebras   quat(<tower>; a, b)
//   quats      element grammar extended by i, j, k
//   involution gamma | int_gamma(<quat expr>)
//   sherm      sherm(quat(<tower>; a, b); d1, d2, ...)
//
// `t` binds to the outermost Laurent node; sqrt(x) resolves to a tower
// generator when x matches a radicand, else to a representable square root.
// All parsers throw Error("ParseError") on malformed input.

FieldTower parse_field(const std::string& text);
Element parse_element(const std::string& text, const FieldTower& field);
QuadForm parse_form(const std::string& text);
QuaternionAlgebra parse_quaternion_algebra(const std::string& text);
Quat parse_quat(const std::string& text, const QuaternionAlgebra& algebra);
InvolutionSpec parse_involution(const std::string& text, const QuaternionAlgebra& algebra);
SkewHermitianForm parse_sherm(const std::string& text);

}  // namespace realforms
