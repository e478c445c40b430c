#pragma once

// Renderers for DecompositionReport.  Both are deterministic: identical
// reports produce byte-identical output.

#include <string>

#include "padicdyn/decomposition.hpp"

namespace padicdyn {

// JSON, 2-space indent, trailing newline.  Schema:
//   { p, N, depth, special_p2?, periodic: [{d, length, centers}],
//     minimal: [{orbit, sphere, count_total, j, radius_exp, disks,
//                odometer, sampled}],
//     basin: {zero_disk, tree_residues} }
// with every residue and odometer term a decimal string; "orbit" is an index
// into "periodic".
std::string report_to_json(const DecompositionReport& report);

// Human-readable text, trailing newline.
std::string report_to_text(const DecompositionReport& report);

}  // namespace padicdyn
