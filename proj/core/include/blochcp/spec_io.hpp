#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "blochcp/channels.hpp"
#include "blochcp/diagonal_af.hpp"

namespace blochcp {

enum class SpecKind { diagonal, bloch_matrix, operator_sum };

const char* kind_name(SpecKind kind);

// A channel description loaded from JSON. Exactly one of the three payload
// members is set, matching kind. Schema (unknown fields are rejected):
//
//   {"version": 1, "kind": "diagonal", "n": 1, "d": [d1, ..., d_(4^n-1)]}
//   {"version": 1, "kind": "bloch_matrix_3x3", "matrix": <3x3 rows or flat 9>}
//   {"version": 1, "kind": "operator_sum", "n": 1,
//    "terms": [{"weight": w, "element": [[[re, im], ...], ...]}, ...]}
struct ChannelSpecFile {
  int version = 1;
  SpecKind kind = SpecKind::diagonal;
  int n = 1;
  std::optional<DiagonalSpec> diagonal;
  std::optional<Eigen::Matrix3d> matrix;
  std::optional<SignedOperatorSum> operator_sum;
};

// Raised for unreadable files, syntax errors (message carries
// origin:line:column) and schema violations (missing, unknown or ill-typed
// fields, wrong payload shapes).
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ChannelSpecFile parse_channel_spec(const std::string& text,
                                   const std::string& origin = "<input>");

ChannelSpecFile load_channel_spec(const std::string& path);

}  // namespace blochcp
