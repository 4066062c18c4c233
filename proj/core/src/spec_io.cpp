#include "blochcp/spec_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace blochcp {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw SpecParseError(origin + ": " + what);
}

// nlohmann reports a 1-based byte offset; turn it into line:column.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t pos = byte > 0 ? byte - 1 : 0;
  if (pos > text.size()) pos = text.size();
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return std::to_string(line) + ":" + std::to_string(pos - line_start + 1);
}

void reject_unknown_keys(const json& obj, const std::vector<const char*>& keys,
                         const std::string& origin, const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : keys) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(origin, "unknown field \"" + item.key() + "\" in " + where);
  }
}

double require_number(const json& value, const std::string& origin,
                      const std::string& where) {
  if (!value.is_number()) fail(origin, where + " must be a number");
  return value.get<double>();
}

int require_int(const json& obj, const char* key, const std::string& origin) {
  if (!obj.contains(key)) {
    fail(origin, std::string("missing field \"") + key + "\"");
  }
  if (!obj[key].is_number_integer()) {
    fail(origin, std::string("field \"") + key + "\" must be an integer");
  }
  return obj[key].get<int>();
}

Eigen::Matrix3d parse_matrix(const json& value, const std::string& origin) {
  Eigen::Matrix3d m;
  if (!value.is_array()) fail(origin, "\"matrix\" must be an array");
  if (value.size() == 9) {
    for (int k = 0; k < 9; ++k) {
      m(k / 3, k % 3) =
          require_number(value[k], origin, "\"matrix\" entry " + std::to_string(k));
    }
    return m;
  }
  if (value.size() == 3) {
    for (int i = 0; i < 3; ++i) {
      const json& row = value[i];
      if (!row.is_array() || row.size() != 3) {
        fail(origin, "\"matrix\" row " + std::to_string(i) +
                         " must hold 3 numbers");
      }
      for (int j = 0; j < 3; ++j) {
        m(i, j) = require_number(row[j], origin,
                                 "\"matrix\" entry (" + std::to_string(i) +
                                     "," + std::to_string(j) + ")");
      }
    }
    return m;
  }
  fail(origin, "\"matrix\" must hold 3 rows of 3 numbers or 9 flat numbers");
}

ComplexMatrix parse_element(const json& value, int term_index,
                            const std::string& origin) {
  const std::string where =
      "term " + std::to_string(term_index) + " \"element\"";
  if (!value.is_array() || value.empty()) {
    fail(origin, where + " must be a nonempty array of rows");
  }
  const std::size_t rows = value.size();
  ComplexMatrix m(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = value[i];
    if (!row.is_array() || row.size() != rows) {
      fail(origin, where + " must be square; row " + std::to_string(i) +
                       " has the wrong length");
    }
    for (std::size_t j = 0; j < rows; ++j) {
      const json& entry = row[j];
      if (!entry.is_array() || entry.size() != 2) {
        fail(origin, where + " entries must be [re, im] pairs");
      }
      m(i, j) = Complex(require_number(entry[0], origin, where + " real part"),
                        require_number(entry[1], origin, where + " imag part"));
    }
  }
  return m;
}

}  // namespace

const char* kind_name(SpecKind kind) {
  switch (kind) {
    case SpecKind::diagonal:
      return "diagonal";
    case SpecKind::bloch_matrix:
      return "bloch_matrix_3x3";
    case SpecKind::operator_sum:
      return "operator_sum";
  }
  return "unknown";
}

ChannelSpecFile parse_channel_spec(const std::string& text,
                                   const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    // Strip nlohmann's "[json.exception.parse_error.N]" prefix.
    const auto bracket = what.find("] ");
    if (bracket != std::string::npos) what = what.substr(bracket + 2);
    throw SpecParseError(origin + ":" + locate(text, e.byte) + ": " + what);
  }
  if (!root.is_object()) fail(origin, "top level must be a JSON object");

  ChannelSpecFile out;
  out.version = require_int(root, "version", origin);
  if (out.version != 1) {
    fail(origin, "unsupported version " + std::to_string(out.version));
  }
  if (!root.contains("kind") || !root["kind"].is_string()) {
    fail(origin, "missing or non-string field \"kind\"");
  }
  const std::string kind = root["kind"].get<std::string>();

  try {
    if (kind == "diagonal") {
      out.kind = SpecKind::diagonal;
      reject_unknown_keys(root, {"version", "kind", "n", "d"}, origin,
                          "a diagonal spec");
      out.n = require_int(root, "n", origin);
      if (!root.contains("d") || !root["d"].is_array()) {
        fail(origin, "missing or non-array field \"d\"");
      }
      const json& d = root["d"];
      RealVector scales(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) {
        scales[static_cast<Eigen::Index>(i)] =
            require_number(d[i], origin, "\"d\" entry " + std::to_string(i));
      }
      out.diagonal = DiagonalSpec(out.n, std::move(scales));
    } else if (kind == "bloch_matrix_3x3") {
      out.kind = SpecKind::bloch_matrix;
      reject_unknown_keys(root, {"version", "kind", "n", "matrix"}, origin,
                          "a bloch_matrix_3x3 spec");
      out.n = root.contains("n") ? require_int(root, "n", origin) : 1;
      if (out.n != 1) {
        fail(origin, "\"bloch_matrix_3x3\" specs are single qubit");
      }
      if (!root.contains("matrix")) fail(origin, "missing field \"matrix\"");
      out.matrix = parse_matrix(root["matrix"], origin);
    } else if (kind == "operator_sum") {
      out.kind = SpecKind::operator_sum;
      reject_unknown_keys(root, {"version", "kind", "n", "terms"}, origin,
                          "an operator_sum spec");
      out.n = require_int(root, "n", origin);
      if (!root.contains("terms") || !root["terms"].is_array()) {
        fail(origin, "missing or non-array field \"terms\"");
      }
      std::vector<SignedOperatorSum::Term> terms;
      int index = 0;
      for (const json& term : root["terms"]) {
        if (!term.is_object()) {
          fail(origin, "term " + std::to_string(index) + " must be an object");
        }
        reject_unknown_keys(term, {"weight", "element"}, origin,
                            "term " + std::to_string(index));
        if (!term.contains("weight")) {
          fail(origin, "term " + std::to_string(index) + " misses \"weight\"");
        }
        if (!term.contains("element")) {
          fail(origin, "term " + std::to_string(index) + " misses \"element\"");
        }
        const double weight =
            require_number(term["weight"], origin,
                           "term " + std::to_string(index) + " \"weight\"");
        terms.push_back({weight, parse_element(term["element"], index, origin)});
        ++index;
      }
      out.operator_sum = SignedOperatorSum(out.n, std::move(terms));
    } else {
      fail(origin, "unknown kind \"" + kind + "\"");
    }
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail(origin, e.what());
  }
  return out;
}

ChannelSpecFile load_channel_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_channel_spec(buffer.str(), path);
}

}  // namespace blochcp
