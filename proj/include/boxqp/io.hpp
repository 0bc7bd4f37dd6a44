#pragma once

// Instance files and solution reports.
//
// An instance file is a JSON object
//   {"n": 2, "Q": [[0, 1], [0, 0]], "q": [0, 0], "lower": [-1, -1], "upper": [1, 1]}
// with an optional "mode": "exact" | "float". Entries are JSON numbers or
// rational strings "p/d". In exact mode decimal literals are taken at their
// written value ("0.1" is 1/10), so the parser keeps the literal text.

#include <boxqp/factorize.hpp>
#include <boxqp/qp_model.hpp>
#include <boxqp/solver.hpp>

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

namespace boxqp {

using Json = nlohmann::json;

enum class Mode { Auto, Exact, Float };

using AnyInstance = std::variant<QpInstance<Rational>, QpInstance<double>>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr const char* kDecimalKey = "$decimal";

/// DOM builder that records float literals as {"$decimal": "<text>"}.
class LiteralSax : public nlohmann::detail::json_sax_dom_parser<Json> {
  using Base = nlohmann::detail::json_sax_dom_parser<Json>;

 public:
  using Base::Base;

  bool number_float(number_float_t /*value*/, const string_t& literal) {
    Base::start_object(1);
    string_t key = kDecimalKey;
    Base::key(key);
    string_t text = literal;
    Base::string(text);
    return Base::end_object();
  }
};

inline Json parse_literal_json(const std::string& text) {
  Json root;
  LiteralSax sax(root, true);
  try {
    Json::sax_parse(text, &sax);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return root;
}

template <class T>
T number_from_json(const Json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) {
      if constexpr (ScalarTraits<T>::exact) {
        return v.is_number_unsigned() ? Rational(std::to_string(v.get<std::uint64_t>()))
                                      : Rational(std::to_string(v.get<std::int64_t>()));
      } else {
        return v.is_number_unsigned() ? static_cast<double>(v.get<std::uint64_t>())
                                      : static_cast<double>(v.get<std::int64_t>());
      }
    }
    if (v.is_object() && v.size() == 1 && v.contains(kDecimalKey)) {
      const std::string lit = v.at(kDecimalKey).get<std::string>();
      if constexpr (ScalarTraits<T>::exact) {
        return parse_rational(lit);
      } else {
        return std::stod(lit);
      }
    }
    if (v.is_string()) {
      if constexpr (ScalarTraits<T>::exact) {
        return parse_rational(v.get<std::string>());
      } else {
        throw ParseError(where + ": rational string \"" + v.get<std::string>() + "\" requires exact mode");
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a number");
}

template <class T>
Vector<T> vector_from_json(const Json& v, const std::string& name) {
  if (!v.is_array()) throw ParseError(name + ": expected an array");
  Vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_from_json<T>(v[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T>
QpInstance<T> instance_from_json(const Json& doc) {
  for (const char* field : {"n", "Q", "lower", "upper"})
    if (!doc.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0)
    throw ParseError("\"n\" must be a positive integer");
  QpInstance<T> inst;
  inst.n = doc["n"].get<std::size_t>();
  const Json& q = doc["Q"];
  if (!q.is_array()) throw ParseError("Q: expected an array of rows");
  const std::size_t cols = q.empty() || !q[0].is_array() ? 0 : q[0].size();
  inst.Q = Matrix<T>(q.size(), cols);
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto row = vector_from_json<T>(q[i], "Q[" + std::to_string(i) + "]");
    if (row.size() != cols)
      throw InstanceError("dimension mismatch: row " + std::to_string(i) + " of Q has " + std::to_string(row.size()) +
                          " entries");
    for (std::size_t j = 0; j < cols; ++j) inst.Q(i, j) = row[j];
  }
  inst.q = doc.contains("q") ? vector_from_json<T>(doc["q"], "q") : Vector<T>(inst.n, T(0));
  inst.lower = vector_from_json<T>(doc["lower"], "lower");
  inst.upper = vector_from_json<T>(doc["upper"], "upper");
  return validate(std::move(inst));
}

inline Json scalar_to_json(const Rational& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return Json(v.get_num().get_si());
  return Json(v.get_str());
}
inline Json scalar_to_json(double v) { return Json(v); }

}  // namespace detail

/// Parses an instance document. `mode` overrides the file's own "mode" field;
/// with neither, exact arithmetic is used.
inline AnyInstance parse_instance(const std::string& text, Mode mode = Mode::Auto) {
  const Json doc = detail::parse_literal_json(text);
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  if (mode == Mode::Auto) {
    mode = Mode::Exact;
    if (doc.contains("mode")) {
      const auto& m = doc["mode"];
      if (m == "float") mode = Mode::Float;
      else if (m != "exact") throw ParseError("\"mode\" must be \"exact\" or \"float\"");
    }
  }
  if (mode == Mode::Float) return detail::instance_from_json<double>(doc);
  return detail::instance_from_json<Rational>(doc);
}

inline AnyInstance read_instance_file(const std::string& path, Mode mode = Mode::Auto) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), mode);
}

template <class T>
Json instance_to_json(const QpInstance<T>& inst) {
  Json doc;
  doc["mode"] = ScalarTraits<T>::exact ? "exact" : "float";
  doc["n"] = inst.n;
  Json rows = Json::array();
  for (std::size_t i = 0; i < inst.Q.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < inst.Q.cols(); ++j) row.push_back(detail::scalar_to_json(inst.Q(i, j)));
    rows.push_back(std::move(row));
  }
  doc["Q"] = std::move(rows);
  auto vec = [](const Vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(detail::scalar_to_json(x));
    return a;
  };
  doc["q"] = vec(inst.q);
  doc["lower"] = vec(inst.lower);
  doc["upper"] = vec(inst.upper);
  return doc;
}

template <class T>
std::string serialize_instance(const QpInstance<T>& inst) {
  return instance_to_json(inst).dump(1) + "\n";
}

/// Exact values as strings ("p/d" or integers), floats as JSON numbers.
template <class T>
Json report_value(const T& v) {
  if constexpr (ScalarTraits<T>::exact) return Json(ScalarTraits<T>::to_string(v));
  else return Json(v);
}

template <class T>
Json solution_to_json(const Solution<T>& sol) {
  Json doc;
  doc["mode"] = ScalarTraits<T>::exact ? "exact" : "float";
  doc["f_star"] = report_value(sol.f_star);
  Json x = Json::array();
  for (const auto& v : sol.x_star) x.push_back(report_value(v));
  doc["x_star"] = std::move(x);
  doc["stats"] = {{"faces_enumerated", sol.stats.faces_enumerated},
                  {"lps_solved", sol.stats.lps_solved},
                  {"lps_feasible", sol.stats.lps_feasible},
                  {"enumeration_lps", sol.stats.enumeration_lps},
                  {"rank_used", sol.stats.rank_used},
                  {"homogenized", sol.stats.homogenized},
                  {"minimal_rank_applied", sol.stats.minimal_rank_applied},
                  {"wall_seconds", sol.stats.wall_seconds}};
  return doc;
}

template <class T>
std::string format_solution_human(const Solution<T>& sol) {
  std::ostringstream out;
  out << "f* = " << ScalarTraits<T>::to_string(sol.f_star) << "\n";
  out << "x* = (";
  for (std::size_t i = 0; i < sol.x_star.size(); ++i) out << (i ? ", " : "") << ScalarTraits<T>::to_string(sol.x_star[i]);
  out << ")\n";
  out << "rank used: " << sol.stats.rank_used << (sol.stats.homogenized ? " (after hiding the linear term)" : "")
      << "\n";
  out << "faces enumerated: " << sol.stats.faces_enumerated << "\n";
  out << "LPs solved: " << sol.stats.lps_solved << " (feasible: " << sol.stats.lps_feasible
      << ", enumeration: " << sol.stats.enumeration_lps << ")\n";
  out << "wall time: " << sol.stats.wall_seconds << " s\n";
  return out.str();
}

}  // namespace boxqp
