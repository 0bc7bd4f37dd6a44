#pragma once

// Command implementations for the boxqp tool. Each command writes its report
// to `out`, diagnostics to `err`, and returns the process exit code, so the
// tests can drive them without spawning processes.

#include <boxqp/io.hpp>
#include <boxqp/oracle.hpp>
#include <boxqp/solver.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace boxqp::cli {

enum ExitCode : int {
  kOk = 0,
  kDisagree = 1,
  kInputError = 2,
  kCapExceeded = 3,
};

struct Flags {
  Mode mode = Mode::Auto;
  double tol = 1e-6;  // float-mode agreement tolerance for compare
  bool min_rank = false;
  bool parallel = false;
  bool structured = false;
  std::size_t cap = kDefaultOracleCap;
};

struct RandomCorpus {
  std::size_t n = 4;
  std::size_t rank = 2;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  bool zero_linear = false;
  bool degenerate = false;
};

/// The solver under test in `compare`; replaceable so a test can feed it a
/// deliberately wrong backend.
struct Backend {
  std::function<Solution<Rational>(const QpInstance<Rational>&, const SolverOptions&)> exact =
      [](const QpInstance<Rational>& i, const SolverOptions& o) { return solve(i, o); };
  std::function<Solution<double>(const QpInstance<double>&, const SolverOptions&)> floating =
      [](const QpInstance<double>& i, const SolverOptions& o) { return solve(i, o); };
};

namespace detail {

inline SolverOptions solver_options(const Flags& f) {
  SolverOptions o;
  o.use_minimal_rank = f.min_rank;
  o.parallel_faces = f.parallel;
  return o;
}

template <class T>
void report(std::ostream& out, const Solution<T>& sol, const Flags& f, const char* source) {
  if (f.structured) {
    Json doc = solution_to_json(sol);
    doc["source"] = source;
    out << doc.dump() << "\n";
  } else {
    out << format_solution_human(sol);
  }
}

template <class T>
auto call_backend(const Backend& b, const QpInstance<T>& inst, const SolverOptions& o) {
  if constexpr (ScalarTraits<T>::exact) return b.exact(inst, o);
  else return b.floating(inst, o);
}

template <class T>
bool agree(const T& a, const T& b, double tol) {
  if constexpr (ScalarTraits<T>::exact) return a == b;
  else return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Runs fn with the parsed instance, mapping input errors to exit code 2.
template <class Fn>
int with_instance(const std::string& path, const Flags& f, std::ostream& err, Fn&& fn) {
  AnyInstance inst;
  try {
    inst = read_instance_file(path, f.mode);
  } catch (const std::exception& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kInputError;
  }
  return std::visit(fn, inst);
}

template <class T>
struct Comparison {
  bool agreed;
  Solution<T> solver;
  Solution<T> oracle;
};

template <class T>
Comparison<T> compare_one(const QpInstance<T>& inst, const Flags& f, const Backend& b) {
  auto s = call_backend(b, inst, solver_options(f));
  auto o = brute_force_solve(inst, f.cap);
  const bool ok = agree(s.f_star, o.f_star, f.tol);
  return {ok, std::move(s), std::move(o)};
}

template <class T>
std::string vector_text(const Vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + ScalarTraits<T>::to_string(v[i]);
  return s + ")";
}

template <class T>
void print_mismatch(std::ostream& out, const Comparison<T>& c, const std::string& label) {
  out << "DISAGREE" << (label.empty() ? "" : " " + label) << "\n"
      << "  solver: f*=" << ScalarTraits<T>::to_string(c.solver.f_star) << " x*=" << vector_text(c.solver.x_star) << "\n"
      << "  oracle: f*=" << ScalarTraits<T>::to_string(c.oracle.f_star) << " x*=" << vector_text(c.oracle.x_star)
      << "\n";
}

template <class T>
int count_faces_of(const Matrix<T>& G, const Flags& f, std::ostream& out) {
  std::vector<Cell<T>> cells;
  if (G.rows() > 0) cells = enumerate_covectors(G);
  else cells.push_back({SignVector(G.cols()), {}});  // zero matrix: only the all-zero covector
  std::map<std::size_t, std::size_t> by_dim;
  for (const auto& c : cells) ++by_dim[face_dimension(G, c.sigma)];
  if (f.structured) {
    Json doc;
    doc["total"] = cells.size();
    Json dims = Json::object();
    for (auto [d, cnt] : by_dim) dims[std::to_string(d)] = cnt;
    doc["by_zero_set_dimension"] = std::move(dims);
    out << doc.dump() << "\n";
  } else {
    for (auto [d, cnt] : by_dim) out << "zero-set dimension " << d << ": " << cnt << "\n";
    out << "total: " << cells.size() << "\n";
  }
  return kOk;
}

template <class T>
Matrix<T> parse_matrix_rows(const std::string& rows_text) {
  std::vector<std::vector<T>> rows;
  std::stringstream rs(rows_text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<T> vals;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      const Rational v = parse_rational(cell);
      if constexpr (ScalarTraits<T>::exact) vals.push_back(v);
      else vals.push_back(v.get_d());
    }
    if (!rows.empty() && vals.size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
    rows.push_back(std::move(vals));
  }
  if (rows.empty() || rows.front().empty()) throw ParseError("empty matrix");
  Matrix<T> m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace detail

inline int cmd_solve(const std::string& path, const Flags& f, std::ostream& out, std::ostream& err,
                     const Backend& backend = {}) {
  return detail::with_instance(path, f, err, [&](const auto& inst) {
    try {
      detail::report(out, detail::call_backend(backend, inst, detail::solver_options(f)), f, "solver");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return int(kInputError);
    }
    return int(kOk);
  });
}

inline int cmd_oracle(const std::string& path, const Flags& f, std::ostream& out, std::ostream& err) {
  return detail::with_instance(path, f, err, [&](const auto& inst) {
    try {
      detail::report(out, brute_force_solve(inst, f.cap), f, "oracle");
    } catch (const OracleCapError& e) {
      err << "error: " << e.what() << "\n";
      return int(kCapExceeded);
    }
    return int(kOk);
  });
}

inline int cmd_compare(const std::string& path, const Flags& f, std::ostream& out, std::ostream& err,
                       const Backend& backend = {}) {
  return detail::with_instance(path, f, err, [&](const auto& inst) {
    if (inst.n > f.cap) {
      err << "error: oracle: n = " << inst.n << " exceeds cap " << f.cap << "\n";
      return int(kCapExceeded);
    }
    const auto c = detail::compare_one(inst, f, backend);
    using T = std::decay_t<decltype(c.solver.f_star)>;
    if (f.structured) {
      out << Json{{"agree", c.agreed}, {"solver", solution_to_json(c.solver)}, {"oracle", solution_to_json(c.oracle)}}
                 .dump()
          << "\n";
    } else if (c.agreed) {
      out << "AGREE f*=" << ScalarTraits<T>::to_string(c.solver.f_star) << "\n";
    } else {
      detail::print_mismatch(out, c, "");
    }
    return int(c.agreed ? kOk : kDisagree);
  });
}

/// Compare on a seeded corpus; instance i uses seed `corpus.seed + i`.
inline int cmd_compare_random(const RandomCorpus& corpus, const Flags& f, std::ostream& out, std::ostream& err,
                              const Backend& backend = {}) {
  if (corpus.n > f.cap) {
    err << "error: oracle: n = " << corpus.n << " exceeds cap " << f.cap << "\n";
    return kCapExceeded;
  }
  std::size_t agreements = 0;
  Json mismatches = Json::array();
  for (std::size_t i = 0; i < corpus.count; ++i) {
    GeneratorOptions g;
    g.n = corpus.n;
    g.rank = corpus.rank;
    g.seed = corpus.seed + i;
    g.zero_linear = corpus.zero_linear;
    g.force_degenerate = corpus.degenerate;
    QpInstance<Rational> inst;
    try {
      inst = generate_instance(g);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
    auto run = [&](const auto& typed) {
      const auto c = detail::compare_one(typed, f, backend);
      if (c.agreed) {
        ++agreements;
      } else {
        mismatches.push_back(g.seed);
        if (!f.structured) detail::print_mismatch(out, c, "seed=" + std::to_string(g.seed));
      }
    };
    if (f.mode == Mode::Float) run(instance_cast<double>(inst));
    else run(inst);
  }
  if (f.structured) {
    out << Json{{"count", corpus.count}, {"agreements", agreements}, {"mismatched_seeds", mismatches}}.dump() << "\n";
  } else {
    out << agreements << "/" << corpus.count << " agreements\n";
  }
  return agreements == corpus.count ? kOk : kDisagree;
}

/// Faces of the arrangement the solver would enumerate for this instance.
inline int cmd_count_faces(const std::string& path, const Flags& f, std::ostream& out, std::ostream& err) {
  return detail::with_instance(path, f, err, [&](const auto& inst) {
    const auto h = hide_linear_term(inst);
    return detail::count_faces_of(rank_factorize(h.inner.Q).G, f, out);
  });
}

/// G given row by row: rows separated by ';', entries by ','.
inline int cmd_count_faces_matrix(const std::string& rows_text, const Flags& f, std::ostream& out, std::ostream& err) {
  try {
    if (f.mode == Mode::Float) return detail::count_faces_of(detail::parse_matrix_rows<double>(rows_text), f, out);
    return detail::count_faces_of(detail::parse_matrix_rows<Rational>(rows_text), f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

/// A 2 x n matrix with pairwise non-parallel columns (1, j).
inline Matrix<Rational> generic_rank_one_g(std::size_t n) {
  Matrix<Rational> G(2, n);
  for (std::size_t j = 0; j < n; ++j) {
    G(0, j) = 1;
    G(1, j) = static_cast<long>(j);
  }
  return G;
}

inline int cmd_count_faces_generic(std::size_t n, const Flags& f, std::ostream& out, std::ostream& err) {
  if (n == 0) {
    err << "error: n must be positive\n";
    return kInputError;
  }
  return detail::count_faces_of(generic_rank_one_g(n), f, out);
}

inline int cmd_gen(const GeneratorOptions& g, const std::string& out_path, std::ostream& out, std::ostream& err) {
  QpInstance<Rational> inst;
  try {
    inst = generate_instance(g);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const std::string text = serialize_instance(inst);
  if (out_path.empty() || out_path == "-") {
    out << text;
    return kOk;
  }
  std::ofstream file(out_path);
  if (!(file << text)) {
    err << "error: cannot write " << out_path << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace boxqp::cli
