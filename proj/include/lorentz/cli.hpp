#pragma once

// Command-line front end. Kept in a header so that tests can drive run()
// in-process with string streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lorentz/lorentz.hpp"

namespace lorentz::cli {

using nlohmann::json;

/// Bad input file, bad vector, unknown structure: reported with exit code 1.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum Exit : int { kDefinite = 0, kUsage = 1, kIndefinite = 2 };

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view tok) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+')
    tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
    throw InputError("not a number: '" + std::string(tok) + "'");
  if (!std::isfinite(v))
    throw InputError("non-finite value: '" + std::string(tok) + "'");
  return v;
}

inline std::vector<double> parse_row(std::string_view line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    row.push_back(parse_double(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return row;
}

inline Matrix from_rows(const std::vector<std::vector<double>> &rows) {
  if (rows.empty())
    throw InputError("empty matrix");
  const std::size_t cols = rows.front().size();
  for (const auto &r : rows)
    if (r.size() != cols)
      throw InputError("ragged matrix: rows have different lengths");
  Matrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return A;
}

inline Matrix parse_json_matrix(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw InputError("JSON matrix needs a \"rows\" array");
  std::vector<std::vector<double>> rows;
  for (const auto &r : doc["rows"]) {
    if (!r.is_array())
      throw InputError("JSON rows must be arrays of numbers");
    std::vector<double> row;
    for (const auto &v : r) {
      if (!v.is_number())
        throw InputError("JSON rows must be arrays of numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  Matrix A = from_rows(rows);
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != A.rows())
      throw InputError("JSON field \"n\" does not match the number of rows");
  }
  return A;
}

inline Matrix parse_csv_matrix(const std::string &text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty())
      continue;
    rows.push_back(parse_row(t));
  }
  return from_rows(rows);
}

} // namespace detail

/// CSV (no header) or JSON {"n": int, "rows": [[...]]}, told apart by the
/// first non-blank character.
inline Matrix parse_matrix(const std::string &text) {
  const std::string_view t = detail::trim(text);
  if (!t.empty() && t.front() == '{')
    return detail::parse_json_matrix(text);
  return detail::parse_csv_matrix(text);
}

inline Matrix load_matrix(const std::string &path, std::istream &stdin_stream) {
  std::ostringstream buf;
  if (path == "-") {
    buf << stdin_stream.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f)
      throw InputError("cannot read file: " + path);
    buf << f.rdbuf();
  }
  return parse_matrix(buf.str());
}

inline Vector parse_vector(std::string_view text) {
  const std::vector<double> v = detail::parse_row(detail::trim(text));
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline json to_json(const Vector &v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

inline json to_json(const Matrix &A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    rows.push_back(to_json(Vector(A.row(i).transpose())));
  return rows;
}

inline json to_json(const Tolerances &tol) { return {{"mem", tol.mem}, {"strict", tol.strict}, {"eq", tol.eq}}; }

inline json certificate_json(const Certificate &c, Eigen::Index n, const Tolerances &tol, std::uint64_t seed) {
  json j;
  j["verdict"] = std::string(to_string(c.verdict));
  j["method"] = c.method;
  j["primal"] = c.primal ? to_json(*c.primal) : json(nullptr);
  j["dual"] = c.dual ? to_json(*c.dual) : json(nullptr);
  j["margin"] = c.margin;
  j["n"] = n;
  j["tolerances"] = to_json(tol);
  j["seed"] = seed;
  return j;
}

namespace detail {

inline void print_vector(std::ostream &out, const Vector &v) {
  out << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << (i ? ", " : "") << v(i);
  out << ')';
}

inline void print_certificate(std::ostream &out, const Certificate &c) {
  out << "verdict: " << to_string(c.verdict) << "\nmethod:  " << c.method << '\n';
  if (c.primal) {
    out << "primal:  ";
    print_vector(out, *c.primal);
    out << '\n';
  }
  if (c.dual) {
    out << "dual:    ";
    print_vector(out, *c.dual);
    out << '\n';
  }
  out << "margin:  " << c.margin << '\n';
}

inline int exit_for(const Certificate &c) { return c.definite() ? kDefinite : kIndefinite; }

inline void require_square(const Matrix &A) {
  if (A.rows() != A.cols())
    throw InputError("matrix must be square, got " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  if (A.rows() < 2)
    throw InputError("matrix must be at least 2x2");
}

/// Screens first, then the full search.
inline Certificate check(const Matrix &A, const DecideOptions &opts) {
  Certificate c = structural_screen(A, opts.tol);
  if (c.definite())
    return c;
  return decide(A, opts);
}

struct Classified {
  std::string structure;
  Certificate certificate;
};

inline Classified classify(const Matrix &A, const DecideOptions &opts) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double eps = opts.tol.eq * scale;
  Classified out;
  Certificate c;
  if (lorentz::detail::is_diagonal(A, eps)) {
    out.structure = "diagonal";
    c = diagonal_certificate(A, opts.tol);
  } else if (lorentz::detail::is_orthogonal(A, opts.tol.eq * static_cast<double>(A.rows()))) {
    out.structure = "orthogonal";
    c = orthogonal_certificate(A, opts);
  } else if (lorentz::detail::is_lower_triangular(A, eps)) {
    out.structure = "lower_triangular";
    c = lower_triangular_certificate(A, opts.tol);
  } else {
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector s = svd.singularValues();
    if (s(0) > 0.0 && s(1) <= opts.tol.eq * s(0)) {
      out.structure = "rank_one";
      Vector u = s(0) * svd.matrixU().col(0);
      Vector v = svd.matrixV().col(0);
      if (u(u.size() - 1) < 0.0) {
        u = -u;
        v = -v;
      }
      c = rank_one_certificate(u, v, opts);
    } else {
      out.structure = "general";
    }
  }
  out.certificate = c.definite() ? c : check(A, opts);
  return out;
}

} // namespace detail

/// Entry point shared by the lsemipos binary and the tests.
inline int run(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"Lorentz-cone semipositivity toolkit", "lsemipos"};
  app.require_subcommand(1);
  app.fallthrough();

  Tolerances tol;
  DecideOptions opts;
  bool as_json = false;
  bool as_text = false;
  std::string path;
  std::string vector_text;

  app.add_option("--tol-mem", tol.mem, "membership tolerance (relative)");
  app.add_option("--tol-strict", tol.strict, "interior tolerance (relative)");
  app.add_option("--seed", opts.seed, "seed for randomized search");
  app.add_option("--max-iters", opts.max_iters, "iterations per ascent start");
  auto *json_flag = app.add_flag("--json", as_json, "machine-readable output");
  auto *text_flag = app.add_flag("--text", as_text, "human-readable output (default)");
  json_flag->excludes(text_flag);

  auto add_file = [&](CLI::App *sub) { sub->add_option("file", path, "matrix file (CSV or JSON), - for stdin")->required(); };

  auto *check_cmd = app.add_subcommand("check", "decide semipositivity with a certificate");
  add_file(check_cmd);
  bool screens_only = false;
  check_cmd->add_flag("--screens-only", screens_only, "run the structural screens only, no search");
  auto *membership_cmd = app.add_subcommand("membership", "classify v and A v against the Lorentz cone");
  add_file(membership_cmd);
  membership_cmd->add_option("--vector", vector_text, "comma-separated vector")->required();
  auto *classify_cmd = app.add_subcommand("classify", "detect structure and run the matching test");
  add_file(classify_cmd);
  auto *cone_cmd = app.add_subcommand("cone", "ellipsoidal representation and extremals");
  cone_cmd->require_subcommand(1);
  auto *rep_cmd = cone_cmd->add_subcommand("rep", "representation of X L^n_+");
  add_file(rep_cmd);
  auto *extremal_cmd = cone_cmd->add_subcommand("extremal", "map an extremal of L^n_+ through A^{-1}");
  add_file(extremal_cmd);
  extremal_cmd->add_option("--vector", vector_text, "comma-separated boundary vector")->required();
  auto *monotone_cmd = app.add_subcommand("monotone", "monotonicity and invariance");
  add_file(monotone_cmd);
  auto *oracle_cmd = app.add_subcommand("oracle", "brute-force reference decision (n <= 4)");
  add_file(oracle_cmd);
  oracle::SamplerConfig sampler;
  oracle_cmd->add_option("--count", sampler.count, "random refinement steps");
  oracle_cmd->add_option("--resolution", sampler.resolution, "grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    opts.tol = tol;
    opts.validate();
    const Matrix A = load_matrix(path, in);
    detail::require_square(A);
    const Eigen::Index n = A.rows();

    auto emit_certificate = [&](const Certificate &c, json extra = json::object()) {
      if (as_json) {
        json j = certificate_json(c, n, tol, opts.seed);
        for (auto it = extra.begin(); it != extra.end(); ++it)
          j[it.key()] = it.value();
        out << j.dump() << '\n';
      } else {
        for (auto it = extra.begin(); it != extra.end(); ++it)
          out << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
              << '\n';
        detail::print_certificate(out, c);
      }
      return detail::exit_for(c);
    };

    if (check_cmd->parsed())
      return emit_certificate(screens_only ? structural_screen(A, tol) : detail::check(A, opts));

    if (classify_cmd->parsed()) {
      const detail::Classified r = detail::classify(A, opts);
      return emit_certificate(r.certificate, {{"structure", r.structure}});
    }

    if (oracle_cmd->parsed()) {
      sampler.seed = opts.seed;
      return emit_certificate(oracle::brute_force_decide(A, sampler, tol));
    }

    if (membership_cmd->parsed()) {
      const Vector v = parse_vector(vector_text);
      if (v.size() != n)
        throw DimensionError("vector length " + std::to_string(v.size()) + " does not match n = " +
                             std::to_string(n));
      const Membership m = membership(v, tol);
      const Membership pm = preimage_membership(A, LorentzCone(n), v, tol);
      if (as_json) {
        out << json{{"membership", std::string(to_string(m.cls))},
                    {"margin", m.margin},
                    {"image_membership", std::string(to_string(pm.cls))},
                    {"image_margin", pm.margin},
                    {"n", n},
                    {"tolerances", to_json(tol)}}
                   .dump()
            << '\n';
      } else {
        out << "x:  " << to_string(m.cls) << " (margin " << m.margin << ")\n"
            << "Ax: " << to_string(pm.cls) << " (margin " << pm.margin << ")\n";
      }
      return kDefinite;
    }

    if (rep_cmd->parsed()) {
      const EllipsoidalRep rep = ellipsoidal_rep_from_map(A, tol);
      const Inertia in3 = inertia(rep.Q, tol);
      if (as_json) {
        out << json{{"Q", to_json(rep.Q)},
                    {"u", to_json(rep.u)},
                    {"lambda", rep.lambda},
                    {"inertia", {in3.n_plus, in3.n_zero, in3.n_minus}},
                    {"n", n},
                    {"tolerances", to_json(tol)}}
                   .dump()
            << '\n';
      } else {
        out << "Q:\n" << rep.Q << "\nu: ";
        detail::print_vector(out, rep.u);
        out << "\nlambda: " << rep.lambda << "\ninertia: (" << in3.n_plus << ", " << in3.n_zero << ", "
            << in3.n_minus << ")\n";
      }
      return kDefinite;
    }

    if (extremal_cmd->parsed()) {
      const Vector x = parse_vector(vector_text);
      if (x.size() != n)
        throw DimensionError("vector length " + std::to_string(x.size()) + " does not match n = " +
                             std::to_string(n));
      const Vector xp = extremal_pushforward(A, LorentzCone(n), x, tol);
      const Membership im = membership(Vector(A * xp), tol);
      if (as_json) {
        out << json{{"pushforward", to_json(xp)},
                    {"image_membership", std::string(to_string(im.cls))},
                    {"image_margin", im.margin},
                    {"n", n},
                    {"tolerances", to_json(tol)}}
                   .dump()
            << '\n';
      } else {
        out << "pushforward: ";
        detail::print_vector(out, xp);
        out << "\nA x': " << to_string(im.cls) << " (margin " << im.margin << ")\n";
      }
      return kDefinite;
    }

    if (monotone_cmd->parsed()) {
      const bool mono = is_monotone(A, tol);
      const bool inv = is_invariant(A, tol);
      const EllipsoidalCheck ell = s_cone_is_ellipsoidal(A, tol);
      if (as_json) {
        out << json{{"monotone", mono},
                    {"invariant", inv},
                    {"preimage_ellipsoidal", ell.ellipsoidal},
                    {"n", n},
                    {"tolerances", to_json(tol)}}
                   .dump()
            << '\n';
      } else {
        out << "monotone:  " << (mono ? "yes" : "no") << "\ninvariant: " << (inv ? "yes" : "no")
            << "\npreimage cone ellipsoidal: " << (ell.ellipsoidal ? "yes" : "no") << '\n';
      }
      return kDefinite;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

} // namespace lorentz::cli
