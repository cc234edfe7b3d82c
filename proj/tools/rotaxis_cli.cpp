// rotaxis: rotation-axis extraction for batches of 3x3 matrices.
//
//   rotaxis axis  [FILE] [--method M] [--tol T] [--modulus P] [--degrees]
//   rotaxis gen   [--seed S] [--count N] [--angle RAD]
//   rotaxis xval  [FILE | --seed S --count N] [--report]
//   rotaxis check [FILE] [--tol T]
//   rotaxis ff    ACTION --modulus P [FILE] [--seed S --count N --factors K]
//   rotaxis su3   [FILE | --seed S --count N] [--lambda-index K]
//
// Input is read from FILE or standard input. A leading '{' selects a stream
// of JSON documents {"matrix": [[...],[...],[...]], "modulus": p, "label": s};
// anything else is whitespace-separated numbers, row-major, 9 per matrix (18
// for su3: re im pairs). Each result is one JSON object per line.
//
// Exit codes: 0 success, 1 cross-validation disagreement, 2 bad input or
// arguments, 3 matrix not orthogonal (unitary), 4 method inapplicable,
// identity input or other degenerate case.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rotaxis/rotaxis.hpp"

namespace {

using json = nlohmann::json;
using namespace rotaxis;

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotOrthogonal = 3;
constexpr int kExitInapplicable = 4;

constexpr double kXvalDeviation = 1e-8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- output -----------------------------------------------------------------------

std::string fmt(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(Complex z) { return "[" + fmt(z.real()) + "," + fmt(z.imag()) + "]"; }

template <class T, class F>
std::string list(const T& items, F&& render) {
  std::string s = "[";
  bool first = true;
  for (const auto& x : items) {
    if (!first) s += ",";
    s += render(x);
    first = false;
  }
  return s + "]";
}

std::string fmt(const Vec3d& v) { return list(v.v, [](double x) { return fmt(x); }); }
std::string fmt(const CVec3& v) { return list(v.v, [](Complex z) { return fmt(z); }); }
std::string fmt(const FpVec3& v) { return list(v.v, [](const Fp& x) { return std::to_string(x.v); }); }
std::string fmt(const Mat3d& m) { return list(m.a, [](const auto& row) { return list(row, [](double x) { return fmt(x); }); }); }
std::string fmt(const FpMat3& m) {
  return list(m.a, [](const auto& row) { return list(row, [](const Fp& x) { return std::to_string(x.v); }); });
}

/// One output document; fields keep insertion order.
class Record {
 public:
  Record& raw(const std::string& key, std::string value) {
    fields_.emplace_back(key, std::move(value));
    return *this;
  }
  Record& num(const std::string& key, double x) { return raw(key, fmt(x)); }
  Record& integer(const std::string& key, long long x) { return raw(key, std::to_string(x)); }
  Record& boolean(const std::string& key, bool b) { return raw(key, b ? "true" : "false"); }
  Record& str(const std::string& key, const std::string& s) { return raw(key, json(s).dump()); }

  std::string render(bool pretty) const {
    std::string s = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i > 0) s += ",";
      if (pretty) s += "\n  ";
      s += json(fields_[i].first).dump() + (pretty ? ": " : ":") + fields_[i].second;
    }
    if (pretty && !fields_.empty()) s += "\n";
    return s + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct Output {
  bool pretty = false;
  void emit(const Record& r) const { std::cout << r.render(pretty) << '\n'; }
};

// --- input ------------------------------------------------------------------------

enum class Entries { Real, Integer, Complex };

struct Document {
  std::array<std::array<Complex, 3>, 3> m{};
  std::array<std::array<long long, 3>, 3> ints{};
  std::optional<std::uint64_t> modulus;
  std::optional<std::string> label;

  Mat3d real() const {
    Mat3d r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = m[i][j].real();
    return r;
  }
  CMat3 complex() const {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = m[i][j];
    return r;
  }
};

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

double parse_double(const std::string& tok) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(x)) {
    throw UsageError("not a finite number: '" + tok + "'");
  }
  return x;
}

long long parse_integer(const std::string& tok) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
    throw UsageError("not an integer: '" + tok + "'");
  }
  return x;
}

void set_entry(Document& d, int i, int j, const json& v, Entries kind) {
  if (kind == Entries::Complex && v.is_array()) {
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw UsageError("complex entries are [re, im] pairs");
    }
    d.m[i][j] = Complex(v[0].get<double>(), v[1].get<double>());
    return;
  }
  if (kind == Entries::Integer) {
    if (!v.is_number_integer()) throw UsageError("modular entries must be integers");
    d.ints[i][j] = v.get<long long>();
    d.m[i][j] = static_cast<double>(d.ints[i][j]);
    return;
  }
  if (!v.is_number()) throw UsageError("matrix entries must be numbers");
  d.m[i][j] = v.get<double>();
}

Document from_json(const json& j, Entries kind) {
  if (!j.is_object() || !j.contains("matrix")) throw UsageError("document needs a \"matrix\" field");
  const json& rows = j["matrix"];
  if (!rows.is_array() || rows.size() != 3) throw UsageError("\"matrix\" must have 3 rows");
  Document d;
  for (int i = 0; i < 3; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 3) throw UsageError("each row must have 3 entries");
    for (int k = 0; k < 3; ++k) set_entry(d, i, k, rows[i][k], kind);
  }
  if (j.contains("modulus")) {
    if (!j["modulus"].is_number_unsigned()) throw UsageError("\"modulus\" must be a positive integer");
    d.modulus = j["modulus"].get<std::uint64_t>();
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw UsageError("\"label\" must be a string");
    d.label = j["label"].get<std::string>();
  }
  return d;
}

std::vector<Document> parse_documents(const std::string& text, Entries kind) {
  std::vector<Document> docs;
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) return docs;

  if (text[start] == '{') {
    std::istringstream in(text);
    while (true) {
      in >> std::ws;
      if (in.peek() == std::char_traits<char>::eof()) break;
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw UsageError("document " + std::to_string(docs.size() + 1) + ": " + e.what());
      }
      try {
        docs.push_back(from_json(j, kind));
      } catch (const json::exception& e) {
        throw UsageError("document " + std::to_string(docs.size() + 1) + ": " + e.what());
      } catch (const UsageError& e) {
        throw UsageError("document " + std::to_string(docs.size() + 1) + ": " + e.what());
      }
    }
    return docs;
  }

  std::istringstream in(text);
  std::vector<std::string> toks{std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
  const std::size_t per = kind == Entries::Complex ? 18 : 9;
  if (toks.size() % per != 0) {
    throw UsageError("expected a multiple of " + std::to_string(per) + " numbers, got " + std::to_string(toks.size()));
  }
  for (std::size_t base = 0; base < toks.size(); base += per) {
    Document d;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const std::size_t at = base + (kind == Entries::Complex ? 2 : 1) * (3 * i + j);
        if (kind == Entries::Complex) {
          d.m[i][j] = Complex(parse_double(toks[at]), parse_double(toks[at + 1]));
        } else if (kind == Entries::Integer) {
          d.ints[i][j] = parse_integer(toks[at]);
          d.m[i][j] = static_cast<double>(d.ints[i][j]);
        } else {
          d.m[i][j] = parse_double(toks[at]);
        }
      }
    }
    docs.push_back(d);
  }
  return docs;
}

/// Integer mode is needed when the input (or a flag) carries a modulus.
std::vector<Document> read_documents(const std::string& path, Entries kind) {
  return parse_documents(read_all(path), kind);
}

bool text_has_modulus(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  return start != std::string::npos && text[start] == '{' && text.find("\"modulus\"") != std::string::npos;
}

Record labelled(const Document& d) {
  Record r;
  if (d.label) r.str("label", *d.label);
  return r;
}

// --- shared options ------------------------------------------------------------------

double default_tolerance() {
  const char* env = std::getenv("AXIS_TOL");
  if (env == nullptr || *env == '\0') return tol::kOrthogonal;
  const double t = parse_double(env);
  if (!(t > 0.0)) throw UsageError("AXIS_TOL must be positive");
  return t;
}

Method parse_method(const std::string& s) {
  static const std::map<std::string, Method> table{
      {"auto", Method::Auto},         {"v", Method::V},   {"u", Method::U},
      {"w1", Method::W1},             {"w2", Method::W2}, {"w3", Method::W3},
      {"cofactor", Method::Cofactor}, {"degenerate", Method::Degenerate},
      {"resolvent", Method::Resolvent}};
  return table.at(s);
}

// --- finite field ------------------------------------------------------------------

std::uint64_t require_modulus(const Document& d, std::optional<std::uint64_t> flag) {
  const std::optional<std::uint64_t> p = d.modulus ? d.modulus : flag;
  if (!p) throw UsageError("no modulus given");
  check_modulus(*p);
  return *p;
}

Record ff_axis(const Document& d, std::uint64_t p, Method method) {
  const FpMat3 m = fp_matrix(d.ints, p);
  Record r = labelled(d);
  FpVec3 v;
  std::string tag;
  switch (method) {
    case Method::Auto:
    case Method::Cofactor: {
      const FpCertificate c = eigenvalue_one_certificate(m);
      v = c.v;
      tag = c.path == KernelPath::Cofactor ? "COFACTOR" : "ELIMINATION";
      break;
    }
    case Method::V:
      v = vector_v_fp(m);
      tag = "V";
      break;
    case Method::U:
      v = vector_u_fp(m);
      tag = "U";
      break;
    case Method::W1:
    case Method::W2:
    case Method::W3: {
      const Index i = method == Method::W1 ? Index::one : (method == Method::W2 ? Index::two : Index::three);
      v = vector_w_fp(m, i);
      tag = std::string(to_string(method));
      break;
    }
    default:
      throw Error(ErrorKind::MethodInapplicable, std::string(to_string(method)) + " has no modular form");
  }
  if (is_zero(v)) throw Error(ErrorKind::MethodInapplicable, tag + " vanishes mod " + std::to_string(p));
  v = canonical_scaling(v);
  r.raw("axis", fmt(v)).integer("modulus", static_cast<long long>(p)).str("method", tag);
  return r;
}

std::vector<FpMat3> ff_generators(std::uint64_t p) {
  std::vector<FpMat3> out;
  for (const auto& [a, b] : circle_solutions(p))
    for (Index k : kIndices) out.push_back(planar_rotation_embed({a, p}, {b, p}, k));
  return out;
}

// --- subcommands -------------------------------------------------------------------

struct AxisArgs {
  std::string input;
  std::string method = "auto";
  std::optional<double> tol;
  std::optional<std::uint64_t> modulus;
  bool degrees = false;
};

int cmd_axis(const AxisArgs& args, const Output& out) {
  const Method method = parse_method(args.method);
  const double tolerance = args.tol ? *args.tol : default_tolerance();
  if (!(tolerance > 0.0)) throw UsageError("--tol must be positive");
  const std::string text = read_all(args.input);
  const bool modular = args.modulus.has_value() || text_has_modulus(text);
  for (const Document& d : parse_documents(text, modular ? Entries::Integer : Entries::Real)) {
    if (modular) {
      out.emit(ff_axis(d, require_modulus(d, args.modulus), method));
      continue;
    }
    const OrthogonalMatrix a = validate_orthogonal(d.real(), tolerance);
    const EigenReport rep = extract_axis(a, method);
    Record r = labelled(d);
    r.raw("axis", fmt(rep.axis));
    if (args.degrees) {
      r.num("angle_deg", rep.angle * 180.0 / std::numbers::pi);
    } else {
      r.num("angle_rad", rep.angle);
    }
    r.integer("eigenvalue", rep.eigenvalue).str("method", std::string(to_string(rep.method))).num("residual", rep.residual);
    out.emit(r);
  }
  return kExitOk;
}

struct GenArgs {
  std::uint64_t seed = 0;
  int count = 1;
  std::optional<double> angle;
};

int cmd_gen(const GenArgs& args, const Output& out) {
  if (args.count < 0) throw UsageError("--count must be nonnegative");
  SplitMix64 gen(args.seed);
  for (int n = 0; n < args.count; ++n) {
    const OrthogonalMatrix a = args.angle ? random_rotation_with_angle(gen, *args.angle) : random_rotation(gen);
    out.emit(Record().raw("matrix", fmt(a.m)));
  }
  return kExitOk;
}

struct XvalArgs {
  std::string input;
  std::optional<std::uint64_t> seed;
  int count = 100;
  bool report = false;
  std::optional<double> tol;
};

int cmd_xval(const XvalArgs& args, const Output& out) {
  const double tolerance = args.tol ? *args.tol : default_tolerance();
  std::vector<Mat3d> mats;
  if (args.seed) {
    if (args.count < 0) throw UsageError("--count must be nonnegative");
    SplitMix64 gen(*args.seed);
    for (int n = 0; n < args.count; ++n) mats.push_back(random_rotation(gen).m);
  } else {
    for (const Document& d : read_documents(args.input, Entries::Real)) mats.push_back(d.real());
  }

  const std::array<Method, 8> methods{Method::V,          Method::U,        Method::W1,       Method::W2,
                                      Method::W3,         Method::Degenerate, Method::Cofactor, Method::Resolvent};
  double worst_dev = 0.0, worst_res = 0.0;
  int failures = 0;
  for (std::size_t idx = 0; idx < mats.size(); ++idx) {
    const OrthogonalMatrix a = validate_orthogonal(mats[idx], tolerance);
    std::vector<std::string> ok, skipped;
    std::vector<Vec3d> axes;
    double res = 0.0;
    for (Method m : methods) {
      try {
        const EigenReport rep = extract_axis(a, m);
        ok.emplace_back(to_string(rep.method));
        axes.push_back(rep.axis);
        res = std::max(res, rep.residual);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::MethodInapplicable && e.kind() != ErrorKind::DegenerateDenominator) throw;
        skipped.emplace_back(to_string(m));
      }
    }
    double dev = 0.0;
    for (std::size_t x = 0; x < axes.size(); ++x)
      for (std::size_t y = x + 1; y < axes.size(); ++y) dev = std::max(dev, line_angle(axes[x], axes[y]));
    worst_dev = std::max(worst_dev, dev);
    worst_res = std::max(worst_res, res);
    if (dev > kXvalDeviation) ++failures;
    if (args.report) {
      auto quoted = [](const std::string& s) { return json(s).dump(); };
      out.emit(Record()
                   .integer("index", static_cast<long long>(idx))
                   .raw("applicable", list(ok, quoted))
                   .raw("inapplicable", list(skipped, quoted))
                   .num("max_deviation", dev)
                   .num("max_residual", res));
    }
  }
  out.emit(Record()
               .integer("count", static_cast<long long>(mats.size()))
               .num("max_deviation", worst_dev)
               .num("max_residual", worst_res)
               .integer("failures", failures));
  return failures > 0 ? kExitDisagree : kExitOk;
}

struct CheckArgs {
  std::string input;
  std::optional<double> tol;
};

int cmd_check(const CheckArgs& args, const Output& out) {
  const double tolerance = args.tol ? *args.tol : default_tolerance();
  for (const Document& d : read_documents(args.input, Entries::Real)) {
    const Mat3d m = d.real();
    const double res = orthogonality_residual(m);
    Record r = labelled(d);
    r.num("ortho_residual", res).num("det", det3(m)).num("trace", trace(m));
    std::optional<OrthogonalMatrix> a;
    try {
      a = validate_orthogonal(m, tolerance);
    } catch (const Error&) {
    }
    r.boolean("orthogonal", a.has_value());
    if (!a) {
      out.emit(r);
      std::cerr << "rotaxis: NotOrthogonal: max|m^T m - I| = " << format_value(res) << '\n';
      return kExitNotOrthogonal;
    }
    r.num("angle_rad", rotation_angle(*a));
    r.raw("degenerate_pairs", list(degenerate_pairs(m), [](const IndexPair& p) {
            return "[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]";
          }));
    if (a->det_sign == 1) {
      double l3 = 0.0;
      for (double x : rotation_identity_residuals(*a)) l3 = std::max(l3, x);
      r.num("rotation_identity_max", l3).num("cofactor_identity_max", norm_inf(cofactor_identity_residual(*a)));
    } else {
      r.raw("rotation_identity_max", "null").raw("cofactor_identity_max", "null");
    }
    r.num("laplace_residual", laplace_cofactor_residual(m));
    out.emit(r);
  }
  return kExitOk;
}

struct FfArgs {
  std::string action;
  std::string input;
  std::optional<std::uint64_t> modulus;
  std::string method = "auto";
  std::uint64_t seed = 0;
  int count = 1;
  int factors = 4;
};

int cmd_ff(const FfArgs& args, const Output& out) {
  if (!args.modulus) throw UsageError("ff needs --modulus");
  const std::uint64_t p = *args.modulus;
  check_modulus(p);

  if (args.action == "circle") {
    const auto sols = circle_solutions(p);
    out.emit(Record()
                 .integer("modulus", static_cast<long long>(p))
                 .integer("count", static_cast<long long>(sols.size()))
                 .raw("solutions", list(sols, [](const auto& s) {
                        return "[" + std::to_string(s.first) + "," + std::to_string(s.second) + "]";
                      })));
    return kExitOk;
  }
  if (args.action == "generate") {
    if (args.count < 0 || args.factors < 0) throw UsageError("--count and --factors must be nonnegative");
    const auto gens = ff_generators(p);
    SplitMix64 gen(args.seed);
    for (int n = 0; n < args.count; ++n) {
      FpMat3 m = identity_like(Fp{0, p});
      for (int k = 0; k < args.factors; ++k) m = m * gens[gen.next() % gens.size()];
      out.emit(Record().raw("matrix", fmt(m)).integer("modulus", static_cast<long long>(p)));
    }
    return kExitOk;
  }

  const Method method = parse_method(args.method);
  for (const Document& d : read_documents(args.input, Entries::Integer)) {
    const std::uint64_t q = require_modulus(d, p);
    if (args.action == "check") {
      const FpMat3 m = fp_matrix(d.ints, q);
      const bool ok = is_special_orthogonal_fp(m);
      out.emit(labelled(d)
                   .boolean("special_orthogonal", ok)
                   .integer("det", static_cast<long long>(det3(m).v))
                   .integer("modulus", static_cast<long long>(q)));
      if (!ok) {
        std::cerr << "rotaxis: NotOrthogonal: matrix is not in SO_3(Z_" << q << ")\n";
        return kExitNotOrthogonal;
      }
    } else {
      out.emit(ff_axis(d, q, method));
    }
  }
  return kExitOk;
}

struct Su3Args {
  std::string input;
  std::optional<std::uint64_t> seed;
  int count = 1;
  int lambda_index = 0;
  std::optional<double> tol;
};

int cmd_su3(const Su3Args& args, const Output& out) {
  const double tolerance = args.tol ? *args.tol : default_tolerance();
  std::vector<std::pair<std::optional<std::string>, CMat3>> mats;
  if (args.seed) {
    if (args.count < 0) throw UsageError("--count must be nonnegative");
    SplitMix64 gen(*args.seed);
    for (int n = 0; n < args.count; ++n) mats.emplace_back(std::nullopt, random_su3(gen).m);
  } else {
    for (const Document& d : read_documents(args.input, Entries::Complex)) mats.emplace_back(d.label, d.complex());
  }
  for (const auto& [label, m] : mats) {
    const UnitaryMatrix a = validate_su3(m, tolerance);
    const Complex lambda = su3_eigenvalues(a)[args.lambda_index];
    int best = -1;
    CVec3 w{};
    for (Index i : kIndices) {
      try {
        const CVec3 row = su3_w(a, lambda, i);
        if (best < 0 || norm_inf(row) > norm_inf(w)) {
          best = pos(i);
          w = row;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroVector) throw;
      }
    }
    if (best < 0) throw Error(ErrorKind::ZeroVector, "every cofactor row vanishes (eigenvalue not simple)");
    // unit 2-norm, largest entry real and positive
    int big = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(w[k]) > std::abs(w[big])) big = k;
    const double n2 = std::sqrt(std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]));
    const Complex scale = std::conj(w[big]) / (std::abs(w[big]) * n2);
    const CVec3 v = scale * w;
    Record r;
    if (label) r.str("label", *label);
    r.raw("lambda", fmt(lambda))
        .raw("eigenvector", fmt(v))
        .integer("row", best + 1)
        .num("residual", eigen_residual(a.m, lambda, v))
        .num("literal_form_residual", su3_literal_form_discrepancy(a, lambda).max);
    out.emit(r);
  }
  return kExitOk;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotOrthogonal:
    case ErrorKind::NotUnitary:
      return kExitNotOrthogonal;
    case ErrorKind::NotPrime:
    case ErrorKind::ModulusTooLarge:
    case ErrorKind::InvalidArgument:
    case ErrorKind::IndexOutOfRange:
      return kExitUsage;
    default:
      return kExitInapplicable;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-axis extraction for 3x3 orthogonal matrices"};
  app.require_subcommand(1);
  Output out;

  auto add_pretty = [&](CLI::App* sub) { sub->add_flag("--pretty", out.pretty, "Indented multi-line output"); };
  const std::vector<std::string> method_names{"auto", "v", "u", "w1", "w2", "w3", "cofactor", "degenerate", "resolvent"};

  AxisArgs axis;
  CLI::App* s_axis = app.add_subcommand("axis", "Extract the rotation axis of each input matrix");
  s_axis->add_option("input", axis.input, "Input file (default: standard input)");
  s_axis->add_option("--method", axis.method, "Construction to use")->check(CLI::IsMember(method_names));
  s_axis->add_option("--tol", axis.tol, "Orthogonality tolerance (default 1e-9 or AXIS_TOL)");
  s_axis->add_option("--modulus", axis.modulus, "Work over Z_p with this odd prime");
  s_axis->add_flag("--degrees", axis.degrees, "Report the angle in degrees");
  add_pretty(s_axis);

  GenArgs gen;
  CLI::App* s_gen = app.add_subcommand("gen", "Generate seeded Haar-random rotations");
  s_gen->add_option("--seed", gen.seed, "Generator seed");
  s_gen->add_option("--count", gen.count, "Number of matrices");
  s_gen->add_option("--angle", gen.angle, "Fixed rotation angle in radians (random axis)");
  add_pretty(s_gen);

  XvalArgs xval;
  CLI::App* s_xval = app.add_subcommand("xval", "Cross-validate every applicable construction");
  s_xval->add_option("input", xval.input, "Input file (default: standard input)");
  s_xval->add_option("--seed", xval.seed, "Generate inputs from this seed instead of reading");
  s_xval->add_option("--count", xval.count, "Number of generated matrices");
  s_xval->add_option("--tol", xval.tol, "Orthogonality tolerance");
  s_xval->add_flag("--report", xval.report, "Emit one line per matrix before the summary");
  add_pretty(s_xval);

  CheckArgs check;
  CLI::App* s_check = app.add_subcommand("check", "Report orthogonality and identity residuals");
  s_check->add_option("input", check.input, "Input file (default: standard input)");
  s_check->add_option("--tol", check.tol, "Orthogonality tolerance");
  add_pretty(s_check);

  FfArgs ff;
  CLI::App* s_ff = app.add_subcommand("ff", "Matrices over Z_p");
  s_ff->add_option("action", ff.action, "check | axis | circle | generate")
      ->required()
      ->check(CLI::IsMember({"check", "axis", "circle", "generate"}));
  s_ff->add_option("input", ff.input, "Input file (default: standard input)");
  s_ff->add_option("--modulus", ff.modulus, "Odd prime p")->required();
  s_ff->add_option("--method", ff.method, "Construction for 'axis'")->check(CLI::IsMember(method_names));
  s_ff->add_option("--seed", ff.seed, "Seed for 'generate'");
  s_ff->add_option("--count", ff.count, "Number of generated matrices");
  s_ff->add_option("--factors", ff.factors, "Planar rotations multiplied per generated matrix");
  add_pretty(s_ff);

  Su3Args su3;
  CLI::App* s_su3 = app.add_subcommand("su3", "Eigenvectors of SU(3) matrices");
  s_su3->add_option("input", su3.input, "Input file (default: standard input)");
  s_su3->add_option("--seed", su3.seed, "Generate Haar samples from this seed instead of reading");
  s_su3->add_option("--count", su3.count, "Number of generated matrices");
  s_su3->add_option("--lambda-index", su3.lambda_index, "Eigenvalue, sorted by argument")->check(CLI::Range(0, 2));
  s_su3->add_option("--tol", su3.tol, "Unitarity tolerance");
  add_pretty(s_su3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s_axis->parsed()) return cmd_axis(axis, out);
    if (s_gen->parsed()) return cmd_gen(gen, out);
    if (s_xval->parsed()) return cmd_xval(xval, out);
    if (s_check->parsed()) return cmd_check(check, out);
    if (s_ff->parsed()) return cmd_ff(ff, out);
    if (s_su3->parsed()) return cmd_su3(su3, out);
  } catch (const UsageError& e) {
    std::cerr << "rotaxis: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "rotaxis: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}
