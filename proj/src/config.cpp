#include "elastoibvp/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>

#include <fmt/format.h>

#include "elastoibvp/errors.hpp"

namespace elastoibvp::config {

namespace {

using Kind = ConfigError::Kind;

const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
    {"constants", {"k", "c", "j"}},
    {"initial", {"u", "sigma"}},
    {"boundary", {"u", "sigma"}},
    {"grid", {"x_max", "t_max", "nx", "nt"}},
    {"solver", {"type", "output"}},
    {"linear", {"ubar", "alpha", "beta", "gamma"}},
    {"variational", {"quad_points", "tau_points", "search_tol", "y_max"}},
    {"viscous", {"model", "epsilon", "length", "cells", "cfl", "scheme"}},
    {"verify", {"eps", "reference"}},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || s.empty()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Document {
 public:
  explicit Document(std::string_view text) {
    std::string section;
    int line_no = 0;
    for (std::string_view rest = text; !rest.empty() || line_no == 0;) {
      const auto nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw parse(line_no, std::string(line), "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!kSchema.contains(section)) throw parse(line_no, section, "unknown section");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw parse(line_no, std::string(line), "expected key = value");
      const std::string key(trim(line.substr(0, eq)));
      if (section.empty()) throw parse(line_no, key, "key outside any section");
      const std::string field = section + "." + key;
      if (!kSchema.find(section)->second.contains(key)) throw parse(line_no, field, "unknown key");
      if (!entries_.emplace(field, Entry{std::string(trim(line.substr(eq + 1))), line_no}).second) {
        throw parse(line_no, field, "duplicate key");
      }
    }
  }

  const Entry* find(const std::string& field) const {
    const auto it = entries_.find(field);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const Entry& require(const std::string& field) const {
    if (const Entry* e = find(field)) return *e;
    throw ConfigError(Kind::Parse, 0, field, "missing required key");
  }

  double number(const std::string& field, std::optional<double> fallback = std::nullopt) const {
    const Entry* e = fallback ? find(field) : &require(field);
    if (!e) return *fallback;
    const auto v = to_double(e->value);
    if (!v) throw parse(e->line, field, "expected a number, got '" + e->value + "'");
    return *v;
  }

  int integer(const std::string& field, std::optional<int> fallback = std::nullopt) const {
    const Entry* e = fallback ? find(field) : &require(field);
    if (!e) return *fallback;
    const auto v = to_int(e->value);
    if (!v) throw parse(e->line, field, "expected an integer, got '" + e->value + "'");
    return *v;
  }

  PiecewiseFn function(const std::string& field) const {
    const Entry& e = require(field);
    return function(e, field);
  }

  std::optional<PiecewiseFn> optional_function(const std::string& field) const {
    const Entry* e = find(field);
    if (!e) return std::nullopt;
    return function(*e, field);
  }

  static ConfigError parse(int line, std::string field, const std::string& what) {
    return ConfigError(Kind::Parse, line, std::move(field), what);
  }

 private:
  static PiecewiseFn function(const Entry& e, const std::string& field) {
    try {
      return parse_piecewise(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(err.kind(), e.line, field, err.what());
    }
  }

  std::map<std::string, Entry> entries_;
};

template <typename Enum, std::size_t N>
Enum choose(const Document& doc, const std::string& field, Enum fallback,
            const std::pair<std::string_view, Enum> (&options)[N]) {
  const Entry* e = doc.find(field);
  if (!e) return fallback;
  for (const auto& [name, value] : options) {
    if (e->value == name) return value;
  }
  throw Document::parse(e->line, field, "unknown value '" + e->value + "'");
}

constexpr std::pair<std::string_view, SolverKind> kSolverNames[] = {
    {"linear", SolverKind::Linear},   {"variational", SolverKind::Variational},
    {"riemann", SolverKind::Riemann}, {"viscous", SolverKind::Viscous},
    {"verify", SolverKind::Verify},
};
constexpr std::pair<std::string_view, ViscousModel> kModelNames[] = {
    {"scalar", ViscousModel::Scalar}, {"system", ViscousModel::System}};
constexpr std::pair<std::string_view, viscous::Scheme> kSchemeNames[] = {
    {"explicit", viscous::Scheme::ExplicitUpwind},
    {"semi-implicit", viscous::Scheme::SemiImplicit}};
constexpr std::pair<std::string_view, ReferenceKind> kReferenceNames[] = {
    {"riemann", ReferenceKind::Riemann}, {"variational", ReferenceKind::Variational}};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::pair<std::string_view, Enum> (&options)[N]) {
  for (const auto& [name, v] : options) {
    if (v == value) return name;
  }
  return "?";
}

ConfigError invalid(const std::string& field, const std::string& what, int line = 0) {
  return ConfigError(Kind::Validation, line, field, what);
}

bool needs_level_set(const RunConfig& c) {
  switch (c.solver) {
    case SolverKind::Variational:
    case SolverKind::Riemann: return true;
    case SolverKind::Viscous:
    case SolverKind::Verify: return c.viscous.model == ViscousModel::Scalar;
    case SolverKind::Linear: return false;
  }
  return false;
}

}  // namespace

std::string_view to_string(SolverKind kind) noexcept { return name_of(kind, kSolverNames); }

ConfigError::ConfigError(Kind kind, int line, std::string field, const std::string& what)
    : std::runtime_error(fmt::format("{} error{}{}: {}", kind == Kind::Parse ? "parse" : "validation",
                                     line > 0 ? fmt::format(" at line {}", line) : "",
                                     field.empty() ? "" : " (" + field + ")", what)),
      kind_(kind), line_(line), field_(std::move(field)) {}

PiecewiseFn parse_piecewise(std::string_view text) {
  std::vector<double> starts;
  std::vector<Piece> pieces;
  for (std::string_view item : split(text, ';')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() != 3) {
      throw ConfigError(Kind::Parse, 0, "", "piece '" + std::string(item) + "' is not start:kind:coefficients");
    }
    const auto start = to_double(parts[0]);
    const auto coeffs = split(parts[2], ',');
    std::vector<double> c;
    for (auto s : coeffs) {
      const auto v = to_double(s);
      if (!v) throw ConfigError(Kind::Parse, 0, "", "bad coefficient '" + std::string(s) + "'");
      c.push_back(*v);
    }
    if (!start) throw ConfigError(Kind::Parse, 0, "", "bad breakpoint '" + std::string(parts[0]) + "'");
    if (parts[1] == "const" && c.size() == 1) {
      pieces.push_back(Piece::constant(c[0]));
    } else if (parts[1] == "affine" && c.size() == 2) {
      pieces.push_back(Piece::affine(c[0], c[1]));
    } else {
      throw ConfigError(Kind::Parse, 0, "",
                        "expected const:value or affine:slope,intercept in '" + std::string(item) + "'");
    }
    starts.push_back(*start);
  }
  if (pieces.empty()) throw ConfigError(Kind::Parse, 0, "", "empty piecewise function");
  try {
    return PiecewiseFn(std::move(starts), std::move(pieces));
  } catch (const SolverError& e) {
    throw ConfigError(Kind::Validation, 0, "", e.what());
  }
}

std::string render_piecewise(const PiecewiseFn& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& p = f.pieces()[i];
    if (i > 0) out += "; ";
    if (p.is_constant()) {
      out += fmt::format("{:.17g}:const:{:.17g}", f.starts()[i], p.intercept);
    } else {
      out += fmt::format("{:.17g}:affine:{:.17g},{:.17g}", f.starts()[i], p.slope, p.intercept);
    }
  }
  return out;
}

RunConfig parse_config(std::string_view text, std::optional<SolverKind> forced) {
  const Document doc(text);
  RunConfig c;

  const Entry* type = doc.find("solver.type");
  if (type) {
    c.solver = choose(doc, "solver.type", SolverKind::Riemann, kSolverNames);
    if (forced && *forced != c.solver) {
      throw invalid("solver.type", fmt::format("config selects '{}' but the command runs '{}'",
                                               to_string(c.solver), to_string(*forced)),
                    type->line);
    }
  } else if (forced) {
    c.solver = *forced;
  } else {
    throw ConfigError(Kind::Parse, 0, "solver.type", "missing required key");
  }
  if (const Entry* out = doc.find("solver.output")) c.output_path = out->value;

  const double k = doc.number("constants.k");
  const double cc = doc.number("constants.c");
  const int j = doc.integer("constants.j");
  std::optional<ModelConstants> mc;
  try {
    mc.emplace(k, cc, j);
  } catch (const SolverError& e) {
    throw invalid("constants", e.what());
  }

  const PiecewiseFn u0 = doc.function("initial.u");
  const PiecewiseFn ub = c.solver == SolverKind::Linear && !doc.find("boundary.u")
                             ? PiecewiseFn(0.0)
                             : doc.function("boundary.u");
  auto level = [&](const PiecewiseFn& u) {
    return PiecewiseFn::combine(mc->shift(), u, 1.0, PiecewiseFn(mc->c()));
  };
  c.spec = ProblemSpec{*mc, u0, doc.optional_function("initial.sigma").value_or(level(u0)), ub,
                       doc.optional_function("boundary.sigma").value_or(level(ub))};

  c.grid = {doc.number("grid.x_max"), doc.number("grid.t_max"), doc.integer("grid.nx"),
            doc.integer("grid.nt")};
  if (!(c.grid.x_max > 0.0)) throw invalid("grid.x_max", "must be positive");
  if (!(c.grid.t_max > 0.0)) throw invalid("grid.t_max", "must be positive");
  if (c.grid.nx < 2) throw invalid("grid.nx", "must be at least 2");
  if (c.grid.nt < 2) throw invalid("grid.nt", "must be at least 2");

  c.linear.ubar = doc.number("linear.ubar", 0.0);
  c.linear.alpha = doc.number("linear.alpha", 1.0);
  c.linear.beta = doc.number("linear.beta", 0.0);
  c.linear.gamma = doc.optional_function("linear.gamma");
  if (c.solver == SolverKind::Linear && !doc.find("linear.ubar")) {
    throw ConfigError(Kind::Parse, 0, "linear.ubar", "missing required key");
  }

  auto& vp = c.variational;
  vp.quad_points = doc.integer("variational.quad_points", vp.quad_points);
  vp.tau_points = doc.integer("variational.tau_points", vp.tau_points);
  vp.search_tol = doc.number("variational.search_tol", vp.search_tol);
  if (doc.find("variational.y_max")) vp.y_max = doc.number("variational.y_max");
  if (vp.quad_points < 16) throw invalid("variational.quad_points", "must be at least 16");
  if (vp.tau_points < 2) throw invalid("variational.tau_points", "must be at least 2");
  if (!(vp.search_tol > 0.0)) throw invalid("variational.search_tol", "must be positive");
  if (vp.y_max && !(*vp.y_max > 0.0)) throw invalid("variational.y_max", "must be positive");

  auto& v = c.viscous;
  v.model = choose(doc, "viscous.model", ViscousModel::Scalar, kModelNames);
  v.mesh.epsilon = doc.number("viscous.epsilon", v.mesh.epsilon);
  v.mesh.length = doc.number("viscous.length", c.grid.x_max);
  v.mesh.nx = doc.integer("viscous.cells", v.mesh.nx);
  v.mesh.cfl_safety = doc.number("viscous.cfl", v.mesh.cfl_safety);
  v.mesh.scheme = choose(doc, "viscous.scheme", viscous::Scheme::ExplicitUpwind, kSchemeNames);
  v.mesh.t_end = c.grid.t_max;
  try {
    v.mesh.validate();
  } catch (const SolverError& e) {
    throw invalid("viscous", e.what());
  }
  if (v.mesh.length < c.grid.x_max) {
    throw invalid("viscous.length", "viscous domain must cover [0, grid.x_max]");
  }

  if (const Entry* e = doc.find("verify.eps")) {
    c.verify.eps_list.clear();
    for (auto s : split(e->value, ',')) {
      const auto eps = to_double(s);
      if (!eps) throw Document::parse(e->line, "verify.eps", "bad epsilon '" + std::string(s) + "'");
      c.verify.eps_list.push_back(*eps);
    }
    for (std::size_t i = 0; i < c.verify.eps_list.size(); ++i) {
      const double eps = c.verify.eps_list[i];
      if (!(eps > 0.0) || (i > 0 && !(eps < c.verify.eps_list[i - 1]))) {
        throw invalid("verify.eps", "epsilons must be positive and strictly decreasing", e->line);
      }
    }
  }
  c.verify.reference = choose(doc, "verify.reference", ReferenceKind::Riemann, kReferenceNames);

  if (needs_level_set(c)) {
    const auto report = check_level_set(c.spec);
    if (!report.ok) {
      throw invalid("initial/boundary",
                    fmt::format("level-set violation {:.3g} exceeds tolerance {:g}",
                                report.max_violation, kLevelSetTolerance));
    }
  }
  return c;
}

std::string render_config(const RunConfig& c) {
  const auto& mc = c.spec.constants;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  auto num = [](double v) { return fmt::format("{:.17g}", v); };

  out += "[constants]\n";
  line("k", num(mc.k()));
  line("c", num(mc.c()));
  line("j", std::to_string(mc.j()));
  out += "\n[initial]\n";
  line("u", render_piecewise(c.spec.u0));
  line("sigma", render_piecewise(c.spec.sigma0));
  out += "\n[boundary]\n";
  line("u", render_piecewise(c.spec.ub));
  line("sigma", render_piecewise(c.spec.sigmab));
  out += "\n[grid]\n";
  line("x_max", num(c.grid.x_max));
  line("t_max", num(c.grid.t_max));
  line("nx", std::to_string(c.grid.nx));
  line("nt", std::to_string(c.grid.nt));
  out += "\n[solver]\n";
  line("type", std::string(to_string(c.solver)));
  if (!c.output_path.empty()) line("output", c.output_path);
  out += "\n[linear]\n";
  line("ubar", num(c.linear.ubar));
  line("alpha", num(c.linear.alpha));
  line("beta", num(c.linear.beta));
  if (c.linear.gamma) line("gamma", render_piecewise(*c.linear.gamma));
  out += "\n[variational]\n";
  line("quad_points", std::to_string(c.variational.quad_points));
  line("tau_points", std::to_string(c.variational.tau_points));
  line("search_tol", num(c.variational.search_tol));
  if (c.variational.y_max) line("y_max", num(*c.variational.y_max));
  out += "\n[viscous]\n";
  line("model", std::string(name_of(c.viscous.model, kModelNames)));
  line("epsilon", num(c.viscous.mesh.epsilon));
  line("length", num(c.viscous.mesh.length));
  line("cells", std::to_string(c.viscous.mesh.nx));
  line("cfl", num(c.viscous.mesh.cfl_safety));
  line("scheme", std::string(name_of(c.viscous.mesh.scheme, kSchemeNames)));
  out += "\n[verify]\n";
  std::string eps;
  for (std::size_t i = 0; i < c.verify.eps_list.size(); ++i) {
    eps += (i ? ", " : "") + num(c.verify.eps_list[i]);
  }
  line("eps", eps);
  line("reference", std::string(name_of(c.verify.reference, kReferenceNames)));
  return out;
}

}  // namespace elastoibvp::config
