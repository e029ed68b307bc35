#include "vgc/problem_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vgc {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double to_double(const std::string& t, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE) throw ParseError(where + ": expected a number, got '" + t + "'");
  return v;
}

int to_int(const std::string& t, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE) throw ParseError(where + ": expected an integer, got '" + t + "'");
  return static_cast<int>(v);
}

std::vector<double> numbers(const std::string& value, const std::string& where) {
  std::vector<double> out;
  for (const auto& t : tokens(value)) out.push_back(to_double(t, where));
  return out;
}

double one_number(const std::string& value, const std::string& where) {
  const auto v = numbers(value, where);
  if (v.size() != 1) throw ParseError(where + ": expected one number");
  return v[0];
}

int one_int(const std::string& value, const std::string& where) {
  const auto t = tokens(value);
  if (t.size() != 1) throw ParseError(where + ": expected one integer");
  return to_int(t[0], where);
}

std::string one_word(const std::string& value, const std::string& where,
                     std::initializer_list<const char*> allowed) {
  const auto t = tokens(value);
  if (t.size() != 1) throw ParseError(where + ": expected one word");
  for (const char* a : allowed)
    if (t[0] == a) return t[0];
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ParseError(where + ": '" + t[0] + "' is not one of " + list);
}

std::vector<ArcRecord> parse_loop(const std::string& value, const std::string& where) {
  std::vector<ArcRecord> loop;
  std::istringstream is(value);
  for (std::string rec; std::getline(is, rec, ';');) {
    auto t = tokens(rec);
    if (t.empty()) continue;
    ArcRecord a;
    a.kind = t[0];
    const std::size_t need = a.kind == "segment" ? 4 : a.kind == "arc" ? 5 : 0;
    if (need == 0) throw ParseError(where + ": unknown arc record '" + a.kind + "'");
    if (t.size() != need + 1)
      throw ParseError(where + ": " + a.kind + " takes " + std::to_string(need) + " numbers");
    for (std::size_t i = 1; i < t.size(); ++i) a.values.push_back(to_double(t[i], where));
    loop.push_back(std::move(a));
  }
  if (loop.empty()) throw ParseError(where + ": empty loop");
  return loop;
}

void assign(ProblemConfig& cfg, const std::string& section, const std::string& key, const std::string& value,
            const std::string& ctx) {
  const std::string where = ctx + ": " + section + "." + key;
  if (section == "body") {
    if (key == "kind") return void(cfg.body_kind = one_word(value, where, {"disk", "ellipse", "p_ball", "polygon"}));
    if (key == "params") return void(cfg.body_params = numbers(value, where));
  } else if (section == "domain") {
    if (key == "kind")
      return void(cfg.domain_kind = one_word(value, where, {"disk", "rect", "polygon", "annulus_sector", "loops"}));
    if (key == "params") return void(cfg.domain_params = numbers(value, where));
    if (key == "loop") return void(cfg.loops.push_back(parse_loop(value, where)));
  } else if (section == "functional") {
    if (key == "F") return void(cfg.f_kind = one_word(value, where, {"half_square", "quadratic"}));
    if (key == "F_params") return void(cfg.f_params = numbers(value, where));
    if (key == "g") return void(cfg.g_kind = one_word(value, where, {"linear", "quadratic"}));
    if (key == "c") return void(cfg.c = one_number(value, where));
    if (key == "tau") return void(cfg.tau = one_number(value, where));
  } else if (section == "grid") {
    if (key == "cells") return void(cfg.cells = one_int(value, where));
    if (key == "bbox") {
      const auto v = numbers(value, where);
      if (v.size() != 4) throw ParseError(where + ": expected xmin xmax ymin ymax");
      cfg.bbox = std::array<double, 4>{v[0], v[1], v[2], v[3]};
      return;
    }
  } else if (section == "solver") {
    if (key == "method")
      return void(cfg.method = one_word(value, where, {"projected_newton", "projected_gradient", "penalized"}));
    if (key == "max_iters") return void(cfg.max_iters = one_int(value, where));
    if (key == "tol") return void(cfg.tol = one_number(value, where));
    if (key == "eps") return void(cfg.eps = one_number(value, where));
    if (key == "delta") return void(cfg.delta = one_number(value, where));
    if (key == "contact_tol") return void(cfg.contact_tol = one_number(value, where));
    if (key == "smoothing_levels") return void(cfg.smoothing_levels = one_int(value, where));
  } else if (section == "verify") {
    if (key == "refine") return void(cfg.refine = one_int(value, where));
  } else {
    throw ParseError(ctx + ": unknown section '" + section + "'");
  }
  throw ParseError(ctx + ": unknown key '" + key + "' in section [" + section + "]");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + format_double(x);
  return s;
}

void require_count(const std::vector<double>& v, std::size_t n, const std::string& what) {
  if (v.size() != n) throw InvalidProblem(what + " expects " + std::to_string(n) + " parameters");
}

std::vector<Vec2> points(const std::vector<double>& v, const std::string& what) {
  if (v.size() < 6 || v.size() % 2 != 0) throw InvalidProblem(what + " expects at least three x y pairs");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < v.size(); i += 2) out.emplace_back(v[i], v[i + 1]);
  return out;
}

}  // namespace

ProblemConfig parse_problem(std::istream& in, const std::string& source) {
  ProblemConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(ctx + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "body" && section != "domain" && section != "functional" && section != "grid" &&
          section != "solver" && section != "verify")
        throw ParseError(ctx + ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(ctx + ": expected key = value");
    if (section.empty()) throw ParseError(ctx + ": key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    assign(cfg, section, key, trim(line.substr(eq + 1)), ctx);
  }
  return cfg;
}

ProblemConfig load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return parse_problem(in, path);
}

std::string dump_problem(const ProblemConfig& cfg) {
  std::ostringstream os;
  os << "[body]\nkind = " << cfg.body_kind << "\nparams = " << join(cfg.body_params) << "\n\n";
  os << "[domain]\nkind = " << cfg.domain_kind << "\n";
  if (!cfg.domain_params.empty()) os << "params = " << join(cfg.domain_params) << "\n";
  for (const auto& loop : cfg.loops) {
    os << "loop =";
    for (std::size_t i = 0; i < loop.size(); ++i) os << (i ? "; " : " ") << loop[i].kind << " " << join(loop[i].values);
    os << "\n";
  }
  os << "\n[functional]\nF = " << cfg.f_kind << "\n";
  if (!cfg.f_params.empty()) os << "F_params = " << join(cfg.f_params) << "\n";
  os << "g = " << cfg.g_kind << "\nc = " << format_double(cfg.c) << "\ntau = " << format_double(cfg.tau) << "\n\n";
  os << "[grid]\ncells = " << cfg.cells << "\n";
  if (cfg.bbox) os << "bbox = " << join({(*cfg.bbox)[0], (*cfg.bbox)[1], (*cfg.bbox)[2], (*cfg.bbox)[3]}) << "\n";
  os << "\n[solver]\nmethod = " << cfg.method << "\nmax_iters = " << cfg.max_iters
     << "\ntol = " << format_double(cfg.tol) << "\neps = " << format_double(cfg.eps)
     << "\ndelta = " << format_double(cfg.delta) << "\ncontact_tol = " << format_double(cfg.contact_tol)
     << "\nsmoothing_levels = " << cfg.smoothing_levels << "\n\n";
  os << "[verify]\nrefine = " << cfg.refine << "\n";
  return os.str();
}

void apply_override(ProblemConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ParseError("override '" + assignment + "': expected section.key=value");
  assign(cfg, trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
         trim(assignment.substr(eq + 1)), "override");
}

ConvexBody build_body(const ProblemConfig& cfg) {
  const auto& p = cfg.body_params;
  if (cfg.body_kind == "disk") {
    require_count(p, 1, "body disk");
    return ConvexBody::disk(p[0]);
  }
  if (cfg.body_kind == "ellipse") {
    require_count(p, 2, "body ellipse");
    return ConvexBody::ellipse(p[0], p[1]);
  }
  if (cfg.body_kind == "p_ball") {
    require_count(p, 1, "body p_ball");
    return ConvexBody::p_ball(p[0]);
  }
  if (cfg.body_kind == "polygon") return ConvexBody::polygon(points(p, "body polygon"));
  throw InvalidProblem("unknown body kind '" + cfg.body_kind + "'");
}

Domain build_domain(const ProblemConfig& cfg) {
  const auto& p = cfg.domain_params;
  if (cfg.domain_kind == "disk") {
    if (p.size() != 1 && p.size() != 3) throw InvalidProblem("domain disk expects r [cx cy]");
    return Domain::disk(p[0], p.size() == 3 ? Vec2(p[1], p[2]) : Vec2::Zero());
  }
  if (cfg.domain_kind == "rect") {
    require_count(p, 4, "domain rect");
    return Domain::rectangle(p[0], p[1], p[2], p[3]);
  }
  if (cfg.domain_kind == "polygon") return Domain::polygon(points(p, "domain polygon"));
  if (cfg.domain_kind == "annulus_sector") {
    require_count(p, 5, "domain annulus_sector");
    return Domain::annulus_sector(p[0], p[1], p[2], p[3], p[4]);
  }
  if (cfg.domain_kind == "loops") {
    if (cfg.loops.empty()) throw InvalidProblem("domain loops needs at least one loop");
    std::vector<std::vector<BoundaryArc>> loops;
    for (const auto& l : cfg.loops) {
      std::vector<BoundaryArc> arcs;
      for (const auto& a : l) {
        const auto& v = a.values;
        if (a.kind == "segment") arcs.push_back(BoundaryArc::segment({v[0], v[1]}, {v[2], v[3]}));
        else arcs.push_back(BoundaryArc::circular({v[0], v[1]}, v[2], v[3], v[4]));
      }
      loops.push_back(std::move(arcs));
    }
    Domain d(std::move(loops));
    d.description = "custom loops";
    return d;
  }
  throw InvalidProblem("unknown domain kind '" + cfg.domain_kind + "'");
}

FunctionalSpec build_functional(const ProblemConfig& cfg) {
  using FK = FunctionalSpec::FKind;
  using GK = FunctionalSpec::GKind;
  Mat2 A = Mat2::Identity();
  FK fk = FK::half_square;
  if (cfg.f_kind == "quadratic") {
    require_count(cfg.f_params, 3, "functional quadratic F");
    fk = FK::quadratic;
    A << cfg.f_params[0], cfg.f_params[1], cfg.f_params[1], cfg.f_params[2];
  }
  const GK gk = cfg.g_kind == "quadratic" ? GK::quadratic : GK::linear;
  return FunctionalSpec::make(fk, A, gk, gk == GK::quadratic ? cfg.c : 0.0, cfg.tau);
}

Grid build_grid(const ProblemConfig& cfg, const Domain& domain) {
  if (cfg.cells < 4) throw InvalidProblem("grid needs at least 4 cells per side");
  if (cfg.bbox) {
    const auto& b = *cfg.bbox;
    if (!(b[1] > b[0] && b[3] > b[2])) throw InvalidProblem("grid bbox is empty");
    return Grid::covering({b[0], b[2]}, {b[1], b[3]}, cfg.cells);
  }
  return Grid::covering(domain.bbox_min(), domain.bbox_max(), cfg.cells);
}

Problem build_problem(const ProblemConfig& cfg) {
  Domain domain = build_domain(cfg);
  ConvexBody body = build_body(cfg);
  FunctionalSpec fs = build_functional(cfg);
  fs.validate();
  if (cfg.eps < 0.0) throw InvalidProblem("eps must be nonnegative");
  if (!(cfg.delta > 0.0)) throw InvalidProblem("delta must be positive");
  Grid grid = build_grid(cfg, domain);
  return Problem{std::move(domain), std::move(body), fs, grid, cfg.eps};
}

SolverConfig build_solver_config(const ProblemConfig& cfg) {
  SolverConfig s;
  s.method = cfg.method == "projected_gradient" ? SolverConfig::Method::projected_gradient
                                                : SolverConfig::Method::projected_newton;
  if (cfg.max_iters < 1) throw InvalidProblem("max_iters must be positive");
  if (!(cfg.tol > 0.0)) throw InvalidProblem("tol must be positive");
  s.max_iters = cfg.max_iters;
  s.tol = cfg.tol;
  s.contact_tol = cfg.contact_tol;
  return s;
}

}  // namespace vgc
