#include "hausdorff/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hausdorff/expr.hpp"

namespace hausdorff {

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  const auto quad_eq = [](const QuadratureSpec& a, const QuadratureSpec& b) {
    const bool trunc_eq =
        a.truncation.has_value() == b.truncation.has_value() &&
        (!a.truncation || (a.truncation->eps_low == b.truncation->eps_low &&
                           a.truncation->cap_high == b.truncation->cap_high));
    return a.node_budget == b.node_budget && a.box_axis_budget == b.box_axis_budget &&
           a.grading == b.grading && a.grading_ratio == b.grading_ratio && trunc_eq &&
           a.target_rel_tol == b.target_rel_tol;
  };
  return schema_version == o.schema_version && name == o.name && omega == o.omega &&
         source == o.source && target == o.target && family == o.family && kernel == o.kernel &&
         p == o.p && q == o.q && quad_eq(quadrature, o.quadrature) && estimator == o.estimator;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad(int line, const std::string& msg) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "line %d: %s", line, msg.c_str());
  throw Error(Errc::config_invalid, buf);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_real(const std::string& v, int line) {
  if (v == "inf") return kInf;
  if (v == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) bad(line, "bad number '" + v + "'");
    return x;
  } catch (const std::exception&) {
    bad(line, "bad number '" + v + "'");
  }
}

long parse_int(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) bad(line, "bad integer '" + v + "'");
    return x;
  } catch (const std::exception&) {
    bad(line, "bad integer '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad(line, "bad boolean '" + v + "'");
}

std::vector<double> parse_reals(const std::string& v, int line) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(parse_real(tok, line));
  return out;
}

std::vector<long> parse_ints(const std::string& v, int line) {
  std::vector<long> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(parse_int(tok, line));
  return out;
}

std::vector<std::string> parse_words(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

void apply_space_key(SpaceConfig& s, const std::string& key, const std::string& value, int line) {
  if (key == "carrier") s.carrier = value;
  else if (key == "lo") s.lo = parse_real(value, line);
  else if (key == "hi") s.hi = parse_real(value, line);
  else if (key == "open") s.open = parse_bool(value, line);
  else if (key == "box_lo") s.box_lo = parse_reals(value, line);
  else if (key == "box_hi") s.box_hi = parse_reals(value, line);
  else if (key == "indices") s.indices = parse_ints(value, line);
  else if (key == "weights") s.weights = parse_reals(value, line);
  else if (key == "order") s.order = static_cast<int>(parse_int(value, line));
  else if (key == "measure") s.measure = value;
  else bad(line, "unknown space key '" + key + "'");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool saw_version = false;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(line, "malformed section header");
      section = s.substr(1, s.size() - 2);
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) bad(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) bad(line, "empty key or value");

    if (section.empty()) {
      if (key == "schema_version") {
        if (parse_int(value, line) != 1) bad(line, "schema_version must be 1");
        saw_version = true;
      } else if (key == "name") {
        c.name = value;
      } else {
        bad(line, "unknown top-level key '" + key + "'");
      }
    } else if (section == "omega") {
      apply_space_key(c.omega, key, value, line);
    } else if (section == "source") {
      apply_space_key(c.source, key, value, line);
    } else if (section == "target") {
      apply_space_key(c.target, key, value, line);
    } else if (section == "family") {
      if (key == "kind") c.family.kind = value;
      else if (key == "dim") c.family.dim = static_cast<int>(parse_int(value, line));
      else if (key == "omega_index") c.family.omega_index = parse_ints(value, line);
      else if (key == "multipliers") c.family.multipliers = parse_ints(value, line);
      else if (key == "matrices") {
        c.family.matrices.clear();
        std::istringstream blocks(value);
        std::string block;
        while (std::getline(blocks, block, '|')) {
          const auto entries = parse_reals(block, line);
          if (entries.empty()) bad(line, "empty matrix block");
          c.family.matrices.push_back(entries);
        }
      } else bad(line, "unknown family key '" + key + "'");
    } else if (section == "kernel") {
      if (key == "expr") c.kernel.expr = value;
      else if (key == "builtin") c.kernel.builtin = value;
      else if (key == "values") c.kernel.values = parse_reals(value, line);
      else if (key == "one_variable") c.kernel.one_variable = parse_bool(value, line);
      else if (key == "nonnegative") c.kernel.nonnegative = parse_bool(value, line);
      else bad(line, "unknown kernel key '" + key + "'");
    } else if (section == "exponents") {
      if (key == "p") c.p = parse_real(value, line);
      else if (key == "q") c.q = parse_real(value, line);
      else bad(line, "unknown exponents key '" + key + "'");
    } else if (section == "quadrature") {
      if (key == "node_budget") c.quadrature.node_budget = static_cast<int>(parse_int(value, line));
      else if (key == "box_axis_budget")
        c.quadrature.box_axis_budget = static_cast<int>(parse_int(value, line));
      else if (key == "grading") {
        if (value == "uniform") c.quadrature.grading = Grading::uniform;
        else if (value == "geometric") c.quadrature.grading = Grading::geometric;
        else bad(line, "grading must be uniform or geometric");
      } else if (key == "grading_ratio") c.quadrature.grading_ratio = parse_real(value, line);
      else if (key == "eps_low") {
        if (!c.quadrature.truncation) c.quadrature.truncation = Truncation{};
        c.quadrature.truncation->eps_low = parse_real(value, line);
      } else if (key == "cap_high") {
        if (!c.quadrature.truncation) c.quadrature.truncation = Truncation{};
        c.quadrature.truncation->cap_high = parse_real(value, line);
      } else if (key == "rel_tol") c.quadrature.target_rel_tol = parse_real(value, line);
      else bad(line, "unknown quadrature key '" + key + "'");
    } else if (section == "estimator") {
      if (key == "families") c.estimator.families = parse_words(value);
      else if (key == "budget") c.estimator.budget = static_cast<int>(parse_int(value, line));
      else if (key == "seed") c.estimator.seed = static_cast<std::uint64_t>(parse_int(value, line));
      else if (key == "alpha_min") c.estimator.alpha_min = parse_real(value, line);
      else if (key == "alpha_max") c.estimator.alpha_max = parse_real(value, line);
      else if (key == "support_hi_min") c.estimator.support_hi_min = parse_real(value, line);
      else if (key == "support_hi_max") c.estimator.support_hi_max = parse_real(value, line);
      else if (key == "alpha_sweep") c.estimator.alpha_sweep = parse_reals(value, line);
      else if (key == "node_budget")
        c.estimator.node_budget = static_cast<int>(parse_int(value, line));
      else bad(line, "unknown estimator key '" + key + "'");
    } else {
      bad(line, "unknown section '" + section + "'");
    }
  }
  if (!saw_version) throw Error(Errc::config_invalid, "missing schema_version = 1");
  return c;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_invalid, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization (canonical order; parse(serialize(c)) == c)
// ---------------------------------------------------------------------------

namespace {

std::string fmt_real(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_space(std::ostringstream& os, const char* name, const SpaceConfig& s) {
  os << "[" << name << "]\n";
  os << "carrier = " << s.carrier << "\n";
  if (s.carrier == "interval") {
    os << "lo = " << fmt_real(s.lo) << "\n";
    os << "hi = " << fmt_real(s.hi) << "\n";
    os << "open = " << (s.open ? "true" : "false") << "\n";
  } else if (s.carrier == "box") {
    os << "box_lo =";
    for (double v : s.box_lo) os << " " << fmt_real(v);
    os << "\nbox_hi =";
    for (double v : s.box_hi) os << " " << fmt_real(v);
    os << "\n";
  } else if (s.carrier == "index") {
    os << "indices =";
    for (long v : s.indices) os << " " << v;
    os << "\n";
    if (!s.weights.empty()) {
      os << "weights =";
      for (double v : s.weights) os << " " << fmt_real(v);
      os << "\n";
    }
  } else if (s.carrier == "group") {
    os << "order = " << s.order << "\n";
  }
  os << "measure = " << s.measure << "\n\n";
}

}  // namespace

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "schema_version = 1\n";
  if (!c.name.empty()) os << "name = " << c.name << "\n";
  os << "\n";
  emit_space(os, "omega", c.omega);
  emit_space(os, "source", c.source);
  emit_space(os, "target", c.target);

  os << "[family]\n";
  os << "kind = " << c.family.kind << "\n";
  os << "dim = " << c.family.dim << "\n";
  if (!c.family.omega_index.empty()) {
    os << "omega_index =";
    for (long v : c.family.omega_index) os << " " << v;
    os << "\n";
  }
  if (!c.family.multipliers.empty()) {
    os << "multipliers =";
    for (long v : c.family.multipliers) os << " " << v;
    os << "\n";
  }
  if (!c.family.matrices.empty()) {
    os << "matrices = ";
    for (std::size_t i = 0; i < c.family.matrices.size(); ++i) {
      if (i > 0) os << " | ";
      for (std::size_t j = 0; j < c.family.matrices[i].size(); ++j)
        os << (j > 0 ? " " : "") << fmt_real(c.family.matrices[i][j]);
    }
    os << "\n";
  }
  os << "\n[kernel]\n";
  if (!c.kernel.expr.empty()) os << "expr = " << c.kernel.expr << "\n";
  if (!c.kernel.builtin.empty()) os << "builtin = " << c.kernel.builtin << "\n";
  if (!c.kernel.values.empty()) {
    os << "values =";
    for (double v : c.kernel.values) os << " " << fmt_real(v);
    os << "\n";
  }
  os << "one_variable = " << (c.kernel.one_variable ? "true" : "false") << "\n";
  os << "nonnegative = " << (c.kernel.nonnegative ? "true" : "false") << "\n";

  os << "\n[exponents]\n";
  os << "p = " << fmt_real(c.p) << "\n";
  os << "q = " << fmt_real(c.q) << "\n";

  os << "\n[quadrature]\n";
  os << "node_budget = " << c.quadrature.node_budget << "\n";
  os << "box_axis_budget = " << c.quadrature.box_axis_budget << "\n";
  os << "grading = " << (c.quadrature.grading == Grading::uniform ? "uniform" : "geometric")
     << "\n";
  os << "grading_ratio = " << fmt_real(c.quadrature.grading_ratio) << "\n";
  if (c.quadrature.truncation) {
    os << "eps_low = " << fmt_real(c.quadrature.truncation->eps_low) << "\n";
    os << "cap_high = " << fmt_real(c.quadrature.truncation->cap_high) << "\n";
  }
  os << "rel_tol = " << fmt_real(c.quadrature.target_rel_tol) << "\n";

  os << "\n[estimator]\n";
  if (!c.estimator.families.empty()) {
    os << "families =";
    for (const auto& f : c.estimator.families) os << " " << f;
    os << "\n";
  }
  os << "budget = " << c.estimator.budget << "\n";
  os << "seed = " << c.estimator.seed << "\n";
  os << "alpha_min = " << fmt_real(c.estimator.alpha_min) << "\n";
  os << "alpha_max = " << fmt_real(c.estimator.alpha_max) << "\n";
  os << "support_hi_min = " << fmt_real(c.estimator.support_hi_min) << "\n";
  os << "support_hi_max = " << fmt_real(c.estimator.support_hi_max) << "\n";
  if (!c.estimator.alpha_sweep.empty()) {
    os << "alpha_sweep =";
    for (double v : c.estimator.alpha_sweep) os << " " << fmt_real(v);
    os << "\n";
  }
  os << "node_budget = " << c.estimator.node_budget << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

MeasureSpace build_space(const SpaceConfig& s) {
  if (s.carrier == "interval") {
    if (s.measure != "lebesgue")
      throw Error(Errc::config_invalid, "interval carrier needs lebesgue measure");
    return MeasureSpace::lebesgue_interval(s.lo, s.hi, s.open);
  }
  if (s.carrier == "box") {
    if (s.measure != "lebesgue")
      throw Error(Errc::config_invalid, "box carrier needs lebesgue measure");
    return MeasureSpace::lebesgue_box(s.box_lo, s.box_hi);
  }
  if (s.carrier == "index") {
    if (s.measure == "counting") return MeasureSpace::counting(s.indices);
    if (s.measure == "weighted_counting")
      return MeasureSpace::weighted_counting(s.indices, s.weights);
    throw Error(Errc::config_invalid, "index carrier needs counting or weighted_counting");
  }
  if (s.carrier == "group") {
    if (s.measure != "haar")
      throw Error(Errc::config_invalid, "group carrier needs haar measure");
    return MeasureSpace::haar_cyclic(s.order);
  }
  throw Error(Errc::config_invalid, "unknown carrier '" + s.carrier + "'");
}

namespace {

MapFamily build_family(const FamilyConfig& f, MeasureSpace domain, MeasureSpace codomain) {
  if (f.kind == "scalar_dilation")
    return MapFamily::scalar_dilation(f.dim, std::move(domain), std::move(codomain));
  if (f.kind == "matrix_dilation") {
    std::vector<SmallMatrix> mats;
    for (const auto& block : f.matrices)
      mats.push_back(SmallMatrix::from_rows(f.dim, block));
    std::vector<long> idx = f.omega_index;
    if (idx.empty())
      for (std::size_t i = 0; i < mats.size(); ++i) idx.push_back(static_cast<long>(i));
    return MapFamily::matrix_dilation(std::move(idx), std::move(mats), std::move(domain),
                                      std::move(codomain));
  }
  if (f.kind == "cyclic_automorphism")
    return MapFamily::cyclic_automorphism(f.multipliers, std::move(domain), std::move(codomain));
  throw Error(Errc::config_invalid, "unknown family kind '" + f.kind + "'");
}

Kernel build_kernel(const KernelConfig& k, const MeasureSpace& omega) {
  if (!k.builtin.empty()) {
    if (k.builtin == "one") return Kernel::constant(1.0);
    throw Error(Errc::config_invalid, "unknown builtin kernel '" + k.builtin + "'");
  }
  if (!k.values.empty()) {
    if (!omega.discrete())
      throw Error(Errc::config_invalid, "kernel values table needs a discrete omega");
    std::vector<long> idx(omega.atom_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = omega.atom(i).idx();
    std::vector<double> vals = k.values;
    if (vals.size() != idx.size())
      throw Error(Errc::config_invalid, "kernel values table size mismatch");
    auto eval = [idx, vals](const Point& u) {
      const long key = u.idx();
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (idx[i] == key) return vals[i];
      return 0.0;
    };
    return Kernel::one_variable(eval, k.nonnegative, "table");
  }
  if (k.expr.empty()) throw Error(Errc::config_invalid, "kernel needs expr, builtin, or values");
  auto parsed = std::make_shared<Expr>(Expr::parse(k.expr));
  if (k.one_variable) {
    auto eval = [parsed](const Point& u) { return parsed->eval(u.x(), Point(0.0)); };
    return Kernel::one_variable(eval, k.nonnegative, k.expr);
  }
  auto eval = [parsed](const Point& u, const Point& x) { return parsed->eval(u.x(), x); };
  return Kernel::two_variable(eval, k.nonnegative, k.expr);
}

}  // namespace

OperatorInstance build_instance(const ScenarioConfig& c) {
  MeasureSpace omega = build_space(c.omega);
  MeasureSpace source = build_space(c.source);
  MeasureSpace target = build_space(c.target);
  MapFamily family = build_family(c.family, target, source);
  Kernel kernel = build_kernel(c.kernel, omega);
  Exponents e(c.p, c.q);
  QuadratureSpec probe = c.quadrature;
  probe.node_budget = std::min(probe.node_budget, 64);
  return OperatorInstance(std::move(omega), std::move(source), std::move(target),
                          std::move(family), std::move(kernel), e, probe);
}

std::vector<TestFamily> build_families(const ScenarioConfig& c, const OperatorInstance& op) {
  std::vector<TestFamily> out;
  const double support_lo =
      c.quadrature.truncation ? c.quadrature.truncation->eps_low : 1e-12;
  for (const std::string& name : c.estimator.families) {
    if (name == "truncated_power") {
      std::vector<double> sweep = c.estimator.alpha_sweep;
      out.push_back(TestFamily::truncated_power(
          support_lo, {c.estimator.alpha_min, c.estimator.alpha_max},
          {c.estimator.support_hi_min, c.estimator.support_hi_max}, sweep));
    } else if (name == "step_function") {
      // Quartile breakpoints over the unit part of the source interval.
      out.push_back(TestFamily::step_function({std::min(support_lo, 0.125), 0.25, 0.5, 0.75, 1.0},
                                              {0.0, 1.0}));
    } else if (name == "gaussian_bump") {
      out.push_back(TestFamily::gaussian_bump({0.05, 0.95}, {0.02, 0.5}));
    } else if (name == "grid_vector") {
      if (!op.source().discrete())
        throw Error(Errc::config_invalid, "grid_vector family needs a discrete source space");
      out.push_back(TestFamily::grid_vector(op.source().atom_count()));
    } else {
      throw Error(Errc::config_invalid, "unknown estimator family '" + name + "'");
    }
  }
  return out;
}

}  // namespace hausdorff
