#include "kacforge/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "kacforge/corpus.hpp"
#include "kacforge/errors.hpp"

namespace kacforge {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// ---- JSON plumbing ---------------------------------------------------------

std::pair<int, int> line_column(const std::string &text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json read_json(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line x, column y: " prefix.
    if (auto p = msg.find(": "); p != std::string::npos && msg.rfind("[json.exception", 0) == 0)
      msg = msg.substr(p + 2);
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

const json &field(const json &j, const char *key, const std::string &ctx) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(ctx + ": missing field '" + key + "'");
  return j.at(key);
}

template <class T> T as(const json &j, const std::string &ctx) {
  try {
    return j.get<T>();
  } catch (const json::exception &e) {
    throw ParseError(ctx + ": wrong type (" + std::string(j.type_name()) + ")");
  }
}

std::string object_kind(const json &j, const std::string &ctx) {
  return as<std::string>(field(j, "object", ctx), ctx + ".object");
}

std::string resolve(const std::string &base_dir, const std::string &path) {
  const fs::path p(path);
  return p.is_absolute() ? path : (fs::path(base_dir) / p).lexically_normal().string();
}

/// "corpus:<name>" names a built-in pair; anything else is a file path.
std::string resolve_pair_path(const std::string &s, const std::string &base_dir) {
  return s.rfind("corpus:", 0) == 0 ? s : resolve(base_dir, s);
}

std::string dir_of(const std::string &path) {
  const auto d = fs::path(path).parent_path().string();
  return d.empty() ? "." : d;
}

// ---- elements ---------------------------------------------------------------

int max_point(const std::string &s) {
  int best = 0, cur = 0;
  bool in = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur = cur * 10 + (c - '0');
      in = true;
    } else {
      if (in)
        best = std::max(best, cur);
      cur = 0;
      in = false;
    }
  }
  return in ? std::max(best, cur) : best;
}

Elem resolve_element(const FiniteGroup &g, const json &v, const std::string &ctx) {
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i < 0 || i >= g.order())
      throw ValidationError(ctx + ": element index " + std::to_string(i) + " out of range");
    return static_cast<Elem>(i);
  }
  const auto s = as<std::string>(v, ctx);
  if (auto x = g.find_label(s))
    return *x;
  if (!s.empty() && s.front() == '(') {
    try {
      const int degree = std::max(1, max_point(s));
      if (auto x = g.find_label(format_cycles(parse_cycles(s, degree))))
        return *x;
    } catch (const Error &) {
    }
  }
  throw ValidationError(ctx + ": no element '" + s + "' in the group");
}

std::vector<Elem> resolve_elements(const FiniteGroup &g, const json &v, const std::string &ctx) {
  if (!v.is_array())
    throw ParseError(ctx + ": expected an array");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(resolve_element(g, v[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

/// A map from the elements of `from` to elements of `to`, given either as an
/// array in element order or as an object keyed by labels.
std::vector<Elem> resolve_map(const FiniteGroup &from, const FiniteGroup &to, const json &v,
                              const std::string &ctx) {
  std::vector<Elem> out(from.order(), -1);
  if (v.is_array()) {
    if (static_cast<int>(v.size()) != from.order())
      throw ValidationError(ctx + ": expected " + std::to_string(from.order()) + " images");
    for (int i = 0; i < from.order(); ++i)
      out[i] = resolve_element(to, v[i], ctx + "[" + std::to_string(i) + "]");
    return out;
  }
  if (!v.is_object())
    throw ParseError(ctx + ": expected an array or object");
  for (const auto &[k, img] : v.items())
    out[resolve_element(from, json(k), ctx)] = resolve_element(to, img, ctx + "." + k);
  for (int i = 0; i < from.order(); ++i)
    if (out[i] < 0)
      throw ValidationError(ctx + ": no image for element " + from.label(i));
  return out;
}

// ---- groups -----------------------------------------------------------------

FiniteGroup named_group(const std::string &name, const std::string &ctx) {
  auto arg = [&](std::size_t at) {
    try {
      return std::stoi(name.substr(at));
    } catch (const std::exception &) {
      throw ParseError(ctx + ": bad group name '" + name + "'");
    }
  };
  if (name == "S3")
    return symmetric_group(3);
  if (name == "S4")
    return symmetric_group(4);
  if (name == "A4")
    return alternating_group(4);
  if (name == "Q8")
    return quaternion_group();
  if (name == "trivial")
    return trivial_group();
  if (name.rfind("cyclic:", 0) == 0)
    return cyclic_group(arg(7));
  if (name.rfind("dihedral:", 0) == 0)
    return dihedral_group(arg(9));
  if (name.rfind("symmetric:", 0) == 0)
    return symmetric_group(arg(10));
  if (name.rfind("alternating:", 0) == 0)
    return alternating_group(arg(12));
  if (name.rfind("SL:", 0) == 0) {
    const auto colon = name.find(':', 3);
    if (colon == std::string::npos)
      throw ParseError(ctx + ": SL needs 'SL:n:p'");
    return special_linear_group(std::stoi(name.substr(3, colon - 3)), std::stoll(name.substr(colon + 1)));
  }
  throw ParseError(ctx + ": unknown group name '" + name + "'");
}

LoadedGroup group_from_json(const json &j, const std::string &ctx, const SizeCaps &caps) {
  const auto kind = as<std::string>(field(j, "kind", ctx), ctx + ".kind");
  LoadedGroup out;
  if (kind == "cayley") {
    const auto &t = field(j, "table", ctx);
    if (!t.is_array())
      throw ParseError(ctx + ".table: expected an array of rows");
    if (static_cast<long long>(t.size()) > caps.cayley_table)
      throw SizeBound(ctx + ": Cayley table of order " + std::to_string(t.size()) +
                      " exceeds the cap " + std::to_string(caps.cayley_table));
    std::vector<std::string> labels;
    if (j.contains("labels"))
      labels = as<std::vector<std::string>>(j.at("labels"), ctx + ".labels");
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto &row = t[i];
      if (!row.is_array() || row.size() != t.size())
        throw ValidationError(ctx + ".table: row " + std::to_string(i) + " has the wrong length");
      std::vector<Elem> r;
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].is_number_integer()) {
          r.push_back(row[k].get<int>());
        } else {
          const auto s = as<std::string>(row[k], ctx + ".table");
          const auto it = std::find(labels.begin(), labels.end(), s);
          if (it == labels.end())
            throw ValidationError(ctx + ".table: unknown label '" + s + "'");
          r.push_back(static_cast<Elem>(it - labels.begin()));
        }
      }
      rows.push_back(std::move(r));
    }
    out.group = FiniteGroup::from_cayley(rows, labels, GroupSource::cayley);
  } else if (kind == "perm") {
    const int degree = as<int>(field(j, "degree", ctx), ctx + ".degree");
    std::vector<Permutation> gens;
    for (const auto &s : as<std::vector<std::string>>(field(j, "generators", ctx), ctx + ".generators"))
      gens.push_back(parse_cycles(s, degree));
    out.group = from_permutations(degree, gens, static_cast<std::size_t>(caps.group_order));
    out.degree = degree;
  } else if (kind == "matmod") {
    const auto modulus = as<long long>(field(j, "modulus", ctx), ctx + ".modulus");
    const auto gens = as<std::vector<IntMatrix>>(field(j, "generators", ctx), ctx + ".generators");
    out.group = from_matrices_mod(modulus, gens, static_cast<std::size_t>(caps.group_order),
                                  static_cast<std::size_t>(caps.cayley_table));
  } else if (kind == "named") {
    out.group = named_group(as<std::string>(field(j, "name", ctx), ctx + ".name"), ctx);
  } else {
    throw ParseError(ctx + ": unknown group kind '" + kind + "'");
  }
  if (out.group.order() > caps.cayley_table)
    throw SizeBound(ctx + ": group of order " + std::to_string(out.group.order()) +
                    " exceeds the table cap");
  return out;
}

/// A group given inline, by path, or as a named group ("S3").
LoadedGroup group_ref(const json &v, const std::string &base_dir, const std::string &ctx,
                      const SizeCaps &caps) {
  if (v.is_object()) {
    auto g = group_from_json(v, ctx, caps);
    g.path = ctx;
    return g;
  }
  const auto s = as<std::string>(v, ctx);
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json")
    return load_group(resolve(base_dir, s), caps);
  LoadedGroup g;
  g.group = named_group(s, ctx);
  g.path = s;
  return g;
}

// ---- pairs ------------------------------------------------------------------

MatchedPair corpus_pair(const std::string &name) {
  using namespace corpus;
  static const std::map<std::string, MatchedPair (*)()> table = {
      {"s3_z2_z3", s3_z2_z3},         {"s3_z3_z2", s3_z3_z2},
      {"s4_s3_z4", s4_s3_z4},         {"s4_z4_s3", s4_z4_s3},
      {"a4_z3_v4", a4_z3_v4},         {"s3_on_z7", s3_on_z7},
      {"lambda_deformed", lambda_deformed}, {"quotient_deformed", quotient_deformed},
      {"s3_conj_z3", s3_conj_z3},
  };
  const auto it = table.find(name);
  if (it == table.end())
    throw ValidationError("unknown corpus pair '" + name + "'");
  return it->second();
}

LoadedPair pair_from_json(const json &j, const std::string &path, const SizeCaps &caps);

LoadedPair pair_ref(const json &v, const std::string &base_dir, const std::string &ctx,
                    const SizeCaps &caps) {
  if (v.is_object())
    return pair_from_json(v, ctx, caps);
  return load_pair(resolve_pair_path(as<std::string>(v, ctx), base_dir), caps);
}

LoadedPair pair_from_json(const json &j, const std::string &path, const SizeCaps &caps) {
  const std::string ctx = path;
  const std::string dir = dir_of(path);
  LoadedPair out;
  out.path = path;
  if (j.contains("builtin")) {
    const auto name = as<std::string>(j.at("builtin"), ctx + ".builtin");
    out.pair = corpus_pair(name);
    out.provenance = "builtin " + name;
    return out;
  }
  if (j.contains("recipe")) {
    const auto recipe = as<std::string>(j.at("recipe"), ctx + ".recipe");
    if (recipe == "lambda") {
      const auto base = pair_ref(field(j, "base", ctx), dir, ctx + ".base", caps);
      const auto lambda = generated_subgroup(
          base.pair.gamma(), resolve_elements(base.pair.gamma(), field(j, "lambda", ctx), ctx + ".lambda"));
      out.recipe = lambda_recipe(base.pair, lambda);
      out.provenance = "lambda recipe on " + base.path;
    } else if (recipe == "quotient") {
      const auto g0 = group_ref(field(j, "gamma0", ctx), dir, ctx + ".gamma0", caps);
      const auto g = group_ref(field(j, "g", ctx), dir, ctx + ".g", caps);
      const auto q = resolve_map(g0.group, g.group, field(j, "q", ctx), ctx + ".q");
      out.recipe = quotient_recipe(g0.group, g.group, q);
      out.provenance = "quotient recipe " + g0.path + " -> " + g.path;
    } else if (recipe == "chi_G" || recipe == "chi_Gamma") {
      const auto base = pair_ref(field(j, "base", ctx), dir, ctx + ".base", caps);
      const bool on_g = recipe == "chi_G";
      const auto &from = on_g ? base.pair.g() : base.pair.gamma();
      const auto &to = on_g ? base.pair.gamma() : base.pair.g();
      out.recipe = DeformationRecipe{base.pair, resolve_map(from, to, field(j, "chi", ctx), ctx + ".chi")};
      out.provenance = recipe + " on " + base.path;
    } else if (recipe == "conjugation") {
      const auto g = group_ref(field(j, "group", ctx), dir, ctx + ".group", caps);
      const auto span =
          generated_subgroup(g.group, resolve_elements(g.group, field(j, "gamma", ctx), ctx + ".gamma"));
      out.pair = conjugation_pair(g.group, span);
      out.provenance = "conjugation action inside " + g.path;
      return out;
    } else {
      throw ParseError(ctx + ": unknown recipe '" + recipe + "'");
    }
    // Crossed homomorphisms on G need beta trivial; on Gamma, alpha trivial.
    const auto &r = *out.recipe;
    const bool on_gamma = recipe == "chi_Gamma" || (recipe == "quotient");
    if (on_gamma) {
      if (auto w = crossed_hom_violation_Gamma(r.base, r.chi))
        throw NotCrossedHom(ctx + ": " + *w);
      out.pair = deform_by_chi_Gamma(r.base, r.chi);
    } else {
      if (auto w = crossed_hom_violation_G(r.base, r.chi))
        throw NotCrossedHom(ctx + ": " + *w);
      out.pair = deform_by_chi_G(r.base, r.chi);
    }
    return out;
  }
  if (j.contains("ambient")) {
    const auto h = group_ref(j.at("ambient"), dir, ctx + ".ambient", caps);
    const auto gamma = generated_subgroup(
        h.group, resolve_elements(h.group, field(j, "gamma", ctx), ctx + ".gamma"));
    const auto g = generated_subgroup(h.group, resolve_elements(h.group, field(j, "g", ctx), ctx + ".g"));
    out.pair = derive_actions(h.group, gamma, g);
    out.provenance = "factorization of " + h.path;
    return out;
  }
  // Explicit actions: alpha[r] lists alpha_r(x) over G, beta[x] lists beta_x(r) over Gamma.
  const auto gamma = group_ref(field(j, "gamma", ctx), dir, ctx + ".gamma", caps);
  const auto g = group_ref(field(j, "g", ctx), dir, ctx + ".g", caps);
  const int nr = gamma.group.order(), ng = g.group.order();
  std::vector<Elem> alpha(static_cast<std::size_t>(nr) * ng), beta(static_cast<std::size_t>(ng) * nr);
  if (j.contains("alpha")) {
    const auto &a = j.at("alpha");
    if (!a.is_array() || static_cast<int>(a.size()) != nr)
      throw ValidationError(ctx + ".alpha: expected one row per element of Gamma");
    for (int r = 0; r < nr; ++r) {
      const auto row = resolve_map(g.group, g.group, a[r], ctx + ".alpha[" + std::to_string(r) + "]");
      std::copy(row.begin(), row.end(), alpha.begin() + static_cast<std::ptrdiff_t>(r) * ng);
    }
  } else {
    for (int r = 0; r < nr; ++r)
      for (int x = 0; x < ng; ++x)
        alpha[static_cast<std::size_t>(r) * ng + x] = x;
  }
  if (j.contains("beta")) {
    const auto &b = j.at("beta");
    if (!b.is_array() || static_cast<int>(b.size()) != ng)
      throw ValidationError(ctx + ".beta: expected one row per element of G");
    for (int x = 0; x < ng; ++x) {
      const auto row =
          resolve_map(gamma.group, gamma.group, b[x], ctx + ".beta[" + std::to_string(x) + "]");
      std::copy(row.begin(), row.end(), beta.begin() + static_cast<std::ptrdiff_t>(x) * nr);
    }
  } else {
    for (int x = 0; x < ng; ++x)
      for (int r = 0; r < nr; ++r)
        beta[static_cast<std::size_t>(x) * nr + r] = r;
  }
  out.pair = MatchedPair::make(gamma.group, g.group, std::move(alpha), std::move(beta));
  out.provenance = "explicit actions on " + gamma.path + ", " + g.path;
  return out;
}

// ---- rings ------------------------------------------------------------------

FusionRing ring_from_json(const json &j, const std::string &path, const SizeCaps &caps) {
  const std::string ctx = path;
  if (j.contains("builtin"))
    return builtin_ring(as<std::string>(j.at("builtin"), ctx + ".builtin"), dir_of(path), caps);
  FusionRing r;
  r.name = j.contains("name") ? as<std::string>(j.at("name"), ctx + ".name") : path;
  r.labels = as<std::vector<std::string>>(field(j, "labels", ctx), ctx + ".labels");
  const int n = r.size();
  if (n == 0)
    throw ValidationError(ctx + ": a ring needs at least one label");
  auto index = [&](const json &v, const std::string &c) {
    const auto s = as<std::string>(v, c);
    const auto it = std::find(r.labels.begin(), r.labels.end(), s);
    if (it == r.labels.end())
      throw ValidationError(c + ": unknown label '" + s + "'");
    return static_cast<int>(it - r.labels.begin());
  };
  r.unit = index(field(j, "unit", ctx), ctx + ".unit");
  r.dual.assign(n, -1);
  const auto &d = field(j, "dual", ctx);
  if (!d.is_object())
    throw ParseError(ctx + ".dual: expected an object label -> label");
  for (const auto &[k, v] : d.items())
    r.dual[index(json(k), ctx + ".dual")] = index(v, ctx + ".dual." + k);
  for (int x = 0; x < n; ++x)
    if (r.dual[x] < 0)
      throw ValidationError(ctx + ".dual: no dual for " + r.labels[x]);
  r.dims = as<std::vector<double>>(field(j, "dims", ctx), ctx + ".dims");
  if (static_cast<int>(r.dims.size()) != n)
    throw ValidationError(ctx + ".dims: one dimension per label expected");
  r.fusion.assign(static_cast<std::size_t>(n) * n, {});
  r.overflow.assign(static_cast<std::size_t>(n) * n, 0);
  const auto &f = field(j, "fusion", ctx);
  if (!f.is_array())
    throw ParseError(ctx + ".fusion: expected [x, y, z, N] rows");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string c = ctx + ".fusion[" + std::to_string(i) + "]";
    if (!f[i].is_array() || f[i].size() != 4)
      throw ParseError(c + ": expected [x, y, z, N]");
    const int x = index(f[i][0], c), y = index(f[i][1], c), z = index(f[i][2], c);
    const int m = as<int>(f[i][3], c);
    if (m < 0)
      throw ValidationError(c + ": negative multiplicity");
    if (m > 0)
      r.fusion[static_cast<std::size_t>(x) * n + y].emplace_back(z, m);
  }
  for (auto &p : r.fusion)
    std::sort(p.begin(), p.end());
  const auto check = check_ring(r);
  if (!check.ok())
    throw ValidationError(ctx + ": " + check.failures.front());
  return r;
}

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_seed(const std::string &s, const std::string &ctx) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size())
      throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    throw ParseError(ctx + ": invalid seed '" + s + "'");
  }
}

RunConfig config_from_json(const json &j, const std::string &ctx) {
  RunConfig c;
  if (j.contains("seed")) {
    const auto &s = j.at("seed");
    c.seed = s.is_string() ? parse_seed(s.get<std::string>(), ctx + ".seed")
                           : as<std::uint64_t>(s, ctx + ".seed");
  }
  if (j.contains("tolerances")) {
    const auto &t = j.at("tolerances");
    if (t.contains("equality"))
      c.tolerances.equality = as<double>(t.at("equality"), ctx + ".tolerances.equality");
    if (t.contains("integer-residual"))
      c.tolerances.integer_residual = as<double>(t.at("integer-residual"), ctx + ".tolerances.integer-residual");
    if (t.contains("axiom"))
      c.tolerances.axiom = as<double>(t.at("axiom"), ctx + ".tolerances.axiom");
  }
  if (j.contains("caps")) {
    const auto &k = j.at("caps");
    auto cap = [&](const char *key, int &slot) {
      if (k.contains(key))
        slot = as<int>(k.at(key), ctx + ".caps." + key);
    };
    cap("group-order", c.caps.group_order);
    cap("cayley-table", c.caps.cayley_table);
    cap("algebra-dim", c.caps.algebra_dim);
    cap("audit-unknowns", c.caps.audit_unknowns);
  }
  if (j.contains("format")) {
    const auto f = as<std::string>(j.at("format"), ctx + ".format");
    if (f == "text")
      c.format = OutputFormat::text;
    else if (f == "structured" || f == "json")
      c.format = OutputFormat::structured;
    else
      throw ValidationError(ctx + ".format: expected text or structured");
  }
  c.validate();
  return c;
}

json load_object(const std::string &path, const std::string &expected) {
  const auto j = read_json(path);
  if (!j.is_object())
    throw ParseError(path + ": top level must be an object");
  const auto kind = object_kind(j, path);
  if (kind != expected)
    throw ValidationError(path + ": expected object '" + expected + "', found '" + kind + "'");
  return j;
}

} // namespace

// ---- public loaders -------------------------------------------------------------

void RunConfig::validate() const {
  if (!(tolerances.equality > 0) || !(tolerances.integer_residual > 0) || !(tolerances.axiom > 0))
    throw ValidationError("tolerances must be positive");
  if (caps.group_order <= 0 || caps.cayley_table <= 0 || caps.algebra_dim <= 0 || caps.audit_unknowns <= 0)
    throw ValidationError("size caps must be positive");
}

RunConfig apply_environment(RunConfig config) {
  if (const char *s = std::getenv("KACFORGE_SEED"); s && *s)
    config.seed = parse_seed(s, "KACFORGE_SEED");
  return config;
}

LoadedGroup load_group(const std::string &path, const SizeCaps &caps) {
  auto g = group_from_json(load_object(path, "group"), path, caps);
  g.path = path;
  return g;
}

LoadedPair load_pair(const std::string &path, const SizeCaps &caps) {
  if (path.rfind("corpus:", 0) == 0) {
    LoadedPair p;
    p.path = path;
    p.pair = corpus_pair(path.substr(7));
    p.provenance = "builtin " + path.substr(7);
    return p;
  }
  return pair_from_json(load_object(path, "matched_pair"), path, caps);
}

LoadedRing load_ring(const std::string &path, const SizeCaps &caps) {
  return {path, ring_from_json(load_object(path, "ring"), path, caps)};
}

LoadedMeasure load_measure(const std::string &path, const SizeCaps &caps) {
  const auto j = load_object(path, "measure");
  LoadedMeasure m;
  m.path = path;
  const auto g = group_ref(field(j, "group", path), dir_of(path), path + ".group", caps);
  m.group_path = g.path;
  m.group = g.group;
  std::vector<std::string> w(g.group.order(), "0");
  const auto &ws = field(j, "weights", path);
  if (!ws.is_object())
    throw ParseError(path + ".weights: expected an object label -> weight");
  for (const auto &[k, v] : ws.items()) {
    const Elem x = resolve_element(g.group, json(k), path + ".weights");
    w[x] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  try {
    m.measure = FiniteMeasure::parse(w);
  } catch (const Error &e) {
    throw ValidationError(path + ": " + e.what());
  }
  return m;
}

RunConfig load_config(const std::string &path) {
  return config_from_json(load_object(path, "config"), path);
}

FusionRing builtin_ring(const std::string &spec, const std::string &base_dir, const SizeCaps &caps) {
  if (spec.rfind("group:", 0) == 0) {
    auto r = group_ring(load_group(resolve(base_dir, spec.substr(6)), caps).group);
    r.name = spec;
    return r;
  }
  if (spec.rfind("dual-group:", 0) == 0) {
    const auto g = load_group(resolve(base_dir, spec.substr(11)), caps).group;
    auto r = representation_ring(g, character_table(g));
    r.name = spec;
    return r;
  }
  if (spec.rfind("free-orthogonal:", 0) == 0) {
    int n = -1, cutoff = -1;
    bool silent = false;
    std::stringstream ss(spec.substr(16));
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.rfind("N=", 0) == 0)
        n = std::atoi(part.c_str() + 2);
      else if (part.rfind("cutoff=", 0) == 0)
        cutoff = std::atoi(part.c_str() + 7);
      else if (part == "silent")
        silent = true;
      else
        throw ParseError("ring '" + spec + "': unknown parameter '" + part + "'");
    }
    if (n < 2 || cutoff < 0)
      throw ValidationError("ring '" + spec + "': needs N >= 2 and cutoff >= 0");
    return free_orthogonal_ring(n, cutoff, silent);
  }
  throw ParseError("unknown built-in ring '" + spec + "'");
}

Inputs parse_inputs(const std::vector<std::string> &paths, const RunConfig &base) {
  Inputs in;
  in.config = base;
  // Config files first so their caps apply to everything else.
  std::vector<std::pair<std::string, json>> docs;
  for (const auto &p : paths) {
    if (p.rfind("corpus:", 0) == 0) {
      docs.emplace_back(p, json());
      continue;
    }
    auto j = read_json(p);
    if (!j.is_object())
      throw ParseError(p + ": top level must be an object");
    if (object_kind(j, p) == "config")
      in.config = config_from_json(j, p);
    docs.emplace_back(p, std::move(j));
  }
  const auto &caps = in.config.caps;
  for (const auto &[p, j] : docs) {
    if (j.is_null()) {
      in.pairs.push_back(load_pair(p, caps));
      continue;
    }
    const auto kind = object_kind(j, p);
    if (kind == "group") {
      auto g = group_from_json(j, p, caps);
      g.path = p;
      in.groups.push_back(std::move(g));
    } else if (kind == "matched_pair") {
      in.pairs.push_back(pair_from_json(j, p, caps));
    } else if (kind == "ring") {
      in.rings.push_back({p, ring_from_json(j, p, caps)});
    } else if (kind == "measure") {
      in.measures.push_back(load_measure(p, caps));
    } else if (kind != "config") {
      throw ParseError(p + ": unknown object '" + kind + "'");
    }
  }
  return in;
}

// ---- reports ------------------------------------------------------------------

std::string to_string(Status s) {
  switch (s) {
  case Status::pass:
    return "PASS";
  case Status::fail:
    return "FAIL";
  case Status::audit_agree:
    return "AUDIT-AGREE";
  case Status::audit_disagree:
    return "AUDIT-DISAGREE";
  }
  return "?";
}

ReportSection &Report::section(const std::string &module) {
  for (auto &s : sections)
    if (s.module == module)
      return s;
  sections.push_back({module, {}});
  return sections.back();
}

ReportEntry &Report::add(const std::string &module, ReportEntry entry) {
  auto &s = section(module);
  s.entries.push_back(std::move(entry));
  return s.entries.back();
}

int Report::exit_code() const {
  bool tolerance = false;
  for (const auto &s : sections)
    for (const auto &e : s.entries) {
      if (e.status != Status::fail)
        continue;
      if (e.failure == FailureKind::tolerance)
        tolerance = true;
      else
        return 1;
    }
  return tolerance ? 2 : 0;
}

int Report::count(Status st) const {
  int n = 0;
  for (const auto &s : sections)
    for (const auto &e : s.entries)
      n += e.status == st;
  return n;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string indent_lines(const std::string &text, const std::string &pad) {
  std::string out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    out += pad + line + "\n";
  return out;
}

} // namespace

std::string Report::to_text() const {
  std::string out = "kacforge " + command + "  seed=" + hex(seed) + "\n";
  for (const auto &i : inputs)
    out += "input " + i + "\n";
  for (const auto &s : sections) {
    out += "\n[" + s.module + "]\n";
    for (const auto &e : s.entries) {
      std::string status = to_string(e.status);
      status.resize(15, ' ');
      out += "  " + status + e.name;
      if (!e.detail.empty() && e.detail.find('\n') == std::string::npos)
        out += ": " + e.detail;
      out += "\n";
      if (e.detail.find('\n') != std::string::npos)
        out += indent_lines(e.detail, "      ");
      for (const auto &[k, v] : e.residuals)
        out += "      residual " + k + " = " + sci(v) + "\n";
      if (!e.witness.empty())
        out += indent_lines("witness: " + e.witness, "      ");
    }
  }
  out += "\nsummary: " + std::to_string(count(Status::pass)) + " PASS, " +
         std::to_string(count(Status::fail)) + " FAIL, " + std::to_string(count(Status::audit_agree)) +
         " AUDIT-AGREE, " + std::to_string(count(Status::audit_disagree)) +
         " AUDIT-DISAGREE; exit " + std::to_string(exit_code()) + "\n";
  return out;
}

std::string Report::to_json() const {
  ojson doc;
  doc["format"] = "kacforge-report";
  doc["version"] = 1;
  doc["command"] = command;
  doc["seed"] = hex(seed);
  doc["inputs"] = inputs;
  ojson secs = ojson::array();
  for (const auto &s : sections) {
    ojson js;
    js["module"] = s.module;
    ojson entries = ojson::array();
    for (const auto &e : s.entries) {
      ojson je;
      je["status"] = to_string(e.status);
      je["name"] = e.name;
      if (!e.detail.empty())
        je["detail"] = e.detail;
      if (!e.witness.empty())
        je["witness"] = e.witness;
      if (e.status == Status::fail)
        je["failure"] = e.failure == FailureKind::tolerance ? "tolerance" : "validation";
      if (!e.residuals.empty()) {
        ojson r;
        for (const auto &[k, v] : e.residuals)
          r[k] = sci(v);
        je["residuals"] = r;
      }
      entries.push_back(std::move(je));
    }
    js["entries"] = std::move(entries);
    secs.push_back(std::move(js));
  }
  doc["sections"] = std::move(secs);
  doc["summary"] = {{"PASS", count(Status::pass)},
                    {"FAIL", count(Status::fail)},
                    {"AUDIT-AGREE", count(Status::audit_agree)},
                    {"AUDIT-DISAGREE", count(Status::audit_disagree)},
                    {"exit", exit_code()}};
  return doc.dump(2) + "\n";
}

} // namespace kacforge
