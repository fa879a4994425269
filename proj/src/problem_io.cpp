#include "facet/problem_io.hpp"

#include "facet/report.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace facet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config error at " + (where.empty() ? "/" : where) + ": " +
                    what);
}

void reject_unknown(const json& j, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where + "/" + it.key(), "unknown key");
}

double need_num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double get_num(const json& j, const std::string& where, const char* key,
               double dflt) {
  if (!j.contains(key)) return dflt;
  return need_num(j.at(key), where + "/" + key);
}

int get_int(const json& j, const std::string& where, const char* key,
            int dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(where + "/" + key, "expected an integer");
  return v.get<int>();
}

std::vector<double> get_num_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(need_num(j[i], where + "/" + std::to_string(i)));
  return out;
}

KineticModel parse_kinetic(const json& j, const std::string& where) {
  reject_unknown(j, where, {"preset", "samples"});
  if (j.contains("preset")) {
    std::string p = j.at("preset").get<std::string>();
    if (p == "rational") return KineticModel::rational();
    if (p == "tanh") return KineticModel::tanh_sat();
    fail(where + "/preset", "unknown kinetic preset '" + p + "'");
  }
  if (j.contains("samples")) {
    const json& s = j.at("samples");
    reject_unknown(s, where + "/samples", {"r", "value"});
    if (!s.contains("r") || !s.contains("value"))
      fail(where + "/samples", "needs arrays 'r' and 'value'");
    try {
      return KineticModel::sampled(get_num_list(s.at("r"), where + "/samples/r"),
                                   get_num_list(s.at("value"),
                                                where + "/samples/value"));
    } catch (const std::invalid_argument& e) {
      fail(where + "/samples", e.what());
    }
  }
  fail(where, "kinetic coefficient needs 'preset' or 'samples'");
}

SupplyField parse_supply(const json& j, const std::string& where, int dim) {
  reject_unknown(j, where, {"preset", "params", "samples"});
  try {
    if (j.contains("preset")) {
      std::string p = j.at("preset").get<std::string>();
      json params = j.value("params", json::object());
      std::string pw = where + "/params";
      if (p == "constant") {
        reject_unknown(params, pw, {"value"});
        return SupplyField::constant(get_num(params, pw, "value", 2.0), dim);
      }
      if (p == "triangular") {
        reject_unknown(params, pw, {"min", "max"});
        return SupplyField::triangular(get_num(params, pw, "min", 1.5),
                                       get_num(params, pw, "max", 2.5), dim);
      }
      if (p == "power-bump") {
        reject_unknown(params, pw, {"alpha", "beta"});
        if (dim != 1) fail(where, "power-bump is one-dimensional");
        return SupplyField::power_bump(get_num(params, pw, "alpha", 1.0),
                                       get_num(params, pw, "beta", 1.0));
      }
      if (p == "compact-bump") {
        reject_unknown(params, pw, {"base", "height"});
        if (dim != 1) fail(where, "compact-bump is one-dimensional");
        return SupplyField::compact_bump(get_num(params, pw, "base", 1.0),
                                         get_num(params, pw, "height", 0.5));
      }
      fail(where + "/preset", "unknown supply preset '" + p + "'");
    }
    if (j.contains("samples"))
      return SupplyField::sampled(get_num_list(j.at("samples"),
                                               where + "/samples"),
                                  dim);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where, "supply needs 'preset' or 'samples'");
}

GridSpec parse_grid(const json& j, const std::string& where, int dim,
                    int dflt) {
  GridSpec g{dim, dflt};
  if (j.is_number_integer()) {
    g.n = j.get<int>();
  } else {
    fail(where, "expected an integer grid size");
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return g;
}

LadderOptions parse_ladder(const json& j, const std::string& where, int dim) {
  LadderOptions opt;
  opt.solve = default_solve_options(dim);
  reject_unknown(j, where,
                 {"n0", "n_max", "stab_tol", "delta_schedule", "tol",
                  "max_sweeps", "sandwich_slack", "richardson"});
  opt.n0 = get_int(j, where, "n0", opt.n0);
  opt.n_max = get_int(j, where, "n_max", opt.n_max);
  opt.stab_tol = get_num(j, where, "stab_tol", opt.stab_tol);
  opt.solve.tol = get_num(j, where, "tol", opt.solve.tol);
  opt.solve.max_sweeps =
      get_int(j, where, "max_sweeps", int(opt.solve.max_sweeps));
  opt.sandwich_slack = get_num(j, where, "sandwich_slack", opt.sandwich_slack);
  if (j.contains("richardson")) {
    if (!j.at("richardson").is_boolean())
      fail(where + "/richardson", "expected a boolean");
    opt.richardson = j.at("richardson").get<bool>();
  }
  if (j.contains("delta_schedule")) {
    opt.schedule.deltas =
        get_num_list(j.at("delta_schedule"), where + "/delta_schedule");
    if (opt.schedule.deltas.empty())
      fail(where + "/delta_schedule", "must not be empty");
    for (std::size_t i = 1; i < opt.schedule.deltas.size(); ++i)
      if (!(opt.schedule.deltas[i] < opt.schedule.deltas[i - 1]))
        fail(where + "/delta_schedule", "must strictly decrease");
  }
  if (opt.n0 < 1 || opt.n_max < 2 * opt.n0)
    fail(where, "ladder needs n0 >= 1 and n_max >= 2*n0");
  return opt;
}

InitialDatum parse_u0(const json& j, const std::string& where) {
  reject_unknown(j, where, {"preset", "amplitude"});
  InitialDatum u;
  std::string p = j.value("preset", "sine");
  if (p == "constant") u.kind = InitialDatum::Kind::constant;
  else if (p == "sine") u.kind = InitialDatum::Kind::sine;
  else if (p == "cosine") u.kind = InitialDatum::Kind::cosine;
  else fail(where + "/preset", "unknown initial datum '" + p + "'");
  u.amplitude = get_num(j, where, "amplitude", 0.03);
  return u;
}

} // namespace

Config parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // translate byte offset into line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config parse error at line " + std::to_string(line) +
                      ":" + std::to_string(col) + ": " + e.what());
  }

  reject_unknown(j, "", {"version", "problem", "effham", "onedim",
                         "homogenize", "nonhomog", "verify"});
  Config c;
  c.version = get_int(j, "", "version", 1);
  if (c.version != kSchemaVersion)
    fail("/version", "unsupported schema version");

  if (!j.contains("problem")) fail("", "missing 'problem'");
  const json& pj = j.at("problem");
  reject_unknown(pj, "/problem", {"dim", "sigma", "m"});
  c.dim = get_int(pj, "/problem", "dim", 1);
  if (c.dim != 1 && c.dim != 2) fail("/problem/dim", "dim must be 1 or 2");
  if (!pj.contains("sigma")) fail("/problem", "missing 'sigma'");
  if (!pj.contains("m")) fail("/problem", "missing 'm'");
  c.problem.sigma = parse_supply(pj.at("sigma"), "/problem/sigma", c.dim);
  c.problem.m = parse_kinetic(pj.at("m"), "/problem/m");

  if (j.contains("effham")) {
    const json& e = j.at("effham");
    reject_unknown(e, "/effham",
                   {"lattice", "grid", "ladder", "jobs"});
    if (e.contains("lattice")) {
      const json& l = e.at("lattice");
      reject_unknown(l, "/effham/lattice", {"radius", "spacing"});
      c.effham.lattice.radius =
          get_num(l, "/effham/lattice", "radius", c.effham.lattice.radius);
      c.effham.lattice.spacing =
          get_num(l, "/effham/lattice", "spacing", c.effham.lattice.spacing);
      if (c.effham.lattice.spacing <= 0 || c.effham.lattice.radius <= 0)
        fail("/effham/lattice", "radius and spacing must be positive");
    }
    c.effham.grid = GridSpec{c.dim, c.dim == 1 ? 256 : 64};
    if (e.contains("grid"))
      c.effham.grid = parse_grid(e.at("grid"), "/effham/grid", c.dim,
                                 c.effham.grid.n);
    c.effham.ladder = e.contains("ladder")
                          ? parse_ladder(e.at("ladder"), "/effham/ladder", c.dim)
                          : [&] {
                              LadderOptions o;
                              o.solve = default_solve_options(c.dim);
                              return o;
                            }();
    c.effham.jobs = get_int(e, "/effham", "jobs", 1);
  } else {
    c.effham.grid = GridSpec{c.dim, c.dim == 1 ? 256 : 64};
    c.effham.ladder.solve = default_solve_options(c.dim);
  }

  if (j.contains("onedim")) {
    const json& o = j.at("onedim");
    reject_unknown(o, "/onedim",
                   {"p_values", "tol", "corrector_samples", "corrector_p"});
    if (o.contains("p_values"))
      c.onedim.p_values = get_num_list(o.at("p_values"), "/onedim/p_values");
    c.onedim.tol = get_num(o, "/onedim", "tol", c.onedim.tol);
    c.onedim.corrector_samples =
        get_int(o, "/onedim", "corrector_samples", c.onedim.corrector_samples);
    if (o.contains("corrector_p"))
      c.onedim.corrector_p = need_num(o.at("corrector_p"),
                                      "/onedim/corrector_p");
  }

  if (j.contains("homogenize")) {
    const json& h = j.at("homogenize");
    reject_unknown(h, "/homogenize",
                   {"u0", "T", "eps", "cells_per_period", "cfl", "cell_grid",
                    "table_spacing", "ladder", "jobs"});
    if (h.contains("u0")) c.homogenize.u0 = parse_u0(h.at("u0"), "/homogenize/u0");
    c.homogenize.T = get_num(h, "/homogenize", "T", c.homogenize.T);
    if (h.contains("eps"))
      c.homogenize.eps = get_num_list(h.at("eps"), "/homogenize/eps");
    c.homogenize.sweep.cells_per_period = get_int(
        h, "/homogenize", "cells_per_period", c.homogenize.sweep.cells_per_period);
    c.homogenize.sweep.cfl = get_num(h, "/homogenize", "cfl",
                                     c.homogenize.sweep.cfl);
    c.homogenize.sweep.cell_grid = GridSpec{1, 256};
    if (h.contains("cell_grid"))
      c.homogenize.sweep.cell_grid =
          parse_grid(h.at("cell_grid"), "/homogenize/cell_grid", 1, 256);
    c.homogenize.sweep.table_spacing = get_num(
        h, "/homogenize", "table_spacing", c.homogenize.sweep.table_spacing);
    c.homogenize.sweep.ladder =
        h.contains("ladder")
            ? parse_ladder(h.at("ladder"), "/homogenize/ladder", 1)
            : [&] {
                LadderOptions o;
                o.solve = default_solve_options(1);
                return o;
              }();
    c.homogenize.sweep.jobs = get_int(h, "/homogenize", "jobs", 1);
  } else {
    c.homogenize.sweep.ladder.solve = default_solve_options(1);
  }

  if (j.contains("nonhomog")) {
    const json& nh = j.at("nonhomog");
    reject_unknown(nh, "/nonhomog",
                   {"u0", "T", "eps", "x_probe", "t_probe", "scales",
                    "cells_per_period", "min_cells", "cfl"});
    if (nh.contains("u0")) c.nonhomog.u0 = parse_u0(nh.at("u0"), "/nonhomog/u0");
    c.nonhomog.T = get_num(nh, "/nonhomog", "T", c.nonhomog.T);
    if (nh.contains("eps"))
      c.nonhomog.eps = get_num_list(nh.at("eps"), "/nonhomog/eps");
    c.nonhomog.window.x = get_num(nh, "/nonhomog", "x_probe",
                                  c.nonhomog.window.x);
    c.nonhomog.window.t = get_num(nh, "/nonhomog", "t_probe",
                                  c.nonhomog.window.t);
    if (nh.contains("scales"))
      c.nonhomog.window.scales = get_num_list(nh.at("scales"),
                                              "/nonhomog/scales");
    c.nonhomog.cells_per_period = get_int(nh, "/nonhomog", "cells_per_period",
                                          c.nonhomog.cells_per_period);
    c.nonhomog.min_cells = get_int(nh, "/nonhomog", "min_cells",
                                   c.nonhomog.min_cells);
    c.nonhomog.cfl = get_num(nh, "/nonhomog", "cfl", c.nonhomog.cfl);
  }

  if (j.contains("verify")) {
    const json& v = j.at("verify");
    reject_unknown(v, "/verify", {"grid", "ladder", "p_values", "rel_tol"});
    c.verify.grid = GridSpec{1, 256};
    if (v.contains("grid"))
      c.verify.grid = parse_grid(v.at("grid"), "/verify/grid", 1, 256);
    c.verify.ladder = v.contains("ladder")
                          ? parse_ladder(v.at("ladder"), "/verify/ladder", 1)
                          : [&] {
                              LadderOptions o;
                              o.solve = default_solve_options(1);
                              return o;
                            }();
    if (v.contains("p_values"))
      c.verify.p_values = get_num_list(v.at("p_values"), "/verify/p_values");
    c.verify.rel_tol = get_num(v, "/verify", "rel_tol", c.verify.rel_tol);
  } else {
    c.verify.ladder.solve = default_solve_options(1);
  }

  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

nlohmann::json echo_problem(const Config& c) {
  nlohmann::json j;
  j["dim"] = c.dim;
  j["sigma"]["preset"] = c.problem.sigma.name();
  j["sigma"]["sigma_min"] = c.problem.sigma.sigma_min();
  j["sigma"]["sigma_max"] = c.problem.sigma.sigma_max();
  j["m"]["preset"] = c.problem.m.name();
  j["m"]["m0"] = c.problem.m.m0();
  j["m"]["lipschitz"] = c.problem.m.lipschitz();
  return j;
}

} // namespace facet
