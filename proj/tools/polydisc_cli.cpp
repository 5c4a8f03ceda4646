// Command-line front end: solving, stratifying, tangent-space queries, flow
// application, partition calculators, figure-grid emitters, and the property
// suites. JSON output by default, CSV via --format csv. Exit codes: 0 on
// success, 2 on usage errors, 3 on numerical failure.

#include "polydisc/flow.hpp"
#include "polydisc/json_io.hpp"
#include "polydisc/selfcheck.hpp"
#include "polydisc/strata.hpp"
#include "polydisc/viete.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace polydisc;

struct Options {
  std::string poly;
  std::string roots_arg;
  std::string mu;
  std::string kappa;
  std::string tau;
  std::string t = "0";
  std::string field = "complex";
  std::string format = "json";
  std::string out;
  std::string suite;
  double tol = 1e-8;
  uint64_t seed = 42;
  int samples = 17;
  int k = 2;
};

Field parse_field(const std::string& f) {
  if (f == "real") return Field::real;
  if (f == "complex") return Field::cplx;
  throw std::invalid_argument("--field must be real or complex");
}

MonicPoly parse_poly_arg(const Options& opt) {
  const Field field = parse_field(opt.field);
  if (!opt.poly.empty()) return poly_from_json(json::parse(opt.poly), field);
  if (!opt.roots_arg.empty()) {
    const json j = json::parse(opt.roots_arg);
    if (!j.is_array() || j.empty())
      throw std::invalid_argument("--roots must be a non-empty JSON array");
    std::vector<Complex> roots;
    for (const auto& e : j) roots.push_back(complex_from_json(e));
    return viete_map(std::move(roots), field);
  }
  throw std::invalid_argument("one of --poly or --roots is required");
}

Partition parse_partition_arg(const std::string& s, const char* flag) {
  if (s.empty()) throw std::invalid_argument(std::string(flag) + " is required");
  if (!s.empty() && s.front() == '[') return partition_from_json(json::parse(s));
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    parts.push_back(std::stoi(item));
  }
  return Partition(std::move(parts));
}

Complex parse_scalar(const std::string& s) { return complex_from_json(json::parse(s)); }

/// Flatten JSON into "path,value" CSV rows.
void flatten_json(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items())
      flatten_json(val, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << "," << j.dump() << "\n";
  }
}

void emit(const json& j, const Options& opt) {
  if (opt.format == "csv") {
    flatten_json(j, "", std::cout);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Grid emitters. Rows are computed in parallel chunks, sorted into a
// deterministic order, re-validated against their defining equation, and only
// then written.

struct GridRow {
  std::string kind;
  std::vector<double> values;
  double residual = 0.0;
  bool operator<(const GridRow& o) const {
    if (kind != o.kind) return kind < o.kind;
    return values < o.values;
  }
};

std::vector<GridRow> parallel_rows(int n, const std::function<std::vector<GridRow>(int)>& make) {
  const int workers = 4;
  std::vector<std::future<std::vector<GridRow>>> futures;
  for (int w = 0; w < workers; ++w)
    futures.push_back(std::async(std::launch::async, [&, w]() {
      std::vector<GridRow> rows;
      for (int i = w; i < n; i += workers) {
        auto part = make(i);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      return rows;
    }));
  std::vector<GridRow> all;
  for (auto& f : futures) {
    auto part = f.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

void write_grid_csv(const std::vector<GridRow>& rows, const std::string& header,
                    const std::string& out_path, bool with_kind) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw numerical_error("cannot open output path: " + out_path);
    os = &file;
  }
  os->precision(17);
  *os << header << "\n";
  for (const auto& r : rows) {
    if (r.residual > 1e-8)
      throw numerical_error("grid row failed its residual re-validation");
    bool first = true;
    if (with_kind) {
      *os << r.kind;
      first = false;
    }
    for (double v : r.values) {
      if (!first) *os << ",";
      *os << v;
      first = false;
    }
    *os << "\n";
  }
}

/// Tangent-line family of the quadratic discriminant parabola: points
/// (u, b, c) with c = -u b - u^2, so u^2 + b u + c = 0 exactly on a dyadic
/// grid.
void grid_parabola_tangents(const Options& opt) {
  const int n = opt.samples;
  auto rows = parallel_rows(n, [&](int i) {
    std::vector<GridRow> part;
    const double u = 0.25 * (i - n / 2);
    for (int j = 0; j < n; ++j) {
      const double b = 0.25 * (j - n / 2);
      const double c = -u * b - u * u;
      GridRow row{"", {u, b, c}, std::abs(u * u + b * u + c)};
      part.push_back(std::move(row));
    }
    return part;
  });
  write_grid_csv(rows, "u,b,c", opt.out, false);
}

/// The reduced-slice cusp (c, d) = (-3u^2, 2u^3) and its tangent lines
/// d = -u c - u^3 in the b = 0 slice.
void grid_cubic_cusp_tangents(const Options& opt) {
  const int n = opt.samples;
  auto rows = parallel_rows(n, [&](int i) {
    std::vector<GridRow> part;
    const double u = 0.25 * (i - n / 2);
    {
      const double c = -3.0 * u * u;
      const double d = 2.0 * u * u * u;
      // On the reduced discriminant curve: 4c^3 + 27d^2 = 0.
      const double resid = std::abs(4.0 * c * c * c + 27.0 * d * d);
      part.push_back({"cusp", {u, c, d}, resid});
    }
    for (int j = 0; j < n; ++j) {
      const double c = 0.25 * (j - n / 2);
      const double d = -u * c - u * u * u;
      // u is a root of z^3 + c z + d.
      const double resid = std::abs(u * u * u + c * u + d);
      part.push_back({"tangent", {u, c, d}, resid});
    }
    return part;
  });
  write_grid_csv(rows, "kind,u,c,d", opt.out, true);
}

/// Section of the quartic double-root locus by {a_1 = 0}: triangular solve
/// of P(z) = P'(z) = 0 for (a_3, a_4) with (z, a_2) free.
void grid_swallowtail(const Options& opt) {
  const int n = opt.samples;
  auto rows = parallel_rows(n, [&](int i) {
    std::vector<GridRow> part;
    const double z = 0.125 * (i - n / 2);
    for (int j = 0; j < n; ++j) {
      const double a2 = 0.25 * (j - n / 2);
      const double a3 = -4.0 * z * z * z - 2.0 * a2 * z;
      const double a4 = 3.0 * z * z * z * z + a2 * z * z;
      VecC a(4);
      a << Complex(0.0), Complex(a2), Complex(a3), Complex(a4);
      const double resid = std::abs(discriminant(MonicPoly(a)));
      part.push_back({"", {z, a2, a3, a4}, resid});
    }
    return part;
  });
  write_grid_csv(rows, "z,a2,a3,a4", opt.out, false);
}

// ---------------------------------------------------------------------------

json solve_json(const Options& opt) {
  const MonicPoly p = parse_poly_arg(opt);
  const auto sols = solve_by_tangency(p, opt.tol);
  json roots = json::array();
  for (const auto& s : sols) {
    json normal = json::array();
    for (int c = 0; c < s.hyperplane.ambient_dim(); ++c)
      normal.push_back(to_json(Complex(s.hyperplane.normals()(0, c))));
    roots.push_back(json{
        {"root", to_json(s.root)}, {"multiplicity", s.multiplicity}, {"normal", normal}});
  }
  return json{{"degree", p.degree()}, {"roots", roots}};
}

json stratify_json(const Options& opt) {
  const MonicPoly p = parse_poly_arg(opt);
  const Stratification s = mu_of(p, opt.tol);
  const StratumLabel label = stratum_label(s.mu, p.degree());
  json memberships = json::array();
  for (const auto& m : label.memberships)
    memberships.push_back(json{{"k", m.k}, {"in_Ddk", m.in_closed}, {"open_stratum", m.in_open}});
  return json{{"mu", to_json(s.mu)},
              {"roots", to_json(s.roots)},
              {"memberships", memberships},
              {"distinct_roots", s.roots.distinct_count()}};
}

json tangent_space_json(const Options& opt) {
  const MonicPoly p = parse_poly_arg(opt);
  const TangentSpace ts = stratum_tangent_space(p, opt.tol);
  return json{{"divisor", to_json(ts.divisor)},
              {"flat", to_json(ts.flat)},
              {"dimension", ts.flat.dim()},
              {"full_space", ts.full_space},
              {"ill_conditioned", ts.ill_conditioned}};
}

json flow_json(const Options& opt) {
  const MonicPoly p = parse_poly_arg(opt);
  const Complex t = parse_scalar(opt.t);
  const MonicPoly q = apply_flow(p, t);
  json j{{"poly", to_json(q)}};
  if (p.degree() >= 2) {
    const auto rep = check_flow_invariants(p, t, opt.tol);
    j["invariants"] = json{{"discriminant_drift", rep.discriminant_drift},
                           {"linear_det", to_json(rep.linear_det)},
                           {"mu_invariant", rep.mu_invariant}};
  }
  return j;
}

json check_json(const Options& opt) {
  const int samples = std::max(10, opt.samples);
  const auto results = run_suite(opt.suite, opt.seed, samples);
  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back(json{{"name", r.name}, {"pass", r.pass}, {"worst", r.worst}, {"bound", r.bound}});
    all = all && r.pass;
  }
  if (!all) throw numerical_error("suite " + opt.suite + " failed");
  return json{{"suite", opt.suite}, {"seed", opt.seed}, {"samples", samples}, {"checks", checks}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discriminant-strata geometry of monic univariate polynomials"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_poly = true) {
    if (with_poly) {
      sub->add_option("--poly", opt.poly, "polynomial JSON {\"degree\":d,\"coeffs\":[...]}");
      sub->add_option("--roots", opt.roots_arg, "JSON array of roots (repeats allowed)");
    }
    sub->add_option("--tol", opt.tol, "numerical tolerance");
    sub->add_option("--field", opt.field, "real | complex");
    sub->add_option("--format", opt.format, "json | csv");
  };

  auto* solve = app.add_subcommand("solve", "roots with their tangent hyperplanes");
  add_common(solve);
  auto* disc = app.add_subcommand("discriminant", "resultant-normalized discriminant");
  add_common(disc);
  auto* stratify = app.add_subcommand("stratify", "multiplicity partition and memberships");
  add_common(stratify);
  auto* tspace = app.add_subcommand("tangent-space", "tangent space of the multiplicity stratum");
  add_common(tspace);
  auto* tcount = app.add_subcommand("tangent-count", "number of tangent spaces through a point");
  add_common(tcount);
  tcount->add_option("--mu", opt.mu, "stratum partition, comma separated");
  auto* flow_cmd = app.add_subcommand("flow", "apply the root-translation flow");
  add_common(flow_cmd);
  flow_cmd->add_option("--t", opt.t, "flow time (number or [re,im])");
  auto* reduce_cmd = app.add_subcommand("reduce", "flow to the zero-trace slice");
  add_common(reduce_cmd);

  auto* part = app.add_subcommand("partition", "partition calculators");
  part->require_subcommand(1);
  auto add_part_opts = [&](CLI::App* sub) {
    sub->add_option("--mu", opt.mu, "partition, comma separated");
    sub->add_option("--kappa", opt.kappa, "partition, comma separated");
    sub->add_option("--tau", opt.tau, "partition, comma separated");
    sub->add_option("--format", opt.format, "json | csv");
  };
  for (const char* name : {"down1", "up1", "uplus", "gamma", "deg", "dualdim", "resdown1"})
    add_part_opts(part->add_subcommand(name));

  auto* grid = app.add_subcommand("grid", "figure-grid emitters (CSV)");
  std::string figure;
  grid->add_option("figure", figure, "parabola-tangents | cubic-cusp-tangents | swallowtail")
      ->required();
  grid->add_option("--samples", opt.samples, "grid resolution per axis");
  grid->add_option("--out", opt.out, "output path (default stdout)");

  auto* check = app.add_subcommand("check", "run a module invariant suite");
  check->add_option("--suite", opt.suite, "poly_core | partitions | viete | strata | flow")
      ->required();
  check->add_option("--seed", opt.seed, "random seed");
  check->add_option("--samples", opt.samples, "sample count per invariant");
  check->add_option("--format", opt.format, "json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      emit(solve_json(opt), opt);
    } else if (*disc) {
      const MonicPoly p = parse_poly_arg(opt);
      emit(json{{"discriminant", to_json(discriminant(p))}}, opt);
    } else if (*stratify) {
      emit(stratify_json(opt), opt);
    } else if (*tspace) {
      emit(tangent_space_json(opt), opt);
    } else if (*tcount) {
      const MonicPoly p = parse_poly_arg(opt);
      const Partition mu = parse_partition_arg(opt.mu, "--mu");
      emit(json{{"count", tangent_count_through(p, mu, opt.tol)}}, opt);
    } else if (*flow_cmd) {
      emit(flow_json(opt), opt);
    } else if (*reduce_cmd) {
      const MonicPoly p = parse_poly_arg(opt);
      const auto r = reduce(p);
      emit(json{{"poly", to_json(r.reduced)}, {"t_star", to_json(r.t_star)}}, opt);
    } else if (*part) {
      CLI::App* sub = part->get_subcommands().front();
      const std::string name = sub->get_name();
      if (name == "down1") {
        emit(to_json(down1(parse_partition_arg(opt.mu, "--mu"))), opt);
      } else if (name == "up1") {
        emit(to_json(up1(parse_partition_arg(opt.mu, "--mu"))), opt);
      } else if (name == "uplus") {
        emit(to_json(uplus(parse_partition_arg(opt.mu, "--mu"),
                           parse_partition_arg(opt.tau, "--tau"))),
             opt);
      } else if (name == "gamma") {
        emit(json{{"gamma", gamma_count(parse_partition_arg(opt.kappa, "--kappa"),
                                        parse_partition_arg(opt.tau, "--tau"))}},
             opt);
      } else if (name == "deg") {
        const Partition mu = parse_partition_arg(opt.mu, "--mu");
        emit(json{{"degree", stratum_degree(mu)}, {"dual_degree_bound", dual_degree_bound(mu)}},
             opt);
      } else if (name == "dualdim") {
        const Partition mu = parse_partition_arg(opt.mu, "--mu");
        const auto dims = dual_dimensions(mu, mu.weight());
        emit(json{{"dual_dim", dims.dual_dim}, {"gauss_dim", dims.gauss_dim}}, opt);
      } else {  // resdown1
        const Partition nu = parse_partition_arg(opt.tau, "--tau");
        const Partition mu = parse_partition_arg(opt.mu, "--mu");
        emit(json{{"count", res_down1_count(nu, mu)}}, opt);
      }
    } else if (*grid) {
      if (figure == "parabola-tangents") {
        grid_parabola_tangents(opt);
      } else if (figure == "cubic-cusp-tangents") {
        grid_cubic_cusp_tangents(opt);
      } else if (figure == "swallowtail") {
        grid_swallowtail(opt);
      } else {
        std::cerr << "unknown figure: " << figure << "\n";
        return 2;
      }
    } else if (*check) {
      emit(check_json(opt), opt);
    }
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
