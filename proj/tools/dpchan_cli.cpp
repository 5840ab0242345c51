#include "dpchan/dp.hpp"
#include "dpchan/io.hpp"
#include "dpchan/mechanisms.hpp"
#include "dpchan/query.hpp"
#include "dpchan/transforms.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace dpchan;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct Reporter {
  bool machine = false;
  std::ostringstream buf;

  void kv(const std::string& key, const std::string& value) {
    if (machine) {
      buf << key << "=" << value << "\n";
    } else {
      buf << key << " = " << value << "\n";
    }
  }
  void kv(const std::string& key, double value, const std::string& unit = "") {
    std::ostringstream v;
    v << std::setprecision(machine ? 17 : 6) << value;
    if (!machine && !unit.empty()) v << " " << unit;
    kv(key, v.str());
  }
  void flush() { std::cout << buf.str(); }
};

std::string fmt_eps(double eps) {
  std::ostringstream s;
  if (std::isinf(eps)) {
    s << "inf";
  } else {
    s << std::setprecision(17) << eps;
  }
  return s.str();
}

int require_valid(const ChannelMatrix& m, const std::string& name) {
  const auto verdict = validate(m);
  if (verdict.ok) return kExitOk;
  std::cerr << name << " is not a valid channel matrix:\n";
  for (const auto& v : verdict.violations) {
    std::cerr << "  row " << v.row << ": deviation " << v.deviation
              << (v.negative_entry ? " (negative entry)" : "") << "\n";
  }
  return kExitValidation;
}

void report_analysis(Reporter& rep, const ChannelMatrix& m, const AdjacencyGraph& g,
                     const PriorDistribution& prior) {
  const DpVerdict dp = verify_dp(m, g, 0.0);
  const LeakageFigures lf = min_entropy_leakage(prior, m);
  rep.kv("min_epsilon_nat", fmt_eps(dp.min_epsilon));
  if (dp.witness.row_a >= 0) {
    rep.kv("witness",
           m.input.label(dp.witness.row_a) + "~" + m.input.label(dp.witness.row_b) + ":" +
               m.output.label(dp.witness.col));
  }
  rep.kv("h_inf_prior_bits", lf.h_inf_prior);
  rep.kv("h_inf_posterior_bits", lf.h_inf_posterior);
  rep.kv("leakage_bits", lf.leakage);
  rep.kv("capacity_bits", lf.capacity);

  const UtilityFigures uf = utility_binary(prior, m);
  rep.kv("utility", uf.utility);
  std::string remap;
  for (Eigen::Index z = 0; z < m.cols(); ++z) {
    if (!remap.empty()) remap += " ";
    remap += m.output.label(z) + "->" + m.input.label(uf.remap[static_cast<size_t>(z)]);
  }
  rep.kv("remap", remap);

  if (!std::isinf(dp.min_epsilon)) {
    if (g.kind() == GraphKind::Hamming) {
      const int u = g.hamming_u();
      const int v = g.hamming_v();
      const double b = bound_whole_database(u, v, dp.min_epsilon).bound_bits;
      rep.kv("bound_whole_database_bits", b);
      rep.kv("bound_whole_database_check", lf.leakage <= b + 1e-6 ? "pass" : "fail");
      Eigen::Index nonzero = 0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m.p.col(j).maxCoeff() > 0.0) ++nonzero;
      }
      const double br = bound_range_restricted(u, v, dp.min_epsilon, nonzero).bound_bits;
      rep.kv("bound_range_restricted_bits", br);
      rep.kv("bound_range_restricted_check", lf.leakage <= br + 1e-6 ? "pass" : "fail");
    }
    const double bi = bound_individual(dp.min_epsilon).bound_bits;
    rep.kv("bound_individual_bits", bi);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-based analysis of differentially private mechanisms"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "machine-readable key=value output");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "leakage, capacity, utility and bound checks");
  std::string an_matrix, an_graph, an_prior = "uniform";
  analyze->add_option("--matrix", an_matrix, "channel matrix CSV")->required();
  analyze->add_option("--graph", an_graph, "adjacency graph spec")->required();
  analyze->add_option("--prior", an_prior, "prior spec (uniform|file:PATH|p=...)");

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate the leakage bounds");
  int b_u = 1, b_v = 2;
  double b_eps = 0.0;
  long long b_r = 0;
  bool b_individual = false;
  bound->add_option("--u", b_u, "number of individuals");
  bound->add_option("--v", b_v, "number of values per individual");
  bound->add_option("--eps", b_eps, "epsilon (natural-log scale)")->required();
  bound->add_option("--r", b_r, "range cardinality for the restricted bound");
  bound->add_flag("--individual", b_individual, "per-individual bound only");

  // build
  auto* build = app.add_subcommand("build", "construct a mechanism matrix");
  build->require_subcommand(1);
  auto* tight = build->add_subcommand("tight", "tight-leakage matrix over Val^u");
  int t_u = 1, t_v = 2;
  double t_eps = 0.0;
  std::string t_out;
  tight->add_option("--u", t_u)->required();
  tight->add_option("--v", t_v)->required();
  tight->add_option("--eps", t_eps, "epsilon (natural-log scale)")->required();
  tight->add_option("-o,--output", t_out, "output CSV path")->required();

  auto* optimal = build->add_subcommand("optimal", "maximal-utility mechanism on a graph");
  std::string o_graph, o_out;
  double o_eps = 0.0;
  bool o_augment = false;
  optimal->add_option("--graph", o_graph)->required();
  optimal->add_option("--eps", o_eps, "epsilon (natural-log scale)")->required();
  optimal->add_flag("--augment", o_augment, "add adjacencies to reach a regular structure");
  optimal->add_option("-o,--output", o_out)->required();

  auto* geometric = build->add_subcommand("geometric", "truncated geometric mechanism");
  int g_n = 1;
  double g_lambda = 0.5;
  std::string g_out;
  geometric->add_option("--n", g_n, "maximum answer")->required();
  geometric->add_option("--lambda", g_lambda, "decay factor in (0,1)")->required();
  geometric->add_option("-o,--output", g_out)->required();

  // individual
  auto* individual = app.add_subcommand("individual", "per-individual channel leakage");
  std::string i_matrix, i_dminus;
  int i_u = 1, i_v = 2, i_target = 0;
  individual->add_option("--matrix", i_matrix)->required();
  individual->add_option("--u", i_u)->required();
  individual->add_option("--v", i_v)->required();
  individual->add_option("--target", i_target, "individual index")->required();
  individual->add_option("--dminus", i_dminus, "comma-separated values of the others")->required();

  // curve
  auto* curve = app.add_subcommand("curve", "bound curve data as CSV");
  int c_u = 100;
  std::string c_vs = "2,10,100";
  double c_eps_max = 10.0;
  int c_points = 100;
  curve->add_option("--u", c_u);
  curve->add_option("--v", c_vs, "comma-separated v values");
  curve->add_option("--eps-max", c_eps_max);
  curve->add_option("--points", c_points);

  // compare
  auto* compare = app.add_subcommand("compare", "utilities and leakages of several matrices");
  std::vector<std::string> cm_matrices;
  std::string cm_prior = "uniform";
  compare->add_option("--matrix", cm_matrices, "channel matrix CSV (repeatable)")
      ->required()
      ->take_all();
  compare->add_option("--prior", cm_prior, "prior spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Reporter rep;
  rep.machine = machine;
  try {
    if (*analyze) {
      const ChannelMatrix m = read_matrix_csv_file(an_matrix);
      if (int rc = require_valid(m, an_matrix); rc != kExitOk) return rc;
      const AdjacencyGraph g = build_graph(an_graph);
      if (g.nodes().size() != m.rows()) {
        std::cerr << "graph node count does not match matrix rows\n";
        return kExitValidation;
      }
      // Graph specs label nodes by index; relabel to the matrix's row labels.
      const AdjacencyGraph relabeled(m.input, g.edges(), g.kind());
      const PriorDistribution prior = parse_prior_spec(an_prior, m.input);
      AdjacencyGraph analysis_graph = relabeled;
      if (g.kind() == GraphKind::Hamming)
        analysis_graph.set_hamming_params(g.hamming_u(), g.hamming_v());
      report_analysis(rep, m, analysis_graph, prior);
    } else if (*bound) {
      if (b_individual) {
        rep.kv("bound_individual_bits", bound_individual(b_eps).bound_bits, "bits");
      } else if (b_r > 0) {
        rep.kv("B_range_restricted", bound_range_restricted(b_u, b_v, b_eps, b_r).bound_bits,
               "bits");
      } else {
        rep.kv("B", bound_whole_database(b_u, b_v, b_eps).bound_bits, "bits");
      }
    } else if (*tight) {
      const ChannelMatrix m = build_tight_leakage(t_u, t_v, t_eps);
      write_matrix_csv_file(t_out, m);
      rep.kv("written", t_out);
      rep.kv("eps_nat", t_eps);
    } else if (*optimal) {
      const AdjacencyGraph g = build_graph(o_graph);
      const OptimalBuild ob = build_optimal_utility(g, o_eps, o_augment);
      write_matrix_csv_file(o_out, ob.matrix);
      rep.kv("written", o_out);
      rep.kv("alpha", ob.params.alpha);
      rep.kv("diameter", static_cast<double>(ob.params.n));
      rep.kv("border_constant", static_cast<double>(ob.params.c));
      rep.kv("remark1_applied", ob.params.remark1_applied ? "yes" : "no");
      rep.kv("remark2_applied", ob.params.remark2_applied ? "yes" : "no");
      rep.kv("guaranteed_optimal", ob.params.guaranteed_optimal ? "yes" : "no");
    } else if (*geometric) {
      const ChannelMatrix m = build_geometric(g_n, g_lambda);
      write_matrix_csv_file(g_out, m);
      rep.kv("written", g_out);
      rep.kv("min_epsilon_nat", std::log(1.0 / g_lambda));
    } else if (*individual) {
      const ChannelMatrix m = read_matrix_csv_file(i_matrix);
      if (int rc = require_valid(m, i_matrix); rc != kExitOk) return rc;
      DatabaseUniverse universe = DatabaseUniverse::digits(i_u, i_v);
      std::vector<int> dminus;
      std::stringstream ss(i_dminus);
      std::string cell;
      while (std::getline(ss, cell, ',')) dminus.push_back(std::stoi(cell));
      ChannelMatrix relabeled(universe.alphabet(), m.output, m.p);
      const ChannelMatrix sub = individual_channel(relabeled, universe, i_target, dminus);
      const PriorDistribution uniform = PriorDistribution::uniform(sub.input);
      const double leak = min_entropy_leakage(uniform, sub).leakage;
      const DpVerdict dp = verify_dp(relabeled, universe.hamming_graph(), 0.0);
      rep.kv("individual_leakage_bits", leak);
      rep.kv("matrix_min_epsilon_nat", fmt_eps(dp.min_epsilon));
      if (!std::isinf(dp.min_epsilon)) {
        const double b = bound_individual(dp.min_epsilon).bound_bits;
        rep.kv("bound_individual_bits", b);
        rep.kv("bound_individual_check", leak <= b + 1e-6 ? "pass" : "fail");
      }
    } else if (*curve) {
      std::vector<int> vs;
      std::stringstream ss(c_vs);
      std::string cell;
      while (std::getline(ss, cell, ',')) vs.push_back(std::stoi(cell));
      std::vector<double> grid;
      for (int i = 0; i < c_points; ++i)
        grid.push_back(c_eps_max * static_cast<double>(i) / (c_points - 1));
      std::cout << "v,eps,bound_bits\n" << std::setprecision(17);
      for (const auto& pt : curve_bound(c_u, vs, grid))
        std::cout << pt.v << "," << pt.eps << "," << pt.bound_bits << "\n";
      return kExitOk;
    } else if (*compare) {
      for (const auto& path : cm_matrices) {
        const ChannelMatrix m = read_matrix_csv_file(path);
        if (int rc = require_valid(m, path); rc != kExitOk) return rc;
        const PriorDistribution prior = parse_prior_spec(cm_prior, m.input);
        const UtilityFigures uf = utility_binary(prior, m);
        const LeakageFigures lf = min_entropy_leakage(prior, m);
        rep.kv(path + ".utility", uf.utility);
        rep.kv(path + ".leakage_bits", lf.leakage);
        rep.kv(path + ".capacity_bits", lf.capacity);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  rep.flush();
  return kExitOk;
}
