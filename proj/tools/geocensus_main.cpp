// geocensus: build censuses of prime closed geodesics on hyperbolic surfaces,
// run counting queries over them, and compare the counts against their
// asymptotic predictors.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geocensus/asymptotics.hpp"
#include "geocensus/counting.hpp"
#include "geocensus/errors.hpp"

using namespace geocensus;

namespace {

struct CommonOpts {
  std::string preset = "bolza";
  unsigned precision = kDefaultPrecision;
  unsigned L = 6;
  std::string cache_dir;
  std::string cache_file;  // explicit override
  std::string format = "csv";
  bool no_diagonal = false;
  std::string norm = "sum";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--preset,--rep", o.preset,
                  "representation: \"bolza\" or a representation file path");
  cmd->add_option("--precision", o.precision, "working precision in bits (>= 64)")
      ->check(CLI::Range(64u, 4096u));
  cmd->add_option("-L,--word-length", o.L, "word length bound of the census")
      ->check(CLI::Range(1u, 255u));
  cmd->add_option("--cache-dir", o.cache_dir,
                  "census cache directory (default $GEODESIC_CACHE_DIR or .)");
  cmd->add_option("--cache", o.cache_file, "explicit census cache file");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-diagonal", o.no_diagonal,
                "exclude the diagonal gamma1 = gamma2 from pair counters");
  cmd->add_option("--norm", o.norm, "homology norm ||.||_m: sum (as printed) or max")
      ->check(CLI::IsMember({"sum", "max"}));
}

std::string cache_path(const CommonOpts& o, const Representation& rep) {
  if (!o.cache_file.empty()) return o.cache_file;
  std::string dir = o.cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("GEODESIC_CACHE_DIR");
    dir = env && *env ? env : ".";
  }
  return dir + "/" + rep.id() + "-L" + std::to_string(o.L) + "-p" +
         std::to_string(o.precision) + ".census";
}

HomNorm norm_kind(const CommonOpts& o) {
  return o.norm == "max" ? HomNorm::Max : HomNorm::Sum;
}

void emit_rows(const CommonOpts& o, std::ostream& out,
               const std::vector<std::tuple<std::string, std::string, double, double,
                                            double, bool>>& rows) {
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (o.format == "json") {
    out << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& [fn, beta, x1, x2, value, complete] = rows[i];
      if (i) out << ",";
      out << "{\"function\":\"" << fn << "\",\"beta\":\"" << beta << "\",\"x1\":" << fmt(x1)
          << ",\"x2\":" << fmt(x2) << ",\"value\":" << fmt(value)
          << ",\"complete\":" << (complete ? "true" : "false") << "}";
    }
    out << "]\n";
  } else {
    out << "function,beta,x1,x2,value,complete\n";
    for (const auto& [fn, beta, x1, x2, value, complete] : rows) {
      out << fn << ',' << beta << ',' << fmt(x1) << ',' << fmt(x2) << ',' << fmt(value) << ','
          << (complete ? 1 : 0) << "\n";
    }
  }
}

int cmd_census(const CommonOpts& o, unsigned shards, unsigned threads, double margin) {
  Representation rep = Representation::load_preset(o.preset, o.precision);
  Census c = enumerate_census(rep, o.L, shards, threads);
  std::string path = cache_path(o, rep);
  c.save(path);
  std::cout << "representation " << rep.name() << " (id " << rep.id() << "), genus "
            << rep.genus() << ", precision " << rep.precision() << "\n";
  std::cout << "census L=" << o.L << ": " << c.size() << " classes\n";
  for (unsigned n = 1; n <= o.L; ++n)
    std::cout << "  word length " << n << ": " << c.count_at_word_length(n) << "\n";
  ScalarHP lstar = c.completeness_length(margin);
  std::cout << "completeness length l* = " << lstar.to_decimal(15)
            << " (safety margin " << margin << ")\n";
  std::cout << "cache: " << path << "\n";
  return 0;
}


int cmd_count(const CommonOpts& o, const std::string& fn, const std::string& beta_s, double x,
              double x1, double x2, double window, double radius, const std::string& out_file) {
  Representation rep = Representation::load_preset(o.preset, o.precision);
  Census c = Census::load(cache_path(o, rep), rep.id());
  unsigned g = c.genus();
  HomologyVector beta(2 * g, 0);
  if (!beta_s.empty()) beta = parse_homology(beta_s, g);
  if (x > 0 && x1 == 0) x1 = x;
  if (x > 0 && x2 == 0) x2 = x;

  CountWarnings w;
  double value = 0;
  bool pair_like = fn == "pair" || fn == "R2" || fn == "P2" || fn == "R2-trunc";
  if (fn == "pi") {
    value = static_cast<double>(pi_count(c, x1, &w));
  } else if (fn == "pi-beta") {
    value = static_cast<double>(pi_beta(c, beta, x1, &w));
  } else if (fn == "pi-ball") {
    HomNorm nk = norm_kind(o);
    value = static_cast<double>(pi_predicate(
        c, [&](std::span<const std::int16_t> h) { return hom_norm(h, nk) <= radius; }, x1,
        &w));
  } else if (fn == "pi-even") {
    value = static_cast<double>(pi_predicate(
        c,
        [](std::span<const std::int16_t> h) {
          for (auto v : h)
            if (v % 2 != 0) return false;
          return true;
        },
        x1, &w));
  } else if (fn == "R-beta") {
    value = R_beta(c, beta, x1, &w);
  } else if (pair_like) {
    PairQuery q{beta, x1, x2};
    q.include_diagonal = !o.no_diagonal;
    if (fn == "pair")
      value = static_cast<double>(pair_count(c, q, &w));
    else if (fn == "R2")
      value = R2_beta(c, q, &w);
    else if (fn == "P2")
      value = P2_beta(c, q, &w);
    else {
      double win = window >= 0 ? window : u_window(std::max(x1, x2));
      TruncatedR2 t = truncated_R2(c, q, win, norm_kind(o), &w);
      value = t.value;
      std::cerr << "R2-trunc window " << win << ": discarded tail "
                << (t.full - t.value) << "\n";
    }
  } else {
    throw CLI::ValidationError("count", "unknown function " + fn);
  }
  if (w.beyond_completeness)
    std::cerr << "warning: cutoff exceeds the census completeness threshold l*; "
                 "counts may miss classes\n";
  if (w.boundary_cases)
    std::cerr << "warning: " << w.boundary_cases
              << " class(es) within error of the cutoff boundary (included)\n";

  std::string beta_field = format_homology(beta);
  for (char& ch : beta_field)
    if (ch == ',') ch = ';';
  std::vector<std::tuple<std::string, std::string, double, double, double, bool>> rows;
  rows.emplace_back(fn, beta_field, x1, pair_like ? x2 : 0.0, value, !w.beyond_completeness);
  if (out_file.empty()) {
    emit_rows(o, std::cout, rows);
  } else {
    std::ofstream out(out_file);
    emit_rows(o, out, rows);
  }
  return 0;
}

AsymptoticModel resolve_model(const std::string& source, const Census& c) {
  unsigned g = c.genus();
  if (source == "default") return AsymptoticModel::standard(g);
  if (source == "empirical") {
    CovarianceEstimate e = estimate_covariance(c, 0.0, 1e9);
    return AsymptoticModel::with_parameters(g, e.sigma2_hat, e.N_hat);
  }
  // model file: genus, optional sigma2, rows of N
  std::ifstream in(source);
  if (!in) throw FormatError("cannot open model file " + source);
  unsigned genus = 0;
  double sigma2 = -1;
  std::vector<double> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "genus") ls >> genus;
    else if (key == "sigma2") ls >> sigma2;
    else if (key == "row") {
      double v;
      while (ls >> v) entries.push_back(v);
    } else
      throw FormatError("unknown key \"" + key + "\" in model file");
  }
  if (genus != g) throw FormatError("model file genus does not match census");
  SymMatrix N;
  N.dim = 2 * g;
  if (entries.size() != static_cast<std::size_t>(N.dim) * N.dim)
    throw FormatError("model file must give a full 2g x 2g matrix");
  N.a = entries;
  if (sigma2 > 0) return AsymptoticModel::with_parameters(g, sigma2, N);
  return AsymptoticModel::with_matrix(g, N);
}

int cmd_compare(const CommonOpts& o, const std::string& model_source,
                const std::string& query_file, const std::string& out_file) {
  Representation rep = Representation::load_preset(o.preset, o.precision);
  Census c = Census::load(cache_path(o, rep), rep.id());
  AsymptoticModel m = resolve_model(model_source, c);

  std::vector<CompareQuery> queries;
  if (query_file.empty()) {
    queries = default_queries(c);
  } else {
    std::ifstream in(query_file);
    if (!in) throw FormatError("cannot open query file " + query_file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::string fn, beta_s;
      double x1 = 0, x2 = 0;
      if (!(ls >> fn >> beta_s >> x1)) throw FormatError("bad query line: " + line);
      ls >> x2;
      CompareQuery q;
      if (fn == "pi") q.fn = PredictorKind::Pi;
      else if (fn == "pi_beta") q.fn = PredictorKind::PiBeta;
      else if (fn == "pi_beta_lead") q.fn = PredictorKind::PiBetaLead;
      else if (fn == "R_beta") q.fn = PredictorKind::RBeta;
      else if (fn == "pair") q.fn = PredictorKind::Pair;
      else if (fn == "R2") q.fn = PredictorKind::R2;
      else if (fn == "P2_relation") q.fn = PredictorKind::P2Relation;
      else throw FormatError("unknown function \"" + fn + "\" in query file");
      q.beta = parse_homology(beta_s, c.genus());
      q.x1 = x1;
      q.x2 = x2 > 0 ? x2 : x1;
      queries.push_back(std::move(q));
    }
  }

  ComparisonReport rep_out = compare(c, m, queries);
  std::string text = o.format == "json" ? rep_out.to_json() : rep_out.to_csv();
  if (out_file.empty()) {
    std::cout << text;
    if (o.format == "json") std::cout << "\n";
  } else {
    std::ofstream out(out_file);
    out << text;
    if (o.format == "json") out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"census engine for prime closed geodesics on hyperbolic surfaces"};
  app.require_subcommand(1);

  CommonOpts oc, ocnt, ocmp;

  auto* census = app.add_subcommand("census", "enumerate a census and write its cache file");
  add_common(census, oc);
  unsigned shards = 1, threads = 1;
  double margin = 0.0;
  census->add_option("--shards", shards, "number of enumeration shards")
      ->check(CLI::Range(1u, 4096u));
  census->add_option("--threads", threads, "worker threads for the shards")
      ->check(CLI::Range(1u, 256u));
  census->add_option("--margin", margin, "safety margin subtracted from l*");

  auto* count = app.add_subcommand("count", "evaluate a counting function on a census");
  add_common(count, ocnt);
  std::string fn, beta_s, count_out;
  double x = 0, x1 = 0, x2 = 0, window = -1, radius = 0;
  count->add_option("function", fn,
                    "pi | pi-beta | pi-ball | pi-even | R-beta | pair | R2 | P2 | R2-trunc")
      ->required();
  count->add_option("--beta", beta_s, "homology class, comma-separated integers (2g of them)");
  count->add_option("--x", x, "norm cutoff");
  count->add_option("--x1", x1, "first norm cutoff (pair functions)");
  count->add_option("--x2", x2, "second norm cutoff (pair functions)");
  count->add_option("--window", window, "truncation window for R2-trunc (default u(x))");
  count->add_option("--radius", radius, "ball radius for pi-ball");
  count->add_option("-o,--output", count_out, "write rows to a file instead of stdout");

  auto* cmp = app.add_subcommand("compare", "compare census counts against the predictors");
  add_common(cmp, ocmp);
  std::string model_source = "default", query_file, cmp_out;
  cmp->add_option("--model", model_source, "default | empirical | model file path");
  cmp->add_option("--queries", query_file, "query file (default: built-in query set)");
  cmp->add_option("-o,--output", cmp_out, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints help or the parse diagnostic
    return rc == 0 ? 0 : 1;
  }

  try {
    if (census->parsed()) return cmd_census(oc, shards, threads, margin);
    if (count->parsed()) {
      if (x <= 0 && x1 <= 0)
        throw DomainError("count requires --x or --x1/--x2");
      return cmd_count(ocnt, fn, beta_s, x, x1, x2, window, radius, count_out);
    }
    if (cmp->parsed()) return cmd_compare(ocmp, model_source, query_file, cmp_out);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InsufficientData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
