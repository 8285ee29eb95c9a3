// kissgeo: certify packings, draw their boundary curves, search for dense
// packings and compute shortest sparse-centered curves.
//
// Exit codes: 0 ok, 1 IO/parse error, 2 invalid input, 3 theorem-violation finding.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kissgeo/certify.hpp"
#include "kissgeo/curve.hpp"
#include "kissgeo/error.hpp"
#include "kissgeo/io.hpp"

namespace {

using namespace kissgeo;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return kExitIo;
    case ErrorKind::InequalityViolation:
      return kExitViolation;
    default:
      return kExitInvalid;
  }
}

Tolerances tolerances(std::optional<double> flag) {
  Tolerances tol;
  if (const char* env = std::getenv("KISSGEO_TOLERANCE")) {
    try {
      tol.geom = std::stod(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, std::string("KISSGEO_TOLERANCE is not a number: ") + env);
    }
  }
  if (flag) tol.geom = *flag;
  if (!(tol.geom > 0.0)) throw Error(ErrorKind::Parse, "tolerance must be positive");
  return tol;
}

void write_bundle(const std::string& dir, const packing::PackingInstance& p, const certify::CertReport& r) {
  std::filesystem::create_directories(dir);
  auto doc = io::PackingDocument::from(p);
  doc.metadata["note"] = "theorem-violation finding";
  io::write_text_file(dir + "/packing.json", io::to_json(doc).dump(2) + "\n");
  io::write_text_file(dir + "/report.json", io::to_json(r).dump(2) + "\n");
  io::write_text_file(dir + "/report.txt", io::text_report(r));
  std::cerr << "counterexample bundle written to " << dir << "\n";
}

struct VerifyArgs {
  std::string input;
  int n = 3;
  bool json = false;
  std::optional<double> tolerance;
  std::string bundle = "counterexample";
};

int run_verify(const VerifyArgs& a) {
  const Tolerances tol = tolerances(a.tolerance);
  const auto p = io::packing_from_json(io::read_json_file(a.input)).instance();
  const auto rep = certify::certify_unchecked(p, a.n, tol);
  if (a.json)
    std::cout << io::to_json(rep).dump(2) << "\n";
  else
    std::cout << io::text_report(rep);
  if (!rep.ok()) {
    write_bundle(a.bundle, p, rep);
    return kExitViolation;
  }
  return kExitOk;
}

struct CurveArgs {
  std::string input;
  int n = 3;
  std::string out;
  std::string svg;
  std::optional<double> tolerance;
};

int run_curve(const CurveArgs& a) {
  const Tolerances tol = tolerances(a.tolerance);
  const auto p = io::packing_from_json(io::read_json_file(a.input)).instance();
  const auto rep = certify::certify_unchecked(p, a.n, tol);
  if (rep.fallback_used) throw Error(ErrorKind::TooFewTwoDisks, "no boundary curve: fewer than two 2-disks");
  if (!a.out.empty()) io::write_text_file(a.out, io::to_json(io::CurveDocument::from(rep.gamma)).dump(2) + "\n");
  if (!a.svg.empty()) io::write_text_file(a.svg, io::render_svg(rep, p));
  std::printf("regions %zu  arcs %zu  |gamma| %.9f pi\n", rep.per_region.size(), rep.gamma.arcs.size(),
              rep.gamma_length / kPi);
  return rep.ok() ? kExitOk : kExitViolation;
}

struct SearchArgs {
  certify::SearchConfig cfg;
  std::string out;
};

int run_search(const SearchArgs& a) {
  const auto st = certify::optimize(a.cfg);
  for (const auto& [it, count] : st.trajectory) std::printf("iteration %llu best %zu\n", static_cast<unsigned long long>(it), count);
  std::printf("best %zu\n", st.best_count);
  if (!a.out.empty()) {
    auto doc = io::PackingDocument::from(st.best);
    doc.metadata["n"] = std::to_string(a.cfg.n);
    doc.metadata["seed"] = std::to_string(a.cfg.seed);
    doc.metadata["budget"] = std::to_string(a.cfg.budget);
    doc.metadata["restarts"] = std::to_string(a.cfg.restarts);
    doc.metadata["best_count"] = std::to_string(st.best_count);
    std::string traj;
    for (const auto& [it, count] : st.trajectory) traj += std::to_string(it) + ":" + std::to_string(count) + " ";
    if (!traj.empty()) traj.pop_back();
    doc.metadata["trajectory"] = traj;
    io::write_text_file(a.out, io::to_json(doc).dump(2) + "\n");
  }
  if (a.cfg.n <= 3 && st.best_count > static_cast<std::size_t>(1 + 3 * a.cfg.n * (a.cfg.n + 1))) return kExitViolation;
  return kExitOk;
}

struct MinCurveArgs {
  std::string centers;
  double gap = 1.0;
  int max_arcs = 6;
  std::string check_curve;
  std::string out;
};

int run_mincurve(const MinCurveArgs& a) {
  if (!a.check_curve.empty()) {
    const auto doc = io::curve_from_json(io::read_json_file(a.check_curve));
    curve::validate_curve(doc.curve());
    std::printf("curve valid, length %.12f\n", curve::curve_length(doc.curve()));
    if (a.centers.empty()) return kExitOk;
  }
  const auto centers = io::centers_from_json(io::read_json_file(a.centers));
  const auto res = curve::min_curve_search(centers, a.gap, a.max_arcs);
  std::printf("min length %.12f  (%.9f pi)\n", res.length, res.length / kPi);
  const auto doc = io::to_json(io::CurveDocument::from(res.curve)).dump(2);
  if (a.out.empty())
    std::cout << doc << "\n";
  else
    io::write_text_file(a.out, doc + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kissgeo: packings of kissing radius n and their boundary curves"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "certify a packing document");
  verify->add_option("input", va.input, "packing JSON")->required();
  verify->add_option("--n", va.n, "kissing radius bound");
  auto* jflag = verify->add_flag("--json", va.json, "JSON report");
  verify->add_flag("--text", "text report (default)")->excludes(jflag);
  verify->add_option("--tolerance", va.tolerance, "geometric tolerance (overrides KISSGEO_TOLERANCE)");
  verify->add_option("--bundle", va.bundle, "directory for a counterexample bundle");

  CurveArgs ca;
  auto* curve_cmd = app.add_subcommand("curve", "build the boundary curve of a packing");
  curve_cmd->add_option("input", ca.input, "packing JSON")->required();
  curve_cmd->add_option("--n", ca.n, "kissing radius bound");
  curve_cmd->add_option("--out", ca.out, "curve JSON output");
  curve_cmd->add_option("--svg", ca.svg, "SVG output");
  curve_cmd->add_option("--tolerance", ca.tolerance, "geometric tolerance");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "simulated annealing for large packings");
  search->add_option("--n", sa.cfg.n, "kissing radius")->check(CLI::Range(1, 4));
  search->add_option("--budget", sa.cfg.budget, "iterations per restart");
  search->add_option("--seed", sa.cfg.seed, "random seed");
  search->add_option("--restarts", sa.cfg.restarts, "independent restarts");
  search->add_option("--out", sa.out, "best packing JSON");
  search->add_flag("--seed-lattice", sa.cfg.seed_lattice, "start from the hexagonal packing");

  MinCurveArgs ma;
  auto* mincurve = app.add_subcommand("mincurve", "shortest curve with far-apart endpoints");
  mincurve->add_option("--centers", ma.centers, "centers JSON");
  mincurve->add_option("--gap", ma.gap, "minimum endpoint distance");
  mincurve->add_option("--max-arcs", ma.max_arcs, "arc count bound");
  mincurve->add_option("--check-curve", ma.check_curve, "validate a curve document");
  mincurve->add_option("--out", ma.out, "witness curve JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*verify) return run_verify(va);
    if (*curve_cmd) return run_curve(ca);
    if (*search) return run_search(sa);
    if (*mincurve) {
      if (ma.centers.empty() && ma.check_curve.empty()) throw Error(ErrorKind::Parse, "mincurve needs --centers or --check-curve");
      return run_mincurve(ma);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
