#include "ordist/cli.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>

#include "ordist/constructions.hpp"
#include "ordist/counterexamples.hpp"
#include "ordist/error.hpp"
#include "ordist/json_io.hpp"
#include "ordist/verifier.hpp"

namespace ordist::cli {

namespace {

using io::json;

struct Diagnostic {
  int status;
  std::string code;
  std::string message;
};

void report(std::ostream& err, const Diagnostic& d) {
  json doc = json::object();
  doc["error"] = d.code;
  doc["message"] = d.message;
  err << io::dump(doc) << '\n';
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text) {
  if (path && !path->empty())
    io::write_file(*path, text + "\n");
  else
    out << text << '\n';
}

OrderSpec load_spec(const std::string& path) {
  OrderSpec spec = io::parse_order_spec(io::read_file(path));
  require_valid(spec);
  return spec;
}

struct RealizeArgs {
  std::string spec_path;
  std::optional<std::string> out_path, report_path, csv_path;
  std::optional<double> eps_initial;
  ConstructionOptions options;
  Tolerances tol;
};

int cmd_realize(const RealizeArgs& a, std::ostream& out, std::ostream& err) {
  OrderSpec spec;
  try {
    spec = load_spec(a.spec_path);
  } catch (const Error& e) {
    report(err, {kBadInput, std::string(to_string(e.code())), e.what()});
    return kBadInput;
  }

  ConstructionOptions options = a.options;
  options.eps_initial = a.eps_initial;
  RealizationReport realization;
  try {
    realization = realize(spec, options);
  } catch (const Error& e) {
    report(err, {kConstruction, std::string(to_string(e.code())), e.what()});
    return kConstruction;
  }

  const VerifyReport check = verify(realization.config, spec, a.tol);
  emit(out, a.out_path, io::dump(io::to_json(realization.config)));
  if (a.csv_path) io::write_file(*a.csv_path, io::to_csv(realization.config));
  json doc = io::to_json(realization);
  doc["verify"] = io::to_json(check);
  if (a.report_path)
    io::write_file(*a.report_path, io::dump(doc) + "\n");
  else if (a.out_path)
    out << io::dump(doc) << '\n';

  if (!check.match) {
    report(err, {kSelfCheck, "SelfVerificationFailed",
                 "realization does not induce the requested order"});
    return kSelfCheck;
  }
  return kOk;
}

int cmd_verify(const std::string& spec_path, const std::string& points_path,
               const Tolerances& tol, std::ostream& out) {
  const OrderSpec spec = load_spec(spec_path);
  const PointConfig config = io::parse_point_config(io::read_file(points_path));
  const VerifyReport result = verify(config, spec, tol);
  out << io::dump(io::to_json(result)) << '\n';
  return result.match ? kOk : kNegative;
}

int cmd_induce(const std::string& points_path, const Tolerances& tol,
               const std::optional<std::string>& out_path, std::ostream& out) {
  const PointConfig config = io::parse_point_config(io::read_file(points_path));
  const InducedOrder induced = induced_preorder(config, tol);
  emit(out, out_path, io::dump(io::to_json(induced.spec)));
  return kOk;
}

int cmd_gallery(const std::string& name, int n, const std::optional<std::string>& out_path,
                std::ostream& out) {
  emit(out, out_path, io::dump(io::to_json(gallery(name, n))));
  return kOk;
}

int cmd_falsify(const std::string& spec_path, const FalsifierConfig& cfg,
                const std::optional<std::string>& out_path, std::ostream& out) {
  check_config(cfg);
  const OrderSpec spec = load_spec(spec_path);
  const FalsifierReport result = falsify(spec, cfg);
  emit(out, out_path, io::dump(io::to_json(result)));
  return result.feasible ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Realize, verify and probe orders on pairwise Euclidean distances", "ordist"};
  app.require_subcommand(1);

  auto add_tolerances = [](CLI::App* sub, Tolerances& tol) {
    sub->add_option("--tol-abs", tol.abs, "Absolute split threshold for distances")
        ->capture_default_str();
    sub->add_option("--tol-rel", tol.rel, "Split threshold relative to the largest distance")
        ->capture_default_str();
  };

  RealizeArgs realize_args;
  auto* realize_cmd = app.add_subcommand("realize", "Build points inducing an order spec");
  realize_cmd->add_option("spec", realize_args.spec_path, "Order spec JSON")->required();
  realize_cmd->add_option("-o,--out", realize_args.out_path, "Point config JSON output");
  realize_cmd->add_option("--report", realize_args.report_path, "Realization report JSON output");
  realize_cmd->add_option("--csv", realize_args.csv_path, "Also write coordinates as CSV");
  realize_cmd->add_option("--eps-initial", realize_args.eps_initial,
                          "First epsilon tried (default 1/(2K))");
  realize_cmd->add_option("--eps-shrink", realize_args.options.eps_shrink)->capture_default_str();
  realize_cmd->add_option("--eps-steps", realize_args.options.eps_max_steps)->capture_default_str();
  realize_cmd->add_option("--eta", realize_args.options.eta, "Gram eigenvalue floor")
      ->capture_default_str();
  add_tolerances(realize_cmd, realize_args.tol);

  std::string verify_spec, verify_points;
  Tolerances verify_tol;
  auto* verify_cmd = app.add_subcommand("verify", "Check that points induce an order spec");
  verify_cmd->add_option("spec", verify_spec, "Order spec JSON")->required();
  verify_cmd->add_option("points", verify_points, "Point config JSON")->required();
  add_tolerances(verify_cmd, verify_tol);

  std::string induce_points;
  std::optional<std::string> induce_out;
  Tolerances induce_tol;
  auto* induce_cmd = app.add_subcommand("induce", "Print the order induced by a point config");
  induce_cmd->add_option("points", induce_points, "Point config JSON")->required();
  induce_cmd->add_option("-o,--out", induce_out, "Order spec JSON output");
  add_tolerances(induce_cmd, induce_tol);

  std::string gallery_name;
  int gallery_n = 0;
  std::optional<std::string> gallery_out;
  auto* gallery_cmd = app.add_subcommand("gallery", "Emit a lower-bound order family");
  gallery_cmd->add_option("name", gallery_name, "Family name")->required();
  gallery_cmd->add_option("n", gallery_n, "Number of points")->required();
  gallery_cmd->add_option("-o,--out", gallery_out, "Order spec JSON output");

  std::string falsify_spec;
  std::optional<std::string> falsify_out;
  FalsifierConfig fcfg;
  auto* falsify_cmd = app.add_subcommand("falsify", "Search for a realization in a fixed dimension");
  falsify_cmd->add_option("spec", falsify_spec, "Order spec JSON")->required();
  falsify_cmd->add_option("--dim", fcfg.dim, "Target dimension")->required();
  falsify_cmd->add_option("--restarts", fcfg.restarts)->capture_default_str();
  falsify_cmd->add_option("--iters", fcfg.iters)->capture_default_str();
  falsify_cmd->add_option("--seed", fcfg.seed)->capture_default_str();
  falsify_cmd->add_option("--margin", fcfg.margin, "Hinge margin on normalised squared distances")
      ->capture_default_str();
  falsify_cmd->add_option("--threads", fcfg.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  falsify_cmd->add_option("-o,--out", falsify_out, "Falsifier report JSON output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, {kBadInput, "UsageError", e.what()});
    return kBadInput;
  }

  try {
    if (*realize_cmd) return cmd_realize(realize_args, out, err);
    if (*verify_cmd) return cmd_verify(verify_spec, verify_points, verify_tol, out);
    if (*induce_cmd) return cmd_induce(induce_points, induce_tol, induce_out, out);
    if (*gallery_cmd) return cmd_gallery(gallery_name, gallery_n, gallery_out, out);
    if (*falsify_cmd) return cmd_falsify(falsify_spec, fcfg, falsify_out, out);
  } catch (const Error& e) {
    report(err, {kBadInput, std::string(to_string(e.code())), e.what()});
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace ordist::cli
