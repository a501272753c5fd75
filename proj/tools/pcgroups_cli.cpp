// Command-line front end; talks to the engine through the C API only.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcgroups.h"

namespace {

int write_out(const std::string& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 2;
  }
  out << doc;
  return 0;
}

int finish(int rc, char* doc, const std::string& out_path) {
  if (doc) {
    int wr = write_out(doc, out_path);
    pcg_string_free(doc);
    if (wr) return wr;
  }
  if (rc != PCG_OK && rc != PCG_ERR_BUDGET) std::cerr << pcg_last_error() << "\n";
  if (rc == PCG_ERR_BUDGET)
    std::cerr << "budget exhausted; partial results written\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-group descendant trees, relator-tuple measures and IPAD tables"};
  app.require_subcommand(1);

  int p = 3, g = 2, max_class = 3, max_order_exp = 8, threads = 1;
  unsigned long long seed = 1;
  std::string out_path, format = "json";
  app.add_option("--p", p, "odd prime")->capture_default_str();
  app.add_option("--g", g, "generator rank")->capture_default_str();
  app.add_option("--max-class", max_class, "class budget")->capture_default_str();
  app.add_option("--max-order", max_order_exp, "order budget as the exponent of p")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->capture_default_str();
  app.add_option("--seed", seed, "sampling seed")->capture_default_str();
  app.add_option("--out", out_path, "write the result to a file instead of stdout");
  app.add_option("--format", format, "json|dot|csv")->capture_default_str();

  auto* cmd_fq = app.add_subcommand("free-quotient", "sizes of the class-c free quotient");

  std::string report_path;
  auto* cmd_report = app.add_subcommand("group-report", "invariants of a presentation file");
  cmd_report->add_option("file", report_path, "pc presentation file")->required();

  std::string tree_filter = "ancestors-only";
  auto* cmd_tree = app.add_subcommand("tree", "measured descendant tree");
  cmd_tree->add_option("--filter", tree_filter, "all|ancestors-only")->capture_default_str();

  std::vector<std::string> targets;
  auto* cmd_ipad = app.add_subcommand("ipad-table", "IPAD measures by pruned exploration");
  cmd_ipad->add_option("--targets", targets, "IPAD strings to track");

  auto* cmd_oracle = app.add_subcommand("oracle", "relator-tuple oracles");
  cmd_oracle->require_subcommand(1);
  auto* cmd_exhaust = cmd_oracle->add_subcommand("exhaust", "exhaustive tuple census");
  long long nsamples = 100000;
  auto* cmd_sample = cmd_oracle->add_subcommand("sample", "seeded sampling oracle");
  cmd_sample->add_option("-n,--samples", nsamples, "sample count")->capture_default_str();

  std::string census_path;
  auto* cmd_census = app.add_subcommand("census", "predicted-vs-observed IPAD report");
  cmd_census->add_option("file", census_path, "census CSV")->required();

  CLI11_PARSE(app, argc, argv);

  char* doc = nullptr;
  if (*cmd_fq) {
    int rc = pcg_free_quotient_info(p, g, max_class, &doc);
    return finish(rc, doc, out_path);
  }
  if (*cmd_report) {
    int rc = pcg_group_report_file(report_path.c_str(), &doc);
    return finish(rc, doc, out_path);
  }
  if (*cmd_tree) {
    if (tree_filter != "all" && tree_filter != "ancestors-only") {
      std::cerr << "unknown filter '" << tree_filter << "'\n";
      return 2;
    }
    pcg_tree* tree = nullptr;
    int rc = pcg_tree_build(p, g, max_class, max_order_exp,
                            tree_filter == "ancestors-only" ? 1 : 0, threads, &tree);
    if (!tree) return finish(rc, nullptr, out_path);
    int rc2 = pcg_tree_export(tree, format.c_str(), &doc);
    pcg_tree_free(tree);
    return finish(rc2 != PCG_OK ? rc2 : rc, doc, out_path);
  }
  if (*cmd_ipad) {
    std::string tjson;
    if (!targets.empty()) {
      tjson = "[";
      for (size_t i = 0; i < targets.size(); ++i) {
        if (i) tjson += ",";
        std::string esc;
        for (char c : targets[i]) {
          if (c == '"' || c == '\\') esc += '\\';
          esc += c;
        }
        tjson += "\"" + esc + "\"";
      }
      tjson += "]";
    }
    int rc = pcg_ipad_table(p, g, max_class, max_order_exp,
                            targets.empty() ? nullptr : tjson.c_str(), threads, &doc);
    return finish(rc, doc, out_path);
  }
  if (*cmd_oracle) {
    int rc;
    if (*cmd_exhaust)
      rc = pcg_oracle_exhaust(p, g, max_class, &doc);
    else
      rc = pcg_oracle_sample(p, g, max_class, nsamples, seed, threads, &doc);
    return finish(rc, doc, out_path);
  }
  if (*cmd_census) {
    int rc = pcg_census_report(census_path.c_str(), p, g, max_class, max_order_exp, threads,
                               format.c_str(), &doc);
    return finish(rc, doc, out_path);
  }
  return 2;
}
