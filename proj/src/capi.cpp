#include "pcgroups.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

#include "census.hpp"
#include "json.hpp"
#include "measure.hpp"
#include "schur.hpp"
#include "tower.hpp"
#include "tree.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int run(const std::function<int()>& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const pcg::ValidationError& e) {
    g_last_error = e.what();
    return PCG_ERR_VALIDATION;
  } catch (const pcg::BoundError& e) {
    g_last_error = e.what();
    return PCG_ERR_VALIDATION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PCG_ERR_INTERNAL;
  }
}

std::string read_file(const char* path) {
  std::ifstream in(path);
  if (!in) throw pcg::ValidationError(std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

extern "C" {

struct pcg_tree {
  pcg::Tree tree;
};

const char* pcg_last_error(void) { return g_last_error.c_str(); }

void pcg_string_free(char* s) { std::free(s); }

int pcg_free_quotient_info(int p, int g, int c, char** out_json) {
  return run([&]() {
    pcg::FreeQuotient fq = pcg::FreeQuotient::build(p, g, c);
    nlohmann::json j;
    j["p"] = p;
    j["g"] = g;
    j["c"] = c;
    j["order_exp"] = fq.order_exp();
    j["phi_size"] = fq.phi_size();
    j["x_size"] = fq.x_size();
    j["y_size"] = fq.y_size();
    *out_json = dup_string(j.dump(2) + "\n");
    return PCG_OK;
  });
}

int pcg_group_report_file(const char* path, char** out_json) {
  return run([&]() {
    pcg::PcPresentation pres = pcg::PcPresentation::parse(read_file(path));
    pcg::Group grp(pres);
    pcg::Classification cls = pcg::classify(grp);
    nlohmann::json j;
    j["order_exp"] = grp.order_exp();
    j["p_class"] = grp.p_class();
    j["d"] = grp.rank();
    j["r"] = cls.r;
    j["h"] = cls.h;
    j["schur_class"] = pcg::schur_class_name(cls.cls);
    if (cls.has_gi) {
      auto sd = pcg::sigma_stats(grp);
      j["y"] = sd->y_size;
      j["aut_sigma_order"] = sd->aut_sigma_order;
    } else {
      j["y"] = nullptr;
      j["aut_sigma_order"] = nullptr;
    }
    *out_json = dup_string(j.dump(2) + "\n");
    return PCG_OK;
  });
}

int pcg_tree_build(int p, int g, int max_class, int max_order_exp, int ancestors_only,
                   int threads, pcg_tree** out) {
  return run([&]() {
    pcg::TreeOptions opts;
    opts.max_class = max_class;
    opts.max_order_exp = max_order_exp;
    opts.ancestors_only = ancestors_only != 0;
    opts.threads = threads;
    auto* t = new pcg_tree{pcg::build_tree(p, g, opts)};
    *out = t;
    return t->tree.budget_hit ? PCG_ERR_BUDGET : PCG_OK;
  });
}

int pcg_tree_export(const pcg_tree* tree, const char* format, char** out_doc) {
  return run([&]() {
    std::string fmt = format ? format : "json";
    if (fmt == "json")
      *out_doc = dup_string(pcg::export_tree_json(tree->tree));
    else if (fmt == "dot")
      *out_doc = dup_string(pcg::export_tree_dot(tree->tree));
    else
      throw pcg::ValidationError("unknown tree format '" + fmt + "'");
    return PCG_OK;
  });
}

int pcg_tree_budget_exhausted(const pcg_tree* tree) { return tree->tree.budget_hit ? 1 : 0; }

void pcg_tree_free(pcg_tree* tree) { delete tree; }

int pcg_ipad_table(int p, int g, int max_class, int max_order_exp, const char* targets_json,
                   int threads, char** out_json) {
  return run([&]() {
    std::vector<std::string> targets;
    if (targets_json) {
      nlohmann::json t = nlohmann::json::parse(targets_json);
      if (!t.is_array()) throw pcg::ValidationError("targets must be a JSON array");
      for (const auto& s : t) targets.push_back(s.get<std::string>());
    }
    pcg::TreeOptions budget;
    budget.max_class = max_class;
    budget.max_order_exp = max_order_exp;
    budget.threads = threads;
    pcg::IpadTableResult res = pcg::ipad_measure_table(p, g, budget, targets);
    nlohmann::json arr = nlohmann::json::array();
    for (const pcg::IpadEntry& e : res.entries) {
      nlohmann::json j;
      j["ipad"] = e.ipad;
      j["num"] = e.measure.get_num().get_str();
      j["den"] = e.measure.get_den().get_str();
      j["decimal"] = pcg::decimal4(e.measure);
      j["status"] = e.exact ? "exact" : "lower-bound";
      arr.push_back(std::move(j));
    }
    *out_json = dup_string(arr.dump(2) + "\n");
    return res.budget_hit ? PCG_ERR_BUDGET : PCG_OK;
  });
}

int pcg_oracle_exhaust(int p, int g, int c, char** out_json) {
  return run([&]() {
    pcg::FreeQuotient fq = pcg::FreeQuotient::build(p, g, c);
    pcg::BruteResult res = pcg::brute_force_meas_c(fq);
    nlohmann::json classes = nlohmann::json::object();
    for (const pcg::BruteClass& cls : res.classes) {
      classes[cls.fingerprint] = {{"num", cls.freq.get_num().get_str()},
                                  {"den", cls.freq.get_den().get_str()},
                                  {"tuples", cls.tuples}};
    }
    nlohmann::json j;
    j["total_tuples"] = res.total_tuples;
    j["classes"] = std::move(classes);
    *out_json = dup_string(j.dump(2) + "\n");
    return PCG_OK;
  });
}

int pcg_oracle_sample(int p, int g, int c, long long n, uint64_t seed, int threads,
                      char** out_json) {
  return run([&]() {
    pcg::FreeQuotient fq = pcg::FreeQuotient::build(p, g, c);
    pcg::McResult res = pcg::monte_carlo_meas_c(fq, n, seed, threads);
    nlohmann::json classes = nlohmann::json::object();
    for (const pcg::McClass& cls : res.classes) {
      classes[cls.fingerprint] = {{"estimate", cls.estimate},
                                  {"stderr", cls.stderr_},
                                  {"hits", cls.hits},
                                  {"n", res.n}};
    }
    nlohmann::json j;
    j["n"] = res.n;
    j["classes"] = std::move(classes);
    *out_json = dup_string(j.dump(2) + "\n");
    return PCG_OK;
  });
}

int pcg_census_report(const char* census_csv_path, int p, int g, int max_class,
                      int max_order_exp, int threads, const char* format, char** out_doc) {
  return run([&]() {
    pcg::Census census = pcg::ingest_census(read_file(census_csv_path), p);
    std::vector<std::string> targets;
    for (const pcg::CensusRecord& r : census.rows) targets.push_back(r.ipad);
    pcg::TreeOptions budget;
    budget.max_class = max_class;
    budget.max_order_exp = max_order_exp;
    budget.threads = threads;
    pcg::IpadTableResult table = pcg::ipad_measure_table(p, g, budget, targets);
    pcg::ComparisonReport rep = pcg::compare_census(census, table);
    std::string fmt = format ? format : "json";
    if (fmt == "json")
      *out_doc = dup_string(pcg::comparison_to_json(rep));
    else if (fmt == "csv")
      *out_doc = dup_string(pcg::comparison_to_csv(rep));
    else
      throw pcg::ValidationError("unknown census format '" + fmt + "'");
    return table.budget_hit ? PCG_ERR_BUDGET : PCG_OK;
  });
}

}  // extern "C"
