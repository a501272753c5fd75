#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "measure.hpp"
#include "schur.hpp"

namespace pcg {

struct TreeNode {
  std::string id;         // canonical path of orbit-representative indices
  int order_exp = 0;
  int p_class = 0;
  int d = 0, r = 0, h = 0;
  bool has_gi = false;
  long long y = 0, x = 0, aut_sigma = 0;
  long long aut_order = 0;
  SchurClass cls = SchurClass::kNone;
  std::string ipad, ab, fingerprint, label;
  Rat meas_c, meas;
  bool terminal = false;
  bool frontier = false;  // cut by the order/node budget before its children
  bool expanded = false;
  std::vector<std::string> children;
  GroupPtr grp;  // kept for downstream queries; not exported
};

struct TreeOptions {
  int max_class = 3;
  int max_order_exp = 8;
  bool ancestors_only = true;
  long long max_nodes = 100000;
  int threads = 1;
  bool check_recursion = true;
};

struct Tree {
  std::string root;
  std::map<std::string, TreeNode> nodes;
  bool budget_hit = false;
};

Tree build_tree(int p, int g, const TreeOptions& opts);

std::string export_tree_json(const Tree& t);
std::string export_tree_dot(const Tree& t);

// --- IPAD measures ---------------------------------------------------------
struct IpadEntry {
  std::string ipad;
  Rat measure;
  bool exact = true;
  std::vector<std::string> contributors;  // node ids
};

struct IpadTableResult {
  std::vector<IpadEntry> entries;  // sorted by measure descending
  bool budget_hit = false;
  Rat tracked_mass;  // sum over entries
};

// Explores the measured ancestor tree with pruning below stable branches,
// below nodes whose IPAD cannot reach any target, and at terminal nodes.
// Empty target list means: track every IPAD encountered (no target pruning).
IpadTableResult ipad_measure_table(int p, int g, const TreeOptions& budget,
                                   const std::vector<std::string>& targets);

// Attribute table mapping nodes to small-group database labels where the
// published invariants pin them down uniquely.
std::string lookup_label(int order_exp, int p_class, int r, int h, const std::string& ipad,
                         const Rat& meas_c, const Rat& meas);

}  // namespace pcg
