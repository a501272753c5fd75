#include "tree.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace pcg {

namespace {

struct NodeCtx {
  GroupPtr grp;
  CoverData cover;
  Classification cls;
  Ipad ipad;
  AbelianType ab;

  bool ancestor() const { return cls.ancestor; }
};

NodeCtx stage1(PcPresentation pres) {
  NodeCtx ctx;
  ctx.grp = std::make_shared<Group>(std::move(pres));
  ctx.cover = p_cover(ctx.grp->pres());
  ctx.cls = classify(*ctx.grp, ctx.cover);
  ctx.ipad = ipad_of(*ctx.grp);
  ctx.ab = ctx.ipad.top;
  return ctx;
}

void fill_node(TreeNode& node, const NodeCtx& ctx, long long aut_order, int g) {
  const Group& G = *ctx.grp;
  node.order_exp = G.order_exp();
  node.p_class = G.p_class();
  node.d = G.rank();
  node.r = ctx.cls.r;
  node.h = ctx.cls.h;
  node.has_gi = ctx.cls.has_gi;
  node.cls = ctx.cls.cls;
  node.ipad = ctx.ipad.str();
  node.ab = ctx.ab.str();
  node.terminal = ctx.cover.is_terminal();
  node.aut_order = aut_order;
  node.grp = ctx.grp;
  node.meas_c = Rat(0);
  node.meas = Rat(0);
  if (ctx.cls.has_gi) {
    auto sigma = find_gi(G);
    long long x = 0, y = 0;
    for (long long t = 0; t < G.size(); ++t) {
      int32_t ti = static_cast<int32_t>(t);
      int32_t img = sigma->apply(ti);
      if (img == ti) ++y;
      if (img == G.inv(ti)) ++x;
    }
    node.x = x;
    node.y = y;
    if (x * y != G.size()) throw std::logic_error("|X||Y| != |G| at a tree node");
    long long gi = count_gi(G);
    if (aut_order % gi != 0)
      throw std::logic_error("GI count does not divide |Aut| at a tree node");
    node.aut_sigma = aut_order / gi;
    Int order = int_pow(G.p(), G.order_exp());
    if (ctx.cls.ancestor)
      node.meas_c = meas_c_formula(y, node.aut_sigma, order, g, node.h, G.p()).value;
    if (ctx.cls.group)
      node.meas = meas_formula(y, node.aut_sigma, order, g, node.r, G.p()).value;
  }
  node.fingerprint =
      make_fingerprint(node.order_exp, node.p_class, ctx.ab, ctx.ipad, node.y);
  node.label = lookup_label(node.order_exp, node.p_class, node.r, node.h, node.ipad,
                            node.meas_c, node.meas);
}

}  // namespace

Tree build_tree(int p, int g, const TreeOptions& opts) {
  if (opts.max_class < 1 || opts.max_order_exp < g)
    throw ValidationError("tree budget below the root");
  Tree tree;
  struct Item {
    PcPresentation pres;
    long long aut_order;  // 0 = compute directly
    std::string id;
  };
  std::deque<Item> queue;
  queue.push_back({PcPresentation(p, std::vector<int>(g, 1)), 0, "0"});
  tree.root = "0";
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (static_cast<long long>(tree.nodes.size()) >= opts.max_nodes) {
      tree.budget_hit = true;
      break;
    }
    NodeCtx ctx = stage1(std::move(item.pres));
    TreeNode node;
    node.id = item.id;
    long long aut_order = item.aut_order;
    bool scope_ok = !ctx.cover.is_terminal() && ctx.grp->p_class() < opts.max_class &&
                    (!opts.ancestors_only || ctx.ancestor());
    bool expandable = scope_ok && ctx.grp->order_exp() + 1 <= opts.max_order_exp;
    if (scope_ok && !expandable) {
      node.frontier = true;  // only the order budget stopped this node
      tree.budget_hit = true;
    }
    if (aut_order == 0 || expandable) {
      AutData aut = compute_aut(*ctx.grp);
      if (aut_order != 0 && aut.order != aut_order)
        throw std::logic_error("inherited |Aut| disagrees with the direct count");
      aut_order = aut.order;
      if (expandable) {
        fill_node(node, ctx, aut_order, g);
        std::vector<Descendant> desc = immediate_descendants(*ctx.grp, ctx.cover, aut);
        bool all_children_kept = true;
        for (size_t k = 0; k < desc.size(); ++k) {
          std::string cid = node.id + "." + std::to_string(k);
          if (desc[k].pres.ngens() > opts.max_order_exp) {
            all_children_kept = false;
            node.frontier = true;
            tree.budget_hit = true;
            continue;
          }
          queue.push_back({desc[k].pres, desc[k].aut_order, cid});
          node.children.push_back(cid);
        }
        node.expanded = all_children_kept;
        tree.nodes.emplace(node.id, std::move(node));
        continue;
      }
    }
    fill_node(node, ctx, aut_order, g);
    tree.nodes.emplace(node.id, std::move(node));
  }
  // drop non-ancestors after classification when requested
  if (opts.ancestors_only) {
    std::vector<std::string> drop;
    for (auto& [id, node] : tree.nodes) {
      bool anc = node.cls == SchurClass::kSchurPlus1Group ||
                 node.cls == SchurClass::kAncestorOnly;
      if (!anc) drop.push_back(id);
    }
    for (const std::string& id : drop) tree.nodes.erase(id);
    for (auto& [id, node] : tree.nodes) {
      std::vector<std::string> kept;
      for (const std::string& cid : node.children)
        if (tree.nodes.count(cid)) kept.push_back(cid);
      node.children = std::move(kept);
    }
  }
  // recursion identity at every fully expanded ancestor node
  if (opts.check_recursion) {
    for (auto& [id, node] : tree.nodes) {
      bool anc = node.cls == SchurClass::kSchurPlus1Group ||
                 node.cls == SchurClass::kAncestorOnly;
      if (!anc || !node.expanded) continue;
      bool complete = true;
      std::vector<Rat> child_meas;
      for (const std::string& cid : node.children) {
        auto it = tree.nodes.find(cid);
        if (it == tree.nodes.end()) {
          complete = false;
          break;
        }
        child_meas.push_back(it->second.meas_c);
      }
      if (!complete) continue;
      // Meas_{c+1}(G) is the stable value: nonzero exactly for sigma-groups
      if (!recursion_check(node.meas_c, node.meas, child_meas))
        throw std::logic_error("descendant measure recursion failed at node " + id);
    }
  }
  return tree;
}

std::string export_tree_json(const Tree& t) {
  nlohmann::json out;
  out["root"] = t.root;
  out["budget_exhausted"] = t.budget_hit;
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [id, node] : t.nodes) {
    nlohmann::json j;
    j["id"] = node.id;
    j["order_exp"] = node.order_exp;
    j["p_class"] = node.p_class;
    j["d"] = node.d;
    j["r"] = node.r;
    j["h"] = node.h;
    j["y"] = node.y;
    j["aut_sigma_order"] = node.aut_sigma;
    j["schur_class"] = schur_class_name(node.cls);
    j["ipad"] = node.ipad;
    j["abelianization"] = node.ab;
    j["meas_c"] = {{"num", node.meas_c.get_num().get_str()},
                   {"den", node.meas_c.get_den().get_str()}};
    j["meas"] = {{"num", node.meas.get_num().get_str()},
                 {"den", node.meas.get_den().get_str()}};
    j["terminal"] = node.terminal;
    j["frontier"] = node.frontier;
    j["children"] = node.children;
    if (!node.label.empty()) j["label"] = node.label;
    nodes.push_back(std::move(j));
    for (const std::string& cid : node.children) edges.push_back({id, cid});
  }
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  return out.dump(2) + "\n";
}

std::string export_tree_dot(const Tree& t) {
  std::ostringstream out;
  out << "digraph tree {\n";
  for (const auto& [id, node] : t.nodes) {
    out << "  \"" << id << "\" [label=\"order=" << node.grp->p() << "^" << node.order_exp
        << ", Meas_c=" << fraction_string(node.meas_c) << "\"];\n";
  }
  for (const auto& [id, node] : t.nodes)
    for (const std::string& cid : node.children)
      out << "  \"" << id << "\" -> \"" << cid << "\";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------

IpadTableResult ipad_measure_table(int p, int g, const TreeOptions& budget,
                                   const std::vector<std::string>& target_strings) {
  std::vector<Ipad> targets;
  for (const std::string& s : target_strings) targets.push_back(parse_ipad(s, p));
  struct Accum {
    Rat mass;
    std::vector<std::string> contributors;
  };
  std::map<std::string, Accum> masses;
  std::vector<Ipad> open;
  auto credit = [&](const Ipad& ipad, const Rat& amount, const std::string& id) {
    if (amount == 0) return;
    Accum& a = masses[ipad.str()];
    a.mass += amount;
    a.contributors.push_back(id);
  };
  auto reaches_target = [&](const Ipad& ipad) {
    if (targets.empty()) return true;
    for (const Ipad& t : targets)
      if (ipad_le(ipad, t)) return true;
    return false;
  };

  struct Item {
    NodeCtx ctx;
    long long aut_order;
    std::string id;
  };
  std::deque<Item> queue;
  queue.push_back({stage1(PcPresentation(p, std::vector<int>(g, 1))), 0, "0"});
  long long processed = 0;
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    NodeCtx& ctx = item.ctx;
    if (++processed > budget.max_nodes) throw BoundError("node budget exhausted");
    TreeNode node;
    node.id = item.id;
    long long aut_order = item.aut_order;
    bool expandable = !ctx.cover.is_terminal() && ctx.grp->p_class() < budget.max_class &&
                      ctx.grp->order_exp() + 1 <= budget.max_order_exp;
    AutData aut;
    if (aut_order == 0 || expandable) {
      aut = compute_aut(*ctx.grp);
      if (aut_order != 0 && aut.order != aut_order)
        throw std::logic_error("inherited |Aut| disagrees with the direct count");
      aut_order = aut.order;
    }
    fill_node(node, ctx, aut_order, g);
    if (node.terminal) {
      credit(ctx.ipad, node.meas_c, node.id);  // h = r here: the stable value
      continue;
    }
    if (!expandable) {
      // the sigma-group part never moves; the rest of Meas_c stays open
      credit(ctx.ipad, node.meas, node.id);
      open.push_back(ctx.ipad);
      continue;
    }
    credit(ctx.ipad, node.meas, node.id);
    std::vector<Descendant> desc = immediate_descendants(*ctx.grp, ctx.cover, aut);
    for (size_t k = 0; k < desc.size(); ++k) {
      std::string cid = node.id + "." + std::to_string(k);
      if (desc[k].pres.ngens() > budget.max_order_exp) {
        open.push_back(ctx.ipad);  // conservative: child IPADs dominate the parent's
        continue;
      }
      NodeCtx cctx = stage1(desc[k].pres);
      if (!cctx.cls.ancestor) continue;
      if (!reaches_target(cctx.ipad)) continue;
      if (stable_edge(ctx.ipad, cctx.ipad)) {
        TreeNode cnode;
        cnode.id = cid;
        fill_node(cnode, cctx, desc[k].aut_order, g);
        credit(cctx.ipad, cnode.meas_c, cid + ":stable");
        continue;
      }
      queue.push_back({std::move(cctx), desc[k].aut_order, cid});
    }
  }

  IpadTableResult out;
  out.budget_hit = !open.empty();
  out.tracked_mass = Rat(0);
  auto exact_for = [&](const Ipad& ipad) {
    for (const Ipad& o : open)
      if (ipad_le(o, ipad)) return false;
    return true;
  };
  if (!targets.empty()) {
    for (size_t i = 0; i < targets.size(); ++i) {
      IpadEntry e;
      e.ipad = targets[i].str();
      auto it = masses.find(e.ipad);
      e.measure = it == masses.end() ? Rat(0) : it->second.mass;
      if (it != masses.end()) e.contributors = it->second.contributors;
      e.exact = exact_for(targets[i]);
      out.tracked_mass += e.measure;
      out.entries.push_back(std::move(e));
    }
  } else {
    for (auto& [s, acc] : masses) {
      IpadEntry e;
      e.ipad = s;
      e.measure = acc.mass;
      e.contributors = acc.contributors;
      e.exact = exact_for(parse_ipad(s, p));
      out.tracked_mass += e.measure;
      out.entries.push_back(std::move(e));
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const IpadEntry& a, const IpadEntry& b) {
    if (a.measure != b.measure) return a.measure > b.measure;
    return a.ipad < b.ipad;
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LabelRow {
  const char* label;
  int order_exp, p_class;
  int r;                  // -1 = any
  const char* ipad;       // nullptr = any
  const char* meas_c;     // nullptr = any
  const char* meas;       // nullptr = any
};

// Published invariants of the named small groups in this corner of the tree.
const LabelRow kLabels[] = {
    {"SmallGroup(27,3)", 3, 2, 4, nullptr, "208/243", nullptr},
    {"SmallGroup(81,3)", 4, 2, 4, nullptr, "104/729", nullptr},
    {"SmallGroup(243,2)", 5, 2, 5, nullptr, "1/729", nullptr},
    {"SmallGroup(81,7)", 4, 3, 3, "[[3,3]; [3,3]^3 [3,3,3]]", nullptr, "1664/6561"},
    {"SmallGroup(81,8)", 4, 3, 3, "[[3,3]; [3,3]^3 [3,9]]", nullptr, "1664/6561"},
    {"SmallGroup(81,10)", 4, 3, 3, "[[3,3]; [3,3]^3 [3,9]]", nullptr, "3328/19683"},
    {"SmallGroup(243,5)", 5, 3, 2, "[[3,3]; [3,3,3] [3,9]^3]", nullptr, "1664/59049"},
    {"SmallGroup(243,7)", 5, 3, 2, "[[3,3]; [3,3,3]^2 [3,9]^2]", nullptr, "832/59049"},
    {"SmallGroup(243,16)", 5, 3, 3, "[[3,9]; [3,3,9] [3,9]^3]", nullptr, "3328/177147"},
    {"SmallGroup(243,18)", 5, 3, 3, "[[3,9]; [3,3,3] [3,3,9] [3,9]^2]", nullptr,
     "3328/177147"},
    {"SmallGroup(243,19|20)", 5, 3, 3, "[[3,9]; [3,3,3] [3,9]^2 [3,27]]", nullptr,
     "1664/59049"},
    {"SmallGroup(729,8)", 6, 3, 3, nullptr, "1664/531441", "3328/1594323"},
};

}  // namespace

std::string lookup_label(int order_exp, int p_class, int r, int h, const std::string& ipad,
                         const Rat& meas_c, const Rat& meas) {
  (void)h;
  for (const LabelRow& row : kLabels) {
    if (row.order_exp != order_exp || row.p_class != p_class) continue;
    if (row.r >= 0 && row.r != r) continue;
    if (row.ipad && ipad != row.ipad) continue;
    if (row.meas_c && fraction_string(meas_c) != row.meas_c) continue;
    if (row.meas && fraction_string(meas) != row.meas) continue;
    return row.label;
  }
  return "";
}

}  // namespace pcg
