#ifndef SHAPECALC_TAYLOR_HPP
#define SHAPECALC_TAYLOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "shapecalc/shape_maps.hpp"

namespace shapecalc {

/// One representative per isomorphism class, canonically labeled, for
/// every poset on 1..max_n points.
std::vector<PosetPtr> enumerate_posets(int max_n);

/// Iso-invariant key for a preshape (pair of posets plus the assignment,
/// minimized over compatible relabelings).
std::string preshape_key(const Preshape& p);

struct InventoryEntry {
  Preshape shape;
  std::string provenance;  // free | retract-of-free | cubical-downset
  std::string key;
  std::string name;        // short display name
  bool inane = false;
  std::optional<std::string> inane_witness;
  std::optional<NSigma> nsigma;  // when the codomain is a cube
};

struct ShapeInventory {
  std::vector<PosetPtr> generators;
  std::vector<InventoryEntry> entries;
  int skipped_unknown = 0;  // candidates whose shape verdict was undecided
};

/// Free shapes over every generator, full shapes onto join-closed images
/// of join-preserving self-maps of the free target, and all cubical
/// down-set shapes. Every stored entry passes is_shape decisively.
ShapeInventory enumerate_shapes(int gen_bound, int target_bound, int cube_bound = 3);

struct TaylorNode {
  InventoryEntry entry;
  bool is_cube = false;
  std::optional<int> cube_n;
};

/// An edge from A to B certifies "A-excisive implies B-excisive", carried
/// by an indirect map A -> B or a direct map B -> A.
struct TaylorEdge {
  int from = 0;
  int to = 0;
  std::string kind;  // construction that produced the underlying map
  CertKind direction = CertKind::indirect_map;
  PreshapeMap map;
  Contractibility status = Contractibility::unknown;
};

struct TaylorGraph {
  std::vector<TaylorNode> nodes;
  std::vector<TaylorEdge> edges;
  std::vector<int> scc_id;  // per node, deterministic
  int scc_count = 0;
  std::vector<InventoryEntry> excluded_inane;
  std::vector<std::string> skipped_pairs;  // node pairs whose search hit the cap
};

TaylorGraph build_taylor_graph(const ShapeInventory& inv);

struct ClassInfo {
  std::vector<int> members;  // node indices
  bool contains_cube = false;
  std::optional<int> n_value;
  std::string conjecture;  // cube-linked | open
  bool semantic_only_reverse = false;
  std::string smallest_member;
};

struct ClassifyReport {
  std::vector<ClassInfo> classes;
  std::vector<std::pair<int, std::vector<int>>> cube_buckets;  // n -> node indices
  int open_classes = 0;
};

/// Per strongly connected component: membership, cube linkage, and the
/// agreed n value of its cubical members. Disagreement raises
/// InconsistentClass.
ClassifyReport classify(const TaylorGraph& graph);

std::string to_dot(const TaylorGraph& graph);

/// Replays the certificate stored on an edge and checks it still certifies.
bool replay_edge(const TaylorEdge& edge);

}  // namespace shapecalc

#endif
