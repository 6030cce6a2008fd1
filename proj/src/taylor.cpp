#include "shapecalc/taylor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace shapecalc {

namespace {

const char* kLetters[] = {"a", "b", "c", "d", "e", "f", "g", "h"};

PosetPtr poset_from_strict(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(kLetters[i]);
  std::vector<std::pair<std::string, std::string>> rels;
  for (auto [a, b] : pairs) rels.emplace_back(kLetters[a], kLetters[b]);
  return Poset::build(labels, rels);
}

}  // namespace

std::vector<PosetPtr> enumerate_posets(int max_n) {
  if (max_n < 1 || max_n > 6) fail(errc::size_limit, "poset enumeration bound is 1..6");
  std::vector<PosetPtr> out;
  for (int n = 1; n <= max_n; ++n) {
    // strict relations compatible with the index order; every poset has a
    // linear extension, so this hits every iso class at least once
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const int bits = static_cast<int>(slots.size());
    std::set<std::string> seen;
    std::vector<std::pair<std::string, PosetPtr>> reps;
    for (long mask = 0; mask < (1l << bits); ++mask) {
      std::vector<char> rel(static_cast<size_t>(n) * n, 0);
      for (int b = 0; b < bits; ++b)
        if (mask & (1l << b))
          rel[static_cast<size_t>(slots[static_cast<size_t>(b)].first) * n +
              slots[static_cast<size_t>(b)].second] = 1;
      // transitivity check (acyclic by construction)
      bool transitive = true;
      for (int i = 0; i < n && transitive; ++i)
        for (int j = 0; j < n && transitive; ++j) {
          if (!rel[static_cast<size_t>(i) * n + j]) continue;
          for (int k = 0; k < n; ++k)
            if (rel[static_cast<size_t>(j) * n + k] && !rel[static_cast<size_t>(i) * n + k]) {
              transitive = false;
              break;
            }
        }
      if (!transitive) continue;
      std::vector<std::pair<int, int>> pairs;
      for (int b = 0; b < bits; ++b)
        if (mask & (1l << b)) pairs.push_back(slots[static_cast<size_t>(b)]);
      auto p = poset_from_strict(n, pairs);
      auto key = p->canonical_key();
      if (seen.insert(key).second) reps.emplace_back(key, p);
    }
    std::sort(reps.begin(), reps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, p] : reps) out.push_back(p);
  }
  return out;
}

namespace {

std::string encode_assign(const Preshape& p, const std::vector<int>& dom_perm,
                          const std::vector<int>& cod_perm) {
  // dom_perm[i] = position of domain element i; cod_perm likewise
  const int nd = p.domain()->size();
  std::vector<int> at(static_cast<size_t>(nd));
  for (int i = 0; i < nd; ++i) at[static_cast<size_t>(dom_perm[static_cast<size_t>(i)])] = i;
  std::string s;
  for (int pos = 0; pos < nd; ++pos) {
    s += std::to_string(cod_perm[static_cast<size_t>(p.sigma(at[static_cast<size_t>(pos)]))]);
    s += ",";
  }
  return s;
}

}  // namespace

std::string preshape_key(const Preshape& p) {
  // canonical forms of both posets, then the minimal assignment encoding
  // over all pairs of canonical relabelings
  auto dom_isos = [&] {
    // permutations onto the canonical representative: enumerate
    // automorphism-adjusted relabelings via all self-isomorphisms composed
    // with one canonical ordering
    return all_isomorphisms(p.domain(), p.domain());
  }();
  auto cod_isos = all_isomorphisms(p.codomain(), p.codomain());

  // one canonical position assignment per poset
  auto canonical_positions = [](const PosetPtr& q) {
    // recompute the canonical ordering used by canonical_key
    const int n = q->size();
    std::string best;
    std::vector<int> best_at;
    std::vector<int> at;
    std::vector<char> placed(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self) -> void {
      int position = static_cast<int>(at.size());
      if (position == n) {
        std::string enc;
        enc.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            enc.push_back(q->leq(at[static_cast<size_t>(i)], at[static_cast<size_t>(j)]) ? '1' : '0');
        if (best.empty() || enc < best) {
          best = enc;
          best_at = at;
        }
        return;
      }
      for (int e = 0; e < n; ++e) {
        if (placed[static_cast<size_t>(e)]) continue;
        bool ready = true;
        for (int d = 0; d < n && ready; ++d)
          if (q->lt(d, e) && !placed[static_cast<size_t>(d)]) ready = false;
        if (!ready) continue;
        at.push_back(e);
        placed[static_cast<size_t>(e)] = 1;
        self(self);
        placed[static_cast<size_t>(e)] = 0;
        at.pop_back();
      }
    };
    rec(rec);
    std::vector<int> pos(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(best_at[static_cast<size_t>(i)])] = i;
    return pos;
  };

  auto dom_pos = canonical_positions(p.domain());
  auto cod_pos = canonical_positions(p.codomain());

  std::string best;
  for (const auto& da : dom_isos)
    for (const auto& ca : cod_isos) {
      // compose: element i -> automorphism -> canonical position
      std::vector<int> dperm(dom_pos.size()), cperm(cod_pos.size());
      for (size_t i = 0; i < dom_pos.size(); ++i) dperm[i] = dom_pos[static_cast<size_t>(da[i])];
      for (size_t i = 0; i < cod_pos.size(); ++i) cperm[i] = cod_pos[static_cast<size_t>(ca[i])];
      auto enc = encode_assign(p, dperm, cperm);
      if (best.empty() || enc < best) best = enc;
    }
  return p.domain()->canonical_key() + "|" + p.codomain()->canonical_key() + "|" + best;
}

namespace {

struct Dedup {
  std::set<std::string> keys;
  bool insert(const std::string& k) { return keys.insert(k).second; }
};

void add_entry(ShapeInventory& inv, Dedup& dedup, Preshape shape, const std::string& provenance) {
  if (!shape.full) return;
  auto verdict = is_shape(shape);
  if (verdict.status == ShapeStatus::unknown) {
    ++inv.skipped_unknown;
    return;
  }
  if (verdict.status != ShapeStatus::shape) return;
  auto key = preshape_key(shape);
  if (!dedup.insert(key)) return;

  InventoryEntry entry{std::move(shape), provenance, key, "", false, std::nullopt, std::nullopt};
  auto in = is_inane(entry.shape);
  entry.inane = in.inane;
  entry.inane_witness = in.witness;
  if (as_cube(entry.shape.codomain()) && !entry.inane) entry.nsigma = n_sigma(entry.shape);
  inv.entries.push_back(std::move(entry));
}

}  // namespace

ShapeInventory enumerate_shapes(int gen_bound, int target_bound, int cube_bound) {
  if (gen_bound < 1 || gen_bound > 4) fail(errc::size_limit, "generator bound is 1..4");
  if (cube_bound < 0 || cube_bound > 3) fail(errc::size_limit, "cube bound is 0..3");

  ShapeInventory inv;
  Dedup dedup;
  for (const auto& p : enumerate_posets(gen_bound))
    if (p->initial()) inv.generators.push_back(p);

  for (const auto& s_hat : inv.generators) {
    auto free = free_shape(s_hat);
    if (free.lattice.carrier->size() <= 64) add_entry(inv, dedup, free.eta, "free");

    // join-preserving self-maps of the free target, determined by a
    // monotone assignment on the non-initial generators
    const auto& lattice = free.lattice;
    const auto& carrier = lattice.carrier;
    const int nd = s_hat->size();
    int ini = *s_hat->initial();
    std::vector<int> gens;
    for (int i = 0; i < nd; ++i)
      if (i != ini) gens.push_back(i);
    int bottom = *carrier->initial();

    std::vector<int> choice(gens.size(), 0);
    auto emit = [&]() {
      // r(M) = union of the chosen down-sets over M's members
      std::vector<int> g_of(static_cast<size_t>(nd), bottom);
      for (size_t gi = 0; gi < gens.size(); ++gi)
        g_of[static_cast<size_t>(gens[gi])] = choice[gi];
      // monotone on S^?
      for (int a = 0; a < nd; ++a)
        for (int b = 0; b < nd; ++b)
          if (s_hat->leq(a, b) &&
              !carrier->leq(g_of[static_cast<size_t>(a)], g_of[static_cast<size_t>(b)]))
            return;
      std::vector<int> r_assign(static_cast<size_t>(carrier->size()));
      for (int c = 0; c < carrier->size(); ++c) {
        std::vector<int> acc;
        for (int x : lattice.member_sets[static_cast<size_t>(c)]) {
          for (int m : lattice.member_sets[static_cast<size_t>(g_of[static_cast<size_t>(x)])])
            acc.push_back(m);
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        if (acc.empty()) acc = lattice.member_sets[static_cast<size_t>(bottom)];
        r_assign[static_cast<size_t>(c)] = lattice.index_of_set(acc);
      }
      // image as a full subposet
      std::vector<int> image = r_assign;
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      if (static_cast<int>(image.size()) > 64) return;
      auto target = induced_subposet(carrier, image);
      std::vector<int> sigma_assign(static_cast<size_t>(nd));
      for (int x = 0; x < nd; ++x)
        sigma_assign[static_cast<size_t>(x)] = target->index_of(
            carrier->label(r_assign[static_cast<size_t>(lattice.unit[static_cast<size_t>(x)])]));
      MonotoneMap sigma_map(s_hat, target, std::move(sigma_assign));
      Preshape candidate = Preshape::validate(std::move(sigma_map));
      add_entry(inv, dedup, candidate, "retract-of-free");
    };
    auto rec = [&](auto&& self, size_t idx) -> void {
      if (idx == gens.size()) {
        emit();
        return;
      }
      for (int c = 0; c < carrier->size(); ++c) {
        choice[idx] = c;
        self(self, idx + 1);
      }
    };
    if (carrier->size() <= 16) rec(rec, 0);
  }

  // cubical down-set shapes
  for (int n = 0; n <= cube_bound; ++n) {
    auto fam = cube_family(n);
    const int sz = fam.cube->size();
    for (long mask = 1; mask < (1l << sz); ++mask) {
      std::vector<int> members;
      for (int i = 0; i < sz; ++i)
        if (mask & (1l << i)) members.push_back(i);
      if (!fam.cube->is_down_closed(members)) continue;
      auto sub = induced_subposet(fam.cube, members);
      std::vector<int> assign(static_cast<size_t>(sub->size()));
      for (int i = 0; i < sub->size(); ++i)
        assign[static_cast<size_t>(i)] = fam.cube->index_of(sub->label(i));
      add_entry(inv, dedup, Preshape::validate(MonotoneMap(sub, fam.cube, std::move(assign))),
                "cubical-downset");
    }
  }

  // apply the target bound and name entries deterministically
  std::vector<InventoryEntry> kept;
  for (auto& e : inv.entries)
    if (e.shape.codomain()->size() <= target_bound || e.provenance == "cubical-downset")
      kept.push_back(std::move(e));
  inv.entries = std::move(kept);
  std::sort(inv.entries.begin(), inv.entries.end(),
            [](const InventoryEntry& a, const InventoryEntry& b) { return a.key < b.key; });
  for (size_t i = 0; i < inv.entries.size(); ++i) {
    auto& e = inv.entries[i];
    std::ostringstream name;
    name << "sigma" << i << "(" << e.shape.domain()->size() << "->"
         << e.shape.codomain()->size() << "," << e.provenance << ")";
    e.name = name.str();
  }
  return inv;
}

namespace {

std::optional<int> cube_index_of(const Preshape& p) {
  // iota_n: the domain is exactly the bottom plus all atoms, the codomain
  // the full cube on those atoms
  auto cube = as_cube(p.codomain());
  if (!cube) return std::nullopt;
  const int n = static_cast<int>(cube->atoms.size());
  if (p.domain()->size() != n + 1) return std::nullopt;
  std::set<std::uint32_t> hit;
  for (int i = 0; i < p.domain()->size(); ++i) {
    std::uint32_t m = cube->element_mask[static_cast<size_t>(p.sigma(i))];
    if ((m & (m - 1)) != 0) return std::nullopt;  // cardinality must be <= 1
    hit.insert(m);
  }
  if (static_cast<int>(hit.size()) != n + 1) return std::nullopt;
  return n;
}

struct EdgeCollector {
  TaylorGraph& g;
  std::set<std::pair<int, int>> present;

  void add(int from, int to, const std::string& kind, CertKind dir, PreshapeMap map,
           Contractibility status) {
    if (from == to) return;
    if (status != Contractibility::contractible) return;
    if (!present.insert({from, to}).second) return;
    g.edges.push_back(TaylorEdge{from, to, kind, dir, std::move(map), status});
  }
};

void strongly_connected_components(TaylorGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const auto& e : g.edges) adj[static_cast<size_t>(e.from)].push_back(e.to);
  for (auto& row : adj) std::sort(row.begin(), row.end());

  // Tarjan, iterative over deterministic node order
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  g.scc_id.assign(static_cast<size_t>(n), -1);
  int next_index = 0, next_scc = 0;

  auto strong = [&](auto&& self, int v) -> void {
    index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = next_index++;
    stack.push_back(v);
    on_stack[static_cast<size_t>(v)] = 1;
    for (int w : adj[static_cast<size_t>(v)]) {
      if (index[static_cast<size_t>(w)] == -1) {
        self(self, w);
        low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], low[static_cast<size_t>(w)]);
      } else if (on_stack[static_cast<size_t>(w)]) {
        low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
      }
    }
    if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
      for (;;) {
        int w = stack.back();
        stack.pop_back();
        on_stack[static_cast<size_t>(w)] = 0;
        g.scc_id[static_cast<size_t>(w)] = next_scc;
        if (w == v) break;
      }
      ++next_scc;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[static_cast<size_t>(v)] == -1) strong(strong, v);
  g.scc_count = next_scc;

  // renumber components in order of their smallest node
  std::vector<int> first(static_cast<size_t>(next_scc), n);
  for (int v = 0; v < n; ++v)
    first[static_cast<size_t>(g.scc_id[static_cast<size_t>(v)])] =
        std::min(first[static_cast<size_t>(g.scc_id[static_cast<size_t>(v)])], v);
  std::vector<int> order(static_cast<size_t>(next_scc));
  for (int c = 0; c < next_scc; ++c) order[static_cast<size_t>(c)] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return first[static_cast<size_t>(a)] < first[static_cast<size_t>(b)]; });
  std::vector<int> rank(static_cast<size_t>(next_scc));
  for (int r = 0; r < next_scc; ++r) rank[static_cast<size_t>(order[static_cast<size_t>(r)])] = r;
  for (int v = 0; v < n; ++v)
    g.scc_id[static_cast<size_t>(v)] = rank[static_cast<size_t>(g.scc_id[static_cast<size_t>(v)])];
}

constexpr long kSearchCap = 1000000;

long map_search_size(const Preshape& a, const Preshape& b) {
  double total = 1;
  for (int i = 0; i < a.codomain()->size(); ++i) total *= b.codomain()->size();
  for (int i = 0; i < a.domain()->size(); ++i) total *= b.domain()->size();
  return total > static_cast<double>(kSearchCap) ? kSearchCap + 1 : static_cast<long>(total);
}

// Bounded exhaustive search for one certified map between a pair.
void search_pair(EdgeCollector& collector, TaylorGraph& g, int ai, int bi) {
  const auto& A = g.nodes[static_cast<size_t>(ai)].entry.shape;
  const auto& B = g.nodes[static_cast<size_t>(bi)].entry.shape;
  if (collector.present.count({ai, bi}) && collector.present.count({bi, ai})) return;
  if (map_search_size(A, B) > kSearchCap) {
    g.skipped_pairs.push_back(g.nodes[static_cast<size_t>(ai)].entry.name + "->" +
                              g.nodes[static_cast<size_t>(bi)].entry.name);
    return;
  }

  const auto& S = A.codomain();
  const auto& T = B.codomain();
  const auto& Shat = A.domain();
  const auto& That = B.domain();
  int ini_s = A.codomain_initial();
  int ini_t = B.codomain_initial();

  bool need_indirect = !collector.present.count({ai, bi});
  bool need_direct = !collector.present.count({bi, ai});

  std::vector<int> f(static_cast<size_t>(S->size()), -1);
  std::vector<int> fhat(static_cast<size_t>(Shat->size()), -1);

  auto try_fhat = [&](auto&& self, int i) -> bool {
    if (!need_indirect && !need_direct) return true;
    if (i == Shat->size()) {
      auto m = PreshapeMap{A, B, MonotoneMap(S, T, f), MonotoneMap(Shat, That, fhat)};
      if (need_indirect) {
        auto cert = is_indirect(m);
        if (cert.certified()) {
          collector.add(ai, bi, "search", CertKind::indirect_map, m, cert.status);
          need_indirect = false;
        }
      }
      if (need_direct) {
        auto cert = is_direct(m);
        if (cert.certified()) {
          collector.add(bi, ai, "search", CertKind::direct_map, m, cert.status);
          need_direct = false;
        }
      }
      return !need_indirect && !need_direct;
    }
    for (int t = 0; t < That->size(); ++t) {
      if (B.sigma(t) != f[static_cast<size_t>(A.sigma(i))]) continue;  // square
      bool mono = true;
      for (int j = 0; j < i && mono; ++j) {
        if (Shat->leq(j, i) && !That->leq(fhat[static_cast<size_t>(j)], t)) mono = false;
        if (Shat->leq(i, j) && !That->leq(t, fhat[static_cast<size_t>(j)])) mono = false;
      }
      if (!mono) continue;
      fhat[static_cast<size_t>(i)] = t;
      if (self(self, i + 1)) {
        fhat[static_cast<size_t>(i)] = -1;
        return true;
      }
      fhat[static_cast<size_t>(i)] = -1;
    }
    return false;
  };

  auto try_f = [&](auto&& self, int s) -> bool {
    if (s == S->size()) return try_fhat(try_fhat, 0);
    for (int t = 0; t < T->size(); ++t) {
      if ((t == ini_t) != (s == ini_s)) continue;  // fiber condition
      bool mono = true;
      for (int j = 0; j < s && mono; ++j) {
        if (S->leq(j, s) && !T->leq(f[static_cast<size_t>(j)], t)) mono = false;
        if (S->leq(s, j) && !T->leq(t, f[static_cast<size_t>(j)])) mono = false;
      }
      if (!mono) continue;
      f[static_cast<size_t>(s)] = t;
      if (self(self, s + 1)) {
        f[static_cast<size_t>(s)] = -1;
        return true;
      }
      f[static_cast<size_t>(s)] = -1;
    }
    return false;
  };
  try_f(try_f, 0);
}

}  // namespace

TaylorGraph build_taylor_graph(const ShapeInventory& inv) {
  TaylorGraph g;
  std::map<std::string, int> node_of_key;
  for (const auto& e : inv.entries) {
    if (e.inane) {
      g.excluded_inane.push_back(e);
      continue;
    }
    TaylorNode node{e, false, std::nullopt};
    if (auto n = cube_index_of(e.shape)) {
      node.is_cube = true;
      node.cube_n = n;
    }
    node_of_key[e.key] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(std::move(node));
  }
  EdgeCollector collector{g, {}};
  const int n = static_cast<int>(g.nodes.size());

  auto find_node = [&](const Preshape& p) -> std::optional<int> {
    auto it = node_of_key.find(preshape_key(p));
    if (it == node_of_key.end()) return std::nullopt;
    return it->second;
  };

  // cube inclusions
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !g.nodes[static_cast<size_t>(a)].is_cube || !g.nodes[static_cast<size_t>(b)].is_cube)
        continue;
      int na = *g.nodes[static_cast<size_t>(a)].cube_n;
      int nb = *g.nodes[static_cast<size_t>(b)].cube_n;
      if (na >= nb) continue;
      auto m = cube_inclusion_map(na, nb);
      auto cert = is_indirect(m);
      collector.add(a, b, "cube-inclusion", CertKind::indirect_map, std::move(m), cert.status);
    }

  for (int a = 0; a < n; ++a) {
    const auto& entry = g.nodes[static_cast<size_t>(a)].entry;
    // sigma -> free shape on its domain
    try {
      auto m = e_to_free_map(entry.shape);
      if (auto target = find_node(m.dst)) {
        auto cert = is_indirect(m);
        collector.add(a, *target, "e-to-free", CertKind::indirect_map, std::move(m), cert.status);
      }
    } catch (const error&) {
    }
    // v_sigma <-> sigma
    try {
      auto m = generator_image_map(entry.shape);
      if (auto source = find_node(m.src)) {
        auto icert = is_indirect(m);
        collector.add(*source, a, "generator-image", CertKind::indirect_map, m, icert.status);
        auto dcert = is_direct(m);
        collector.add(a, *source, "generator-image", CertKind::direct_map, m, dcert.status);
      }
    } catch (const error&) {
    }
    // free restrictions out of a free shape
    if (entry.provenance == "free" || cube_index_of(entry.shape)) {
      const auto& s_hat = entry.shape.domain();
      int ini = *s_hat->initial();
      std::vector<int> others;
      for (int i = 0; i < s_hat->size(); ++i)
        if (i != ini) others.push_back(i);
      for (long mask = 0; mask < (1l << others.size()); ++mask) {
        std::vector<std::string> labels;
        labels.push_back(s_hat->label(ini));
        for (size_t b = 0; b < others.size(); ++b)
          if (mask & (1l << b)) labels.push_back(s_hat->label(others[b]));
        try {
          auto m = free_restriction_map(s_hat, labels);
          auto source = find_node(m.src);
          if (!source) continue;
          auto icert = is_indirect(m);
          collector.add(*source, a, "free-restriction", CertKind::indirect_map, m, icert.status);
          auto dcert = is_direct(m);
          collector.add(a, *source, "free-restriction", CertKind::direct_map, m, dcert.status);
        } catch (const error&) {
        }
      }
    }
    // cubical comparison through the cover partition
    if (entry.nsigma && entry.nsigma->finite) {
      auto cube = as_cube(entry.shape.codomain());
      std::vector<int> block(cube->atoms.size(), -1);
      for (size_t a_i = 0; a_i < cube->atoms.size(); ++a_i) {
        const auto& atom_label = entry.shape.codomain()->label(cube->atoms[a_i]);
        for (size_t c = 0; c < entry.nsigma->cover.size() && block[a_i] == -1; ++c)
          for (const auto& l : entry.nsigma->cover[c])
            if (l == atom_label) {
              block[a_i] = static_cast<int>(c);
              break;
            }
      }
      try {
        auto maps = cube_cover_maps(entry.shape, block);
        auto mid = find_node(maps.intermediate);
        if (mid) {
          auto dcert = is_direct(maps.to_sigma);
          collector.add(a, *mid, "cube-cover", CertKind::direct_map, maps.to_sigma, dcert.status);
          auto icert = is_indirect(maps.to_cube);
          if (auto target = find_node(maps.to_cube.dst))
            collector.add(*mid, *target, "cube-cover", CertKind::indirect_map, maps.to_cube,
                          icert.status);
        }
      } catch (const error&) {
      }
    }
  }

  // bounded search over the remaining pairs
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) search_pair(collector, g, a, b);

  std::sort(g.edges.begin(), g.edges.end(), [](const TaylorEdge& x, const TaylorEdge& y) {
    return std::tie(x.from, x.to, x.kind) < std::tie(y.from, y.to, y.kind);
  });
  strongly_connected_components(g);
  return g;
}

bool replay_edge(const TaylorEdge& edge) {
  if (edge.direction == CertKind::indirect_map) return is_indirect(edge.map).certified();
  return is_direct(edge.map).certified();
}

ClassifyReport classify(const TaylorGraph& graph) {
  ClassifyReport report;
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<std::vector<int>> members(static_cast<size_t>(graph.scc_count));
  for (int v = 0; v < n; ++v)
    members[static_cast<size_t>(graph.scc_id[static_cast<size_t>(v)])].push_back(v);

  // reachability between components over certified edges
  std::vector<std::set<int>> comp_adj(static_cast<size_t>(graph.scc_count));
  for (const auto& e : graph.edges) {
    int cf = graph.scc_id[static_cast<size_t>(e.from)];
    int ct = graph.scc_id[static_cast<size_t>(e.to)];
    if (cf != ct) comp_adj[static_cast<size_t>(cf)].insert(ct);
  }
  auto reachable_from = [&](int c) {
    std::set<int> seen{c};
    std::vector<int> work{c};
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      for (int y : comp_adj[static_cast<size_t>(x)])
        if (seen.insert(y).second) work.push_back(y);
    }
    return seen;
  };

  std::map<int, int> cube_class;  // n -> component containing iota_n
  for (int v = 0; v < n; ++v)
    if (graph.nodes[static_cast<size_t>(v)].is_cube)
      cube_class[*graph.nodes[static_cast<size_t>(v)].cube_n] =
          graph.scc_id[static_cast<size_t>(v)];

  for (int c = 0; c < graph.scc_count; ++c) {
    ClassInfo info;
    info.members = members[static_cast<size_t>(c)];
    for (int v : info.members) {
      const auto& node = graph.nodes[static_cast<size_t>(v)];
      if (node.is_cube) info.contains_cube = true;
      if (node.entry.nsigma && node.entry.nsigma->finite) {
        if (info.n_value && *info.n_value != node.entry.nsigma->value)
          fail(errc::inconsistent_class,
               "two cubical members of one class disagree on the classifier");
        info.n_value = node.entry.nsigma->value;
      }
      if (node.is_cube) {
        if (info.n_value && *info.n_value != *node.cube_n)
          fail(errc::inconsistent_class, "cube member disagrees with the class value");
        info.n_value = node.cube_n;
      }
    }
    info.smallest_member = graph.nodes[static_cast<size_t>(info.members.front())].entry.name;
    if (info.contains_cube) {
      info.conjecture = "cube-linked";
    } else if (info.n_value && cube_class.count(*info.n_value) &&
               reachable_from(c).count(cube_class[*info.n_value])) {
      info.conjecture = "cube-linked";
      info.semantic_only_reverse = true;
    } else {
      info.conjecture = "open";
      ++report.open_classes;
    }
    report.classes.push_back(std::move(info));
  }

  std::map<int, std::vector<int>> buckets;
  for (int v = 0; v < n; ++v) {
    const auto& node = graph.nodes[static_cast<size_t>(v)];
    if (node.is_cube)
      buckets[*node.cube_n].push_back(v);
    else if (node.entry.nsigma && node.entry.nsigma->finite)
      buckets[node.entry.nsigma->value].push_back(v);
  }
  for (auto& [k, vs] : buckets) report.cube_buckets.emplace_back(k, std::move(vs));
  return report;
}

std::string to_dot(const TaylorGraph& graph) {
  std::ostringstream out;
  out << "digraph taylor {\n  rankdir=LR;\n";
  for (size_t v = 0; v < graph.nodes.size(); ++v) {
    const auto& node = graph.nodes[v];
    out << "  n" << v << " [label=\"" << node.entry.name;
    if (node.is_cube) out << " iota_" << *node.cube_n;
    if (node.entry.nsigma && node.entry.nsigma->finite)
      out << " [n=" << node.entry.nsigma->value << "]";
    out << "\"];\n";
  }
  std::set<std::pair<int, int>> drawn;
  for (const auto& e : graph.edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.kind << "\"];\n";
    drawn.insert({e.from, e.to});
  }
  // semantic-only edges implied by the cubical classifier
  std::map<int, int> cube_node;
  for (size_t v = 0; v < graph.nodes.size(); ++v)
    if (graph.nodes[v].is_cube) cube_node[*graph.nodes[v].cube_n] = static_cast<int>(v);
  for (size_t v = 0; v < graph.nodes.size(); ++v) {
    const auto& node = graph.nodes[v];
    if (node.is_cube || !node.entry.nsigma || !node.entry.nsigma->finite) continue;
    auto it = cube_node.find(node.entry.nsigma->value);
    if (it == cube_node.end()) continue;
    if (!drawn.count({it->second, static_cast<int>(v)}))
      out << "  n" << it->second << " -> n" << v << " [style=dashed, label=\"semantic\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace shapecalc
