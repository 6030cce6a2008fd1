#include "shapecalc/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace shapecalc {

const char* errc_name(errc c) {
  switch (c) {
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::unknown_label: return "UnknownLabel";
    case errc::cycle_detected: return "CycleDetected";
    case errc::codomain_mismatch: return "CodomainMismatch";
    case errc::domain_mismatch: return "DomainMismatch";
    case errc::not_monotone: return "NotMonotone";
    case errc::no_initial_object: return "NoInitialObject";
    case errc::empty_fiber_over_initial: return "EmptyFiberOverInitial";
    case errc::missing_joins: return "MissingJoins";
    case errc::joins_undefined: return "JoinsUndefined";
    case errc::not_full: return "NotFull";
    case errc::not_reduced: return "NotReduced";
    case errc::not_cubical: return "NotCubical";
    case errc::not_shape: return "NotShape";
    case errc::not_surjective: return "NotSurjective";
    case errc::inane_shape: return "InaneShape";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::square_not_commuting: return "SquareNotCommuting";
    case errc::initial_fiber_violation: return "InitialFiberViolation";
    case errc::size_limit: return "SizeLimit";
    case errc::inconsistent_class: return "InconsistentClass";
    case errc::image_order_collapse: return "ImageOrderCollapse";
    case errc::invalid_document: return "InvalidDocument";
  }
  return "UnknownError";
}

namespace {

void transitive_close(std::vector<char>& m, int n) {
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!m[static_cast<size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j)
        if (m[static_cast<size_t>(k) * n + j]) m[static_cast<size_t>(i) * n + j] = 1;
    }
}

// Sorts labels, permutes the matrix to match, verifies poset axioms.
PosetPtr finish_poset(std::vector<std::string> labels, std::vector<char> leq) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return labels[static_cast<size_t>(a)] < labels[static_cast<size_t>(b)]; });

  std::vector<std::string> sorted_labels(static_cast<size_t>(n));
  std::vector<char> sorted_leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    sorted_labels[static_cast<size_t>(i)] = labels[static_cast<size_t>(order[static_cast<size_t>(i)])];
    for (int j = 0; j < n; ++j)
      sorted_leq[static_cast<size_t>(i) * n + j] =
          leq[static_cast<size_t>(order[static_cast<size_t>(i)]) * n + order[static_cast<size_t>(j)]];
  }
  return Poset::from_closed_matrix(std::move(sorted_labels), std::move(sorted_leq));
}

}  // namespace

PosetPtr Poset::from_closed_matrix(std::vector<std::string> labels, std::vector<char> leq) {
  const int n = static_cast<int>(labels.size());
  for (int i = 0; i + 1 < n; ++i)
    if (labels[static_cast<size_t>(i)] >= labels[static_cast<size_t>(i) + 1])
      return finish_poset(std::move(labels), std::move(leq));

  for (int i = 0; i < n; ++i)
    if (!leq[static_cast<size_t>(i) * n + i]) fail(errc::cycle_detected, "relation is not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[static_cast<size_t>(i) * n + j] && leq[static_cast<size_t>(j) * n + i])
        fail(errc::cycle_detected,
             "antisymmetry violated between '" + labels[static_cast<size_t>(i)] + "' and '" +
                 labels[static_cast<size_t>(j)] + "'");
  std::vector<char> closed = leq;
  transitive_close(closed, n);
  if (closed != leq) fail(errc::cycle_detected, "relation is not transitively closed");

  auto p = std::shared_ptr<Poset>(new Poset());
  p->labels_ = std::move(labels);
  p->leq_ = std::move(leq);
  return p;
}

PosetPtr Poset::build(std::vector<std::string> labels,
                      const std::vector<std::pair<std::string, std::string>>& relations) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) fail(errc::duplicate_label, "label '" + l + "' appears twice");

  std::sort(labels.begin(), labels.end());
  const int n = static_cast<int>(labels.size());
  auto index = [&](const std::string& l) {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    if (it == labels.end() || *it != l) fail(errc::unknown_label, "label '" + l + "' is not an element");
    return static_cast<int>(it - labels.begin());
  };

  std::vector<char> m(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
  for (const auto& [a, b] : relations) m[static_cast<size_t>(index(a)) * n + index(b)] = 1;
  transitive_close(m, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m[static_cast<size_t>(i) * n + j] && m[static_cast<size_t>(j) * n + i])
        fail(errc::cycle_detected, "cycle through '" + labels[static_cast<size_t>(i)] + "' and '" +
                                       labels[static_cast<size_t>(j)] + "'");

  auto p = std::shared_ptr<Poset>(new Poset());
  p->labels_ = std::move(labels);
  p->leq_ = std::move(m);
  return p;
}

int Poset::index_of(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    fail(errc::unknown_label, "label '" + label + "' is not an element");
  return static_cast<int>(it - labels_.begin());
}

std::optional<int> Poset::find(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

std::optional<int> Poset::initial() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    bool least = true;
    for (int j = 0; j < n && least; ++j) least = leq(i, j);
    if (least) return i;
  }
  return std::nullopt;
}

std::optional<int> Poset::terminal() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    bool greatest = true;
    for (int j = 0; j < n && greatest; ++j) greatest = leq(j, i);
    if (greatest) return i;
  }
  return std::nullopt;
}

std::vector<int> Poset::minimal_elements() const {
  std::vector<int> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    bool minimal = true;
    for (int j = 0; j < n && minimal; ++j) minimal = !lt(j, i);
    if (minimal) out.push_back(i);
  }
  return out;
}

std::vector<int> Poset::maximal_elements() const {
  std::vector<int> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    bool maximal = true;
    for (int j = 0; j < n && maximal; ++j) maximal = !lt(i, j);
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<int> Poset::upper_covers(int i) const {
  std::vector<int> out;
  const int n = size();
  for (int j = 0; j < n; ++j) {
    if (!lt(i, j)) continue;
    bool cover = true;
    for (int k = 0; k < n && cover; ++k) cover = !(lt(i, k) && lt(k, j));
    if (cover) out.push_back(j);
  }
  return out;
}

std::vector<int> Poset::lower_covers(int i) const {
  std::vector<int> out;
  const int n = size();
  for (int j = 0; j < n; ++j) {
    if (!lt(j, i)) continue;
    bool cover = true;
    for (int k = 0; k < n && cover; ++k) cover = !(lt(j, k) && lt(k, i));
    if (cover) out.push_back(j);
  }
  return out;
}

std::optional<int> Poset::join(const std::vector<int>& members) const {
  if (members.empty()) return initial();
  const int n = size();
  std::optional<int> best;
  for (int u = 0; u < n; ++u) {
    bool upper = true;
    for (int m : members)
      if (!leq(m, u)) {
        upper = false;
        break;
      }
    if (!upper) continue;
    if (!best || leq(u, *best)) {
      // candidate least upper bound; verify against all other upper bounds below
      best = u;
    }
  }
  if (!best) return std::nullopt;
  // least: below every upper bound
  for (int u = 0; u < n; ++u) {
    bool upper = true;
    for (int m : members)
      if (!leq(m, u)) {
        upper = false;
        break;
      }
    if (upper && !leq(*best, u)) return std::nullopt;
  }
  return best;
}

std::optional<int> Poset::join2(int a, int b) const { return join({a, b}); }

bool Poset::has_all_joins() const {
  if (!initial()) return false;
  const int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!join2(a, b)) return false;
  return true;
}

std::vector<int> Poset::down_closure(const std::vector<int>& members) const {
  std::vector<char> in(static_cast<size_t>(size()), 0);
  for (int m : members)
    for (int x = 0; x < size(); ++x)
      if (leq(x, m)) in[static_cast<size_t>(x)] = 1;
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (in[static_cast<size_t>(x)]) out.push_back(x);
  return out;
}

bool Poset::is_down_closed(const std::vector<int>& members) const {
  std::vector<char> in(static_cast<size_t>(size()), 0);
  for (int m : members) in[static_cast<size_t>(m)] = 1;
  for (int m : members)
    for (int x = 0; x < size(); ++x)
      if (leq(x, m) && !in[static_cast<size_t>(x)]) return false;
  return true;
}

namespace {

// Iso-invariant signature used to prune permutation search.
std::vector<long> element_signature(const Poset& p, int i) {
  long down = 0, up = 0;
  for (int j = 0; j < p.size(); ++j) {
    if (p.leq(j, i)) ++down;
    if (p.leq(i, j)) ++up;
  }
  return {down, up, static_cast<long>(p.upper_covers(i).size()),
          static_cast<long>(p.lower_covers(i).size())};
}

void search_isos(const Poset& p, const Poset& q, std::vector<int>& partial, std::vector<char>& used,
                 std::vector<std::vector<int>>& out, bool first_only) {
  const int n = p.size();
  int i = static_cast<int>(partial.size());
  if (i == n) {
    out.push_back(partial);
    return;
  }
  auto sig_i = element_signature(p, i);
  for (int c = 0; c < n; ++c) {
    if (used[static_cast<size_t>(c)]) continue;
    if (element_signature(q, c) != sig_i) continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j)
      ok = (p.leq(j, i) == q.leq(partial[static_cast<size_t>(j)], c)) &&
           (p.leq(i, j) == q.leq(c, partial[static_cast<size_t>(j)]));
    if (!ok) continue;
    partial.push_back(c);
    used[static_cast<size_t>(c)] = 1;
    search_isos(p, q, partial, used, out, first_only);
    used[static_cast<size_t>(c)] = 0;
    partial.pop_back();
    if (first_only && !out.empty()) return;
  }
}

}  // namespace

std::string Poset::canonical_key() const {
  const int n = size();
  if (n == 0) return "0:";
  // Lexicographically smallest matrix encoding over all permutations.
  // Candidates for each position are restricted to a linear extension
  // (only elements whose down-set is already placed), which both prunes
  // the search and keeps the canonical matrix upper-triangular-friendly.
  std::string best;
  std::vector<int> at;                               // new position -> element
  std::vector<char> placed(static_cast<size_t>(n), 0);
  auto rec = [&](auto&& self) -> void {
    int position = static_cast<int>(at.size());
    if (position == n) {
      std::string enc;
      enc.reserve(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          enc.push_back(leq(at[static_cast<size_t>(i)], at[static_cast<size_t>(j)]) ? '1' : '0');
      if (best.empty() || enc < best) best = enc;
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (placed[static_cast<size_t>(e)]) continue;
      bool ready = true;
      for (int d = 0; d < n && ready; ++d)
        if (lt(d, e) && !placed[static_cast<size_t>(d)]) ready = false;
      if (!ready) continue;
      at.push_back(e);
      placed[static_cast<size_t>(e)] = 1;
      self(self);
      placed[static_cast<size_t>(e)] = 0;
      at.pop_back();
    }
  };
  rec(rec);
  return std::to_string(n) + ":" + best;
}

std::vector<std::vector<int>> all_isomorphisms(const PosetPtr& p, const PosetPtr& q) {
  std::vector<std::vector<int>> out;
  if (p->size() != q->size()) return out;
  std::vector<int> partial;
  std::vector<char> used(static_cast<size_t>(q->size()), 0);
  search_isos(*p, *q, partial, used, out, false);
  return out;
}

std::optional<std::vector<int>> find_isomorphism(const PosetPtr& p, const PosetPtr& q) {
  if (p->size() != q->size()) return std::nullopt;
  std::vector<std::vector<int>> out;
  std::vector<int> partial;
  std::vector<char> used(static_cast<size_t>(q->size()), 0);
  search_isos(*p, *q, partial, used, out, true);
  if (out.empty()) return std::nullopt;
  return out.front();
}

PosetPtr one_point_poset(const std::string& label) { return Poset::build({label}, {}); }

PosetPtr empty_poset() { return Poset::build({}, {}); }

PosetPtr induced_subposet(const PosetPtr& p, const std::vector<int>& keep) {
  std::vector<int> ks = keep;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const int m = static_cast<int>(ks.size());
  std::vector<std::string> labels(static_cast<size_t>(m));
  std::vector<char> leq(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    if (ks[static_cast<size_t>(i)] < 0 || ks[static_cast<size_t>(i)] >= p->size())
      fail(errc::unknown_label, "index out of range");
    labels[static_cast<size_t>(i)] = p->label(ks[static_cast<size_t>(i)]);
    for (int j = 0; j < m; ++j)
      leq[static_cast<size_t>(i) * m + j] =
          p->leq(ks[static_cast<size_t>(i)], ks[static_cast<size_t>(j)]) ? 1 : 0;
  }
  return Poset::from_closed_matrix(std::move(labels), std::move(leq));
}

PosetPtr induced_subposet_labels(const PosetPtr& p, const std::vector<std::string>& keep) {
  std::vector<int> ks;
  ks.reserve(keep.size());
  for (const auto& l : keep) ks.push_back(p->index_of(l));
  return induced_subposet(p, ks);
}

PosetPtr product(const PosetPtr& a, const PosetPtr& b) {
  const int na = a->size(), nb = b->size();
  const int n = na * nb;
  std::vector<std::string> labels(static_cast<size_t>(n));
  std::vector<char> leq(static_cast<size_t>(n) * n, 0);
  auto id = [&](int i, int j) { return i * nb + j; };
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      labels[static_cast<size_t>(id(i, j))] = "(" + a->label(i) + "," + b->label(j) + ")";
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l)
          leq[static_cast<size_t>(id(i, j)) * n + id(k, l)] = (a->leq(i, k) && b->leq(j, l)) ? 1 : 0;
  return finish_poset(std::move(labels), std::move(leq));
}

MonotoneMap::MonotoneMap(PosetPtr dom, PosetPtr cod, std::vector<int> assign)
    : dom_(std::move(dom)), cod_(std::move(cod)), assign_(std::move(assign)) {
  if (static_cast<int>(assign_.size()) != dom_->size())
    fail(errc::domain_mismatch, "assignment size does not match domain");
  for (int v : assign_)
    if (v < 0 || v >= cod_->size()) fail(errc::unknown_label, "assignment target out of range");
  for (int i = 0; i < dom_->size(); ++i)
    for (int j = 0; j < dom_->size(); ++j)
      if (dom_->leq(i, j) && !cod_->leq(assign_[static_cast<size_t>(i)], assign_[static_cast<size_t>(j)]))
        fail(errc::not_monotone, "map does not preserve '" + dom_->label(i) + "' <= '" +
                                     dom_->label(j) + "'");
}

MonotoneMap MonotoneMap::identity(const PosetPtr& p) {
  std::vector<int> a(static_cast<size_t>(p->size()));
  std::iota(a.begin(), a.end(), 0);
  return MonotoneMap(p, p, std::move(a));
}

MonotoneMap MonotoneMap::constant(const PosetPtr& dom, const PosetPtr& cod, int value) {
  return MonotoneMap(dom, cod, std::vector<int>(static_cast<size_t>(dom->size()), value));
}

MonotoneMap MonotoneMap::from_labels(const PosetPtr& dom, const PosetPtr& cod,
                                     const std::vector<std::pair<std::string, std::string>>& assign) {
  std::vector<int> a(static_cast<size_t>(dom->size()), -1);
  for (const auto& [x, y] : assign) a[static_cast<size_t>(dom->index_of(x))] = cod->index_of(y);
  for (int i = 0; i < dom->size(); ++i)
    if (a[static_cast<size_t>(i)] < 0)
      fail(errc::invalid_document, "no assignment for '" + dom->label(i) + "'");
  return MonotoneMap(dom, cod, std::move(a));
}

bool MonotoneMap::is_full() const {
  for (int i = 0; i < dom_->size(); ++i)
    for (int j = 0; j < dom_->size(); ++j)
      if (cod_->leq(assign_[static_cast<size_t>(i)], assign_[static_cast<size_t>(j)]) &&
          !dom_->leq(i, j))
        return false;
  return true;
}

bool MonotoneMap::is_injective() const {
  std::vector<char> hit(static_cast<size_t>(cod_->size()), 0);
  for (int v : assign_) {
    if (hit[static_cast<size_t>(v)]) return false;
    hit[static_cast<size_t>(v)] = 1;
  }
  return true;
}

bool MonotoneMap::is_surjective() const {
  std::vector<char> hit(static_cast<size_t>(cod_->size()), 0);
  for (int v : assign_) hit[static_cast<size_t>(v)] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

bool MonotoneMap::preserves_initial() const {
  auto di = dom_->initial();
  auto ci = cod_->initial();
  if (!di || !ci) return false;
  return assign_[static_cast<size_t>(*di)] == *ci;
}

bool MonotoneMap::preserves_joins() const {
  if (!dom_->has_all_joins() || !cod_->has_all_joins())
    fail(errc::joins_undefined, "preserves_joins requested on a poset lacking joins");
  // empty join
  if ((*this)(*dom_->initial()) != *cod_->initial()) return false;
  for (int a = 0; a < dom_->size(); ++a)
    for (int b = a + 1; b < dom_->size(); ++b) {
      int j = *dom_->join2(a, b);
      int cj = *cod_->join2(assign_[static_cast<size_t>(a)], assign_[static_cast<size_t>(b)]);
      if (assign_[static_cast<size_t>(j)] != cj) return false;
    }
  return true;
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (!(*f.cod() == *g.dom())) fail(errc::codomain_mismatch, "middle posets differ in composition");
  std::vector<int> a(static_cast<size_t>(f.dom()->size()));
  for (int i = 0; i < f.dom()->size(); ++i) a[static_cast<size_t>(i)] = g(f(i));
  return MonotoneMap(f.dom(), g.cod(), std::move(a));
}

MapPredicates map_predicates(const MonotoneMap& f) {
  MapPredicates out;
  out.monotone = true;  // construction-validated
  out.full = f.is_full();
  out.injective = f.is_injective();
  out.preserves_initial = f.preserves_initial();
  if (f.dom()->has_all_joins() && f.cod()->has_all_joins()) out.preserves_joins = f.preserves_joins();
  if (out.full && !out.injective)
    throw std::logic_error("full map is not injective; poset axiom violated");
  return out;
}

CommaResult comma(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(*f.cod() == *g.cod())) fail(errc::codomain_mismatch, "comma requires a common codomain");
  const int na = f.dom()->size(), nb = g.dom()->size();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      if (f.cod()->leq(f(i), g(j))) pairs.emplace_back(i, j);
  const int n = static_cast<int>(pairs.size());
  std::vector<std::string> labels(static_cast<size_t>(n));
  std::vector<char> leq(static_cast<size_t>(n) * n, 0);
  for (int p = 0; p < n; ++p) {
    labels[static_cast<size_t>(p)] =
        "(" + f.dom()->label(pairs[static_cast<size_t>(p)].first) + "," +
        g.dom()->label(pairs[static_cast<size_t>(p)].second) + ")";
    for (int q = 0; q < n; ++q)
      leq[static_cast<size_t>(p) * n + q] =
          (f.dom()->leq(pairs[static_cast<size_t>(p)].first, pairs[static_cast<size_t>(q)].first) &&
           g.dom()->leq(pairs[static_cast<size_t>(p)].second, pairs[static_cast<size_t>(q)].second))
              ? 1
              : 0;
  }
  auto poset = finish_poset(labels, leq);
  // projections must be re-read off the sorted labels
  std::vector<int> pl(static_cast<size_t>(n)), pr(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) {
    int idx = poset->index_of(labels[static_cast<size_t>(p)]);
    pl[static_cast<size_t>(idx)] = pairs[static_cast<size_t>(p)].first;
    pr[static_cast<size_t>(idx)] = pairs[static_cast<size_t>(p)].second;
  }
  return CommaResult{poset, MonotoneMap(poset, f.dom(), std::move(pl)),
                     MonotoneMap(poset, g.dom(), std::move(pr))};
}

CommaResult comma(const MonotoneMap& f, const std::string& element_of_cod) {
  auto pt = one_point_poset("*");
  auto c = MonotoneMap::constant(pt, f.cod(), f.cod()->index_of(element_of_cod));
  return comma(f, c);
}

CommaResult comma(const std::string& element_of_cod, const MonotoneMap& g) {
  auto pt = one_point_poset("*");
  auto c = MonotoneMap::constant(pt, g.cod(), g.cod()->index_of(element_of_cod));
  return comma(c, g);
}

std::vector<int> slice_under(const MonotoneMap& f, int s) {
  std::vector<int> out;
  for (int i = 0; i < f.dom()->size(); ++i)
    if (f.cod()->leq(f(i), s)) out.push_back(i);
  return out;
}

std::vector<int> slice_over(const MonotoneMap& f, int s) {
  std::vector<int> out;
  for (int i = 0; i < f.dom()->size(); ++i)
    if (f.cod()->leq(s, f(i))) out.push_back(i);
  return out;
}

ImageFactorization image_factorization(const MonotoneMap& f) {
  const int nd = f.dom()->size();
  std::vector<int> values;  // cod indices hit, ascending
  for (int i = 0; i < nd; ++i) values.push_back(f(i));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const int m = static_cast<int>(values.size());
  std::vector<int> cod_to_im(static_cast<size_t>(f.cod()->size()), -1);
  for (int k = 0; k < m; ++k) cod_to_im[static_cast<size_t>(values[static_cast<size_t>(k)])] = k;

  // order generated by f(p) <= f(p') for p <= p'
  std::vector<char> leq(static_cast<size_t>(m) * m, 0);
  for (int k = 0; k < m; ++k) leq[static_cast<size_t>(k) * m + k] = 1;
  for (int p = 0; p < nd; ++p)
    for (int q = 0; q < nd; ++q)
      if (f.dom()->leq(p, q))
        leq[static_cast<size_t>(cod_to_im[static_cast<size_t>(f(p))]) * m +
            cod_to_im[static_cast<size_t>(f(q))]] = 1;
  transitive_close(leq, m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (leq[static_cast<size_t>(a) * m + b] && leq[static_cast<size_t>(b) * m + a])
        fail(errc::image_order_collapse, "generated image order is not antisymmetric");

  std::vector<std::string> labels(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k)
    labels[static_cast<size_t>(k)] = f.cod()->label(values[static_cast<size_t>(k)]);
  // cod labels are sorted, and `values` is ascending, so labels are sorted
  auto im = Poset::from_closed_matrix(std::move(labels), std::move(leq));

  std::vector<int> va(static_cast<size_t>(nd));
  for (int i = 0; i < nd; ++i) va[static_cast<size_t>(i)] = cod_to_im[static_cast<size_t>(f(i))];
  std::vector<int> wa(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) wa[static_cast<size_t>(k)] = values[static_cast<size_t>(k)];
  return ImageFactorization{MonotoneMap(f.dom(), im, std::move(va)),
                            MonotoneMap(im, f.cod(), std::move(wa))};
}

namespace {

std::string set_label(const Poset& base, const std::vector<int>& members) {
  std::string s = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += base.label(members[static_cast<size_t>(i)]);
  }
  s += "}";
  return s;
}

}  // namespace

MonotoneMap DownSetLattice::unit_map() const { return MonotoneMap(base, carrier, unit); }

int DownSetLattice::index_of_set(const std::vector<int>& base_members) const {
  std::vector<int> key = base_members;
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  for (size_t i = 0; i < member_sets.size(); ++i)
    if (member_sets[i] == key) return static_cast<int>(i);
  fail(errc::unknown_label, "subset is not a nonempty down-closed set of the base");
}

DownSetLattice reduced_downset_lattice(const PosetPtr& base) {
  if (!base->initial()) fail(errc::no_initial_object, "down-set lattice needs an initial object");
  const int n = base->size();
  if (n > 20) fail(errc::size_limit, "base poset too large for down-set enumeration");

  std::vector<std::vector<int>> sets;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (1ul << i)) members.push_back(i);
    if (base->is_down_closed(members)) sets.push_back(std::move(members));
  }

  const int m = static_cast<int>(sets.size());
  std::vector<std::string> labels(static_cast<size_t>(m));
  std::vector<char> leq(static_cast<size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    labels[static_cast<size_t>(a)] = set_label(*base, sets[static_cast<size_t>(a)]);
    for (int b = 0; b < m; ++b)
      leq[static_cast<size_t>(a) * m + b] =
          std::includes(sets[static_cast<size_t>(b)].begin(), sets[static_cast<size_t>(b)].end(),
                        sets[static_cast<size_t>(a)].begin(), sets[static_cast<size_t>(a)].end())
              ? 1
              : 0;
  }
  // sort labels together with matrix and member sets
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return labels[static_cast<size_t>(a)] < labels[static_cast<size_t>(b)];
  });
  std::vector<std::string> slabels(static_cast<size_t>(m));
  std::vector<char> sleq(static_cast<size_t>(m) * m, 0);
  std::vector<std::vector<int>> ssets(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    slabels[static_cast<size_t>(i)] = labels[static_cast<size_t>(order[static_cast<size_t>(i)])];
    ssets[static_cast<size_t>(i)] = sets[static_cast<size_t>(order[static_cast<size_t>(i)])];
    for (int j = 0; j < m; ++j)
      sleq[static_cast<size_t>(i) * m + j] =
          leq[static_cast<size_t>(order[static_cast<size_t>(i)]) * m + order[static_cast<size_t>(j)]];
  }
  auto carrier = Poset::from_closed_matrix(slabels, sleq);

  DownSetLattice out;
  out.base = base;
  out.carrier = carrier;
  out.member_sets = std::move(ssets);
  out.unit.resize(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::vector<int> principal = base->down_closure({x});
    out.unit[static_cast<size_t>(x)] = out.index_of_set(principal);
  }
  return out;
}

MonotoneMap universal_extension(const MonotoneMap& f, const DownSetLattice& lattice) {
  if (!(*lattice.base == *f.dom())) fail(errc::domain_mismatch, "lattice base differs from domain");
  if (!f.dom()->initial()) fail(errc::no_initial_object, "domain lacks an initial object");
  if (!f.preserves_initial()) fail(errc::no_initial_object, "map does not preserve the initial object");
  if (!f.cod()->has_all_joins()) fail(errc::missing_joins, "codomain lacks joins");

  const int m = lattice.carrier->size();
  std::vector<int> assign(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::vector<int> imgs;
    for (int x : lattice.member_sets[static_cast<size_t>(k)]) imgs.push_back(f(x));
    auto j = f.cod()->join(imgs);
    if (!j) fail(errc::missing_joins, "join of image set does not exist");
    assign[static_cast<size_t>(k)] = *j;
  }
  MonotoneMap u(lattice.carrier, f.cod(), std::move(assign));
  // u o unit = f, and u preserves joins
  for (int x = 0; x < f.dom()->size(); ++x)
    if (u(lattice.unit[static_cast<size_t>(x)]) != f(x))
      throw std::logic_error("universal extension does not restrict to the map");
  if (!u.preserves_joins()) throw std::logic_error("universal extension does not preserve joins");
  return u;
}

MonotoneMap universal_extension(const MonotoneMap& f) {
  return universal_extension(f, reduced_downset_lattice(f.dom()));
}

MonotoneMap downset_functor_map(const MonotoneMap& f, const DownSetLattice& dom_lattice,
                                const DownSetLattice& cod_lattice) {
  if (!(*dom_lattice.base == *f.dom()) || !(*cod_lattice.base == *f.cod()))
    fail(errc::domain_mismatch, "lattices do not match the map");
  if (!f.preserves_initial())
    fail(errc::no_initial_object, "map does not preserve the initial object");
  const int m = dom_lattice.carrier->size();
  std::vector<int> assign(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::vector<int> image;
    for (int x : dom_lattice.member_sets[static_cast<size_t>(k)]) image.push_back(f(x));
    assign[static_cast<size_t>(k)] = cod_lattice.index_of_set(f.cod()->down_closure(image));
  }
  return MonotoneMap(dom_lattice.carrier, cod_lattice.carrier, std::move(assign));
}

}  // namespace shapecalc
