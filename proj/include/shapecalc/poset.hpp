#ifndef SHAPECALC_POSET_HPP
#define SHAPECALC_POSET_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapecalc/errors.hpp"

namespace shapecalc {

class Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// Finite poset over opaque string labels. Labels are stored sorted
/// lexicographically; the order relation is a closed boolean matrix, so
/// every query is O(1). Immutable after construction.
class Poset {
public:
  /// Builds the poset whose order is the reflexive-transitive closure of
  /// `relations`. Rejects duplicate labels, unknown labels, and cycles
  /// between distinct elements.
  static PosetPtr build(std::vector<std::string> labels,
                        const std::vector<std::pair<std::string, std::string>>& relations);

  /// Wraps an already-closed relation (positions refer to `labels` before
  /// sorting). Closure and antisymmetry are verified.
  static PosetPtr from_closed_matrix(std::vector<std::string> labels, std::vector<char> leq);

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  int index_of(const std::string& label) const;
  std::optional<int> find(const std::string& label) const;

  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * labels_.size() + b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  std::optional<int> initial() const;
  std::optional<int> terminal() const;
  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  std::vector<int> upper_covers(int i) const;
  std::vector<int> lower_covers(int i) const;

  /// Least upper bound of a subset; the empty join is the initial object.
  std::optional<int> join(const std::vector<int>& members) const;
  std::optional<int> join2(int a, int b) const;
  bool has_all_joins() const;

  std::vector<int> down_closure(const std::vector<int>& members) const;
  bool is_down_closed(const std::vector<int>& members) const;

  bool operator==(const Poset& other) const {
    return labels_ == other.labels_ && leq_ == other.leq_;
  }

  /// Structure-only key, equal for isomorphic posets.
  std::string canonical_key() const;

private:
  Poset() = default;
  std::vector<std::string> labels_;
  std::vector<char> leq_;
};

PosetPtr one_point_poset(const std::string& label = "*");
PosetPtr empty_poset();

/// Full subposet on `keep`; labels are inherited.
PosetPtr induced_subposet(const PosetPtr& p, const std::vector<int>& keep);
PosetPtr induced_subposet_labels(const PosetPtr& p, const std::vector<std::string>& keep);

/// Componentwise order on pairs, labeled "(a,b)".
PosetPtr product(const PosetPtr& a, const PosetPtr& b);

/// Validated order-preserving map.
class MonotoneMap {
public:
  MonotoneMap(PosetPtr dom, PosetPtr cod, std::vector<int> assign);
  static MonotoneMap identity(const PosetPtr& p);
  static MonotoneMap constant(const PosetPtr& dom, const PosetPtr& cod, int value);
  static MonotoneMap from_labels(const PosetPtr& dom, const PosetPtr& cod,
                                 const std::vector<std::pair<std::string, std::string>>& assign);

  const PosetPtr& dom() const { return dom_; }
  const PosetPtr& cod() const { return cod_; }
  int operator()(int i) const { return assign_[static_cast<size_t>(i)]; }
  const std::vector<int>& assign() const { return assign_; }

  bool is_full() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool preserves_initial() const;
  bool preserves_joins() const;  // joins_undefined unless both sides have all joins

  bool operator==(const MonotoneMap& other) const {
    return *dom_ == *other.dom_ && *cod_ == *other.cod_ && assign_ == other.assign_;
  }

private:
  PosetPtr dom_;
  PosetPtr cod_;
  std::vector<int> assign_;
};

/// g after f.
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

struct MapPredicates {
  bool monotone = true;
  bool full = false;
  bool injective = false;
  bool preserves_initial = false;
  std::optional<bool> preserves_joins;
};

/// Flags recomputed from scratch; asserts full => injective.
MapPredicates map_predicates(const MonotoneMap& f);

struct CommaResult {
  PosetPtr poset;
  MonotoneMap proj_left;
  MonotoneMap proj_right;
};

/// Full subposet of dom(f) x dom(g) on pairs with f(i) <= g(j).
CommaResult comma(const MonotoneMap& f, const MonotoneMap& g);
CommaResult comma(const MonotoneMap& f, const std::string& element_of_cod);
CommaResult comma(const std::string& element_of_cod, const MonotoneMap& g);

/// {x in dom | f(x) <= s} resp. {x in dom | s <= f(x)} as index sets.
std::vector<int> slice_under(const MonotoneMap& f, int s);
std::vector<int> slice_over(const MonotoneMap& f, int s);

struct ImageFactorization {
  MonotoneMap v;  // dom -> im, surjective
  MonotoneMap w;  // im -> cod, w o v = f
};

/// Image poset with the order generated by {f(p) <= f(p') : p <= p'}.
ImageFactorization image_factorization(const MonotoneMap& f);

struct DownSetLattice {
  PosetPtr base;
  PosetPtr carrier;                          // nonempty down-closed subsets by inclusion
  std::vector<std::vector<int>> member_sets;  // carrier index -> sorted base indices
  std::vector<int> unit;                      // base index -> carrier index of its principal down-set

  MonotoneMap unit_map() const;
  int index_of_set(const std::vector<int>& base_members) const;  // must be nonempty down-closed
};

/// Nonempty downward-closed subsets of `base` (which must have an initial
/// object), ordered by inclusion; the unit is x -> down-set of {x}.
DownSetLattice reduced_downset_lattice(const PosetPtr& base);

/// u_f : D*(P) -> Q with u_f(M) the join of f(M); unique join-preserving
/// extension of f along the unit.
MonotoneMap universal_extension(const MonotoneMap& f, const DownSetLattice& lattice);
MonotoneMap universal_extension(const MonotoneMap& f);

/// D*(f) : D*(P) -> D*(Q), M -> down-closure of f(M), for f preserving
/// initial objects.
MonotoneMap downset_functor_map(const MonotoneMap& f, const DownSetLattice& dom_lattice,
                                const DownSetLattice& cod_lattice);

/// Order isomorphism as an index relabeling (P index -> Q index), when one
/// exists. Deterministic via canonical forms.
std::optional<std::vector<int>> find_isomorphism(const PosetPtr& p, const PosetPtr& q);

/// All order isomorphisms P -> Q (empty when none).
std::vector<std::vector<int>> all_isomorphisms(const PosetPtr& p, const PosetPtr& q);

}  // namespace shapecalc

#endif
