#ifndef SHAPECALC_HOMOTOPY_HPP
#define SHAPECALC_HOMOTOPY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "shapecalc/poset.hpp"

namespace shapecalc {

using bigint = boost::multiprecision::cpp_int;

/// Simplicial complex; faces[d] lists the d-simplices as sorted vertex
/// index tuples. Produced from posets, where simplices are the nonempty
/// chains.
struct SimplicialComplex {
  std::vector<std::string> vertices;
  std::vector<std::vector<std::vector<int>>> faces;

  int dim() const { return static_cast<int>(faces.size()) - 1; }
  long long face_count(int d) const {
    if (d < 0 || d >= static_cast<int>(faces.size())) return 0;
    return static_cast<long long>(faces[static_cast<size_t>(d)].size());
  }
  long long euler_characteristic() const;
};

SimplicialComplex order_complex(const PosetPtr& p);

/// Reduced integral homology per degree. The empty complex is reported via
/// `empty_complex` (the degree -1 convention) rather than a degree slot.
struct HomologyProfile {
  bool empty_complex = false;
  std::vector<int> betti;                         // reduced betti numbers, degree 0..dim
  std::vector<std::vector<bigint>> torsion;       // invariant factors > 1 per degree
  bool all_trivial() const;
  std::optional<int> first_nonzero_degree() const;
  long long euler_characteristic() const;         // non-reduced, from betti numbers
};

HomologyProfile reduced_homology(const SimplicialComplex& k);

/// Smith normal form diagonal of an integer matrix (invariant factors,
/// including 1s and excluding zeros).
std::vector<bigint> smith_invariant_factors(std::vector<std::vector<bigint>> m);

struct DismantleResult {
  PosetPtr core;
  std::vector<std::string> removed;  // beat points in removal order
};

/// Removes beat points (strict up-set with a minimum or strict down-set
/// with a maximum), lowest label first, until none remain.
DismantleResult dismantle_core(const PosetPtr& p);

enum class Contractibility { contractible, not_contractible, unknown };

struct NotContractibleWitness {
  enum class Kind { empty, disconnected, homology } kind;
  int degree = -1;
  int rank = 0;
  std::vector<bigint> torsion;
  int components = 0;
};

struct ContractibilityVerdict {
  Contractibility status = Contractibility::unknown;
  std::vector<std::string> certificate;  // dismantling sequence when contractible
  std::optional<NotContractibleWitness> witness;
  PosetPtr core;  // beat-point-free remainder when unknown

  bool ok() const { return status == Contractibility::contractible; }
};

ContractibilityVerdict contractibility(const PosetPtr& p);

enum class Side { initial, terminal };
enum class AdjointSide { left, right };

/// The unique adjoint of f on the requested side, when it exists;
/// checked pointwise via the Galois condition.
std::optional<MonotoneMap> adjoint_partner(const MonotoneMap& f, AdjointSide side);

/// Aggregated verdict over all comma posets j/f (terminal) or f/j (initial).
struct ExtremalCertificate {
  Contractibility status = Contractibility::unknown;
  bool via_adjoint = false;
  std::optional<std::string> witness;  // least failing codomain label
  std::vector<std::pair<std::string, ContractibilityVerdict>> evidence;

  bool ok() const { return status == Contractibility::contractible; }
};

ExtremalCertificate homotopy_extremal(const MonotoneMap& f, Side side, bool allow_fast_path = true);

}  // namespace shapecalc

#endif
