#ifndef SHAPECALC_SHAPES_HPP
#define SHAPECALC_SHAPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shapecalc/homotopy.hpp"
#include "shapecalc/poset.hpp"

namespace shapecalc {

/// Validated map sigma: S^ -> S where S has an initial object and the
/// fiber over it is nonempty.
struct Preshape {
  MonotoneMap sigma;
  bool full = false;
  bool reduced = false;
  bool finite = true;

  static Preshape validate(MonotoneMap f);

  const PosetPtr& domain() const { return sigma.dom(); }
  const PosetPtr& codomain() const { return sigma.cod(); }
  int codomain_initial() const { return *sigma.cod()->initial(); }
};

struct CubeFamily {
  PosetPtr star;   // subsets of cardinality <= 1
  PosetPtr cube;   // full power set
  Preshape inclusion;
};

/// The standard cube preshape on n directions, labels "{i,j}" and the
/// empty set as the initial object.
CubeFamily cube_family(int n);
PosetPtr cube_poset(int n);

/// "∅" for the empty mask, "{0,2}" style otherwise.
std::string cube_label(std::uint32_t mask);

/// Boolean-lattice recognition: atoms plus the subset-of-atoms bitmask of
/// every element, when the poset is isomorphic to a full power set.
struct CubeStructure {
  std::vector<int> atoms;
  std::vector<std::uint32_t> element_mask;
};
std::optional<CubeStructure> as_cube(const PosetPtr& p);

/// One witness triple of the shape condition and its verdict.
struct ShapeWitness {
  std::string s, t, k;
  PosetPtr subposet;
  ContractibilityVerdict verdict;
};

ShapeWitness shape_witness(const Preshape& sigma, const std::string& s, const std::string& t,
                           const std::string& k);

enum class ShapeStatus { shape, not_shape, unknown };

struct ShapeVerdict {
  ShapeStatus status = ShapeStatus::unknown;
  bool joins_ok = false;
  std::optional<ShapeWitness> counterexample;   // least failing triple
  std::vector<ShapeWitness> unknown_witnesses;

  bool ok() const { return status == ShapeStatus::shape; }
};

/// Iterates every admissible (s, t, k) triple and aggregates the
/// contractibility verdicts; a definite counterexample dominates Unknown.
ShapeVerdict is_shape(const Preshape& sigma);

/// Sufficient criterion for a full preshape: sigma(k) below a join forces
/// it below one of the parts.
bool easy_shape_check(const Preshape& sigma);

/// For a full preshape into a cube: shape iff the image is downward closed.
bool cubical_shape_check(const Preshape& sigma);

struct ImagePreshape {
  Preshape image;        // i-sigma : im sigma -> S
  MonotoneMap sigma_hat; // S^ -> im sigma
};
ImagePreshape image_preshape(const Preshape& sigma);

struct FreeShape {
  Preshape eta;  // S^ -> D*(S^)
  DownSetLattice lattice;
};
FreeShape free_shape(const PosetPtr& s_hat);

/// The factorization of u_sigma through its image, with the per-element
/// slices I^sigma_s and their terminal objects.
struct GeneratorImage {
  DownSetLattice lattice;   // D*(S^)
  MonotoneMap u;            // D*(S^) -> S
  MonotoneMap v_free;       // D*(S^) -> im u
  MonotoneMap v;            // v_sigma : S^ -> im u
  MonotoneMap w;            // w_sigma : im u -> S
  struct Slice {
    std::string s;
    std::vector<std::string> members;
    std::string terminal;
  };
  std::vector<Slice> slices;  // one per element of S, in label order
};
GeneratorImage generator_image(const Preshape& sigma);

struct InaneResult {
  bool inane = false;
  std::optional<std::string> witness;
};
InaneResult is_inane(const Preshape& sigma);

struct EMap {
  MonotoneMap e;      // S -> D*(S^)
  bool valid = false; // e^{-1}(bottom) = {ini}
  Preshape free;      // the free shape on S^
  DownSetLattice lattice;
};
/// e(s) = { s^ | sigma(s^) <= s }. With require_valid, an invalid e (the
/// inane case) raises InaneShape.
EMap e_map(const Preshape& sigma, bool require_valid = true);

/// Verifies u_sigma o e = id_S elementwise for a full preshape with
/// surjective u_sigma.
bool retract_check(const Preshape& sigma);

struct MinCover {
  bool finite = false;
  int value = 0;
  std::vector<int> witness;  // indices into the family
};
/// Exact minimum number of family members covering the universe;
/// branch-and-bound on the lowest uncovered element.
MinCover min_cover(std::uint32_t universe, const std::vector<std::uint32_t>& family);
MinCover min_cover_labels(const std::vector<std::string>& universe,
                          const std::vector<std::vector<std::string>>& family);

struct NSigma {
  bool finite = false;
  int value = 0;
  std::vector<std::vector<std::string>> cover;  // atom labels per chosen set
};
/// mc(S, im sigma) for a finite shape into a cube.
NSigma n_sigma(const Preshape& sigma);

}  // namespace shapecalc

#endif
