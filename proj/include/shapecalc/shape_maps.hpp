#ifndef SHAPECALC_SHAPE_MAPS_HPP
#define SHAPECALC_SHAPE_MAPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "shapecalc/shapes.hpp"

namespace shapecalc {

/// Commuting square (f, fhat) between preshapes with f^{-1}(ini) = {ini}.
struct PreshapeMap {
  Preshape src;
  Preshape dst;
  MonotoneMap f;     // S -> T
  MonotoneMap fhat;  // S^ -> T^
};

PreshapeMap validate_map(Preshape src, Preshape dst, MonotoneMap f, MonotoneMap fhat);
PreshapeMap compose(const PreshapeMap& second, const PreshapeMap& first);

enum class CertKind { direct_map, indirect_map };

/// Replayable certificate: per-object comma verdicts plus the aggregate.
struct DirectionCertificate {
  CertKind kind = CertKind::indirect_map;
  Contractibility status = Contractibility::unknown;
  bool fast_path = false;
  std::optional<std::string> failure_reason;
  std::optional<std::string> witness;  // least failing object label
  std::vector<std::pair<std::string, ExtremalCertificate>> evidence;

  bool certified() const { return status == Contractibility::contractible; }
};

/// Every induced slice map sigma/s -> tau/f(s) must be homotopy terminal.
DirectionCertificate is_indirect(const PreshapeMap& m);

/// f must be full and its restriction to the non-initial parts homotopy
/// initial. An isomorphism f short-circuits unless force_slow is set.
DirectionCertificate is_direct(const PreshapeMap& m, bool force_slow = false);

/// The square hypothesis of the cover lemma: for each (k, i) with
/// f(i) <= h(k), the subposet {j | f(i) <= h(g(j)) and g(j) <= k} of J
/// must be contractible.
struct GcResult {
  Contractibility status = Contractibility::unknown;
  std::optional<std::pair<std::string, std::string>> witness;  // (k, i)
  std::vector<std::pair<std::pair<std::string, std::string>, ContractibilityVerdict>> evidence;

  bool ok() const { return status == Contractibility::contractible; }
};
GcResult gc_condition(const MonotoneMap& f, const MonotoneMap& g, const MonotoneMap& h);

// Canonical constructions. Each returns a validated map; the direction
// guarantees are certified by callers and cross-checked in the tests.

/// iota_n -> iota_m induced by including the first n directions.
PreshapeMap cube_inclusion_map(int n, int m);

/// sigma -> i-sigma over the identity of S.
PreshapeMap image_map(const Preshape& sigma);

/// eta_M -> eta_S^ for a nonempty down-closed M containing every minimal
/// element of the non-initial part.
PreshapeMap free_restriction_map(const PosetPtr& s_hat, const std::vector<std::string>& m_labels);

/// sigma -> eta_S^ over the map e; requires sigma full and non-inane.
PreshapeMap e_to_free_map(const Preshape& sigma);

/// v_sigma -> sigma over w_sigma.
PreshapeMap generator_image_map(const Preshape& sigma);

/// The two-step comparison through the preimage of the small cube:
/// to_cube : iota_Q -> iota_n (indirect) and to_sigma : iota_Q -> sigma
/// (direct), for a partition of the cube directions.
struct CubeCoverMaps {
  Preshape intermediate;  // iota_Q : Q^hat -> Q^S
  PreshapeMap to_cube;
  PreshapeMap to_sigma;
};
CubeCoverMaps cube_cover_maps(const Preshape& sigma, const std::vector<int>& direction_block);

}  // namespace shapecalc

#endif
