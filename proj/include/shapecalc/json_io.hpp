#ifndef SHAPECALC_JSON_IO_HPP
#define SHAPECALC_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "shapecalc/shape_maps.hpp"
#include "shapecalc/taylor.hpp"

namespace shapecalc {

using json = nlohmann::ordered_json;

// Documents. A poset is {"elements": [...], "relations": [[a,b], ...]};
// a map or preshape is {"domain": <poset|path>, "codomain": <poset|path>,
// "assign": {label: label}}. String values for domain/codomain are read
// as file paths relative to base_dir.

json poset_to_json(const PosetPtr& p);
PosetPtr poset_from_json(const json& doc);
PosetPtr load_poset(const std::string& path);

json map_to_json(const MonotoneMap& f);
MonotoneMap map_from_json(const json& doc, const std::string& base_dir = "");
MonotoneMap load_map(const std::string& path);

json preshape_to_json(const Preshape& p);
Preshape preshape_from_json(const json& doc, const std::string& base_dir = "");
Preshape load_preshape(const std::string& path);

/// Square document for `compare`: {"f": {label: label}, "fhat": {...}},
/// the two preshapes are supplied separately.
PreshapeMap preshape_map_from_json(const Preshape& src, const Preshape& dst, const json& doc);

json contractibility_to_json(const ContractibilityVerdict& v);
json extremal_to_json(const ExtremalCertificate& c);
json shape_verdict_to_json(const ShapeVerdict& v);
json direction_to_json(const DirectionCertificate& c);
json nsigma_to_json(const NSigma& n);
json inventory_to_json(const ShapeInventory& inv);
json classify_report_to_json(const TaylorGraph& g, const ClassifyReport& r);

}  // namespace shapecalc

#endif
