#include "shapecalc/json_io.hpp"

#include <fstream>

namespace shapecalc {

namespace {

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_document, "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(errc::invalid_document, "cannot parse '" + path + "': " + e.what());
  }
  return doc;
}

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

PosetPtr poset_from_value(const json& value, const std::string& base_dir) {
  if (value.is_string())
    return poset_from_json(read_file(base_dir + "/" + value.get<std::string>()));
  return poset_from_json(value);
}

}  // namespace

json poset_to_json(const PosetPtr& p) {
  json doc;
  doc["elements"] = p->labels();
  json rels = json::array();
  for (int i = 0; i < p->size(); ++i)
    for (int j : p->upper_covers(i)) rels.push_back({p->label(i), p->label(j)});
  doc["relations"] = rels;
  return doc;
}

PosetPtr poset_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("elements"))
    fail(errc::invalid_document, "poset document needs an 'elements' array");
  std::vector<std::string> labels;
  for (const auto& e : doc["elements"]) labels.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> rels;
  if (doc.contains("relations"))
    for (const auto& r : doc["relations"]) {
      if (!r.is_array() || r.size() != 2)
        fail(errc::invalid_document, "relations must be [a, b] pairs");
      rels.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
    }
  return Poset::build(std::move(labels), rels);
}

PosetPtr load_poset(const std::string& path) { return poset_from_json(read_file(path)); }

json map_to_json(const MonotoneMap& f) {
  json doc;
  doc["domain"] = poset_to_json(f.dom());
  doc["codomain"] = poset_to_json(f.cod());
  json assign = json::object();
  for (int i = 0; i < f.dom()->size(); ++i) assign[f.dom()->label(i)] = f.cod()->label(f(i));
  doc["assign"] = assign;
  return doc;
}

MonotoneMap map_from_json(const json& doc, const std::string& base_dir) {
  if (!doc.is_object() || !doc.contains("domain") || !doc.contains("codomain") ||
      !doc.contains("assign"))
    fail(errc::invalid_document, "map document needs domain, codomain, assign");
  auto dom = poset_from_value(doc["domain"], base_dir);
  auto cod = poset_from_value(doc["codomain"], base_dir);
  std::vector<std::pair<std::string, std::string>> assign;
  for (const auto& [k, v] : doc["assign"].items()) assign.emplace_back(k, v.get<std::string>());
  return MonotoneMap::from_labels(dom, cod, assign);
}

MonotoneMap load_map(const std::string& path) {
  return map_from_json(read_file(path), dir_of(path));
}

json preshape_to_json(const Preshape& p) { return map_to_json(p.sigma); }

Preshape preshape_from_json(const json& doc, const std::string& base_dir) {
  return Preshape::validate(map_from_json(doc, base_dir));
}

Preshape load_preshape(const std::string& path) {
  return preshape_from_json(read_file(path), dir_of(path));
}

PreshapeMap preshape_map_from_json(const Preshape& src, const Preshape& dst, const json& doc) {
  if (!doc.is_object() || !doc.contains("f") || !doc.contains("fhat"))
    fail(errc::invalid_document, "map-of-preshapes document needs 'f' and 'fhat'");
  std::vector<std::pair<std::string, std::string>> fa, fha;
  for (const auto& [k, v] : doc["f"].items()) fa.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : doc["fhat"].items()) fha.emplace_back(k, v.get<std::string>());
  auto f = MonotoneMap::from_labels(src.codomain(), dst.codomain(), fa);
  auto fhat = MonotoneMap::from_labels(src.domain(), dst.domain(), fha);
  return validate_map(src, dst, std::move(f), std::move(fhat));
}

namespace {

std::string status_name(Contractibility s) {
  switch (s) {
    case Contractibility::contractible: return "contractible";
    case Contractibility::not_contractible: return "not-contractible";
    case Contractibility::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

json contractibility_to_json(const ContractibilityVerdict& v) {
  json doc;
  doc["status"] = status_name(v.status);
  if (v.status == Contractibility::contractible) {
    doc["certificate"] = v.certificate;
  } else if (v.status == Contractibility::not_contractible && v.witness) {
    json w;
    switch (v.witness->kind) {
      case NotContractibleWitness::Kind::empty:
        w["kind"] = "empty";
        break;
      case NotContractibleWitness::Kind::disconnected:
        w["kind"] = "disconnected";
        w["components"] = v.witness->components;
        break;
      case NotContractibleWitness::Kind::homology:
        w["kind"] = "homology";
        w["degree"] = v.witness->degree;
        w["rank"] = v.witness->rank;
        {
          json t = json::array();
          for (const auto& x : v.witness->torsion) t.push_back(x.str());
          w["torsion"] = t;
        }
        break;
    }
    doc["witness"] = w;
  } else if (v.status == Contractibility::unknown && v.core) {
    doc["core"] = poset_to_json(v.core);
  }
  return doc;
}

json extremal_to_json(const ExtremalCertificate& c) {
  json doc;
  doc["status"] = status_name(c.status);
  doc["via_adjoint"] = c.via_adjoint;
  if (c.witness) doc["witness"] = *c.witness;
  json ev = json::array();
  for (const auto& [label, verdict] : c.evidence) {
    json item;
    item["object"] = label;
    item["verdict"] = contractibility_to_json(verdict);
    ev.push_back(item);
  }
  doc["evidence"] = ev;
  return doc;
}

json shape_verdict_to_json(const ShapeVerdict& v) {
  json doc;
  switch (v.status) {
    case ShapeStatus::shape: doc["shape"] = "yes"; break;
    case ShapeStatus::not_shape: doc["shape"] = "no"; break;
    case ShapeStatus::unknown: doc["shape"] = "unknown"; break;
  }
  doc["joins"] = v.joins_ok;
  if (v.counterexample) {
    json w;
    w["s"] = v.counterexample->s;
    w["t"] = v.counterexample->t;
    w["k"] = v.counterexample->k;
    w["verdict"] = contractibility_to_json(v.counterexample->verdict);
    doc["witness"] = w;
  }
  if (!v.unknown_witnesses.empty()) {
    json arr = json::array();
    for (const auto& w : v.unknown_witnesses) arr.push_back({{"s", w.s}, {"t", w.t}, {"k", w.k}});
    doc["unknown_witnesses"] = arr;
  }
  return doc;
}

json direction_to_json(const DirectionCertificate& c) {
  json doc;
  doc["kind"] = c.kind == CertKind::direct_map ? "direct" : "indirect";
  doc["status"] = status_name(c.status);
  doc["fast_path"] = c.fast_path;
  if (c.failure_reason) doc["reason"] = *c.failure_reason;
  if (c.witness) doc["witness"] = *c.witness;
  json ev = json::array();
  for (const auto& [label, cert] : c.evidence) {
    json item;
    item["object"] = label;
    item["certificate"] = extremal_to_json(cert);
    ev.push_back(item);
  }
  doc["evidence"] = ev;
  return doc;
}

json nsigma_to_json(const NSigma& n) {
  json doc;
  if (n.finite) {
    doc["n"] = n.value;
    json cover = json::array();
    for (const auto& set : n.cover) cover.push_back(set);
    doc["cover"] = cover;
  } else {
    doc["n"] = "infinity";
  }
  return doc;
}

json inventory_to_json(const ShapeInventory& inv) {
  json doc;
  doc["generators"] = static_cast<int>(inv.generators.size());
  doc["skipped_unknown"] = inv.skipped_unknown;
  json entries = json::array();
  for (const auto& e : inv.entries) {
    json item;
    item["name"] = e.name;
    item["provenance"] = e.provenance;
    item["domain_size"] = e.shape.domain()->size();
    item["codomain_size"] = e.shape.codomain()->size();
    item["inane"] = e.inane;
    if (e.inane_witness) item["inane_witness"] = *e.inane_witness;
    if (e.nsigma) item["n_sigma"] = nsigma_to_json(*e.nsigma);
    entries.push_back(item);
  }
  doc["shapes"] = entries;
  return doc;
}

json classify_report_to_json(const TaylorGraph& g, const ClassifyReport& r) {
  json doc;
  doc["nodes"] = static_cast<int>(g.nodes.size());
  doc["edges"] = static_cast<int>(g.edges.size());
  doc["excluded_inane"] = static_cast<int>(g.excluded_inane.size());
  json excluded = json::array();
  for (const auto& e : g.excluded_inane) excluded.push_back(e.name);
  doc["excluded_inane_names"] = excluded;
  if (!g.skipped_pairs.empty()) doc["skipped_pairs"] = g.skipped_pairs;

  json classes = json::array();
  for (const auto& c : r.classes) {
    json item;
    json members = json::array();
    for (int v : c.members) members.push_back(g.nodes[static_cast<size_t>(v)].entry.name);
    item["members"] = members;
    item["contains_cube"] = c.contains_cube;
    if (c.n_value)
      item["n"] = *c.n_value;
    else
      item["n"] = nullptr;
    item["conjecture"] = c.conjecture;
    if (c.semantic_only_reverse) item["reverse"] = "semantic-only";
    item["smallest_member"] = c.smallest_member;
    classes.push_back(item);
  }
  doc["classes"] = classes;

  json buckets = json::object();
  for (const auto& [nv, nodes] : r.cube_buckets) {
    json arr = json::array();
    for (int v : nodes) arr.push_back(g.nodes[static_cast<size_t>(v)].entry.name);
    buckets[std::to_string(nv)] = arr;
  }
  doc["cube_buckets"] = buckets;
  doc["open_classes"] = r.open_classes;
  return doc;
}

}  // namespace shapecalc
