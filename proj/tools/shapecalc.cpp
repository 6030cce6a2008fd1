#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "shapecalc/json_io.hpp"

namespace sc = shapecalc;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInput = 3;

void write_output(const sc::json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << doc.dump(2) << "\n";
  }
}

int run_check(const std::string& path, const std::string& out_path) {
  auto shape = sc::load_preshape(path);
  sc::json doc;
  doc["preshape"] = {{"full", shape.full}, {"reduced", shape.reduced}, {"finite", shape.finite}};
  auto verdict = sc::is_shape(shape);
  doc["shape"] = sc::shape_verdict_to_json(verdict);
  if (shape.reduced && shape.codomain()->has_all_joins()) {
    auto inane = sc::is_inane(shape);
    doc["inane"] = inane.inane;
    if (inane.witness) doc["inane_witness"] = *inane.witness;
  }
  if (verdict.ok() && sc::as_cube(shape.codomain()))
    doc["n_sigma"] = sc::nsigma_to_json(sc::n_sigma(shape));
  write_output(doc, out_path);
  switch (verdict.status) {
    case sc::ShapeStatus::shape: return kExitHolds;
    case sc::ShapeStatus::not_shape: return kExitFails;
    case sc::ShapeStatus::unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int run_homotopy(const std::string& path, const std::string& out_path) {
  auto poset = sc::load_poset(path);
  auto verdict = sc::contractibility(poset);
  write_output(sc::contractibility_to_json(verdict), out_path);
  switch (verdict.status) {
    case sc::Contractibility::contractible: return kExitHolds;
    case sc::Contractibility::not_contractible: return kExitFails;
    case sc::Contractibility::unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int run_construct(const std::string& kind, const std::string& path, const std::string& out_path) {
  if (kind == "free") {
    // accepts either a poset document or a preshape document (its domain)
    std::ifstream in(path);
    if (!in) sc::fail(sc::errc::invalid_document, "cannot open '" + path + "'");
    sc::json doc;
    in >> doc;
    sc::PosetPtr base = doc.contains("elements") ? sc::poset_from_json(doc)
                                                 : sc::load_preshape(path).domain();
    auto free = sc::free_shape(base);
    write_output(sc::preshape_to_json(free.eta), out_path);
    return kExitHolds;
  }
  auto shape = sc::load_preshape(path);
  if (kind == "image") {
    write_output(sc::preshape_to_json(sc::image_preshape(shape).image), out_path);
    return kExitHolds;
  }
  if (kind == "vsigma") {
    auto gi = sc::generator_image(shape);
    write_output(sc::preshape_to_json(sc::Preshape::validate(gi.v)), out_path);
    return kExitHolds;
  }
  if (kind == "emap") {
    auto em = sc::e_map(shape);
    write_output(sc::map_to_json(em.e), out_path);
    return kExitHolds;
  }
  sc::fail(sc::errc::invalid_document, "unknown construction '" + kind + "'");
}

int run_compare(const std::string& src_path, const std::string& dst_path,
                const std::string& map_path, const std::string& out_path) {
  auto src = sc::load_preshape(src_path);
  auto dst = sc::load_preshape(dst_path);
  std::ifstream in(map_path);
  if (!in) sc::fail(sc::errc::invalid_document, "cannot open '" + map_path + "'");
  sc::json map_doc;
  in >> map_doc;

  sc::json doc;
  try {
    auto m = sc::preshape_map_from_json(src, dst, map_doc);
    doc["valid"] = true;
    auto direct = sc::is_direct(m);
    auto indirect = sc::is_indirect(m);
    doc["direct"] = sc::direction_to_json(direct);
    doc["indirect"] = sc::direction_to_json(indirect);
    write_output(doc, out_path);
    bool unknown = direct.status == sc::Contractibility::unknown ||
                   indirect.status == sc::Contractibility::unknown;
    return unknown ? kExitUnknown : kExitHolds;
  } catch (const sc::error& e) {
    if (e.code() == sc::errc::square_not_commuting || e.code() == sc::errc::initial_fiber_violation) {
      doc["valid"] = false;
      doc["reason"] = e.what();
      write_output(doc, out_path);
      return kExitFails;
    }
    throw;
  }
}

int run_nsigma(const std::string& path, const std::string& out_path) {
  auto shape = sc::load_preshape(path);
  auto n = sc::n_sigma(shape);
  write_output(sc::nsigma_to_json(n), out_path);
  return kExitHolds;
}

int run_classify(int gen_bound, int cube_bound, int target_bound, const std::string& dot_path,
                 const std::string& report_path) {
  auto inventory = sc::enumerate_shapes(gen_bound, target_bound, cube_bound);
  auto graph = sc::build_taylor_graph(inventory);
  auto report = sc::classify(graph);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    out << sc::to_dot(graph);
  }
  sc::json doc = sc::classify_report_to_json(graph, report);
  doc["inventory"] = sc::inventory_to_json(inventory);
  write_output(doc, report_path);
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shape calculus toolkit: validate shapes, certify maps, classify excision"};
  app.require_subcommand(1);

  std::string input, out_path, kind, src_path, dst_path, map_path, dot_path, report_path;
  int gen_bound = 3, cube_bound = 3, target_bound = 8;

  auto* check = app.add_subcommand("check", "validate a preshape and decide the shape condition");
  check->add_option("input", input)->required();
  check->add_option("-o,--output", out_path);

  auto* homotopy = app.add_subcommand("homotopy", "decide contractibility of a poset");
  homotopy->add_option("input", input)->required();
  homotopy->add_option("-o,--output", out_path);

  auto* construct = app.add_subcommand("construct", "build image/free/vsigma/emap from a shape");
  construct->add_option("kind", kind)->required()->check(CLI::IsMember({"image", "free", "vsigma", "emap"}));
  construct->add_option("input", input)->required();
  construct->add_option("-o,--output", out_path);

  auto* compare = app.add_subcommand("compare", "certify direct/indirect for a map of preshapes");
  compare->add_option("src", src_path)->required();
  compare->add_option("dst", dst_path)->required();
  compare->add_option("map", map_path)->required();
  compare->add_option("-o,--output", out_path);

  auto* nsigma = app.add_subcommand("nsigma", "cubical excision classifier");
  nsigma->add_option("input", input)->required();
  nsigma->add_option("-o,--output", out_path);

  auto* classify = app.add_subcommand("classify", "enumerate shapes and build the certified graph");
  classify->add_option("--gen-bound", gen_bound);
  classify->add_option("--cube-bound", cube_bound);
  classify->add_option("--target-bound", target_bound);
  classify->add_option("--dot", dot_path);
  classify->add_option("--report", report_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(input, out_path);
    if (homotopy->parsed()) return run_homotopy(input, out_path);
    if (construct->parsed()) return run_construct(kind, input, out_path);
    if (compare->parsed()) return run_compare(src_path, dst_path, map_path, out_path);
    if (nsigma->parsed()) return run_nsigma(input, out_path);
    if (classify->parsed())
      return run_classify(gen_bound, cube_bound, target_bound, dot_path, report_path);
  } catch (const sc::error& e) {
    if (e.code() == sc::errc::not_shape || e.code() == sc::errc::inane_shape) {
      std::cerr << e.what() << "\n";
      return kExitFails;
    }
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
