#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "shapecalc/homotopy.hpp"
#include "shapecalc/shapes.hpp"

using namespace shapecalc;

namespace {

PosetPtr chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> rels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('0' + i)));
  for (int i = 0; i + 1 < n; ++i)
    rels.emplace_back(labels[static_cast<size_t>(i)], labels[static_cast<size_t>(i) + 1]);
  return Poset::build(labels, rels);
}

PosetPtr antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return Poset::build(labels, {});
}

PosetPtr hexagon() {
  return Poset::build({"a", "b", "c", "ab", "bc", "ca"},
                      {{"a", "ab"}, {"b", "ab"}, {"b", "bc"}, {"c", "bc"}, {"c", "ca"}, {"a", "ca"}});
}

PosetPtr random_poset(std::mt19937& rng, int n, double density = 0.4) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::string, std::string>> rels;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < density) rels.emplace_back(labels[static_cast<size_t>(i)], labels[static_cast<size_t>(j)]);
  return Poset::build(labels, rels);
}

// test-only oracle helper: complex spanned by explicit facets
SimplicialComplex complex_from_facets(int vertex_count, const std::vector<std::vector<int>>& facets) {
  SimplicialComplex k;
  for (int i = 0; i < vertex_count; ++i) k.vertices.push_back("v" + std::to_string(i));
  std::set<std::vector<int>> faces;
  for (auto facet : facets) {
    std::sort(facet.begin(), facet.end());
    const size_t m = facet.size();
    for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
      std::vector<int> face;
      for (size_t b = 0; b < m; ++b)
        if (mask & (1ul << b)) face.push_back(facet[b]);
      faces.insert(face);
    }
  }
  for (const auto& face : faces) {
    int d = static_cast<int>(face.size()) - 1;
    if (d >= static_cast<int>(k.faces.size())) k.faces.resize(static_cast<size_t>(d) + 1);
    k.faces[static_cast<size_t>(d)].push_back(face);
  }
  for (auto& level : k.faces) std::sort(level.begin(), level.end());
  return k;
}

}  // namespace

TEST_CASE("order_complex basics") {
  auto a2 = antichain(2);
  auto k = order_complex(a2);
  CHECK(k.face_count(0) == 2);
  CHECK(k.face_count(1) == 0);

  auto c3 = chain(3);
  auto k3 = order_complex(c3);
  CHECK(k3.face_count(0) == 3);
  CHECK(k3.face_count(1) == 3);
  CHECK(k3.face_count(2) == 1);

  auto q2 = cube_poset(2);
  auto gini = induced_subposet_labels(q2, {"{0}", "{1}", "{0,1}"});
  auto kg = order_complex(gini);
  CHECK(kg.face_count(0) == 3);
  CHECK(kg.face_count(1) == 2);  // the path {0} -- {0,1} -- {1}
  CHECK(kg.face_count(2) == 0);
}

TEST_CASE("reduced_homology: points and pairs") {
  auto pt = order_complex(one_point_poset());
  auto hp = reduced_homology(pt);
  CHECK(hp.all_trivial());

  auto two = order_complex(antichain(2));
  auto h2 = reduced_homology(two);
  CHECK(h2.betti[0] == 1);

  auto empty = reduced_homology(order_complex(empty_poset()));
  CHECK(empty.empty_complex);
}

TEST_CASE("reduced_homology: hexagon is a circle") {
  auto hex = hexagon();
  auto k = order_complex(hex);
  // oracle: the complex is a 6-cycle graph
  REQUIRE(k.face_count(0) == 6);
  REQUIRE(k.face_count(1) == 6);
  REQUIRE(k.dim() == 1);
  std::vector<int> degree(6, 0);
  for (const auto& e : k.faces[1]) {
    degree[static_cast<size_t>(e[0])]++;
    degree[static_cast<size_t>(e[1])]++;
  }
  for (int d : degree) REQUIRE(d == 2);

  auto h = reduced_homology(k);
  CHECK(h.betti[0] == 0);
  CHECK(h.betti[1] == 1);
  CHECK(h.torsion[1].empty());
}

TEST_CASE("smith normal form on frozen matrices") {
  auto f1 = smith_invariant_factors({{bigint(2)}});
  REQUIRE(f1.size() == 1);
  CHECK(f1[0] == 2);

  auto f2 = smith_invariant_factors({{bigint(2), bigint(4)}, {bigint(6), bigint(8)}});
  REQUIRE(f2.size() == 2);
  CHECK(f2[0] == 2);
  CHECK(f2[1] == 4);  // gcd 2, |det| 8

  auto f3 = smith_invariant_factors({{bigint(1), bigint(0)}, {bigint(0), bigint(1)}});
  REQUIRE(f3.size() == 2);
  CHECK(f3[0] == 1);
  CHECK(f3[1] == 1);
}

TEST_CASE("reduced_homology: projective plane has 2-torsion") {
  // 6-vertex triangulation; every edge lies in exactly two of the ten
  // triangles and chi = 1, which pins the homeomorphism type
  std::vector<std::vector<int>> facets = {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 6}, {1, 4, 5},
                                          {2, 3, 4}, {2, 3, 5}, {2, 4, 6}, {3, 5, 6}, {4, 5, 6}};
  std::map<std::vector<int>, int> edge_count;
  for (const auto& f : facets)
    for (int omit = 0; omit < 3; ++omit) {
      std::vector<int> e;
      for (int t = 0; t < 3; ++t)
        if (t != omit) e.push_back(f[static_cast<size_t>(t)]);
      std::sort(e.begin(), e.end());
      edge_count[e]++;
    }
  REQUIRE(edge_count.size() == 15);
  for (const auto& [e, c] : edge_count) REQUIRE(c == 2);

  auto k = complex_from_facets(7, facets);
  // the helper adds the unused vertex 0; remove it so the complex is exactly the surface
  k.faces[0].erase(std::remove(k.faces[0].begin(), k.faces[0].end(), std::vector<int>{0}),
                   k.faces[0].end());
  REQUIRE(k.euler_characteristic() == 1);

  auto h = reduced_homology(k);
  CHECK(h.betti[0] == 0);
  CHECK(h.betti[1] == 0);
  REQUIRE(h.torsion[1].size() == 1);
  CHECK(h.torsion[1][0] == 2);
  CHECK(h.betti[2] == 0);
}

TEST_CASE("euler characteristic consistency") {
  std::mt19937 rng(17);
  for (int round = 0; round < 60; ++round) {
    auto p = random_poset(rng, 6);
    auto k = order_complex(p);
    auto h = reduced_homology(k);
    if (h.empty_complex) continue;
    CHECK(k.euler_characteristic() == h.euler_characteristic());
  }
}

TEST_CASE("dismantle_core") {
  SUBCASE("initial object dismantles to a point") {
    std::mt19937 rng(19);
    for (int round = 0; round < 40; ++round) {
      auto p = random_poset(rng, 5);
      if (!p->initial()) continue;
      auto d = dismantle_core(p);
      CHECK(d.core->size() == 1);
      CHECK(d.removed.size() == static_cast<size_t>(p->size() - 1));
    }
  }
  SUBCASE("antichain is its own core") {
    auto d = dismantle_core(antichain(2));
    CHECK(d.core->size() == 2);
    CHECK(d.removed.empty());
  }
  SUBCASE("hexagon has no beat points") {
    auto hex = hexagon();
    // direct check of the beat-point definition for all six elements
    for (int x = 0; x < hex->size(); ++x) {
      std::vector<int> up, down;
      for (int y = 0; y < hex->size(); ++y) {
        if (hex->lt(x, y)) up.push_back(y);
        if (hex->lt(y, x)) down.push_back(y);
      }
      bool up_min = false, down_max = false;
      for (int u : up) {
        bool least = true;
        for (int v : up) least = least && hex->leq(u, v);
        up_min = up_min || least;
      }
      for (int d2 : down) {
        bool greatest = true;
        for (int v : down) greatest = greatest && hex->leq(v, d2);
        down_max = down_max || greatest;
      }
      REQUIRE(!up_min);
      REQUIRE(!down_max);
    }
    auto d = dismantle_core(hex);
    CHECK(d.core->size() == 6);
  }
}

TEST_CASE("contractibility") {
  SUBCASE("poset with initial object") {
    auto v = Poset::build({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}});
    auto verdict = contractibility(v);
    CHECK(verdict.ok());
    CHECK(verdict.certificate.size() == 2);
  }
  SUBCASE("empty poset") {
    auto verdict = contractibility(empty_poset());
    CHECK(verdict.status == Contractibility::not_contractible);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->kind == NotContractibleWitness::Kind::empty);
  }
  SUBCASE("hexagon") {
    auto verdict = contractibility(hexagon());
    CHECK(verdict.status == Contractibility::not_contractible);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->kind == NotContractibleWitness::Kind::homology);
    CHECK(verdict.witness->degree == 1);
    CHECK(verdict.witness->rank == 1);
  }
  SUBCASE("two antichain points are disconnected") {
    auto verdict = contractibility(antichain(2));
    CHECK(verdict.status == Contractibility::not_contractible);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->kind == NotContractibleWitness::Kind::disconnected);
    CHECK(verdict.witness->components == 2);
  }
  SUBCASE("contractible verdicts have trivial full-complex homology") {
    std::mt19937 rng(43);
    for (int round = 0; round < 150; ++round) {
      auto p = random_poset(rng, 6);
      auto verdict = contractibility(p);
      if (verdict.ok()) {
        auto h = reduced_homology(order_complex(p));
        CHECK(h.all_trivial());
      }
    }
  }
}

TEST_CASE("contractible_products: gini of a product") {
  // P with bottom and a distinct top, Q with bottom: gini(P x Q) contractible
  std::mt19937 rng(47);
  int hits = 0;
  for (int round = 0; round < 40000 && hits < 600; ++round) {
    auto p = random_poset(rng, 4, 0.7);
    auto q = random_poset(rng, 3, 0.6);
    auto p_bot = p->initial();
    auto p_top = p->terminal();
    if (!p_bot || !p_top || *p_bot == *p_top) continue;
    if (!q->initial()) continue;
    ++hits;
    auto prod = product(p, q);
    int bottom = *prod->initial();
    std::vector<int> keep;
    for (int i = 0; i < prod->size(); ++i)
      if (i != bottom) keep.push_back(i);
    auto gini = induced_subposet(prod, keep);
    CHECK(contractibility(gini).ok());
  }
  CHECK(hits >= 500);
}

TEST_CASE("adjoint_partner") {
  SUBCASE("identity is self adjoint") {
    auto p = chain(3);
    auto id = MonotoneMap::identity(p);
    auto l = adjoint_partner(id, AdjointSide::left);
    auto r = adjoint_partner(id, AdjointSide::right);
    REQUIRE(l.has_value());
    REQUIRE(r.has_value());
    CHECK(*l == id);
    CHECK(*r == id);
  }
  SUBCASE("constant map to the point has a right adjoint iff there is a top") {
    auto pt = one_point_poset();
    auto with_top = chain(2);
    auto to_point = MonotoneMap::constant(with_top, pt, 0);
    auto r = adjoint_partner(to_point, AdjointSide::right);
    REQUIRE(r.has_value());
    CHECK((*r)(0) == 1);  // picks the top

    auto no_top = antichain(2);
    auto to_point2 = MonotoneMap::constant(no_top, pt, 0);
    CHECK(!adjoint_partner(to_point2, AdjointSide::right).has_value());
  }
  SUBCASE("bottom inclusion into a chain has no left adjoint partner") {
    auto c2 = chain(2);
    auto pt = one_point_poset();
    auto inc = MonotoneMap::constant(pt, c2, 0);
    // a left adjoint would need min {p | q <= inc(p)}, which fails at the top
    CHECK(!adjoint_partner(inc, AdjointSide::left).has_value());
  }
}

TEST_CASE("homotopy_extremal") {
  SUBCASE("identity is both homotopy initial and terminal") {
    auto p = cube_poset(2);
    auto id = MonotoneMap::identity(p);
    CHECK(homotopy_extremal(id, Side::terminal).ok());
    CHECK(homotopy_extremal(id, Side::initial).ok());
    // slow path agrees
    CHECK(homotopy_extremal(id, Side::terminal, false).ok());
    CHECK(homotopy_extremal(id, Side::initial, false).ok());
  }
  SUBCASE("inclusion of a small antichain into a larger one fails") {
    auto small = antichain(2);
    auto large = antichain(4);
    std::vector<int> assign = {0, 1};
    MonotoneMap inc(small, large, assign);
    auto cert = homotopy_extremal(inc, Side::terminal);
    CHECK(cert.status == Contractibility::not_contractible);
    REQUIRE(cert.witness.has_value());
    CHECK(*cert.witness == "c");  // least excluded point has an empty comma
  }
  SUBCASE("adjoint fast path agrees with the slow path") {
    std::mt19937 rng(53);
    int checked = 0;
    for (int round = 0; round < 4000 && checked < 60; ++round) {
      auto p = (round % 2 == 0) ? chain(3) : random_poset(rng, 4, 0.6);
      auto q = (round % 3 == 0) ? chain(4) : random_poset(rng, 4, 0.6);
      std::uniform_int_distribution<int> pick(0, q->size() - 1);
      std::vector<int> assign(static_cast<size_t>(p->size()));
      for (auto& a : assign) a = pick(rng);
      bool mono = true;
      for (int i = 0; i < p->size() && mono; ++i)
        for (int j = 0; j < p->size() && mono; ++j)
          if (p->leq(i, j) && !q->leq(assign[static_cast<size_t>(i)], assign[static_cast<size_t>(j)]))
            mono = false;
      if (!mono) continue;
      MonotoneMap f(p, q, std::move(assign));
      for (auto side : {Side::initial, Side::terminal}) {
        auto fast = homotopy_extremal(f, side);
        if (!fast.via_adjoint) continue;
        ++checked;
        auto slow = homotopy_extremal(f, side, false);
        CHECK(slow.ok());
      }
    }
    CHECK(checked >= 20);
  }
}

TEST_CASE("gini_cop: joining slice images is homotopy initial") {
  // p : gini(S x S') -> gini(T), (s, s') -> f(s) join f'(s'), with T join
  // complete, both maps with trivial fiber over the bottom, and f = id so
  // that each slice f/t has a terminal object away from the bottom
  std::mt19937 rng(59);
  int hits = 0;
  for (int round = 0; round < 30000 && hits < 600; ++round) {
    PosetPtr t = (round % 3 == 0) ? cube_poset(2) : random_poset(rng, 4);
    if (!t->has_all_joins()) continue;
    auto s_prime = random_poset(rng, 3);
    if (!s_prime->initial()) continue;
    std::uniform_int_distribution<int> pick(0, t->size() - 1);
    std::vector<int> assign(static_cast<size_t>(s_prime->size()));
    int bot_s = *s_prime->initial();
    int bot_t = *t->initial();
    bool ok = true;
    for (int i = 0; i < s_prime->size(); ++i) {
      assign[static_cast<size_t>(i)] = (i == bot_s) ? bot_t : pick(rng);
      if (i != bot_s && assign[static_cast<size_t>(i)] == bot_t) ok = false;
    }
    for (int i = 0; i < s_prime->size() && ok; ++i)
      for (int j = 0; j < s_prime->size() && ok; ++j)
        if (s_prime->leq(i, j) && !t->leq(assign[static_cast<size_t>(i)], assign[static_cast<size_t>(j)]))
          ok = false;
    if (!ok) continue;
    MonotoneMap fprime(s_prime, t, std::move(assign));
    auto f = MonotoneMap::identity(t);

    auto prod = product(t, s_prime);
    int prod_bot = *prod->initial();
    std::vector<int> keep;
    for (int i = 0; i < prod->size(); ++i)
      if (i != prod_bot) keep.push_back(i);
    auto dom = induced_subposet(prod, keep);
    std::vector<int> t_keep;
    for (int i = 0; i < t->size(); ++i)
      if (i != bot_t) t_keep.push_back(i);
    auto cod = induced_subposet(t, t_keep);

    std::vector<int> passign(static_cast<size_t>(dom->size()));
    bool welldef = true;
    for (int i = 0; i < dom->size() && welldef; ++i) {
      int found = -1;
      for (int a = 0; a < t->size() && found < 0; ++a)
        for (int b = 0; b < s_prime->size() && found < 0; ++b)
          if ("(" + t->label(a) + "," + s_prime->label(b) + ")" == dom->label(i)) {
            auto j = t->join2(f(a), fprime(b));
            if (!j || *j == bot_t)
              welldef = false;
            else
              found = cod->index_of(t->label(*j));
          }
      if (found < 0) welldef = false;
      else passign[static_cast<size_t>(i)] = found;
    }
    if (!welldef) continue;
    ++hits;
    MonotoneMap p(dom, cod, std::move(passign));
    auto cert = homotopy_extremal(p, Side::initial);
    CHECK(cert.ok());
  }
  CHECK(hits >= 500);
}
