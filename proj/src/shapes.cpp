#include "shapecalc/shapes.hpp"

#include <algorithm>
#include <map>

#include "shapecalc/parallel.hpp"

namespace shapecalc {

Preshape Preshape::validate(MonotoneMap f) {
  auto ini = f.cod()->initial();
  if (!ini) fail(errc::no_initial_object, "codomain has no initial object");
  bool fiber = false;
  for (int i = 0; i < f.dom()->size() && !fiber; ++i) fiber = (f(i) == *ini);
  if (!fiber) fail(errc::empty_fiber_over_initial, "no element maps to the initial object");

  Preshape p{std::move(f)};
  p.full = p.sigma.is_full();
  auto dom_ini = p.sigma.dom()->initial();
  p.reduced = dom_ini.has_value() && p.sigma(*dom_ini) == *ini;
  p.finite = true;
  if (p.full && !p.reduced)
    throw std::logic_error("full preshape is not reduced; fully faithful maps reflect initial objects");
  return p;
}

std::string cube_label(std::uint32_t mask) {
  if (mask == 0) return "∅";
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

PosetPtr cube_poset(int n) {
  if (n < 0 || n > 6) fail(errc::size_limit, "cube bound is 0 <= n <= 6");
  const std::uint32_t count = 1u << n;
  std::vector<std::string> labels(count);
  std::vector<char> leq(static_cast<size_t>(count) * count, 0);
  for (std::uint32_t a = 0; a < count; ++a) {
    labels[a] = cube_label(a);
    for (std::uint32_t b = 0; b < count; ++b)
      leq[static_cast<size_t>(a) * count + b] = ((a & b) == a) ? 1 : 0;
  }
  // delegate sorting of labels to the builder
  std::vector<std::pair<std::string, std::string>> rels;
  for (std::uint32_t a = 0; a < count; ++a)
    for (std::uint32_t b = 0; b < count; ++b)
      if ((a & b) == a && a != b) rels.emplace_back(labels[a], labels[b]);
  return Poset::build(labels, rels);
}

CubeFamily cube_family(int n) {
  auto cube = cube_poset(n);
  std::vector<std::string> small;
  small.push_back(cube_label(0));
  for (int i = 0; i < n; ++i) small.push_back(cube_label(1u << i));
  auto star = induced_subposet_labels(cube, small);
  std::vector<int> assign(static_cast<size_t>(star->size()));
  for (int i = 0; i < star->size(); ++i)
    assign[static_cast<size_t>(i)] = cube->index_of(star->label(i));
  return CubeFamily{star, cube, Preshape::validate(MonotoneMap(star, cube, std::move(assign)))};
}

std::optional<CubeStructure> as_cube(const PosetPtr& p) {
  auto bottom = p->initial();
  if (!bottom) return std::nullopt;
  std::vector<int> atoms;
  for (int x = 0; x < p->size(); ++x) {
    if (x == *bottom) continue;
    std::vector<int> below;
    for (int y = 0; y < p->size(); ++y)
      if (p->lt(y, x)) below.push_back(y);
    if (below.size() == 1 && below[0] == *bottom) atoms.push_back(x);
  }
  if (atoms.size() > 20) return std::nullopt;
  if (p->size() != (1 << atoms.size())) return std::nullopt;

  std::vector<std::uint32_t> mask(static_cast<size_t>(p->size()), 0);
  std::vector<char> seen(static_cast<size_t>(1) << atoms.size(), 0);
  for (int x = 0; x < p->size(); ++x) {
    for (size_t a = 0; a < atoms.size(); ++a)
      if (p->leq(atoms[a], x)) mask[static_cast<size_t>(x)] |= (1u << a);
    if (seen[mask[static_cast<size_t>(x)]]) return std::nullopt;
    seen[mask[static_cast<size_t>(x)]] = 1;
  }
  for (int x = 0; x < p->size(); ++x)
    for (int y = 0; y < p->size(); ++y) {
      bool subset = (mask[static_cast<size_t>(x)] & mask[static_cast<size_t>(y)]) ==
                    mask[static_cast<size_t>(x)];
      if (p->leq(x, y) != subset) return std::nullopt;
    }
  return CubeStructure{std::move(atoms), std::move(mask)};
}

namespace {

// members of S^_{s,t,k}: sigma(sbar) <= s and sigma(k) <= t join sigma(sbar)
std::vector<int> witness_members(const Preshape& sigma, int s, int t, int k) {
  const auto& S = sigma.codomain();
  std::vector<int> members;
  for (int sbar = 0; sbar < sigma.domain()->size(); ++sbar) {
    if (!S->leq(sigma.sigma(sbar), s)) continue;
    auto j = S->join2(t, sigma.sigma(sbar));
    if (!j) fail(errc::missing_joins, "codomain lacks a needed join");
    if (S->leq(sigma.sigma(k), *j)) members.push_back(sbar);
  }
  return members;
}

}  // namespace

ShapeWitness shape_witness(const Preshape& sigma, const std::string& s, const std::string& t,
                           const std::string& k) {
  const auto& S = sigma.codomain();
  if (!S->has_all_joins()) fail(errc::missing_joins, "codomain does not have all joins");
  int si = S->index_of(s), ti = S->index_of(t), ki = sigma.domain()->index_of(k);
  auto ts = S->join2(ti, si);
  if (!ts || !S->leq(sigma.sigma(ki), *ts))
    fail(errc::hypothesis_violated, "sigma(k) is not below t join s");
  auto members = witness_members(sigma, si, ti, ki);
  auto sub = induced_subposet(sigma.domain(), members);
  return ShapeWitness{s, t, k, sub, contractibility(sub)};
}

ShapeVerdict is_shape(const Preshape& sigma) {
  ShapeVerdict out;
  const auto& S = sigma.codomain();
  out.joins_ok = S->has_all_joins();
  if (!out.joins_ok) {
    out.status = ShapeStatus::not_shape;
    return out;
  }
  const int ns = S->size(), nd = sigma.domain()->size();
  struct Triple {
    int s, t, k;
  };
  std::vector<Triple> triples;
  for (int s = 0; s < ns; ++s)
    for (int t = 0; t < ns; ++t) {
      auto ts = S->join2(t, s);
      for (int k = 0; k < nd; ++k)
        if (S->leq(sigma.sigma(k), *ts)) triples.push_back({s, t, k});
    }

  std::vector<ContractibilityVerdict> verdicts(triples.size());
  std::vector<std::vector<int>> members(triples.size());
  parallel_for_index(static_cast<int>(triples.size()), [&](int i) {
    const auto& tr = triples[static_cast<size_t>(i)];
    members[static_cast<size_t>(i)] = witness_members(sigma, tr.s, tr.t, tr.k);
    verdicts[static_cast<size_t>(i)] =
        contractibility(induced_subposet(sigma.domain(), members[static_cast<size_t>(i)]));
  });

  for (size_t i = 0; i < triples.size(); ++i) {
    if (verdicts[i].status != Contractibility::not_contractible) continue;
    const auto& tr = triples[i];
    out.status = ShapeStatus::not_shape;
    out.counterexample =
        ShapeWitness{S->label(tr.s), S->label(tr.t), sigma.domain()->label(tr.k),
                     induced_subposet(sigma.domain(), members[i]), verdicts[i]};
    return out;
  }
  for (size_t i = 0; i < triples.size(); ++i) {
    if (verdicts[i].status != Contractibility::unknown) continue;
    const auto& tr = triples[i];
    out.unknown_witnesses.push_back(
        ShapeWitness{S->label(tr.s), S->label(tr.t), sigma.domain()->label(tr.k),
                     induced_subposet(sigma.domain(), members[i]), verdicts[i]});
  }
  out.status = out.unknown_witnesses.empty() ? ShapeStatus::shape : ShapeStatus::unknown;
  return out;
}

bool easy_shape_check(const Preshape& sigma) {
  if (!sigma.full) fail(errc::not_full, "easy shape criterion needs a full preshape");
  const auto& S = sigma.codomain();
  if (!S->has_all_joins()) fail(errc::missing_joins, "codomain does not have all joins");
  for (int a = 0; a < S->size(); ++a)
    for (int b = 0; b < S->size(); ++b) {
      int ab = *S->join2(a, b);
      for (int k = 0; k < sigma.domain()->size(); ++k) {
        int v = sigma.sigma(k);
        if (S->leq(v, ab) && !S->leq(v, a) && !S->leq(v, b)) return false;
      }
    }
  return true;
}

bool cubical_shape_check(const Preshape& sigma) {
  if (!sigma.full) fail(errc::not_full, "cubical criterion needs a full preshape");
  auto cube = as_cube(sigma.codomain());
  if (!cube) fail(errc::not_cubical, "codomain is not a cube poset");
  std::vector<char> in_image(static_cast<size_t>(1) << cube->atoms.size(), 0);
  for (int i = 0; i < sigma.domain()->size(); ++i)
    in_image[cube->element_mask[static_cast<size_t>(sigma.sigma(i))]] = 1;
  for (std::uint32_t m = 0; m < in_image.size(); ++m) {
    if (!in_image[m]) continue;
    // all subsets of m must be hit
    for (std::uint32_t sub = m;; sub = (sub - 1) & m) {
      if (!in_image[sub]) return false;
      if (sub == 0) break;
    }
  }
  return true;
}

ImagePreshape image_preshape(const Preshape& sigma) {
  auto fact = image_factorization(sigma.sigma);
  return ImagePreshape{Preshape::validate(fact.w), fact.v};
}

FreeShape free_shape(const PosetPtr& s_hat) {
  auto lattice = reduced_downset_lattice(s_hat);
  auto eta = Preshape::validate(lattice.unit_map());
  if (!eta.full) throw std::logic_error("free shape unit is not full");
  if (!easy_shape_check(eta)) throw std::logic_error("free shape fails the easy shape criterion");
  return FreeShape{std::move(eta), std::move(lattice)};
}

GeneratorImage generator_image(const Preshape& sigma) {
  if (!sigma.reduced) fail(errc::not_reduced, "generator image needs a reduced preshape");
  const auto& S = sigma.codomain();
  if (!S->has_all_joins()) fail(errc::missing_joins, "codomain does not have all joins");

  auto lattice = reduced_downset_lattice(sigma.domain());
  auto u = universal_extension(sigma.sigma, lattice);
  auto fact = image_factorization(u);
  auto v = compose(fact.v, lattice.unit_map());
  GeneratorImage out{std::move(lattice), std::move(u), fact.v, std::move(v), fact.w, {}};

  // im u has all coproducts and w is full and join-preserving
  if (!out.w.dom()->has_all_joins())
    throw std::logic_error("image of the universal extension lacks joins");
  if (!out.w.is_full()) throw std::logic_error("w is not full");
  if (!out.w.preserves_joins()) throw std::logic_error("w does not preserve joins");

  const auto& im = out.w.dom();
  for (int s = 0; s < S->size(); ++s) {
    auto members = slice_under(out.w, s);
    auto top = im->join(members);
    if (!top) throw std::logic_error("slice join does not exist");
    bool inside = std::find(members.begin(), members.end(), *top) != members.end();
    if (!inside) throw std::logic_error("slice join escapes the slice");
    for (int m : members)
      if (!im->leq(m, *top)) throw std::logic_error("slice join is not terminal in the slice");
    GeneratorImage::Slice slice;
    slice.s = S->label(s);
    for (int m : members) slice.members.push_back(im->label(m));
    slice.terminal = im->label(*top);
    out.slices.push_back(std::move(slice));
  }
  return out;
}

InaneResult is_inane(const Preshape& sigma) {
  auto gi = generator_image(sigma);
  const auto& S = sigma.codomain();
  int ini = sigma.codomain_initial();
  for (int s = 0; s < S->size(); ++s) {
    if (s == ini) continue;
    const auto& slice = gi.slices[static_cast<size_t>(s)];
    if (slice.members.size() == 1 && slice.members[0] == S->label(ini))
      return InaneResult{true, S->label(s)};
  }
  return InaneResult{false, std::nullopt};
}

EMap e_map(const Preshape& sigma, bool require_valid) {
  if (!sigma.full) fail(errc::not_full, "the e map needs a full preshape");
  auto free = free_shape(sigma.domain());
  const auto& S = sigma.codomain();

  std::vector<int> assign(static_cast<size_t>(S->size()));
  for (int s = 0; s < S->size(); ++s) {
    std::vector<int> set;
    for (int sbar = 0; sbar < sigma.domain()->size(); ++sbar)
      if (S->leq(sigma.sigma(sbar), s)) set.push_back(sbar);
    assign[static_cast<size_t>(s)] = free.lattice.index_of_set(set);
  }
  MonotoneMap e(S, free.lattice.carrier, std::move(assign));

  int bottom = *free.lattice.carrier->initial();
  int ini = sigma.codomain_initial();
  bool valid = true;
  for (int s = 0; s < S->size(); ++s)
    if (e(s) == bottom && s != ini) valid = false;
  if (e(ini) != bottom) throw std::logic_error("e does not send the initial object to the bottom");
  if (require_valid && !valid)
    fail(errc::inane_shape, "e is not a preshape map; the shape is inane");
  return EMap{std::move(e), valid, std::move(free.eta), std::move(free.lattice)};
}

bool retract_check(const Preshape& sigma) {
  if (!sigma.full) fail(errc::not_full, "retract identity needs a full preshape");
  auto lattice = reduced_downset_lattice(sigma.domain());
  auto u = universal_extension(sigma.sigma, lattice);
  if (!u.is_surjective()) fail(errc::not_surjective, "u_sigma is not surjective");
  auto em = e_map(sigma, /*require_valid=*/false);
  const auto& S = sigma.codomain();
  for (int s = 0; s < S->size(); ++s)
    if (u(em.e(s)) != s) return false;
  return true;
}

MinCover min_cover(std::uint32_t universe, const std::vector<std::uint32_t>& family) {
  MinCover out;
  std::uint32_t reachable = 0;
  for (auto f : family) reachable |= (f & universe);
  if (reachable != universe) return out;  // infinite
  if (universe == 0) {
    out.finite = true;
    return out;
  }

  int best = static_cast<int>(family.size()) + 1;
  std::vector<int> best_pick, pick;
  auto rec = [&](auto&& self, std::uint32_t covered) -> void {
    if (covered == universe) {
      if (static_cast<int>(pick.size()) < best) {
        best = static_cast<int>(pick.size());
        best_pick = pick;
      }
      return;
    }
    if (static_cast<int>(pick.size()) + 1 > best) return;
    std::uint32_t missing = universe & ~covered;
    int lowest = 0;
    while (!(missing & (1u << lowest))) ++lowest;
    for (size_t i = 0; i < family.size(); ++i) {
      if (!(family[i] & (1u << lowest))) continue;
      pick.push_back(static_cast<int>(i));
      self(self, covered | (family[i] & universe));
      pick.pop_back();
    }
  };
  rec(rec, 0);
  out.finite = true;
  out.value = best;
  out.witness = best_pick;
  return out;
}

MinCover min_cover_labels(const std::vector<std::string>& universe,
                          const std::vector<std::vector<std::string>>& family) {
  if (universe.size() > 32) fail(errc::size_limit, "universe too large");
  std::map<std::string, int> pos;
  for (size_t i = 0; i < universe.size(); ++i) pos[universe[i]] = static_cast<int>(i);
  std::vector<std::uint32_t> fam;
  for (const auto& set : family) {
    std::uint32_t m = 0;
    for (const auto& el : set) {
      auto it = pos.find(el);
      if (it != pos.end()) m |= (1u << it->second);
    }
    fam.push_back(m);
  }
  std::uint32_t uni = universe.empty() ? 0 : ((universe.size() == 32) ? ~0u : (1u << universe.size()) - 1);
  return min_cover(uni, fam);
}

NSigma n_sigma(const Preshape& sigma) {
  auto cube = as_cube(sigma.codomain());
  if (!cube) fail(errc::not_cubical, "codomain is not a cube poset");
  auto verdict = is_shape(sigma);
  if (verdict.status != ShapeStatus::shape)
    fail(errc::not_shape, verdict.status == ShapeStatus::unknown
                              ? "shape condition undecided"
                              : "the preshape is not a shape");

  auto fact = image_factorization(sigma.sigma);
  std::vector<std::uint32_t> family;
  const auto& im = fact.w.dom();
  for (int i = 0; i < im->size(); ++i)
    family.push_back(cube->element_mask[static_cast<size_t>(fact.w(i))]);
  std::uint32_t universe =
      cube->atoms.empty() ? 0 : ((1u << cube->atoms.size()) - 1);
  auto mc = min_cover(universe, family);

  NSigma out;
  out.finite = mc.finite;
  out.value = mc.value;
  if (mc.finite)
    for (int idx : mc.witness) {
      std::vector<std::string> atom_labels;
      for (size_t a = 0; a < cube->atoms.size(); ++a)
        if (family[static_cast<size_t>(idx)] & (1u << a))
          atom_labels.push_back(sigma.codomain()->label(cube->atoms[a]));
      out.cover.push_back(std::move(atom_labels));
    }
  return out;
}

}  // namespace shapecalc
