#include "shapecalc/shape_maps.hpp"

#include <algorithm>

#include "shapecalc/parallel.hpp"

namespace shapecalc {

PreshapeMap validate_map(Preshape src, Preshape dst, MonotoneMap f, MonotoneMap fhat) {
  if (!(*f.dom() == *src.codomain()) || !(*f.cod() == *dst.codomain()))
    fail(errc::domain_mismatch, "f must map the source codomain to the target codomain");
  if (!(*fhat.dom() == *src.domain()) || !(*fhat.cod() == *dst.domain()))
    fail(errc::domain_mismatch, "fhat must map the source domain to the target domain");
  for (int i = 0; i < src.domain()->size(); ++i)
    if (f(src.sigma(i)) != dst.sigma(fhat(i)))
      fail(errc::square_not_commuting,
           "f(sigma(" + src.domain()->label(i) + ")) differs from tau(fhat(...))");
  int ini_s = src.codomain_initial();
  int ini_t = dst.codomain_initial();
  for (int s = 0; s < src.codomain()->size(); ++s) {
    bool to_ini = f(s) == ini_t;
    if (to_ini != (s == ini_s))
      fail(errc::initial_fiber_violation,
           "f^{-1}(ini) must be exactly the initial object; offender '" +
               src.codomain()->label(s) + "'");
  }
  return PreshapeMap{std::move(src), std::move(dst), std::move(f), std::move(fhat)};
}

PreshapeMap compose(const PreshapeMap& second, const PreshapeMap& first) {
  return validate_map(first.src, second.dst, compose(second.f, first.f),
                      compose(second.fhat, first.fhat));
}

DirectionCertificate is_indirect(const PreshapeMap& m) {
  DirectionCertificate out;
  out.kind = CertKind::indirect_map;
  const auto& S = m.src.codomain();
  const int n = S->size();
  std::vector<ExtremalCertificate> certs;
  certs.reserve(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    auto dom_slice = induced_subposet(m.src.domain(), slice_under(m.src.sigma, s));
    auto cod_slice = induced_subposet(m.dst.domain(), slice_under(m.dst.sigma, m.f(s)));
    std::vector<int> assign(static_cast<size_t>(dom_slice->size()));
    for (int i = 0; i < dom_slice->size(); ++i) {
      int global = m.src.domain()->index_of(dom_slice->label(i));
      assign[static_cast<size_t>(i)] =
          cod_slice->index_of(m.dst.domain()->label(m.fhat(global)));
    }
    MonotoneMap induced(dom_slice, cod_slice, std::move(assign));
    certs.push_back(homotopy_extremal(induced, Side::terminal));
  }
  bool any_unknown = false;
  for (int s = 0; s < n; ++s) {
    out.evidence.emplace_back(S->label(s), certs[static_cast<size_t>(s)]);
    if (certs[static_cast<size_t>(s)].status == Contractibility::not_contractible &&
        out.status != Contractibility::not_contractible) {
      out.status = Contractibility::not_contractible;
      out.witness = S->label(s);
    }
    if (certs[static_cast<size_t>(s)].status == Contractibility::unknown) any_unknown = true;
  }
  if (out.status != Contractibility::not_contractible)
    out.status = any_unknown ? Contractibility::unknown : Contractibility::contractible;
  return out;
}

namespace {

bool is_isomorphism(const MonotoneMap& f) {
  if (!f.is_injective() || !f.is_surjective()) return false;
  return f.is_full();
}

// restriction of f to the non-initial parts of both sides
MonotoneMap gini_restriction(const MonotoneMap& f, int ini_dom, int ini_cod) {
  std::vector<int> dom_keep, cod_keep;
  for (int i = 0; i < f.dom()->size(); ++i)
    if (i != ini_dom) dom_keep.push_back(i);
  for (int i = 0; i < f.cod()->size(); ++i)
    if (i != ini_cod) cod_keep.push_back(i);
  auto dom = induced_subposet(f.dom(), dom_keep);
  auto cod = induced_subposet(f.cod(), cod_keep);
  std::vector<int> assign(static_cast<size_t>(dom->size()));
  for (int i = 0; i < dom->size(); ++i) {
    int global = f.dom()->index_of(dom->label(i));
    assign[static_cast<size_t>(i)] = cod->index_of(f.cod()->label(f(global)));
  }
  return MonotoneMap(dom, cod, std::move(assign));
}

}  // namespace

DirectionCertificate is_direct(const PreshapeMap& m, bool force_slow) {
  DirectionCertificate out;
  out.kind = CertKind::direct_map;
  if (!m.f.is_full()) {
    out.status = Contractibility::not_contractible;
    out.failure_reason = "f is not full";
    return out;
  }
  if (!force_slow && is_isomorphism(m.f)) {
    out.status = Contractibility::contractible;
    out.fast_path = true;
    return out;
  }
  auto restricted = gini_restriction(m.f, m.src.codomain_initial(), m.dst.codomain_initial());
  auto cert = homotopy_extremal(restricted, Side::initial);
  out.status = cert.status;
  out.witness = cert.witness;
  out.evidence.emplace_back("gini", std::move(cert));
  return out;
}

GcResult gc_condition(const MonotoneMap& f, const MonotoneMap& g, const MonotoneMap& h) {
  if (!(*f.cod() == *h.cod())) fail(errc::codomain_mismatch, "f and h must share a codomain");
  GcResult out;
  const auto& I = f.dom();
  const auto& J = g.dom();
  const auto& K = g.cod();
  const auto& L = h.cod();
  struct Pair {
    int k, i;
  };
  std::vector<Pair> pairs;
  for (int k = 0; k < K->size(); ++k)
    for (int i = 0; i < I->size(); ++i)
      if (L->leq(f(i), h(k))) pairs.push_back({k, i});

  std::vector<ContractibilityVerdict> verdicts(pairs.size());
  parallel_for_index(static_cast<int>(pairs.size()), [&](int idx) {
    const auto& pr = pairs[static_cast<size_t>(idx)];
    std::vector<int> members;
    for (int j = 0; j < J->size(); ++j)
      if (L->leq(f(pr.i), h(g(j))) && K->leq(g(j), pr.k)) members.push_back(j);
    verdicts[static_cast<size_t>(idx)] = contractibility(induced_subposet(J, members));
  });

  bool any_unknown = false;
  for (size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& pr = pairs[idx];
    out.evidence.emplace_back(std::make_pair(K->label(pr.k), I->label(pr.i)), verdicts[idx]);
    if (verdicts[idx].status == Contractibility::not_contractible &&
        out.status != Contractibility::not_contractible) {
      out.status = Contractibility::not_contractible;
      out.witness = std::make_pair(K->label(pr.k), I->label(pr.i));
    }
    if (verdicts[idx].status == Contractibility::unknown) any_unknown = true;
  }
  if (out.status != Contractibility::not_contractible)
    out.status = any_unknown ? Contractibility::unknown : Contractibility::contractible;
  return out;
}

PreshapeMap cube_inclusion_map(int n, int m) {
  if (n > m) fail(errc::hypothesis_violated, "cube inclusion needs n <= m");
  auto small = cube_family(n);
  auto big = cube_family(m);
  std::vector<int> f(static_cast<size_t>(small.cube->size()));
  for (int i = 0; i < small.cube->size(); ++i)
    f[static_cast<size_t>(i)] = big.cube->index_of(small.cube->label(i));
  std::vector<int> fhat(static_cast<size_t>(small.star->size()));
  for (int i = 0; i < small.star->size(); ++i)
    fhat[static_cast<size_t>(i)] = big.star->index_of(small.star->label(i));
  return validate_map(small.inclusion, big.inclusion,
                      MonotoneMap(small.cube, big.cube, std::move(f)),
                      MonotoneMap(small.star, big.star, std::move(fhat)));
}

PreshapeMap image_map(const Preshape& sigma) {
  auto ip = image_preshape(sigma);
  return validate_map(sigma, ip.image, MonotoneMap::identity(sigma.codomain()), ip.sigma_hat);
}

PreshapeMap free_restriction_map(const PosetPtr& s_hat, const std::vector<std::string>& m_labels) {
  std::vector<int> m_idx;
  for (const auto& l : m_labels) m_idx.push_back(s_hat->index_of(l));
  std::sort(m_idx.begin(), m_idx.end());
  m_idx.erase(std::unique(m_idx.begin(), m_idx.end()), m_idx.end());
  if (m_idx.empty()) fail(errc::hypothesis_violated, "M must be nonempty");
  if (!s_hat->is_down_closed(m_idx)) fail(errc::hypothesis_violated, "M must be downward closed");
  auto ini = s_hat->initial();
  if (!ini) fail(errc::no_initial_object, "the base poset needs an initial object");
  std::vector<char> in_m(static_cast<size_t>(s_hat->size()), 0);
  for (int i : m_idx) in_m[static_cast<size_t>(i)] = 1;
  for (int s = 0; s < s_hat->size(); ++s) {
    if (s == *ini) continue;
    bool covered = false;
    for (int m : m_idx)
      if (m != *ini && s_hat->leq(m, s)) {
        covered = true;
        break;
      }
    if (!covered)
      fail(errc::hypothesis_violated,
           "M misses a minimal element below '" + s_hat->label(s) + "'");
  }

  auto sub = induced_subposet(s_hat, m_idx);
  auto eta_m = free_shape(sub);
  auto eta_s = free_shape(s_hat);

  std::vector<int> fhat(static_cast<size_t>(sub->size()));
  for (int i = 0; i < sub->size(); ++i)
    fhat[static_cast<size_t>(i)] = s_hat->index_of(sub->label(i));
  MonotoneMap inclusion(sub, s_hat, fhat);
  auto f = downset_functor_map(inclusion, eta_m.lattice, eta_s.lattice);
  return validate_map(eta_m.eta, eta_s.eta, std::move(f), std::move(inclusion));
}

PreshapeMap e_to_free_map(const Preshape& sigma) {
  auto em = e_map(sigma, /*require_valid=*/true);
  return validate_map(sigma, em.free, em.e, MonotoneMap::identity(sigma.domain()));
}

PreshapeMap generator_image_map(const Preshape& sigma) {
  auto gi = generator_image(sigma);
  auto v_shape = Preshape::validate(gi.v);
  return validate_map(v_shape, sigma, gi.w, MonotoneMap::identity(sigma.domain()));
}

CubeCoverMaps cube_cover_maps(const Preshape& sigma, const std::vector<int>& direction_block) {
  if (!sigma.full) fail(errc::not_full, "cube cover needs a full preshape");
  auto cube = as_cube(sigma.codomain());
  if (!cube) fail(errc::not_cubical, "codomain is not a cube poset");
  const int dims = static_cast<int>(cube->atoms.size());
  if (static_cast<int>(direction_block.size()) != dims)
    fail(errc::hypothesis_violated, "partition must assign a block to every direction");
  int blocks = 0;
  for (int b : direction_block) {
    if (b < 0) fail(errc::hypothesis_violated, "block indices must be nonnegative");
    blocks = std::max(blocks, b + 1);
  }

  // image subsets of sigma, as masks
  std::vector<char> in_image(static_cast<size_t>(1) << dims, 0);
  std::vector<int> mask_to_dom(static_cast<size_t>(1) << dims, -1);
  for (int i = 0; i < sigma.domain()->size(); ++i) {
    std::uint32_t m = cube->element_mask[static_cast<size_t>(sigma.sigma(i))];
    in_image[m] = 1;
    mask_to_dom[m] = i;
  }

  auto f_of_mask = [&](std::uint32_t m) {
    std::uint32_t out = 0;
    for (int d = 0; d < dims; ++d)
      if (m & (1u << d)) out |= (1u << direction_block[static_cast<size_t>(d)]);
    return out;
  };

  auto small = cube_family(blocks);
  // Q^hat = f^{-1}(Q^n_{<=1}), must land inside the image of sigma
  std::vector<std::uint32_t> qhat_masks;
  for (std::uint32_t m = 0; m < (1u << dims); ++m) {
    std::uint32_t fm = f_of_mask(m);
    if ((fm & (fm - 1)) == 0) {  // cardinality <= 1
      if (!in_image[m])
        fail(errc::hypothesis_violated,
             "the preimage of the small cube star escapes the domain");
      qhat_masks.push_back(m);
    }
  }

  // intermediate preshape iota_Q : Q^hat -> Q^S
  const auto& big = sigma.codomain();
  std::vector<int> big_of_mask(static_cast<size_t>(1) << dims, -1);
  for (int x = 0; x < big->size(); ++x)
    big_of_mask[cube->element_mask[static_cast<size_t>(x)]] = x;
  std::vector<int> qhat_elems;
  for (auto m : qhat_masks) qhat_elems.push_back(big_of_mask[m]);
  auto qhat = induced_subposet(big, qhat_elems);
  std::vector<int> inc(static_cast<size_t>(qhat->size()));
  for (int i = 0; i < qhat->size(); ++i)
    inc[static_cast<size_t>(i)] = big->index_of(qhat->label(i));
  auto iota_q = Preshape::validate(MonotoneMap(qhat, big, std::move(inc)));

  // (f, fhat) : iota_Q -> iota_n
  std::vector<int> f_assign(static_cast<size_t>(big->size()));
  for (int x = 0; x < big->size(); ++x) {
    std::uint32_t fm = f_of_mask(cube->element_mask[static_cast<size_t>(x)]);
    f_assign[static_cast<size_t>(x)] = small.cube->index_of(cube_label(fm));
  }
  std::vector<int> fhat_assign(static_cast<size_t>(qhat->size()));
  for (int i = 0; i < qhat->size(); ++i) {
    int x = big->index_of(qhat->label(i));
    std::uint32_t fm = f_of_mask(cube->element_mask[static_cast<size_t>(x)]);
    fhat_assign[static_cast<size_t>(i)] = small.star->index_of(cube_label(fm));
  }
  auto to_cube = validate_map(iota_q, small.inclusion,
                              MonotoneMap(big, small.cube, std::move(f_assign)),
                              MonotoneMap(qhat, small.star, std::move(fhat_assign)));

  // (id, incl) : iota_Q -> sigma
  std::vector<int> ihat(static_cast<size_t>(qhat->size()));
  for (int i = 0; i < qhat->size(); ++i) {
    int x = big->index_of(qhat->label(i));
    ihat[static_cast<size_t>(i)] = mask_to_dom[cube->element_mask[static_cast<size_t>(x)]];
  }
  auto to_sigma = validate_map(iota_q, sigma, MonotoneMap::identity(big),
                               MonotoneMap(qhat, sigma.domain(), std::move(ihat)));

  return CubeCoverMaps{std::move(iota_q), std::move(to_cube), std::move(to_sigma)};
}

}  // namespace shapecalc
