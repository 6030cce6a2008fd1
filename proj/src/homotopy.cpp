#include "shapecalc/homotopy.hpp"

#include <algorithm>
#include <map>

#include "shapecalc/parallel.hpp"

namespace shapecalc {

SimplicialComplex order_complex(const PosetPtr& p) {
  SimplicialComplex k;
  k.vertices = p->labels();
  const int n = p->size();
  if (n == 0) return k;

  // chains enumerated by always extending at the top
  std::vector<int> chain;
  auto emit = [&](const std::vector<int>& c) {
    int d = static_cast<int>(c.size()) - 1;
    if (d >= static_cast<int>(k.faces.size())) k.faces.resize(static_cast<size_t>(d) + 1);
    k.faces[static_cast<size_t>(d)].push_back(c);
  };
  auto rec = [&](auto&& self, int top) -> void {
    emit(chain);
    for (int next = 0; next < n; ++next) {
      if (!p->lt(top, next)) continue;
      chain.push_back(next);
      self(self, next);
      chain.pop_back();
    }
  };
  for (int start = 0; start < n; ++start) {
    chain.push_back(start);
    rec(rec, start);
    chain.pop_back();
  }
  for (auto& level : k.faces) std::sort(level.begin(), level.end());
  return k;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * face_count(d);
  return chi;
}

std::vector<bigint> smith_invariant_factors(std::vector<std::vector<bigint>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<bigint> factors;
  int r = 0, c = 0;
  while (r < rows && c < cols) {
    // smallest-magnitude nonzero pivot in the remaining block
    int pr = -1, pc = -1;
    bigint best = 0;
    for (int i = r; i < rows; ++i)
      for (int j = c; j < cols; ++j) {
        if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) continue;
        bigint a = abs(m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        if (pr == -1 || a < best) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (pr == -1) break;
    std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(pr)]);
    for (int i = 0; i < rows; ++i)
      std::swap(m[static_cast<size_t>(i)][static_cast<size_t>(c)],
                m[static_cast<size_t>(i)][static_cast<size_t>(pc)]);

    bool reduced = false;
    while (!reduced) {
      reduced = true;
      bigint pivot = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
      for (int i = r + 1; i < rows; ++i) {
        bigint q = m[static_cast<size_t>(i)][static_cast<size_t>(c)] / pivot;
        if (q != 0)
          for (int j = c; j < cols; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                q * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
          std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(i)]);
          reduced = false;
          pivot = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        }
      }
      for (int j = c + 1; j < cols; ++j) {
        bigint q = m[static_cast<size_t>(r)][static_cast<size_t>(j)] / pivot;
        if (q != 0)
          for (int i = r; i < rows; ++i)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                q * m[static_cast<size_t>(i)][static_cast<size_t>(c)];
        if (m[static_cast<size_t>(r)][static_cast<size_t>(j)] != 0) {
          for (int i = 0; i < rows; ++i)
            std::swap(m[static_cast<size_t>(i)][static_cast<size_t>(c)],
                      m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
          reduced = false;
        }
      }
    }
    factors.push_back(abs(m[static_cast<size_t>(r)][static_cast<size_t>(c)]));
    ++r;
    ++c;
  }
  // enforce divisibility d1 | d2 | ...
  for (size_t i = 0; i + 1 < factors.size(); ++i)
    for (size_t j = i + 1; j < factors.size(); ++j) {
      bigint a = factors[i], b = factors[j];
      bigint g = gcd(a, b);
      if (g == a) continue;
      factors[i] = g;
      factors[j] = a / g * b;
    }
  return factors;
}

namespace {

// boundary matrix d: C_d -> C_{d-1}
std::vector<std::vector<bigint>> boundary_matrix(const SimplicialComplex& k, int d) {
  const auto& high = k.faces[static_cast<size_t>(d)];
  const auto& low = k.faces[static_cast<size_t>(d) - 1];
  std::map<std::vector<int>, int> low_index;
  for (size_t i = 0; i < low.size(); ++i) low_index[low[i]] = static_cast<int>(i);
  std::vector<std::vector<bigint>> m(low.size(), std::vector<bigint>(high.size(), 0));
  for (size_t j = 0; j < high.size(); ++j) {
    const auto& simplex = high[j];
    for (size_t omit = 0; omit < simplex.size(); ++omit) {
      std::vector<int> face;
      face.reserve(simplex.size() - 1);
      for (size_t t = 0; t < simplex.size(); ++t)
        if (t != omit) face.push_back(simplex[t]);
      int sign = (omit % 2 == 0) ? 1 : -1;
      m[static_cast<size_t>(low_index.at(face))][j] += sign;
    }
  }
  return m;
}

int matrix_rank(const std::vector<bigint>& factors) {
  int r = 0;
  for (const auto& f : factors)
    if (f != 0) ++r;
  return r;
}

}  // namespace

bool HomologyProfile::all_trivial() const {
  if (empty_complex) return false;
  for (int b : betti)
    if (b != 0) return false;
  for (const auto& t : torsion)
    if (!t.empty()) return false;
  return true;
}

std::optional<int> HomologyProfile::first_nonzero_degree() const {
  for (size_t d = 0; d < betti.size(); ++d)
    if (betti[d] != 0 || (d < torsion.size() && !torsion[d].empty())) return static_cast<int>(d);
  return std::nullopt;
}

long long HomologyProfile::euler_characteristic() const {
  if (empty_complex) return 0;
  long long chi = 1;  // reduced -> non-reduced in degree 0
  for (size_t d = 0; d < betti.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * betti[d];
  return chi;
}

HomologyProfile reduced_homology(const SimplicialComplex& k) {
  HomologyProfile out;
  if (k.faces.empty() || k.faces[0].empty()) {
    out.empty_complex = true;
    return out;
  }
  const int dim = k.dim();
  out.betti.assign(static_cast<size_t>(dim) + 1, 0);
  out.torsion.assign(static_cast<size_t>(dim) + 1, {});

  // rank of boundary d for 0..dim+1; degree 0 uses the augmentation row
  std::vector<int> rank(static_cast<size_t>(dim) + 2, 0);
  std::vector<std::vector<bigint>> factors(static_cast<size_t>(dim) + 2);
  rank[0] = 1;  // augmentation C_0 -> Z is onto for a nonempty complex
  for (int d = 1; d <= dim; ++d) {
    factors[static_cast<size_t>(d)] = smith_invariant_factors(boundary_matrix(k, d));
    rank[static_cast<size_t>(d)] = matrix_rank(factors[static_cast<size_t>(d)]);
  }
  for (int d = 0; d <= dim; ++d) {
    long long free_rank = k.face_count(d) - rank[static_cast<size_t>(d)] - rank[static_cast<size_t>(d) + 1];
    out.betti[static_cast<size_t>(d)] = static_cast<int>(free_rank);
    for (const auto& f : factors[static_cast<size_t>(d) + 1])
      if (f > 1) out.torsion[static_cast<size_t>(d)].push_back(f);
  }
  return out;
}

DismantleResult dismantle_core(const PosetPtr& p) {
  DismantleResult out;
  std::vector<int> alive(static_cast<size_t>(p->size()));
  for (int i = 0; i < p->size(); ++i) alive[static_cast<size_t>(i)] = i;

  auto is_beat = [&](int x, const std::vector<int>& elems) {
    std::vector<int> up, down;
    for (int y : elems) {
      if (p->lt(x, y)) up.push_back(y);
      if (p->lt(y, x)) down.push_back(y);
    }
    // strict up-set has a minimum?
    for (int u : up) {
      bool least = true;
      for (int v : up)
        if (!p->leq(u, v)) {
          least = false;
          break;
        }
      if (least) return true;
    }
    // strict down-set has a maximum?
    for (int d : down) {
      bool greatest = true;
      for (int v : down)
        if (!p->leq(v, d)) {
          greatest = false;
          break;
        }
      if (greatest) return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < alive.size(); ++i) {  // index order = label order
      if (is_beat(alive[i], alive)) {
        out.removed.push_back(p->label(alive[i]));
        alive.erase(alive.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  out.core = induced_subposet(p, alive);
  return out;
}

ContractibilityVerdict contractibility(const PosetPtr& p) {
  ContractibilityVerdict out;
  if (p->empty()) {
    out.status = Contractibility::not_contractible;
    out.witness = NotContractibleWitness{NotContractibleWitness::Kind::empty, -1, 0, {}, 0};
    return out;
  }
  auto dis = dismantle_core(p);
  if (dis.core->size() == 1) {
    out.status = Contractibility::contractible;
    out.certificate = std::move(dis.removed);
    return out;
  }
  auto profile = reduced_homology(order_complex(dis.core));
  if (auto deg = profile.first_nonzero_degree()) {
    out.status = Contractibility::not_contractible;
    NotContractibleWitness w;
    if (*deg == 0) {
      w.kind = NotContractibleWitness::Kind::disconnected;
      w.degree = 0;
      w.rank = profile.betti[0];
      w.components = profile.betti[0] + 1;
    } else {
      w.kind = NotContractibleWitness::Kind::homology;
      w.degree = *deg;
      w.rank = profile.betti[static_cast<size_t>(*deg)];
      w.torsion = profile.torsion[static_cast<size_t>(*deg)];
    }
    out.witness = w;
    return out;
  }
  out.status = Contractibility::unknown;
  out.core = dis.core;
  return out;
}

std::optional<MonotoneMap> adjoint_partner(const MonotoneMap& f, AdjointSide side) {
  const auto& dom = f.dom();
  const auto& cod = f.cod();
  std::vector<int> g(static_cast<size_t>(cod->size()), -1);
  for (int q = 0; q < cod->size(); ++q) {
    if (side == AdjointSide::right) {
      // g(q) = max { p | f(p) <= q }
      std::vector<int> candidates;
      for (int p = 0; p < dom->size(); ++p)
        if (cod->leq(f(p), q)) candidates.push_back(p);
      int best = -1;
      for (int c : candidates) {
        bool greatest = true;
        for (int o : candidates)
          if (!dom->leq(o, c)) {
            greatest = false;
            break;
          }
        if (greatest) {
          best = c;
          break;
        }
      }
      if (best == -1) return std::nullopt;
      g[static_cast<size_t>(q)] = best;
    } else {
      // g(q) = min { p | q <= f(p) }
      std::vector<int> candidates;
      for (int p = 0; p < dom->size(); ++p)
        if (cod->leq(q, f(p))) candidates.push_back(p);
      int best = -1;
      for (int c : candidates) {
        bool least = true;
        for (int o : candidates)
          if (!dom->leq(c, o)) {
            least = false;
            break;
          }
        if (least) {
          best = c;
          break;
        }
      }
      if (best == -1) return std::nullopt;
      g[static_cast<size_t>(q)] = best;
    }
  }
  // Galois condition both ways, before trusting the candidate
  for (int p = 0; p < dom->size(); ++p)
    for (int q = 0; q < cod->size(); ++q) {
      bool lhs = side == AdjointSide::right ? cod->leq(f(p), q) : cod->leq(q, f(p));
      bool rhs = side == AdjointSide::right ? dom->leq(p, g[static_cast<size_t>(q)])
                                            : dom->leq(g[static_cast<size_t>(q)], p);
      if (lhs != rhs) return std::nullopt;
    }
  return MonotoneMap(cod, dom, std::move(g));
}

ExtremalCertificate homotopy_extremal(const MonotoneMap& f, Side side, bool allow_fast_path) {
  ExtremalCertificate out;
  if (allow_fast_path) {
    // homotopy terminal when f is a right adjoint, i.e. has a left adjoint
    auto partner = adjoint_partner(f, side == Side::terminal ? AdjointSide::left : AdjointSide::right);
    if (partner) {
      out.status = Contractibility::contractible;
      out.via_adjoint = true;
      return out;
    }
  }
  const auto& cod = f.cod();
  const int n = cod->size();
  std::vector<ContractibilityVerdict> verdicts(static_cast<size_t>(n));
  parallel_for_index(n, [&](int j) {
    auto members = side == Side::terminal ? slice_over(f, j) : slice_under(f, j);
    verdicts[static_cast<size_t>(j)] = contractibility(induced_subposet(f.dom(), members));
  });
  bool any_unknown = false;
  for (int j = 0; j < n; ++j) {
    out.evidence.emplace_back(cod->label(j), verdicts[static_cast<size_t>(j)]);
    if (verdicts[static_cast<size_t>(j)].status == Contractibility::not_contractible &&
        out.status != Contractibility::not_contractible) {
      out.status = Contractibility::not_contractible;
      out.witness = cod->label(j);
    }
    if (verdicts[static_cast<size_t>(j)].status == Contractibility::unknown) any_unknown = true;
  }
  if (out.status != Contractibility::not_contractible)
    out.status = any_unknown ? Contractibility::unknown : Contractibility::contractible;
  return out;
}

}  // namespace shapecalc
