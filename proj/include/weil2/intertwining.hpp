#pragma once

// Models H_L of the Heisenberg representation, the averaging intertwiners
// F_{M,L}, the cocycle C by three routes, and the transports T (fourth
// tensor power) and S (square, oriented).
//
// A function f in H_L is stored by its values f(t, 0) on the complement
// reps of L; every other value follows from
//   f(v, z) = psi(z - alpha(l) - beta(l, t)) f(t, 0),  v = l + t.
// pi_L(h) f(h') = f(h' h) is a homomorphism in this convention.

#include "weil2/heisenberg.hpp"
#include "weil2/operators.hpp"
#include "weil2/witt.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace weil2 {

class Model {
 public:
  Model(const SympSpace& s, EnhancedLagrangian e) : s_(&s), e_(std::move(e)) {
    const GaloisRing& R = s.ring();
    const Lagrangian& L = *e_.L;
    tidx_.resize(s.size());
    base_.resize(s.size());
    for (VecV v = 0; v < s.size(); ++v) {
      VecV l = L.component(s, v);
      VecV t = v ^ l;
      tidx_[v] = L.rep_index[t];
      base_[v] = static_cast<std::uint8_t>(R.trace(R.neg(R.add(e_.alpha[l], s.beta(l, t)))));
    }
  }

  const EnhancedLagrangian& enhanced() const { return e_; }
  const Lagrangian& lagrangian() const { return *e_.L; }
  std::size_t dim() const { return e_.L->reps.size(); }
  VecV rep(std::size_t t) const { return e_.L->reps[t]; }

  /// f(v, z) = i^e f(rep(t), 0); returns (t, e).
  std::pair<int, int> locate(VecV v, RingElem z) const {
    return {tidx_[v], (s_->ring().trace(z) + base_[v]) & 3};
  }

 private:
  const SympSpace* s_;
  EnhancedLagrangian e_;
  std::vector<int> tidx_;
  std::vector<std::uint8_t> base_;
};

/// pi_L(h) in the rep basis: row t is the functional f -> f((t,0) h).
inline ZiMat pi_matrix(const SympSpace& s, const Model& m, HeisElem h) {
  const GaloisRing& R = s.ring();
  ZiMat out(m.dim(), m.dim());
  for (std::size_t t = 0; t < m.dim(); ++t) {
    VecV rt = m.rep(t);
    auto [col, e] = m.locate(rt ^ h.v, R.add(h.z, s.beta(rt, h.v)));
    out(t, col) += GaussInt::i_pow(e);
  }
  return out;
}

/// F_{M,L} f (h) = sum_{m in M} f(tau_M(m) h), as a matrix H_L -> H_M.
inline ZiMat F_matrix(const SympSpace& s, const Model& M, const Model& L) {
  if (!transversal(M.lagrangian(), L.lagrangian())) throw NotTransversal("weil2: F needs M + L = V");
  const GaloisRing& R = s.ring();
  const auto& aM = M.enhanced().alpha;
  ZiMat out(M.dim(), L.dim());
  for (std::size_t r = 0; r < M.dim(); ++r) {
    VecV sv = M.rep(r);
    for (VecV m : M.lagrangian().members) {
      auto [col, e] = L.locate(m ^ sv, R.add(aM[m], s.beta(m, sv)));
      out(r, col) += GaussInt::i_pow(e);
    }
  }
  return out;
}

/// omega~(r(m_i), m_j) on the basis of M~, with r the N~-component along L~.
inline SymFormR omega_tilde_form(const SympSpace& s, const FreeLagrangian& N, const FreeLagrangian& M,
                                 const FreeLagrangian& L) {
  RTilde r(s, N, L);
  SymFormR f{s.ring_ptr(), s.n(), {}};
  for (int i = 0; i < s.n(); ++i) {
    VecR ri = r(M.basis[i]);
    for (int j = 0; j < s.n(); ++j) f.g.push_back(s.omega_t(ri, M.basis[j]));
  }
  return f;
}

/// A value of the transport family: scalar * (F_{c0,c1} ... F_{c(k-1),ck})^{(x) power},
/// mapping H_{chain.back()} to H_{chain.front()}.
struct Transport {
  CycNum scalar;
  std::vector<int> chain;
  int power = 1;
  int dst() const { return chain.front(); }
  int src() const { return chain.back(); }
};

inline Transport compose(const Transport& a, const Transport& b) {
  if (a.src() != b.dst() || a.power != b.power) throw InvalidInput("weil2: transports do not compose");
  Transport out{a.scalar * b.scalar, a.chain, a.power};
  out.chain.insert(out.chain.end(), b.chain.begin() + 1, b.chain.end());
  return out;
}

/// Registry of enhanced and oriented Lagrangians with cached models and intertwiners.
class Context {
 public:
  explicit Context(const SympSpace& s) : s_(s), lags_(enumerate_lagrangians(s)) {
    for (std::size_t i = 0; i < lags_.size(); ++i) lag_index_[lags_[i]->basis] = static_cast<int>(i);
    lifts_.resize(lags_.size());
    base_.resize(lags_.size(), -1);
  }

  const SympSpace& space() const { return s_; }
  const std::vector<LagPtr>& lagrangians() const { return lags_; }
  int dn() const { return s_.d() * s_.n(); }
  /// |M| = 2^{dn}.
  long lag_size() const { return 1L << dn(); }

  int lag_id(const Lagrangian& L) const {
    auto it = lag_index_.find(L.basis);
    if (it == lag_index_.end()) throw InvalidInput("weil2: unknown Lagrangian");
    return it->second;
  }

  int id(const EnhancedLagrangian& e) {
    int lid = lag_id(*e.L);
    std::vector<std::uint16_t> key;
    for (VecV l : lags_[lid]->members) key.push_back(e.alpha[l].code);
    auto k = std::make_pair(lid, key);
    auto it = enh_index_.find(k);
    if (it != enh_index_.end()) return it->second;
    EnhancedLagrangian c{lags_[lid], std::vector<RingElem>(s_.size())};
    for (VecV l : lags_[lid]->members) c.alpha[l] = e.alpha[l];
    enh_.push_back(c);
    enh_lag_.push_back(lid);
    models_.push_back(nullptr);
    int out = static_cast<int>(enh_.size()) - 1;
    enh_index_[k] = out;
    return out;
  }
  const EnhancedLagrangian& enhanced(int id) const { return enh_[id]; }
  int lag_of(int id) const { return enh_lag_[id]; }
  std::size_t enhanced_count() const { return enh_.size(); }

  /// Registers all of ELag(V) in enumeration order and returns the ids.
  std::vector<int> register_all_enhanced() {
    std::vector<int> ids;
    for (const auto& L : lags_) {
      for (const auto& e : enumerate_enhancements(s_, L)) ids.push_back(id(e));
    }
    return ids;
  }

  const FreeLagrangian& canonical_lift(int lid) {
    if (!lifts_[lid]) lifts_[lid] = lift_lagrangian(s_, *lags_[lid]);
    return *lifts_[lid];
  }
  /// The enhancement attached to the canonical lift of Lagrangian lid.
  int base_enhanced(int lid) {
    if (base_[lid] < 0) {
      EnhancedLagrangian e = enhance_from_lift(s_, canonical_lift(lid));
      base_[lid] = id(e);
    }
    return base_[lid];
  }

  const Model& model(int id) {
    if (!models_[id]) models_[id] = std::make_unique<Model>(s_, enh_[id]);
    return *models_[id];
  }

  bool transversal(int a, int b) const { return weil2::transversal(*lags_[enh_lag_[a]], *lags_[enh_lag_[b]]); }

  const ZiMat& F(int dst, int src) {
    auto key = std::make_pair(dst, src);
    auto it = F_.find(key);
    if (it != F_.end()) return it->second;
    const Model& M = model(dst);
    const Model& L = model(src);
    return F_.emplace(key, F_matrix(s_, M, L)).first->second;
  }

  /// First Lagrangian in enumeration order transversal to both.
  int first_transversal_lag(int lid_a, int lid_b) const {
    for (std::size_t k = 0; k < lags_.size(); ++k) {
      if (weil2::transversal(*lags_[k], *lags_[lid_a]) && weil2::transversal(*lags_[k], *lags_[lid_b])) {
        return static_cast<int>(k);
      }
    }
    throw NotTransversal("weil2: no Lagrangian transversal to both");
  }

  /// identity, a single F, or F through the first enhanced Lagrangian transversal to both.
  std::vector<int> canonical_chain(int dst, int src) {
    if (dst == src) return {dst};
    if (transversal(dst, src)) return {dst, src};
    int k = base_enhanced(first_transversal_lag(enh_lag_[dst], enh_lag_[src]));
    return {dst, k, src};
  }

  ZiMat chain_matrix(const std::vector<int>& chain) {
    ZiMat out = ZiMat::identity(model(chain.back()).dim());
    for (std::size_t i = chain.size() - 1; i > 0; --i) out = F(chain[i - 1], chain[i]) * out;
    return out;
  }

  /// Rewrites a transport against the canonical chain of its endpoints.
  Transport normalize(const Transport& t) {
    auto canon = canonical_chain(t.dst(), t.src());
    if (canon == t.chain) return t;
    CycNum rho = proportionality(chain_matrix(t.chain), chain_matrix(canon));
    return {t.scalar * rho.pow(t.power), canon, t.power};
  }

  bool equal(const Transport& a, const Transport& b) {
    if (a.power != b.power || a.dst() != b.dst() || a.src() != b.src()) return false;
    return normalize(a).scalar == normalize(b).scalar;
  }

  /// (-1)^{dn} / |M|^2.
  CycNum A_T() const {
    CycNum a = CycNum(Rational(1) / Rational(lag_size() * lag_size()));
    return dn() % 2 == 0 ? a : -a;
  }

  /// T_{M,L}; pairs that are not transversal go through a third Lagrangian.
  Transport T(int M, int L) {
    if (M == L) return {CycNum(1), {M}, 4};
    if (transversal(M, L)) return {A_T(), {M, L}, 4};
    int k = base_enhanced(first_transversal_lag(enh_lag_[M], enh_lag_[L]));
    return compose(T(M, k), T(k, L));
  }

  /// T_{M,L} through a chosen intermediate K transversal to both.
  Transport T_via(int M, int K, int L) { return compose(T(M, K), T(K, L)); }

  // --- oriented side ---

  int oid(const OrientedLagrangian& o) {
    std::vector<std::uint16_t> key;
    for (const auto& b : o.sub.basis) {
      for (RingElem x : b) key.push_back(x.code);
    }
    key.push_back(o.unit.code);
    auto it = or_index_.find(key);
    if (it != or_index_.end()) return it->second;
    ori_.push_back(o);
    or_pi_.push_back(id(enhance_from_lift(s_, o)));
    int out = static_cast<int>(ori_.size()) - 1;
    or_index_[key] = out;
    return out;
  }
  const OrientedLagrangian& oriented(int oid) const { return ori_[oid]; }
  /// The forgetful map to ELag(V).
  int pi(int oid) const { return or_pi_[oid]; }
  bool otransversal(int a, int b) const { return transversal(or_pi_[a], or_pi_[b]); }

  std::vector<int> register_all_oriented() {
    std::vector<int> ids;
    for (const auto& o : enumerate_oriented(s_, lags_)) ids.push_back(oid(o));
    return ids;
  }

  /// First free lift with unit orientation over the first Lagrangian transversal to both.
  int first_oriented_transversal(int a, int b) {
    int lid = first_transversal_lag(enh_lag_[or_pi_[a]], enh_lag_[or_pi_[b]]);
    return oid({lifts_of(lid).front(), s_.ring().one()});
  }

  /// B = diag(1, ..., 1, w) with w = omega~_wedge(o_L, o_M).
  SymFormR B_form(int Mt, int Lt) const {
    const GaloisRing& R = s_.ring();
    RingElem w = wedge_pairing(s_, ori_[Lt], ori_[Mt]);
    SymFormR b{s_.ring_ptr(), s_.n(), std::vector<RingElem>(static_cast<std::size_t>(s_.n() * s_.n()))};
    for (int i = 0; i < s_.n(); ++i) b.g[i * s_.n() + i] = (i == s_.n() - 1) ? w : R.one();
    return b;
  }

  /// A_{M~,L~} = G(2[R^n, tr B]) = G([R^n, tr B])^2.
  CycNum A_split(int Mt, int Lt) const {
    CycNum g = gauss(trace_form(B_form(Mt, Lt)));
    return g * g;
  }

  Transport S(int Mt, int Lt) {
    if (Mt == Lt) return {CycNum(1), {or_pi_[Mt]}, 2};
    if (otransversal(Mt, Lt)) {
      CycNum sc = A_split(Mt, Lt) / CycNum(Rational(lag_size() * lag_size()));
      return {sc, {or_pi_[Mt], or_pi_[Lt]}, 2};
    }
    int k = first_oriented_transversal(Mt, Lt);
    return compose(S(Mt, k), S(k, Lt));
  }

  Transport S_via(int Mt, int Kt, int Lt) { return compose(S(Mt, Kt), S(Kt, Lt)); }

  /// All free lifts of Lagrangian lid, cached.
  const std::vector<FreeLagrangian>& lifts_of(int lid) {
    auto it = free_.find(lid);
    if (it == free_.end()) it = free_.emplace(lid, free_lifts(s_, *lags_[lid])).first;
    return it->second;
  }

 private:
  const SympSpace& s_;
  std::vector<LagPtr> lags_;
  std::map<std::vector<VecV>, int> lag_index_;
  std::vector<std::optional<FreeLagrangian>> lifts_;
  std::vector<int> base_;
  std::vector<EnhancedLagrangian> enh_;
  std::vector<int> enh_lag_;
  std::map<std::pair<int, std::vector<std::uint16_t>>, int> enh_index_;
  std::vector<std::unique_ptr<Model>> models_;
  std::map<std::pair<int, int>, ZiMat> F_;
  std::vector<OrientedLagrangian> ori_;
  std::vector<int> or_pi_;
  std::map<std::vector<std::uint16_t>, int> or_index_;
  std::map<int, std::vector<FreeLagrangian>> free_;
};

// ---------------------------------------------------------------------------
// The cocycle C(N, M, L)

inline void require_pairwise_transversal(Context& ctx, int N, int M, int L) {
  if (!ctx.transversal(N, M) || !ctx.transversal(M, L) || !ctx.transversal(N, L)) {
    throw NotTransversal("weil2: cocycle needs a pairwise transversal triple");
  }
}

/// F_{N,M} F_{M,L} = C F_{N,L}, read off the full matrices.
inline CycNum cocycle_C(Context& ctx, int N, int M, int L) {
  require_pairwise_transversal(ctx, N, M, L);
  return proportionality(ctx.F(N, M) * ctx.F(M, L), ctx.F(N, L));
}

/// sum_{m in M} psi(Q(m)), Q(m) = alpha_M(m) + alpha_N(r m) - alpha_L(m - r m) - beta(m, r m).
inline GaussInt cocycle_C_formula_zi(Context& ctx, int N, int M, int L) {
  require_pairwise_transversal(ctx, N, M, L);
  const SympSpace& s = ctx.space();
  const GaloisRing& R = s.ring();
  const auto& eN = ctx.enhanced(N);
  const auto& eM = ctx.enhanced(M);
  const auto& eL = ctx.enhanced(L);
  auto r = r_table(s, *eN.L, *eL.L);
  GaussInt acc;
  for (VecV m : eM.L->members) {
    VecV rm = r[m];
    RingElem q = R.add(eM.alpha[m], eN.alpha[rm]);
    q = R.sub(q, eL.alpha[m ^ rm]);
    q = R.sub(q, s.beta(m, rm));
    acc += GaussInt::i_pow(R.trace(q));
  }
  return acc;
}

inline CycNum cocycle_C_formula(Context& ctx, int N, int M, int L) {
  return cocycle_C_formula_zi(ctx, N, M, L).to_cyc();
}

struct SimplifiedCocycleData {
  std::vector<RingElem> sigma;  // on V, supported on M
  VecV m_sigma = 0;
  RingElem correction;          // omega~_L~(m~_sigma, m~_sigma)
  CycNum gauss;                 // G([M~, tr omega~_L~])
  CycNum value;
};

/// C = psi(-omega~_L~(m~_s, m~_s)) G([M~, tr omega~_L~]) with canonical lifts
/// of the three Lagrangians and psi(omega_L(m_s, -)) = psi(sigma). Over d > 1 sigma
/// is only additive, so it is matched through the trace.
inline SimplifiedCocycleData cocycle_C_simplified(Context& ctx, int N, int M, int L) {
  require_pairwise_transversal(ctx, N, M, L);
  const SympSpace& s = ctx.space();
  const GaloisRing& R = s.ring();
  const int lN = ctx.lag_of(N), lM = ctx.lag_of(M), lL = ctx.lag_of(L);
  const auto& eN = ctx.enhanced(N);
  const auto& eM = ctx.enhanced(M);
  const auto& eL = ctx.enhanced(L);
  const auto& bN = ctx.enhanced(ctx.base_enhanced(lN));
  const auto& bM = ctx.enhanced(ctx.base_enhanced(lM));
  const auto& bL = ctx.enhanced(ctx.base_enhanced(lL));
  const FreeLagrangian& Nt = ctx.canonical_lift(lN);
  const FreeLagrangian& Mt = ctx.canonical_lift(lM);
  const FreeLagrangian& Lt = ctx.canonical_lift(lL);
  auto r = r_table(s, *eN.L, *eL.L);

  SimplifiedCocycleData out;
  out.sigma.assign(s.size(), RingElem{});
  for (VecV m : eM.L->members) {
    VecV rm = r[m];
    RingElem sm = R.sub(eM.alpha[m], bM.alpha[m]);
    RingElem sn = R.sub(eN.alpha[rm], bN.alpha[rm]);
    RingElem sl = R.sub(eL.alpha[m ^ rm], bL.alpha[m ^ rm]);
    out.sigma[m] = R.sub(R.add(sm, sn), sl);
  }
  bool found = false;
  for (VecV x : eM.L->members) {
    bool ok = true;
    for (VecV m : eM.L->members) {
      if (R.trace(s.omega(r[x], m)) != R.trace(out.sigma[m])) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (found) throw Error("weil2: omega_L is degenerate on M");
      out.m_sigma = x;
      found = true;
    }
  }
  if (!found) throw Error("weil2: sigma is not represented by omega_L");
  RTilde rt(s, Nt, Lt);
  VecR ms = element_over(s, Mt, out.m_sigma);
  out.correction = s.omega_t(rt(ms), ms);
  out.gauss = gauss(trace_form(omega_tilde_form(s, Nt, Mt, Lt)));
  out.value = CycNum::i_pow(R.trace(R.neg(out.correction))) * out.gauss;
  return out;
}

}  // namespace weil2
