#pragma once

// Weil operators on a fixed model H_{L0}. An object of the gerbe is a choice
// of scalars lambda_L with (lambda_L F-chain)^{(x)4} = T_{L,L0}; the split
// version uses oriented Lagrangians, S and square roots.

#include "weil2/intertwining.hpp"

#include <map>
#include <optional>
#include <vector>

namespace weil2 {

namespace detail {

inline long log2_exact(const mpz_class& x) {
  if (x <= 0) throw InvalidInput("weil2: expected a power of two");
  std::size_t b = mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
  mpz_class p = 1;
  p <<= b;
  if (p != x) throw InvalidInput("weil2: expected a power of two");
  return static_cast<long>(b);
}

}  // namespace detail

/// The root x of x^p = t with x = zeta^k 2^{e/2p}, k in [0, 8) smallest.
inline CycNum canonical_root(const CycNum& t, int p) {
  CycNum m = t.abs2();
  if (!m.is_rational()) throw InconsistentScalar("weil2: |t|^2 is not rational");
  const Rational& a = m[0];
  long e = detail::log2_exact(a.get_num()) - detail::log2_exact(a.get_den());
  if (e % p != 0) throw InconsistentScalar("weil2: no root of the expected absolute value");
  CycNum mag = CycNum::sqrt2_pow(e / p);
  for (int k = 0; k < 8; ++k) {
    CycNum x = CycNum::zeta_pow(k) * mag;
    if (x.pow(p) == t) return x;
  }
  throw InconsistentScalar("weil2: root does not lie in Q(zeta_8)");
}

struct GerbeObject {
  int L0 = 0;
  std::map<int, CycNum> lambdas;  // enhanced id -> lambda
};

struct SplitGerbeObject {
  int Lt0 = 0;
  std::map<int, CycNum> mus;  // oriented id -> mu
};

inline CycNum object_lambda(Context& ctx, GerbeObject& obj, int L) {
  auto it = obj.lambdas.find(L);
  if (it != obj.lambdas.end()) return it->second;
  CycNum x = canonical_root(ctx.normalize(ctx.T(L, obj.L0)).scalar, 4);
  obj.lambdas.emplace(L, x);
  return x;
}

inline CycNum object_mu(Context& ctx, SplitGerbeObject& obj, int Lt) {
  auto it = obj.mus.find(Lt);
  if (it != obj.mus.end()) return it->second;
  CycNum x = canonical_root(ctx.normalize(ctx.S(Lt, obj.Lt0)).scalar, 2);
  obj.mus.emplace(Lt, x);
  return x;
}

inline GerbeObject build_object(Context& ctx, int L0) {
  GerbeObject obj{L0, {}};
  for (int id : ctx.register_all_enhanced()) object_lambda(ctx, obj, id);
  return obj;
}

inline SplitGerbeObject build_split_object(Context& ctx, int Lt0) {
  SplitGerbeObject obj{Lt0, {}};
  for (int id : ctx.register_all_oriented()) object_mu(ctx, obj, id);
  return obj;
}

/// Ad_a tau: g l -> (g l, alpha_L(l) + alpha_a(l)).
inline EnhancedLagrangian act(const SympSpace& s, const AspElem& a, const EnhancedLagrangian& e) {
  std::vector<VecV> rows;
  for (VecV b : e.L->basis) rows.push_back(a.table[b]);
  EnhancedLagrangian out{make_lagrangian(s, rows), std::vector<RingElem>(s.size())};
  for (VecV l : e.L->members) out.alpha[a.table[l]] = s.ring().add(e.alpha[l], a.alpha[l]);
  return out;
}

/// g~ (L~, o) = (g~ L~, wedge^n g~ (o)).
inline OrientedLagrangian act(const SympSpace& s, const MatRt& g, const OrientedLagrangian& o) {
  std::vector<VecR> rows;
  for (const auto& b : o.sub.basis) rows.push_back(apply(s, g, b));
  return make_oriented(s, rows, o.unit);
}

/// f -> f o a^{-1}, from H_{L0} to H_{a L0} (dst is the model of a L0).
inline ZiMat pullback_matrix(const SympSpace& s, const Model& src, const Model& dst, const AspElem& a) {
  AspElem ai = asp_inverse(s, a);
  ZiMat out(dst.dim(), src.dim());
  for (std::size_t t = 0; t < dst.dim(); ++t) {
    HeisElem h = asp_apply(s, ai, {dst.rep(t), RingElem{}});
    auto [col, e] = src.locate(h.v, h.z);
    out(t, col) += GaussInt::i_pow(e);
  }
  return out;
}

namespace detail {

/// (scalar * chain(dst <- src))^{-1} o U.
inline CycMat normalized_pullback(Context& ctx, int src, int dst, const CycNum& scalar, const AspElem& a) {
  ZiMat U = pullback_matrix(ctx.space(), ctx.model(src), ctx.model(dst), a);
  ZiMat K = ctx.chain_matrix(ctx.canonical_chain(dst, src));
  return scaled(scalar.inv(), inverse(to_cyc(K)) * to_cyc(U));
}

}  // namespace detail

/// W(a) = E_{L0, a L0} o (f -> f o a^{-1}).
inline CycMat weil_operator(Context& ctx, GerbeObject& obj, const AspElem& a) {
  int aL0 = ctx.id(act(ctx.space(), a, ctx.enhanced(obj.L0)));
  return detail::normalized_pullback(ctx, obj.L0, aL0, object_lambda(ctx, obj, aL0), a);
}

/// W(a) W(b) = c(a, b) W(ab).
inline CycNum proj_cocycle(Context& ctx, GerbeObject& obj, const AspElem& a, const AspElem& b) {
  const SympSpace& s = ctx.space();
  return proportionality(weil_operator(ctx, obj, a) * weil_operator(ctx, obj, b),
                         weil_operator(ctx, obj, asp_mul(s, a, b)));
}

/// The Weil operator of g~ through S-normalized transports on oriented Lagrangians.
inline CycMat split_weil_operator(Context& ctx, SplitGerbeObject& obj, const MatRt& g) {
  const SympSpace& s = ctx.space();
  AspElem a = lift_sp(s, g);
  int gL = ctx.oid(act(s, g, ctx.oriented(obj.Lt0)));
  return detail::normalized_pullback(ctx, ctx.pi(obj.Lt0), ctx.pi(gL), object_mu(ctx, obj, gL), a);
}

inline CycNum split_cocycle(Context& ctx, SplitGerbeObject& obj, const MatRt& g, const MatRt& h) {
  const SympSpace& s = ctx.space();
  return proportionality(split_weil_operator(ctx, obj, g) * split_weil_operator(ctx, obj, h),
                         split_weil_operator(ctx, obj, compose(s, g, h)));
}

/// Sign table of split_cocycle over a list of elements closed under composition.
inline std::vector<std::vector<int>> split_cocycle_table(Context& ctx, SplitGerbeObject& obj, const std::vector<MatRt>& group) {
  std::vector<std::vector<int>> out(group.size(), std::vector<int>(group.size()));
  for (std::size_t a = 0; a < group.size(); ++a) {
    for (std::size_t b = 0; b < group.size(); ++b) {
      CycNum c = split_cocycle(ctx, obj, group[a], group[b]);
      if (c != CycNum(1) && c != CycNum(-1)) throw InconsistentScalar("weil2: split cocycle is not a sign");
      out[a][b] = c == CycNum(1) ? 1 : -1;
    }
  }
  return out;
}

/// f with c(g, h) = f(g) f(h) / f(gh), if one exists. Signs are bits, so this is
/// a linear system over F2 in the values f(g).
inline std::optional<std::vector<int>> sign_coboundary(const SympSpace& s, const std::vector<MatRt>& group,
                                                       const std::vector<std::vector<int>>& c) {
  const std::size_t m = group.size();
  auto index = [&](const MatRt& g) {
    for (std::size_t k = 0; k < m; ++k) {
      if (group[k] == g) return k;
    }
    throw InvalidInput("weil2: element list is not closed under composition");
  };
  const GaloisRing f2(1);
  MatF rows;
  VecF rhs;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      VecF row(m);
      row[a] = f2.fadd(row[a], {1});
      row[b] = f2.fadd(row[b], {1});
      std::size_t ab = index(compose(s, group[a], group[b]));
      row[ab] = f2.fadd(row[ab], {1});
      rows.push_back(row);
      rhs.push_back({static_cast<std::uint16_t>(c[a][b] == -1)});
    }
  }
  auto x = solve(f2, rows, rhs);
  if (!x) return std::nullopt;
  std::vector<int> out;
  for (FieldElem v : *x) out.push_back(v.code ? -1 : 1);
  return out;
}

/// W pi_{L0}(h) = pi_{L0}(a(h)) W for every h in the list.
inline bool egorov_holds(Context& ctx, int L0, const CycMat& W, const AspElem& a, const std::vector<HeisElem>& hs) {
  const SympSpace& s = ctx.space();
  const Model& m = ctx.model(L0);
  for (const auto& h : hs) {
    CycMat lhs = W * to_cyc(pi_matrix(s, m, h));
    CycMat rhs = to_cyc(pi_matrix(s, m, asp_apply(s, a, h))) * W;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// dim { X : X pi(h) = pi(h) X for the Heisenberg generators }.
inline std::size_t commutant_dimension(const SympSpace& s, const Model& m) {
  const std::size_t n = m.dim();
  auto gens = heisenberg_generators(s);
  CycMat sys(gens.size() * n * n, n * n);
  std::size_t row = 0;
  for (const auto& h : gens) {
    ZiMat p = pi_matrix(s, m, h);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j, ++row) {
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, i * n + k) += p(k, j).to_cyc();
          sys(row, k * n + j) -= p(i, k).to_cyc();
        }
      }
    }
  }
  return n * n - rank(sys);
}

}  // namespace weil2
