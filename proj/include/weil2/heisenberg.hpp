#pragma once

// The Heisenberg group H(V) = V x R, the affine symplectic group ASp(V) of
// automorphisms acting trivially on the center, and Sp(V~) -> ASp(V).

#include "weil2/symplectic.hpp"

#include <vector>

namespace weil2 {

struct HeisElem {
  VecV v = 0;
  RingElem z;
  friend bool operator==(const HeisElem&, const HeisElem&) = default;
};

inline HeisElem h_mul(const SympSpace& s, HeisElem a, HeisElem b) {
  const GaloisRing& R = s.ring();
  return {a.v ^ b.v, R.add(R.add(a.z, b.z), s.beta(a.v, b.v))};
}

inline HeisElem h_inv(const SympSpace& s, HeisElem a) {
  const GaloisRing& R = s.ring();
  return {a.v, R.sub(R.neg(a.z), s.beta(a.v, a.v))};
}

/// Generators: (x^j u_i, 0) over the F2-basis of V, and (0, 1).
inline std::vector<HeisElem> heisenberg_generators(const SympSpace& s) {
  std::vector<HeisElem> out;
  for (VecV v : s.standard_f2_basis()) out.push_back({v, {}});
  out.push_back({0, s.ring().one()});
  return out;
}

// ---------------------------------------------------------------------------
// Matrices over k and over R, stored by the images of the unit vectors.

struct MatK {
  std::vector<VecV> cols;
  friend bool operator==(const MatK&, const MatK&) = default;
};

inline VecV apply(const SympSpace& s, const MatK& g, VecV v) {
  VecV out = 0;
  for (int i = 0; i < s.dim(); ++i) {
    FieldElem c = s.coord(v, i);
    if (c.code != 0) out ^= s.scale(c, g.cols[i]);
  }
  return out;
}

inline MatK compose(const SympSpace& s, const MatK& g, const MatK& h) {
  MatK out;
  for (VecV c : h.cols) out.cols.push_back(apply(s, g, c));
  return out;
}

inline MatK identity_k(const SympSpace& s) {
  MatK g;
  for (int i = 0; i < s.dim(); ++i) g.cols.push_back(s.unit(i));
  return g;
}

inline bool is_symplectic(const SympSpace& s, const MatK& g) {
  for (int i = 0; i < s.dim(); ++i) {
    for (int j = 0; j < s.dim(); ++j) {
      if (s.omega_bar(g.cols[i], g.cols[j]) != s.omega_bar(s.unit(i), s.unit(j))) return false;
    }
  }
  return true;
}

inline MatK inverse(const SympSpace& s, const MatK& g) {
  std::vector<VecV> table(s.size());
  for (VecV v = 0; v < s.size(); ++v) table[apply(s, g, v)] = v;
  MatK out;
  for (int i = 0; i < s.dim(); ++i) out.cols.push_back(table[s.unit(i)]);
  return out;
}

struct MatRt {
  std::vector<VecR> cols;
  friend bool operator==(const MatRt&, const MatRt&) = default;
};

inline VecR apply(const SympSpace& s, const MatRt& g, const VecR& x) {
  VecR out = s.zero_t();
  for (int i = 0; i < s.dim(); ++i) {
    if (x[i].code != 0) out = s.add_t(out, s.scale_t(x[i], g.cols[i]));
  }
  return out;
}

inline MatRt compose(const SympSpace& s, const MatRt& g, const MatRt& h) {
  MatRt out;
  for (const auto& c : h.cols) out.cols.push_back(apply(s, g, c));
  return out;
}

inline MatRt identity_rt(const SympSpace& s) {
  MatRt g;
  for (int i = 0; i < s.dim(); ++i) g.cols.push_back(s.lift(s.unit(i)));
  return g;
}

inline bool is_symplectic(const SympSpace& s, const MatRt& g) {
  for (int i = 0; i < s.dim(); ++i) {
    for (int j = 0; j < s.dim(); ++j) {
      if (s.omega_t(g.cols[i], g.cols[j]) != s.omega_t(s.lift(s.unit(i)), s.lift(s.unit(j)))) return false;
    }
  }
  return true;
}

inline MatK reduce(const SympSpace& s, const MatRt& g) {
  MatK out;
  for (const auto& c : g.cols) out.cols.push_back(s.reduce(c));
  return out;
}

/// The symplectic transvection x -> x + a omega_bar(x, v) v.
inline MatK transvection(const SympSpace& s, VecV v, FieldElem a) {
  MatK g;
  for (int i = 0; i < s.dim(); ++i) {
    VecV u = s.unit(i);
    FieldElem c = s.ring().fmul(a, s.omega_bar(u, v));
    g.cols.push_back(u ^ s.scale(c, v));
  }
  return g;
}

/// All of Sp(V) by brute force over k-linear maps.
inline std::vector<MatK> enumerate_sp(const SympSpace& s) {
  const std::uint64_t per = s.size();
  std::uint64_t total = 1;
  for (int i = 0; i < s.dim(); ++i) total *= per;
  if (!size_caps_disabled() && total > (std::uint64_t{1} << 20)) throw CapExceeded("weil2: Sp(V) too large to enumerate");
  std::vector<MatK> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    MatK g;
    std::uint64_t r = idx;
    for (int i = 0; i < s.dim(); ++i) {
      g.cols.push_back(static_cast<VecV>(r % per));
      r /= per;
    }
    if (is_symplectic(s, g)) out.push_back(std::move(g));
  }
  return out;
}

/// All of Sp(V~) by brute force; only feasible for n = d = 1 (48 elements).
inline std::vector<MatRt> enumerate_sp_tilde(const SympSpace& s) {
  const std::uint64_t per = s.ring().size();
  const int entries = s.dim() * s.dim();
  std::uint64_t total = 1;
  for (int i = 0; i < entries; ++i) total *= per;
  if (!size_caps_disabled() && total > (std::uint64_t{1} << 20)) throw CapExceeded("weil2: Sp(V~) too large to enumerate");
  std::vector<MatRt> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    MatRt g;
    g.cols.assign(s.dim(), s.zero_t());
    std::uint64_t r = idx;
    for (int c = 0; c < s.dim(); ++c) {
      for (int i = 0; i < s.dim(); ++i) {
        g.cols[c][i] = {static_cast<std::uint16_t>(r % per)};
        r /= per;
      }
    }
    if (is_symplectic(s, g)) out.push_back(std::move(g));
  }
  return out;
}

/// A lift of g in Sp(V) to Sp(V~): lifted columns plus a correction 2x_j with
/// omega(g u_i, x_j) equal to the strict upper part of the defect form.
inline MatRt lift_to_sp_tilde(const SympSpace& s, const MatK& g) {
  const GaloisRing& R = s.ring();
  const int dim = s.dim(), n = s.n();
  MatRt g0;
  for (VecV c : g.cols) g0.cols.push_back(s.lift(c));
  MatF a;
  for (int i = 0; i < dim; ++i) {
    VecF form(dim);
    for (int t = 0; t < n; ++t) {
      form[t] = s.coord(g.cols[i], n + t);
      form[n + t] = s.coord(g.cols[i], t);
    }
    a.push_back(form);
  }
  MatRt out = g0;
  for (int j = 0; j < dim; ++j) {
    VecF rhs(dim);
    for (int i = 0; i < j; ++i) {
      RingElem defect = R.sub(s.omega_t(g0.cols[i], g0.cols[j]), s.omega_t(s.lift(s.unit(i)), s.lift(s.unit(j))));
      rhs[i] = R.halve(defect);
    }
    auto x = solve(R, a, rhs);
    if (!x) throw Error("weil2: symplectic lift correction has no solution");
    out.cols[j] = s.add_t(g0.cols[j], s.scale_t(R.from_int(2), s.lift(s.make(*x))));
  }
  if (!is_symplectic(s, out)) throw Error("weil2: symplectic lift failed");
  return out;
}

// ---------------------------------------------------------------------------
// ASp(V)

struct AspElem {
  MatK g;
  std::vector<VecV> table;      // v -> g v
  std::vector<RingElem> alpha;  // indexed by V
  friend bool operator==(const AspElem& a, const AspElem& b) { return a.g == b.g && a.alpha == b.alpha; }
};

inline AspElem make_asp(const SympSpace& s, const MatK& g, std::vector<RingElem> alpha) {
  AspElem a;
  a.g = g;
  a.table.resize(s.size());
  for (VecV v = 0; v < s.size(); ++v) a.table[v] = apply(s, g, v);
  a.alpha = std::move(alpha);
  return a;
}

/// alpha(v1 + v2) - alpha(v1) - alpha(v2) = beta(g v1, g v2) - beta(v1, v2), alpha(0) = 0.
inline bool in_sigma_g(const SympSpace& s, const std::vector<VecV>& table, const std::vector<RingElem>& alpha) {
  const GaloisRing& R = s.ring();
  if (alpha[0].code != 0) return false;
  for (VecV a = 0; a < s.size(); ++a) {
    for (VecV b = 0; b < s.size(); ++b) {
      RingElem lhs = R.sub(R.sub(alpha[a ^ b], alpha[a]), alpha[b]);
      RingElem rhs = R.sub(s.beta(table[a], table[b]), s.beta(a, b));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

inline bool is_valid(const SympSpace& s, const AspElem& a) { return is_symplectic(s, a.g) && in_sigma_g(s, a.table, a.alpha); }

inline AspElem asp_identity(const SympSpace& s) { return make_asp(s, identity_k(s), std::vector<RingElem>(s.size())); }

/// (g, a_g)(h, a_h) = (gh, v -> a_g(h v) + a_h(v)).
inline AspElem asp_mul(const SympSpace& s, const AspElem& a, const AspElem& b) {
  const GaloisRing& R = s.ring();
  std::vector<RingElem> alpha(s.size());
  for (VecV v = 0; v < s.size(); ++v) alpha[v] = R.add(a.alpha[b.table[v]], b.alpha[v]);
  return make_asp(s, compose(s, a.g, b.g), std::move(alpha));
}

inline AspElem asp_inverse(const SympSpace& s, const AspElem& a) {
  const GaloisRing& R = s.ring();
  MatK gi = inverse(s, a.g);
  AspElem out = make_asp(s, gi, std::vector<RingElem>(s.size()));
  for (VecV v = 0; v < s.size(); ++v) out.alpha[v] = R.neg(a.alpha[out.table[v]]);
  return out;
}

/// (v, z) -> (g v, z + alpha(v)).
inline HeisElem asp_apply(const SympSpace& s, const AspElem& a, HeisElem h) {
  return {a.table[h.v], s.ring().add(h.z, a.alpha[h.v])};
}

/// The pure translation (1, sigma) for sigma given on the standard F2-basis of V.
inline AspElem translation(const SympSpace& s, const std::vector<FieldElem>& sigma_on_basis) {
  const GaloisRing& R = s.ring();
  auto fb = s.standard_f2_basis();
  std::vector<RingElem> alpha(s.size());
  for (std::uint32_t m = 0; m < (1u << fb.size()); ++m) {
    FieldElem acc{0};
    for (std::size_t q = 0; q < fb.size(); ++q) {
      if ((m >> q) & 1u) acc = R.fadd(acc, sigma_on_basis[q]);
    }
    alpha[SympSpace::combine(fb, m)] = R.two_times(acc);
  }
  return make_asp(s, identity_k(s), std::move(alpha));
}

/// |Hom(V, R)| = 2^{d * 2dn}.
inline std::uint64_t translation_count(const SympSpace& s) { return std::uint64_t{1} << (s.d() * 2 * s.d() * s.n()); }

inline std::vector<FieldElem> translation_sigma(const SympSpace& s, std::uint64_t idx) {
  const std::size_t len = static_cast<std::size_t>(2 * s.d() * s.n());
  const std::uint64_t q = 1u << s.d();
  std::vector<FieldElem> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = {static_cast<std::uint16_t>(idx % q)};
    idx /= q;
  }
  return out;
}

/// alpha(v) = beta~(g~ v~, g~ v~) - beta~(v~, v~).
inline AspElem lift_sp(const SympSpace& s, const MatRt& gt) {
  const GaloisRing& R = s.ring();
  std::vector<RingElem> alpha(s.size());
  for (VecV v = 0; v < s.size(); ++v) {
    VecR x = s.lift(v);
    VecR gx = apply(s, gt, x);
    alpha[v] = R.sub(s.beta_t(gx, gx), s.beta_t(x, x));
  }
  return make_asp(s, reduce(s, gt), std::move(alpha));
}

/// All of ASp(V): a lift_sp section over each g times every translation.
inline std::vector<AspElem> enumerate_asp(const SympSpace& s) {
  std::vector<AspElem> out;
  for (const auto& g : enumerate_sp(s)) {
    AspElem base = lift_sp(s, lift_to_sp_tilde(s, g));
    for (std::uint64_t t = 0; t < translation_count(s); ++t) {
      out.push_back(asp_mul(s, base, translation(s, translation_sigma(s, t))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// k-valued pseudo-symplectic condition

/// Solves alpha(v1 + v2) - alpha(v1) - alpha(v2) = beta_F(g v1, g v2) - beta_F(v1, v2)
/// for alpha: V -> k by propagation along the F2-basis and then checks every pair.
inline bool pseudo_symplectic_solvable(const SympSpace& s, const MatK& g) {
  const GaloisRing& R = s.ring();
  auto fb = s.standard_f2_basis();
  auto defect = [&](VecV a, VecV b) {
    return R.fadd(s.beta_bar(apply(s, g, a), apply(s, g, b)), s.beta_bar(a, b));
  };
  std::vector<FieldElem> alpha(s.size());
  std::vector<char> known(s.size(), 0);
  known[0] = 1;
  for (VecV b : fb) {
    for (VecV v = 0; v < s.size(); ++v) {
      if (known[v] && !known[v ^ b]) {
        alpha[v ^ b] = R.fadd(alpha[v], defect(v, b));
        known[v ^ b] = 1;
      }
    }
  }
  for (VecV a = 0; a < s.size(); ++a) {
    for (VecV b = 0; b < s.size(); ++b) {
      if (R.fadd(R.fadd(alpha[a ^ b], alpha[a]), alpha[b]) != defect(a, b)) return false;
    }
  }
  return true;
}

/// g preserves Q(v) = beta_F(v, v).
inline bool in_orthogonal_group(const SympSpace& s, const MatK& g) {
  for (VecV v = 0; v < s.size(); ++v) {
    VecV w = apply(s, g, v);
    if (s.beta_bar(w, w) != s.beta_bar(v, v)) return false;
  }
  return true;
}

}  // namespace weil2
