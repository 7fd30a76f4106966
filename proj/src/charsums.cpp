#include "qlf/charsums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <omp.h>

#include "qlf/errors.hpp"

namespace qlf {

namespace {

void require_odd_modulus(i64 n, const char* what) {
  if (n < 1 || n % 2 == 0) throw DomainError(std::string(what) + ": modulus must be odd and positive, got " + std::to_string(n));
}

i64 mod(i64 a, i64 n) {
  const i64 r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

std::string to_string(GaussCase c) {
  switch (c) {
    case GaussCase::zero_odd: return "zero_odd";
    case GaussCase::phi_even: return "phi_even";
    case GaussCase::neg_palpha: return "neg_palpha";
    case GaussCase::sqrt_case: return "sqrt_case";
    case GaussCase::zero_high: return "zero_high";
  }
  return "?";
}

bool GaussSumValue::is_zero() const {
  for (const auto& w : witness)
    if (w.which == GaussCase::zero_odd || w.which == GaussCase::zero_high) return true;
  return false;
}

cplx tau_brute(i64 k, i64 n) {
  require_odd_modulus(n, "tau_brute");
  if (n > kTauOracleLimit) {
    throw ResourceError("tau_brute: modulus " + std::to_string(n) + " beyond the oracle limit " +
                            std::to_string(kTauOracleLimit),
                        "tau oracle limit");
  }
  const i64 kr = mod(k, n);
  constexpr i64 kBlock = 4096;
  const i64 nblocks = (n + kBlock - 1) / kBlock;
  std::vector<cplx> part(static_cast<std::size_t>(nblocks));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
#pragma omp parallel for schedule(static) if (nblocks > 1)
  for (i64 b = 0; b < nblocks; ++b) {
    cplx s = 0.0;
    for (i64 a = b * kBlock; a < std::min(n, (b + 1) * kBlock); ++a) {
      const int chi = jacobi(a, n);
      if (chi == 0) continue;
      // reduce a k mod n before forming the angle
      const double ang = step * static_cast<double>(static_cast<__int128>(a) * kr % n);
      s += static_cast<double>(chi) * cplx(std::cos(ang), std::sin(ang));
    }
    part[static_cast<std::size_t>(b)] = s;
  }
  cplx tot = 0.0;
  for (const cplx& p : part) tot += p;
  return tot;
}

cplx gauss_prefactor(i64 n) {
  require_odd_modulus(n, "gauss_prefactor");
  return (n % 4 == 1) ? cplx(1.0, 0.0) : cplx(0.0, -1.0);
}

cplx gauss_from_tau(i64 k, i64 n) { return gauss_prefactor(n) * tau_brute(k, n); }

GaussSumValue gauss_closed(i64 k, const FactoredInteger& n) {
  require_odd_modulus(n.n, "gauss_closed");
  GaussSumValue g;
  double v = 1.0;
  for (const auto& [p, beta] : n.factors) {
    int alpha = -1;
    i64 unit = k;
    if (k != 0) {
      alpha = 0;
      while (unit % p == 0) {
        unit /= p;
        ++alpha;
      }
    }
    const bool inf = (alpha < 0);
    GaussCase c;
    double local;
    if (inf || beta <= alpha) {
      c = (beta % 2) ? GaussCase::zero_odd : GaussCase::phi_even;
      local = (beta % 2) ? 0.0 : static_cast<double>(phi(FactoredInteger{0, {{p, beta}}}));
    } else if (beta == alpha + 1) {
      const double pa = std::pow(static_cast<double>(p), alpha);
      if (beta % 2 == 0) {
        c = GaussCase::neg_palpha;
        local = -pa;
      } else {
        c = GaussCase::sqrt_case;
        local = jacobi(unit, p) * pa * std::sqrt(static_cast<double>(p));
      }
    } else {
      c = GaussCase::zero_high;
      local = 0.0;
    }
    g.witness.push_back({p, beta, alpha, c});
    v *= local;
  }
  g.value = cplx(g.is_zero() ? 0.0 : v, 0.0);
  return g;
}

GaussSumValue gauss_closed(i64 k, i64 n) {
  require_odd_modulus(n, "gauss_closed");
  return gauss_closed(k, factor(n));
}

double tilde_negligible_frequency(const SmoothWeight& F, double eps) {
  if (F.kind() == WeightKind::plateau) {
    // |F~(xi)| <= |B(2 pi xi w)| * 2 / (2 pi |xi|) * sqrt 2, and B is tabulated to 900.
    const double w = F.ramp_width();
    double om = 1.0;
    while (om < 900.0 && ramp_cosine_envelope(om) > eps) om += 1.0;
    return om / (2.0 * std::numbers::pi * w);
  }
  double xi = 1.0;
  while (xi < 1e6) {
    bool small = true;
    for (double f : {1.0, 1.37, 1.71}) small = small && std::abs(tilde_transform(F, xi * f)) < eps;
    if (small) return xi;
    xi *= 2.0;
  }
  return xi;
}

PoissonResult poisson_check(i64 n, double X, i64 Y, const SmoothWeight& F) {
  require_odd_modulus(n, "poisson_check");
  if (!(X > 0.0) || Y < 1) throw DomainError("poisson_check: need X > 0 and Y >= 1");
  PoissonResult r;

  // Direct side: d odd in (X, 2X).
  {
    double s = 0.0, comp = 0.0;
    for (i64 d = static_cast<i64>(std::floor(X)) + 1; d < 2.0 * X; ++d) {
      if (d % 2 == 0) continue;
      const i64 m = my_weight(d, Y);
      if (m == 0) continue;
      const int chi = jacobi(d, n);
      if (chi == 0) continue;
      const double y = m * chi * F.eval(static_cast<double>(d) / X) - comp;
      const double t = s + y;
      comp = (t - s) - y;
      s = t;
    }
    r.lhs = s / X;
  }

  // Dual side. G_k(n) depends on k mod n only.
  std::vector<double> G(static_cast<std::size_t>(n));
  const FactoredInteger fn = factor(n);
  for (i64 k = 0; k < n; ++k) G[static_cast<std::size_t>(k)] = gauss_closed(k, fn).value.real();
  r.xi_max = tilde_negligible_frequency(F);
  double total = 0.0;
  for (i64 alpha = 1; alpha <= Y; ++alpha) {
    if (alpha % 2 == 0 || std::gcd(alpha, n) != 1) continue;
    const int mu = mobius(alpha);
    if (mu == 0) continue;
    const double scale = X / (2.0 * static_cast<double>(alpha * alpha) * static_cast<double>(n));
    const auto kmax = static_cast<i64>(std::ceil(r.xi_max / scale));
    double s = G[0] * tilde_transform(F, 0.0);
    for (i64 k = 1; k <= kmax; ++k) {
      const double sign = (k % 2) ? -1.0 : 1.0;
      const double gp = G[static_cast<std::size_t>(k % n)];
      const double gm = G[static_cast<std::size_t>(mod(-k, n))];
      if (gp == 0.0 && gm == 0.0) continue;
      const double xi = static_cast<double>(k) * scale;
      s += sign * (gp * tilde_transform(F, xi) + gm * tilde_transform(F, -xi));
    }
    r.terms += 2 * kmax + 1;
    total += mu * s / static_cast<double>(alpha * alpha);
  }
  r.rhs = total * jacobi(2, n) / (2.0 * static_cast<double>(n));
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace qlf
