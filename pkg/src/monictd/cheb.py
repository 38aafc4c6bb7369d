"""Discovery and exact certification of optimal monic integer Chebyshev
products.

A candidate is a formal weighted product F(x) = sum (a_i/deg f_i) *
log|f_i(x)| over monic irreducible factors with nonnegative rational
weights summing to one; the product polynomial itself is never expanded
(published exponents reach 10^10).  Candidate factors come from lattice
reduction of the monomial basis under an L2 form with a leading-
coefficient penalty; weights come from a discretized minimax linear
program.

Certification that sup over I of exp(F) equals the obstruction value
a_d^(-1/d) of a nonmonic irreducible Q with all roots in I rests on four
checks:

1. |Res(f_i, Q)| = 1 for every factor (exact integer arithmetic);
2. Q divides the critical-point numerator N = sum c_i f_i' prod_{j!=i} f_j
   exactly, so every root of Q is a critical point of F;
3. at every other real root of N inside I, and at the interval endpoints,
   F stays strictly below log(a_d^(-1/d)), by directed-rounding bounds
   with precision escalation;
4. F equals log(a_d^(-1/d)) exactly at every root of Q.  For linear Q
   this follows from check 1 alone.  Otherwise the weight vector must be
   a rational combination of multiplicative relations among a_d and the
   |f_i(root)| -- candidate relations are found numerically, then each is
   verified symbolically in Q[x]/(Q) before it may carry certification
   weight.

The balance of 3 and 4 pins sup F = log m with equality only at Q's
roots, which is the equality case of the obstruction bound, hence
t_M(I) = a_d^(-1/d) on the certified interval.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .balls import (Enclosure, PREC_CAP, log_ball, log_hi, log_lo,
                    round_dyadic)
from .errors import (Infeasible, MonicInput, NotCritical, ResultantFailed,
                     RootsEscapeI, StrictMaxUndecided, SupExceedsM,
                     UnboundedBelow)
from .lattice import in_row_span, lll_reduce
from .poly import (IntPoly, ObstructionValue, factor, poly_invmod,
                   poly_mulmod, poly_powmod, resultant)
from .realroots import (RatInterval, RootBox, all_roots_real_in,
                        isolate_roots, isolate_roots_in, refine)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Weighted products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedProduct:
    """Normalized formal product prod f_i^(alpha_i/deg f_i), sum alpha = 1."""

    factors: tuple[tuple[IntPoly, Fraction], ...]

    def __post_init__(self):
        seen = set()
        total = Fraction(0)
        for f, a in self.factors:
            if not f.is_monic or f.degree < 1:
                raise ValueError(f"factor {f!r} is not monic of positive degree")
            if f in seen:
                raise ValueError(f"duplicate factor {f!r}")
            seen.add(f)
            if a < 0:
                raise ValueError("negative weight")
            total += a
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")

    @staticmethod
    def from_integer_exponents(pairs) -> "WeightedProduct":
        """Build from (factor, integer exponent) pairs: P = prod f^A."""
        pairs = [(f, int(a)) for f, a in pairs]
        deg = sum(a * f.degree for f, a in pairs)
        if deg <= 0:
            raise ValueError("product has nonpositive degree")
        return WeightedProduct(tuple(
            (f, Fraction(a * f.degree, deg)) for f, a in pairs))

    @property
    def weights(self) -> tuple[Fraction, ...]:
        """The exponents alpha_i/deg f_i of the normalized product."""
        return tuple(a / f.degree for f, a in self.factors)

    def active(self):
        """(factor, weight) pairs with strictly positive weight."""
        return [(f, a / f.degree) for f, a in self.factors if a > 0]

    def numerator_coeffs(self) -> list[int]:
        """Integer c_i proportional to the weights (common denominator
        cleared, gcd removed); zero-weight factors get 0."""
        ws = self.weights
        den = 1
        for w in ws:
            den = lcm(den, w.denominator)
        cs = [int(w * den) for w in ws]
        g = 0
        for c in cs:
            g = gcd(g, c)
        return [c // g for c in cs] if g > 1 else cs

    def critical_numerator(self) -> IntPoly:
        """N(x) = sum c_i f_i'(x) prod_{j != i} f_j(x)."""
        cs = self.numerator_coeffs()
        total = IntPoly.one()
        for f, _ in self.factors:
            total = total * f
        n = IntPoly.zero()
        for (f, _), c in zip(self.factors, cs):
            if c:
                n = n + c * (f.derivative() * total.exact_div(f))
        return n

    # -- certified evaluation of F -------------------------------------------

    def sup_log_upper(self, lo: Fraction, hi: Fraction, prec: int) -> Fraction:
        """Exact dyadic upper bound for F over [lo, hi]."""
        return pairs_sup_log_upper(self.active(), lo, hi, prec)

    def inf_log_lower(self, lo: Fraction, hi: Fraction, prec: int) -> Fraction | None:
        """Exact dyadic lower bound for F over [lo, hi]; None when a factor
        may vanish on the interval (F unbounded below)."""
        return pairs_inf_log_lower(self.active(), lo, hi, prec)

    def log_value_bounds_at(self, x: Fraction, prec: int):
        """(lower, upper) dyadic bounds of F at a rational point; lower is
        None when some factor vanishes at x (F = -inf there)."""
        return pairs_log_bounds_at(self.active(), x, prec)

    def log_value_ball(self, box: RootBox, prec: int) -> Enclosure:
        """Enclosure of F over a root box (all factors nonvanishing on it)."""
        b = box
        while True:
            lo = self.inf_log_lower(b.interval.lo, b.interval.hi, prec)
            if lo is not None:
                hi = self.sup_log_upper(b.interval.lo, b.interval.hi, prec)
                return Enclosure.from_endpoints(lo, hi, prec)
            b = refine(b, b.width / 4)

    # -- transforms ------------------------------------------------------------

    def transform_one_minus_x(self) -> "WeightedProduct":
        """The product with every factor f(x) replaced by +-f(1-x), monic."""
        out = []
        for f, a in self.factors:
            g = f.one_minus_x()
            if g.lc < 0:
                g = -g
            out.append((g, a))
        out.sort(key=lambda fa: (fa[0].degree, fa[0].coeffs))
        return WeightedProduct(tuple(out))

    def translate(self, n: int) -> "WeightedProduct":
        """The product with factors f(x - n) (roots shifted by +n)."""
        out = [(f.compose_linear(1, -n), a) for f, a in self.factors]
        out.sort(key=lambda fa: (fa[0].degree, fa[0].coeffs))
        return WeightedProduct(tuple(out))

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"factors": [{"coeffs": [str(c) for c in f.coeffs],
                             "alpha": f"{a.numerator}/{a.denominator}"}
                            for f, a in self.factors]}

    @staticmethod
    def from_json_dict(data: dict) -> "WeightedProduct":
        pairs = []
        for fd in data["factors"]:
            pairs.append((IntPoly(int(c) for c in fd["coeffs"]),
                          Fraction(fd["alpha"])))
        return WeightedProduct(tuple(pairs))


# -- weighted-log evaluation over (factor, weight) pairs ---------------------
# Shared with the critical-witness pipeline, whose factors need not be monic.

def pairs_sup_log_upper(pairs, lo: Fraction, hi: Fraction, prec: int) -> Fraction:
    """Exact dyadic upper bound of sum w*log|f| over [lo, hi]."""
    acc = Fraction(0)
    for f, w in pairs:
        if w == 0:
            continue
        vlo, vhi = f.interval_eval(lo, hi)
        mag_hi = max(abs(vlo), abs(vhi))
        if mag_hi == 0:
            return Fraction(-(1 << 62))  # factor vanishes identically
        acc += w * log_hi(mag_hi, prec)
    return acc


def pairs_inf_log_lower(pairs, lo: Fraction, hi: Fraction, prec: int):
    """Exact dyadic lower bound, or None when a factor may vanish inside."""
    acc = Fraction(0)
    for f, w in pairs:
        if w == 0:
            continue
        vlo, vhi = f.interval_eval(lo, hi)
        if vlo <= 0 <= vhi:
            return None
        mag_lo = min(abs(vlo), abs(vhi))
        acc += w * log_lo(mag_lo, prec)
    return acc


def pairs_log_bounds_at(pairs, x: Fraction, prec: int):
    """(lower, upper) bounds at a rational point; lower None at a zero."""
    up = Fraction(0)
    lo: Fraction | None = Fraction(0)
    for f, w in pairs:
        if w == 0:
            continue
        v = abs(f(Fraction(x)))
        if v == 0:
            return None, Fraction(-(1 << 62))
        up += w * log_hi(v, prec)
        if lo is not None:
            lo += w * log_lo(v, prec)
    return lo, up


@dataclass(frozen=True)
class ProductCertificate:
    """Evidence recorded by certify_attainment."""

    resultants: tuple[int, ...]
    numerator: IntPoly
    relations: tuple[tuple[int, ...], ...]
    strict_points: int
    endpoints_checked: tuple[Fraction, ...]
    aux_attainment: tuple[IntPoly, ...] = ()


@dataclass(frozen=True)
class CertifiedProduct:
    """A weighted product whose normalized sup on ``interval`` is certified."""

    product: WeightedProduct
    interval: RatInterval
    obstruction: IntPoly
    sup_value: ObstructionValue
    certificate: ProductCertificate

    def to_json_dict(self) -> dict:
        d = {"interval": {"lo": _fstr(self.interval.lo), "hi": _fstr(self.interval.hi)},
             "obstruction": {"coeffs": [str(c) for c in self.obstruction.coeffs]}}
        d.update(self.product.to_json_dict())
        return d


def _fstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Candidate factors: Gram form and lattice reduction
# ---------------------------------------------------------------------------

def gram_matrix(interval: RatInterval, k: int) -> list[list[Fraction]]:
    """Exact Gram matrix of the monomial basis 1..x^k: entry (i, j) is
    integral of x^(i+j) over the interval, plus 1 added at (k, k) to
    penalize nonmonic leading coefficients."""
    if interval.length <= 0:
        raise ValueError("gram matrix needs a nondegenerate interval")
    lo, hi = interval.lo, interval.hi
    g = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
    for i in range(k + 1):
        for j in range(k + 1):
            p = i + j + 1
            g[i][j] = Fraction(hi ** p - lo ** p, p)
    g[k][k] += 1
    return g


def lll_candidates(interval: RatInterval, k_max: int) -> list[IntPoly]:
    """Monic irreducible candidate factors from lattice reduction at each
    degree k <= k_max.

    The reduced basis and its pairwise sums/differences are scanned for
    vectors with unit leading coefficient; each is factored and the monic
    irreducible factors are collected.  Degrees where no monic vector
    appears are reported through the logger, not fatally.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    found: dict[IntPoly, None] = {}
    for k in range(1, k_max + 1):
        g = gram_matrix(interval, k)
        basis = [[1 if i == j else 0 for j in range(k + 1)] for i in range(k + 1)]
        reduced = lll_reduce(basis, g)
        cands = []
        vectors = list(reduced)
        for i in range(len(reduced)):
            for j in range(len(reduced)):
                if i != j:
                    vectors.append([a + b for a, b in zip(reduced[i], reduced[j])])
                    vectors.append([a - b for a, b in zip(reduced[i], reduced[j])])
        for v in vectors:
            if len(v) == k + 1 and abs(v[k]) == 1:
                p = IntPoly(v)
                if p.lc < 0:
                    p = -p
                if p.degree == k:
                    cands.append(p)
        if not cands:
            log.warning("no monic vector at degree %d for %s", k, interval)
            continue
        for p in cands:
            for f, _mult in factor(p).factors:
                if f.degree >= 1 and f.is_monic and f not in found:
                    found[f] = None
    out = list(found)
    out.sort(key=lambda f: (f.degree, f.coeffs))
    return out


def filter_factors(candidates, q: IntPoly) -> list[IntPoly]:
    """Keep exactly the candidates f with |Res(f, Q)| = 1."""
    if q.lc < 0:
        q = -q
    if q.is_monic:
        raise MonicInput("obstruction polynomial must be nonmonic")
    out = []
    seen = set()
    for f in candidates:
        if f in seen:
            continue
        seen.add(f)
        if abs(resultant(f, q)) == 1:
            out.append(f)
    out.sort(key=lambda f: (f.degree, f.coeffs))
    return out


# ---------------------------------------------------------------------------
# Weight optimization (simplex on a discretized minimax program)
# ---------------------------------------------------------------------------

def optimize_weights(factors, interval: RatInterval, q: IntPoly | None = None,
                     samples_per_factor: int = 500, guard: float = 1e-6,
                     denom_bound: int = 10 ** 6):
    """Minimize t subject to sum (alpha_i/deg f_i) log|f_i(x)| <= t on a
    Chebyshev-distributed sample of the interval, sum alpha = 1, alpha >= 0.

    With ``q`` given, adds the equality constraints that make every root of
    q a critical point of the product with the required value: derivative
    balance and log-value rows at certified root enclosures, plus exact
    rows derived from verified multiplicative relations when present.

    Returns (t, alphas): the simplex optimum of the discretized program
    (t on log scale) and the weights rationalized by bounded-denominator
    rounding and rechecked for feasibility.
    """
    import numpy as np
    from scipy.optimize import linprog

    factors = list(factors)
    n = len(factors)
    if n < 1:
        raise ValueError("need at least one factor")
    nsamples = samples_per_factor * n
    if nsamples < 10 * n:
        raise ValueError("sample budget below 10 per factor")

    lo, hi = float(interval.lo), float(interval.hi)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    roots = []
    for f in factors:
        for bx in isolate_roots(f):
            b = refine(bx, Fraction(1, 10 ** 9))
            roots.append(float(b.midpoint))

    degs = [f.degree for f in factors]
    rows, rhs = [], []
    for j in range(nsamples):
        x = mid + half * float(np.cos(np.pi * j / (nsamples - 1)))
        if any(abs(x - r) < guard for r in roots):
            continue
        vals = [abs(float(f(Fraction(x).limit_denominator(10 ** 12)))) for f in factors]
        if any(v == 0.0 for v in vals):
            continue
        rows.append([float(np.log(v)) / d for v, d in zip(vals, degs)] + [-1.0])
        rhs.append(0.0)

    a_eq = [[1.0] * n + [0.0]]
    b_eq = [1.0]
    if q is not None:
        if q.lc < 0:
            q = -q
        d = q.degree
        ad = q.lc
        needs_criticality = True
        if d == 1:
            needs_criticality = interval.contains_interior(
                Fraction(-q.constant, q.lc))
        for bx in isolate_roots(q):
            b = refine(bx, Fraction(1, 10 ** 12))
            beta = float(b.midpoint)
            fvals = [float(f(Fraction(beta).limit_denominator(10 ** 15)))
                     for f in factors]
            if any(v == 0.0 for v in fvals):
                continue
            if needs_criticality:
                dvals = [float(f.derivative()(
                    Fraction(beta).limit_denominator(10 ** 15)))
                    for f in factors]
                a_eq.append([dv / (deg * fv)
                             for dv, fv, deg in zip(dvals, fvals, degs)]
                            + [0.0])
                b_eq.append(0.0)
            a_eq.append([float(np.log(abs(fv))) / deg for fv, deg in zip(fvals, degs)]
                        + [0.0])
            b_eq.append(-float(np.log(ad)) / d)
            rels = relation_basis(factors, q, bx)
            for row, val in _relation_equalities(rels, degs, d):
                a_eq.append([float(x) for x in row] + [0.0])
                b_eq.append(float(val))
            break  # one root pins the values; others are conjugate

    c = [0.0] * n + [1.0]
    bounds = [(0.0, None)] * n + [(None, None)]
    res = linprog(c, A_ub=rows or None, b_ub=rhs or None, A_eq=a_eq,
                  b_eq=b_eq, bounds=bounds, method="highs")
    if res.status == 2:
        raise Infeasible("weight program has no feasible point")
    if res.status == 3:
        raise UnboundedBelow("weight program is unbounded")
    if res.status != 0:
        raise Infeasible(f"simplex failed: {res.message}")

    t_opt = float(res.x[-1])
    raw = [max(0.0, float(v)) for v in res.x[:n]]

    if q is not None:
        exact = exact_weight_constraints(factors, q, interval)
        bound = denom_bound
        while True:
            alphas = project_weights(factors, raw, exact, bound)
            if alphas is not None and all(a >= 0 for a in alphas):
                fmax = _float_sup_on_samples(factors, alphas, rows)
                if fmax <= t_opt + 1e-6:
                    return t_opt, alphas
            if bound >= 10 ** 15:
                raise Infeasible("could not rationalize weights onto the "
                                 "exact attainment constraints")
            bound *= 1000

    bound = denom_bound
    while True:
        alphas = [Fraction(v).limit_denominator(bound) for v in raw]
        s = sum(alphas)
        if s > 0:
            alphas = [a / s for a in alphas]
            fmax = _float_sup_on_samples(factors, alphas, rows)
            if fmax <= t_opt + 1e-7:
                return t_opt, alphas
        if bound >= 10 ** 12:
            return t_opt, alphas
        bound *= 1000


def _float_sup_on_samples(factors, alphas, rows) -> float:
    ws = [float(a) / f.degree for f, a in zip(factors, alphas)]
    best = float("-inf")
    for row in rows:
        v = sum(w * c * f.degree for w, c, f in zip(ws, row[:-1], factors))
        best = max(best, v)
    return best


def optimize_weights_margin(factors, interval: RatInterval, q: IntPoly,
                            exclude_radius: float = 0.02,
                            samples_per_factor: int = 600,
                            denom_bound: int = 10 ** 6):
    """Exact weights maximizing the strict margin below log m.

    Same constraint structure as :func:`optimize_weights`, but instead of
    minimizing the sup the program maximizes s with F(x_j) <= log m - s on
    samples away from q's roots (near a root F approaches log m, so no
    margin is possible or needed there).  The returned weights satisfy the
    exact attainment constraints (sum one, criticality) and sit strictly
    inside the feasible region, which is what lets the bounded-denominator
    rationalization survive certification.
    """
    import math as _math
    import numpy as np
    from scipy.optimize import linprog

    factors = list(factors)
    if q.lc < 0:
        q = -q
    n = len(factors)
    degs = [f.degree for f in factors]
    qroots = [float(refine(b, Fraction(1, 10 ** 9)).midpoint)
              for b in isolate_roots(q)]
    logm = -_math.log(q.lc) / q.degree
    lo, hi = float(interval.lo), float(interval.hi)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    nsamples = samples_per_factor * n
    rows = []
    for j in range(nsamples):
        x = mid + half * float(np.cos(np.pi * j / (nsamples - 1)))
        if any(abs(x - r) < exclude_radius for r in qroots):
            continue
        xf = Fraction(x).limit_denominator(10 ** 12)
        vals = [abs(float(f(xf))) for f in factors]
        if any(v == 0.0 for v in vals):
            continue
        rows.append([_math.log(v) / d for v, d in zip(vals, degs)] + [1.0])
    exact = exact_weight_constraints(factors, q, interval)
    a_eq = [[float(x) for x in row] + [0.0] for row, _ in exact]
    b_eq = [float(rhs) for _, rhs in exact]
    c = [0.0] * n + [-1.0]
    res = linprog(c, A_ub=rows, b_ub=[logm] * len(rows), A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0.0, None)] * n + [(0.0, 1.0)], method="highs")
    if res.status == 2:
        raise Infeasible("margin program has no feasible point")
    if res.status != 0:
        raise Infeasible(f"margin program failed: {res.message}")
    raw = [max(0.0, float(v)) for v in res.x[:n]]
    bound = denom_bound
    while True:
        alphas = project_weights(factors, raw, exact, bound)
        if alphas is not None and all(a >= 0 for a in alphas):
            return alphas
        if bound >= 10 ** 15:
            raise Infeasible("could not rationalize margin weights")
        bound *= 1000


def exact_weight_constraints(factors, q: IntPoly,
                             interval: RatInterval | None = None):
    """Exact rational equality rows (row, rhs) every certifiable weight
    vector must satisfy: the weights sum to one, and q divides the
    critical-point numerator (d rational conditions: the numerator reduced
    mod q vanishes coefficient by coefficient).  A linear q whose root
    sits on the interval boundary needs no criticality row."""
    if q.lc < 0:
        q = -q
    n = len(factors)
    d = q.degree
    rows = [([Fraction(1)] * n, Fraction(1))]
    if d == 1:
        beta = Fraction(-q.constant, q.lc)
        if interval is not None and not interval.contains_interior(beta):
            return rows
        row = [Fraction(f.derivative()(beta), f.degree) / f(beta) for f in factors]
        rows.append((row, Fraction(0)))
        return rows
    from .poly import poly_mod
    total = IntPoly.one()
    for f in factors:
        total = total * f
    per_factor_mods = []
    for f in factors:
        g = f.derivative() * total.exact_div(f)
        per_factor_mods.append(poly_mod([Fraction(c) for c in g.coeffs], q))
    for power in range(d):
        row = []
        for f, gm in zip(factors, per_factor_mods):
            c = gm[power] if power < len(gm) else Fraction(0)
            row.append(c / f.degree)
        if any(row):
            rows.append((row, Fraction(0)))
    return rows


def project_weights(factors, raw, exact_rows, denom_bound):
    """Rationalize float weights onto the exact constraint rows.

    Solves the constraints over the rationals, parameterizes the affine
    solution space, rounds the free coordinates of the float point with
    bounded denominators, and reassembles an exact solution.  Returns
    None when the constraints are inconsistent.
    """
    from .lattice import row_reduce
    n = len(factors)
    aug = [list(row) + [rhs] for row, rhs in exact_rows]
    red, pivots = row_reduce(aug)
    for r in red:
        if all(x == 0 for x in r[:n]) and r[n] != 0:
            return None
    pivots = [p for p in pivots if p < n]
    free = [c for c in range(n) if c not in pivots]
    # particular solution with free coordinates rounded from the floats
    alphas = [Fraction(0)] * n
    for fc in free:
        alphas[fc] = Fraction(raw[fc]).limit_denominator(denom_bound)
    for ridx in range(len(pivots) - 1, -1, -1):
        pc = pivots[ridx]
        acc = red[ridx][n]
        for c in range(pc + 1, n):
            acc -= red[ridx][c] * alphas[c]
        alphas[pc] = acc
    for row, rhs in exact_rows:
        if sum(r * a for r, a in zip(row, alphas)) != rhs:
            return None
    return alphas


def _relation_equalities(relations, degs, d):
    """Exact equality rows on alpha implied by verified relations.

    The weight vector tau = (1/d, alpha_1/deg_1, ...) must lie in the span
    of the relation rows (e_0, e_1, ...); equivalently tau is orthogonal
    to the nullspace of the relation matrix.  Each nullspace basis vector
    u yields the row sum_i u_i * alpha_i/deg_i = -u_0/d.
    """
    from .lattice import row_reduce
    if not relations:
        return []
    n = len(degs)
    rref, pivots = row_reduce([list(map(Fraction, r)) for r in relations])
    free_cols = [c for c in range(n + 1) if c not in pivots]
    nullspace = []
    for fc in free_cols:
        u = [Fraction(0)] * (n + 1)
        u[fc] = Fraction(1)
        for ridx, pc in enumerate(pivots):
            u[pc] = -rref[ridx][fc]
        nullspace.append(u)
    out = []
    for u in nullspace:
        row = [u[1 + i] / degs[i] for i in range(n)]
        out.append((row, -u[0] / Fraction(d)))
    return out


# ---------------------------------------------------------------------------
# Multiplicative relations at obstruction roots
# ---------------------------------------------------------------------------

_REL_EXP_CAP = 10 ** 4


def relation_basis(factors, q: IntPoly, beta: RootBox,
                   prec_bits: int = 384) -> list[tuple[int, ...]]:
    """Candidate integer relations e with
    e_0*log(a_d) + sum e_i*log|f_i(beta)| = 0.

    Found by lattice reduction on a scaled embedding of the log vector
    (PSLQ-equivalent), checked numerically at twice the working precision,
    and then verified exactly in Q[x]/(q); only exactly-verified relations
    are returned.  The numeric step is heuristic -- an empty result means
    nothing was found, not that no relation exists.
    """
    factors = list(factors)
    if q.lc < 0:
        q = -q
    logs = _log_vector(factors, q, beta, prec_bits)
    scale = 1 << (prec_bits - 48)
    n1 = len(logs)
    rows = []
    for i, x in enumerate(logs):
        row = [0] * n1 + [int(round_dyadic(x * scale, prec_bits, up=False))]
        row[i] = 1
        rows.append(row)
    gram = [[Fraction(0)] * (n1 + 1) for _ in range(n1 + 1)]
    for i in range(n1 + 1):
        gram[i][i] = Fraction(1)
    reduced = lll_reduce(rows, gram)
    out = []
    seen = set()
    check_logs = _log_vector(factors, q, beta, 2 * prec_bits)
    for v in reduced:
        e = tuple(v[:n1])
        if not any(e) or max(abs(x) for x in e) > _REL_EXP_CAP:
            continue
        if e in seen or tuple(-x for x in e) in seen:
            continue
        seen.add(e)
        resid = sum(c * x for c, x in zip(e, check_logs))
        if abs(resid) > Fraction(1, 1 << (prec_bits // 2)):
            continue
        if verify_relation_exact(factors, q, e):
            out.append(e)
    return out


def _log_vector(factors, q, beta, prec_bits) -> list[Fraction]:
    """Dyadic approximations of (log a_d, log|f_1(beta)|, ...)."""
    width = Fraction(1, 1 << (prec_bits + 64))
    b = refine(beta, width)
    vals = [log_ball(Fraction(q.lc), prec_bits + 64).center]
    for f in factors:
        vlo, vhi = f.interval_eval(b.interval.lo, b.interval.hi)
        while vlo <= 0 <= vhi:
            b = refine(b, b.width / 4)
            vlo, vhi = f.interval_eval(b.interval.lo, b.interval.hi)
        lo, hi = min(abs(vlo), abs(vhi)), max(abs(vlo), abs(vhi))
        vals.append(Enclosure.from_endpoints(
            log_lo(lo, prec_bits + 64), log_hi(hi, prec_bits + 64),
            prec_bits + 64).center)
    return vals


def verify_relation_exact(factors, q: IntPoly, rel) -> bool:
    """Exact check of a_d^e0 * prod |f_i(beta)|^{e_i} = 1 in Q[x]/(q).

    The product element must reduce to the constant +-a_d^(-e0); since q
    is irreducible the identity at one root is an identity at all of them.
    """
    e0, es = rel[0], rel[1:]
    if max((abs(e) for e in rel), default=0) > _REL_EXP_CAP:
        return False
    acc = [Fraction(1)]
    for f, e in zip(factors, es):
        if e == 0:
            continue
        base = [Fraction(c) for c in f.coeffs]
        if e < 0:
            base = poly_invmod(base, q)
            e = -e
        acc = poly_mulmod(acc, poly_powmod(base, e, q), q)
    if len(acc) > 1:
        return False
    val = acc[0] if acc else Fraction(0)
    target = Fraction(q.lc) ** (-e0)
    return val == target or val == -target


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------

def certify_attainment(product: WeightedProduct, interval: RatInterval,
                       q: IntPoly, prec_cap: int = PREC_CAP) -> CertifiedProduct:
    """Certify sup over the interval of the normalized product equals the
    obstruction value of q; see the module docstring for the four checks."""
    if q.lc < 0:
        q = -q
    if q.is_monic:
        raise MonicInput("obstruction polynomial must be nonmonic")
    if not factor(q).is_irreducible:
        raise ValueError("obstruction polynomial must be irreducible")
    if not all_roots_real_in(q, interval):
        raise RootsEscapeI(f"{q!r} has a root outside {interval}")
    d, ad = q.degree, q.lc
    m = ObstructionValue(ad, d)

    factors = [f for f, _ in product.factors]

    # (1) unit resultants
    res = []
    for f in factors:
        r = resultant(f, q)
        if abs(r) != 1:
            raise ResultantFailed(f"|Res({f.to_text()}, {q.to_text()})| = {abs(r)}")
        res.append(r)

    # (2) q divides the critical-point numerator.  A root of q sitting on
    # the interval boundary needs no criticality (the sup may be attained
    # at an endpoint without a vanishing derivative); that can only happen
    # for linear q, since higher-degree irreducibles have irrational roots.
    numerator = product.critical_numerator()
    needs_criticality = True
    if d == 1:
        beta = Fraction(-q.constant, q.lc)
        needs_criticality = interval.contains_interior(beta)
    if needs_criticality and not q.divides(numerator):
        raise NotCritical(f"{q.to_text()} does not divide the numerator")

    # (4) exact attainment at the roots of q
    relations = _attainment_relations(product, q)

    # quick consistency: F at each root must straddle log m
    logm_lo, logm_hi = _log_m_bounds(ad, d, 160)
    for bx in isolate_roots(q):
        ball = product.log_value_ball(bx, 160)
        if ball.hi < logm_lo or ball.lo > logm_hi:
            raise SupExceedsM(
                f"product value at a root of {q.to_text()} is off log m")

    # auxiliary attainment polynomials: other nonmonic irreducible factors
    # of the numerator whose obstruction value is exactly m, with unit
    # resultants and exact attainment -- their roots are further equality
    # points of F (the sup can touch log m at several obstruction roots)
    cofactor = numerator
    while q.divides(cofactor):
        cofactor = cofactor.exact_div(q)
    aux: list[IntPoly] = []
    if cofactor.degree >= 1:
        for g, _mult in factor(cofactor).factors:
            if g.degree < 1 or g.lc < 2 or g == q:
                continue
            if not ObstructionValue(g.lc, g.degree) == m:
                continue
            if any(abs(resultant(f, g)) != 1 for f in factors):
                continue
            try:
                _attainment_relations(product, g)
            except StrictMaxUndecided:
                continue
            aux.append(g)

    # (3) strict inequality at all remaining critical points and endpoints
    strict_part = cofactor
    for g in aux:
        while g.divides(strict_part):
            strict_part = strict_part.exact_div(g)
    strict_points = 0
    if strict_part.degree >= 1:
        for bx in isolate_roots_in(strict_part, interval):
            _certify_strict_below(product, interval, bx, ad, d, prec_cap)
            strict_points += 1
    endpoints = []
    for x in (interval.lo, interval.hi):
        if q.sign_at(x) == 0 or any(g.sign_at(x) == 0 for g in aux):
            continue  # endpoint is an equality point, covered by (4)
        _certify_strict_below_point(product, x, ad, d, prec_cap)
        endpoints.append(x)
        strict_points += 1

    cert = ProductCertificate(tuple(res), numerator, tuple(relations),
                              strict_points, tuple(endpoints), tuple(aux))
    return CertifiedProduct(product, interval, q, m, cert)


def _attainment_relations(product: WeightedProduct, q: IntPoly):
    """Relations certifying F = log m exactly at every root of q.

    Returns the verified relation vectors whose rational span contains the
    weight vector (1/d, w_1, ..., w_n); raises StrictMaxUndecided when no
    such span can be established.
    """
    d = q.degree
    factors = [f for f, _ in product.factors]
    ws = product.weights
    target = [Fraction(1, d)] + list(ws)
    if d == 1:
        # |Res| = 1 forces |f_i(b/a)| = a^(-deg f_i); the relation rows are
        # (deg f_i, e_i = delta_i) and the target is their weight combination.
        rels = []
        for i, f in enumerate(factors):
            e = [0] * (len(factors) + 1)
            e[0] = f.degree
            e[1 + i] = 1
            rels.append(tuple(e))
        return rels
    beta = isolate_roots(q)[0]
    for prec in (384, 768, 1536):
        rels = relation_basis(factors, q, beta, prec_bits=prec)
        if rels and in_row_span([list(map(Fraction, r)) for r in rels], target):
            return rels
    raise StrictMaxUndecided(
        "could not establish exact attainment at the obstruction roots: "
        "no verified relation set spans the weight vector")


def _log_m_bounds(ad: int, d: int, prec: int) -> tuple[Fraction, Fraction]:
    """(lower, upper) dyadic bounds of log m = -(1/d) log a_d."""
    return (-Fraction(log_hi(Fraction(ad), prec), d),
            -Fraction(log_lo(Fraction(ad), prec), d))


def _certify_strict_below(product, interval, box: RootBox, ad, d, prec_cap):
    """sup F over (box clipped to interval) < log m, or raise.

    Interval-arithmetic looseness, not bit precision, usually dominates
    here (a factor can nearly vanish at the critical point), so the box is
    shrunk aggressively while the precision follows the box width.
    """
    b = box
    while True:
        lo = max(b.interval.lo, interval.lo)
        hi = min(b.interval.hi, interval.hi)
        if lo > hi:
            return  # box fell outside the interval after refinement
        width = hi - lo
        width_bits = (width.denominator.bit_length()
                      - width.numerator.bit_length()) if width > 0 else prec_cap
        prec = max(64, width_bits + 64)
        if prec > prec_cap:
            raise StrictMaxUndecided(
                f"strict comparison at critical point near "
                f"{float(b.midpoint):.6g} undecided at {prec_cap} bits")
        logm_lo, logm_hi = _log_m_bounds(ad, d, prec)
        fup = product.sup_log_upper(lo, hi, prec)
        if fup < logm_lo:
            return
        flo = product.inf_log_lower(lo, hi, prec)
        if flo is not None and flo > logm_hi:
            raise SupExceedsM(
                f"local maximum near {float(b.midpoint):.6g} exceeds log m")
        b = refine(b, b.width / 16)


def _certify_strict_below_point(product, x: Fraction, ad, d, prec_cap):
    prec = 64
    while prec <= prec_cap:
        logm_lo, logm_hi = _log_m_bounds(ad, d, prec)
        flo, fup = product.log_value_bounds_at(x, prec)
        if fup < logm_lo:
            return
        if flo is not None and flo > logm_hi:
            raise SupExceedsM(f"endpoint value at {x} exceeds log m")
        prec *= 2
    raise StrictMaxUndecided(f"endpoint comparison at {x} undecided")


def translate_certified(cp: CertifiedProduct, n: int) -> CertifiedProduct:
    """The certificate transported by x -> x - n.

    Every check is equivariant under integer translation (resultants,
    divisibility, the log comparisons), so the transported certificate is
    sound without re-running it.
    """
    cert = cp.certificate
    new_cert = ProductCertificate(
        cert.resultants, cert.numerator.compose_linear(1, -n), cert.relations,
        cert.strict_points, tuple(x + n for x in cert.endpoints_checked),
        tuple(g.compose_linear(1, -n) for g in cert.aux_attainment))
    q = cp.obstruction.compose_linear(1, -n)
    return CertifiedProduct(cp.product.translate(n), cp.interval.translate(n),
                            q, cp.sup_value, new_cert)


def reflect_certified(cp: CertifiedProduct) -> CertifiedProduct:
    """The certificate transported by x -> 1 - x (same equivariance)."""
    cert = cp.certificate
    numer = cert.numerator.one_minus_x()

    def flip(p: IntPoly) -> IntPoly:
        g = p.one_minus_x()
        return -g if g.lc < 0 else g

    new_cert = ProductCertificate(
        cert.resultants, numer, cert.relations, cert.strict_points,
        tuple(1 - x for x in cert.endpoints_checked),
        tuple(flip(g) for g in cert.aux_attainment))
    return CertifiedProduct(cp.product.transform_one_minus_x(),
                            cp.interval.reflect_one_minus(),
                            flip(cp.obstruction), cp.sup_value, new_cert)


# ---------------------------------------------------------------------------
# Maximal certified intervals
# ---------------------------------------------------------------------------

def expand_certified_interval(product: WeightedProduct, q: IntPoly,
                              seed: RatInterval,
                              slack: Fraction = Fraction(1, 10 ** 10),
                              max_step: Fraction = Fraction(1, 4),
                              expand_lo: bool = True,
                              expand_hi: bool = True) -> RatInterval:
    """Largest rational interval around ``seed`` on which F stays at or
    below log m, found by certified bisection toward the boundary crossing
    on each side.

    The seed endpoints are treated as approximations: a side is first
    walked inward until F < log m is certified, then outward to bracket
    the crossing, then bisected to within ``slack``.
    """
    if q.lc < 0:
        q = -q
    ad, d = q.lc, q.degree
    qroots = isolate_roots(q)
    root_lo = refine(qroots[0], Fraction(1, 2 ** 40)).interval.lo
    root_hi = refine(qroots[-1], Fraction(1, 2 ** 40)).interval.hi

    def below(x: Fraction) -> bool:
        prec = 64
        while prec <= PREC_CAP:
            logm_lo, logm_hi = _log_m_bounds(ad, d, prec)
            flo, fup = product.log_value_bounds_at(x, prec)
            if fup < logm_lo:
                return True
            if flo is not None and flo > logm_hi:
                return False
            prec *= 2
        return False  # undecided (e.g. an equality point): not certifiably below

    def push(side: int, start: Fraction, inner_limit: Fraction) -> Fraction:
        # walk inward to a certified-below point
        x = start
        step = Fraction(1, 1 << 10)
        while not below(x):
            x -= side * step
            step *= 2
            if (side > 0 and x <= inner_limit) or (side < 0 and x >= inner_limit):
                raise SupExceedsM("no certified-below point inside the seed")
        inner = x
        # walk outward to bracket the boundary crossing
        step = Fraction(1, 1 << 10)
        outer = None
        total = Fraction(0)
        while total < max_step:
            step_eff = min(step, max_step - total)
            cand = inner + side * step_eff
            if below(cand):
                inner = cand
                total += step_eff
                step *= 2
            else:
                outer = cand
                break
        if outer is None:
            return inner
        while abs(outer - inner) > slack:
            mid = (inner + outer) / 2
            if below(mid):
                inner = mid
            else:
                outer = mid
        return inner

    # an endpoint at or inside q's root span is pinned: the value there is
    # exactly log m (or the roots would escape), so there is no crossing
    # to bracket on that side
    if not expand_hi or seed.hi <= root_hi or q.sign_at(seed.hi) == 0:
        hi = seed.hi
    else:
        hi = push(+1, seed.hi, root_hi)
    if not expand_lo or seed.lo >= root_lo or q.sign_at(seed.lo) == 0:
        lo = seed.lo
    else:
        lo = push(-1, seed.lo, root_lo)
    return RatInterval(lo, hi)


def certify_on_maximal_interval(product: WeightedProduct, q: IntPoly,
                                seed: RatInterval,
                                slack: Fraction = Fraction(1, 10 ** 10),
                                expand_lo: bool = True,
                                expand_hi: bool = True) -> CertifiedProduct:
    """Expand the seed interval to the certified boundary, then run the
    full certification there; falls back to the seed interval if the
    expanded one fails to certify."""
    widened = expand_certified_interval(product, q, seed, slack=slack,
                                        expand_lo=expand_lo,
                                        expand_hi=expand_hi)
    try:
        return certify_attainment(product, widened, q)
    except (SupExceedsM, StrictMaxUndecided):
        return certify_attainment(product, seed, q)
