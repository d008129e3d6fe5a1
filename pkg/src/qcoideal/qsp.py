"""Quantum symmetric pair coideal subalgebras: twisted generators and the
inhomogeneous Serre right-hand sides.

For an admissible pair (X, tau) and parameter families c, s this module
builds the coideal generators B_i, the distinguished first-order coproduct
components Z_i and W_ij, the closed formulas for the Serre right-hand side
C_ij(c) in the proved cases, and a projection-based oracle for C_ij(c)
that works for arbitrary Cartan entries.  The headline check is
`serre_defect`, the difference F_ij(B_i, B_j) - C_ij(c), which the engine
must certify to be zero.
"""

from __future__ import annotations

from .braid import apply_word
from .cartan import AdmissiblePair, rho_check_pairing, vec_sub
from .scalars import ONE, ZERO, Scalar, fourth_root_power, qint, qshifted_factorial
from .uqg import (
    Element,
    _vpow,
    coproduct_graded,
    is_zero,
    serre_polynomial,
    skew_ir,
    skew_r,
    word_weight,
)


class NoClosedFormulaError(ValueError):
    """No closed Serre right-hand side is in proved scope for this case."""


class MembershipError(ValueError):
    """Parameter family violates its defining set; carries the violations."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def s_value(pair: AdmissiblePair, j) -> Scalar:
    """Fourth root of unity attached to node j by the involution data."""
    if j in pair.X or pair.tau[j] == j:
        return ONE
    n = rho_check_pairing(pair.datum, pair.X, pair.datum.simple_root(j)) * 2
    if getattr(n, "denominator", 1) != 1:
        raise RuntimeError("internal: coroot half-sum pairing is not integral")
    n = int(n)
    if pair.tau[j] > j:
        return fourth_root_power(n)
    return fourth_root_power(-n)


def in_set_C(pair: AdmissiblePair, c: dict):
    """Violations of the defining conditions of the parameter set for c."""
    out = []
    free = sorted(set(pair.datum.labels) - pair.X)
    for i in free:
        if i not in c:
            out.append(f"missing parameter c_{i}")
    if out:
        return out
    for i in free:
        if not c[i]:
            out.append(f"c_{i} must be nonzero")
    for i in free:
        ti = pair.tau[i]
        if ti != i:
            ip = pair.datum.simple_root(i)
            if pair.datum.bilinear(ip, pair.theta_alpha(i)) == 0 and c[i] != c[ti]:
                out.append(f"c_{i} must equal c_{ti} (orthogonal split pair)")
    return out


def in_set_S(pair: AdmissiblePair, s: dict):
    """Violations for s: nonzero only on I_ns nodes whose I_ns neighbours
    pair into even Cartan entries (the corrected column condition)."""
    out = []
    datum = pair.datum
    free = sorted(set(datum.labels) - pair.X)
    ns = set(pair.I_ns)
    for i in free:
        si = s.get(i, ZERO)
        if not si:
            continue
        if i not in ns:
            out.append(f"s_{i} must vanish: node {i} is not tau-fixed X-orthogonal")
            continue
        for j in sorted(ns - {i}):
            aji = datum.a(j, i)
            if aji > 0 or aji % 2:
                out.append(
                    f"s_{i} must vanish: a_{j}{i} = {aji} is not in -2N_0"
                )
    return out


class QSPParameters:
    """Admissible pair plus validated parameter families c and s."""

    def __init__(self, pair: AdmissiblePair, c: dict, s: dict = None, validate=True):
        self.pair = pair
        free = sorted(set(pair.datum.labels) - pair.X)
        self.c = {i: c[i] for i in free}
        s = s or {}
        self.s = {i: s.get(i, ZERO) for i in free}
        if validate:
            violations = in_set_C(pair, self.c) + in_set_S(pair, self.s)
            if violations:
                raise MembershipError(violations)

    @property
    def datum(self):
        return self.pair.datum


class QSPContext:
    """Cached per-pair data: w_X word, s(j), twisted generators, Z_i, ell_i."""

    def __init__(self, pair: AdmissiblePair):
        self.pair = pair
        self.datum = pair.datum
        self._s = {}
        self._theta_fk = {}
        self._z = {}

    def s(self, j) -> Scalar:
        v = self._s.get(j)
        if v is None:
            v = s_value(self.pair, j)
            self._s[j] = v
        return v

    def theta_fk(self, i) -> Element:
        """Image of F_i K_i under the quantum involution: -s(tau(i)) T_{w_X}(E_{tau(i)})."""
        v = self._theta_fk.get(i)
        if v is None:
            if i in self.pair.X:
                raise ValueError("theta_fk is defined for nodes outside X")
            ti = self.pair.tau[i]
            v = apply_word(
                self.pair.wX_word, Element.E(self.datum, ti), check_reduced=False
            ).scale(-self.s(ti))
            self._theta_fk[i] = v
        return v

    def z(self, i) -> Element:
        v = self._z.get(i)
        if v is None:
            v = self._compute_z(i)
            self._z[i] = v
        return v

    def _compute_z(self, i) -> Element:
        datum = self.datum
        ti = self.pair.tau[i]
        core = skew_r(ti, self.theta_fk(i))
        kvec = vec_sub(datum.simple_root(ti), datum.simple_root(i))
        v = core * Element.K(datum, kvec)
        # graded home: E-part of weight w_X(alpha_tau(i)) - alpha_tau(i), fixed K
        want = vec_sub(
            datum.weyl_action(self.pair.wX_word, datum.simple_root(ti)),
            datum.simple_root(ti),
        )
        for (e, k, f) in v.terms:
            if f or k != tuple(kvec) or word_weight(datum, e) != want:
                raise RuntimeError("internal: Z element left its graded home")
        return v

    def ell(self, i) -> Scalar:
        """q-power q^{(alpha_i, alpha_i - w_X(alpha_i) - 2 rho_X)}."""
        datum = self.datum
        a = datum.simple_root(i)
        w = datum.weyl_action(self.pair.wX_word, a)
        vec = tuple(x - y - z for x, y, z in zip(a, w, self.pair.two_rho_X))
        return _vpow(2 * datum.bilinear(a, vec))


def theta_q_FK(ctx: QSPContext, i) -> Element:
    return ctx.theta_fk(i)


def z_element(ctx: QSPContext, i) -> Element:
    return ctx.z(i)


def w_element(ctx: QSPContext, i, j) -> Element:
    """Second-order coproduct component, from the double skew derivation."""
    datum = ctx.datum
    if j not in ctx.pair.X:
        raise ValueError("w_element requires j inside X")
    ti = ctx.pair.tau[i]
    num = skew_r(j, skew_r(ti, ctx.theta_fk(i)))
    kvec = vec_sub(datum.simple_root(ti), datum.simple_root(i))
    num = num * Element.K(datum, kvec)
    pairing = datum.bilinear(datum.simple_root(i), datum.simple_root(j))
    if pairing == 0:
        if is_zero(num):
            return Element.zero(datum)
        raise ValueError(
            "w_element undefined: orthogonal nodes with nonvanishing numerator"
        )
    denom = ONE - _vpow(4 * pairing)
    return num.scale(denom.inverse())


def b_generator(params: QSPParameters, i) -> Element:
    """B_i = F_i + c_i theta_q(F_i K_i) K_i^{-1} + s_i K_i^{-1}; F_i inside X."""
    datum = params.datum
    if i in params.pair.X:
        return Element.F(datum, i)
    ctx = _ctx_of(params)
    kinv = Element.K_i(datum, i, -1)
    out = Element.F(datum, i) + (ctx.theta_fk(i) * kinv).scale(params.c[i])
    si = params.s[i]
    if si:
        out = out + kinv.scale(si)
    return out


_CTX_CACHE = {}


def context_for(pair: AdmissiblePair) -> QSPContext:
    """Shared context cache for a pair (contexts are pure derived data)."""
    key = id(pair)
    ctx = _CTX_CACHE.get(key)
    if ctx is None or ctx.pair is not pair:
        ctx = QSPContext(pair)
        _CTX_CACHE[key] = ctx
    return ctx


def _ctx_of(params: QSPParameters) -> QSPContext:
    return context_for(params.pair)


# ---------------------------------------------------------------------------
# Closed formulas for the Serre right-hand side.
# ---------------------------------------------------------------------------

def _qi(datum, i, n=1) -> Scalar:
    return _vpow(2 * n * datum.epsilon(i))


def _qi_minus_inv(datum, i) -> Scalar:
    e = datum.epsilon(i)
    return _vpow(2 * e) - _vpow(-2 * e)


def c_closed(params: QSPParameters, i, j) -> Element:
    """Closed-form C_ij(c) in the proved cases.

    Split nodes (tau(i) = j != i) are covered for every Cartan entry; for
    tau-fixed i the Cartan entry must be in {0,-1,-2} towards X and in
    {0,-1,-2,-3} otherwise.  Raises NoClosedFormulaError outside scope.
    """
    datum = params.datum
    pair = params.pair
    if i == j:
        raise ValueError("Serre relations require i != j")
    if i in pair.X and j in pair.X:
        return Element.zero(datum)
    if i in pair.X:
        raise NoClosedFormulaError(
            f"no closed formula in scope for i = {i} inside X"
        )
    ctx = _ctx_of(params)
    ti = pair.tau[i]
    eps = datum.epsilon(i)
    if ti != i:
        if j != ti:
            return Element.zero(datum)
        m = 1 - datum.a(i, j)
        Bi = b_generator(params, i)
        Bim = Bi ** (m - 1)
        zi = ctx.z(i).scale(params.c[i])
        zt = ctx.z(ti).scale(params.c[ti])
        term = (Bim * zi).scale(_qi(datum, i, -m) * qshifted_factorial(_vpow(4 * eps), m))
        term = term + (Bim * zt).scale(_qi(datum, i) * qshifted_factorial(_vpow(-4 * eps), m))
        pref = -(_qi_minus_inv(datum, i) ** 2).inverse()
        return term.scale(pref)
    aij = datum.a(i, j)
    if aij == 0:
        return Element.zero(datum)
    if j in pair.X and aij < -2:
        raise NoClosedFormulaError(
            f"no closed formula in scope: a_{i}{j} = {aij} with j in X (general case open)"
        )
    if j not in pair.X and aij < -3:
        raise NoClosedFormulaError(
            f"no closed formula in scope: a_{i}{j} = {aij} (general case open)"
        )
    Bi = b_generator(params, i)
    Bj = b_generator(params, j)
    zi = ctx.z(i).scale(params.c[i])
    if j not in pair.X:
        if aij == -1:
            return (zi * Bj).scale(_qi(datum, i))
        if aij == -2:
            two = qint(2, eps)
            return (zi * (Bi * Bj - Bj * Bi)).scale(two * two * _qi(datum, i))
        # aij == -3; the signs of the two Z-linear coefficients are pinned by
        # the projection oracle (see tests), not taken on trust
        three = qint(3, eps)
        two = qint(2, eps)
        four = qint(4, eps)
        t1 = ((Bi * Bi * Bj + Bj * Bi * Bi) * zi).scale(
            (three * three + ONE) * _qi(datum, i)
        )
        t2 = ((Bi * Bj * Bi) * zi).scale(
            -(two * (two * four + _qi(datum, i, 1) ** 2 + _qi(datum, i, -1) ** 2)) * _qi(datum, i)
        )
        t3 = (Bj * zi * zi).scale(-(three * three) * _qi(datum, i) ** 2)
        return t1 + t2 + t3
    # j in X: unified formulas with skew derivatives of Z_i
    epj = datum.epsilon(j)
    rz = skew_r(j, ctx.z(i), allow_k=True) * Element.K_i(datum, j)
    irz = skew_ir(j, ctx.z(i), allow_k=True) * Element.K_i(datum, j, -1)
    denom = (_qi_minus_inv(datum, i) * _qi_minus_inv(datum, j)).inverse()
    if aij == -1:
        out = (Bj * zi).scale(_qi(datum, i))
        out = out + (rz.scale(_qi(datum, i) ** 2) + irz.scale(_vpow(4 * epj) * _qi(datum, i, -1) ** 2)).scale(denom).scale(params.c[i])
        return out
    if aij == -2:
        two = qint(2, eps)
        out = ((Bi * Bj - Bj * Bi) * zi).scale(_qi(datum, i) * two * two)
        jinv = _qi_minus_inv(datum, j).inverse()
        out = out + (Bi * rz).scale(-(_qi(datum, i) ** 4) * two * jinv).scale(params.c[i])
        out = out + (Bi * irz).scale(_vpow(4 * epj) * (_qi(datum, i, -1) ** 6) * two * jinv).scale(params.c[i])
        return out
    raise NoClosedFormulaError(f"unhandled case a_{i}{j} = {aij}")


def c_closed_torus(params: QSPParameters, i, j) -> Element:
    """Alternative closed form for tau-fixed i and j in X, written with the
    commutator of Z_i against B_j and the W element."""
    datum = params.datum
    pair = params.pair
    if i in pair.X or pair.tau[i] != i or j not in pair.X:
        raise NoClosedFormulaError(
            "torus-commutator closed form needs tau-fixed i outside X and j in X"
        )
    ctx = _ctx_of(params)
    aij = datum.a(i, j)
    eps = datum.epsilon(i)
    Bj = b_generator(params, j)
    zi = ctx.z(i).scale(params.c[i])
    wij = w_element(ctx, i, j).scale(params.c[i]) * Element.K_i(datum, j)
    qi = _qi(datum, i)
    if aij == 0:
        return Element.zero(datum)
    if aij == -1:
        out = ((Bj * zi).scale(qi ** 2) - zi * Bj).scale(_qi_minus_inv(datum, i).inverse())
        out = out + wij.scale((qi + _qi(datum, i, -1)) * _qi_minus_inv(datum, j).inverse())
        return out
    if aij == -2:
        Bi = b_generator(params, i)
        three = qint(3, eps)
        inner = (Bi * Bj).scale(three) - (Bj * Bi).scale(qi ** 2 + Scalar.from_int(2))
        out = (inner * zi).scale(qi ** 2)
        inner2 = (Bi * Bj).scale(Scalar.from_int(2) + _qi(datum, i, -1) ** 2) - (Bj * Bi).scale(three)
        out = out - zi * inner2
        out = out.scale(_qi_minus_inv(datum, i).inverse())
        coeff = (
            _qi_minus_inv(datum, i)
            * _qi_minus_inv(datum, j).inverse()
            * (qi + _qi(datum, i, -1)) ** 2
            * three
        )
        out = out - (Bi * wij).scale(coeff)
        return out
    raise NoClosedFormulaError(f"torus-commutator form covers a_ij in {{0,-1,-2}}, got {aij}")


def c_oracle(params: QSPParameters, i, j) -> Element:
    """Projection oracle for C_ij(c), valid for arbitrary Cartan entries.

    Computes Y = F_ij(B_i, B_j), takes the coproduct cell whose second
    factor is exactly K_{-lambda_ij}, and returns Y minus that cell (the
    projection formula with the counit applied).
    """
    datum = params.datum
    if i == j:
        raise ValueError("Serre relations require i != j")
    Bi = b_generator(params, i)
    Bj = b_generator(params, j)
    Y = serre_polynomial(datum, i, j, Bi, Bj)
    m = 1 - datum.a(i, j)
    lam = tuple(
        m * a + b
        for a, b in zip(datum.simple_root(i), datum.simple_root(j))
    )
    minus_lam = tuple(-x for x in lam)
    cell = Element.zero(datum)
    graded = coproduct_graded(Y, datum.zero_vector())
    for (m1, m2), c in graded.terms.items():
        e2, k2, f2 = m2
        if not e2 and not f2 and k2 == minus_lam:
            cell = cell + Element(datum, {m1: c})
    return Y - cell


def serre_defect(params: QSPParameters, i, j, source: str = "oracle") -> Element:
    """F_ij(B_i, B_j) - C_ij(c); the engine must certify this is zero."""
    datum = params.datum
    Bi = b_generator(params, i)
    Bj = b_generator(params, j)
    Y = serre_polynomial(datum, i, j, Bi, Bj)
    if source == "oracle":
        C = c_oracle(params, i, j)
    elif source == "closed":
        C = c_closed(params, i, j)
    elif source == "closed-torus":
        C = c_closed_torus(params, i, j)
    else:
        raise ValueError(f"unknown C source {source!r}")
    return Y - C
